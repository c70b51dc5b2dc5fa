//! Ulrich tests for line bundles, enumeration, cohomology tables and the
//! numerical data of special rank-2 Ulrich candidates.

use num_rational::Ratio;
use serde::Serialize;

use crate::cohomology::{cohomology, h0_line, CohomTriple};
use crate::error::{half, Error, Result};
use crate::surface::{ChernData, DivClass, SurfaceKind, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictMode {
    Exact,
    NumericalFilterOnly,
}

/// The four cohomology groups whose vanishing makes a bundle Ulrich on a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UlrichWitnesses {
    pub h0_minus_h: i64,
    pub h1_minus_h: i64,
    pub h1_minus_2h: i64,
    pub h2_minus_2h: i64,
}

impl UlrichWitnesses {
    pub fn all_zero(&self) -> bool {
        self.as_array() == [0; 4]
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.h0_minus_h, self.h1_minus_h, self.h1_minus_2h, self.h2_minus_2h]
    }
}

/// Outcome of an Ulrich test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UlrichStatus {
    Ulrich,
    NotUlrich,
    /// Only numerical necessary conditions could be evaluated.
    Undetermined {
        filter_passed: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UlrichVerdict {
    pub is_ulrich: bool,
    pub mode: VerdictMode,
    /// Present in exact mode only.
    pub witnesses: Option<UlrichWitnesses>,
    pub c1_condition: bool,
    pub chi_minus_h: i64,
    pub chi_minus_2h: i64,
}

impl UlrichVerdict {
    pub fn status(&self) -> UlrichStatus {
        match self.mode {
            VerdictMode::Exact if self.is_ulrich => UlrichStatus::Ulrich,
            VerdictMode::Exact => UlrichStatus::NotUlrich,
            VerdictMode::NumericalFilterOnly => UlrichStatus::Undetermined {
                filter_passed: self.c1_condition && self.chi_minus_h == 0 && self.chi_minus_2h == 0,
            },
        }
    }
}

/// Decides whether `O_S(L)` is Ulrich for the polarization `H`.
///
/// On blow-ups of P² only the first-Chern-class condition and
/// `χ(L-H) = χ(L-2H) = 0` are checked and the verdict is left undetermined.
pub fn is_ulrich_line(surface: &SurfaceModel, h: &DivClass, line: &DivClass) -> Result<UlrichVerdict> {
    surface.check(h)?;
    surface.check(line)?;
    let minus_h = line - h;
    let minus_2h = &minus_h - h;
    let c1_condition = surface.ulrich_c1_condition(h, &ChernData::line(line.clone()))?;
    let chi_minus_h = surface.chi_line(&minus_h)?;
    let chi_minus_2h = surface.chi_line(&minus_2h)?;

    if !surface.has_exact_cohomology() {
        return Ok(UlrichVerdict {
            is_ulrich: false,
            mode: VerdictMode::NumericalFilterOnly,
            witnesses: None,
            c1_condition,
            chi_minus_h,
            chi_minus_2h,
        });
    }

    let first = cohomology(surface, &minus_h)?;
    let second = cohomology(surface, &minus_2h)?;
    let witnesses = UlrichWitnesses {
        h0_minus_h: first.h0,
        h1_minus_h: first.h1,
        h1_minus_2h: second.h1,
        h2_minus_2h: second.h2,
    };
    Ok(UlrichVerdict {
        is_ulrich: witnesses.all_zero(),
        mode: VerdictMode::Exact,
        witnesses: Some(witnesses),
        c1_condition,
        chi_minus_h,
        chi_minus_2h,
    })
}

/// Result of scanning the Ulrich first-Chern-class line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    /// Ulrich line bundles, lexicographically ordered.
    pub lines: Vec<DivClass>,
    /// Number of classes on the line that were tested.
    pub candidates: usize,
    /// True when the scan was limited by the coordinate cap instead of a
    /// provable bound, so the list may be incomplete.
    pub truncated: bool,
}

/// Default coordinate cap: ten times the largest polarization coordinate.
pub fn default_bound_cap(h: &DivClass) -> i64 {
    10 * h.coords().iter().map(|c| c.abs()).max().unwrap_or(1).max(1)
}

/// Lists every Ulrich line bundle for `(S, H)`.
///
/// Candidates are the integral points of the affine line
/// `2·H·L = H·(K+3H)`. When `H` is effective with `H² > 0`, an Ulrich `L`
/// has `χ(L+jH) = (d/2)(j+1)(j+2)`, and the vanishings force
/// `h⁰(L) >= χ(L) = d > 0` and `h⁰(K+3H-L) = h²(L-3H) >= d > 0`; on `Fₐ`
/// (and P²) this confines `L` to the box `0 <= L <= K+3H` coordinatewise.
/// Without that bound the scan is cut at `|coord| <= cap` and flagged.
pub fn enumerate_ulrich_lines(surface: &SurfaceModel, h: &DivClass, cap: Option<i64>) -> Result<Enumeration> {
    surface.check(h)?;
    if !surface.has_exact_cohomology() {
        return Err(Error::Unsupported {
            surface: surface.to_string(),
            operation: "enumerate",
        });
    }
    let cap = cap.unwrap_or_else(|| default_bound_cap(h));
    if cap < 1 {
        return Err(Error::Precondition(format!("bound cap must be >= 1, got {cap}")));
    }
    let d = surface.self_intersection(h)?;
    let target = &surface.canonical() + &(h * 3);
    let rhs = surface.intersect(h, &target)?;

    // Per-coordinate scan box [lo, hi].
    let provable = d > 0 && h0_line(surface, h)? > 0;
    let mut truncated = false;
    let bounds: Vec<(i64, i64)> = target
        .coords()
        .iter()
        .map(|&k| {
            let (lo, hi) = if provable { (0, k) } else { (-cap, cap) };
            if !provable || lo < -cap || hi > cap {
                truncated = true;
            }
            (lo.max(-cap), hi.min(cap))
        })
        .collect();

    // H·L = Σ wᵢ·Lᵢ with wᵢ = H·(basis class i).
    let weights: Vec<i64> = surface
        .basis_curves()
        .iter()
        .map(|b| surface.intersect(h, b))
        .collect::<Result<_>>()?;
    if weights.iter().all(|&w| w == 0) {
        return Err(Error::Precondition(format!(
            "polarization {h} pairs trivially with every class"
        )));
    }

    let mut candidates = Vec::new();
    match surface.kind() {
        SurfaceKind::ProjectivePlane => {
            let (w, (lo, hi)) = (weights[0], bounds[0]);
            if rhs % (2 * w) == 0 {
                let t = rhs / (2 * w);
                if (lo..=hi).contains(&t) {
                    candidates.push(DivClass::new([t]));
                }
            }
        }
        SurfaceKind::Hirzebruch(_) => {
            // Walk the free coordinate and solve for the other one.
            let (free, solved) = if weights[1] != 0 { (0, 1) } else { (1, 0) };
            let (lo, hi) = bounds[free];
            let (slo, shi) = bounds[solved];
            for x in lo..=hi {
                let rest = rhs - 2 * weights[free] * x;
                let w = 2 * weights[solved];
                if rest % w != 0 {
                    continue;
                }
                let y = rest / w;
                if !(slo..=shi).contains(&y) {
                    continue;
                }
                let mut coords = [0; 2];
                coords[free] = x;
                coords[solved] = y;
                candidates.push(DivClass::new(coords));
            }
        }
        SurfaceKind::BlowupP2(_) => unreachable!("rejected above"),
    }

    let mut lines = Vec::new();
    for candidate in &candidates {
        if is_ulrich_line(surface, h, candidate)?.is_ulrich {
            lines.push(candidate.clone());
        }
    }
    lines.sort();
    Ok(Enumeration {
        lines,
        candidates: candidates.len(),
        truncated,
    })
}

/// One column `j` of a cohomology table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableColumn {
    pub j: i64,
    /// Exact `(h⁰, h¹, h²)` of `E(j)`, when available.
    pub cohomology: Option<CohomTriple>,
    pub chi: i64,
}

/// Table of `γ_{i,j} = hⁱ(S, E(j))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub j_min: i64,
    pub j_max: i64,
    pub exact: bool,
    pub columns: Vec<TableColumn>,
}

impl CohomologyTable {
    /// `γ_{i,j}`, or `None` outside the range or when only χ is known.
    pub fn gamma(&self, i: usize, j: i64) -> Option<i64> {
        let col = self.columns.iter().find(|c| c.j == j)?;
        col.cohomology.map(|c| c.get(i))
    }

    /// Row `i` in increasing `j`.
    pub fn row(&self, i: usize) -> Vec<Option<i64>> {
        self.columns.iter().map(|c| c.cohomology.map(|t| t.get(i))).collect()
    }
}

/// Cohomology table of `E(j) = E ⊗ O(jH)` for `j_min <= j <= j_max`.
///
/// Rank-1 data on P² or `Fₐ` gives exact entries; rank-2 data gives χ only.
pub fn cohomology_table(
    surface: &SurfaceModel,
    h: &DivClass,
    bundle: &ChernData,
    j_min: i64,
    j_max: i64,
) -> Result<CohomologyTable> {
    if j_min > j_max {
        return Err(Error::Precondition(format!("empty twist range {j_min}..{j_max}")));
    }
    let exact = match bundle.rank {
        1 if surface.has_exact_cohomology() => true,
        1 => {
            return Err(Error::Unsupported {
                surface: surface.to_string(),
                operation: "cohomology table",
            })
        }
        2 => false,
        r => {
            return Err(Error::Precondition(format!(
                "cohomology table needs rank 1 or 2, got {r}"
            )))
        }
    };
    let columns = (j_min..=j_max)
        .map(|j| {
            let twisted = surface.chern_twist(bundle, &(h * j))?;
            let cohomology = if exact {
                Some(cohomology(surface, &twisted.c1)?)
            } else {
                None
            };
            Ok(TableColumn {
                j,
                cohomology,
                chi: surface.chi(&twisted)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(CohomologyTable {
        j_min,
        j_max,
        exact,
        columns,
    })
}

/// Numerical data of a special Ulrich candidate `E` with `det E = ω_S(3)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LmNumerics {
    pub c1: DivClass,
    pub c2: i64,
    pub chi: i64,
    pub det_is_special: bool,
    pub family_dim: i64,
    pub degenerate: bool,
}

impl LmNumerics {
    pub fn chern_data(&self) -> ChernData {
        ChernData::rank2(self.c1.clone(), self.c2)
    }
}

/// Fails unless `H² + K·H` is even; returns `(d, K·H)`.
pub(crate) fn degree_and_kh(surface: &SurfaceModel, h: &DivClass) -> Result<(i64, i64)> {
    let d = surface.self_intersection(h)?;
    let kh = surface.intersect(&surface.canonical(), h)?;
    half(d + kh, "d + K·H")?;
    Ok((d, kh))
}

pub fn lm_numerics(surface: &SurfaceModel, h: &DivClass) -> Result<LmNumerics> {
    let (d, kh) = degree_and_kh(surface, h)?;
    let c1 = &surface.canonical() + &(h * 3);
    let c2 = half(5 * d + 3 * kh, "5d + 3K·H")? + 2;
    let chi = surface.chi_rank2(&ChernData::rank2(c1.clone(), c2))?;
    if chi != 2 * d {
        return Err(Error::Consistency(format!(
            "chi of special Ulrich data is {chi}, expected 2d = {}",
            2 * d
        )));
    }
    let family_dim = d - surface.canonical_square() + 5;
    Ok(LmNumerics {
        c1,
        c2,
        chi,
        det_is_special: true,
        family_dim,
        degenerate: family_dim <= 0,
    })
}

/// An exact rational serialized as `{ "num": .., "den": .. }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl From<Ratio<i64>> for Fraction {
    fn from(r: Ratio<i64>) -> Self {
        Fraction {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoNIdentity {
    pub a: i64,
    pub n: i64,
    pub s: i64,
    pub t: Fraction,
    /// `χ(Fₐ, (s,t) - (2,n))` when `t` is integral.
    pub chi_minus_h: Option<i64>,
    /// `(s-3)(s-1)(a-n)/2`.
    pub factored: Fraction,
}

/// Solves the first-Chern-class condition for `L = (s, t)` on `Fₐ` with
/// `H = (2, n)` and checks the factored form of `χ(L - H)`.
pub fn hirzebruch_2n_identity(a: i64, n: i64, s: i64) -> Result<TwoNIdentity> {
    if a < 0 || n <= 2 * a {
        return Err(Error::Precondition(format!(
            "need a >= 0 and n > 2a, got a = {a}, n = {n}"
        )));
    }
    let t = (Ratio::from_integer(a) - Ratio::new(n, 2)) * s + Ratio::new(5 * n - 5 * a - 2, 2);
    let factored = Ratio::new((s - 3) * (s - 1) * (a - n), 2);
    let chi_minus_h = if t.is_integer() {
        let surface = SurfaceModel::hirzebruch(a as u32);
        let chi = surface.chi_line(&DivClass::new([s - 2, t.to_integer() - n]))?;
        if Ratio::from_integer(chi) != factored {
            return Err(Error::Consistency(format!(
                "chi(L - H) = {chi} but (s-3)(s-1)(a-n)/2 = {factored} at a={a}, n={n}, s={s}"
            )));
        }
        Some(chi)
    } else {
        None
    };
    Ok(TwoNIdentity {
        a,
        n,
        s,
        t: t.into(),
        chi_minus_h,
        factored: factored.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i64]) -> DivClass {
        DivClass::new(v)
    }

    #[test]
    fn verdict_examples() {
        let p2 = SurfaceModel::projective_plane();
        assert!(is_ulrich_line(&p2, &c(&[1]), &c(&[0])).unwrap().is_ulrich);

        let f1 = SurfaceModel::hirzebruch(1);
        let v = is_ulrich_line(&f1, &c(&[1, 2]), &c(&[1, 1])).unwrap();
        assert_eq!(v.status(), UlrichStatus::Ulrich);

        let f2 = SurfaceModel::hirzebruch(2);
        let v = is_ulrich_line(&f2, &c(&[2, 5]), &c(&[1, 6])).unwrap();
        assert_eq!(v.status(), UlrichStatus::NotUlrich);
        assert!(v.c1_condition);
        assert_eq!(v.witnesses.unwrap().h1_minus_2h, 1);

        assert!(matches!(
            is_ulrich_line(&f2, &c(&[2]), &c(&[1, 6])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn blowups_are_undetermined() {
        // Cubic surface embedded by -K.
        let s = SurfaceModel::blowup_p2(6).unwrap();
        let h = c(&[3, -1, -1, -1, -1, -1, -1]);
        let v = is_ulrich_line(&s, &h, &c(&[2, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(v.mode, VerdictMode::NumericalFilterOnly);
        assert!(!v.is_ulrich && v.witnesses.is_none());
        assert_eq!(v.status(), UlrichStatus::Undetermined { filter_passed: false });
        // The pullback of a line (twisted cubics on the cubic) passes the filter.
        let v = is_ulrich_line(&s, &h, &c(&[1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert_eq!(v.status(), UlrichStatus::Undetermined { filter_passed: true });
        assert!(enumerate_ulrich_lines(&s, &h, None).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let f0 = SurfaceModel::hirzebruch(0);
        let e = enumerate_ulrich_lines(&f0, &c(&[2, 3]), None).unwrap();
        assert!(e.lines.contains(&c(&[1, 5])) && e.lines.contains(&c(&[3, 2])));
        assert!(!e.truncated);

        let f2 = SurfaceModel::hirzebruch(2);
        assert!(enumerate_ulrich_lines(&f2, &c(&[2, 5]), None).unwrap().lines.is_empty());

        let f1 = SurfaceModel::hirzebruch(1);
        let e = enumerate_ulrich_lines(&f1, &c(&[1, 2]), None).unwrap();
        assert!(e.lines.contains(&c(&[0, 2])) && e.lines.contains(&c(&[1, 1])));
        let mut sorted = e.lines.clone();
        sorted.sort();
        assert_eq!(sorted, e.lines);

        let p2 = SurfaceModel::projective_plane();
        assert_eq!(
            enumerate_ulrich_lines(&p2, &c(&[1]), None).unwrap().lines,
            vec![c(&[0])]
        );
        // Veronese surface: 2 * (t) = -3 + 6 is odd, so no Ulrich line bundle.
        assert!(enumerate_ulrich_lines(&p2, &c(&[2]), None).unwrap().lines.is_empty());
    }

    #[test]
    fn enumeration_without_provable_bound_is_flagged() {
        let f2 = SurfaceModel::hirzebruch(2);
        // Not effective: no box bound, falls back to the cap.
        let e = enumerate_ulrich_lines(&f2, &c(&[-1, 0]), Some(5)).unwrap();
        assert!(e.truncated);
        assert!(matches!(
            enumerate_ulrich_lines(&f2, &c(&[2, 5]), Some(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn table_examples() {
        let p2 = SurfaceModel::projective_plane();
        let t = cohomology_table(&p2, &c(&[1]), &ChernData::line(c(&[0])), -3, 1).unwrap();
        let row = |i| t.row(i).into_iter().map(Option::unwrap).collect::<Vec<_>>();
        assert_eq!(row(0), vec![0, 0, 0, 1, 3]);
        assert_eq!(row(1), vec![0; 5]);
        assert_eq!(row(2), vec![1, 0, 0, 0, 0]);

        let f1 = SurfaceModel::hirzebruch(1);
        let t = cohomology_table(&f1, &c(&[1, 2]), &ChernData::line(c(&[1, 1])), -2, 0).unwrap();
        assert_eq!(t.row(0), vec![Some(0), Some(0), Some(3)]);
        assert_eq!(t.row(1), vec![Some(0); 3]);
        assert_eq!(t.row(2), vec![Some(0); 3]);
        assert_eq!(t.gamma(0, 0), Some(3));

        let f2 = SurfaceModel::hirzebruch(2);
        let lm = lm_numerics(&f2, &c(&[2, 5])).unwrap();
        let t = cohomology_table(&f2, &c(&[2, 5]), &lm.chern_data(), -3, 0).unwrap();
        assert!(!t.exact);
        assert_eq!(t.columns.iter().map(|c| c.chi).collect::<Vec<_>>(), vec![24, 0, 0, 24]);
        assert_eq!(t.gamma(0, 0), None);

        let dp = SurfaceModel::blowup_p2(3).unwrap();
        let h = c(&[3, -1, -1, -1]);
        assert!(matches!(
            cohomology_table(&dp, &h, &ChernData::line(dp.zero()), 0, 0),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn lm_examples() {
        let lm = lm_numerics(&SurfaceModel::hirzebruch(2), &c(&[2, 5])).unwrap();
        assert_eq!((lm.c1.clone(), lm.c2, lm.chi, lm.family_dim), (c(&[4, 11]), 17, 24, 9));
        assert!(lm.det_is_special && !lm.degenerate);
        assert_eq!(
            lm_numerics(&SurfaceModel::hirzebruch(1), &c(&[1, 2]))
                .unwrap()
                .family_dim,
            0
        );
        let q = lm_numerics(&SurfaceModel::hirzebruch(0), &c(&[1, 1])).unwrap();
        assert_eq!(q.family_dim, -1);
        assert!(q.degenerate);
    }

    #[test]
    fn two_n_identity_examples() {
        let r = hirzebruch_2n_identity(2, 5, 1).unwrap();
        assert_eq!(r.t, Fraction { num: 6, den: 1 });
        assert_eq!(r.chi_minus_h, Some(0));

        let r = hirzebruch_2n_identity(0, 3, 3).unwrap();
        assert_eq!(r.t, Fraction { num: 2, den: 1 });
        assert_eq!(r.chi_minus_h, Some(0));

        let r = hirzebruch_2n_identity(1, 4, 2).unwrap();
        assert_eq!(r.t, Fraction { num: 9, den: 2 });
        assert_eq!(r.chi_minus_h, None);

        assert!(hirzebruch_2n_identity(2, 4, 1).is_err());
    }
}
