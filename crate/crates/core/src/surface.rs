//! Picard-lattice models of rational surfaces.
//!
//! Basis conventions:
//!
//! * `P2`: `(h)` with `h² = 1`.
//! * `F<a>`: `(C₀, f)` with `C₀² = -a`, `C₀·f = 1`, `f² = 0`. A class of
//!   "type (s, t)" is `s·C₀ + t·f`.
//! * `dP<r>`: `(h, e₁, …, e_r)` with `h² = 1`, `eᵢ² = -1` and all mixed
//!   products zero. Blown-up points are general; no configuration is modeled.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{half, Error, Result};

/// Largest coordinate magnitude accepted from textual input.
pub const MAX_COORD: i64 = 1_000_000;

/// Largest number of blown-up points (del Pezzo range).
pub const MAX_BLOWUP_POINTS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    ProjectivePlane,
    Hirzebruch(u32),
    BlowupP2(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    kind: SurfaceKind,
}

impl SurfaceModel {
    pub fn projective_plane() -> Self {
        SurfaceModel {
            kind: SurfaceKind::ProjectivePlane,
        }
    }

    pub fn hirzebruch(a: u32) -> Self {
        SurfaceModel {
            kind: SurfaceKind::Hirzebruch(a),
        }
    }

    pub fn blowup_p2(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Range("dP<r> needs r >= 1 (use P2 for r = 0)".into()));
        }
        if r > MAX_BLOWUP_POINTS {
            return Err(Error::Range(format!(
                "dP{r}: more than {MAX_BLOWUP_POINTS} blown-up points is outside the del Pezzo range"
            )));
        }
        Ok(SurfaceModel {
            kind: SurfaceKind::BlowupP2(r),
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn picard_rank(&self) -> usize {
        match self.kind {
            SurfaceKind::ProjectivePlane => 1,
            SurfaceKind::Hirzebruch(_) => 2,
            SurfaceKind::BlowupP2(r) => r as usize + 1,
        }
    }

    /// Whether line-bundle cohomology is computed exactly on this model.
    pub fn has_exact_cohomology(&self) -> bool {
        !matches!(self.kind, SurfaceKind::BlowupP2(_))
    }

    /// χ(O_S); every model is rational.
    pub fn chi_structure_sheaf(&self) -> i64 {
        1
    }

    pub fn canonical_square(&self) -> i64 {
        match self.kind {
            SurfaceKind::ProjectivePlane => 9,
            SurfaceKind::Hirzebruch(_) => 8,
            SurfaceKind::BlowupP2(r) => 9 - r as i64,
        }
    }

    pub fn zero(&self) -> DivClass {
        DivClass(vec![0; self.picard_rank()])
    }

    /// Checks that `class` lives in this surface's Picard lattice.
    pub fn check(&self, class: &DivClass) -> Result<()> {
        if class.0.len() != self.picard_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.picard_rank(),
                found: class.0.len(),
            });
        }
        Ok(())
    }

    /// Parses a comma-separated class and checks its length against this surface.
    pub fn parse_class(&self, text: &str) -> Result<DivClass> {
        let class: DivClass = text.parse()?;
        self.check(&class)?;
        Ok(class)
    }

    /// The intersection pairing.
    pub fn intersect(&self, a: &DivClass, b: &DivClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let (x, y) = (&a.0, &b.0);
        Ok(match self.kind {
            SurfaceKind::ProjectivePlane => x[0] * y[0],
            SurfaceKind::Hirzebruch(a) => -(a as i64) * x[0] * y[0] + x[0] * y[1] + x[1] * y[0],
            SurfaceKind::BlowupP2(_) => x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(u, v)| u * v).sum::<i64>(),
        })
    }

    pub fn self_intersection(&self, a: &DivClass) -> Result<i64> {
        self.intersect(a, a)
    }

    /// The canonical class K_S.
    pub fn canonical(&self) -> DivClass {
        match self.kind {
            SurfaceKind::ProjectivePlane => DivClass(vec![-3]),
            SurfaceKind::Hirzebruch(a) => DivClass(vec![-2, -(a as i64) - 2]),
            SurfaceKind::BlowupP2(r) => {
                let mut coords = vec![1; r as usize + 1];
                coords[0] = -3;
                DivClass(coords)
            }
        }
    }

    /// The basis classes, each a smooth rational curve (line, negative
    /// section, fiber or exceptional curve).
    pub fn basis_curves(&self) -> Vec<DivClass> {
        let n = self.picard_rank();
        (0..n)
            .map(|i| {
                let mut coords = vec![0; n];
                coords[i] = 1;
                DivClass(coords)
            })
            .collect()
    }

    /// Arithmetic genus by adjunction: `1 + C·(C+K)/2`.
    pub fn genus_adj(&self, curve: &DivClass) -> Result<i64> {
        let k = self.canonical();
        let twice = self.intersect(curve, &(curve + &k))?;
        half(twice, "C·(C+K)").map(|v| 1 + v).map_err(consistency)
    }

    /// Riemann-Roch for a line bundle: `χ(O_S) + L·(L-K)/2`.
    pub fn chi_line(&self, line: &DivClass) -> Result<i64> {
        let k = self.canonical();
        let twice = self.intersect(line, &(line - &k))?;
        let v = half(twice, "L·(L-K)").map_err(consistency)?;
        Ok(self.chi_structure_sheaf() + v)
    }

    /// Riemann-Roch for rank 2: `2χ(O_S) + (c₁² - 2c₂)/2 - c₁·K/2`.
    pub fn chi_rank2(&self, bundle: &ChernData) -> Result<i64> {
        if bundle.rank != 2 {
            return Err(Error::Precondition(format!(
                "chi_rank2 needs rank 2, got rank {}",
                bundle.rank
            )));
        }
        let k = self.canonical();
        let c1 = &bundle.c1;
        let twice = self.intersect(c1, c1)? - 2 * bundle.c2 - self.intersect(c1, &k)?;
        let v = half(twice, "c1² - 2c2 - c1·K").map_err(consistency)?;
        Ok(2 * self.chi_structure_sheaf() + v)
    }

    /// Euler characteristic of rank-1 or rank-2 Chern data.
    pub fn chi(&self, bundle: &ChernData) -> Result<i64> {
        match bundle.rank {
            1 => self.chi_line(&bundle.c1),
            _ => self.chi_rank2(bundle),
        }
    }

    /// Chern data of `E ⊗ O(M)`.
    pub fn chern_twist(&self, bundle: &ChernData, m: &DivClass) -> Result<ChernData> {
        self.check(&bundle.c1)?;
        self.check(m)?;
        match bundle.rank {
            1 => Ok(ChernData::line(&bundle.c1 + m)),
            2 => {
                let c2 = bundle.c2 + self.intersect(&bundle.c1, m)? + self.intersect(m, m)?;
                Ok(ChernData {
                    rank: 2,
                    c1: &bundle.c1 + &(m * 2),
                    c2,
                })
            }
            r => Err(Error::Precondition(format!("twist needs rank 1 or 2, got {r}"))),
        }
    }

    /// The Ulrich first-Chern-class condition `H·(c₁ - rank/2·(K+3H)) = 0`,
    /// evaluated after doubling so no fractions appear.
    pub fn ulrich_c1_condition(&self, h: &DivClass, bundle: &ChernData) -> Result<bool> {
        let target = &self.canonical() + &(h * 3);
        let lhs = 2 * self.intersect(h, &bundle.c1)?;
        let rhs = bundle.rank as i64 * self.intersect(h, &target)?;
        Ok(lhs == rhs)
    }

    /// Cheap ampleness test on models with a known nef cone.
    ///
    /// Returns `None` on blow-ups, where the answer depends on more than the
    /// lattice.
    pub fn is_ample(&self, h: &DivClass) -> Option<bool> {
        if self.check(h).is_err() {
            return Some(false);
        }
        match self.kind {
            SurfaceKind::ProjectivePlane => Some(h.0[0] > 0),
            SurfaceKind::Hirzebruch(a) => Some(h.0[0] > 0 && h.0[1] > a as i64 * h.0[0]),
            SurfaceKind::BlowupP2(_) => None,
        }
    }
}

fn consistency(err: Error) -> Error {
    Error::Consistency(err.to_string())
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::ProjectivePlane => write!(f, "P2"),
            SurfaceKind::Hirzebruch(a) => write!(f, "F{a}"),
            SurfaceKind::BlowupP2(r) => write!(f, "dP{r}"),
        }
    }
}

impl FromStr for SurfaceModel {
    type Err = Error;

    /// Grammar: `P2 | F<a> | dP<r>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("surface descriptor {s:?} (expected P2, F<a> or dP<r>)"));
        let digits = |rest: &str| -> Result<u32> {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            rest.parse::<u32>()
                .map_err(|_| Error::Range(format!("{s}: index too large")))
        };
        if s == "P2" {
            Ok(SurfaceModel::projective_plane())
        } else if let Some(rest) = s.strip_prefix("dP") {
            SurfaceModel::blowup_p2(digits(rest)?)
        } else if let Some(rest) = s.strip_prefix('F') {
            let a = digits(rest)?;
            if a as i64 > MAX_COORD {
                return Err(Error::Range(format!("{s}: a exceeds {MAX_COORD}")));
            }
            Ok(SurfaceModel::hirzebruch(a))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for SurfaceModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A divisor class as integer coordinates in the owning surface's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DivClass(pub Vec<i64>);

impl DivClass {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        DivClass(coords.into())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn zip_with(&self, other: &DivClass, op: impl Fn(i64, i64) -> i64) -> DivClass {
        assert_eq!(self.0.len(), other.0.len(), "divisor classes from different lattices");
        DivClass(self.0.iter().zip(&other.0).map(|(a, b)| op(*a, *b)).collect())
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DivClass {
    type Err = Error;

    /// Comma-separated integers, e.g. `2,5`.
    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let v: i64 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("divisor class {s:?}: bad coordinate {part:?}")))?;
                if v.abs() > MAX_COORD {
                    return Err(Error::Range(format!("coordinate {v} exceeds {MAX_COORD} in magnitude")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DivClass(coords))
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, rhs: &DivClass) -> DivClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<i64> for &DivClass {
    type Output = DivClass;
    fn mul(self, k: i64) -> DivClass {
        DivClass(self.0.iter().map(|c| c * k).collect())
    }
}

/// Numerical data `(rank, c₁, c₂)` of a sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub rank: u32,
    pub c1: DivClass,
    pub c2: i64,
}

impl ChernData {
    pub fn line(c1: DivClass) -> Self {
        ChernData { rank: 1, c1, c2: 0 }
    }

    pub fn rank2(c1: DivClass, c2: i64) -> Self {
        ChernData { rank: 2, c1, c2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: u32) -> SurfaceModel {
        SurfaceModel::hirzebruch(a)
    }

    fn c(v: &[i64]) -> DivClass {
        DivClass::new(v)
    }

    #[test]
    fn descriptors() {
        let s: SurfaceModel = "F2".parse().unwrap();
        assert_eq!(s.kind(), SurfaceKind::Hirzebruch(2));
        assert_eq!((s.picard_rank(), s.canonical_square()), (2, 8));

        let s: SurfaceModel = "P2".parse().unwrap();
        assert_eq!((s.picard_rank(), s.canonical_square()), (1, 9));

        let s: SurfaceModel = "dP6".parse().unwrap();
        assert_eq!((s.picard_rank(), s.canonical_square()), (7, 3));
        assert_eq!(s.self_intersection(&s.canonical()).unwrap(), 3);

        assert!(matches!("dP9".parse::<SurfaceModel>(), Err(Error::Range(_))));
        assert!(matches!("dP0".parse::<SurfaceModel>(), Err(Error::Range(_))));
        for bad in ["", "P3", "F", "F-1", "Fx", "dP", "f2", "F 2", "dP+3"] {
            assert!(matches!(bad.parse::<SurfaceModel>(), Err(Error::Parse(_))), "{bad}");
        }
        assert_eq!("F17".parse::<SurfaceModel>().unwrap().to_string(), "F17");
    }

    #[test]
    fn class_parsing() {
        assert_eq!("2,5".parse::<DivClass>().unwrap(), c(&[2, 5]));
        assert_eq!("-2, -4".parse::<DivClass>().unwrap(), c(&[-2, -4]));
        assert!(matches!("2,,5".parse::<DivClass>(), Err(Error::Parse(_))));
        assert!(matches!("2000000".parse::<DivClass>(), Err(Error::Range(_))));
        assert!(matches!(
            f(2).parse_class("1,2,3"),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(f(2).intersect(&c(&[2, 5]), &c(&[2, 5])).unwrap(), 12);
        assert_eq!(f(1).intersect(&c(&[1, 0]), &c(&[1, 0])).unwrap(), -1);
        assert_eq!(f(2).intersect(&c(&[-2, -4]), &c(&[-2, -4])).unwrap(), 8);
        assert!(f(2).intersect(&c(&[1]), &c(&[1, 0])).is_err());
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(f(2).canonical(), c(&[-2, -4]));
        assert_eq!(SurfaceModel::projective_plane().canonical(), c(&[-3]));
        let s = f(2);
        let h = c(&[2, 5]);
        assert_eq!(&s.canonical() + &(&h * 3), c(&[4, 11]));
        // Basis curves are smooth rational curves on every model.
        for s in [
            SurfaceModel::projective_plane(),
            f(0),
            f(1),
            f(5),
            SurfaceModel::blowup_p2(8).unwrap(),
        ] {
            for curve in s.basis_curves() {
                assert_eq!(s.genus_adj(&curve).unwrap(), 0, "{s} {curve}");
            }
        }
    }

    #[test]
    fn genus_and_chi() {
        let s = f(2);
        assert_eq!(s.genus_adj(&c(&[4, 11])).unwrap(), 18);
        assert_eq!(s.genus_adj(&c(&[0, 1])).unwrap(), 0);
        assert_eq!(s.genus_adj(&c(&[2, 5])).unwrap(), 2);
        assert_eq!(s.chi_line(&c(&[2, 4])).unwrap(), 9);
        assert_eq!(s.chi_line(&c(&[0, 0])).unwrap(), 1);
        assert_eq!(s.chi_line(&c(&[2, 5])).unwrap(), 12);
    }

    #[test]
    fn rank_two_riemann_roch() {
        let s = f(2);
        let lm = ChernData::rank2(c(&[4, 11]), 17);
        assert_eq!(s.chi_rank2(&lm).unwrap(), 24);
        assert_eq!(s.chi_rank2(&ChernData::rank2(c(&[0, 0]), 0)).unwrap(), 2);
        assert_eq!(s.chi_rank2(&ChernData::rank2(c(&[0, 1]), 3)).unwrap(), 0);
        assert!(matches!(
            s.chi_rank2(&ChernData::line(c(&[0, 1]))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn twists() {
        let s = f(2);
        let h = c(&[2, 5]);
        let lm = ChernData::rank2(c(&[4, 11]), 17);
        let e1 = s.chern_twist(&lm, &-&h).unwrap();
        assert_eq!(e1, ChernData::rank2(c(&[0, 1]), 3));
        let e2 = s.chern_twist(&lm, &(&h * -2)).unwrap();
        assert_eq!(e2, ChernData::rank2(c(&[-4, -9]), 13));
        assert_eq!(s.chi_rank2(&e2).unwrap(), 0);
        assert_eq!(s.chern_twist(&lm, &s.zero()).unwrap(), lm);
        let line = ChernData::line(c(&[1, 1]));
        assert_eq!(s.chern_twist(&line, &h).unwrap(), ChernData::line(c(&[3, 6])));
    }

    #[test]
    fn c1_condition() {
        let s = f(2);
        let h = c(&[2, 5]);
        assert!(s.ulrich_c1_condition(&h, &ChernData::rank2(c(&[4, 11]), 17)).unwrap());
        assert!(!s.ulrich_c1_condition(&h, &ChernData::line(c(&[0, 7]))).unwrap());
        for a in 0..4u32 {
            for n in a as i64 + 1..a as i64 + 6 {
                let line = ChernData::line(c(&[0, 2 * n - a as i64 - 1]));
                assert!(f(a).ulrich_c1_condition(&c(&[1, n]), &line).unwrap());
            }
        }
    }

    #[test]
    fn ampleness() {
        assert_eq!(f(2).is_ample(&c(&[2, 5])), Some(true));
        assert_eq!(f(2).is_ample(&c(&[1, 2])), Some(false));
        assert_eq!(SurfaceModel::projective_plane().is_ample(&c(&[1])), Some(true));
        assert_eq!(SurfaceModel::blowup_p2(3).unwrap().is_ample(&c(&[3, 1, 1, 1])), None);
    }
}
