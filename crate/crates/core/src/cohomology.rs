//! Exact line-bundle cohomology on P² and Hirzebruch surfaces.
//!
//! `h⁰` comes from pushing forward to P¹ (or from monomial counting on P²),
//! `h²` from Serre duality and `h¹` from Riemann-Roch.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{DivClass, SurfaceKind, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohomTriple {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl CohomTriple {
    pub fn chi(&self) -> i64 {
        self.h0 - self.h1 + self.h2
    }

    /// `h^i` for `i` in `0..=2`.
    pub fn get(&self, i: usize) -> i64 {
        [self.h0, self.h1, self.h2][i]
    }

    pub fn is_zero(&self) -> bool {
        self.h0 == 0 && self.h1 == 0 && self.h2 == 0
    }
}

/// `h⁰(S, L)`.
///
/// On `Fₐ`, `π_* O(sC₀ + tf) = ⊕_{k=0..s} O_{P¹}(t - ka)`, so the count is a
/// sum of `P¹` section counts.
pub fn h0_line(surface: &SurfaceModel, line: &DivClass) -> Result<i64> {
    surface.check(line)?;
    let c = line.coords();
    match surface.kind() {
        SurfaceKind::ProjectivePlane => {
            let t = c[0];
            Ok(if t < 0 { 0 } else { (t + 1) * (t + 2) / 2 })
        }
        SurfaceKind::Hirzebruch(a) => {
            let (s, t, a) = (c[0], c[1], a as i64);
            if s < 0 {
                return Ok(0);
            }
            Ok((0..=s).map(|k| (t - k * a + 1).max(0)).sum())
        }
        SurfaceKind::BlowupP2(_) => Err(unsupported(surface, "h0")),
    }
}

/// `(h⁰, h¹, h²)` of `O_S(L)`.
pub fn cohomology(surface: &SurfaceModel, line: &DivClass) -> Result<CohomTriple> {
    if !surface.has_exact_cohomology() {
        return Err(unsupported(surface, "line-bundle cohomology"));
    }
    let h0 = h0_line(surface, line)?;
    let h2 = h0_line(surface, &(&surface.canonical() - line))?;
    let chi = surface.chi_line(line)?;
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(Error::Consistency(format!(
            "negative h1 = {h1} for {line} on {surface} (h0 = {h0}, h2 = {h2}, chi = {chi})"
        )));
    }
    Ok(CohomTriple { h0, h1, h2 })
}

fn unsupported(surface: &SurfaceModel, operation: &'static str) -> Error {
    Error::Unsupported {
        surface: surface.to_string(),
        operation,
    }
}

/// Brute-force section counting on `Fₐ`, kept apart from [`h0_line`].
pub mod oracle {
    use crate::surface::DivClass;

    /// Number of lattice points `(k, m)` with `0 <= k <= s` and
    /// `0 <= m <= t - k·a`, found by scanning the whole bounding rectangle.
    pub fn h0_oracle(a: i64, line: &DivClass) -> i64 {
        let (s, t) = (line.coords()[0], line.coords()[1]);
        let m_lo = 0.min(t - s * a);
        let m_hi = 0.max(t);
        let mut count = 0;
        for k in 0..=s {
            for m in m_lo..=m_hi {
                if m >= 0 && m + k * a <= t {
                    count += 1;
                }
            }
        }
        count
    }
}
