//! Exact intersection theory, Riemann-Roch and line-bundle cohomology on
//! polarized rational surfaces, with Ulrich tests and the numerical data of
//! special rank-2 Ulrich bundles.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod reports;
pub mod surface;
pub mod ulrich;

pub use cohomology::{cohomology, h0_line, oracle::h0_oracle, CohomTriple};
pub use error::{Error, Result};
pub use reports::{
    brill_noether_rho, chow_shape, dimension_ledger, invariant_report, lemma_cycles_report, pencil_growth,
    small_surface_exceptions, ChowShape, DimensionLedger, InvariantReport, LemmaCyclesReport,
};
pub use surface::{ChernData, DivClass, SurfaceKind, SurfaceModel, MAX_COORD};
pub use ulrich::{
    cohomology_table, enumerate_ulrich_lines, hirzebruch_2n_identity, is_ulrich_line, lm_numerics, CohomologyTable,
    Enumeration, LmNumerics, UlrichStatus, UlrichVerdict, VerdictMode,
};
