//! `ulrich-calc <surface> <H-coords> <command> [args] [--format json|table] [--bound-cap N]`
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition or parity failure,
//! 3 unsupported surface.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reports::{chow_shape, dimension_ledger, invariant_report, lemma_cycles_report};
use crate::surface::{ChernData, SurfaceKind, SurfaceModel};
use crate::ulrich::{
    cohomology_table, enumerate_ulrich_lines, hirzebruch_2n_identity, is_ulrich_line, lm_numerics, CohomologyTable,
    UlrichStatus,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    #[default]
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "ulrich-calc",
    version,
    about = "Exact Ulrich and Riemann-Roch computations on polarized rational surfaces"
)]
pub struct CliConfig {
    /// Surface descriptor: P2, F<a> or dP<r>.
    pub surface: String,
    /// Polarization H as comma-separated coordinates, e.g. 2,5.
    #[arg(allow_hyphen_values = true)]
    pub polarization: String,
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Coordinate cap for enumeration when no provable bound exists.
    #[arg(long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    pub bound_cap: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of a general curve in |K + 3H| and hypothesis flags.
    Invariants,
    /// Cohomology table h^i(L + jH) of a line bundle L.
    #[command(alias = "table")]
    Cohomology {
        #[arg(allow_hyphen_values = true)]
        line: String,
        /// Twist range j_min..j_max (inclusive).
        #[arg(long, default_value = "-3..1", allow_hyphen_values = true)]
        range: String,
    },
    /// Ulrich test for a line bundle L.
    IsUlrich {
        #[arg(allow_hyphen_values = true)]
        line: String,
    },
    /// All Ulrich line bundles for H.
    Enumerate,
    /// Dimension counts with their closed-form identities.
    Ledger,
    /// Size data of the Pfaffian Chow-form presentation.
    Chow,
    /// Numerics for 0-cycles on a curve in |K + 2H|.
    Cycles,
    /// Chern data of a special rank-2 Ulrich candidate.
    Lm,
    /// Solve the Ulrich condition for L = (s, t) on F_a with H = (2, n).
    Identity {
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let text = err.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stderr = String::new();
    match execute(&config, &mut stderr) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr,
        },
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            Outcome {
                code: err.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn execute(config: &CliConfig, warnings: &mut String) -> Result<String> {
    let surface: SurfaceModel = config.surface.parse()?;
    let h = surface.parse_class(&config.polarization)?;
    if surface.is_ample(&h) == Some(false) {
        let _ = writeln!(
            warnings,
            "warning: H = {h} is not very ample on {surface}; results assume a very ample polarization"
        );
    }
    let json = config.format == Format::Json;

    match &config.command {
        Command::Invariants => {
            let r = invariant_report(&surface, &h)?;
            emit(json, &r, || {
                let mut out = String::new();
                let rows: Vec<(&str, String)> = vec![
                    ("surface", r.surface.to_string()),
                    ("H", r.polarization.to_string()),
                    ("d", r.d.to_string()),
                    ("KH", r.kh.to_string()),
                    ("K2", r.k2.to_string()),
                    ("g", r.g.to_string()),
                    ("cliff", r.cliff.to_string()),
                    ("gon", r.gon.to_string()),
                    ("pencil_deg", r.pencil_deg.to_string()),
                    ("family_dim", r.family_dim.to_string()),
                    (
                        "h0_anticanonical",
                        format!(
                            "{}{}",
                            r.h0_anticanonical,
                            if r.h0_anticanonical_exact {
                                ""
                            } else {
                                " (chi lower bound)"
                            }
                        ),
                    ),
                    ("fiber_degree", r.fiber_degree.map_or("-".into(), |v| v.to_string())),
                    ("hyp_degree_ok", r.hyp_degree_ok.to_string()),
                    ("hyp_genus_ok", r.hyp_genus_ok.to_string()),
                    ("hyp_antipencil_ok", r.hyp_antipencil_ok.to_string()),
                    ("degenerate_trio", r.degenerate_trio.to_string()),
                    ("clifford_dimension_one", "assumed".into()),
                    ("cliff_computed_by_adjoint", "assumed".into()),
                ];
                for (k, v) in rows {
                    let _ = writeln!(out, "{k:<28}{v}");
                }
                out
            })
        }
        Command::Cohomology { line, range } => {
            let line = surface.parse_class(line)?;
            let (lo, hi) = parse_range(range)?;
            let table = cohomology_table(&surface, &h, &ChernData::line(line), lo, hi)?;
            emit(json, &table, || render_table(&table))
        }
        Command::IsUlrich { line } => {
            let line = surface.parse_class(line)?;
            let v = is_ulrich_line(&surface, &h, &line)?;
            emit(json, &v, || {
                let mut out = String::new();
                let status = match v.status() {
                    UlrichStatus::Ulrich => "ulrich".to_string(),
                    UlrichStatus::NotUlrich => "not ulrich".to_string(),
                    UlrichStatus::Undetermined { filter_passed } => {
                        format!(
                            "undetermined (numerical filter {})",
                            if filter_passed { "passed" } else { "failed" }
                        )
                    }
                };
                let _ = writeln!(out, "{line}: {status}");
                if let Some(w) = v.witnesses {
                    let _ = writeln!(
                        out,
                        "h0(L-H)={} h1(L-H)={} h1(L-2H)={} h2(L-2H)={}",
                        w.h0_minus_h, w.h1_minus_h, w.h1_minus_2h, w.h2_minus_2h
                    );
                }
                let _ = writeln!(
                    out,
                    "c1 condition {}; chi(L-H)={} chi(L-2H)={}",
                    v.c1_condition, v.chi_minus_h, v.chi_minus_2h
                );
                out
            })
        }
        Command::Enumerate => {
            let e = enumerate_ulrich_lines(&surface, &h, config.bound_cap)?;
            if e.truncated {
                let _ = writeln!(
                    warnings,
                    "warning: search limited by the coordinate cap; the list may be incomplete"
                );
            }
            emit(json, &e, || {
                if e.lines.is_empty() {
                    return "(none)\n".into();
                }
                e.lines.iter().map(|l| format!("{l}\n")).collect()
            })
        }
        Command::Ledger => {
            let l = dimension_ledger(&surface, &h)?;
            emit(json, &l, || {
                let mut out = String::new();
                for (k, v) in [
                    ("dim_linear_system", l.dim_linear_system),
                    ("rho", l.rho),
                    ("dimW_lb", l.dim_w_lb),
                    ("dimG_lb", l.dim_g_lb),
                    ("grass_dim", l.grass_dim),
                    ("lm_family_lb", l.lm_family_lb),
                    ("dimP_lb", l.dim_p_lb),
                    ("dimZ_ub", l.dim_z_ub),
                    ("cycles_bound", l.cycles_bound),
                    ("moduli_dim", l.moduli_dim),
                ] {
                    let _ = writeln!(out, "{k:<20}{v}");
                }
                for c in &l.checks {
                    let _ = writeln!(out, "{:<4}{}", if c.ok { "ok" } else { "FAIL" }, c.name);
                }
                out
            })
        }
        Command::Chow => {
            let c = chow_shape(&surface, &h)?;
            emit(json, &c, || {
                format!(
                    "P^{}, G({},{}), {}x{} skew\ngrass_dim {}\ntaut_rank {}\n",
                    c.ambient_dim,
                    c.grass_sub_dim,
                    c.grass_ambient_dim,
                    c.matrix_size,
                    c.matrix_size,
                    c.grass_dim,
                    c.taut_rank
                )
            })
        }
        Command::Cycles => {
            let r = lemma_cycles_report(&surface, &h)?;
            emit(json, &r, || {
                let mut out = String::new();
                for (k, v) in [
                    ("deg_D_H", r.deg_d_h),
                    ("g_D", r.g_d),
                    ("alpha", r.alpha),
                    ("h0_K_plus_H", r.h0_k_plus_h),
                    ("bound", r.bound),
                    ("dim_linear_system_D", r.dim_linear_system_d),
                ] {
                    let _ = writeln!(out, "{k:<22}{v}");
                }
                for (i, b) in &r.sigma_bounds {
                    let _ = writeln!(out, "{:<22}{b}", format!("sigma_{i}_dim_bound"));
                }
                out
            })
        }
        Command::Lm => {
            let lm = lm_numerics(&surface, &h)?;
            emit(json, &lm, || {
                format!(
                    "c1 {}\nc2 {}\nchi {}\nfamily_dim {}{}\n",
                    lm.c1,
                    lm.c2,
                    lm.chi,
                    lm.family_dim,
                    if lm.degenerate { " (degenerate)" } else { "" }
                )
            })
        }
        Command::Identity { s } => {
            let a = match surface.kind() {
                SurfaceKind::Hirzebruch(a) => a as i64,
                _ => return Err(Error::Precondition("identity needs a Hirzebruch surface".into())),
            };
            if h.coords()[0] != 2 {
                return Err(Error::Precondition(format!("identity needs H = (2, n), got {h}")));
            }
            let r = hirzebruch_2n_identity(a, h.coords()[1], *s)?;
            emit(json, &r, || {
                let t = if r.t.den == 1 {
                    r.t.num.to_string()
                } else {
                    format!("{}/{}", r.t.num, r.t.den)
                };
                match r.chi_minus_h {
                    Some(chi) => format!("t {t}\nchi(L-H) {chi}\n"),
                    None => format!("t {t}\nnon-integral: no candidate\n"),
                }
            })
        }
    }
}

fn emit<T: Serialize>(json: bool, value: &T, table: impl FnOnce() -> String) -> Result<String> {
    if json {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Consistency(e.to_string()))?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(table())
    }
}

/// `a..b`, inclusive on both ends.
pub fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("twist range {text:?} (expected a..b)"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    if hi - lo > 10_000 {
        return Err(Error::Range(format!("twist range {text} is too long")));
    }
    Ok((lo, hi))
}

/// Rows `h^2`, `h^1`, `h^0` top to bottom, then `chi`; columns increase in `j`.
pub fn render_table(table: &CohomologyTable) -> String {
    let cell = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    let mut header = vec!["".to_string()];
    header.extend(table.columns.iter().map(|c| format!("j={}", c.j)));
    let mut rows = vec![header];
    for i in (0..3).rev() {
        let mut row = vec![format!("h^{i}")];
        row.extend(table.row(i).into_iter().map(cell));
        rows.push(row);
    }
    let mut chi = vec!["chi".to_string()];
    chi.extend(table.columns.iter().map(|c| c.chi.to_string()));
    rows.push(chi);

    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1) + 2;
    let mut out = String::new();
    for row in rows {
        let line: String = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::DivClass;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..0").unwrap(), (-2, 0));
        assert_eq!(parse_range("3..3").unwrap(), (3, 3));
        assert!(matches!(parse_range("2..1"), Err(Error::Parse(_))));
        assert!(matches!(parse_range("1-2"), Err(Error::Parse(_))));
    }

    #[test]
    fn div_class_json_is_an_array() {
        let v = serde_json::to_string(&DivClass::new([2, 5])).unwrap();
        assert_eq!(v, "[2,5]");
    }

    #[test]
    fn help_exits_zero() {
        let out = run(["ulrich-calc", "--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("Usage"));
    }
}
