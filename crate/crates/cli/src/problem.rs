//! Problem-file parsing (TOML) with line-numbered diagnostics.

use num_complex::Complex64;
use serde::Deserialize;
use su2_mintime::su2::LieCoeffs;
use su2_mintime::sync::{SyncProblem, SyncSystem};
use su2_mintime::{exp_lie, Su2};
use toml::Spanned;

use crate::CliError;

/// On-disk problem description. Each `[[system]]` carries a bound and a
/// target given either as the first row `(alpha, beta)` of the desired
/// operator (complex numbers as `[re, im]` pairs) or as `psi`, the phase of
/// a unit-circle target `diag(e^{i psi}, e^{-i psi})`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    /// Oracle integration step for verification, t-units.
    pub dt: Option<f64>,
    #[serde(default)]
    pub system: Vec<SystemEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemEntry {
    pub gamma_max: Spanned<f64>,
    pub alpha: Option<[f64; 2]>,
    pub beta: Option<[f64; 2]>,
    pub psi: Option<Spanned<f64>>,
}

fn line_of(source: &str, byte: usize) -> usize {
    source[..byte.min(source.len())]
        .bytes()
        .filter(|b| *b == b'\n')
        .count()
        + 1
}

pub fn parse_problem(source: &str) -> Result<(SyncProblem, Option<f64>), CliError> {
    let file: ProblemFile = toml::from_str(source)
        .map_err(|e| CliError::input(format!("problem file: {e}")))?;
    if let Some(dt) = file.dt {
        if !(dt > 0.0) {
            return Err(CliError::input(format!("dt must be positive (got {dt})")));
        }
    }
    let mut systems = Vec::with_capacity(file.system.len());
    for (idx, entry) in file.system.iter().enumerate() {
        let line = line_of(source, entry.gamma_max.span().start);
        let gamma_max = *entry.gamma_max.get_ref();
        if !(gamma_max > 0.0) || !gamma_max.is_finite() {
            return Err(CliError::input(format!(
                "line {line}: system {}: gamma_max must be positive (got {gamma_max})",
                idx + 1
            )));
        }
        let target = match (&entry.alpha, &entry.beta, &entry.psi) {
            (Some(a), b, None) => {
                let alpha = Complex64::new(a[0], a[1]);
                let beta = b
                    .map(|b| Complex64::new(b[0], b[1]))
                    .unwrap_or_else(|| Complex64::new(0.0, 0.0));
                Su2::new(alpha, beta).map_err(|e| {
                    CliError::input(format!("line {line}: system {}: {e}", idx + 1))
                })?
            }
            (None, None, Some(psi)) => {
                let psi_line = line_of(source, psi.span().start);
                let psi = *psi.get_ref();
                if !psi.is_finite() {
                    return Err(CliError::input(format!(
                        "line {psi_line}: system {}: psi must be finite",
                        idx + 1
                    )));
                }
                exp_lie(LieCoeffs::new(0.0, 0.0, 2.0 * psi))
            }
            _ => {
                return Err(CliError::input(format!(
                    "line {line}: system {}: give either alpha/beta or psi",
                    idx + 1
                )));
            }
        };
        systems.push(SyncSystem { target, gamma_max });
    }
    let problem = SyncProblem::new(systems).map_err(CliError::from_core_input)?;
    Ok((problem, file.dt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_targets() {
        let src = r#"
dt = 1e-4

[[system]]
gamma_max = 1.0
alpha = [0.0, 0.0]
beta = [1.0, 0.0]

[[system]]
gamma_max = 0.5
psi = 3.14159
"#;
        let (problem, dt) = parse_problem(src).unwrap();
        assert_eq!(problem.systems.len(), 2);
        assert_eq!(dt, Some(1e-4));
    }

    #[test]
    fn rejects_bad_gamma_with_line_number() {
        let src = "[[system]]\ngamma_max = -1.0\npsi = 1.0\n";
        let err = parse_problem(src).unwrap_err();
        assert!(err.message.contains("line 2"), "{}", err.message);
    }

    #[test]
    fn rejects_non_unitary_row() {
        let src = "[[system]]\ngamma_max = 1.0\nalpha = [2.0, 0.0]\nbeta = [0.0, 0.0]\n";
        assert!(parse_problem(src).is_err());
    }

    #[test]
    fn rejects_ambiguous_target() {
        let src = "[[system]]\ngamma_max = 1.0\nalpha = [1.0, 0.0]\npsi = 0.5\n";
        assert!(parse_problem(src).is_err());
    }
}
