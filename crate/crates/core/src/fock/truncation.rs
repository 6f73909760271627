//! Photon-number cutoff selection and Poisson tail control.

use crate::error::{Error, Result};

/// Largest per-mode cutoff the automatic selection will hand out.
pub const MAX_DIM: usize = 120;

/// Largest discarded Poisson weight a truncated coherent state may carry.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Cutoff `⌈(M + 3)² + 10⌉` for amplitudes of modulus at most `max_modulus`.
pub fn required_dim(max_modulus: f64) -> usize {
    let m = max_modulus.abs();
    ((m + 3.0).powi(2) + 10.0).ceil() as usize
}

/// Fails with [`Error::Truncation`] when `dim` is below [`required_dim`].
pub fn check_dim(dim: usize, max_modulus: f64, context: &str) -> Result<()> {
    let required = required_dim(max_modulus);
    if dim < required {
        return Err(Error::Truncation {
            got: dim,
            required,
            context: format!("{context}, max modulus {max_modulus}"),
        });
    }
    Ok(())
}

pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Poisson weight `Σ_{n ≥ dim} e^{−λ} λⁿ / n!` lost by truncating a coherent
/// state of mean photon number `mean` to `dim` levels.
pub fn poisson_tail(mean: f64, dim: usize) -> f64 {
    if mean <= 0.0 {
        return if dim == 0 { 1.0 } else { 0.0 };
    }
    let ln_fact: f64 = (1..=dim).map(|k| (k as f64).ln()).sum();
    let mut term = (-mean + dim as f64 * mean.ln() - ln_fact).exp();
    let mut sum = 0.0;
    let mut n = dim;
    loop {
        sum += term;
        n += 1;
        term *= mean / n as f64;
        if n as f64 > mean && term <= sum * 1e-17 {
            break;
        }
    }
    sum.min(1.0)
}

/// Smallest cutoff whose Poisson tail at `mean` is below `tol`.
pub fn min_dim_for_tail(mean: f64, tol: f64) -> usize {
    let mut dim = 1;
    while poisson_tail(mean, dim) >= tol {
        dim += 1;
    }
    dim
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_tail(mean: f64, dim: usize) -> f64 {
        // direct summation of the head, complement taken at the end
        let mut term = (-mean).exp();
        let mut head = 0.0;
        for n in 0..dim {
            if n > 0 {
                term *= mean / n as f64;
            }
            head += term;
        }
        1.0 - head
    }

    #[test]
    fn tail_matches_complement_of_head() {
        for &(mean, dim) in &[(1.0, 3), (6.25, 10), (4.0, 8), (25.0, 30)] {
            let t = poisson_tail(mean, dim);
            assert!(
                (t - brute_tail(mean, dim)).abs() < 1e-13,
                "{mean} {dim}: {t}"
            );
        }
    }

    #[test]
    fn vacuum_has_no_tail() {
        assert_eq!(poisson_tail(0.0, 1), 0.0);
        assert_eq!(poisson_tail(0.0, 0), 1.0);
    }

    #[test]
    fn rule_values() {
        assert_eq!(required_dim(0.0), 19);
        assert_eq!(required_dim(2.5), 41);
        assert_eq!(required_dim(5.0), 74);
        assert!(check_dim(10, 2.5, "test").is_err());
        assert!(check_dim(41, 2.5, "test").is_ok());
    }

    #[test]
    fn min_dim_is_tight() {
        let d = min_dim_for_tail(6.25, TAIL_TOLERANCE);
        assert!(poisson_tail(6.25, d) < TAIL_TOLERANCE);
        assert!(poisson_tail(6.25, d - 1) >= TAIL_TOLERANCE);
    }
}
