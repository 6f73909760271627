//! Displacement operators and the s-ordered phase-space kernel.

use num_complex::Complex64;

use super::operator::{validate_dim, CMatrix, CVector, TruncatedOperator, TwoModeOperator};
use super::truncation::ln_factorials;
use crate::error::{Error, Result};
use crate::poincare::PolarizationIndex;

/// Cahill–Glauber ordering parameter `s ∈ [−1, 1)`.
///
/// `s = 0` gives the Wigner function and `s = −1` the Q function. The P
/// function (`s = 1`) is excluded since `1 − s` divides the kernel.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OrderParameter(f64);

impl OrderParameter {
    pub const WIGNER: OrderParameter = OrderParameter(0.0);
    pub const HUSIMI: OrderParameter = OrderParameter(-1.0);

    pub fn new(s: f64) -> Result<Self> {
        if s == 1.0 {
            return Err(Error::SingularOrder(s));
        }
        if !(-1.0..1.0).contains(&s) {
            return Err(Error::validation(format!(
                "ordering parameter s = {s} outside [-1, 1)"
            )));
        }
        Ok(Self(s))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// `2 / (1 − s)`.
    pub fn prefactor(&self) -> f64 {
        2.0 / (1.0 - self.0)
    }

    /// `((s + 1)/(s − 1))ⁿ`, with the Wigner case evaluated as an exact sign
    /// and `0⁰ = 1` at `s = −1`.
    pub fn diagonal_weight(&self, n: usize) -> f64 {
        if self.0 == 0.0 {
            return if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        }
        let ratio = (self.0 + 1.0) / (self.0 - 1.0);
        if ratio == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        ratio.powi(n as i32)
    }

    /// Weights for `n < len`, cut after the last one that is not exactly zero.
    fn diagonal_weights(&self, len: usize) -> Vec<f64> {
        let mut w: Vec<f64> = (0..len).map(|n| self.diagonal_weight(n)).collect();
        while w.last() == Some(&0.0) {
            w.pop();
        }
        w
    }
}

/// Matrix elements `⟨m|D(ξ)|n⟩` for `m < rows`, `n < cols`, where
/// `D(ξ) = exp(ξa† − ξ*a)`.
///
/// Uses the closed form
///
/// ```text
/// ⟨m|D(ξ)|n⟩ = √(n!/m!) ξ^{m−n} e^{−|ξ|²/2} L_n^{(m−n)}(|ξ|²)        m ≥ n
/// ⟨m|D(ξ)|n⟩ = √(m!/n!) (−ξ*)^{n−m} e^{−|ξ|²/2} L_m^{(n−m)}(|ξ|²)    m < n
/// ```
///
/// walking each diagonal `|m − n| = a` once with the three-term Laguerre
/// recurrence. The factorial ratio is carried in log form at the start of the
/// diagonal and updated multiplicatively along it.
pub fn displacement_block(xi: Complex64, rows: usize, cols: usize) -> CMatrix {
    let mut d = CMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return d;
    }
    let x = xi.norm_sqr();
    let r = xi.norm();
    let theta = xi.arg();
    let span = rows.max(cols);
    let ln_fact = ln_factorials(span);

    for a in 0..span {
        if a > 0 && r == 0.0 {
            break;
        }
        let len_lower = if a < rows { (rows - a).min(cols) } else { 0 };
        let len_upper = if a > 0 && a < cols {
            (cols - a).min(rows)
        } else {
            0
        };
        let len = len_lower.max(len_upper);
        if len == 0 {
            continue;
        }
        let ln_base = if a == 0 {
            -0.5 * x
        } else {
            a as f64 * r.ln() - 0.5 * x - 0.5 * ln_fact[a]
        };
        let base = ln_base.exp();
        if base == 0.0 {
            continue;
        }
        let lower_phase = Complex64::from_polar(1.0, a as f64 * theta);
        let upper_phase = if a % 2 == 0 {
            lower_phase.conj()
        } else {
            -lower_phase.conj()
        };

        let af = a as f64;
        let mut lag_prev = 0.0;
        let mut lag = 1.0;
        // √(k! a! / (k + a)!)
        let mut ratio = 1.0;
        for k in 0..len {
            let mag = base * ratio * lag;
            if k < len_lower {
                d[(k + a, k)] = lower_phase * mag;
            }
            if k < len_upper {
                d[(k, k + a)] = upper_phase * mag;
            }
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + af - x) * lag - (kf + af) * lag_prev) / (kf + 1.0);
            lag_prev = lag;
            lag = next;
            ratio *= ((kf + 1.0) / (kf + 1.0 + af)).sqrt();
        }
    }
    d
}

/// Displacement operator `D(ξ)` truncated to `dim` levels.
pub fn displacement(xi: Complex64, dim: usize) -> Result<TruncatedOperator> {
    validate_dim(dim)?;
    Ok(TruncatedOperator::from_matrix_unchecked(
        displacement_block(xi, dim, dim),
    ))
}

/// `D(ξ, s) = D(ξ) exp(s|ξ|²/2)`.
pub fn sordered_displacement(
    xi: Complex64,
    s: OrderParameter,
    dim: usize,
) -> Result<TruncatedOperator> {
    let scale = (0.5 * s.value() * xi.norm_sqr()).exp();
    Ok(displacement(xi, dim)?.scaled(Complex64::new(scale, 0.0)))
}

/// Top-left `rows × rows` block of the kernel `t(α, s)`, with the inner sum
/// over intermediate photon numbers running to `inner`:
///
/// ```text
/// t(α, s) = (2/(1−s)) D(α) ((s+1)/(s−1))^{a†a} D†(α)
/// ```
pub fn kernel_block(
    alpha: Complex64,
    s: OrderParameter,
    rows: usize,
    inner: usize,
) -> Result<TruncatedOperator> {
    validate_dim(rows)?;
    validate_dim(inner)?;
    let weights = s.diagonal_weights(inner);
    let d = displacement_block(alpha, rows, weights.len());
    let mut dw = d.clone();
    for (k, w) in weights.iter().enumerate() {
        dw.column_mut(k).scale_mut(*w);
    }
    let t = (dw * d.adjoint()) * Complex64::new(s.prefactor(), 0.0);
    // for s > 0 the weights grow geometrically and rounding in the product
    // breaks Hermiticity by more than the entries' own precision
    let t = (&t + t.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(TruncatedOperator::from_matrix_unchecked(t))
}

/// Kernel `t(α, s)` truncated to `dim` levels.
pub fn kernel(alpha: Complex64, s: OrderParameter, dim: usize) -> Result<TruncatedOperator> {
    kernel_block(alpha, s, dim, dim)
}

/// `⟨ψ|t(α, s)|ψ⟩ = (2/(1−s)) Σ_k w_k |⟨k|D†(α)|ψ⟩|²` with `k < inner`.
///
/// Same quantity as contracting [`kernel_block`] with `ψ`, without forming the
/// `rows × rows` product.
pub fn kernel_expectation_pure(
    psi: &CVector,
    alpha: Complex64,
    s: OrderParameter,
    inner: usize,
) -> Result<f64> {
    validate_dim(psi.len())?;
    validate_dim(inner)?;
    let weights = s.diagonal_weights(inner);
    let d = displacement_block(alpha, psi.len(), weights.len());
    let v = d.ad_mul(psi);
    let sum: f64 = weights
        .iter()
        .zip(v.iter())
        .map(|(w, z)| w * z.norm_sqr())
        .sum();
    Ok(s.prefactor() * sum)
}

/// Two-mode transiting operator `t(α_x, s) ⊗ t(α_y, s)`.
pub fn transiting(
    ax: Complex64,
    ay: Complex64,
    s: OrderParameter,
    dim: usize,
) -> Result<TwoModeOperator> {
    TwoModeOperator::tensor(&kernel(ax, s, dim)?, &kernel(ay, s, dim)?)
}

/// Transiting operator on the polarization manifold `α_y = p α_x`.
pub fn transiting_restricted(
    ax: Complex64,
    p: PolarizationIndex,
    s: OrderParameter,
    dim: usize,
) -> Result<TwoModeOperator> {
    transiting(ax, p.value() * ax, s, dim)
}
