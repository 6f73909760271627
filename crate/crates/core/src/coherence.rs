//! Glauber coherence functions of two-mode fields and the polarization
//! condition `a_y ρ = p a_x ρ`.
//!
//! Field prefactors and propagation phases are set to 1, so
//! `Γ^{(m_x, m_y, n_x, n_y)} = Tr[ρ a_x†^{m_x} a_y†^{m_y} a_x^{n_x} a_y^{n_y}]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    annihilation, expectation_product, normal_ordered_monomial, CMatrix, TwoModeState,
};
use crate::poincare::PolarizationIndex;

pub const DEFAULT_MAX_ORDER: usize = 6;

/// Operator powers `(m_x, m_y, n_x, n_y)`: creation powers first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoherenceOrder {
    pub mx: usize,
    pub my: usize,
    pub nx: usize,
    pub ny: usize,
}

impl CoherenceOrder {
    pub fn new(mx: usize, my: usize, nx: usize, ny: usize) -> Result<Self> {
        Self::with_max(mx, my, nx, ny, DEFAULT_MAX_ORDER)
    }

    pub fn with_max(mx: usize, my: usize, nx: usize, ny: usize, max_order: usize) -> Result<Self> {
        let order = Self { mx, my, nx, ny };
        if order.total() > max_order {
            return Err(Error::validation(format!(
                "order {order} exceeds the maximum total degree {max_order}"
            )));
        }
        Ok(order)
    }

    pub fn total(&self) -> usize {
        self.mx + self.my + self.nx + self.ny
    }

    /// Swapped creation and annihilation powers.
    pub fn conjugate(&self) -> Self {
        Self {
            mx: self.nx,
            my: self.ny,
            nx: self.mx,
            ny: self.my,
        }
    }

    /// The single-mode order `(m_x + m_y, 0, n_x + n_y, 0)`.
    pub fn collapsed(&self) -> Self {
        Self {
            mx: self.mx + self.my,
            my: 0,
            nx: self.nx + self.ny,
            ny: 0,
        }
    }
}

impl std::fmt::Display for CoherenceOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.mx, self.my, self.nx, self.ny)
    }
}

/// Every order of total degree `≤ max_total`, in lexicographic order.
pub fn orders_up_to(max_total: usize) -> Vec<CoherenceOrder> {
    let mut out = Vec::new();
    for mx in 0..=max_total {
        for my in 0..=max_total - mx {
            for nx in 0..=max_total - mx - my {
                for ny in 0..=max_total - mx - my - nx {
                    out.push(CoherenceOrder { mx, my, nx, ny });
                }
            }
        }
    }
    out
}

fn check_order_dim(state: &TwoModeState, order: &CoherenceOrder) -> Result<()> {
    let (nx, ny) = state.mean_photon_numbers();
    let reach = (order.mx + order.nx).max(order.my + order.ny);
    let required = reach + nx.max(ny).ceil() as usize + 1;
    if state.dim() < required {
        return Err(Error::Truncation {
            got: state.dim(),
            required,
            context: format!("coherence order {order}"),
        });
    }
    Ok(())
}

/// `Γ^{(m_x, m_y, n_x, n_y)}`.
pub fn coherence_function(state: &TwoModeState, order: &CoherenceOrder) -> Result<Complex64> {
    check_order_dim(state, order)?;
    let dim = state.dim();
    let ox = normal_ordered_monomial(order.mx, order.nx, dim)?;
    let oy = normal_ordered_monomial(order.my, order.ny, dim)?;
    expectation_product(state, &ox, &oy)
}

/// Frobenius norm of `(a_y − p a_x) ρ`, restricted to photon numbers below
/// `dim − 1` in both modes (the top row of a truncated `a` is always zero).
pub fn polarization_residual(state: &TwoModeState, p: PolarizationIndex) -> Result<f64> {
    let dim = state.dim();
    if dim < 2 {
        return Ok(0.0);
    }
    let a = annihilation(dim)?.into_entries();
    let at = a.transpose();
    let pv = p.value();
    let keep = dim - 1;
    // ρ = Σ w_i |ψ_i⟩⟨ψ_i|, so ‖Aρ‖² = Σ_ij w_i w_j ⟨Aψ_j|Aψ_i⟩⟨ψ_i|ψ_j⟩
    let images: Vec<CMatrix> = state
        .components()
        .iter()
        .map(|(_, psi)| {
            let phi = psi * &at - &a * psi * pv;
            phi.view((0, 0), (keep, keep)).into_owned()
        })
        .collect();
    let comps = state.components();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (wi, pi)) in comps.iter().enumerate() {
        for (j, (wj, pj)) in comps.iter().enumerate() {
            acc += images[j].dotc(&images[i]) * pi.dotc(pj) * (wi * wj);
        }
    }
    Ok(acc.re.max(0.0).sqrt())
}

/// Both sides of the single-mode factorization law
/// `Γ^{(m_x, m_y, n_x, n_y)} = p*^{m_y} p^{n_y} Γ^{(m_x+m_y, 0, n_x+n_y, 0)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_error: f64,
}

pub fn factorization_check(
    state: &TwoModeState,
    p: PolarizationIndex,
    order: &CoherenceOrder,
) -> Result<Factorization> {
    let lhs = coherence_function(state, order)?;
    let pv = p.value();
    let scale = pv.conj().powu(order.my as u32) * pv.powu(order.ny as u32);
    let rhs = scale * coherence_function(state, &order.collapsed())?;
    Ok(Factorization {
        lhs,
        rhs,
        abs_error: (lhs - rhs).norm(),
    })
}
