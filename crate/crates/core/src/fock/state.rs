//! Truncated single- and two-mode states.
//!
//! States are kept as convex ensembles of pure components. A two-mode pure
//! component is held as its amplitude matrix `Ψ[n_x, n_y]`, so that
//! `Tr[ρ (A ⊗ B)] = Σ_c w_c Tr[Ψ_c† A Ψ_c Bᵀ]` costs `O(dim³)` instead of
//! touching a `dim² × dim²` density matrix.

use num_complex::Complex64;

use super::operator::{
    amplitude_matrix, amplitude_vector, hermiticity_residual, validate_dim, CMatrix, CVector,
    TruncatedOperator, TwoModeOperator,
};
use super::truncation::{min_dim_for_tail, poisson_tail, TAIL_TOLERANCE};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-9;

/// Truncated coherent state `|β⟩`, renormalized after truncation.
///
/// Fails when the discarded Poisson weight exceeds [`TAIL_TOLERANCE`]; the
/// error carries the smallest admissible `dim`.
pub fn coherent_vector(beta: Complex64, dim: usize) -> Result<CVector> {
    validate_dim(dim)?;
    let mean = beta.norm_sqr();
    let tail = poisson_tail(mean, dim);
    if tail >= TAIL_TOLERANCE {
        return Err(Error::Truncation {
            got: dim,
            required: min_dim_for_tail(mean, TAIL_TOLERANCE),
            context: format!("coherent amplitude {beta} loses Poisson tail {tail:e}"),
        });
    }
    let mut v = CVector::zeros(dim);
    let mut amp = Complex64::new((-0.5 * mean).exp(), 0.0);
    v[0] = amp;
    for n in 1..dim {
        amp = amp * beta / (n as f64).sqrt();
        v[n] = amp;
    }
    let norm = v.norm();
    Ok(v.unscale(norm))
}

fn check_weights(weights: impl Iterator<Item = f64>) -> Result<()> {
    let mut total = 0.0;
    for w in weights {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::validation(format!("mixture weight {w} is negative")));
        }
        total += w;
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::validation(format!(
            "mixture weights sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// Single-mode state truncated to `dim` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    dim: usize,
    components: Vec<(f64, CVector)>,
}

impl SingleModeState {
    pub fn pure(psi: CVector) -> Result<Self> {
        validate_dim(psi.len())?;
        let norm = psi.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!("state vector has norm {norm}")));
        }
        Ok(Self {
            dim: psi.len(),
            components: vec![(1.0, psi)],
        })
    }

    pub fn coherent(beta: Complex64, dim: usize) -> Result<Self> {
        Self::pure(coherent_vector(beta, dim)?)
    }

    /// Number state `|n⟩`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::Truncation {
                got: dim,
                required: n + 1,
                context: format!("Fock state |{n}>"),
            });
        }
        let mut v = CVector::zeros(dim);
        v[n] = Complex64::new(1.0, 0.0);
        Self::pure(v)
    }

    pub fn mixture(parts: &[(f64, &SingleModeState)]) -> Result<Self> {
        check_weights(parts.iter().map(|(w, _)| *w))?;
        let dim = parts
            .first()
            .ok_or_else(|| Error::validation("empty mixture"))?
            .1
            .dim;
        let mut components = Vec::new();
        for (w, st) in parts {
            if st.dim != dim {
                return Err(Error::DimensionMismatch(st.dim, dim));
            }
            components.extend(st.components.iter().map(|(v, psi)| (w * v, psi.clone())));
        }
        Ok(Self { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[(f64, CVector)] {
        &self.components
    }

    pub fn density(&self) -> CMatrix {
        let mut rho = CMatrix::zeros(self.dim, self.dim);
        for (w, psi) in &self.components {
            rho += psi * psi.adjoint() * Complex64::new(*w, 0.0);
        }
        rho
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.components
            .iter()
            .map(|(w, psi)| {
                w * psi
                    .iter()
                    .enumerate()
                    .map(|(n, z)| n as f64 * z.norm_sqr())
                    .sum::<f64>()
            })
            .sum()
    }

    /// Phase-space radius `√⟨n⟩` of the widest component.
    pub fn support_modulus(&self) -> f64 {
        self.components
            .iter()
            .map(|(_, psi)| {
                psi.iter()
                    .enumerate()
                    .map(|(n, z)| n as f64 * z.norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    pub fn expectation(&self, op: &TruncatedOperator) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, psi) in &self.components {
            acc += op.expectation_pure(psi)? * *w;
        }
        Ok(acc)
    }
}

/// Two-mode state truncated to `dim` levels per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    dim: usize,
    components: Vec<(f64, CMatrix)>,
    factors: Option<Box<(SingleModeState, SingleModeState)>>,
}

impl TwoModeState {
    /// Pure state from a length-`dim²` vector in two-mode index ordering.
    pub fn pure(dim: usize, psi: &CVector) -> Result<Self> {
        validate_dim(dim)?;
        if psi.len() != dim * dim {
            return Err(Error::DimensionMismatch(psi.len(), dim * dim));
        }
        let norm = psi.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!("state vector has norm {norm}")));
        }
        Ok(Self {
            dim,
            components: vec![(1.0, amplitude_matrix(psi, dim))],
            factors: None,
        })
    }

    /// `ρ_x ⊗ ρ_y`.
    pub fn product(x: &SingleModeState, y: &SingleModeState) -> Result<Self> {
        if x.dim != y.dim {
            return Err(Error::DimensionMismatch(x.dim, y.dim));
        }
        let mut components = Vec::with_capacity(x.components.len() * y.components.len());
        for (wx, px) in &x.components {
            for (wy, py) in &y.components {
                components.push((wx * wy, px * py.transpose()));
            }
        }
        Ok(Self {
            dim: x.dim,
            components,
            factors: Some(Box::new((x.clone(), y.clone()))),
        })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        let v = SingleModeState::fock(0, dim)?;
        Self::product(&v, &v)
    }

    pub fn mixture(parts: &[(f64, &TwoModeState)]) -> Result<Self> {
        check_weights(parts.iter().map(|(w, _)| *w))?;
        let dim = parts
            .first()
            .ok_or_else(|| Error::validation("empty mixture"))?
            .1
            .dim;
        let mut components = Vec::new();
        for (w, st) in parts {
            if st.dim != dim {
                return Err(Error::DimensionMismatch(st.dim, dim));
            }
            components.extend(st.components.iter().map(|(v, psi)| (w * v, psi.clone())));
        }
        Ok(Self {
            dim,
            components,
            factors: None,
        })
    }

    /// Validates a `dim² × dim²` density matrix (Hermitian within 1e−12,
    /// unit trace within 1e−9, smallest eigenvalue ≥ −1e−10) and stores its
    /// eigen-ensemble.
    pub fn from_density(dim: usize, rho: &CMatrix) -> Result<Self> {
        validate_dim(dim)?;
        let n = dim * dim;
        if rho.nrows() != n || rho.ncols() != n {
            return Err(Error::DimensionMismatch(rho.nrows(), n));
        }
        let herm = hermiticity_residual(rho);
        if herm > 1e-12 {
            return Err(Error::validation(format!(
                "density not Hermitian (residual {herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-9 || tr.im.abs() > 1e-9 {
            return Err(Error::validation(format!("density trace is {tr}, not 1")));
        }
        let eig = rho.clone().symmetric_eigen();
        let min = eig
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(Error::validation(format!(
                "density not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        let components = eig
            .eigenvalues
            .iter()
            .zip(eig.eigenvectors.column_iter())
            .filter(|(lam, _)| **lam > 0.0)
            .map(|(lam, v)| (*lam, amplitude_matrix(&v.into_owned(), dim)))
            .collect();
        Ok(Self {
            dim,
            components,
            factors: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Pure components as `(weight, Ψ)` pairs.
    pub fn components(&self) -> &[(f64, CMatrix)] {
        &self.components
    }

    /// Single-mode factors, when the state was built as a product.
    pub fn factors(&self) -> Option<(&SingleModeState, &SingleModeState)> {
        self.factors.as_deref().map(|(x, y)| (x, y))
    }

    /// Dense `dim² × dim²` density matrix.
    pub fn density(&self) -> CMatrix {
        let n = self.dim * self.dim;
        let mut rho = CMatrix::zeros(n, n);
        for (w, psi) in &self.components {
            let v = amplitude_vector(psi);
            rho += &v * v.adjoint() * Complex64::new(*w, 0.0);
        }
        rho
    }

    pub fn trace(&self) -> f64 {
        self.components
            .iter()
            .map(|(w, psi)| w * psi.norm_squared())
            .sum()
    }

    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for (wi, pi) in &self.components {
            for (wj, pj) in &self.components {
                acc += wi * wj * pi.dotc(pj).norm_sqr();
            }
        }
        acc
    }

    /// `(⟨n_x⟩, ⟨n_y⟩)`.
    pub fn mean_photon_numbers(&self) -> (f64, f64) {
        let mut nx = 0.0;
        let mut ny = 0.0;
        for (w, psi) in &self.components {
            for ((i, j), z) in psi
                .iter()
                .enumerate()
                .map(|(k, z)| ((k % self.dim, k / self.dim), z))
            {
                nx += w * i as f64 * z.norm_sqr();
                ny += w * j as f64 * z.norm_sqr();
            }
        }
        (nx, ny)
    }

    /// Phase-space radius `√⟨n⟩` of the widest component and mode.
    pub fn support_modulus(&self) -> f64 {
        let (nx, ny) = self.mean_photon_numbers();
        nx.max(ny).sqrt()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch(dim, self.dim));
        }
        Ok(())
    }
}

/// `|β, γ⟩⟨β, γ|`.
pub fn two_mode_coherent_density(
    beta: Complex64,
    gamma: Complex64,
    dim: usize,
) -> Result<TwoModeState> {
    TwoModeState::product(
        &SingleModeState::coherent(beta, dim)?,
        &SingleModeState::coherent(gamma, dim)?,
    )
}

/// `Tr[ρ · Op]` for a dense two-mode operator.
pub fn expectation(state: &TwoModeState, op: &TwoModeOperator) -> Result<Complex64> {
    state.check_dim(op.dim())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, psi) in &state.components {
        let v = amplitude_vector(psi);
        acc += v.dotc(&(op.entries() * &v)) * *w;
    }
    Ok(acc)
}

/// `Tr[ρ · (A ⊗ B)]` without forming the Kronecker product.
pub fn expectation_product(
    state: &TwoModeState,
    a: &TruncatedOperator,
    b: &TruncatedOperator,
) -> Result<Complex64> {
    state.check_dim(a.dim())?;
    state.check_dim(b.dim())?;
    let bt = b.entries().transpose();
    let mut acc = Complex64::new(0.0, 0.0);
    for (w, psi) in &state.components {
        let applied = a.entries() * psi * &bt;
        acc += psi.dotc(&applied) * *w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::operator::{annihilation, number, TwoModeOperator};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_coherent_vector() {
        let v = coherent_vector(c(0.0, 0.0), 5).unwrap();
        assert_eq!(v[0], c(1.0, 0.0));
        assert!(v.iter().skip(1).all(|z| *z == c(0.0, 0.0)));
    }

    #[test]
    fn coherent_vector_is_normalized_with_poisson_mean() {
        for beta in [c(3.0, 0.0), c(-1.2, 2.1), c(0.4, -0.3)] {
            let v = coherent_vector(beta, 40).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let n = number(40).unwrap().expectation_pure(&v).unwrap();
            assert!((n.re - beta.norm_sqr()).abs() < 1e-9);
            let a = annihilation(40).unwrap().expectation_pure(&v).unwrap();
            assert!((a - beta).norm() < 1e-9);
        }
    }

    #[test]
    fn too_small_cutoff_reports_required_dim() {
        match coherent_vector(c(2.5, 0.0), 10) {
            Err(Error::Truncation { got, required, .. }) => {
                assert_eq!(got, 10);
                assert!(coherent_vector(c(2.5, 0.0), required).is_ok());
                assert!(coherent_vector(c(2.5, 0.0), required - 1).is_err());
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn two_mode_coherent_properties() {
        let (beta, gamma) = (c(0.8, -0.4), c(-0.5, 1.0));
        let dim = 30;
        let st = two_mode_coherent_density(beta, gamma, dim).unwrap();
        assert!((st.trace() - 1.0).abs() < 1e-12);
        assert!((st.purity() - 1.0).abs() < 1e-10);
        let a = annihilation(dim).unwrap();
        let id = TruncatedOperator::identity(dim).unwrap();
        let ax = expectation_product(&st, &a, &id).unwrap();
        let ay = expectation_product(&st, &id, &a).unwrap();
        assert!((ax - beta).norm() < 1e-9);
        assert!((ay - gamma).norm() < 1e-9);
        let (nx, ny) = st.mean_photon_numbers();
        assert!((nx - beta.norm_sqr()).abs() < 1e-9);
        assert!((ny - gamma.norm_sqr()).abs() < 1e-9);
    }

    #[test]
    fn vacuum_two_mode_projector() {
        let st = TwoModeState::vacuum(4).unwrap();
        let rho = st.density();
        assert_eq!(rho[(0, 0)], c(1.0, 0.0));
        assert!((rho.trace() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(rho.iter().skip(1).all(|z| *z == c(0.0, 0.0)));
    }

    #[test]
    fn dense_and_product_expectations_agree() {
        let dim = 12;
        let x = SingleModeState::coherent(c(0.3, 0.2), dim).unwrap();
        let y = SingleModeState::fock(2, dim).unwrap();
        let pure = TwoModeState::product(&x, &y).unwrap();
        let vac = TwoModeState::vacuum(dim).unwrap();
        let mixed = TwoModeState::mixture(&[(0.3, &pure), (0.7, &vac)]).unwrap();
        let a = annihilation(dim).unwrap();
        let b = number(dim).unwrap();
        let op_a = &a.adjoint() * &a;
        let dense = TwoModeOperator::tensor(&op_a, &b).unwrap();
        let e1 = expectation(&mixed, &dense).unwrap();
        let e2 = expectation_product(&mixed, &op_a, &b).unwrap();
        assert!((e1 - e2).norm() < 1e-13);
        // explicit trace against the dense density matrix
        let e3 = (mixed.density() * dense.entries()).trace();
        assert!((e1 - e3).norm() < 1e-13);
        assert!((e1.re - 0.3 * 0.13 * 2.0).abs() < 1e-9);
    }

    #[test]
    fn expectation_identity_and_number() {
        let dim = 25;
        let beta = c(1.1, -0.7);
        let st = two_mode_coherent_density(beta, c(0.2, 0.0), dim).unwrap();
        let id = TwoModeOperator::identity(dim).unwrap();
        assert!((expectation(&st, &id).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        let nx = TwoModeOperator::tensor(
            &number(dim).unwrap(),
            &TruncatedOperator::identity(dim).unwrap(),
        )
        .unwrap();
        assert!((expectation(&st, &nx).unwrap().re - beta.norm_sqr()).abs() < 1e-9);
        assert!(matches!(
            expectation(&st, &TwoModeOperator::identity(3).unwrap()),
            Err(Error::DimensionMismatch(_, _))
        ));
    }

    #[test]
    fn from_density_round_trip() {
        let dim = 4;
        let a = two_mode_coherent_density(c(0.4, 0.1), c(-0.2, 0.3), dim);
        // dim 4 is too small for the tail rule at these amplitudes
        assert!(a.is_err());
        let x = SingleModeState::fock(1, dim).unwrap();
        let y = SingleModeState::fock(0, dim).unwrap();
        let p1 = TwoModeState::product(&x, &y).unwrap();
        let p2 = TwoModeState::vacuum(dim).unwrap();
        let mixed = TwoModeState::mixture(&[(0.5, &p1), (0.5, &p2)]).unwrap();
        let rho = mixed.density();
        let back = TwoModeState::from_density(dim, &rho).unwrap();
        assert!(crate::fock::operator::max_abs_diff(&back.density(), &rho) < 1e-12);
        assert!((back.purity() - 0.5).abs() < 1e-12);

        let mut bad = rho.clone();
        bad[(0, 0)] = c(2.0, 0.0);
        assert!(TwoModeState::from_density(dim, &bad).is_err());
    }

    #[test]
    fn mixture_weights_validated() {
        let v = TwoModeState::vacuum(3).unwrap();
        assert!(TwoModeState::mixture(&[(0.5, &v), (0.4, &v)]).is_err());
        assert!(TwoModeState::mixture(&[(-0.5, &v), (1.5, &v)]).is_err());
        assert!(TwoModeState::mixture(&[]).is_err());
    }
}
