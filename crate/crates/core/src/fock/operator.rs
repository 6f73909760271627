use std::ops::Mul;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Row of the two-mode basis state `|n_x, n_y⟩` in a space truncated to `dim`
/// levels per mode.
///
/// This is the only place the tensor ordering is spelled out; all two-mode
/// code goes through this function, [`split_two_mode_index`],
/// [`amplitude_matrix`] and [`amplitude_vector`].
#[inline]
pub fn two_mode_index(nx: usize, ny: usize, dim: usize) -> usize {
    nx * dim + ny
}

#[inline]
pub fn split_two_mode_index(index: usize, dim: usize) -> (usize, usize) {
    (index / dim, index % dim)
}

/// Reshapes a two-mode state vector into the `dim × dim` matrix `Ψ[n_x, n_y]`.
pub fn amplitude_matrix(psi: &CVector, dim: usize) -> CMatrix {
    debug_assert_eq!(psi.len(), dim * dim);
    CMatrix::from_fn(dim, dim, |nx, ny| psi[two_mode_index(nx, ny, dim)])
}

/// Inverse of [`amplitude_matrix`].
pub fn amplitude_vector(amplitudes: &CMatrix) -> CVector {
    let dim = amplitudes.nrows();
    CVector::from_fn(dim * dim, |i, _| {
        let (nx, ny) = split_two_mode_index(i, dim);
        amplitudes[(nx, ny)]
    })
}

fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Largest entrywise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise modulus of `m − m†`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Single-mode operator on the Fock space truncated to photon numbers
/// `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    entries: CMatrix,
}

impl TruncatedOperator {
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::validation(format!(
                "operator matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if !all_finite(&entries) {
            return Err(Error::validation("operator matrix has non-finite entries"));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_matrix_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        validate_dim(dim)?;
        Ok(Self::from_matrix_unchecked(CMatrix::identity(dim, dim)))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix_unchecked(self.entries.adjoint())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::from_matrix_unchecked(&self.entries * factor)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        hermiticity_residual(&self.entries)
    }

    /// Top-left `size × size` block.
    pub fn cropped(&self, size: usize) -> Self {
        let size = size.min(self.dim());
        Self::from_matrix_unchecked(self.entries.view((0, 0), (size, size)).into_owned())
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation_pure(&self, psi: &CVector) -> Result<Complex64> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch(psi.len(), self.dim()));
        }
        Ok(psi.dotc(&(&self.entries * psi)))
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn mul(self, rhs: &TruncatedOperator) -> TruncatedOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        TruncatedOperator::from_matrix_unchecked(&self.entries * &rhs.entries)
    }
}

pub(crate) fn validate_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::validation("Fock truncation dim must be >= 1"));
    }
    Ok(())
}

/// Annihilation operator: `⟨n−1|a|n⟩ = √n` on the first superdiagonal.
pub fn annihilation(dim: usize) -> Result<TruncatedOperator> {
    validate_dim(dim)?;
    let mut m = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        m[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    Ok(TruncatedOperator::from_matrix_unchecked(m))
}

pub fn creation(dim: usize) -> Result<TruncatedOperator> {
    Ok(annihilation(dim)?.adjoint())
}

pub fn number(dim: usize) -> Result<TruncatedOperator> {
    validate_dim(dim)?;
    Ok(TruncatedOperator::from_matrix_unchecked(
        CMatrix::from_diagonal(&CVector::from_fn(dim, |n, _| Complex64::new(n as f64, 0.0))),
    ))
}

/// Normally ordered monomial `a†^m aⁿ`, exact on photon numbers `0..dim`.
///
/// The product is formed on `dim + m + n` levels and cropped so that the
/// truncation boundary never leaks into the retained block.
pub fn normal_ordered_monomial(m: usize, n: usize, dim: usize) -> Result<TruncatedOperator> {
    validate_dim(dim)?;
    let work = dim + m + n;
    let a = annihilation(work)?;
    let ad = a.adjoint();
    let mut acc = CMatrix::identity(work, work);
    for _ in 0..m {
        acc = &acc * ad.entries();
    }
    for _ in 0..n {
        acc = &acc * a.entries();
    }
    Ok(TruncatedOperator::from_matrix_unchecked(acc).cropped(dim))
}

/// Operator on two modes truncated to `dim` levels each, stored densely as a
/// `dim² × dim²` matrix in [`two_mode_index`] ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeOperator {
    dim: usize,
    entries: CMatrix,
}

impl TwoModeOperator {
    pub fn from_matrix(dim: usize, entries: CMatrix) -> Result<Self> {
        validate_dim(dim)?;
        let n = dim * dim;
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch(entries.nrows(), n));
        }
        if !all_finite(&entries) {
            return Err(Error::validation("operator matrix has non-finite entries"));
        }
        Ok(Self { dim, entries })
    }

    /// `A ⊗ B`, with `A` acting on the x mode.
    pub fn tensor(a: &TruncatedOperator, b: &TruncatedOperator) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        let dim = a.dim();
        let entries = CMatrix::from_fn(dim * dim, dim * dim, |row, col| {
            let (ox, oy) = split_two_mode_index(row, dim);
            let (ix, iy) = split_two_mode_index(col, dim);
            a.entries[(ox, ix)] * b.entries[(oy, iy)]
        });
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        validate_dim(dim)?;
        let n = dim * dim;
        Ok(Self {
            dim,
            entries: CMatrix::identity(n, n),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// `⟨out_x, out_y| Op |in_x, in_y⟩`.
    pub fn element(&self, out: (usize, usize), inp: (usize, usize)) -> Complex64 {
        self.entries[(
            two_mode_index(out.0, out.1, self.dim),
            two_mode_index(inp.0, inp.1, self.dim),
        )]
    }

    pub fn hermiticity_residual(&self) -> f64 {
        hermiticity_residual(&self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);

    fn identity_entry(i: usize, j: usize) -> Complex64 {
        if i == j {
            ONE
        } else {
            ZERO
        }
    }

    #[test]
    fn annihilation_dim_two() {
        let a = annihilation(2).unwrap();
        assert_eq!(a.entries()[(0, 0)], ZERO);
        assert_eq!(a.entries()[(0, 1)], ONE);
        assert_eq!(a.entries()[(1, 0)], ZERO);
        assert_eq!(a.entries()[(1, 1)], ZERO);
        assert!(annihilation(0).is_err());
    }

    #[test]
    fn number_operator_from_ladder() {
        let a = annihilation(4).unwrap();
        let n = &a.adjoint() * &a;
        for k in 0..4 {
            assert!((n.entries()[(k, k)] - Complex64::new(k as f64, 0.0)).norm() < 1e-15);
        }
        assert!(max_abs_diff(n.entries(), number(4).unwrap().entries()) < 1e-14);
    }

    #[test]
    fn commutator_is_identity_off_the_boundary() {
        let dim = 12;
        let a = annihilation(dim).unwrap();
        let ad = creation(dim).unwrap();
        let comm = (&a * &ad).entries() - (&ad * &a).entries();
        for i in 0..dim - 1 {
            for j in 0..dim - 1 {
                assert!((comm[(i, j)] - identity_entry(i, j)).norm() < 1e-13);
            }
        }
        // the truncation shows up only in the last diagonal entry
        assert!((comm[(dim - 1, dim - 1)].re - (1.0 - dim as f64)).abs() < 1e-12);
    }

    #[test]
    fn normal_ordered_monomial_is_exact_on_block() {
        let dim = 6;
        let op = normal_ordered_monomial(2, 1, dim).unwrap();
        // a†² a |n⟩ = √n √n √(n+1) |n+1⟩
        for n in 1..dim - 1 {
            let expected = (n as f64) * ((n + 1) as f64).sqrt();
            assert!((op.entries()[(n + 1, n)].re - expected).abs() < 1e-12);
        }
        let naive = {
            let a = annihilation(dim).unwrap();
            let ad = a.adjoint();
            &(&ad * &ad) * &a
        };
        // lowering before raising never crosses the cutoff, so the naive product agrees
        assert!(max_abs_diff(op.entries(), naive.entries()) < 1e-12);
    }

    #[test]
    fn index_helpers_round_trip() {
        let dim = 5;
        for i in 0..dim * dim {
            let (x, y) = split_two_mode_index(i, dim);
            assert_eq!(two_mode_index(x, y, dim), i);
        }
        let v = CVector::from_fn(dim * dim, |i, _| Complex64::new(i as f64, -(i as f64)));
        assert_eq!(amplitude_vector(&amplitude_matrix(&v, dim)), v);
        assert_eq!(amplitude_matrix(&v, dim)[(2, 3)], v[13]);
    }

    #[test]
    fn tensor_entries_factorize() {
        let a = TruncatedOperator::from_matrix(CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(i as f64 + 1.0, j as f64)
        }))
        .unwrap();
        let b = TruncatedOperator::from_matrix(CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i * j) as f64, 1.0)
        }))
        .unwrap();
        let t = TwoModeOperator::tensor(&a, &b).unwrap();
        for (ox, oy, ix, iy) in [(0, 1, 2, 0), (2, 2, 1, 1), (1, 0, 0, 2)] {
            assert_eq!(
                t.element((ox, oy), (ix, iy)),
                a.entries()[(ox, ix)] * b.entries()[(oy, iy)]
            );
        }
        // agrees with nalgebra's Kronecker product under the documented ordering
        assert_eq!(t.entries(), &a.entries().kronecker(b.entries()));
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(TruncatedOperator::from_matrix(CMatrix::zeros(2, 3)).is_err());
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(TruncatedOperator::from_matrix(m).is_err());
        assert!(TwoModeOperator::from_matrix(2, CMatrix::identity(3, 3)).is_err());
    }
}
