//! Classical parametrization of polarized light.
//!
//! A perfectly polarized field is described by one random complex amplitude
//! plus two non-random angles on the Poincaré sphere. The amplitudes along a
//! pair of orthogonal polarization modes are
//!
//! ```text
//! α_x = A₀ cos(χ₀/2) e^{i(φ − Δ₀/2)}
//! α_y = A₀ sin(χ₀/2) e^{i(φ + Δ₀/2)}
//! ```
//!
//! and their ratio `p = α_y / α_x = tan(χ₀/2) e^{iΔ₀}` is the index of
//! polarization. Only the ratio is physical; `φ` and `A₀` are the random part.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// Folds an angle into `(−π, π]`.
pub fn wrap_signed(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a > PI {
        a - TAU
    } else {
        a
    }
}

/// Folds an angle into `[0, 2π)`.
pub fn wrap_unsigned(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Smallest distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}

/// Poincaré-sphere parametrization `(A₀, χ₀, Δ₀, φ)` of a polarized field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareParams {
    a0: f64,
    chi0: f64,
    delta0: f64,
    phi: f64,
}

impl PoincareParams {
    /// Checks `a0 ≥ 0`, `0 ≤ chi0 ≤ π`, `−π < delta0 ≤ π` and `0 ≤ phi < 2π`.
    pub fn new(a0: f64, chi0: f64, delta0: f64, phi: f64) -> Result<Self> {
        if !(a0.is_finite() && a0 >= 0.0) {
            return Err(Error::validation(format!(
                "amplitude a0 = {a0} must be >= 0"
            )));
        }
        if !(0.0..=PI).contains(&chi0) {
            return Err(Error::validation(format!("chi0 = {chi0} outside [0, pi]")));
        }
        if !(delta0 > -PI && delta0 <= PI) {
            return Err(Error::validation(format!(
                "delta0 = {delta0} outside (-pi, pi]"
            )));
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::validation(format!("phi = {phi} outside [0, 2pi)")));
        }
        Ok(Self {
            a0,
            chi0,
            delta0,
            phi,
        })
    }

    /// Builds parameters from arbitrary angles, folding them into their canonical
    /// intervals. `chi0` itself is not folded and must lie in `[0, π]`.
    pub fn canonical(a0: f64, chi0: f64, delta0: f64, phi: f64) -> Result<Self> {
        Self::new(a0, chi0, wrap_signed(delta0), wrap_unsigned(phi))
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn chi0(&self) -> f64 {
        self.chi0
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Polarization direction on the sphere, independent of `A₀` and `φ`.
    pub fn jones_vector(&self) -> JonesVector {
        JonesVector::from_angles(self.chi0, self.delta0)
    }

    pub fn polarization_index(&self) -> Result<PolarizationIndex> {
        PolarizationIndex::from_angles(self.chi0, self.delta0)
    }
}

/// Mode amplitudes `(α_x, α_y)` of the field described by `p`.
pub fn poincare_to_amplitudes(p: &PoincareParams) -> (Complex64, Complex64) {
    let half = 0.5 * p.chi0;
    let ax = Complex64::from_polar(p.a0 * half.cos(), p.phi - 0.5 * p.delta0);
    let ay = Complex64::from_polar(p.a0 * half.sin(), p.phi + 0.5 * p.delta0);
    (ax, ay)
}

/// Inverse of [`poincare_to_amplitudes`].
///
/// When one amplitude vanishes (`χ₀ ∈ {0, π}`) the relative phase `Δ₀` is
/// unobservable and is reported as 0; `φ` is then the phase of the surviving
/// amplitude.
pub fn amplitudes_to_poincare(ax: Complex64, ay: Complex64) -> Result<PoincareParams> {
    let (mx, my) = (ax.norm(), ay.norm());
    if mx == 0.0 && my == 0.0 {
        return Err(Error::Degenerate(
            "both mode amplitudes are zero; polarization angles undefined".into(),
        ));
    }
    let a0 = mx.hypot(my);
    let chi0 = 2.0 * my.atan2(mx);
    let (delta0, phi) = if my == 0.0 {
        (0.0, wrap_unsigned(ax.arg()))
    } else if mx == 0.0 {
        (0.0, wrap_unsigned(ay.arg()))
    } else {
        let delta0 = wrap_signed(ay.arg() - ax.arg());
        (delta0, wrap_unsigned(ax.arg() + 0.5 * delta0))
    };
    PoincareParams::new(a0, chi0.min(PI), delta0, phi)
}

/// Index of polarization: the non-random ratio `α_y / α_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationIndex(Complex64);

impl PolarizationIndex {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Pole(format!(
                "index of polarization {value} is not finite"
            )));
        }
        Ok(Self(value))
    }

    /// `tan(χ₀/2) e^{iΔ₀}`. Rejects the pole at `χ₀ = π`.
    pub fn from_angles(chi0: f64, delta0: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&chi0) {
            return Err(Error::validation(format!("chi0 = {chi0} outside [0, pi]")));
        }
        if chi0 >= PI {
            return Err(Error::Pole(
                "chi0 = pi puts all light in the y mode; index of polarization is infinite".into(),
            ));
        }
        Self::new(Complex64::from_polar((0.5 * chi0).tan(), delta0))
    }

    pub fn from_amplitudes(ax: Complex64, ay: Complex64) -> Result<Self> {
        if ax == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole(
                "x amplitude is zero; index of polarization is infinite".into(),
            ));
        }
        Self::new(ay / ax)
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// `(χ₀, Δ₀)` with `Δ₀` canonicalized to 0 when `p = 0`.
    pub fn angles(&self) -> (f64, f64) {
        let m = self.0.norm();
        let delta0 = if m == 0.0 {
            0.0
        } else {
            wrap_signed(self.0.arg())
        };
        (2.0 * m.atan(), delta0)
    }
}

/// Index of polarization of the amplitude pair `(ax, ay)`.
pub fn index_of_polarization(ax: Complex64, ay: Complex64) -> Result<PolarizationIndex> {
    PolarizationIndex::from_amplitudes(ax, ay)
}

/// Unit complex polarization vector in the linear basis `(ê_x, ê_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    ex: Complex64,
    ey: Complex64,
}

impl JonesVector {
    pub fn new(ex: Complex64, ey: Complex64) -> Result<Self> {
        let norm2 = ex.norm_sqr() + ey.norm_sqr();
        if (norm2 - 1.0).abs() > UNIT_TOL {
            return Err(Error::validation(format!(
                "Jones vector must have unit norm, got |e|^2 = {norm2}"
            )));
        }
        Ok(Self { ex, ey })
    }

    /// Normalizes `(ex, ey)`; fails on the zero vector.
    pub fn normalized(ex: Complex64, ey: Complex64) -> Result<Self> {
        let norm = (ex.norm_sqr() + ey.norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::Degenerate("zero Jones vector".into()));
        }
        Ok(Self {
            ex: ex / norm,
            ey: ey / norm,
        })
    }

    /// `(cos(χ₀/2) e^{−iΔ₀/2}, sin(χ₀/2) e^{+iΔ₀/2})`.
    pub fn from_angles(chi0: f64, delta0: f64) -> Self {
        let half = 0.5 * chi0;
        Self {
            ex: Complex64::from_polar(half.cos(), -0.5 * delta0),
            ey: Complex64::from_polar(half.sin(), 0.5 * delta0),
        }
    }

    pub fn x() -> Self {
        Self {
            ex: Complex64::new(1.0, 0.0),
            ey: Complex64::new(0.0, 0.0),
        }
    }

    pub fn y() -> Self {
        Self {
            ex: Complex64::new(0.0, 0.0),
            ey: Complex64::new(1.0, 0.0),
        }
    }

    pub fn ex(&self) -> Complex64 {
        self.ex
    }

    pub fn ey(&self) -> Complex64 {
        self.ey
    }

    /// Hermitian product `self* · other`.
    pub fn inner(&self, other: &JonesVector) -> Complex64 {
        self.ex.conj() * other.ex + self.ey.conj() * other.ey
    }

    /// The orthogonal unit vector `(−e_y*, e_x*)`.
    pub fn orthogonal(&self) -> Self {
        Self {
            ex: -self.ey.conj(),
            ey: self.ex.conj(),
        }
    }
}

/// Orthonormal pair of polarization vectors `(ε̂, ε̂⊥)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisPair {
    eps: JonesVector,
    eps_perp: JonesVector,
}

impl BasisPair {
    pub fn new(eps: JonesVector, eps_perp: JonesVector) -> Result<Self> {
        let overlap = eps_perp.inner(&eps).norm();
        if overlap > UNIT_TOL {
            return Err(Error::validation(format!(
                "basis vectors are not orthogonal: |<eps_perp, eps>| = {overlap:e}"
            )));
        }
        Ok(Self { eps, eps_perp })
    }

    /// `(ê_x, ê_y)`.
    pub fn linear() -> Self {
        Self {
            eps: JonesVector::x(),
            eps_perp: JonesVector::y(),
        }
    }

    /// `((1, i)/√2, (1, −i)/√2)`.
    pub fn circular() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            eps: JonesVector {
                ex: Complex64::new(h, 0.0),
                ey: Complex64::new(0.0, h),
            },
            eps_perp: JonesVector {
                ex: Complex64::new(h, 0.0),
                ey: Complex64::new(0.0, -h),
            },
        }
    }

    /// Basis whose first mode is `eps`.
    pub fn aligned_with(eps: JonesVector) -> Self {
        Self {
            eps,
            eps_perp: eps.orthogonal(),
        }
    }

    pub fn eps(&self) -> JonesVector {
        self.eps
    }

    pub fn eps_perp(&self) -> JonesVector {
        self.eps_perp
    }
}

/// Index of polarization of a field polarized along `e0`, seen from `basis`:
/// `(ε̂⊥* · ε̂₀) / (ε̂* · ε̂₀)`.
pub fn iop_in_basis(e0: &JonesVector, basis: &BasisPair) -> Result<Complex64> {
    let den = basis.eps.inner(e0);
    if den.norm() <= UNIT_TOL {
        return Err(Error::Pole(
            "field is orthogonal to the first basis mode; index of polarization is infinite".into(),
        ));
    }
    Ok(basis.eps_perp.inner(e0) / den)
}

/// Mode amplitudes in `basis` of the field with linear-basis amplitudes
/// `(ax, ay)`.
pub fn transform_amplitudes(
    ax: Complex64,
    ay: Complex64,
    basis: &BasisPair,
) -> (Complex64, Complex64) {
    let e = basis.eps;
    let f = basis.eps_perp;
    (
        e.ex.conj() * ax + e.ey.conj() * ay,
        f.ex.conj() * ax + f.ey.conj() * ay,
    )
}
