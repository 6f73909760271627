//! s-parametrized quasi-probability distributions of two-mode fields.
//!
//! Values are raw traces `Tr[ρ T(α_x, α_y, s)]`; the `1/π` per mode that
//! normalizes them against `d²α = d(Re α) d(Im α)` is applied only inside the
//! normalization integrals.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{
    check_dim, expectation_product, kernel, kernel_block, kernel_expectation_pure, required_dim,
    two_mode_coherent_density, OrderParameter, SingleModeState, TwoModeState, MAX_DIM,
};
use crate::poincare::PolarizationIndex;
use crate::quadrature::{composite, integrate_box, QuadratureSpec};

/// Largest tolerated `|Im Tr[ρT]|`, relative to `max(1, |Re Tr[ρT]|)`.
pub const IMAG_TOL: f64 = 1e-9;

/// Default number of samples per figure sweep.
pub const DEFAULT_POINTS: usize = 512;

/// Measure tag written next to plane and sphere results.
pub const PLANE_MEASURE: &str = "d2alpha=dRe*dIm;raw_trace_no_1/pi";
pub const SPHERE_MEASURE: &str = "r*dr*dphi";

/// `Tr[ρ · t(α_x, s) ⊗ t(α_y, s)]` from explicit truncated kernel matrices.
pub fn qpdf_trace(
    state: &TwoModeState,
    ax: Complex64,
    ay: Complex64,
    s: OrderParameter,
) -> Result<f64> {
    let dim = state.dim();
    let reach = ax.norm().max(ay.norm()).max(state.support_modulus());
    check_dim(dim, reach, "trace route")?;
    let tx = kernel(ax, s, dim)?;
    let ty = kernel(ay, s, dim)?;
    let z = expectation_product(state, &tx, &ty)?;
    if z.im.abs() > IMAG_TOL * z.re.abs().max(1.0) {
        return Err(Error::validation(format!(
            "trace has imaginary residue {:e} at ({ax}, {ay})",
            z.im
        )));
    }
    Ok(z.re)
}

/// Single-mode `Tr[ρ t(α, s)]`, summing intermediate photon numbers up to
/// `inner` (default: the cutoff rule at `|α| + √⟨n⟩`).
pub fn qpdf_single_trace(
    state: &SingleModeState,
    alpha: Complex64,
    s: OrderParameter,
    inner: Option<usize>,
) -> Result<f64> {
    let inner = inner.unwrap_or_else(|| required_dim(alpha.norm() + state.support_modulus()));
    let mut acc = 0.0;
    for (w, psi) in state.components() {
        acc += w * kernel_expectation_pure(psi, alpha, s, inner)?;
    }
    Ok(acc)
}

/// QPDF of the two-mode coherent state `|β, γ⟩`:
/// `(2/(1−s))² exp(−2(|α_x−β|² + |α_y−γ|²)/(1−s))`.
pub fn qpdf_coherent_closed(
    beta: Complex64,
    gamma: Complex64,
    ax: Complex64,
    ay: Complex64,
    s: OrderParameter,
) -> f64 {
    let c = s.prefactor();
    c * c * (-c * ((ax - beta).norm_sqr() + (ay - gamma).norm_sqr())).exp()
}

/// Closed-form QPDF of `|β, qβ⟩` on the manifold `α_y = p α_x`.
pub fn qpdf_polarization_section(
    beta: Complex64,
    q: PolarizationIndex,
    p: PolarizationIndex,
    ax: Complex64,
    s: OrderParameter,
) -> f64 {
    qpdf_coherent_closed(beta, q.value() * beta, ax, p.value() * ax, s)
}

/// Parameters of a polarization section: the state `|β, qβ⟩`, the field index
/// `p` and the ordering `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionParams {
    pub beta: Complex64,
    pub q: PolarizationIndex,
    pub p: PolarizationIndex,
    pub s: OrderParameter,
}

impl SectionParams {
    pub fn gamma(&self) -> Complex64 {
        self.q.value() * self.beta
    }

    pub fn closed(&self, ax: Complex64) -> f64 {
        qpdf_polarization_section(self.beta, self.q, self.p, ax, self.s)
    }

    /// Per-mode cutoff for the trace route with `|α_x| ≤ max_modulus`. The
    /// rule is applied to the largest displacement the kernel sees, `|α| + |β|`
    /// in either mode.
    pub fn trace_dim(&self, max_modulus: f64) -> usize {
        let mx = max_modulus + self.beta.norm();
        let my = self.p.value().norm() * max_modulus + self.gamma().norm();
        required_dim(mx.max(my))
    }

    fn trace_state(&self, dim: usize) -> Result<TwoModeState> {
        if dim > MAX_DIM {
            return Err(Error::Truncation {
                got: MAX_DIM,
                required: dim,
                context: "trace route exceeds the supported cutoff".into(),
            });
        }
        two_mode_coherent_density(self.beta, self.gamma(), dim)
    }

    /// Trace-route value at one point, with the cutoff picked for that point.
    pub fn trace_at(&self, ax: Complex64) -> Result<(f64, usize)> {
        let dim = self.trace_dim(ax.norm());
        let state = self.trace_state(dim)?;
        Ok((qpdf_trace(&state, ax, self.p.value() * ax, self.s)?, dim))
    }
}

/// Evaluation route for grid sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    TraceOracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::TraceOracle => "trace_oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed" => Ok(Method::ClosedForm),
            "trace_oracle" | "trace" => Ok(Method::TraceOracle),
            other => Err(Error::validation(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// `arg α_x` swept over `[0, 2π)` at fixed `|α_x|`.
    PhaseSweep,
    /// `|α_x|` swept over `[0, max]` at fixed `arg α_x`.
    AmplitudeSweep,
    /// `α_x` over a square of the complex plane.
    Plane,
}

impl AxisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisKind::PhaseSweep => "phase_sweep",
            AxisKind::AmplitudeSweep => "amplitude_sweep",
            AxisKind::Plane => "plane",
        }
    }
}

impl FromStr for AxisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phase_sweep" => Ok(AxisKind::PhaseSweep),
            "amplitude_sweep" => Ok(AxisKind::AmplitudeSweep),
            "plane" => Ok(AxisKind::Plane),
            other => Err(Error::validation(format!("unknown axis kind {other:?}"))),
        }
    }
}

/// Provenance of a [`QpdfGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridMeta {
    pub s: f64,
    pub p: Option<Complex64>,
    pub q: Option<Complex64>,
    pub beta: Option<Complex64>,
    /// The held coordinate: `|α_x|` for phase sweeps, `arg α_x` for amplitude
    /// sweeps, absent for planes.
    pub fixed: Option<f64>,
    pub dim_used: Option<usize>,
    pub method: Method,
    pub measure: String,
}

/// Sampled QPDF along one axis, or over a plane.
///
/// For [`AxisKind::Plane`], `axis_values` holds the coordinates shared by the
/// real and imaginary axes, and `values[iy * n + ix]` is the sample at
/// `axis_values[ix] + i·axis_values[iy]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QpdfGrid {
    axis_kind: AxisKind,
    axis_values: Vec<f64>,
    values: Vec<f64>,
    meta: GridMeta,
}

impl QpdfGrid {
    pub fn new(
        axis_kind: AxisKind,
        axis_values: Vec<f64>,
        values: Vec<f64>,
        meta: GridMeta,
    ) -> Result<Self> {
        if axis_values
            .windows(2)
            .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
        {
            return Err(Error::validation("grid axis must be strictly increasing"));
        }
        let expected = match axis_kind {
            AxisKind::Plane => axis_values.len() * axis_values.len(),
            _ => axis_values.len(),
        };
        if values.len() != expected {
            return Err(Error::DimensionMismatch(values.len(), expected));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "grid holds non-finite value {v}"
            )));
        }
        Ok(Self {
            axis_kind,
            axis_values,
            values,
            meta,
        })
    }

    pub fn axis_kind(&self) -> AxisKind {
        self.axis_kind
    }

    pub fn axis_values(&self) -> &[f64] {
        &self.axis_values
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meta(&self) -> &GridMeta {
        &self.meta
    }

    /// Index of the largest sample (first one on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if *v > self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn check_points(n_points: usize) -> Result<()> {
    if n_points < 2 {
        return Err(Error::validation(format!(
            "need at least 2 points, got {n_points}"
        )));
    }
    Ok(())
}

fn evaluate(
    params: &SectionParams,
    points: &[Complex64],
    method: Method,
    dim: Option<usize>,
) -> Result<(Vec<f64>, Option<usize>)> {
    match method {
        Method::ClosedForm => Ok((points.iter().map(|&a| params.closed(a)).collect(), None)),
        Method::TraceOracle => {
            let reach = points.iter().map(|a| a.norm()).fold(0.0, f64::max);
            let dim = dim.unwrap_or_else(|| params.trace_dim(reach));
            let state = params.trace_state(dim)?;
            let values = points
                .par_iter()
                .map(|&a| qpdf_trace(&state, a, params.p.value() * a, params.s))
                .collect::<Result<Vec<f64>>>()?;
            Ok((values, Some(dim)))
        }
    }
}

fn meta_for(
    params: &SectionParams,
    fixed: Option<f64>,
    dim: Option<usize>,
    method: Method,
) -> GridMeta {
    GridMeta {
        s: params.s.value(),
        p: Some(params.p.value()),
        q: Some(params.q.value()),
        beta: Some(params.beta),
        fixed,
        dim_used: dim,
        method,
        measure: PLANE_MEASURE.to_string(),
    }
}

/// Section values over `arg α_x = 2πk/n`, `k = 0..n`, at `|α_x| = modulus`.
///
/// `dim` overrides the trace-route cutoff; it is ignored by the closed form.
pub fn sweep_phase(
    params: &SectionParams,
    modulus: f64,
    n_points: usize,
    method: Method,
    dim: Option<usize>,
) -> Result<QpdfGrid> {
    check_points(n_points)?;
    if !(modulus.is_finite() && modulus >= 0.0) {
        return Err(Error::validation(format!("modulus {modulus} must be >= 0")));
    }
    let axis: Vec<f64> = (0..n_points)
        .map(|k| TAU * k as f64 / n_points as f64)
        .collect();
    let points: Vec<Complex64> = axis
        .iter()
        .map(|&t| Complex64::from_polar(modulus, t))
        .collect();
    let (values, dim) = evaluate(params, &points, method, dim)?;
    QpdfGrid::new(
        AxisKind::PhaseSweep,
        axis,
        values,
        meta_for(params, Some(modulus), dim, method),
    )
}

/// Section values over `|α_x| ∈ [0, max_modulus]` (endpoints included) at
/// fixed `arg α_x = phase`.
pub fn sweep_modulus(
    params: &SectionParams,
    phase: f64,
    max_modulus: f64,
    n_points: usize,
    method: Method,
    dim: Option<usize>,
) -> Result<QpdfGrid> {
    check_points(n_points)?;
    if !(max_modulus.is_finite() && max_modulus > 0.0) {
        return Err(Error::validation(format!(
            "max modulus {max_modulus} must be > 0"
        )));
    }
    let axis: Vec<f64> = (0..n_points)
        .map(|k| max_modulus * k as f64 / (n_points - 1) as f64)
        .collect();
    let points: Vec<Complex64> = axis
        .iter()
        .map(|&r| Complex64::from_polar(r, phase))
        .collect();
    let (values, dim) = evaluate(params, &points, method, dim)?;
    QpdfGrid::new(
        AxisKind::AmplitudeSweep,
        axis,
        values,
        meta_for(params, Some(phase), dim, method),
    )
}

fn plane_axis(half_width: f64, n: usize) -> Result<Vec<f64>> {
    check_points(n)?;
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::validation(format!(
            "half width {half_width} must be > 0"
        )));
    }
    Ok((0..n)
        .map(|k| -half_width + 2.0 * half_width * k as f64 / (n - 1) as f64)
        .collect())
}

fn plane_points(axis: &[f64]) -> Vec<Complex64> {
    axis.iter()
        .flat_map(|&y| axis.iter().map(move |&x| Complex64::new(x, y)))
        .collect()
}

/// Section values over `α_x ∈ [−L, L]²` on an `n × n` grid.
pub fn sweep_plane(
    params: &SectionParams,
    half_width: f64,
    n: usize,
    method: Method,
    dim: Option<usize>,
) -> Result<QpdfGrid> {
    let axis = plane_axis(half_width, n)?;
    let (values, dim) = evaluate(params, &plane_points(&axis), method, dim)?;
    QpdfGrid::new(
        AxisKind::Plane,
        axis,
        values,
        meta_for(params, None, dim, method),
    )
}

/// Trace-route values at the points whose cutoff fits under [`MAX_DIM`];
/// `None` elsewhere. One state is built at the cutoff of the widest
/// admissible point.
pub fn trace_where_admissible(
    params: &SectionParams,
    points: &[Complex64],
) -> Result<Vec<Option<f64>>> {
    let admissible: Vec<bool> = points
        .iter()
        .map(|a| params.trace_dim(a.norm()) <= MAX_DIM)
        .collect();
    let reach = points
        .iter()
        .zip(&admissible)
        .filter(|(_, ok)| **ok)
        .map(|(a, _)| a.norm())
        .fold(f64::NEG_INFINITY, f64::max);
    if reach == f64::NEG_INFINITY {
        return Ok(vec![None; points.len()]);
    }
    let state = params.trace_state(params.trace_dim(reach))?;
    points
        .par_iter()
        .zip(admissible.par_iter())
        .map(|(&a, &ok)| {
            if ok {
                qpdf_trace(&state, a, params.p.value() * a, params.s).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect()
}

/// Trace-route values of an arbitrary two-mode state over `α_x ∈ [−L, L]²`,
/// with `α_y = p α_x`.
pub fn sweep_plane_state(
    state: &TwoModeState,
    p: PolarizationIndex,
    s: OrderParameter,
    half_width: f64,
    n: usize,
) -> Result<QpdfGrid> {
    let axis = plane_axis(half_width, n)?;
    let values = plane_points(&axis)
        .par_iter()
        .map(|&a| qpdf_trace(state, a, p.value() * a, s))
        .collect::<Result<Vec<f64>>>()?;
    let meta = GridMeta {
        s: s.value(),
        p: Some(p.value()),
        q: None,
        beta: None,
        fixed: None,
        dim_used: Some(state.dim()),
        method: Method::TraceOracle,
        measure: PLANE_MEASURE.to_string(),
    };
    QpdfGrid::new(AxisKind::Plane, axis, values, meta)
}

/// Result of a phase-space normalization integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationReport {
    /// `(1/π)^modes ∫ W d²α …`; 1 for a properly normalized QPDF.
    pub value: f64,
    /// The box half-width is below `√⟨n⟩ + 5`, so the tails may be clipped.
    pub box_warning: bool,
    pub required_half_width: f64,
}

impl NormalizationReport {
    pub fn deviation(&self) -> f64 {
        (self.value - 1.0).abs()
    }
}

fn box_margin(support: f64) -> f64 {
    support + 5.0
}

/// `(1/π) ∫ W(α, s) d²α` over the quadrature box.
pub fn normalization_single(
    state: &SingleModeState,
    s: OrderParameter,
    quad: &QuadratureSpec,
) -> Result<NormalizationReport> {
    let support = state.support_modulus();
    let inner = required_dim(quad.half_width * std::f64::consts::SQRT_2 + support);
    let axis = quad.axis();
    let rows: Vec<f64> = axis
        .par_iter()
        .map(|&(y, _)| {
            axis.iter()
                .map(|&(x, wx)| {
                    qpdf_single_trace(state, Complex64::new(x, y), s, Some(inner)).map(|v| wx * v)
                })
                .sum::<Result<f64>>()
        })
        .collect::<Result<Vec<f64>>>()?;
    let integral: f64 = rows.iter().zip(&axis).map(|(r, &(_, wy))| wy * r).sum();
    let required = box_margin(support);
    Ok(NormalizationReport {
        value: integral / PI,
        box_warning: quad.half_width < required,
        required_half_width: required,
    })
}

/// `(1/π²) ∫∫ W(α_x, α_y, s) d²α_x d²α_y`.
///
/// Product states are integrated as the product of their two single-mode
/// integrals. Other states use the full four-dimensional tensor rule, whose
/// cost grows as `nodes⁴`; keep `quad.nodes` small for those.
pub fn normalization_check(
    state: &TwoModeState,
    s: OrderParameter,
    quad: &QuadratureSpec,
) -> Result<NormalizationReport> {
    if let Some((x, y)) = state.factors() {
        let nx = normalization_single(x, s, quad)?;
        let ny = normalization_single(y, s, quad)?;
        return Ok(NormalizationReport {
            value: nx.value * ny.value,
            box_warning: nx.box_warning || ny.box_warning,
            required_half_width: nx.required_half_width.max(ny.required_half_width),
        });
    }
    let dim = state.dim();
    let support = state.support_modulus();
    let inner = required_dim(quad.half_width * std::f64::consts::SQRT_2 + support).max(dim);
    let axis = quad.axis();
    let nodes: Vec<(Complex64, f64)> = axis
        .iter()
        .flat_map(|&(y, wy)| {
            axis.iter()
                .map(move |&(x, wx)| (Complex64::new(x, y), wx * wy))
        })
        .collect();
    let kernels = nodes
        .iter()
        .map(|&(a, _)| kernel_block(a, s, dim, inner))
        .collect::<Result<Vec<_>>>()?;
    let total = kernels
        .par_iter()
        .zip(nodes.par_iter())
        .map(|(tx, &(_, wx))| {
            let mut acc = 0.0;
            for (ty, &(_, wy)) in kernels.iter().zip(&nodes) {
                acc += wy * expectation_product(state, tx, ty)?.re;
            }
            Ok(wx * acc)
        })
        .sum::<Result<f64>>()?;
    let required = box_margin(support);
    Ok(NormalizationReport {
        value: total / (PI * PI),
        box_warning: quad.half_width < required,
        required_half_width: required,
    })
}

/// Radial and angular resolution for [`poincare_sphere_qpdf`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialQuadrature {
    /// Upper radius; chosen from the Gaussian width when absent.
    pub r_max: Option<f64>,
    pub segments: usize,
    pub nodes_per_segment: usize,
    /// Equispaced points in `arg α_x` (trapezoid rule, exact for the periodic
    /// integrand up to aliasing).
    pub phase_points: usize,
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        Self {
            r_max: None,
            segments: 24,
            nodes_per_segment: 16,
            phase_points: 512,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereQpdf {
    pub value: f64,
    pub r_max: f64,
    pub measure: &'static str,
}

/// Section QPDF integrated over the field intensity, leaving a function of
/// the polarization direction `(χ₀, Δ₀)`:
///
/// ```text
/// ∫₀^∞ ∫₀^{2π} W(β, q, p(χ₀, Δ₀), r e^{iφ}, s) r dφ dr
/// ```
pub fn poincare_sphere_qpdf(
    beta: Complex64,
    q: PolarizationIndex,
    direction: (f64, f64),
    s: OrderParameter,
    quad: &RadialQuadrature,
) -> Result<SphereQpdf> {
    let p = PolarizationIndex::from_angles(direction.0, direction.1)?;
    if quad.segments == 0 || quad.nodes_per_segment == 0 || quad.phase_points < 2 {
        return Err(Error::validation("radial quadrature resolution too small"));
    }
    let gamma = q.value() * beta;
    let pv = p.value();
    let r_max = match quad.r_max {
        Some(r) if r.is_finite() && r > 0.0 => r,
        Some(r) => return Err(Error::validation(format!("r_max {r} must be > 0"))),
        None => {
            // the section is a Gaussian in α_x centred on w with variance 1/(2c(1+|p|²))
            let a = 1.0 + pv.norm_sqr();
            let w = (beta + pv.conj() * gamma) / a;
            w.norm() + 12.0 / (s.prefactor() * a).sqrt()
        }
    };
    let n_phi = quad.phase_points;
    let dphi = TAU / n_phi as f64;
    let params = SectionParams { beta, q, p, s };
    let value = composite(quad.nodes_per_segment, quad.segments, 0.0, r_max, |r| {
        let ring: f64 = (0..n_phi)
            .map(|k| params.closed(Complex64::from_polar(r, k as f64 * dphi)))
            .sum();
        r * ring * dphi
    });
    Ok(SphereQpdf {
        value,
        r_max,
        measure: SPHERE_MEASURE,
    })
}

/// `∫∫ F(χ₀, Δ₀) sin χ₀ dχ₀ dΔ₀` of [`poincare_sphere_qpdf`] over the sphere,
/// with `n_chi` Gauss–Legendre nodes in `χ₀ ∈ (0, π)` and `n_delta`
/// equispaced azimuths.
pub fn sphere_total(
    beta: Complex64,
    q: PolarizationIndex,
    s: OrderParameter,
    n_chi: usize,
    n_delta: usize,
    quad: &RadialQuadrature,
) -> Result<f64> {
    let chi_rule = crate::quadrature::rule_on(n_chi, 0.0, PI);
    let dd = TAU / n_delta as f64;
    let mut acc = 0.0;
    for (chi, w) in chi_rule {
        for k in 0..n_delta {
            let delta = crate::poincare::wrap_signed(-PI + (k as f64 + 0.5) * dd);
            let f = poincare_sphere_qpdf(beta, q, (chi, delta), s, quad)?.value;
            acc += w * chi.sin() * dd * f;
        }
    }
    Ok(acc)
}

/// Section integral `∫ W(β, q, p, α_x, s) d²α_x / π` at fixed `p`, reported
/// for the record; it is not a normalized distribution in general.
pub fn section_plane_integral(params: &SectionParams, quad: &QuadratureSpec) -> f64 {
    integrate_box(quad, |x, y| params.closed(Complex64::new(x, y))) / PI
}
