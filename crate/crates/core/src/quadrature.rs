//! Tensor Gauss–Legendre rules over square boxes and intervals.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Square box `[−L, L]²` with `nodes` Gauss–Legendre points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            half_width: 6.0,
            nodes: 200,
        }
    }
}

impl QuadratureSpec {
    pub fn new(half_width: f64, nodes: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::validation(format!(
                "half width {half_width} must be > 0"
            )));
        }
        if nodes == 0 {
            return Err(Error::validation("quadrature needs at least one node"));
        }
        Ok(Self { half_width, nodes })
    }

    /// Nodes and weights along one axis of the box.
    pub fn axis(&self) -> Vec<(f64, f64)> {
        rule_on(self.nodes, -self.half_width, self.half_width)
    }
}

/// `n`-point Gauss–Legendre nodes and weights mapped onto `[a, b]`.
pub fn rule_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("rule needs at least one node");
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    GaussLegendre::new(n)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect()
}

/// `∫_a^b f` with an `n`-point rule on each of `segments` equal pieces.
pub fn composite(n: usize, segments: usize, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let h = (b - a) / segments as f64;
    let base = rule_on(n, 0.0, h);
    let mut acc = 0.0;
    for seg in 0..segments {
        let lo = a + seg as f64 * h;
        acc += base.iter().map(|&(x, w)| w * f(lo + x)).sum::<f64>();
    }
    acc
}

/// `∫∫_{[−L,L]²} f(x, y) dx dy`.
pub fn integrate_box(spec: &QuadratureSpec, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
    let axis = spec.axis();
    let mut acc = 0.0;
    for &(y, wy) in &axis {
        let mut row = 0.0;
        for &(x, wx) in &axis {
            row += wx * f(x, y);
        }
        acc += wy * row;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_box_integral() {
        let spec = QuadratureSpec::default();
        let v = integrate_box(&spec, |x, y| (-(x * x + y * y)).exp());
        assert!((v - PI).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exactness() {
        let rule = rule_on(4, 0.0, 2.0);
        let v: f64 = rule.iter().map(|&(x, w)| w * x.powi(7)).sum();
        assert!((v - 256.0 / 8.0).abs() < 1e-12);
        assert!((composite(8, 5, 0.0, PI, f64::sin) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 10).is_err());
        assert!(QuadratureSpec::new(1.0, 0).is_err());
    }
}
