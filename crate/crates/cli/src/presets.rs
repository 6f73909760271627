//! Parameter sets of the four published Wigner sweeps.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use polqpdf::qpdf::{sweep_modulus, sweep_phase};
use polqpdf::{
    Complex64, Method, OrderParameter, PolarizationIndex, QpdfGrid, Result, SectionParams,
};

/// Upper end of the amplitude sweeps.
pub const AMPLITUDE_MAX: f64 = 8.0;
pub const PHASE_MODULUS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    F1a,
    F1b,
    F2c,
    F2d,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// Phase sweep at fixed `|α_x|`.
    Phase { modulus: f64 },
    /// Amplitude sweep over `[0, max]` at fixed `arg α_x`.
    Amplitude { phase: f64, max: f64 },
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::F1a, Figure::F1b, Figure::F2c, Figure::F2d];

    pub fn name(&self) -> &'static str {
        match self {
            Figure::F1a => "figure1a",
            Figure::F1b => "figure1b",
            Figure::F2c => "figure2c",
            Figure::F2d => "figure2d",
        }
    }

    pub fn caption(&self) -> &'static str {
        match self {
            Figure::F1a => "W(s=0) vs arg \u{3b1}: |\u{3b1}|=5, p=q=0.0049(1+i), \u{3b2}=2e^{i\u{3c0}/2}",
            Figure::F1b => "W(s=0) vs arg \u{3b1}: |\u{3b1}|=5, p=q=2^{-1/2}(1+i), \u{3b2}=20^{-1/2}e^{i atan 2}",
            Figure::F2c => "W(s=0) vs |\u{3b1}|: arg \u{3b1}=\u{3c0}/4, p=q=0.0049(1+i), \u{3b2}=2e^{i\u{3c0}/2}",
            Figure::F2d => "W(s=0) vs |\u{3b1}|: arg \u{3b1}=\u{3c0}/2, p=q=2^{-1/2}(1+i), \u{3b2}=20^{-1/2}e^{i atan 2}",
        }
    }

    pub fn params(&self) -> SectionParams {
        let (pq, beta) = match self {
            Figure::F1a | Figure::F2c => (
                Complex64::new(0.0049, 0.0049),
                Complex64::from_polar(2.0, FRAC_PI_2),
            ),
            Figure::F1b | Figure::F2d => (
                Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
                Complex64::from_polar(20f64.powf(-0.5), 2f64.atan()),
            ),
        };
        let idx = PolarizationIndex::new(pq).expect("preset index is finite");
        SectionParams {
            beta,
            q: idx,
            p: idx,
            s: OrderParameter::WIGNER,
        }
    }

    pub fn axis(&self) -> Axis {
        match self {
            Figure::F1a | Figure::F1b => Axis::Phase {
                modulus: PHASE_MODULUS,
            },
            Figure::F2c => Axis::Amplitude {
                phase: FRAC_PI_4,
                max: AMPLITUDE_MAX,
            },
            Figure::F2d => Axis::Amplitude {
                phase: FRAC_PI_2,
                max: AMPLITUDE_MAX,
            },
        }
    }

    pub fn sweep(&self, n_points: usize, method: Method, dim: Option<usize>) -> Result<QpdfGrid> {
        let params = self.params();
        match self.axis() {
            Axis::Phase { modulus } => sweep_phase(&params, modulus, n_points, method, dim),
            Axis::Amplitude { phase, max } => {
                sweep_modulus(&params, phase, max, n_points, method, dim)
            }
        }
    }
}
