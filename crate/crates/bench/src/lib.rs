//! Inputs shared by the benchmarks.

use polqpdf::fock::two_mode_coherent_density;
use polqpdf::{Complex64, OrderParameter, PolarizationIndex, SectionParams, TwoModeState};

pub fn beta() -> Complex64 {
    Complex64::new(1.2, -0.8)
}

pub fn gamma() -> Complex64 {
    Complex64::new(-0.6, 1.1)
}

pub fn coherent_state(dim: usize) -> TwoModeState {
    two_mode_coherent_density(beta(), gamma(), dim).expect("cutoff covers the fixture amplitudes")
}

pub fn section() -> SectionParams {
    let p = PolarizationIndex::new(Complex64::new(0.5, 0.5)).unwrap();
    SectionParams {
        beta: beta(),
        q: p,
        p,
        s: OrderParameter::WIGNER,
    }
}
