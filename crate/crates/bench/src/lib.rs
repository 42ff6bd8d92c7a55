//! Benchmarks for invariant evaluation and lattice rank computation.
//! The benchmark inputs live here so both bench targets share them.

use gaussforge_core::generators::{closed_braid, directed_earring_diagram};
use gaussforge_core::GaussDiagram;

/// Closed braids σ1^n of growing size.
pub fn torus_knots(max_crossings: usize) -> Vec<(usize, GaussDiagram)> {
    (3..=max_crossings)
        .step_by(2)
        .map(|n| (n, closed_braid(&vec![1; n]).expect("positive braid words close up")))
        .collect()
}

/// Directed earring witnesses for small label bounds.
pub fn earring_witnesses() -> Vec<(usize, GaussDiagram)> {
    (1..=3).map(|m| (m, directed_earring_diagram(m, 2))).collect()
}
