//! Linear maps between lattices of labelled diagrams.

use itertools::Itertools;

use super::arrow::{ArrowDiagram, Chord, Direction};
use crate::sum::DiagramSum;

/// Lowers every label above `n + 1` to `n + 1`.
pub fn d_map(sum: &DiagramSum<ArrowDiagram>, n: u32) -> DiagramSum<ArrowDiagram> {
    sum.map_linear(|d| DiagramSum::single(d.map_chords(|c| Chord { label: c.label.min(n + 1), ..*c }), 1))
}

/// Drops terms with `t` or more arrows.
pub fn pi_map(sum: &DiagramSum<ArrowDiagram>, t: usize) -> DiagramSum<ArrowDiagram> {
    sum.filter(|d| d.len() < t)
}

/// Erases all arrowheads.
pub fn bar_map(sum: &DiagramSum<ArrowDiagram>) -> DiagramSum<ArrowDiagram> {
    sum.map_linear(|d| DiagramSum::single(d.map_chords(|c| Chord { direction: Direction::Undirected, ..*c }), 1))
}

/// Sum over all ways of directing the chords; already directed chords keep
/// their direction.
pub fn mu_map(sum: &DiagramSum<ArrowDiagram>) -> DiagramSum<ArrowDiagram> {
    sum.map_linear(|d| {
        if d.is_empty() {
            return DiagramSum::single(d.clone(), 1);
        }
        d.chords()
            .iter()
            .map(|c| match c.direction {
                Direction::Undirected => vec![
                    Chord { direction: Direction::Forward, ..*c },
                    Chord { direction: Direction::Backward, ..*c },
                ],
                _ => vec![*c],
            })
            .multi_cartesian_product()
            .map(|chords| (ArrowDiagram::from_chords(chords), 1))
            .collect()
    })
}
