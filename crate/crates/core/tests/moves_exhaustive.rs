//! Every move on every small diagram is invertible and respects the parity
//! axioms.

use gaussforge_core::generators::all_long_diagrams;
use gaussforge_core::moves::{apply_move_tracked, enumerate_moves, AppliedMove, MoveInstance, R2Shape};
use gaussforge_core::parity::parity_axiom_check;
use gaussforge_core::{End, GaussDiagram};
use rayon::prelude::*;

/// The move undoing `applied`, read off from the slots it touched.
fn inverse(applied: &AppliedMove, mv: &MoveInstance) -> MoveInstance {
    let before = &applied.before;
    match *mv {
        MoveInstance::R1Insert { .. } => MoveInstance::R1Delete { id: applied.inserted[0] },
        MoveInstance::R2Insert { .. } => MoveInstance::R2Delete { x: applied.inserted[0], y: applied.inserted[1] },
        MoveInstance::R3 { .. } => *mv,
        MoveInstance::R1Delete { id } => {
            let a = before.arrow(id).unwrap();
            MoveInstance::R1Insert { gap: a.first_slot(), sign: a.sign, forward: a.points_forward() }
        }
        MoveInstance::R2Delete { x, y } => {
            let table = before.slot_table();
            let mut slots: Vec<usize> = [x, y].iter().flat_map(|&id| {
                let a = before.arrow(id).unwrap();
                [a.tail, a.head]
            }).collect();
            slots.sort_unstable();
            let (i, end) = table[slots[0]];
            let lead = &before.arrows()[i];
            let (j, _) = table[slots[2]];
            MoveInstance::R2Insert {
                first: slots[0],
                second: slots[2] - 2,
                shape: R2Shape { parallel: i == j, tails_first: end == End::Tail, sign: lead.sign },
            }
        }
    }
}

/// Failures found among all moves of one diagram.
fn check_diagram(d: &GaussDiagram) -> Vec<String> {
    let mut failures = Vec::new();
    let original = d.canonicalize();
    for mv in enumerate_moves(d) {
        let applied = apply_move_tracked(d, &mv).expect("enumerated moves apply");
        for v in parity_axiom_check(&applied) {
            failures.push(format!("{d:?} {mv:?}: {v}"));
        }
        let back = inverse(&applied, &mv);
        if !enumerate_moves(&applied.after).contains(&back) {
            failures.push(format!("{mv:?} on {d:?}: inverse {back:?} not enumerated"));
            continue;
        }
        match apply_move_tracked(&applied.after, &back) {
            Ok(undone) if undone.after.canonicalize() == original => {}
            other => failures.push(format!("{mv:?} on {d:?}: inverse gives {other:?}")),
        }
    }
    failures
}

fn check_up_to(n: usize) -> (usize, Vec<String>) {
    let diagrams: Vec<GaussDiagram> = (0..=n).flat_map(all_long_diagrams).collect();
    let failures: Vec<String> = diagrams.par_iter().flat_map_iter(check_diagram).collect();
    (diagrams.len(), failures)
}

#[test]
fn moves_are_invertible_and_respect_parity() {
    let (count, failures) = check_up_to(4);
    assert_eq!(count, 1 + 4 + 48 + 960 + 26880);
    assert!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
}
