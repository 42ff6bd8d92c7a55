//! Reidemeister moves on Gauss diagrams.
//!
//! Arrows point from the over-strand to the under-strand and carry the
//! crossing sign. The move set is R1 and R2 in every sign and direction, and
//! the braid-like R3 whose three crossings share one sign.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{Arrow, ArrowId, GaussDiagram, Sign};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
}

/// Shape of an inserted R2 pair. The first segment reads `x y`; the second
/// reads `x y` when `parallel`, else `y x`. Both tails sit on the first
/// segment when `tails_first`. `x` gets `sign`, `y` the opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct R2Shape {
    pub parallel: bool,
    pub tails_first: bool,
    pub sign: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveInstance {
    /// New arrow on two adjacent slots at `gap`; the tail comes first when
    /// `forward`.
    R1Insert { gap: usize, sign: Sign, forward: bool },
    R1Delete { id: ArrowId },
    /// Two new segments at gaps `first <= second`.
    R2Insert { first: usize, second: usize, shape: R2Shape },
    R2Delete { x: ArrowId, y: ArrowId },
    /// Swaps the endpoints on each of the three segments. `top_mid` runs from
    /// the top strand to the middle one, and so on.
    R3 { top_mid: ArrowId, top_bottom: ArrowId, mid_bottom: ArrowId },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Insert { .. } => MoveKind::R1Insert,
            MoveInstance::R1Delete { .. } => MoveKind::R1Delete,
            MoveInstance::R2Insert { .. } => MoveKind::R2Insert,
            MoveInstance::R2Delete { .. } => MoveKind::R2Delete,
            MoveInstance::R3 { .. } => MoveKind::R3,
        }
    }

    /// Change in the number of arrows.
    pub fn growth(&self) -> isize {
        match self.kind() {
            MoveKind::R1Insert => 1,
            MoveKind::R1Delete => -1,
            MoveKind::R2Insert => 2,
            MoveKind::R2Delete => -2,
            MoveKind::R3 => 0,
        }
    }
}

/// A move applied with arrow identities tracked: arrows of `before` keep
/// their ids in `after`, inserted arrows get fresh ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppliedMove {
    pub kind: MoveKind,
    pub before: GaussDiagram,
    pub after: GaussDiagram,
    pub inserted: Vec<ArrowId>,
    pub deleted: Vec<ArrowId>,
    /// The R3 triple, empty for other moves.
    pub moved: Vec<ArrowId>,
}

impl AppliedMove {
    /// The arrows the move acts on.
    pub fn local_arrows(&self) -> Vec<ArrowId> {
        [&self.inserted[..], &self.deleted[..], &self.moved[..]].concat()
    }
}

fn r2_deletable(a: &Arrow, b: &Arrow) -> bool {
    if a.sign == b.sign {
        return false;
    }
    let mut s = [a.tail, a.head, b.tail, b.head];
    s.sort_unstable();
    if s[1] != s[0] + 1 || s[3] != s[2] + 1 {
        return false;
    }
    let first = |x: usize| x <= s[1];
    let one_each = first(a.tail) != first(a.head);
    one_each && first(a.tail) == first(b.tail)
}

/// Role assignment of a triple as (top_mid, top_bottom, mid_bottom) if it is
/// an R3 site.
fn r3_roles(tm: &Arrow, tb: &Arrow, mb: &Arrow) -> bool {
    if tm.sign != tb.sign || tb.sign != mb.sign {
        return false;
    }
    let adjacent = |x: usize, y: usize| x.abs_diff(y) == 1;
    if !(adjacent(tm.tail, tb.tail) && adjacent(tm.head, mb.tail) && adjacent(tb.head, mb.head)) {
        return false;
    }
    let order = [tm.tail < tb.tail, tm.head < mb.tail, tb.head < mb.head];
    order.iter().all(|&o| o) || order.iter().all(|&o| !o)
}

pub fn enumerate_moves(diagram: &GaussDiagram) -> Vec<MoveInstance> {
    let arrows = diagram.arrows();
    let gaps = diagram.endpoint_count() + 1;
    let mut moves = Vec::new();

    for gap in 0..gaps {
        for sign in [Sign::Plus, Sign::Minus] {
            for forward in [true, false] {
                moves.push(MoveInstance::R1Insert { gap, sign, forward });
            }
        }
    }
    for a in arrows {
        if a.tail.abs_diff(a.head) == 1 {
            moves.push(MoveInstance::R1Delete { id: a.id });
        }
    }
    for first in 0..gaps {
        for second in first..gaps {
            for parallel in [true, false] {
                for tails_first in [true, false] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let shape = R2Shape { parallel, tails_first, sign };
                        moves.push(MoveInstance::R2Insert { first, second, shape });
                    }
                }
            }
        }
    }
    for (i, a) in arrows.iter().enumerate() {
        for b in &arrows[i + 1..] {
            if r2_deletable(a, b) {
                moves.push(MoveInstance::R2Delete { x: a.id, y: b.id });
            }
        }
    }
    for tm in arrows {
        for tb in arrows {
            for mb in arrows {
                if tm.id != tb.id && tb.id != mb.id && tm.id != mb.id && r3_roles(tm, tb, mb) {
                    moves.push(MoveInstance::R3 { top_mid: tm.id, top_bottom: tb.id, mid_bottom: mb.id });
                }
            }
        }
    }
    moves
}

/// Inserts new slots: `at[i]` is the gap receiving the i-th new slot, in
/// nondecreasing order. Returns the shifted old arrows and the positions of
/// the new slots.
fn open_slots(arrows: &[Arrow], at: &[usize]) -> (Vec<Arrow>, Vec<usize>) {
    let shift = |s: usize| s + at.iter().filter(|&&g| g <= s).count();
    let shifted = arrows.iter().map(|a| Arrow { tail: shift(a.tail), head: shift(a.head), ..*a }).collect();
    let fresh = at.iter().enumerate().map(|(i, &g)| g + i).collect();
    (shifted, fresh)
}

fn stale(mv: &MoveInstance) -> Error {
    Error::StaleMove(format!("{mv:?}"))
}

/// Applies a move, keeping the ids of untouched arrows.
pub fn apply_move_tracked(diagram: &GaussDiagram, mv: &MoveInstance) -> Result<AppliedMove> {
    let arrows = diagram.arrows();
    let gaps = diagram.endpoint_count() + 1;
    let next_id = arrows.iter().map(|a| a.id).max().unwrap_or(0) + 1;
    let host = diagram.host();
    let mut inserted = Vec::new();
    let mut deleted = Vec::new();
    let mut moved = Vec::new();

    let after = match *mv {
        MoveInstance::R1Insert { gap, sign, forward } => {
            if gap >= gaps {
                return Err(stale(mv));
            }
            let (mut new, slots) = open_slots(arrows, &[gap, gap]);
            let (tail, head) = if forward { (slots[0], slots[1]) } else { (slots[1], slots[0]) };
            new.push(Arrow::new(next_id, tail, head, sign));
            inserted.push(next_id);
            GaussDiagram::new(host, new)?
        }
        MoveInstance::R1Delete { id } => {
            let a = diagram.arrow(id).ok_or_else(|| stale(mv))?;
            if a.tail.abs_diff(a.head) != 1 {
                return Err(stale(mv));
            }
            deleted.push(id);
            diagram.delete_arrows(&[id])?
        }
        MoveInstance::R2Insert { first, second, shape } => {
            if first > second || second >= gaps {
                return Err(stale(mv));
            }
            let (mut new, s) = open_slots(arrows, &[first, first, second, second]);
            let (x, y) = (next_id, next_id + 1);
            let (x2, y2) = if shape.parallel { (s[2], s[3]) } else { (s[3], s[2]) };
            let ((xt, xh), (yt, yh)) =
                if shape.tails_first { ((s[0], x2), (s[1], y2)) } else { ((x2, s[0]), (y2, s[1])) };
            new.push(Arrow::new(x, xt, xh, shape.sign));
            new.push(Arrow::new(y, yt, yh, shape.sign.flip()));
            inserted.extend([x, y]);
            GaussDiagram::new(host, new)?
        }
        MoveInstance::R2Delete { x, y } => {
            let (a, b) = (diagram.arrow(x).ok_or_else(|| stale(mv))?, diagram.arrow(y).ok_or_else(|| stale(mv))?);
            if x == y || !r2_deletable(a, b) {
                return Err(stale(mv));
            }
            deleted.extend([x, y]);
            diagram.delete_arrows(&[x, y])?
        }
        MoveInstance::R3 { top_mid, top_bottom, mid_bottom } => {
            let get = |id| diagram.arrow(id).copied().ok_or_else(|| stale(mv));
            let (tm, tb, mb) = (get(top_mid)?, get(top_bottom)?, get(mid_bottom)?);
            if top_mid == top_bottom || top_mid == mid_bottom || top_bottom == mid_bottom || !r3_roles(&tm, &tb, &mb) {
                return Err(stale(mv));
            }
            moved.extend([top_mid, top_bottom, mid_bottom]);
            diagram.map_arrows(|a| {
                if a.id == top_mid {
                    Arrow { tail: tb.tail, head: mb.tail, ..a }
                } else if a.id == top_bottom {
                    Arrow { tail: tm.tail, head: mb.head, ..a }
                } else if a.id == mid_bottom {
                    Arrow { tail: tm.head, head: tb.head, ..a }
                } else {
                    a
                }
            })
        }
    };
    Ok(AppliedMove { kind: mv.kind(), before: diagram.clone(), after, inserted, deleted, moved })
}

/// Applies a move and returns the canonical result.
pub fn apply_move(diagram: &GaussDiagram, mv: &MoveInstance) -> Result<GaussDiagram> {
    Ok(apply_move_tracked(diagram, mv)?.after.canonicalize())
}

/// Reverses the arrow and negates its sign: a crossing switch.
pub fn switch_arrow(diagram: &GaussDiagram, id: ArrowId) -> Result<GaussDiagram> {
    diagram.index_of(id)?;
    Ok(diagram.map_arrows(|a| {
        if a.id == id {
            Arrow { tail: a.head, head: a.tail, sign: a.sign.flip(), ..a }
        } else {
            a
        }
    }))
}

/// Reverses the arrow, keeping sign and label: the virtualization move.
pub fn flip_arrow(diagram: &GaussDiagram, id: ArrowId) -> Result<GaussDiagram> {
    diagram.index_of(id)?;
    Ok(diagram.map_arrows(|a| if a.id == id { Arrow { tail: a.head, head: a.tail, ..a } } else { a }))
}

/// Default arrow cap for random walks.
pub const DEFAULT_MAX_ARROWS: usize = 16;

/// One step of a random walk, with the move that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub instance: MoveInstance,
    pub applied: AppliedMove,
    pub diagram: GaussDiagram,
}

/// Seeded random walk. Moves are drawn uniformly among the enumerated
/// instances, leaving out insertions that would exceed `max_arrows`.
pub fn random_walk_steps(diagram: &GaussDiagram, steps: usize, seed: u64, max_arrows: usize) -> Vec<WalkStep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = diagram.canonicalize();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let size = current.len() as isize;
        let all = enumerate_moves(&current);
        let mut moves: Vec<MoveInstance> =
            all.iter().copied().filter(|mv| mv.growth() <= 0 || size + mv.growth() <= max_arrows as isize).collect();
        if moves.is_empty() {
            moves = all;
        }
        let mv = moves[rng.gen_range(0..moves.len())];
        let applied = apply_move_tracked(&current, &mv).expect("enumerated moves apply");
        current = applied.after.canonicalize();
        out.push(WalkStep { instance: mv, applied, diagram: current.clone() });
    }
    out
}

/// The trajectory of a seeded random walk, starting with the canonical form
/// of `diagram`.
pub fn random_walk(diagram: &GaussDiagram, steps: usize, seed: u64) -> Vec<GaussDiagram> {
    std::iter::once(diagram.canonicalize())
        .chain(random_walk_steps(diagram, steps, seed, DEFAULT_MAX_ARROWS).into_iter().map(|s| s.diagram))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss_code, serialize, Host};
    use crate::parity::parity_axiom_check;

    fn d(code: &str) -> GaussDiagram {
        parse_gauss_code(code).unwrap()
    }

    fn count(moves: &[MoveInstance], kind: MoveKind) -> usize {
        moves.iter().filter(|m| m.kind() == kind).count()
    }

    #[test]
    fn moves_on_the_empty_diagram() {
        let moves = enumerate_moves(&GaussDiagram::empty(Host::Line));
        assert_eq!(count(&moves, MoveKind::R1Insert), 4);
        assert_eq!(count(&moves, MoveKind::R2Insert), 8);
        assert_eq!(moves.len(), 12);
    }

    #[test]
    fn r1_sites() {
        assert_eq!(count(&enumerate_moves(&d("1T+ 1H+")), MoveKind::R1Delete), 1);
        assert_eq!(count(&enumerate_moves(&d("1T+ 2H+ 3T+ 1H+ 2T+ 3H+")), MoveKind::R1Delete), 0);
    }

    #[test]
    fn r2_insert_on_empty() {
        for mv in enumerate_moves(&GaussDiagram::empty(Host::Line)) {
            if mv.kind() != MoveKind::R2Insert {
                continue;
            }
            let out = apply_move(&GaussDiagram::empty(Host::Line), &mv).unwrap();
            assert_eq!(out.len(), 2);
            assert_ne!(out.arrows()[0].sign, out.arrows()[1].sign);
            assert_eq!(count(&enumerate_moves(&out), MoveKind::R2Delete), 1);
        }
    }

    #[test]
    fn r2_pair_of_the_unknot() {
        // Strand 1 over strand 2 twice, then strand 2 continues.
        let x = d("1T+ 2T- 1H+ 2H-");
        assert_eq!(count(&enumerate_moves(&x), MoveKind::R2Delete), 1);
        let x = d("1T+ 2T- 2H- 1H+");
        assert_eq!(count(&enumerate_moves(&x), MoveKind::R2Delete), 1);
        // Equal signs or split tails are not R2 sites.
        assert_eq!(count(&enumerate_moves(&d("1T+ 2T+ 1H+ 2H+")), MoveKind::R2Delete), 0);
        assert_eq!(count(&enumerate_moves(&d("1T+ 2H- 1H+ 2T-")), MoveKind::R2Delete), 0);
    }

    #[test]
    fn r3_on_the_braid_relation() {
        // Closure-free braid pieces: crossings ab, ac, bc of strands a, b, c.
        // Segments: a = slots 0,1; b = 2,3; c = 4,5.
        let lhs = d("1T+ 2T+ 1H+ 3T+ 2H+ 3H+");
        let moves = enumerate_moves(&lhs);
        let r3: Vec<_> = moves.iter().filter(|m| m.kind() == MoveKind::R3).collect();
        assert_eq!(r3.len(), 1);
        let rhs = apply_move(&lhs, r3[0]).unwrap();
        assert_eq!(serialize(&rhs), "1T+ 2T+ 3T+ 2H+ 3H+ 1H+");
        let back: Vec<_> = enumerate_moves(&rhs).into_iter().filter(|m| m.kind() == MoveKind::R3).collect();
        assert_eq!(back.len(), 1);
        assert_eq!(apply_move(&rhs, &back[0]).unwrap(), lhs.canonicalize());
        // Mixed signs are not a site.
        let mixed = d("1T+ 2T+ 1H+ 3T- 2H+ 3H-");
        assert_eq!(count(&enumerate_moves(&mixed), MoveKind::R3), 0);
    }

    #[test]
    fn switch_and_flip() {
        let x = d("1T+ 1H+");
        let s = switch_arrow(&x, 1).unwrap();
        assert_eq!(serialize(&s), "1H- 1T-");
        assert_eq!(switch_arrow(&s, 1).unwrap(), x);
        let f = flip_arrow(&x, 1).unwrap();
        assert_eq!(serialize(&f), "1H+ 1T+");
        assert_eq!(flip_arrow(&f, 1).unwrap(), x);
        assert!(switch_arrow(&x, 2).is_err());
    }

    #[test]
    fn stale_moves_are_rejected() {
        let x = d("1T+ 2H+ 3T+ 1H+ 2T+ 3H+");
        assert!(apply_move(&x, &MoveInstance::R1Delete { id: 1 }).is_err());
        assert!(apply_move(&x, &MoveInstance::R2Delete { x: 1, y: 2 }).is_err());
        assert!(apply_move(&x, &MoveInstance::R1Insert { gap: 99, sign: Sign::Plus, forward: true }).is_err());
    }

    #[test]
    fn walks_are_deterministic_and_legal() {
        let start = d("1T+ 2H+ 3T+ 1H+ 2T+ 3H+");
        assert_eq!(random_walk(&start, 0, 1), vec![start.canonicalize()]);
        let a = random_walk(&start, 60, 9);
        assert_eq!(a, random_walk(&start, 60, 9));
        assert_ne!(a, random_walk(&start, 60, 10));
        for step in random_walk_steps(&start, 200, 3, 8) {
            assert!(step.diagram.len() <= 8);
            assert!(parity_axiom_check(&step.applied).is_empty());
        }
    }
}
