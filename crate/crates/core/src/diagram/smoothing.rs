//! Oriented (Seifert) smoothing of a long diagram.
//!
//! The walk moves over gaps: gap `g` lies just before slot `g`, and gap `2n`
//! is the end of the line. Reaching an unsmoothed slot passes over it to the
//! next gap. Reaching a smoothed slot `s` re-enters the host right after the
//! arrow's other endpoint.

use std::collections::BTreeMap;

use super::{Arrow, ArrowId, End, GaussDiagram, Host};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothedComponent {
    /// Induced diagram on the component. Circle components are canonicalized.
    pub diagram: GaussDiagram,
    /// Endpoints met in traversal order.
    pub passage: Vec<(ArrowId, End)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    pub linear: SmoothedComponent,
    pub circles: Vec<SmoothedComponent>,
    /// Unsmoothed arrows whose two endpoints landed on different components.
    pub split_arrows: Vec<ArrowId>,
}

impl Smoothing {
    pub fn component_count(&self) -> usize {
        1 + self.circles.len()
    }
}

pub fn oriented_smoothing(diagram: &GaussDiagram, smoothed: &[ArrowId]) -> Result<Smoothing> {
    if diagram.host() != Host::Line {
        return Err(Error::NotLineHost);
    }
    for &id in smoothed {
        diagram.index_of(id)?;
    }
    let table = diagram.slot_table();
    let arrows = diagram.arrows();
    let slots = table.len();
    let is_smoothed = |s: usize| smoothed.contains(&arrows[table[s].0].id);

    let step = |g: usize| -> usize {
        if is_smoothed(g) {
            arrows[table[g].0].partner(g) + 1
        } else {
            g + 1
        }
    };
    let record = |g: usize, passage: &mut Vec<(ArrowId, End)>| {
        if !is_smoothed(g) {
            let (i, end) = table[g];
            passage.push((arrows[i].id, end));
        }
    };

    let mut visited = vec![false; slots + 1];
    let mut passages = Vec::new();
    let mut linear = Vec::new();
    let mut g = 0;
    while g < slots {
        visited[g] = true;
        record(g, &mut linear);
        g = step(g);
    }
    passages.push(linear);
    while let Some(start) = (0..slots).find(|&g| !visited[g]) {
        let mut passage = Vec::new();
        let mut g = start;
        loop {
            visited[g] = true;
            record(g, &mut passage);
            g = step(g);
            if g == start {
                break;
            }
        }
        passages.push(passage);
    }

    let mut home: BTreeMap<ArrowId, usize> = BTreeMap::new();
    let mut split = Vec::new();
    for (c, p) in passages.iter().enumerate() {
        for &(id, _) in p {
            match home.get(&id) {
                Some(&other) if other != c => split.push(id),
                _ => {
                    home.insert(id, c);
                }
            }
        }
    }

    let build = |c: usize, passage: &[(ArrowId, End)]| -> SmoothedComponent {
        let kept: Vec<(ArrowId, End)> =
            passage.iter().copied().filter(|(id, _)| !split.contains(id)).collect();
        let host = if c == 0 { Host::Line } else { Host::Circle };
        let lookup = |id: ArrowId| *diagram.arrow(id).expect("arrow of the diagram");
        let diagram = GaussDiagram::from_sequence(host, &kept, |id| lookup(id).sign, |id| lookup(id).label)
            .expect("components of a smoothing are valid diagrams");
        let diagram = if c == 0 { diagram } else { diagram.canonicalize() };
        SmoothedComponent { diagram, passage: passage.to_vec() }
    };

    let mut comps: Vec<SmoothedComponent> = passages.iter().enumerate().map(|(c, p)| build(c, p)).collect();
    let linear = comps.remove(0);
    split.sort_unstable();
    Ok(Smoothing { linear, circles: comps, split_arrows: split })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct WalkOutcome {
    /// The linear component met every endpoint.
    pub one_component: bool,
    /// Every arrow is met on the linear component, first at its tail.
    pub ascending: bool,
}

/// Linear walk of the smoothing at every arrow of `arrows`, given by their
/// (tail, head) positions in any common coordinate.
pub(crate) fn seifert_walk(arrows: &[Arrow]) -> WalkOutcome {
    let k = arrows.len();
    let mut slots: Vec<(usize, usize, bool)> = Vec::with_capacity(2 * k);
    for (i, a) in arrows.iter().enumerate() {
        slots.push((a.tail, i, true));
        slots.push((a.head, i, false));
    }
    slots.sort_unstable_by_key(|s| s.0);
    let mut partner = vec![0usize; 2 * k];
    let mut first = vec![usize::MAX; k];
    for (p, &(_, i, _)) in slots.iter().enumerate() {
        if first[i] == usize::MAX {
            first[i] = p;
        } else {
            partner[p] = first[i];
            partner[first[i]] = p;
        }
    }
    let mut met = vec![false; k];
    let mut ascending = true;
    let mut count = 0;
    let mut g = 0;
    while g < 2 * k {
        let (_, i, is_tail) = slots[g];
        if !met[i] {
            met[i] = true;
            ascending &= is_tail;
        }
        count += 1;
        g = partner[g] + 1;
    }
    WalkOutcome { one_component: count == 2 * k, ascending: ascending && met.iter().all(|&m| m) }
}
