//! Signed, directed chord diagrams on the line or the circle.
//!
//! A diagram with `n` arrows has `2n` endpoint slots numbered `0..2n` along
//! the host. Every slot carries exactly one arrow endpoint. Arrows keep their
//! ids through deletions so that iterated constructions (the map `f`, the
//! smoothings) can track individual arrows; [`GaussDiagram::canonicalize`]
//! renumbers them.

mod format;
mod smoothing;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

pub use format::{from_json, parse_gauss_code, serialize, to_json};
pub use smoothing::{oriented_smoothing, SmoothedComponent, Smoothing};
pub(crate) use smoothing::seifert_walk;

pub type ArrowId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Host {
    Line,
    Circle,
}

/// Which end of an arrow sits in a slot. `Head` orders before `Tail` so that
/// token-wise comparison agrees with the text format (`H` < `T`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Head,
    Tail,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Head => f.write_str("head"),
            End::Tail => f.write_str("tail"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An arrow label: a positive integer or the `∞` sentinel, which orders above
/// every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(k) => write!(f, "{k}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub id: ArrowId,
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
    pub label: Option<Label>,
}

impl Arrow {
    pub fn new(id: ArrowId, tail: usize, head: usize, sign: Sign) -> Self {
        Arrow { id, tail, head, sign, label: None }
    }

    pub fn with_label(mut self, label: Label) -> Self {
        self.label = Some(label);
        self
    }

    /// Slot of the endpoint met first along the host.
    pub fn first_slot(&self) -> usize {
        self.tail.min(self.head)
    }

    pub fn second_slot(&self) -> usize {
        self.tail.max(self.head)
    }

    /// True when the tail precedes the head along the host.
    pub fn points_forward(&self) -> bool {
        self.tail < self.head
    }

    pub fn end_at(&self, slot: usize) -> Option<End> {
        if slot == self.tail {
            Some(End::Tail)
        } else if slot == self.head {
            Some(End::Head)
        } else {
            None
        }
    }

    /// Slot of the opposite endpoint.
    pub fn partner(&self, slot: usize) -> usize {
        if slot == self.tail {
            self.head
        } else {
            self.tail
        }
    }
}

/// Whether the endpoints of two arrows alternate along the host.
pub fn linked(a: &Arrow, b: &Arrow) -> bool {
    let (lo, hi) = (a.first_slot(), a.second_slot());
    let inside = |s: usize| lo < s && s < hi;
    inside(b.tail) != inside(b.head)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussDiagram {
    host: Host,
    arrows: Vec<Arrow>,
}

impl GaussDiagram {
    /// Builds a diagram, checking that the arrows cover `0..2n` exactly once
    /// and that ids are distinct.
    pub fn new(host: Host, arrows: Vec<Arrow>) -> Result<Self> {
        let slots = 2 * arrows.len();
        let mut seen = vec![false; slots];
        let mut ids = BTreeSet::new();
        for a in &arrows {
            if !ids.insert(a.id) {
                return Err(Error::InvalidSlots(format!("arrow id {} used twice", a.id)));
            }
            if a.tail == a.head {
                return Err(Error::InvalidSlots(format!("arrow {} has tail = head", a.id)));
            }
            for s in [a.tail, a.head] {
                if s >= slots {
                    return Err(Error::InvalidSlots(format!("slot {s} out of range 0..{slots}")));
                }
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidSlots(format!("slot {s} used twice")));
                }
            }
        }
        Ok(GaussDiagram { host, arrows })
    }

    /// Internal constructor for layouts that are valid by construction.
    pub(crate) fn from_parts(host: Host, arrows: Vec<Arrow>) -> Self {
        debug_assert!(GaussDiagram::new(host, arrows.clone()).is_ok());
        GaussDiagram { host, arrows }
    }

    pub fn empty(host: Host) -> Self {
        GaussDiagram { host, arrows: Vec::new() }
    }

    /// Builds a line diagram from a slot sequence: `seq[s] = (id, end)`.
    /// Signs and labels are looked up per id.
    pub fn from_sequence(
        host: Host,
        seq: &[(ArrowId, End)],
        sign: impl Fn(ArrowId) -> Sign,
        label: impl Fn(ArrowId) -> Option<Label>,
    ) -> Result<Self> {
        let mut tails = std::collections::BTreeMap::new();
        let mut heads = std::collections::BTreeMap::new();
        for (slot, &(id, end)) in seq.iter().enumerate() {
            let map = match end {
                End::Tail => &mut tails,
                End::Head => &mut heads,
            };
            if map.insert(id, slot).is_some() {
                return Err(Error::DuplicateEndpoint { id, end });
            }
        }
        let mut arrows = Vec::with_capacity(tails.len());
        for (&id, &tail) in &tails {
            let head = *heads.get(&id).ok_or(Error::MissingEndpoint(id))?;
            arrows.push(Arrow { id, tail, head, sign: sign(id), label: label(id) });
        }
        if let Some(&id) = heads.keys().find(|id| !tails.contains_key(id)) {
            return Err(Error::MissingEndpoint(id));
        }
        GaussDiagram::new(host, arrows)
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn endpoint_count(&self) -> usize {
        2 * self.arrows.len()
    }

    pub fn ids(&self) -> Vec<ArrowId> {
        self.arrows.iter().map(|a| a.id).collect()
    }

    pub fn arrow(&self, id: ArrowId) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn index_of(&self, id: ArrowId) -> Result<usize> {
        self.arrows.iter().position(|a| a.id == id).ok_or(Error::UnknownArrow(id))
    }

    /// For each slot, the index (into [`arrows`](Self::arrows)) of the arrow
    /// owning it and which end sits there.
    pub fn slot_table(&self) -> Vec<(usize, End)> {
        let mut table = vec![(usize::MAX, End::Tail); self.endpoint_count()];
        for (i, a) in self.arrows.iter().enumerate() {
            table[a.tail] = (i, End::Tail);
            table[a.head] = (i, End::Head);
        }
        table
    }

    /// The sequence of `(id, end)` tokens in slot order.
    pub fn sequence(&self) -> Vec<(ArrowId, End)> {
        self.slot_table().into_iter().map(|(i, e)| (self.arrows[i].id, e)).collect()
    }

    /// Applies `f` to every arrow. The slots must stay a valid layout.
    pub fn map_arrows(&self, mut f: impl FnMut(Arrow) -> Arrow) -> GaussDiagram {
        let arrows = self.arrows.iter().map(|&a| f(a)).collect();
        GaussDiagram::from_parts(self.host, arrows)
    }

    pub fn with_host(&self, host: Host) -> GaussDiagram {
        GaussDiagram { host, arrows: self.arrows.clone() }
    }

    pub fn without_labels(&self) -> GaussDiagram {
        self.map_arrows(|a| Arrow { label: None, ..a })
    }

    /// Canonical representative: ids renumbered `1..=n` by first endpoint and
    /// arrows stored in that order. Circle diagrams additionally take the
    /// rotation whose token sequence is least.
    pub fn canonicalize(&self) -> GaussDiagram {
        match self.host {
            Host::Line => renumber(Host::Line, &self.arrows),
            Host::Circle => {
                let slots = self.endpoint_count();
                if slots == 0 {
                    return GaussDiagram::empty(Host::Circle);
                }
                (0..slots)
                    .map(|r| {
                        let rotated: Vec<Arrow> = self
                            .arrows
                            .iter()
                            .map(|a| Arrow {
                                tail: (a.tail + slots - r) % slots,
                                head: (a.head + slots - r) % slots,
                                ..*a
                            })
                            .collect();
                        renumber(Host::Circle, &rotated)
                    })
                    .min_by(|a, b| a.token_key().cmp(&b.token_key()))
                    .expect("at least one rotation")
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }

    fn token_key(&self) -> Vec<(ArrowId, End, Sign, Option<Label>)> {
        self.slot_table()
            .into_iter()
            .map(|(i, e)| {
                let a = &self.arrows[i];
                (a.id, e, a.sign, a.label)
            })
            .collect()
    }

    pub fn interlacement(&self) -> InterlacementGraph {
        let n = self.len();
        let mut adjacency = vec![vec![false; n]; n];
        for (i, j) in (0..n).tuple_combinations() {
            let l = linked(&self.arrows[i], &self.arrows[j]);
            adjacency[i][j] = l;
            adjacency[j][i] = l;
        }
        InterlacementGraph { ids: self.ids(), adjacency }
    }

    /// The diagram keeping only arrows whose index satisfies `keep`. Ids,
    /// signs, labels and relative order are preserved.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> GaussDiagram {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        self.restrict_to(&kept)
    }

    /// As [`restrict`](Self::restrict), for an explicit list of arrow indices.
    pub fn restrict_to(&self, indices: &[usize]) -> GaussDiagram {
        let mut used: Vec<usize> = Vec::with_capacity(2 * indices.len());
        for &i in indices {
            used.push(self.arrows[i].tail);
            used.push(self.arrows[i].head);
        }
        used.sort_unstable();
        let pos = |s: usize| used.binary_search(&s).expect("slot of a kept arrow");
        let arrows = indices
            .iter()
            .map(|&i| {
                let a = self.arrows[i];
                Arrow { tail: pos(a.tail), head: pos(a.head), ..a }
            })
            .collect();
        GaussDiagram::from_parts(self.host, arrows)
    }

    /// Removes the arrows with the given ids.
    pub fn delete_arrows(&self, ids: &[ArrowId]) -> Result<GaussDiagram> {
        for &id in ids {
            self.index_of(id)?;
        }
        Ok(self.restrict(|i| !ids.contains(&self.arrows[i].id)))
    }

    /// All `2^n` subdiagrams, canonicalized, in bitmask order.
    pub fn subdiagrams(&self) -> Subdiagrams<'_> {
        assert!(self.len() < 64, "subdiagram enumeration is limited to 63 arrows");
        Subdiagrams { diagram: self, next: 0, end: 1u64 << self.len() }
    }

    /// Canonical subdiagrams with exactly `k` arrows.
    pub fn subdiagrams_of_size(&self, k: usize) -> impl Iterator<Item = GaussDiagram> + '_ {
        use itertools::Itertools;
        (0..self.len()).combinations(k).map(move |idx| self.restrict_to(&idx).canonicalize())
    }

    /// Number of boundary components of the surface obtained by attaching an
    /// untwisted band at every arrow: one more than the GF(2) nullity of the
    /// interlacement matrix.
    pub fn boundary_components(&self) -> usize {
        self.interlacement().gf2_nullity() + 1
    }

    /// Concatenation along the line: `other` is placed after `self`.
    pub fn concat(&self, other: &GaussDiagram) -> GaussDiagram {
        let shift = self.endpoint_count();
        let offset = self.arrows.iter().map(|a| a.id).max().unwrap_or(0);
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|a| Arrow {
            id: a.id + offset,
            tail: a.tail + shift,
            head: a.head + shift,
            ..*a
        }));
        GaussDiagram::from_parts(self.host, arrows)
    }
}

fn renumber(host: Host, arrows: &[Arrow]) -> GaussDiagram {
    let mut sorted = arrows.to_vec();
    sorted.sort_by_key(|a| a.first_slot());
    for (k, a) in sorted.iter_mut().enumerate() {
        a.id = k as ArrowId + 1;
    }
    GaussDiagram { host, arrows: sorted }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

pub struct Subdiagrams<'a> {
    diagram: &'a GaussDiagram,
    next: u64,
    end: u64,
}

impl Iterator for Subdiagrams<'_> {
    type Item = GaussDiagram;

    fn next(&mut self) -> Option<GaussDiagram> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(self.diagram.restrict(|i| mask >> i & 1 == 1).canonicalize())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Subdiagrams<'_> {}

/// Graph on the arrows of a diagram with an edge between linked arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacementGraph {
    pub ids: Vec<ArrowId>,
    pub adjacency: Vec<Vec<bool>>,
}

impl InterlacementGraph {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|&&b| b).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        (0..self.len()).all(|i| self.degree(i) + 1 == self.len())
    }

    pub fn gf2_nullity(&self) -> usize {
        let n = self.len();
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if self.adjacency[i][j] {
                    m.set(i, j);
                }
            }
        }
        n - m.rank()
    }
}
