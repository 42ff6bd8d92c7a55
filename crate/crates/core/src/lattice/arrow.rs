//! Compact arrow and chord diagrams on the line, used as lattice generators.

use std::fmt;

use itertools::Itertools;

use crate::diagram::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Tail at the earlier endpoint.
    Forward,
    Backward,
    Undirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub start: u8,
    pub end: u8,
    pub direction: Direction,
    pub sign: Option<Sign>,
    pub label: u32,
}

/// A labelled chord or arrow diagram on the line. Chords are kept sorted by
/// their first endpoint, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowDiagram {
    chords: Vec<Chord>,
}

impl ArrowDiagram {
    pub fn empty() -> Self {
        ArrowDiagram { chords: Vec::new() }
    }

    /// Builds from chords whose endpoints cover `0..2n` exactly once.
    pub fn from_chords(mut chords: Vec<Chord>) -> Self {
        for c in &mut chords {
            if c.start > c.end {
                std::mem::swap(&mut c.start, &mut c.end);
                c.direction = match c.direction {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                    Direction::Undirected => Direction::Undirected,
                };
            }
        }
        chords.sort_unstable_by_key(|c| c.start);
        debug_assert!({
            let mut slots: Vec<u8> = chords.iter().flat_map(|c| [c.start, c.end]).collect();
            slots.sort_unstable();
            slots.iter().enumerate().all(|(i, &s)| i == s as usize)
        });
        ArrowDiagram { chords }
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn map_chords(&self, f: impl FnMut(&Chord) -> Chord) -> Self {
        ArrowDiagram::from_chords(self.chords.iter().map(f).collect())
    }

    /// Whether some chord labelled `label` has adjacent endpoints.
    pub fn has_isolated(&self, label: u32) -> bool {
        self.chords.iter().any(|c| c.end == c.start + 1 && c.label == label)
    }
}

impl fmt::Display for ArrowDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut slots = vec![String::new(); 2 * self.chords.len()];
        for (i, c) in self.chords.iter().enumerate() {
            let (a, b) = match c.direction {
                Direction::Forward => ("T", "H"),
                Direction::Backward => ("H", "T"),
                Direction::Undirected => ("", ""),
            };
            let sign = c.sign.map_or(String::new(), |s| s.symbol().to_string());
            slots[c.start as usize] = format!("{}{a}{sign}:{}", i + 1, c.label);
            slots[c.end as usize] = format!("{}{b}{sign}:{}", i + 1, c.label);
        }
        f.write_str(&slots.join(" "))
    }
}

/// Which decorations generators carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Style {
    pub directed: bool,
    pub signed: bool,
    /// Labels range over `1..=m+1`, or only `m+1` when `top_only`.
    pub m: u32,
    pub top_only: bool,
}

impl Style {
    pub fn labels(&self) -> Vec<u32> {
        if self.top_only {
            vec![self.m + 1]
        } else {
            (1..=self.m + 1).collect()
        }
    }

    pub fn directions(&self) -> Vec<Direction> {
        if self.directed {
            vec![Direction::Forward, Direction::Backward]
        } else {
            vec![Direction::Undirected]
        }
    }

    pub fn signs(&self) -> Vec<Option<Sign>> {
        if self.signed {
            vec![Some(Sign::Plus), Some(Sign::Minus)]
        } else {
            vec![None]
        }
    }

    /// Number of decorations of one chord.
    pub fn per_chord(&self) -> u128 {
        (self.labels().len() * self.directions().len() * self.signs().len()) as u128
    }
}

/// Perfect matchings of `0..2n` as lists of pairs `(a, b)`, `a < b`.
pub fn matchings(n: usize) -> Vec<Vec<(u8, u8)>> {
    fn go(free: &[u8], acc: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..rest.len() {
            let mut remaining = rest.to_vec();
            let partner = remaining.remove(i);
            acc.push((first, partner));
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..2 * n as u8).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// Every diagram of the given style with exactly `n` chords.
pub fn diagrams_with(style: &Style, n: usize) -> Vec<ArrowDiagram> {
    let decorations: Vec<(Direction, Option<Sign>, u32)> = style
        .directions()
        .into_iter()
        .cartesian_product(style.signs())
        .cartesian_product(style.labels())
        .map(|((d, s), l)| (d, s, l))
        .collect();
    if n == 0 {
        return vec![ArrowDiagram::empty()];
    }
    let mut out = Vec::new();
    for m in matchings(n) {
        for choice in (0..n).map(|_| decorations.iter()).multi_cartesian_product() {
            let chords = m
                .iter()
                .zip(&choice)
                .map(|(&(start, end), &&(direction, sign, label))| Chord { start, end, direction, sign, label })
                .collect();
            out.push(ArrowDiagram::from_chords(chords));
        }
    }
    out
}

/// A fragment endpoint: which fragment chord, and whether it is the tail.
pub(crate) type Point = (usize, bool);

/// Inserts fragment endpoints into `context`. `points` lists
/// `(gap, endpoint)` in left-to-right order with nondecreasing gaps; each
/// fragment chord must occur twice. `chords[i]` gives the decorations of
/// fragment chord `i`; its direction is read off from where its tail lands.
pub(crate) fn embed(
    context: &ArrowDiagram,
    points: &[(usize, Point)],
    chords: &[(bool, Option<Sign>, u32)],
) -> ArrowDiagram {
    let shift = |s: u8| s as usize + points.iter().filter(|&&(g, _)| g <= s as usize).count();
    let mut out: Vec<Chord> = context
        .chords
        .iter()
        .map(|c| Chord { start: shift(c.start) as u8, end: shift(c.end) as u8, ..*c })
        .collect();
    let mut tails = vec![usize::MAX; chords.len()];
    let mut heads = vec![usize::MAX; chords.len()];
    for (i, &(gap, (c, is_tail))) in points.iter().enumerate() {
        let slot = gap + i;
        if is_tail {
            tails[c] = slot;
        } else {
            heads[c] = slot;
        }
    }
    for (i, &(directed, sign, label)) in chords.iter().enumerate() {
        if tails[i] == usize::MAX {
            continue;
        }
        let (t, h) = (tails[i], heads[i]);
        let direction = if !directed {
            Direction::Undirected
        } else if t < h {
            Direction::Forward
        } else {
            Direction::Backward
        };
        out.push(Chord { start: t.min(h) as u8, end: t.max(h) as u8, direction, sign, label });
    }
    ArrowDiagram::from_chords(out)
}
