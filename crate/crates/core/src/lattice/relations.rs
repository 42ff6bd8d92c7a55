//! Relation instances: local fragments embedded into every context.
//!
//! The three-strand fragment uses strands top, middle and bottom with chords
//! top→middle, top→bottom and middle→bottom. On its left-hand side each
//! strand meets the chord listed first first; the right-hand side reverses
//! every strand.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::arrow::{diagrams_with, embed, ArrowDiagram, Point, Style};
use crate::diagram::Sign;
use crate::sum::DiagramSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationKind {
    Q1,
    Q2,
    Q3,
    OneT,
    NS,
    TwoT,
    FourT,
    SixT,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub sum: DiagramSum<ArrowDiagram>,
}

const TOP_MID: usize = 0;
const TOP_BOTTOM: usize = 1;
const MID_BOTTOM: usize = 2;

/// Endpoints on (top, middle, bottom) for the left-hand side.
fn three_strands() -> [Vec<Point>; 3] {
    [
        vec![(TOP_MID, true), (TOP_BOTTOM, true)],
        vec![(TOP_MID, false), (MID_BOTTOM, true)],
        vec![(TOP_BOTTOM, false), (MID_BOTTOM, false)],
    ]
}

/// Label triples (top→middle, top→bottom, middle→bottom) allowed in the
/// three-strand relations: one label above two equal ones, or all `m + 1`.
pub fn valid_triples(labels: &[u32], m: u32) -> Vec<[u32; 3]> {
    labels
        .iter()
        .copied()
        .cartesian_product(labels.iter().copied())
        .cartesian_product(labels.iter().copied())
        .map(|((a, b), c)| [a, b, c])
        .filter(|&[a, b, c]| {
            (a > b && b == c) || (b > a && a == c) || (c > a && a == b) || (a == m + 1 && b == m + 1 && c == m + 1)
        })
        .collect()
}

/// Nondecreasing gap tuples of length `k` with entries below `gaps`.
fn gap_tuples(gaps: usize, k: usize) -> Vec<Vec<usize>> {
    (0..gaps).combinations_with_replacement(k).collect()
}

/// Places segments (lists of fragment endpoints) at nondecreasing gaps,
/// keeping only endpoints of chords in `keep`.
fn place(
    context: &ArrowDiagram,
    gaps: &[usize],
    segments: &[&Vec<Point>],
    keep: &[usize],
    chords: &[(bool, Option<Sign>, u32)],
) -> ArrowDiagram {
    let points: Vec<(usize, Point)> = gaps
        .iter()
        .zip(segments)
        .flat_map(|(&g, seg)| seg.iter().filter(|(c, _)| keep.contains(c)).map(move |&p| (g, p)))
        .collect();
    embed(context, &points, chords)
}

fn normalized(sum: DiagramSum<ArrowDiagram>) -> DiagramSum<ArrowDiagram> {
    if sum.iter().next().is_some_and(|(_, c)| c < 0) {
        sum.scaled(-1)
    } else {
        sum
    }
}

/// Contexts for a fragment: ungraded relations use every context with at
/// most `t - min_terms` chords, graded ones exactly `k - size` for each `k`.
fn contexts(style: &Style, sizes: impl Iterator<Item = usize>) -> Vec<ArrowDiagram> {
    sizes.flat_map(|n| diagrams_with(style, n)).collect()
}

/// Isolated chord labelled `m + 1` in every context of at most `t - 1`
/// chords, in every direction and sign.
fn isolated_top(style: &Style, t: usize, kind: RelationKind) -> Vec<RelationInstance> {
    if t == 0 {
        return Vec::new();
    }
    let top = style.m + 1;
    let ctxs = contexts(style, 0..t);
    ctxs.par_iter()
        .flat_map_iter(|ctx| {
            let mut out = Vec::new();
            for gap in 0..=2 * ctx.len() {
                for sign in style.signs() {
                    for tail_first in [true, false] {
                        if !style.directed && !tail_first {
                            continue;
                        }
                        let chords = [(style.directed, sign, top)];
                        let seg = vec![(0, tail_first), (0, !tail_first)];
                        let d = place(ctx, &[gap], &[&seg], &[0], &chords);
                        out.push(RelationInstance { kind, sum: DiagramSum::single(d, 1) });
                    }
                }
            }
            out
        })
        .collect()
}

/// The two-segment fragment: `x + y + xy`, terms above `t` chords dropped.
fn q2(style: &Style, t: usize) -> Vec<RelationInstance> {
    if t == 0 || !style.signed {
        return Vec::new();
    }
    let ctxs = contexts(style, 0..t);
    ctxs.par_iter()
        .flat_map_iter(|ctx| {
            let mut out = Vec::new();
            let gaps = 2 * ctx.len() + 1;
            for g in gap_tuples(gaps, 2) {
                for (parallel, tails_first, sign) in
                    itertools::iproduct!([true, false], [true, false], [Sign::Plus, Sign::Minus])
                {
                    if !style.directed && !tails_first {
                        continue;
                    }
                    let first = vec![(0, tails_first), (1, tails_first)];
                    let second = if parallel {
                        vec![(0, !tails_first), (1, !tails_first)]
                    } else {
                        vec![(1, !tails_first), (0, !tails_first)]
                    };
                    for label in style.labels() {
                        let chords = [(style.directed, Some(sign), label), (style.directed, Some(sign.flip()), label)];
                        let mut sum = DiagramSum::new();
                        for keep in [&[0][..], &[1], &[0, 1]] {
                            if ctx.len() + keep.len() <= t {
                                sum.add(place(ctx, &g, &[&first, &second], keep, &chords), 1);
                            }
                        }
                        if !sum.is_zero() {
                            out.push(RelationInstance { kind: RelationKind::Q2, sum: normalized(sum) });
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// The three-strand fragment. `subsets` lists the chord sets contributing
/// `LHS − RHS`; `graded` keeps only terms with exactly `k` chords for the
/// context size that makes them so.
fn three_strand(
    style: &Style,
    t: usize,
    kind: RelationKind,
    subsets: &[&[usize]],
    triples: &[[u32; 3]],
    graded: bool,
) -> Vec<RelationInstance> {
    let smallest = subsets.iter().map(|s| s.len()).min().unwrap_or(0);
    if t < smallest {
        return Vec::new();
    }
    let ctxs = if graded {
        let size = subsets[0].len();
        contexts(style, 0..=t - size)
    } else {
        contexts(style, 0..=t - smallest)
    };
    let lhs = three_strands();
    let rhs: Vec<Vec<Point>> = lhs.iter().map(|s| s.iter().rev().copied().collect()).collect();
    let orders: Vec<Vec<usize>> = (0..3).permutations(3).collect();
    ctxs.par_iter()
        .flat_map_iter(|ctx| {
            let mut out = Vec::new();
            for g in gap_tuples(2 * ctx.len() + 1, 3) {
                for order in &orders {
                    let left: Vec<&Vec<Point>> = order.iter().map(|&r| &lhs[r]).collect();
                    let right: Vec<&Vec<Point>> = order.iter().map(|&r| &rhs[r]).collect();
                    for sign in style.signs() {
                        for labels in triples {
                            let chords: Vec<_> = labels.iter().map(|&l| (style.directed, sign, l)).collect();
                            let mut sum = DiagramSum::new();
                            for keep in subsets {
                                if ctx.len() + keep.len() <= t {
                                    sum.add(place(ctx, &g, &left, keep, &chords), 1);
                                    sum.add(place(ctx, &g, &right, keep, &chords), -1);
                                }
                            }
                            if !sum.is_zero() {
                                out.push(RelationInstance { kind, sum: normalized(sum) });
                            }
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// Flipping the sign of one arrow negates a diagram.
fn sign_relations(style: &Style, t: usize) -> Vec<RelationInstance> {
    if !style.signed {
        return Vec::new();
    }
    (1..=t)
        .flat_map(|k| diagrams_with(style, k))
        .flat_map(|d| {
            (0..d.len())
                .map(|i| {
                    let mut chords = d.chords().to_vec();
                    chords[i].sign = chords[i].sign.map(Sign::flip);
                    let mut sum = DiagramSum::single(d.clone(), 1);
                    sum.add(ArrowDiagram::from_chords(chords), 1);
                    RelationInstance { kind: RelationKind::NS, sum: normalized(sum) }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// All instances of the given kinds for generators of `style` with at most
/// `t` chords, deduplicated.
pub fn relation_instances(style: &Style, t: usize, kinds: &[RelationKind]) -> Vec<RelationInstance> {
    let labels = style.labels();
    let triples = valid_triples(&labels, style.m);
    let pairs: Vec<[u32; 3]> =
        labels.iter().cartesian_product(&labels).map(|(&y, &z)| [labels[0], y, z]).collect();
    let mut all = Vec::new();
    for &kind in kinds {
        let found = match kind {
            RelationKind::Q1 | RelationKind::OneT => isolated_top(style, t, kind),
            RelationKind::Q2 => q2(style, t),
            RelationKind::Q3 => three_strand(
                style,
                t,
                kind,
                &[&[TOP_MID, TOP_BOTTOM], &[TOP_MID, MID_BOTTOM], &[TOP_BOTTOM, MID_BOTTOM], &[0, 1, 2]],
                &triples,
                false,
            ),
            RelationKind::SixT => three_strand(
                style,
                t,
                kind,
                &[&[TOP_MID, MID_BOTTOM], &[TOP_MID, TOP_BOTTOM], &[TOP_BOTTOM, MID_BOTTOM]],
                &triples,
                true,
            ),
            RelationKind::FourT => {
                three_strand(style, t, kind, &[&[TOP_MID, MID_BOTTOM], &[TOP_MID, TOP_BOTTOM]], &triples, true)
            }
            RelationKind::TwoT => three_strand(style, t, kind, &[&[TOP_BOTTOM, MID_BOTTOM]], &pairs, true),
            RelationKind::NS => sign_relations(style, t),
        };
        all.extend(found);
    }
    let unique: BTreeSet<RelationInstance> = all.into_iter().collect();
    unique.into_iter().collect()
}
