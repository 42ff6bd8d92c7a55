//! Finite presentations of the truncated labelled lattices and their ranks.

mod arrow;
mod bounds;
mod maps;
mod rank;
mod relations;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use arrow::{double_factorial_odd, matchings, ArrowDiagram, Chord, Direction, Style};
pub use bounds::{binomial, lower_bound_identity, omega_upper, rank_lower};
pub use maps::{bar_map, d_map, mu_map, pi_map};
pub use rank::{sparse_rank, SparseRow};
pub use relations::{relation_instances, valid_triples, RelationInstance, RelationKind};

use crate::error::{Error, Result};
use crate::sum::DiagramSum;

pub const DEFAULT_BUDGET: u128 = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    #[serde(rename = "directed_Q")]
    DirectedQ,
    #[serde(rename = "undirected_Qbar")]
    UndirectedQbar,
    #[serde(rename = "sixT_oneT")]
    SixTOneT,
    #[serde(rename = "twoT_oneT")]
    TwoTOneT,
    #[serde(rename = "fourT_oneT")]
    FourTOneT,
    Polyak,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::DirectedQ,
        Flavor::UndirectedQbar,
        Flavor::SixTOneT,
        Flavor::TwoTOneT,
        Flavor::FourTOneT,
        Flavor::Polyak,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::DirectedQ => "directed_Q",
            Flavor::UndirectedQbar => "undirected_Qbar",
            Flavor::SixTOneT => "sixT_oneT",
            Flavor::TwoTOneT => "twoT_oneT",
            Flavor::FourTOneT => "fourT_oneT",
            Flavor::Polyak => "polyak",
        }
    }

    /// Generator decorations. The chord flavors are unsigned and undirected.
    pub fn style(self, m: u32) -> Style {
        match self {
            Flavor::DirectedQ => Style { directed: true, signed: true, m, top_only: false },
            Flavor::UndirectedQbar => Style { directed: false, signed: true, m, top_only: false },
            Flavor::Polyak => Style { directed: true, signed: true, m, top_only: true },
            Flavor::SixTOneT | Flavor::TwoTOneT | Flavor::FourTOneT => {
                Style { directed: false, signed: false, m, top_only: false }
            }
        }
    }

    pub fn kinds(self) -> &'static [RelationKind] {
        use RelationKind::*;
        match self {
            Flavor::DirectedQ | Flavor::UndirectedQbar | Flavor::Polyak => &[Q1, Q2, Q3],
            Flavor::SixTOneT => &[OneT, SixT],
            Flavor::TwoTOneT => &[OneT, TwoT],
            Flavor::FourTOneT => &[OneT, FourT],
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s) || f.name().replace('_', "-").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown flavor `{s}`")))
    }
}

/// How the single-term relations (an isolated top-labelled arrow is zero)
/// enter the presentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Q1Strategy {
    /// Add one relation row per instance.
    #[default]
    Rows,
    /// Drop the generators those rows kill, and their terms elsewhere.
    DropColumns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub budget: u128,
    pub q1: Q1Strategy,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { budget: DEFAULT_BUDGET, q1: Q1Strategy::Rows }
    }
}

/// Number of generators with at most `t` chords.
pub fn generator_count(style: &Style, t: usize) -> u128 {
    (0..=t).map(|a| double_factorial_odd(a) * style.per_chord().pow(a as u32)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBasis {
    pub t: usize,
    pub style: Style,
    pub generators: Vec<ArrowDiagram>,
}

impl GeneratorBasis {
    pub fn new(style: Style, t: usize) -> Self {
        let generators = (0..=t).flat_map(|a| arrow::diagrams_with(&style, a)).collect();
        GeneratorBasis { t, style, generators }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// All signed generators with at most `t` arrows and labels up to `m + 1`.
pub fn enumerate_generators(t: usize, m: u32, directed: bool) -> GeneratorBasis {
    GeneratorBasis::new(Style { directed, signed: true, m, top_only: false }, t)
}

#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub flavor: Flavor,
    pub m: u32,
    pub basis: GeneratorBasis,
    pub relations: Vec<RelationInstance>,
}

impl PresentedGroup {
    pub fn build(t: usize, m: u32, flavor: Flavor, options: &RankOptions) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("the label bound m must be at least 1".into()));
        }
        let style = flavor.style(m);
        let count = generator_count(&style, t);
        if count > options.budget {
            return Err(Error::BudgetExceeded { generators: count, budget: options.budget });
        }
        let mut basis = GeneratorBasis::new(style, t);
        let mut relations = relation_instances(&style, t, flavor.kinds());
        if options.q1 == Q1Strategy::DropColumns {
            let top = m + 1;
            basis.generators.retain(|d| !d.has_isolated(top));
            relations = relations
                .into_iter()
                .filter(|r| !matches!(r.kind, RelationKind::Q1 | RelationKind::OneT))
                .map(|r| RelationInstance { kind: r.kind, sum: r.sum.filter(|d| !d.has_isolated(top)) })
                .filter(|r| !r.sum.is_zero())
                .collect();
        }
        Ok(PresentedGroup { flavor, m, basis, relations })
    }

    /// Relation matrix rows over the basis order.
    pub fn matrix(&self) -> Vec<SparseRow> {
        let index: HashMap<&ArrowDiagram, usize> =
            self.basis.generators.iter().enumerate().map(|(i, d)| (d, i)).collect();
        self.relations
            .iter()
            .map(|r| {
                let mut row: SparseRow = r
                    .sum
                    .iter()
                    .map(|(d, c)| (*index.get(d).expect("relation terms are generators"), c))
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.basis.len() - sparse_rank(&self.matrix())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub flavor: Flavor,
    pub t: usize,
    pub m: u32,
    pub generators: usize,
    pub relations: usize,
    pub rank: usize,
}

pub fn group_rank(t: usize, m: u32, flavor: Flavor, options: &RankOptions) -> Result<RankReport> {
    let group = PresentedGroup::build(t, m, flavor, options)?;
    Ok(RankReport {
        flavor,
        t,
        m,
        generators: group.basis.len(),
        relations: group.relations.len(),
        rank: group.rank(),
    })
}

/// Rank of the span of some sums, indexing their keys on the fly.
pub fn span_rank<'a>(sums: impl IntoIterator<Item = &'a DiagramSum<ArrowDiagram>>) -> usize {
    let mut index: HashMap<ArrowDiagram, usize> = HashMap::new();
    let rows: Vec<SparseRow> = sums
        .into_iter()
        .map(|s| {
            let mut row: SparseRow = s
                .iter()
                .map(|(d, c)| {
                    let next = index.len();
                    (*index.entry(d.clone()).or_insert(next), c)
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    sparse_rank(&rows)
}

/// Whether `sum` lies in the rational span of `rows`.
pub fn in_span(rows: &[DiagramSum<ArrowDiagram>], sum: &DiagramSum<ArrowDiagram>) -> bool {
    span_rank(rows) == span_rank(rows.iter().chain(std::iter::once(sum)))
}

pub fn spans_equal(a: &[DiagramSum<ArrowDiagram>], b: &[DiagramSum<ArrowDiagram>]) -> bool {
    let ra = span_rank(a);
    ra == span_rank(b) && ra == span_rank(a.iter().chain(b))
}
