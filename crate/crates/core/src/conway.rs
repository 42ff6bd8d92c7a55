//! Conway coefficients of long virtual knots and their `f^m` refinements.
//!
//! `c_{2n}` counts, with the product of signs, the subdiagrams with `2n`
//! arrows that are ascending and whose Seifert smoothing has one boundary
//! component. An arrow is ascending when the linear component of the
//! smoothing at all arrows first passes it from tail to head.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{linked, oriented_smoothing, seifert_walk, Arrow, ArrowId, GaussDiagram, Host, Label, Sign};
use crate::error::{Error, Result};
use crate::moves::switch_arrow;
use crate::parity::{lambda_m, Bound};

pub fn is_ascending(diagram: &GaussDiagram) -> bool {
    seifert_walk(diagram.arrows()).ascending
}

pub fn is_one_component(diagram: &GaussDiagram) -> bool {
    diagram.boundary_components() == 1
}

/// Subsets at or above this size are scanned in parallel.
const PARALLEL_SUBSETS: usize = 1 << 12;

/// Sum of `weight(subset)` over the ascending one-component `size`-subsets.
fn signed_count(arrows: &[Arrow], size: usize, weight: impl Fn(&[usize]) -> i64 + Sync) -> i64 {
    let eval = |idx: Vec<usize>| -> i64 {
        let chosen: Vec<Arrow> = idx.iter().map(|&i| arrows[i]).collect();
        let walk = seifert_walk(&chosen);
        if walk.one_component && walk.ascending {
            weight(&idx)
        } else {
            0
        }
    };
    let subsets = (0..arrows.len()).combinations(size);
    if crate::theta::binomial(arrows.len() as u64, size as u64) >= PARALLEL_SUBSETS as i64 {
        subsets.par_bridge().map(eval).sum()
    } else {
        subsets.map(eval).sum()
    }
}

fn sign_product(arrows: &[Arrow], idx: &[usize]) -> i64 {
    idx.iter().map(|&i| arrows[i].sign.value()).product()
}

/// The classical coefficient `c_{2n}`.
pub fn c2n_classical(diagram: &GaussDiagram, n: usize) -> Result<i64> {
    if diagram.host() != Host::Line {
        return Err(Error::NotLineHost);
    }
    let arrows = diagram.arrows();
    Ok(signed_count(arrows, 2 * n, |idx| sign_product(arrows, idx)))
}

/// `c_{2n}[m]`: a subdiagram counts when all its arrows have `f^∞`-label ∞,
/// or when one of them has `f^m`-label at most `m`. Labels are those of the
/// full diagram.
pub fn c2n_m(diagram: &GaussDiagram, n: usize, m: Bound) -> Result<i64> {
    if diagram.host() != Host::Line {
        return Err(Error::NotLineHost);
    }
    let arrows = diagram.arrows();
    let stable = lambda_m(diagram, Bound::Infinite);
    let bounded = lambda_m(diagram, m);
    let even: Vec<bool> = stable.diagram.arrows().iter().map(|a| a.label == Some(Label::Infinity)).collect();
    let top = m.top_label();
    let odd: Vec<bool> = bounded.diagram.arrows().iter().map(|a| a.label != Some(top)).collect();
    Ok(signed_count(arrows, 2 * n, |idx| {
        if idx.iter().all(|&i| even[i]) || idx.iter().any(|&i| odd[i]) {
            sign_product(arrows, idx)
        } else {
            0
        }
    }))
}

/// A polynomial in `z²`, stored by even exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EvenPolynomial {
    pub coefficients: BTreeMap<u32, i64>,
}

impl EvenPolynomial {
    pub fn coefficient(&self, degree: u32) -> i64 {
        self.coefficients.get(&degree).copied().unwrap_or(0)
    }

    /// Coefficients from degree 0 upward in steps of 2.
    pub fn from_coefficients(coeffs: &[i64]) -> Self {
        EvenPolynomial {
            coefficients: coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (2 * i as u32, c))
                .collect(),
        }
    }
}

impl fmt::Display for EvenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(u32, i64)> = self.coefficients.iter().filter(|(_, &c)| c != 0).map(|(&d, &c)| (d, c)).collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(d, c)) in terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            let body = if d == 0 { mag.to_string() } else { format!("{mag}*z^{d}") };
            match (i, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// `∇[m]` truncated at `z^max_degree`.
pub fn nabla_m(diagram: &GaussDiagram, m: Bound, max_degree: u32) -> Result<EvenPolynomial> {
    if !max_degree.is_multiple_of(2) {
        return Err(Error::InvalidSpec(format!("max degree must be even, got {max_degree}")));
    }
    let coeffs = (0..=max_degree as usize / 2).map(|n| c2n_m(diagram, n, m)).collect::<Result<Vec<_>>>()?;
    Ok(EvenPolynomial::from_coefficients(&coeffs))
}

/// Four crossing-sign variants at two linked arrows and their double
/// smoothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinQuintuple {
    pub base: GaussDiagram,
    pub x: ArrowId,
    pub y: ArrowId,
    /// Sign patterns ⊕⊕, ⊕⊖, ⊖⊕, ⊖⊖ of (x, y).
    pub variants: [GaussDiagram; 4],
    pub smoothed: GaussDiagram,
}

pub const VARIANT_SIGNS: [(Sign, Sign); 4] =
    [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];

pub fn build_quintuple(diagram: &GaussDiagram, x: ArrowId, y: ArrowId) -> Result<SkeinQuintuple> {
    if diagram.host() != Host::Line {
        return Err(Error::NotLineHost);
    }
    if x == y {
        return Err(Error::BadDesignation);
    }
    let (a, b) = (diagram.arrow(x).ok_or(Error::UnknownArrow(x))?, diagram.arrow(y).ok_or(Error::UnknownArrow(y))?);
    if !linked(a, b) {
        return Err(Error::UnlinkedPair(x, y));
    }
    let smoothing = oriented_smoothing(diagram, &[x, y])?;
    if smoothing.component_count() != 1 {
        return Err(Error::SmoothingDisconnected);
    }
    let variant = |sx: Sign, sy: Sign| -> Result<GaussDiagram> {
        let mut d = diagram.clone();
        if a.sign != sx {
            d = switch_arrow(&d, x)?;
        }
        if b.sign != sy {
            d = switch_arrow(&d, y)?;
        }
        Ok(d)
    };
    let variants = [
        variant(VARIANT_SIGNS[0].0, VARIANT_SIGNS[0].1)?,
        variant(VARIANT_SIGNS[1].0, VARIANT_SIGNS[1].1)?,
        variant(VARIANT_SIGNS[2].0, VARIANT_SIGNS[2].1)?,
        variant(VARIANT_SIGNS[3].0, VARIANT_SIGNS[3].1)?,
    ];
    Ok(SkeinQuintuple { base: diagram.clone(), x, y, variants, smoothed: smoothing.linear.diagram })
}

/// Reasons the quintuple falls outside the skein relation's hypotheses:
/// both designated arrows need `f^∞`-label ∞, and the smoothing must keep
/// the `f^∞`-labels of the other arrows. Empty when they hold.
pub fn skein_hypothesis_failures(q: &SkeinQuintuple) -> Vec<String> {
    let mut failures = Vec::new();
    let stable: BTreeMap<ArrowId, Option<Label>> = lambda_m(&q.base, Bound::Infinite)
        .diagram
        .arrows()
        .iter()
        .map(|a| (a.id, a.label))
        .collect();
    for id in [q.x, q.y] {
        if stable[&id] != Some(Label::Infinity) {
            failures.push(format!("arrow {id} has f^inf label {}", stable[&id].expect("labelled")));
        }
    }
    for a in lambda_m(&q.smoothed, Bound::Infinite).diagram.arrows() {
        if stable[&a.id] != a.label {
            failures.push(format!(
                "smoothing changes the f^inf label of arrow {} from {} to {}",
                a.id,
                stable[&a.id].expect("labelled"),
                a.label.expect("labelled")
            ));
        }
    }
    failures
}

pub fn check_skein_hypotheses(q: &SkeinQuintuple) -> bool {
    skein_hypothesis_failures(q).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeinTerm {
    pub degree: u32,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeinReport {
    pub m: Bound,
    pub terms: Vec<SkeinTerm>,
    pub holds: bool,
}

/// Compares `c_{2k}[m](K⊕⊕) − c_{2k}[m](K⊕⊖) − c_{2k}[m](K⊖⊕) + c_{2k}[m](K⊖⊖)`
/// with `c_{2k−2}[m](K₀₀)` for every `2k ≤ max_degree`.
pub fn verify_skein(q: &SkeinQuintuple, m: Bound, max_degree: u32) -> Result<SkeinReport> {
    let failures = skein_hypothesis_failures(q);
    if !failures.is_empty() {
        return Err(Error::SkeinHypotheses(failures.join("; ")));
    }
    let mut terms = Vec::new();
    for k in 0..=(max_degree / 2) as usize {
        let c = |d: &GaussDiagram| c2n_m(d, k, m);
        let lhs = c(&q.variants[0])? - c(&q.variants[1])? - c(&q.variants[2])? + c(&q.variants[3])?;
        let rhs = if k == 0 { 0 } else { c2n_m(&q.smoothed, k - 1, m)? };
        terms.push(SkeinTerm { degree: 2 * k as u32, lhs, rhs });
    }
    let holds = terms.iter().all(|t| t.lhs == t.rhs);
    Ok(SkeinReport { m, terms, holds })
}
