//! Evidence drivers: invariance under random Reidemeister walks and
//! finite-type degree via alternating crossing-switch sums.

use std::fmt::Display;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{serialize, ArrowId, GaussDiagram};
use crate::moves::{random_walk_steps, switch_arrow, MoveInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub base: usize,
    pub walk: usize,
    pub step: usize,
    #[serde(rename = "move")]
    pub instance: MoveInstance,
    pub before: String,
    pub after: String,
    pub value_before: String,
    pub value_after: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub walks: usize,
    pub steps: usize,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub walks_per_base: usize,
    pub steps: usize,
    pub seed: u64,
    pub max_arrows: usize,
}

/// Evaluates `inv` along seeded random walks from every base and records
/// each step where the value changes. Walk `j` from base `i` uses seed
/// `seed + i * walks_per_base + j`, so reports are reproducible.
pub fn invariance_fuzz<V, F>(inv: F, bases: &[GaussDiagram], config: &FuzzConfig) -> FuzzReport
where
    V: PartialEq + Display,
    F: Fn(&GaussDiagram) -> V + Sync,
{
    let jobs: Vec<(usize, usize)> = (0..bases.len()).cartesian_product(0..config.walks_per_base).collect();
    let per_walk: Vec<(usize, Vec<Violation>)> = jobs
        .par_iter()
        .map(|&(base, walk)| {
            let seed = config.seed.wrapping_add((base * config.walks_per_base + walk) as u64);
            let steps = random_walk_steps(&bases[base], config.steps, seed, config.max_arrows);
            let mut value = inv(&bases[base]);
            let mut evaluations = 1;
            let mut found = Vec::new();
            for (i, step) in steps.iter().enumerate() {
                let next = inv(&step.diagram);
                evaluations += 1;
                if next != value {
                    found.push(Violation {
                        base,
                        walk,
                        step: i + 1,
                        instance: step.instance,
                        before: serialize(&step.applied.before),
                        after: serialize(&step.diagram),
                        value_before: value.to_string(),
                        value_after: next.to_string(),
                    });
                }
                value = next;
            }
            (evaluations, found)
        })
        .collect();
    FuzzReport {
        seed: config.seed,
        walks: jobs.len(),
        steps: config.steps,
        evaluations: per_walk.iter().map(|w| w.0).sum(),
        violations: per_walk.into_iter().flat_map(|w| w.1).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchSum {
    pub arrows: Vec<ArrowId>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub order: usize,
    pub subsets_checked: usize,
    /// Subsets of size `order + 1` whose alternating sum is nonzero.
    pub failures: Vec<SwitchSum>,
    /// A subset of size `order` with nonzero alternating sum, if any.
    pub witness: Option<SwitchSum>,
}

impl DegreeReport {
    /// All sums of size `order + 1` vanish.
    pub fn bounded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `Σ_{S ⊆ T} (-1)^{|S|} inv(D with S switched)`.
pub fn switch_sum<F>(inv: &F, diagram: &GaussDiagram, arrows: &[ArrowId]) -> i64
where
    F: Fn(&GaussDiagram) -> i64,
{
    arrows
        .iter()
        .copied()
        .powerset()
        .map(|subset| {
            let switched = subset
                .iter()
                .try_fold(diagram.clone(), |d, &id| switch_arrow(&d, id))
                .expect("ids come from the diagram");
            let sign = if subset.len() % 2 == 0 { 1 } else { -1 };
            sign * inv(&switched)
        })
        .sum()
}

/// Checks that every alternating switch sum over `order + 1` arrows
/// vanishes and looks for a nonzero sum over `order` arrows.
pub fn kauffman_degree_check<F>(inv: F, diagram: &GaussDiagram, order: usize) -> DegreeReport
where
    F: Fn(&GaussDiagram) -> i64 + Sync,
{
    let ids = diagram.ids();
    let above: Vec<Vec<ArrowId>> = ids.iter().copied().combinations(order + 1).collect();
    let failures: Vec<SwitchSum> = above
        .par_iter()
        .map(|arrows| SwitchSum { arrows: arrows.clone(), value: switch_sum(&inv, diagram, arrows) })
        .filter(|s| s.value != 0)
        .collect();
    let witness = ids
        .iter()
        .copied()
        .combinations(order)
        .map(|arrows| {
            let value = switch_sum(&inv, diagram, &arrows);
            SwitchSum { arrows, value }
        })
        .find(|s| s.value != 0);
    DegreeReport { order, subsets_checked: above.len(), failures, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gauss_code;

    fn trefoil() -> GaussDiagram {
        parse_gauss_code("1T+ 2H+ 3T+ 1H+ 2T+ 3H+").unwrap()
    }

    fn config(steps: usize) -> FuzzConfig {
        FuzzConfig { walks_per_base: 2, steps, seed: 7, max_arrows: 10 }
    }

    #[test]
    fn constant_passes_and_arrow_count_fails() {
        let bases = [trefoil(), GaussDiagram::empty(crate::diagram::Host::Line)];
        assert!(invariance_fuzz(|_| 0, &bases, &config(50)).passed());
        let report = invariance_fuzz(|d| d.len(), &bases, &config(50));
        assert!(!report.passed());
        assert_eq!(report.walks, 4);
        assert_eq!(report.evaluations, 4 * 51);
    }

    #[test]
    fn fuzzing_is_reproducible() {
        let run = || invariance_fuzz(|d| d.len() % 3, &[trefoil()], &config(40));
        assert_eq!(run(), run());
    }

    #[test]
    fn arrow_count_has_degree_zero() {
        let report = kauffman_degree_check(|d| d.len() as i64, &trefoil(), 0);
        assert!(report.bounded());
        assert_eq!(report.subsets_checked, 3);
        assert!(report.witness.is_some());
    }

    #[test]
    fn sum_of_signs_has_degree_one() {
        let writhe = |d: &GaussDiagram| d.arrows().iter().map(|a| a.sign.value()).sum::<i64>();
        let report = kauffman_degree_check(writhe, &trefoil(), 1);
        assert!(report.bounded());
        assert_eq!(report.witness.map(|w| w.value), Some(2));
    }
}
