//! The θ counting invariants and their combinatorial formulas.
//!
//! `θ[m|k]` counts ⊕-arrows labelled `k` minus ⊖-arrows labelled `k`. A
//! product of powers of these is a polynomial `g` in the per-label arrow
//! counts, so it is the Newton series `Σ_a (∂^a g)(0) · Π C(N, a)`; the
//! coefficients `(∂^a g)(0)` are the formula.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::diagram::{Label, Sign};
use crate::error::{Error, Result};
use crate::parity::{Bound, LabelledDiagram};

/// `Π_j θ_{t_j}[m|k_j]`: distinct labels `k_j ≤ m`, exponents `t_j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSpec {
    pub m: u32,
    /// `(exponent, label)` pairs sorted by label.
    pub factors: Vec<(u32, u32)>,
}

impl ThetaSpec {
    pub fn new(m: u32, factors: &[(u32, u32)]) -> Result<Self> {
        let mut factors = factors.to_vec();
        factors.sort_by_key(|&(_, k)| k);
        if m == 0 {
            return Err(Error::InvalidSpec("m must be at least 1".into()));
        }
        if factors.is_empty() {
            return Err(Error::InvalidSpec("at least one factor is needed".into()));
        }
        for &(t, k) in &factors {
            if t == 0 {
                return Err(Error::InvalidSpec(format!("exponent of label {k} must be positive")));
            }
            if k == 0 || k > m {
                return Err(Error::LabelOutOfRange { label: k.to_string(), bound: m.to_string() });
            }
        }
        if factors.iter().map(|&(_, k)| k).dedup().count() != factors.len() {
            return Err(Error::InvalidSpec("labels must be distinct".into()));
        }
        Ok(ThetaSpec { m, factors })
    }

    /// Parses `"t1@k1,t2@k2,…"`.
    pub fn parse(m: u32, text: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("expected `t@k,...`, got `{text}`"));
        let factors = text
            .split(',')
            .map(|part| {
                let (t, k) = part.trim().split_once('@').ok_or_else(bad)?;
                Ok((t.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>>>()?;
        ThetaSpec::new(m, &factors)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(t, _)| t).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(_, k)| k)
    }

    /// The product `Π (plus_j − minus_j)^{t_j}` at a count vector.
    pub fn product_at(&self, counts: &CountVector) -> i64 {
        self.factors
            .iter()
            .zip(&counts.0)
            .map(|(&(t, _), &(p, n))| (p as i64 - n as i64).pow(t))
            .product()
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.factors.iter().map(|(t, k)| format!("{t}@{k}")).join(",");
        write!(f, "theta[m={}]({body})", self.m)
    }
}

/// Per factor label: (number of ⊕ arrows, number of ⊖ arrows).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountVector(pub Vec<(u32, u32)>);

impl CountVector {
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&(p, n)| p + n).sum()
    }

    fn from_flat(flat: &[u32]) -> Self {
        CountVector(flat.chunks(2).map(|c| (c[0], c[1])).collect())
    }

    /// Counts of the arrows of `diagram` carrying each label of `spec`.
    pub fn of(diagram: &LabelledDiagram, spec: &ThetaSpec) -> Self {
        CountVector(
            spec.labels()
                .map(|k| {
                    let of_sign = |s: Sign| {
                        diagram
                            .diagram
                            .arrows()
                            .iter()
                            .filter(|a| a.sign == s && a.label == Some(Label::Finite(k)))
                            .count() as u32
                    };
                    (of_sign(Sign::Plus), of_sign(Sign::Minus))
                })
                .collect(),
        )
    }
}

fn check_label(l: &LabelledDiagram, k: u32) -> Result<()> {
    match l.bound {
        Bound::Finite(m) if k == 0 || k > m => {
            Err(Error::LabelOutOfRange { label: k.to_string(), bound: m.to_string() })
        }
        _ if k == 0 => Err(Error::LabelOutOfRange { label: "0".into(), bound: l.bound.to_string() }),
        _ => Ok(()),
    }
}

/// `θ[m|k]`: ⊕-arrows labelled `k` minus ⊖-arrows labelled `k`.
pub fn theta_single(l: &LabelledDiagram, k: u32) -> Result<i64> {
    check_label(l, k)?;
    Ok(l.diagram
        .arrows()
        .iter()
        .filter(|a| a.label == Some(Label::Finite(k)))
        .map(|a| a.sign.value())
        .sum())
}

pub fn theta_product(l: &LabelledDiagram, spec: &ThetaSpec) -> Result<i64> {
    spec.factors.iter().try_fold(1i64, |acc, &(t, k)| Ok(acc * theta_single(l, k)?.pow(t)))
}

pub(crate) fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) as i64
}

/// `∂^direction g`: iterated forward differences, one per unit of each
/// coordinate of `direction`.
pub fn discrete_derivative<'a>(
    g: impl Fn(&[i64]) -> i64 + 'a,
    direction: &'a [u32],
) -> impl Fn(&[i64]) -> i64 + 'a {
    move |x: &[i64]| {
        direction
            .iter()
            .map(|&a| 0..=a)
            .multi_cartesian_product()
            .map(|b| {
                let removed: u32 = direction.iter().zip(&b).map(|(a, b)| a - b).sum();
                let weight: i64 = direction.iter().zip(&b).map(|(&a, &b)| binomial(a as u64, b as u64)).product();
                let point: Vec<i64> = x.iter().zip(&b).map(|(x, &b)| x + b as i64).collect();
                let sign = if removed.is_multiple_of(2) { 1 } else { -1 };
                sign * weight * g(&point)
            })
            .sum()
    }
}

/// Count vectors with the given number of factors and total at most `degree`.
fn count_vectors(factors: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..2 * factors {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=degree - used).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonzero coefficients `c(a) = (∂^a g)(0)`, for `|a|` up to the degree.
pub fn formula_coefficients(spec: &ThetaSpec) -> BTreeMap<CountVector, i64> {
    let g = |x: &[i64]| {
        spec.factors.iter().zip(x.chunks(2)).map(|(&(t, _), c)| (c[0] - c[1]).pow(t)).product::<i64>()
    };
    let origin = vec![0i64; 2 * spec.factors.len()];
    count_vectors(spec.factors.len(), spec.degree())
        .into_iter()
        .filter_map(|a| {
            let c = discrete_derivative(g, &a)(&origin);
            (c != 0).then(|| (CountVector::from_flat(&a), c))
        })
        .collect()
}

/// Pairs the formula with the subdiagram expansion of `l`, grouping
/// subdiagrams by count vector.
pub fn evaluate_formula(spec: &ThetaSpec, l: &LabelledDiagram) -> Result<i64> {
    if l.bound != Bound::Finite(spec.m) {
        return Err(Error::InvalidSpec(format!("formula is for m = {}, diagram has m = {}", spec.m, l.bound)));
    }
    let totals = CountVector::of(l, spec);
    Ok(formula_coefficients(spec)
        .iter()
        .map(|(a, &c)| {
            c * a
                .0
                .iter()
                .zip(&totals.0)
                .map(|(&(ap, an), &(np, nn))| binomial(np as u64, ap as u64) * binomial(nn as u64, an as u64))
                .product::<i64>()
        })
        .sum())
}

/// `c(a)` read from a coefficient map, zero when absent.
pub fn coefficient(coeffs: &BTreeMap<CountVector, i64>, a: &CountVector) -> i64 {
    coeffs.get(a).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss_code, GaussDiagram};
    use crate::parity::lambda_m;
    use proptest::prelude::*;

    fn labelled(code: &str, m: u32) -> LabelledDiagram {
        lambda_m(&parse_gauss_code(code).unwrap(), Bound::Finite(m))
    }

    #[test]
    fn single_theta_values() {
        assert_eq!(theta_single(&labelled("1T+ 2T+ 1H+ 2H+", 2), 1).unwrap(), 2);
        let trefoil = labelled("1T+ 2H+ 3T+ 1H+ 2T+ 3H+", 3);
        for k in 1..=3 {
            assert_eq!(theta_single(&trefoil, k).unwrap(), 0);
        }
        assert_eq!(theta_single(&labelled("", 1), 1).unwrap(), 0);
        assert!(theta_single(&trefoil, 4).is_err());
    }

    #[test]
    fn products() {
        let v = labelled("1T+ 2T+ 1H+ 2H+", 2);
        assert_eq!(theta_product(&v, &ThetaSpec::new(2, &[(2, 1)]).unwrap()).unwrap(), 4);
        assert_eq!(theta_product(&v, &ThetaSpec::new(2, &[(2, 1), (1, 2)]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn spec_validation() {
        assert!(ThetaSpec::new(2, &[(1, 3)]).is_err());
        assert!(ThetaSpec::new(2, &[(1, 1), (2, 1)]).is_err());
        assert!(ThetaSpec::new(2, &[(0, 1)]).is_err());
        assert_eq!(ThetaSpec::parse(3, "2@1, 1@3").unwrap().factors, vec![(2, 1), (1, 3)]);
        assert!(ThetaSpec::parse(3, "2:1").is_err());
    }

    #[test]
    fn small_derivatives() {
        let id = |x: &[i64]| x[0];
        let sq = |x: &[i64]| x[0] * x[0];
        assert_eq!(discrete_derivative(sq, &[0])(&[5]), 25);
        assert_eq!(discrete_derivative(id, &[1])(&[0]), 1);
        assert_eq!(discrete_derivative(sq, &[2])(&[0]), 2);
        let mixed = |x: &[i64]| x[0] * x[0] * x[1];
        let d12 = discrete_derivative(mixed, &[1, 2]);
        let d21 = discrete_derivative(mixed, &[2, 1]);
        for p in [[0, 0], [1, 3], [-2, 4]] {
            assert_eq!(discrete_derivative(discrete_derivative(mixed, &[1, 0]), &[0, 2])(&p), d12(&p));
            assert_eq!(discrete_derivative(discrete_derivative(mixed, &[0, 1]), &[2, 0])(&p), d21(&p));
        }
    }

    #[test]
    fn first_and_second_order_coefficients() {
        let cv = |p, n| CountVector(vec![(p, n)]);
        let c1 = formula_coefficients(&ThetaSpec::new(2, &[(1, 1)]).unwrap());
        assert_eq!(c1.len(), 2);
        assert_eq!((coefficient(&c1, &cv(1, 0)), coefficient(&c1, &cv(0, 1))), (1, -1));
        assert_eq!(coefficient(&c1, &cv(0, 0)), 0);
        let c2 = formula_coefficients(&ThetaSpec::new(2, &[(2, 1)]).unwrap());
        let got: Vec<i64> = [(2, 0), (0, 2), (1, 1), (1, 0), (0, 1), (0, 0)]
            .iter()
            .map(|&(p, n)| coefficient(&c2, &cv(p, n)))
            .collect();
        assert_eq!(got, vec![2, 2, -2, 1, 1, 0]);
    }

    /// The formula pairs with every subdiagram individually. Its terms only
    /// carry arrows with the spec's labels.
    fn subdiagram_pairing(spec: &ThetaSpec, l: &LabelledDiagram) -> i64 {
        let coeffs = formula_coefficients(spec);
        let labels: Vec<Option<Label>> = spec.labels().map(|k| Some(Label::Finite(k))).collect();
        l.diagram
            .subdiagrams()
            .filter(|s| s.arrows().iter().all(|a| labels.contains(&a.label)))
            .map(|s| coefficient(&coeffs, &CountVector::of(&LabelledDiagram { diagram: s, bound: l.bound }, spec)))
            .sum()
    }

    fn arb_labelled(max_arrows: usize, m: u32) -> impl Strategy<Value = LabelledDiagram> {
        crate::diagram::tests_support::arb_line_diagram(max_arrows).prop_flat_map(move |d: GaussDiagram| {
            let n = d.len();
            proptest::collection::vec(1..=m + 1, n).prop_map(move |labels| {
                let mut i = 0;
                let diagram = d.map_arrows(|a| {
                    i += 1;
                    a.with_label(Label::Finite(labels[i - 1]))
                });
                LabelledDiagram { diagram, bound: Bound::Finite(m) }
            })
        })
    }

    fn arb_spec(m: u32) -> impl Strategy<Value = ThetaSpec> {
        proptest::sample::subsequence((1..=m).collect::<Vec<_>>(), 1..=m.min(3) as usize)
            .prop_flat_map(|labels| {
                let n = labels.len();
                (Just(labels), proptest::collection::vec(1u32..=3, n))
            })
            .prop_filter_map("degree at most 3", move |(labels, ts)| {
                let factors: Vec<(u32, u32)> = ts.into_iter().zip(labels).collect();
                let spec = ThetaSpec::new(m, &factors).ok()?;
                (spec.degree() <= 3).then_some(spec)
            })
    }

    proptest! {
        #[test]
        fn formula_matches_product_and_subdiagram_sum(
            (spec, l) in (1u32..=3).prop_flat_map(|m| (arb_spec(m), arb_labelled(5, m)))
        ) {
            let product = theta_product(&l, &spec).unwrap();
            prop_assert_eq!(evaluate_formula(&spec, &l).unwrap(), product);
            prop_assert_eq!(subdiagram_pairing(&spec, &l), product);
        }

        #[test]
        fn formula_ignores_directions(l in arb_labelled(5, 2), pick in any::<prop::sample::Index>()) {
            let spec = ThetaSpec::new(2, &[(2, 1), (1, 2)]).unwrap();
            if l.diagram.is_empty() {
                return Ok(());
            }
            let id = l.diagram.arrows()[pick.index(l.diagram.len())].id;
            let flipped = LabelledDiagram { diagram: crate::moves::flip_arrow(&l.diagram, id).unwrap(), bound: l.bound };
            prop_assert_eq!(evaluate_formula(&spec, &flipped).unwrap(), evaluate_formula(&spec, &l).unwrap());
        }
    }

    #[test]
    fn formula_on_empty_and_mismatched_bound() {
        let spec = ThetaSpec::new(2, &[(1, 1)]).unwrap();
        assert_eq!(evaluate_formula(&spec, &labelled("", 2)).unwrap(), 0);
        assert!(evaluate_formula(&spec, &labelled("", 3)).is_err());
    }
}
