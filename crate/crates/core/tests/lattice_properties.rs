use std::collections::BTreeSet;

use gaussforge_core::lattice::{
    bar_map, binomial, d_map, enumerate_generators, group_rank, in_span, mu_map, omega_upper, pi_map, rank_lower,
    relation_instances, spans_equal, ArrowDiagram, Flavor, RankOptions, RelationKind, Style,
};
use gaussforge_core::DiagramSum;

fn one(d: &ArrowDiagram) -> DiagramSum<ArrowDiagram> {
    DiagramSum::single(d.clone(), 1)
}

#[test]
fn label_lowering_commutes_with_truncation_and_is_onto() {
    for t in 0..=2 {
        for m in 1..=3 {
            let source = enumerate_generators(t, m, true);
            for n in 1..=m {
                let target: BTreeSet<ArrowDiagram> = enumerate_generators(t, n, true).generators.into_iter().collect();
                let mut hit = BTreeSet::new();
                for g in &source.generators {
                    let x = one(g);
                    assert_eq!(d_map(&pi_map(&x, t), n), pi_map(&d_map(&x, n), t));
                    hit.extend(d_map(&x, n).iter().map(|(d, _)| d.clone()));
                }
                assert_eq!(hit, target, "d[{m}->{n}] at t = {t}");
            }
            if t > 0 {
                let lower: BTreeSet<ArrowDiagram> = enumerate_generators(t - 1, m, true).generators.into_iter().collect();
                let hit: BTreeSet<ArrowDiagram> =
                    source.generators.iter().flat_map(|g| pi_map(&one(g), t).iter().map(|(d, _)| d.clone()).collect::<Vec<_>>()).collect();
                assert_eq!(hit, lower);
            }
        }
    }
}

#[test]
fn single_term_relations_map_to_single_term_relations() {
    let style = |m| Style { directed: true, signed: true, m, top_only: false };
    for (m, n) in [(2, 1), (3, 1), (3, 2)] {
        let targets: BTreeSet<DiagramSum<ArrowDiagram>> =
            relation_instances(&style(n), 2, &[RelationKind::Q1]).into_iter().map(|r| r.sum).collect();
        for r in relation_instances(&style(m), 2, &[RelationKind::Q1]) {
            let image = d_map(&r.sum, n);
            assert_eq!(image.len(), 1);
            assert!(targets.contains(&image), "{image}");
        }
    }
}

#[test]
fn rank_sandwich() {
    for (t, m) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        let rank = group_rank(t, m, Flavor::DirectedQ, &RankOptions::default()).unwrap().rank as i128;
        let (lower, upper) = (rank_lower(t as u64, m as u64).unwrap(), omega_upper(t as u64, m as u64).unwrap());
        assert!(lower <= rank && rank <= upper, "({t},{m}): {lower} <= {rank} <= {upper}");
    }
}

#[test]
fn six_term_and_two_term_quotients_agree() {
    for (t, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        let six = group_rank(t, m, Flavor::SixTOneT, &RankOptions::default()).unwrap().rank;
        let two = group_rank(t, m, Flavor::TwoTOneT, &RankOptions::default()).unwrap().rank;
        assert_eq!(six, two, "({t},{m})");
        assert_eq!(two as i128, binomial((m + t as u32) as u64, t as u64).unwrap());
    }
}

#[test]
fn averaging_sends_four_term_into_six_term() {
    for (t, m) in [(2, 1), (2, 2)] {
        let chords = Flavor::FourTOneT.style(m);
        let arrows = Style { directed: true, ..chords };
        let six: Vec<_> = relation_instances(&arrows, t, &[RelationKind::SixT]).into_iter().map(|r| r.sum).collect();
        let four = relation_instances(&chords, t, &[RelationKind::FourT]);
        assert!(!four.is_empty());
        for r in four {
            assert!(in_span(&six, &mu_map(&r.sum)), "{}", r.sum);
        }
    }
}

#[test]
fn bar_descends_to_the_undirected_relations() {
    for (t, m) in [(1, 1), (2, 1)] {
        let directed = Flavor::DirectedQ.style(m);
        let undirected = Flavor::UndirectedQbar.style(m);
        let images: Vec<_> = relation_instances(&directed, t, Flavor::DirectedQ.kinds()).iter().map(|r| bar_map(&r.sum)).collect();
        let direct: Vec<_> =
            relation_instances(&undirected, t, Flavor::UndirectedQbar.kinds()).into_iter().map(|r| r.sum).collect();
        assert!(spans_equal(&images, &direct));
    }
}

#[test]
fn polyak_flavor_does_not_see_the_bound() {
    for t in 0..=2 {
        let ranks: BTreeSet<usize> =
            (1..=3).map(|m| group_rank(t, m, Flavor::Polyak, &RankOptions::default()).unwrap().rank).collect();
        assert_eq!(ranks.len(), 1);
    }
}
