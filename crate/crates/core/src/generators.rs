//! Witness diagrams and a small stock of knots.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Arrow, ArrowId, End, GaussDiagram, Host, Sign};
use crate::error::{Error, Result};

/// Builds a line diagram from a chord sequence (each id twice), with tails
/// at the first occurrence unless `backward` says otherwise.
fn from_chords(
    seq: &[ArrowId],
    sign: impl Fn(ArrowId) -> Sign,
    backward: impl Fn(ArrowId) -> bool,
) -> GaussDiagram {
    let mut seen = std::collections::BTreeSet::new();
    let tokens: Vec<(ArrowId, End)> = seq
        .iter()
        .map(|&id| {
            let first = seen.insert(id);
            let end = if first != backward(id) { End::Tail } else { End::Head };
            (id, end)
        })
        .collect();
    let mut d = GaussDiagram::from_sequence(Host::Line, &tokens, sign, |_| None).expect("well-formed chord sequence");
    let mut arrows = d.arrows().to_vec();
    arrows.sort_by_key(|a| a.id);
    d = GaussDiagram::from_parts(Host::Line, arrows);
    d
}

/// `2k` chords, each linked with every other: `1 2 … 2k 1 2 … 2k`.
pub fn complete_graph_diagram(k: usize) -> GaussDiagram {
    let ids: Vec<ArrowId> = (1..=2 * k as ArrowId).collect();
    from_chords(&[ids.clone(), ids].concat(), |_| Sign::Plus, |_| false)
}

/// Chord sequence of an earring of width `w` on ids `first..first+w`:
/// `1 2 1 3 2 … w (w−1) w`. Its interlacement graph is a path.
fn earring_sequence(w: usize, first: ArrowId) -> Vec<ArrowId> {
    if w == 0 {
        return Vec::new();
    }
    let mut seq = vec![first];
    for j in 1..w as ArrowId {
        seq.extend([first + j, first + j - 1]);
    }
    seq.push(first + w as ArrowId - 1);
    seq
}

pub fn earring(w: usize) -> GaussDiagram {
    from_chords(&earring_sequence(w, 1), |_| Sign::Plus, |_| false)
}

/// Chord sequence of `D_{m,k}`: central chords `1..=2k`, and chords from
/// `2k+1` on forming one width-`(m−1)` earring per central chord. The earring
/// of an odd chord sits at its left endpoint, the mirrored earring of an even
/// chord at its right endpoint; the outermost earring chord is linked with
/// the central chord.
fn earring_layout(m: usize, k: usize) -> Vec<ArrowId> {
    let w = m - 1;
    let central = 2 * k as ArrowId;
    let mut seq = Vec::new();
    let block = |c: ArrowId| central + 1 + (c - 1) * w as ArrowId;
    for pass in 0..2 {
        for c in 1..=central {
            let odd = c % 2 == 1;
            if pass == 0 && odd && w > 0 {
                let mut e = earring_sequence(w, block(c));
                let last = e.pop().expect("nonempty earring");
                seq.extend(e);
                seq.extend([c, last]);
            } else if pass == 1 && !odd && w > 0 {
                let mut e = earring_sequence(w, block(c));
                e.reverse();
                seq.push(e[0]);
                seq.push(c);
                seq.extend(&e[1..]);
            } else {
                seq.push(c);
            }
        }
    }
    seq
}

/// `D_{m,k}`: the complete-graph diagram on `2k` chords with an earring of
/// width `m − 1` at each chord. All arrows ⊕ and left to right.
pub fn earring_diagram(m: usize, k: usize) -> GaussDiagram {
    assert!(m >= 1 && k >= 1);
    from_chords(&earring_layout(m, k), |_| Sign::Plus, |_| false)
}

/// `D_{m,k}` with odd central chords pointing right and even ones left.
pub fn directed_earring_diagram(m: usize, k: usize) -> GaussDiagram {
    assert!(m >= 1 && k >= 1);
    let central = 2 * k as ArrowId;
    from_chords(&earring_layout(m, k), |_| Sign::Plus, |id| id <= central && id % 2 == 0)
}

/// `L_m`: `D_{m,1}` with the `m − 1` rightmost arrows (the earring of the
/// second central chord) signed ⊖. `θ[m|m]` is 2 on it, and `θ[j|j]`
/// vanishes for `j ≠ m`.
pub fn theta_witness(m: usize) -> GaussDiagram {
    assert!(m >= 1);
    let d = earring_diagram(m, 1);
    let mut by_start: Vec<&Arrow> = d.arrows().iter().collect();
    by_start.sort_by_key(|a| std::cmp::Reverse(a.first_slot()));
    let flipped: Vec<ArrowId> = by_start.iter().take(m - 1).map(|a| a.id).collect();
    d.map_arrows(|a| if flipped.contains(&a.id) { Arrow { sign: Sign::Minus, ..a } } else { a })
}

/// Long knot of the closure of a braid word, cut on the first strand at the
/// top. Generator `i` (or `-i`) crosses strands at positions `i` and `i+1`;
/// for `i` the left strand passes over with sign ⊕, for `-i` the right strand
/// passes over with sign ⊖.
pub fn closed_braid(word: &[i32]) -> Result<GaussDiagram> {
    if word.is_empty() {
        return Ok(GaussDiagram::empty(Host::Line));
    }
    if word.contains(&0) {
        return Err(Error::InvalidSpec("braid generators are nonzero".into()));
    }
    let mut events: Vec<(usize, bool)> = Vec::with_capacity(2 * word.len());
    let mut pos = 0usize;
    loop {
        for (c, &g) in word.iter().enumerate() {
            let i = g.unsigned_abs() as usize - 1;
            if pos == i {
                events.push((c, g > 0));
                pos = i + 1;
            } else if pos == i + 1 {
                events.push((c, g < 0));
                pos = i;
            }
        }
        if pos == 0 {
            break;
        }
    }
    if events.len() != 2 * word.len() {
        return Err(Error::InvalidSpec("braid closure has more than one component".into()));
    }
    let mut tails = vec![0; word.len()];
    let mut heads = vec![0; word.len()];
    for (slot, &(c, over)) in events.iter().enumerate() {
        if over {
            tails[c] = slot;
        } else {
            heads[c] = slot;
        }
    }
    let arrows = word
        .iter()
        .enumerate()
        .map(|(c, &g)| Arrow::new(c as ArrowId + 1, tails[c], heads[c], if g > 0 { Sign::Plus } else { Sign::Minus }))
        .collect();
    GaussDiagram::new(Host::Line, arrows)
}

/// Chord sequences on `n` chords with first occurrences in increasing order,
/// one per perfect matching of `2n` points.
fn chord_sequences(n: usize) -> Vec<Vec<ArrowId>> {
    fn go(seq: &mut Vec<ArrowId>, open: &mut Vec<ArrowId>, next: ArrowId, n: ArrowId, out: &mut Vec<Vec<ArrowId>>) {
        if seq.len() == 2 * n as usize {
            out.push(seq.clone());
            return;
        }
        if next <= n {
            seq.push(next);
            open.push(next);
            go(seq, open, next + 1, n, out);
            open.pop();
            seq.pop();
        }
        for i in 0..open.len() {
            let id = open.remove(i);
            seq.push(id);
            go(seq, open, next, n, out);
            seq.pop();
            open.insert(i, id);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut Vec::new(), 1, n as ArrowId, &mut out);
    out
}

/// Every canonical long diagram with exactly `n` arrows, over all
/// directions and signs: `(2n − 1)!! · 4^n` of them.
pub fn all_long_diagrams(n: usize) -> impl Iterator<Item = GaussDiagram> {
    let bit = |mask: u32, id: ArrowId| mask >> (id - 1) & 1 == 1;
    chord_sequences(n).into_iter().flat_map(move |seq| {
        (0u32..1 << n).flat_map(move |directions| {
            let seq = seq.clone();
            (0u32..1 << n).map(move |signs| {
                from_chords(
                    &seq,
                    |id| if bit(signs, id) { Sign::Minus } else { Sign::Plus },
                    |id| bit(directions, id),
                )
            })
        })
    })
}

/// One diagram per chord pattern on `n` chords, all arrows pointing right
/// and signed ⊕.
pub fn chord_diagrams(n: usize) -> impl Iterator<Item = GaussDiagram> {
    chord_sequences(n).into_iter().map(|seq| from_chords(&seq, |_| Sign::Plus, |_| false))
}

/// A uniformly random pairing of `2n` slots with random directions and
/// signs, canonicalized. Deterministic in `seed`.
pub fn random_long_diagram(n: usize, seed: u64) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..2 * n).collect();
    slots.shuffle(&mut rng);
    let arrows = slots
        .chunks(2)
        .enumerate()
        .map(|(i, pair)| {
            let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
            Arrow::new(i as ArrowId + 1, pair[0], pair[1], sign)
        })
        .collect();
    GaussDiagram::new(Host::Line, arrows).expect("a pairing covers every slot once").canonicalize()
}

/// Named small diagrams: `(name, description, diagram)`.
pub fn stock_diagrams() -> Vec<(&'static str, &'static str, GaussDiagram)> {
    let braid = |w: &[i32]| closed_braid(w).expect("stock braid closes to a knot");
    vec![
        ("empty", "the trivial long knot", GaussDiagram::empty(Host::Line)),
        ("trefoil", "closure of s1^3: 1T+ 2H+ 3T+ 1H+ 2T+ 3H+", braid(&[1, 1, 1])),
        ("figure-eight", "closure of s1 s2^-1 s1 s2^-1", braid(&[1, -2, 1, -2])),
        (
            "virtual-trefoil",
            "1T+ 2T+ 1H+ 2H+, both arrows odd",
            crate::diagram::parse_gauss_code("1T+ 2T+ 1H+ 2H+").expect("valid code"),
        ),
        ("cinquefoil", "closure of s1^5", braid(&[1, 1, 1, 1, 1])),
    ]
}

pub fn stock_diagram(name: &str) -> Option<GaussDiagram> {
    stock_diagrams().into_iter().find(|(n, _, _)| *n == name).map(|(_, _, d)| d)
}
