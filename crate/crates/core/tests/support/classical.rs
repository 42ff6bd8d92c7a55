//! Classical Conway polynomial of a long knot diagram, computed
//! independently of the Gauss diagram formulas: the Alexander polynomial
//! from the Wirtinger presentation via Fox calculus, converted to Conway
//! form.

use gaussforge_core::{End, GaussDiagram, Sign};

/// Polynomials in `t` as coefficient vectors, lowest degree first.
type Poly = Vec<i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    out
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<Poly>]) -> Poly {
    if m.is_empty() {
        return vec![1];
    }
    let mut total: Poly = Vec::new();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.iter().all(|&x| x == 0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = mul(entry, &det(&minor));
        total = add(&total, &term, if c % 2 == 0 { 1 } else { -1 });
    }
    total
}

/// Alexander matrix of a classical long knot diagram. Arcs end at
/// undercrossings (arrow heads); the two unbounded arcs close up into one.
fn alexander_polynomial(d: &GaussDiagram) -> Poly {
    let n = d.len();
    if n == 0 {
        return vec![1];
    }
    let table = d.slot_table();
    let mut arc_at = vec![0; table.len()];
    let mut arc = 0;
    for (s, &(_, end)) in table.iter().enumerate() {
        arc_at[s] = arc % n;
        if end == End::Head {
            arc += 1;
        }
    }
    let mut matrix = vec![vec![Vec::new(); n]; n];
    for (row, a) in d.arrows().iter().enumerate() {
        let over = arc_at[a.tail];
        let incoming = arc_at[a.head];
        let outgoing = (arc_at[a.head] + 1) % n;
        let entries: [(usize, Poly); 3] = match a.sign {
            Sign::Plus => [(over, vec![1, -1]), (incoming, vec![0, 1]), (outgoing, vec![-1])],
            Sign::Minus => [(over, vec![-1, 1]), (incoming, vec![1]), (outgoing, vec![0, -1])],
        };
        for (col, p) in entries {
            matrix[row][col] = add(&matrix[row][col], &p, 1);
        }
    }
    let minor: Vec<Vec<Poly>> = matrix[1..].iter().map(|r| r[1..].to_vec()).collect();
    let mut p = det(&minor);
    while p.last() == Some(&0) {
        p.pop();
    }
    let low = p.iter().position(|&x| x != 0).expect("Alexander polynomial is nonzero");
    p.drain(..low);
    let at_one: i64 = p.iter().sum();
    assert_eq!(at_one.abs(), 1);
    p.iter().map(|x| x * at_one).collect()
}

/// Conway coefficients from a symmetric Alexander polynomial, using
/// `z^2 = t - 2 + t^{-1}`.
fn conway_from_alexander(p: &Poly) -> Vec<i64> {
    assert_eq!(p.len() % 2, 1);
    assert!(p.iter().eq(p.iter().rev()), "Alexander polynomial is symmetric");
    let mut rest = p.clone();
    let top = p.len() / 2;
    let mut coeffs = vec![0; top + 1];
    for n in (0..=top).rev() {
        let c = rest[top + n];
        coeffs[n] = c;
        // (t - 2 + t^{-1})^n centred at index `top`.
        let mut power: Poly = vec![1];
        for _ in 0..n {
            power = mul(&power, &vec![1, -2, 1]);
        }
        for (i, x) in power.iter().enumerate() {
            rest[top - n + i] -= c * x;
        }
    }
    assert!(rest.iter().all(|&x| x == 0));
    coeffs
}

/// Conway coefficients `c_0, c_2, ...`.
pub fn oracle(d: &GaussDiagram) -> Vec<i64> {
    conway_from_alexander(&alexander_polynomial(d))
}
