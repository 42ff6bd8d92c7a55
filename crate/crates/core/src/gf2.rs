//! Dense bit matrices over GF(2).

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<Vec<u64>>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Gf2Matrix { rows: vec![vec![0; words]; rows], cols }
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] |= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(Gf2Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Gf2Matrix::zeros(3, 3).rank(), 0);
        let mut m = Gf2Matrix::zeros(3, 3);
        for (r, c) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
            m.set(r, c);
        }
        // Adjacency of a triangle: rows sum to zero mod 2.
        assert_eq!(m.rank(), 2);
        assert!(m.get(2, 1) && !m.get(2, 2));
    }

    #[test]
    fn wide_matrix() {
        let mut m = Gf2Matrix::zeros(2, 130);
        m.set(0, 129);
        m.set(1, 129);
        m.set(1, 3);
        assert_eq!(m.rank(), 2);
    }
}
