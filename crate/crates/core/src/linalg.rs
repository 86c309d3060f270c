//! Sparse Gaussian elimination over a finite field.

use std::collections::BTreeMap;

use crate::field::{Field, FieldElement};

pub type SparseVec = BTreeMap<usize, FieldElement>;

/// `row += c · other`, dropping cancelled entries.
fn axpy(row: &mut SparseVec, c: &FieldElement, other: &SparseVec) {
    for (&k, x) in other {
        let add = c * x;
        match row.get_mut(&k) {
            Some(old) => {
                let s = &*old + &add;
                if s.is_zero() {
                    row.remove(&k);
                } else {
                    *old = s;
                }
            }
            None => {
                if !add.is_zero() {
                    row.insert(k, add);
                }
            }
        }
    }
}

/// Reduced row echelon form, built one row at a time.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// Pivot column → normalized row with that pivot, reduced against every
    /// other pivot.
    pub rows: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: BTreeMap::new() }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut r = Rref::new(ncols);
        for row in rows {
            r.push(row.clone());
        }
        r
    }

    /// Insert a row; returns whether it increased the rank.
    pub fn push(&mut self, mut row: SparseVec) -> bool {
        row.retain(|_, x| !x.is_zero());
        // eliminate existing pivots
        let cols: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in cols {
            if let Some(x) = row.get(&c).cloned() {
                axpy(&mut row, &-&x, &self.rows[&c]);
            }
        }
        let Some((&pivot, lead)) = row.iter().next() else { return false };
        let inv = lead.inverse().expect("nonzero pivot");
        for x in row.values_mut() {
            *x = &*x * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(x) = other.get(&pivot).cloned() {
                axpy(other, &-&x, &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// One kernel vector per free column: `x_free = 1`,
    /// `x_pivot = -row_pivot[free]`.
    pub fn kernel_basis(&self, field: &Field) -> Vec<SparseVec> {
        let mut by_free: BTreeMap<usize, SparseVec> = (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|c| (c, SparseVec::from([(c, field.one())])))
            .collect();
        for (&pc, row) in &self.rows {
            for (&c, x) in row.iter().skip(1) {
                if let Some(v) = by_free.get_mut(&c) {
                    v.insert(pc, -x);
                }
            }
        }
        by_free.into_values().collect()
    }
}

/// Rank of `vectors` restricted to the coordinates in `cols`.
pub fn projected_rank(vectors: &[SparseVec], cols: &[usize]) -> usize {
    let mut index = BTreeMap::new();
    for (i, &c) in cols.iter().enumerate() {
        index.insert(c, i);
    }
    let mut r = Rref::new(cols.len());
    for v in vectors {
        let proj: SparseVec = v.iter().filter_map(|(c, x)| index.get(c).map(|&i| (i, x.clone()))).collect();
        r.push(proj);
    }
    r.rank()
}

/// `Σ row[k] · x[k]`.
pub fn dot(row: &SparseVec, x: &SparseVec, field: &Field) -> FieldElement {
    let mut acc = field.zero();
    for (k, a) in row {
        if let Some(b) = x.get(k) {
            acc = &acc + &(a * b);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Dense rank by plain Gaussian elimination on integers mod p.
    fn dense_rank(rows: &[Vec<i64>], p: i64) -> usize {
        let mut m: Vec<Vec<i64>> = rows.to_vec();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(r) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
            m.swap(rank, r);
            let inv = (1..p).find(|&i| m[rank][c] * i % p == 1).unwrap();
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let k = m[r][c];
                    let pivot_row = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x = (*x - k * y).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_and_kernel_against_dense_oracle() {
        let p = 7;
        let field = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let (nr, nc) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let dense: Vec<Vec<i64>> = (0..nr)
                .map(|_| (0..nc).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p as i64) } else { 0 }).collect())
                .collect();
            let sparse: Vec<SparseVec> = dense
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, field.from_int(x))).collect())
                .collect();
            let rref = Rref::from_rows(nc, &sparse);
            assert_eq!(rref.rank(), dense_rank(&dense, p as i64));
            let kernel = rref.kernel_basis(&field);
            assert_eq!(kernel.len(), nc - rref.rank());
            for v in &kernel {
                for row in &sparse {
                    assert!(dot(row, v, &field).is_zero());
                }
            }
            let all: Vec<usize> = (0..nc).collect();
            assert_eq!(projected_rank(&kernel, &all), kernel.len());
        }
    }
}
