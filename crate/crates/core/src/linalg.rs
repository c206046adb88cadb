//! Sparse exact linear algebra over ℚ: incremental row echelon forms,
//! membership tests, null spaces and expression of a vector in a spanning
//! set. Pivoting is deterministic (smallest column first).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// `v += c * w`.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let entry = v.entry(*k).or_insert_with(Scalar::zero);
        *entry += c * x;
        if entry.is_zero() {
            v.remove(k);
        }
    }
}

pub fn scale_vec(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

pub fn add_entry(v: &mut SparseVec, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = v.entry(k).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        v.remove(&k);
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row echelon form built one vector at a time. Each stored row has its
/// pivot (smallest column) normalized to one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form that remembers, for each row, the combination of
    /// inserted vectors producing it.
    pub fn tracking() -> Self {
        Echelon {
            track: true,
            ..Self::default()
        }
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values().map(|r| &r.vec)
    }

    fn reduce_row(&self, mut vec: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0usize;
        loop {
            let next = vec
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.rows.contains_key(k));
            let Some(col) = next else { break };
            let c = vec[&col].clone();
            let row = &self.rows[&col];
            axpy(&mut vec, &-c.clone(), &row.vec);
            if self.track {
                axpy(&mut combo, &-c, &row.combo);
            }
            cursor = col + 1;
        }
        (vec, combo)
    }

    /// Residual of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_row(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let idx = self.inserted;
        self.inserted += 1;
        let combo = if self.track {
            SparseVec::from([(idx, Scalar::one())])
        } else {
            SparseVec::new()
        };
        let (vec, combo) = self.reduce_row(v, combo);
        let (&pivot, lead) = vec.iter().next()?;
        let inv = lead.recip();
        let row = Row {
            vec: scale_vec(&vec, &inv),
            combo: scale_vec(&combo, &inv),
        };
        self.rows.insert(pivot, row);
        Some(pivot)
    }

    /// Writes `v` as a combination of the inserted vectors (by insertion
    /// index). Requires a tracking echelon.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express requires a tracking echelon");
        let (rest, combo) = self.reduce_row(v.clone(), SparseVec::new());
        if !rest.is_empty() {
            return None;
        }
        // reduce_row accumulated -(combination); flip the sign
        Some(scale_vec(&combo, &-Scalar::one()))
    }

    /// Back-substitutes so that every pivot column is zero in all other rows.
    pub fn make_reduced(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            for row in self.rows.range_mut(..p).map(|(_, r)| r) {
                if let Some(c) = row.vec.get(&p).cloned() {
                    axpy(&mut row.vec, &-c.clone(), &prow.vec);
                    if self.track {
                        axpy(&mut row.combo, &-c, &prow.combo);
                    }
                }
            }
        }
    }

    /// Basis of `{x : row · x = 0 for all rows}` in `ncols` unknowns.
    pub fn null_space(&self, ncols: usize) -> Vec<SparseVec> {
        let mut reduced = self.clone();
        reduced.track = false;
        reduced.make_reduced();
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !reduced.rows.contains_key(c)) {
            let mut v = SparseVec::from([(free, Scalar::one())]);
            for (&p, row) in &reduced.rows {
                if let Some(c) = row.vec.get(&free) {
                    v.insert(p, -c.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank of a list of sparse vectors.
pub fn rank_of<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    Echelon::from_vectors(vs).rank()
}

/// Dense rational matrix, row-major. Used for small endomorphisms and forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Scalar) {
        self.data[r * self.cols + c] += x;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter_map(|r| {
                let x = self.get(r, c);
                (!x.is_zero()).then(|| (r, x.clone()))
            })
            .collect()
    }

    pub fn row(&self, r: usize) -> SparseVec {
        (0..self.cols)
            .filter_map(|c| {
                let x = self.get(r, c);
                (!x.is_zero()).then(|| (c, x.clone()))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<SparseVec> = (0..self.rows).map(|r| self.row(r)).collect();
        rank_of(&rows)
    }

    /// Flattened entries as a sparse vector (for linear independence of
    /// matrices).
    pub fn flatten(&self) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(k, x)| (*k, int(*x))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(v(&[(0, 1), (1, 2)])), Some(0));
        assert_eq!(e.insert(v(&[(0, 2), (1, 4)])), None);
        assert_eq!(e.insert(v(&[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn null_space_is_annihilated() {
        let rows = [v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 1), (3, -1)])];
        let e = Echelon::from_vectors(&rows);
        let ns = e.null_space(4);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                let dot: Scalar = r
                    .iter()
                    .map(|(k, a)| a * x.get(k).cloned().unwrap_or_default())
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn express_recovers_combination() {
        let gens = [
            v(&[(0, 1), (2, 1)]),
            v(&[(1, 1)]),
            v(&[(0, 1), (1, 1), (2, 1)]),
        ];
        let mut e = Echelon::tracking();
        for g in &gens {
            e.insert(g.clone());
        }
        let target = v(&[(0, 2), (1, 3), (2, 2)]);
        let combo = e.express(&target).unwrap();
        let mut acc = SparseVec::new();
        for (i, c) in &combo {
            axpy(&mut acc, c, &gens[*i]);
        }
        assert_eq!(acc, target);
        assert!(e.express(&v(&[(3, 1)])).is_none());
    }
}
