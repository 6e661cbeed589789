//! Exact linear algebra on sparse rows.

use super::field::{Field, SparseRow, NO_PIVOT};

/// Row space in echelon form, grown one vector at a time.
///
/// Every stored row has leading value 1 and a distinct leading column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    pivot_of: Vec<u32>,
    rows: Vec<SparseRow<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        Echelon { field: field.clone(), pivot_of: vec![NO_PIVOT; ncols], rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.pivot_of.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col] != NO_PIVOT
    }

    /// Remainder of `row` after reduction by the stored rows.
    pub fn reduce(&self, row: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        self.field.reduce_row(row, &self.pivot_of, &self.rows)
    }

    pub fn contains(&self, row: &SparseRow<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds `row` to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, row: &SparseRow<F::Elem>) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        self.field.normalize_row(&mut r);
        let lead = r.lead().unwrap() as usize;
        self.pivot_of[lead] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    /// Rewrites the stored rows into reduced row echelon form.
    pub fn make_reduced(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].lead().unwrap()));
        // process from the rightmost pivot so each row only meets finished rows
        let mut done_pivot = vec![NO_PIVOT; self.pivot_of.len()];
        let mut done: Vec<SparseRow<F::Elem>> = Vec::with_capacity(self.rows.len());
        for &i in &order {
            let row = &self.rows[i];
            let lead = row.lead().unwrap();
            let tail = SparseRow { cols: row.cols[1..].to_vec(), vals: row.vals[1..].to_vec() };
            let red = self.field.reduce_row(&tail, &done_pivot, &done);
            let mut full = SparseRow { cols: vec![lead], vals: vec![self.field.one()] };
            full.cols.extend(red.cols);
            full.vals.extend(red.vals);
            done_pivot[lead as usize] = done.len() as u32;
            done.push(full);
        }
        done.reverse();
        self.pivot_of = vec![NO_PIVOT; self.pivot_of.len()];
        for (k, r) in done.iter().enumerate() {
            self.pivot_of[r.lead().unwrap() as usize] = k as u32;
        }
        self.rows = done;
    }

    /// Basis of `{x : A x = 0}` where `A` is the stored row space.
    pub fn nullspace(&self) -> Vec<SparseRow<F::Elem>> {
        let mut e = self.clone();
        e.make_reduced();
        let n = e.ncols();
        let f = &self.field;
        let mut out = Vec::new();
        for free in 0..n {
            if e.is_pivot(free) {
                continue;
            }
            // x_free = 1, x_pivot(r) = -r[free]
            let mut entries: Vec<(u32, F::Elem)> = vec![(free as u32, f.one())];
            for r in &e.rows {
                if let Ok(k) = r.cols.binary_search(&(free as u32)) {
                    entries.push((r.cols[0], f.neg(&r.vals[k])));
                }
            }
            entries.sort_by_key(|x| x.0);
            out.push(SparseRow {
                cols: entries.iter().map(|x| x.0).collect(),
                vals: entries.into_iter().map(|x| x.1).collect(),
            });
        }
        out
    }
}

/// Sparse row from a dense slice.
pub fn sparse_from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseRow<F::Elem> {
    let mut r = SparseRow::new();
    for (i, v) in dense.iter().enumerate() {
        if !field.is_zero(v) {
            r.cols.push(i as u32);
            r.vals.push(v.clone());
        }
    }
    r
}

pub fn dense_from_sparse<F: Field>(field: &F, row: &SparseRow<F::Elem>, n: usize) -> Vec<F::Elem> {
    let mut d = vec![field.zero(); n];
    for (c, v) in row.cols.iter().zip(&row.vals) {
        d[*c as usize] = v.clone();
    }
    d
}

/// Transposes rows of a `nrows x ncols` matrix into its columns.
pub fn transpose<E: Clone>(rows: &[SparseRow<E>], ncols: usize) -> Vec<SparseRow<E>> {
    let mut out: Vec<SparseRow<E>> = (0..ncols).map(|_| SparseRow::new()).collect();
    for (i, r) in rows.iter().enumerate() {
        for (c, v) in r.cols.iter().zip(&r.vals) {
            out[*c as usize].cols.push(i as u32);
            out[*c as usize].vals.push(v.clone());
        }
    }
    out
}

/// Linear relations among vectors: a basis of `{c : sum_k c_k v_k = 0}`.
pub fn relations<F: Field>(field: &F, vectors: &[SparseRow<F::Elem>], dim: usize) -> Vec<SparseRow<F::Elem>> {
    let rows = transpose(vectors, dim);
    let mut e = Echelon::new(field, vectors.len());
    for r in &rows {
        e.insert(r);
    }
    e.nullspace()
}

/// Rank of a list of rows.
pub fn rank<F: Field>(field: &F, rows: &[SparseRow<F::Elem>], ncols: usize) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Determinant of a dense square matrix by Gaussian elimination.
pub fn determinant<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !field.is_zero(&a[r][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).unwrap();
        for r in c + 1..n {
            if field.is_zero(&a[r][c]) {
                continue;
            }
            let factor = field.mul(&a[r][c], &inv);
            for k in c..n {
                let t = field.mul(&factor, &a[c][k]);
                a[r][k] = field.sub(&a[r][k], &t);
            }
        }
    }
    det
}

/// Inverse of a dense square matrix; `None` when singular.
pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !field.is_zero(&a[r][c]))?;
        a.swap(p, c);
        let inv = field.inv(&a[c][c]).unwrap();
        for v in a[c].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for r in 0..n {
            if r == c || field.is_zero(&a[r][c]) {
                continue;
            }
            let factor = a[r][c].clone();
            for k in c..2 * n {
                let t = field.mul(&factor, &a[c][k]);
                a[r][k] = field.sub(&a[r][k], &t);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    fn f() -> PrimeField {
        PrimeField::new(113).unwrap()
    }

    fn row(v: &[i64]) -> SparseRow<u32> {
        let f = f();
        sparse_from_dense(&f, &v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_membership() {
        let f = f();
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(&row(&[1, 2, 3])));
        assert!(e.insert(&row(&[2, 4, 7])));
        assert!(!e.insert(&row(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&row(&[0, 0, 5])));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = f();
        let a = [row(&[1, 2, 3, 4]), row(&[0, 1, 1, 1])];
        let mut e = Echelon::new(&f, 4);
        for r in &a {
            e.insert(r);
        }
        let ker = e.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let vd = dense_from_sparse(&f, v, 4);
            for r in &a {
                let rd = dense_from_sparse(&f, r, 4);
                let dot = rd.iter().zip(&vd).fold(0, |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn relations_among_vectors() {
        let f = f();
        let vs = [row(&[1, 0, 1]), row(&[0, 1, 1]), row(&[1, 1, 2])];
        let rel = relations(&f, &vs, 3);
        assert_eq!(rel.len(), 1);
        let r = dense_from_sparse(&f, &rel[0], 3);
        // c0 = c1 = -c2
        assert_eq!(r[0], r[1]);
        assert_eq!(f.add(&r[0], &r[2]), 0);
    }

    #[test]
    fn determinant_small() {
        let f = f();
        let m = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        // 2*(12-1) - 1*(4-0) = 18
        assert_eq!(determinant(&f, &m), 18);
        let inv = inverse(&f, &m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let dot = (0..3).fold(0, |acc, k| f.add(&acc, &f.mul(&m[i][k], &inv[k][j])));
                assert_eq!(dot, u32::from(i == j));
            }
        }
        assert!(inverse(&f, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
