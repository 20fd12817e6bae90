//! Dense exact linear algebra over the small fields of [`crate::gfield`].
//!
//! Everything is Gaussian elimination; dimensions stay in the low hundreds,
//! so no sparsity or blocking is needed. Reduced row echelon forms are
//! unique, which keeps every downstream output deterministic.

use crate::gfield::{FieldSpec, Fq};

/// Row-major dense matrix over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    a: Vec<Fq>,
}

impl Mat {
    pub fn zero(spec: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { spec, rows, cols, a: vec![spec.zero(); rows * cols] }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(spec, n, n);
        for i in 0..n {
            m.set(i, i, spec.one());
        }
        m
    }

    /// Rows may be empty (zero-row matrix); all rows must share a length.
    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<Fq>>, cols: usize) -> Mat {
        let mut a = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
            a.extend_from_slice(r);
        }
        Mat { spec, rows: rows.len(), cols, a }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Mat::zero(self.spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.set(i, j, out.get(i, j) + aik * rhs.get(k, j));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.spec.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut out = Mat::identity(self.spec, self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                m.set(r, j, m.get(r, j) * inv);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, col).is_zero() {
                    let f = m.get(i, col);
                    for j in col..m.cols {
                        let v = m.get(i, j) - f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for col in 0..self.cols {
            let (a, b) = (self.get(i, col), self.get(j, col));
            self.set(i, col, b);
            self.set(j, col, a);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : Ax = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Fq>> {
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut x = vec![self.spec.zero(); self.cols];
            x[free] = self.spec.one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r.get(row, free);
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `Ax = b` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &[Fq]) -> Option<Vec<Fq>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zero(self.spec, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.spec.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(self.spec, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, self.spec.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zero(self.spec, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// Incrementally maintained reduced row echelon basis of a span.
///
/// The row set always equals the rref of the span, so the basis is
/// canonical: independent of insertion order.
#[derive(Debug, Clone)]
pub struct Echelon {
    spec: FieldSpec,
    dim: usize,
    // Rows sorted by strictly increasing pivot; each pivot column is zero
    // in every other row and the pivot entry is 1.
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(spec: FieldSpec, dim: usize) -> Echelon {
        Echelon { spec, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span: zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                w[j] = w[j] - f * row[j];
            }
        }
        w
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Adds `v` to the span; returns `true` iff the rank grew.
    pub fn insert(&mut self, v: &[Fq]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[pc].inv().expect("leading entry is nonzero");
        for c in &mut w {
            *c = *c * inv;
        }
        // Back-substitute so existing rows stay fully reduced.
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            let f = row[pc];
            if !f.is_zero() {
                for j in 0..self.dim {
                    row[j] = row[j] - f * w[j];
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, w);
        self.pivots.insert(at, pc);
        true
    }

    pub fn insert_all<'a, I: IntoIterator<Item = &'a [Fq]>>(&mut self, vs: I) {
        for v in vs {
            self.insert(v);
        }
    }

    /// Coordinates of `v` in the span basis, or `None` if outside.
    pub fn coordinates(&self, v: &[Fq]) -> Option<Vec<Fq>> {
        let mut w = v.to_vec();
        let mut coords = vec![self.spec.zero(); self.rows.len()];
        for (k, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let f = w[pc];
            if f.is_zero() {
                continue;
            }
            coords[k] = f;
            for j in 0..self.dim {
                w[j] = w[j] - f * row[j];
            }
        }
        w.iter().all(|c| c.is_zero()).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfield::enumerate_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn mat(spec: FieldSpec, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(
            spec,
            rows.iter().map(|r| r.iter().map(|&v| spec.from_int(v)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rref_of_known_matrix() {
        let m = mat(f5(), &[&[1, 2, 3], &[2, 4, 1], &[0, 0, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r.row(0), mat(f5(), &[&[1, 2, 0]]).row(0));
        assert_eq!(r.row(1), mat(f5(), &[&[0, 0, 1]]).row(0));
        assert_eq!(r.row(2), mat(f5(), &[&[0, 0, 0]]).row(0));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = mat(f5(), &[&[1, 2, 3], &[2, 4, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for x in &ns {
            assert!(m.mul_vec(x).iter().all(|c| c.is_zero()));
        }
        assert_eq!(m.rank() + ns.len(), m.ncols());
    }

    #[test]
    fn solve_finds_solutions_and_detects_inconsistency() {
        let m = mat(f5(), &[&[1, 2], &[3, 4]]);
        let b = vec![f5().from_int(1), f5().from_int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        let sing = mat(f5(), &[&[1, 2], &[2, 4]]);
        assert!(sing.solve(&[f5().from_int(1), f5().from_int(3)]).is_none());
        let consistent = sing.solve(&[f5().from_int(1), f5().from_int(2)]).unwrap();
        assert_eq!(sing.mul_vec(&consistent), vec![f5().from_int(1), f5().from_int(2)]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(f5(), &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f5(), 2));
        assert_eq!(inv.mul(&m), Mat::identity(f5(), 2));
        assert!(mat(f5(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_matches_rref_and_is_order_independent() {
        let spec = FieldSpec::prime(3).unwrap();
        let vs: Vec<Vec<Fq>> = vec![
            vec![spec.from_int(1), spec.from_int(2), spec.from_int(0)],
            vec![spec.from_int(2), spec.from_int(1), spec.from_int(0)],
            vec![spec.from_int(0), spec.from_int(1), spec.from_int(1)],
        ];
        let mut fwd = Echelon::new(spec, 3);
        for v in &vs {
            fwd.insert(v);
        }
        let mut rev = Echelon::new(spec, 3);
        for v in vs.iter().rev() {
            rev.insert(v);
        }
        assert_eq!(fwd.basis(), rev.basis());
        assert_eq!(fwd.rank(), Mat::from_rows(spec, vs.clone(), 3).rank());
        for v in &vs {
            assert!(fwd.contains(v));
            let coords = fwd.coordinates(v).unwrap();
            let mut rebuilt = vec![spec.zero(); 3];
            for (c, row) in coords.iter().zip(fwd.basis()) {
                for j in 0..3 {
                    rebuilt[j] = rebuilt[j] + *c * row[j];
                }
            }
            assert_eq!(&rebuilt, v);
        }
        assert!(!fwd.contains(&[spec.zero(), spec.zero(), spec.from_int(1)])
            || fwd.rank() == 3);
    }

    #[test]
    fn random_rank_nullity_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for spec in [FieldSpec::prime(3).unwrap(), f5(), FieldSpec::quadratic(3).unwrap()] {
            let elems = enumerate_field(spec);
            for _ in 0..60 {
                let rows = rng.gen_range(1..6);
                let cols = rng.gen_range(1..6);
                let m = Mat::from_rows(
                    spec,
                    (0..rows)
                        .map(|_| (0..cols).map(|_| elems[rng.gen_range(0..elems.len())]).collect())
                        .collect(),
                    cols,
                );
                assert_eq!(m.rank() + m.nullspace().len(), cols);
                let x: Vec<Fq> =
                    (0..cols).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
                let b = m.mul_vec(&x);
                let sol = m.solve(&b).expect("consistent by construction");
                assert_eq!(m.mul_vec(&sol), b);
                if rows == cols {
                    if let Some(inv) = m.inverse() {
                        assert_eq!(m.mul(&inv), Mat::identity(spec, rows));
                    } else {
                        assert!(m.rank() < rows);
                    }
                }
            }
        }
    }
}
