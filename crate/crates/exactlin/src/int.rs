//! Integer matrices: Smith and Hermite normal forms, kernels, cokernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length; an empty
    /// slice gives a 0x0 matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        crate::small_vec(&self.row(i)).expect("entry overflow")
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row_i64(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<i64> {
        crate::small_vec(&self.mul_vec(&crate::big_vec(v))).expect("entry overflow")
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[i] += q * row[j]
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = q * &self.data[j * self.cols + c];
            self.data[i * self.cols + c] += v;
        }
    }

    /// col[i] += q * col[j]
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = q * &self.data[r * self.cols + j];
            self.data[r * self.cols + i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + c]);
            self.data[i * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `A = U * D * W`, with `U`, `W` unimodular and `D` diagonal with each
/// diagonal entry dividing the next. `u_inv` and `w_inv` are kept alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
    pub u_inv: IntMatrix,
    pub w_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Deterministic Smith normal form.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut w = IntMatrix::identity(n);
    let mut w_inv = IntMatrix::identity(n);

    // Row operation helpers keep A = U D W intact.
    let swap_r = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i, j| {
        d.swap_rows(i, j);
        u.swap_cols(i, j);
        ui.swap_rows(i, j);
    };
    let add_r = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i, j, q: &BigInt| {
        d.add_row(i, j, q);
        u.add_col(j, i, &-q);
        ui.add_row(i, j, q);
    };
    let swap_c = |d: &mut IntMatrix, w: &mut IntMatrix, wi: &mut IntMatrix, i, j| {
        d.swap_cols(i, j);
        w.swap_rows(i, j);
        wi.swap_cols(i, j);
    };
    let add_c = |d: &mut IntMatrix, w: &mut IntMatrix, wi: &mut IntMatrix, i, j, q: &BigInt| {
        // col_i += q col_j
        d.add_col(i, j, q);
        w.add_row(j, i, &-q);
        wi.add_col(i, j, q);
    };

    for t in 0..m.min(n) {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = d.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            swap_r(&mut d, &mut u, &mut u_inv, t, pi);
            swap_c(&mut d, &mut w, &mut w_inv, t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                add_r(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                add_c(&mut d, &mut w, &mut w_inv, j, t, &-q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            if let Some(i) = bad {
                add_r(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if t < m && t < n && d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_col(t);
            u_inv.negate_row(t);
        }
    }
    SmithDecomposition { u, d, w, u_inv, w_inv }
}

/// Row-style Hermite normal form `H = T * A` with `T` unimodular: echelon
/// rows, positive pivots, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub t: IntMatrix,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(a: &IntMatrix) -> Hermite {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !h.get(i, c).is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    h.swap_rows(r, i);
                    t.swap_rows(r, i);
                }
                break;
            }
            let p = *nz.iter().min_by(|&&x, &&y| h.get(x, c).abs().cmp(&h.get(y, c).abs())).unwrap();
            h.swap_rows(r, p);
            t.swap_rows(r, p);
            for i in r + 1..m {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.add_row(i, r, &-&q);
                t.add_row(i, r, &-q);
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            t.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            if !q.is_zero() {
                h.add_row(i, r, &-&q);
                t.add_row(i, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, t, pivots }
}

/// Saturated basis of `{x : A x = 0}` over the integers, in Hermite-reduced
/// form (so the result is canonical).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    if r == n {
        return Vec::new();
    }
    let basis: Vec<Vec<BigInt>> = (r..n).map(|j| snf.w_inv.col(j)).collect();
    let hnf = hermite_normal_form(&IntMatrix::from_big_rows(&basis, n));
    (0..hnf.pivots.len()).map(|i| hnf.h.row(i)).collect()
}

/// The cokernel `Z^m / A Z^n` as `Z^free_rank ⊕ ⊕ Z/torsion[i]`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Rows of the projection: first one row per torsion factor, then the free rows.
    pub projection: IntMatrix,
}

impl Cokernel {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.projection.mul_vec(x);
        for (i, d) in self.torsion.iter().enumerate() {
            y[i] = y[i].mod_floor(d);
        }
        y
    }

    /// The free part of the projection as its own matrix.
    pub fn free_projection(&self) -> IntMatrix {
        let t = self.torsion.len();
        let rows: Vec<Vec<BigInt>> = (t..t + self.free_rank).map(|i| self.projection.row(i)).collect();
        IntMatrix::from_big_rows(&rows, self.projection.cols())
    }

    pub fn order_if_finite(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

pub fn cokernel_projection(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let m = a.rows();
    let factors = snf.invariant_factors();
    let r = factors.len();
    let mut rows = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            torsion.push(d.clone());
            rows.push(snf.u_inv.row(i));
        }
    }
    for i in r..m {
        rows.push(snf.u_inv.row(i));
    }
    Cokernel { free_rank: m - r, torsion, projection: IntMatrix::from_big_rows(&rows, m) }
}
