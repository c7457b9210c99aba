//! Dense integer matrices and Smith normal form with transforms.

use serde::{Deserialize, Serialize};

/// Entry type: wide enough for the transform growth of desk-scale inputs.
pub type Int = i128;

/// Narrows a torsion coefficient for reporting.
pub fn narrow(v: Int) -> i64 {
    i64::try_from(v).expect("torsion coefficient exceeds i64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
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

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: Int) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: Int) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

/// `left · input · right = diagonal`, both transforms unimodular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let d = &self.diagonal;
        (0..d.rows.min(d.cols)).map(|i| d.get(i, i)).take_while(|&v| v != 0).collect()
    }

    /// Columns of `right` past the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        (self.rank()..self.right.cols).map(|j| self.right.column(j)).collect()
    }

    /// Some integer `x` with `input · x = v`, if one exists.
    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        let lv = self.left.mul_vec(v);
        let factors = self.invariant_factors();
        let mut y = vec![0 as Int; self.right.rows];
        for (i, &c) in lv.iter().enumerate() {
            match factors.get(i) {
                Some(&d) if c % d == 0 => y[i] = c / d,
                Some(_) => return None,
                None if c != 0 => return None,
                None => {}
            }
        }
        Some(self.right.mul_vec(&y))
    }
}

/// Pivot: smallest absolute value, then lowest row, then lowest column.
fn pick_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j).abs();
            if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient leaving the remainder of least absolute value.
fn nearest_quotient(x: Int, p: Int) -> Int {
    let q = x.div_euclid(p);
    let r = x - q * p;
    if 2 * r.abs() > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let Some((pi, pj)) = pick_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        let p = a.get(t, t);
        let mut clean = true;
        for i in t + 1..a.rows {
            let q = nearest_quotient(a.get(i, t), p);
            if q != 0 {
                a.add_row(i, t, -q);
                left.add_row(i, t, -q);
            }
            clean &= a.get(i, t) == 0;
        }
        for j in t + 1..a.cols {
            let q = nearest_quotient(a.get(t, j), p);
            if q != 0 {
                a.add_col(j, t, -q);
                right.add_col(j, t, -q);
            }
            clean &= a.get(t, j) == 0;
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..a.rows).find(|&i| (t + 1..a.cols).any(|j| a.get(i, j) % p != 0));
        if let Some(i) = bad {
            a.add_row(t, i, 1);
            left.add_row(t, i, 1);
            continue;
        }
        if p < 0 {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    SnfResult { left, diagonal: a, right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(m);
        assert_eq!(r.left.mul(m).mul(&r.right), r.diagonal);
        assert_eq!(r.left.determinant().abs(), 1);
        assert_eq!(r.right.determinant().abs(), 1);
        let d = &r.diagonal;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert_eq!(d.get(i, j), 0);
                }
            }
        }
        let diag: Vec<Int> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i)).collect();
        assert!(diag.iter().all(|&v| v >= 0));
        for w in diag.windows(2) {
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{diag:?}");
        }
        r
    }

    #[test]
    fn identity_and_zero() {
        let r = check(&IntMatrix::identity(3));
        assert_eq!(r.diagonal, IntMatrix::identity(3));
        let z = IntMatrix::zeros(2, 3);
        let r = check(&z);
        assert!(r.diagonal.is_zero());
        assert_eq!(r.left, IntMatrix::identity(2));
        assert_eq!(r.right, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let r = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(r.invariant_factors(), vec![2, 4]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let r = check(&m);
        let k = r.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|&v| v == 0));
        let x = r.solve(&[2, 3]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![2, 3]);
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert!(smith_normal_form(&two).solve(&[1]).is_none());
    }

    proptest! {
        #[test]
        fn snf_invariants(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-6 as Int..7, 25)) {
            let data: Vec<Vec<Int>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = if rows == 0 { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(&data) };
            let r = check(&m);
            for k in r.kernel_basis() {
                prop_assert!(m.mul_vec(&k).iter().all(|&v| v == 0));
            }
        }
    }
}
