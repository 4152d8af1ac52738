//! Dense integer matrices, Smith normal form, and cokernels.

use crate::abelian::AbelianGroupStructure;
use crate::error::{Error, Result};
use crate::Scalar;

use std::fmt;

/// Row-major dense matrix over the scalar ring. Zero rows or columns are
/// allowed; a `0 x n` matrix presents the free group of rank `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MatrixShape("ragged rows".to_owned()));
        }
        Ok(IntegerMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::MatrixShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + k.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::MatrixShape(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // exact over any integral domain
                    let num = m.get(i, j).clone() * m.get(k, k).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone();
                    m.set(i, j, num / prev.clone());
                }
                m.set(i, k, T::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Smallest-magnitude nonzero entry of the block at `(t.., t..)`.
    fn pivot_position(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best {
                    Some((_, _, b)) if *b <= a => {}
                    _ => best = Some((i, j, a)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Smith normal form: diagonal `d` with `u * self * v == d`, `u` and
    /// `v` unimodular, diagonal entries nonnegative and each dividing the
    /// next.
    pub fn smith_normal_form(&self) -> SmithNormalForm<T> {
        let mut d = self.clone();
        let mut u = Self::identity(self.rows);
        let mut v = Self::identity(self.cols);
        let steps = self.rows.min(self.cols);

        'pivot: for t in 0..steps {
            loop {
                let Some((pi, pj)) = d.pivot_position(t) else {
                    break 'pivot;
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                if d.get(t, t).is_negative() {
                    d.negate_row(t);
                    u.negate_row(t);
                }

                let pivot = d.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..d.rows {
                    let e = d.get(i, t);
                    if e.is_zero() {
                        continue;
                    }
                    let q = -e.div_floor(&pivot);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..d.cols {
                    let e = d.get(t, j);
                    if e.is_zero() {
                        continue;
                    }
                    let q = -e.div_floor(&pivot);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // leftover remainders are smaller than the pivot, so
                    // the next pivot choice strictly shrinks
                    continue;
                }

                // pivot row and column are clear; force divisibility into
                // the remaining block before moving on
                let mut fixed = true;
                'scan: for i in t + 1..d.rows {
                    for j in t + 1..d.cols {
                        if !d.get(i, j).clone().mod_floor(&pivot).is_zero() {
                            d.add_row_multiple(t, i, &T::one());
                            u.add_row_multiple(t, i, &T::one());
                            fixed = false;
                            break 'scan;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
        }

        SmithNormalForm { d, u, v }
    }

    /// Number of nonzero diagonal entries of the Smith form.
    pub fn rank(&self) -> usize {
        let d = self.smith_normal_form().d;
        (0..self.rows.min(self.cols)).filter(|&i| !d.get(i, i).is_zero()).count()
    }

    /// Cokernel of the map given by this matrix acting on column vectors:
    /// the abelian group presented with one generator per column and one
    /// relation per row.
    pub fn cokernel(&self) -> AbelianGroupStructure<T> {
        let d = self.smith_normal_form().d;
        let mut torsion = Vec::new();
        let mut rank = 0usize;
        for i in 0..self.rows.min(self.cols) {
            let e = d.get(i, i);
            if e.is_zero() {
                continue;
            }
            rank += 1;
            if !e.is_one() {
                torsion.push(e.clone());
            }
        }
        AbelianGroupStructure::new(self.cols - rank, torsion)
            .expect("smith diagonal is a divisor chain")
    }
}

impl<T: Scalar> fmt::Debug for IntegerMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub struct SmithNormalForm<T> {
    pub d: IntegerMatrix<T>,
    pub u: IntegerMatrix<T>,
    pub v: IntegerMatrix<T>,
}

impl<T: Scalar> SmithNormalForm<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}
