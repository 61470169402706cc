//! Dense matrices over an exact field, reduced row echelon forms and canonical subspaces.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{denominator_lcm, Field};

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Self {
            field: field.clone(),
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &F::Elem) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(&self.data[k], v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let a = a.clone();
                let orow = other.row(k);
                let dst = out.row_mut(i);
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !f.is_zero(b) {
                        f.add_mul_assign(d, &a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (d, b) in out.iter_mut().zip(self.row(i)) {
                if !f.is_zero(b) {
                    f.add_mul_assign(d, c, b);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = self.field.mul(x, c);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&other.data) {
            *x = self.field.add(x, y);
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&other.data) {
            *x = self.field.sub(x, y);
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.rows += other.rows;
        m.data.extend(other.data.iter().cloned());
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_rows(
            &self.field,
            self.cols,
            rows.iter().map(|&i| self.row(i).to_vec()).collect(),
        )
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Bring to reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.eliminate(true)
    }

    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            {
                let row = self.row_mut(r);
                for x in row[c..].iter_mut() {
                    if !f.is_zero(x) {
                        *x = f.mul(x, &inv);
                    }
                }
            }
            nz.clear();
            nz.extend((c..cols).filter(|&j| !f.is_zero(self.get(r, j))));
            let pivot_row: Vec<(usize, F::Elem)> =
                nz.iter().map(|&j| (j, self.get(r, j).clone())).collect();
            let start = if reduced { 0 } else { r + 1 };
            for i in start..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for (j, b) in &pivot_row {
                    f.sub_mul_assign(&mut row[*j], &factor, b);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    /// Rank. Over Q this uses fraction-free Bareiss elimination on cleared rows.
    pub fn rank(&self) -> usize {
        if self.field.modulus().is_none() {
            let rows: Vec<Vec<BigRational>> = (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| self.field.to_rational(x)).collect())
                .collect();
            return bareiss_rank(&rows, self.cols);
        }
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, piv) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            basis.push(v);
        }
        Subspace::from_rows(f, self.cols, basis)
    }

    /// Left kernel `{y : y M = 0}`.
    pub fn left_kernel(&self) -> Subspace<F> {
        self.transpose().kernel()
    }

    /// Column span.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_matrix(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_matrix(self)
    }

    /// Some solution of `M x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let piv = aug.rref_in_place();
        if piv.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = aug.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&cols))
    }

    /// Map entries into another field.
    pub fn map_field<G: Field>(&self, g: &G, mut conv: impl FnMut(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: g.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut conv).collect(),
        }
    }
}

/// Rank of a rational matrix by Bareiss elimination on integer rows.
pub fn bareiss_rank(rows: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = denominator_lcm(r.iter());
            r.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pr = &top[r];
        for row in bottom.iter_mut() {
            let a = row[c].clone();
            for j in c + 1..cols {
                let v = &row[j] * &pr[c] - &a * &pr[j];
                row[j] = v.div_floor(&prev);
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].abs();
        if m[r][c].is_negative() {
            // keep the divisor positive; exactness is unaffected by sign
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        r += 1;
    }
    r
}

/// A linear subspace of `F^n`, stored canonically in reduced row echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: vec![],
        }
    }

    pub fn from_rows(field: &F, ambient_dim: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        Self::from_matrix(&Matrix::from_rows(field, ambient_dim, rows))
    }

    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let (r, piv) = m.rref();
        let keep: Vec<usize> = (0..piv.len()).collect();
        Self {
            ambient_dim: m.cols(),
            basis: r.select_rows(&keep),
            pivots: piv,
        }
    }

    pub fn full(field: &F, n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    #[inline]
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn field(&self) -> &F {
        self.basis.field()
    }

    /// Coordinates in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let c: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.vec_mul(&c);
        Ok((recon == v).then_some(c))
    }

    /// Entries of `v` at the pivot columns: the coordinates of `v` when it is known to
    /// lie in the subspace.
    pub fn pivot_coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        for i in 0..other.dim() {
            if !self.contains(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "intersect in ambients {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let f = self.field();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Self::zero(f, self.ambient_dim));
        }
        let stacked = self.basis.vstack(&other.basis);
        let lk = stacked.left_kernel();
        let k = self.dim();
        let mut rows = Vec::with_capacity(lk.dim());
        for i in 0..lk.dim() {
            let alpha = &lk.basis.row(i)[..k];
            rows.push(self.basis.vec_mul(alpha));
        }
        Ok(Self::from_rows(f, self.ambient_dim, rows))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension("sum of subspaces".into()));
        }
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)))
    }
}

/// Dot product over a field.
pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            f.add_mul_assign(&mut acc, x, y);
        }
    }
    acc
}
