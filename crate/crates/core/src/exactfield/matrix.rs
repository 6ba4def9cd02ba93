use std::fmt;

use super::{AlgebraError, Rational, Ring};

/// Dense row-major matrix over a commutative ring.
///
/// Shape mismatches in arithmetic are programming errors and panic; inputs
/// from outside the crate are shape-checked when parsed.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    parent: R::Parent,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(parent: &R::Parent, rows: usize, cols: usize) -> Self {
        Matrix { parent: parent.clone(), rows, cols, data: vec![R::zero(parent); rows * cols] }
    }

    pub fn identity(parent: &R::Parent, n: usize) -> Self {
        Self::from_fn(parent, n, n, |i, j| if i == j { R::one(parent) } else { R::zero(parent) })
    }

    pub fn scalar(parent: &R::Parent, n: usize, c: &R) -> Self {
        Self::from_fn(parent, n, n, |i, j| if i == j { c.clone() } else { R::zero(parent) })
    }

    pub fn diagonal(parent: &R::Parent, diag: &[R]) -> Self {
        let n = diag.len();
        Self::from_fn(parent, n, n, |i, j| if i == j { diag[i].clone() } else { R::zero(parent) })
    }

    pub fn from_fn(parent: &R::Parent, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { parent: parent.clone(), rows, cols, data }
    }

    pub fn from_data(parent: &R::Parent, rows: usize, cols: usize, data: Vec<R>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| e.parent() != *parent) {
            return Err(AlgebraError::ParentMismatch(format!("{:?}", bad.parent())));
        }
        Ok(Matrix { parent: parent.clone(), rows, cols, data })
    }

    pub fn from_rows(parent: &R::Parent, rows: Vec<Vec<R>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Self::from_data(parent, r, c, rows.into_iter().flatten().collect())
    }

    pub fn parent(&self) -> &R::Parent {
        &self.parent
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<T: Ring>(&self, parent: &T::Parent, f: impl Fn(&R) -> T) -> Matrix<T> {
        Matrix { parent: parent.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.parent, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { parent: self.parent.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { parent: self.parent.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            parent: self.parent.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Ring::neg).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix {
            parent: self.parent.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Matrix {
            parent: self.parent.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(q)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(&self.parent, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(R::zero(&self.parent), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.parent, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product, with basis `e_i ⊗ f_j` at index `i * rhs.rows + j`.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(&self.parent, self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols).mul(rhs.get(i % rhs.rows, j % rhs.cols))
        })
    }

    /// `self ⊗ I + I ⊗ rhs`, the derivation induced on a tensor product.
    pub fn kron_sum(&self, rhs: &Self) -> Self {
        let left = self.kron(&Self::identity(&self.parent, rhs.rows));
        let right = Self::identity(&self.parent, self.rows).kron(rhs);
        left.add(&right)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the matrix equals `c·Id`.
    pub fn scalar_value(&self) -> Option<R> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(R::one(&self.parent));
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(&self.parent), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.parent, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Coefficients `c_0..c_n` of det(t·I - A), low degree first, by the
    /// Faddeev–LeVerrier recursion. Division only by small integers, so this
    /// works over any Q-algebra.
    pub fn char_poly(&self) -> Vec<R> {
        self.faddeev().0
    }

    fn faddeev(&self) -> (Vec<R>, Self) {
        assert!(self.is_square());
        let n = self.rows;
        let id = Self::identity(&self.parent, n);
        let mut coeffs = vec![R::zero(&self.parent); n + 1];
        coeffs[n] = R::one(&self.parent);
        let mut m = Self::zeros(&self.parent, n, n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
            let t = self.mul(&m).trace();
            let inv_k = Rational::new(-1, k as i64).expect("nonzero");
            coeffs[n - k] = t.scale(&inv_k);
        }
        (coeffs, m)
    }

    pub fn determinant(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let p = &self.parent;
        match self.rows {
            0 => R::one(p),
            1 => self.get(0, 0).clone(),
            2 => self.get(0, 0).mul(self.get(1, 1)).sub(&self.get(0, 1).mul(self.get(1, 0))),
            3 => {
                let g = |i, j| self.get(i, j);
                let a = g(0, 0).mul(&g(1, 1).mul(g(2, 2)).sub(&g(1, 2).mul(g(2, 1))));
                let b = g(0, 1).mul(&g(1, 0).mul(g(2, 2)).sub(&g(1, 2).mul(g(2, 0))));
                let c = g(0, 2).mul(&g(1, 0).mul(g(2, 1)).sub(&g(1, 1).mul(g(2, 0))));
                a.sub(&b).add(&c)
            }
            n => {
                let c0 = self.char_poly().swap_remove(0);
                if n % 2 == 0 {
                    c0
                } else {
                    c0.neg()
                }
            }
        }
    }

    /// Inverse over an arbitrary commutative Q-algebra: exists iff the
    /// determinant is a unit. Uses the Cayley–Hamilton adjugate.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let (coeffs, m) = self.faddeev();
        // A·M_n = -c_0·I, so A^{-1} = -M_n / c_0.
        let c0_inv = coeffs[0].try_inverse().ok_or(AlgebraError::Singular)?;
        Ok(m.scale(&c0_inv.neg()))
    }

    /// Reduced row echelon form with unit pivots. Returns the pivot columns.
    /// Fails when a column has nonzero entries but none of them is a unit,
    /// which can only happen over a non-field.
    pub fn rref(&mut self) -> Result<Vec<usize>, AlgebraError> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut found = None;
            let mut saw_nonzero = false;
            for i in r..self.rows {
                let e = self.get(i, c);
                if e.is_zero() {
                    continue;
                }
                saw_nonzero = true;
                if let Some(inv) = e.try_inverse() {
                    found = Some((i, inv));
                    break;
                }
            }
            let Some((pr, inv)) = found else {
                if saw_nonzero {
                    return Err(AlgebraError::ZeroDivisor);
                }
                continue;
            };
            self.swap_rows(r, pr);
            for j in 0..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(i, j).sub(&factor.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> Result<usize, AlgebraError> {
        Ok(self.clone().rref()?.len())
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Result<Vec<Vec<R>>, AlgebraError> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        let p = &self.parent;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&fc| {
                let mut v = vec![R::zero(p); self.cols];
                v[fc] = R::one(p);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(r, fc).neg();
                }
                v
            })
            .collect())
    }

    /// Some solution of `self · x = b`, or `None` if the system is
    /// inconsistent.
    pub fn solve(&self, b: &[R]) -> Result<Option<Vec<R>>, AlgebraError> {
        assert_eq!(b.len(), self.rows);
        let p = &self.parent;
        let mut aug = Self::from_fn(p, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![R::zero(p); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{AlgebraElement, QuotientAlgebra};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&(), rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn determinant_paths_agree() {
        let m = q(&[&[2, 1, 0, 3], &[1, 1, 4, 0], &[0, 2, 1, 1], &[5, 0, 1, 2]]);
        let sub = m.submatrix(&[0, 1, 2], &[0, 1, 2]);
        let cp = sub.char_poly();
        assert_eq!(sub.determinant(), cp[0].neg());
        assert_eq!(m.determinant(), Rational::from_integer(48));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[&[2, 1, 0, 3], &[1, 1, 4, 0], &[0, 2, 1, 1], &[5, 0, 1, 2]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(matches!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(AlgebraError::Singular)));
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank().unwrap(), 2);
        let ker = m.kernel().unwrap();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Ring::is_zero));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = q(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[Rational::from_integer(3), Rational::from_integer(1)]).unwrap().unwrap();
        assert_eq!(x, vec![Rational::from_integer(2), Rational::from_integer(1)]);
        let s = q(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[Rational::one(), Rational::zero()]).unwrap().is_none());
    }

    #[test]
    fn rank_over_non_field_detects_zero_divisor() {
        let a = QuotientAlgebra::from_integers(&[0, -1, 1]).unwrap();
        let x = AlgebraElement::generator(&a);
        let m = Matrix::from_rows(&a, vec![vec![x.clone()]]).unwrap();
        assert!(matches!(m.rank(), Err(AlgebraError::ZeroDivisor)));
    }

    #[test]
    fn inverse_over_non_field() {
        // [[x, 1], [0, 1]] over Q[x]/(x^2 - 1): det = x is a unit.
        let a = QuotientAlgebra::from_integers(&[-1, 0, 1]).unwrap();
        let x = AlgebraElement::generator(&a);
        let one = AlgebraElement::one(&a);
        let zero = AlgebraElement::zero(&a);
        let m = Matrix::from_rows(&a, vec![vec![x, one.clone()], vec![zero, one]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }
}
