use std::sync::Arc;

use super::{AlgebraError, Matrix, Rational, Ring};

/// The algebra S[x]/(m(x)) for a monic m with coefficients in a base ring S.
///
/// Used for coefficient extensions F = E[x]/(x^f - c) where E is itself a
/// quotient algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtAlgebra<S: Ring> {
    base: S::Parent,
    modulus: Vec<S>,
}

impl<S: Ring> ExtAlgebra<S> {
    pub fn new(base: &S::Parent, modulus: Vec<S>) -> Result<Arc<Self>, AlgebraError> {
        match modulus.last() {
            None => Err(AlgebraError::BadModulus("zero polynomial".into())),
            Some(_) if modulus.len() < 2 => Err(AlgebraError::BadModulus("degree 0".into())),
            Some(lead) if !lead.is_one() => Err(AlgebraError::BadModulus("not monic".into())),
            Some(_) => Ok(Arc::new(ExtAlgebra { base: base.clone(), modulus })),
        }
    }

    /// S[x]/(x^n - c).
    pub fn pure(base: &S::Parent, n: usize, c: &S) -> Result<Arc<Self>, AlgebraError> {
        let mut m = vec![S::zero(base); n + 1];
        m[0] = c.neg();
        m[n] = S::one(base);
        Self::new(base, m)
    }

    pub fn base(&self) -> &S::Parent {
        &self.base
    }

    pub fn modulus(&self) -> &[S] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct Ext<S: Ring> {
    alg: Arc<ExtAlgebra<S>>,
    coeffs: Vec<S>,
}

impl<S: Ring> Ext<S> {
    pub fn new(alg: &Arc<ExtAlgebra<S>>, coeffs: Vec<S>) -> Self {
        let n = alg.degree();
        let mut c = coeffs;
        reduce(&mut c, &alg.modulus);
        c.resize(n, S::zero(&alg.base));
        Ext { alg: alg.clone(), coeffs: c }
    }

    pub fn embed(alg: &Arc<ExtAlgebra<S>>, a: &S) -> Self {
        let mut coeffs = vec![S::zero(&alg.base); alg.degree()];
        coeffs[0] = a.clone();
        Ext { alg: alg.clone(), coeffs }
    }

    pub fn generator(alg: &Arc<ExtAlgebra<S>>) -> Self {
        let z = S::zero(&alg.base);
        Self::new(alg, vec![z, S::one(&alg.base)])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn algebra(&self) -> &Arc<ExtAlgebra<S>> {
        &self.alg
    }

    /// The base-ring element when `self` lies in the image of S.
    pub fn as_base(&self) -> Option<&S> {
        if self.coeffs[1..].iter().all(Ring::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Matrix of multiplication by `self` on the basis 1, x, …, x^{n-1}.
    fn multiplication_matrix(&self) -> Matrix<S> {
        let n = self.alg.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let x = Ext::generator(&self.alg);
        for _ in 0..n {
            cols.push(cur.coeffs.clone());
            cur = cur.mul(&x);
        }
        Matrix::from_fn(&self.alg.base, n, n, |i, j| cols[j][i].clone())
    }
}

fn reduce<S: Ring>(c: &mut Vec<S>, modulus: &[S]) {
    let n = modulus.len() - 1;
    while c.len() > n {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let k = c.len() - n;
        for (j, mj) in modulus.iter().enumerate().take(n) {
            c[k + j] = c[k + j].sub(&top.mul(mj));
        }
    }
}

impl<S: Ring> PartialEq for Ext<S> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.coeffs == other.coeffs
    }
}

impl<S: Ring> Ring for Ext<S> {
    type Parent = Arc<ExtAlgebra<S>>;

    fn parent(&self) -> Self::Parent {
        self.alg.clone()
    }

    fn zero(p: &Self::Parent) -> Self {
        Ext::embed(p, &S::zero(&p.base))
    }

    fn one(p: &Self::Parent) -> Self {
        Ext::embed(p, &S::one(&p.base))
    }

    fn from_rational(p: &Self::Parent, q: &Rational) -> Self {
        Ext::embed(p, &S::from_rational(&p.base, q))
    }

    fn add(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect();
        Ext { alg: self.alg.clone(), coeffs }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ext { alg: self.alg.clone(), coeffs }
    }

    fn neg(&self) -> Self {
        Ext { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let n = self.alg.degree();
        let zero = S::zero(&self.alg.base);
        let mut prod = vec![zero; 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = prod[i + j].add(&a.mul(b));
                }
            }
        }
        reduce(&mut prod, &self.alg.modulus);
        Ext { alg: self.alg.clone(), coeffs: prod }
    }

    fn scale(&self, q: &Rational) -> Self {
        Ext { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(q)).collect() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Units are detected through the multiplication matrix: `self` is a unit
    /// iff that matrix is invertible over S.
    fn try_inverse(&self) -> Option<Self> {
        let inv = self.multiplication_matrix().inverse().ok()?;
        let coeffs = (0..self.alg.degree()).map(|i| inv.get(i, 0).clone()).collect();
        Some(Ext { alg: self.alg.clone(), coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{AlgebraElement, QuotientAlgebra};

    #[test]
    fn pure_extension_over_q() {
        let q = QuotientAlgebra::rationals();
        let c = AlgebraElement::integer(-1);
        let f = ExtAlgebra::pure(&q, 2, &c).unwrap();
        let x = Ext::generator(&f);
        assert_eq!(x.mul(&x), Ext::embed(&f, &c));
        let inv = x.try_inverse().unwrap();
        assert!(inv.mul(&x).is_one());
        assert_eq!(inv, x.neg());
    }

    #[test]
    fn tower_over_cyclotomic() {
        let e = QuotientAlgebra::cyclotomic(3);
        let zeta = AlgebraElement::generator(&e);
        let f = ExtAlgebra::pure(&e, 3, &zeta).unwrap();
        let x = Ext::generator(&f);
        assert_eq!(x.pow(3), Ext::embed(&f, &zeta));
        assert_eq!(x.pow(9), Ext::one(&f));
        assert!(x.is_unit());
    }

    #[test]
    fn zero_divisor_in_split_extension() {
        let q = QuotientAlgebra::rationals();
        let f = ExtAlgebra::pure(&q, 2, &AlgebraElement::integer(1)).unwrap();
        let x = Ext::generator(&f);
        let e = x.sub(&Ext::one(&f));
        assert!(e.try_inverse().is_none());
    }
}
