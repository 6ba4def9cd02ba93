use std::sync::Arc;

use super::{AlgebraElement, Matrix, QuotientAlgebra, Rational, Ring};

/// Parent of [`Etale`]: the split algebra S^f, the model of L_0 ⊗ E.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaleParent<P> {
    pub base: P,
    pub arity: usize,
}

/// An element of the product algebra S^f with componentwise arithmetic.
///
/// Frobenius acts by the cyclic shift `σ(x)_i = x_{i-1 mod f}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Etale<S> {
    comps: Vec<S>,
}

pub type EtaleAlgebra = EtaleParent<Arc<QuotientAlgebra>>;

impl<S: Ring> Etale<S> {
    pub fn from_components(comps: Vec<S>) -> Self {
        assert!(!comps.is_empty(), "étale algebra arity must be at least 1");
        Etale { comps }
    }

    /// The diagonal image of the base ring.
    pub fn diagonal(a: &S, arity: usize) -> Self {
        Etale::from_components(vec![a.clone(); arity])
    }

    pub fn components(&self) -> &[S] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &S {
        &self.comps[i]
    }

    pub fn arity(&self) -> usize {
        self.comps.len()
    }

    /// σ^k, for any integer k.
    pub fn shift(&self, k: i64) -> Self {
        Etale { comps: shift_apply(&self.comps, k) }
    }

    pub fn is_diagonal(&self) -> bool {
        self.comps.windows(2).all(|w| w[0] == w[1])
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Etale<T> {
        Etale { comps: self.comps.iter().map(f).collect() }
    }
}

/// Cyclic shift of a coordinate vector: `out[i] = v[(i - k) mod f]`.
pub fn shift_apply<T: Clone>(v: &[T], k: i64) -> Vec<T> {
    let f = v.len();
    if f == 0 {
        return Vec::new();
    }
    let k = k.rem_euclid(f as i64) as usize;
    let mut out = v.to_vec();
    out.rotate_right(k);
    out
}

/// A Q-basis of the σ-fixed subalgebra of E^f, computed as the kernel of
/// σ - id acting Q-linearly on Q^(f·deg E).
pub fn fixed_points_shift(base: &Arc<QuotientAlgebra>, arity: usize) -> Vec<Etale<AlgebraElement>> {
    let n = base.degree();
    let dim = arity * n;
    let idx = |comp: usize, k: usize| comp * n + k;
    let mut m = Matrix::<Rational>::zeros(&(), dim, dim);
    for i in 0..arity {
        let src = (i + arity - 1) % arity;
        for k in 0..n {
            let row = idx(i, k);
            m.set(row, idx(src, k), m.get(row, idx(src, k)).add(&Rational::one()));
            m.set(row, row, m.get(row, row).sub(&Rational::one()));
        }
    }
    m.kernel()
        .expect("rational matrices have a kernel")
        .into_iter()
        .map(|v| {
            Etale::from_components(
                (0..arity).map(|i| AlgebraElement::new(base, v[i * n..(i + 1) * n].to_vec())).collect(),
            )
        })
        .collect()
}

impl<S: Ring> Ring for Etale<S> {
    type Parent = EtaleParent<S::Parent>;

    fn parent(&self) -> Self::Parent {
        EtaleParent { base: self.comps[0].parent(), arity: self.comps.len() }
    }

    fn zero(p: &Self::Parent) -> Self {
        Etale::diagonal(&S::zero(&p.base), p.arity)
    }

    fn one(p: &Self::Parent) -> Self {
        Etale::diagonal(&S::one(&p.base), p.arity)
    }

    fn from_rational(p: &Self::Parent, q: &Rational) -> Self {
        Etale::diagonal(&S::from_rational(&p.base, q), p.arity)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "étale arity mismatch");
        Etale { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.add(b)).collect() }
    }

    fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "étale arity mismatch");
        Etale { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    fn neg(&self) -> Self {
        Etale { comps: self.comps.iter().map(Ring::neg).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "étale arity mismatch");
        Etale { comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    fn scale(&self, q: &Rational) -> Self {
        Etale { comps: self.comps.iter().map(|a| a.scale(q)).collect() }
    }

    fn is_zero(&self) -> bool {
        self.comps.iter().all(Ring::is_zero)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.comps.iter().map(Ring::try_inverse).collect::<Option<Vec<_>>>().map(|comps| Etale { comps })
    }
}

impl<S: Ring> Matrix<Etale<S>> {
    /// Entrywise σ^k.
    pub fn shift(&self, k: i64) -> Self {
        self.map(&self.parent().clone(), |e| e.shift(k))
    }

    /// The matrix over S obtained by projecting onto coordinate `i`.
    pub fn component(&self, i: usize) -> Matrix<S> {
        self.map(&self.parent().base, |e| e.component(i).clone())
    }

    /// Reassembles a matrix over S^f from its f projections.
    pub fn from_components(parts: &[Matrix<S>]) -> Self {
        assert!(!parts.is_empty());
        let (r, c) = (parts[0].rows(), parts[0].cols());
        let parent = EtaleParent { base: parts[0].parent().clone(), arity: parts.len() };
        Matrix::from_fn(&parent, r, c, |i, j| {
            Etale::from_components(parts.iter().map(|m| m.get(i, j).clone()).collect())
        })
    }

    pub fn diagonal_embedding(m: &Matrix<S>, arity: usize) -> Self {
        let parent = EtaleParent { base: m.parent().clone(), arity };
        m.map(&parent, |e| Etale::diagonal(e, arity))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_convention() {
        assert_eq!(shift_apply(&['a', 'b', 'c'], 1), vec!['c', 'a', 'b']);
        assert_eq!(shift_apply(&['a', 'b', 'c'], 0), vec!['a', 'b', 'c']);
        assert_eq!(shift_apply(&['a', 'b', 'c'], 3), vec!['a', 'b', 'c']);
        assert_eq!(shift_apply(&['a', 'b', 'c'], -1), vec!['b', 'c', 'a']);
    }

    #[test]
    fn fixed_points_over_q() {
        let q = QuotientAlgebra::rationals();
        let fixed = fixed_points_shift(&q, 3);
        assert_eq!(fixed.len(), 1);
        assert!(fixed[0].is_diagonal());
        assert!(!fixed[0].is_zero());
        assert_eq!(fixed_points_shift(&q, 1).len(), 1);
    }

    #[test]
    fn fixed_points_over_gaussian_rationals() {
        let e = QuotientAlgebra::from_integers(&[1, 0, 1]).unwrap();
        let fixed = fixed_points_shift(&e, 2);
        assert_eq!(fixed.len(), 2);
        for v in &fixed {
            assert!(v.is_diagonal());
            assert_eq!(v.shift(1), *v);
        }
    }
}
