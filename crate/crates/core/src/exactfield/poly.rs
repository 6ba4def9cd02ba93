//! Dense univariate polynomials over Q, little-endian coefficient vectors.
//! The zero polynomial is the empty vector.

use super::{Rational, Ring};

pub type Poly = Vec<Rational>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => Rational::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Poly {
    let nb: Poly = b.iter().map(Ring::neg).collect();
    add(a, &nb)
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder by a nonzero polynomial.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].recip().expect("nonzero leading coefficient");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].mul(&lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] = rem[shift + j].sub(&c.mul(bj));
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(a: &[Rational], b: &[Rational]) -> Poly {
    divrem(a, b).1
}

pub fn make_monic(p: &[Rational]) -> Poly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let inv = p[d].recip().expect("nonzero leading coefficient");
            p[..=d].iter().map(|c| c.mul(&inv)).collect()
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g` monic
/// (or zero when both inputs are zero).
pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = r0[d].recip().unwrap();
            let scale = |p: &Poly| -> Poly { p.iter().map(|c| c.mul(&inv)).collect() };
            (scale(&r0), scale(&s0), scale(&t0))
        }
    }
}

/// The n-th cyclotomic polynomial, computed by exact division of `x^n - 1`
/// by the cyclotomic factors of its proper divisors.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut p = vec![Rational::zero(); n + 1];
    p[0] = Rational::from_integer(-1);
    p[n] = Rational::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = divrem(&p, &cyclotomic(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let a = ints(&[1, 2, 3, 4]);
        let b = ints(&[1, 1]);
        let (q, r) = divrem(&a, &b);
        assert_eq!(add(&mul(&q, &b), &r), a);
        assert!(degree(&r).unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let (g, s, t) = ext_gcd(&ints(&[0, 1]), &ints(&[1, 0, 1]));
        assert_eq!(g, ints(&[1]));
        let lhs = add(&mul(&s, &ints(&[0, 1])), &mul(&t, &ints(&[1, 0, 1])));
        assert_eq!(lhs, ints(&[1]));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }
}
