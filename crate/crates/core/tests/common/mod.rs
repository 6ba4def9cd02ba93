//! Independent test-side oracles. Nothing here calls into the library's
//! linear algebra.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use schur_twist::exactfield::{Matrix, Rational};
use schur_twist::tableaux::Partition;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_big(x: &Rational) -> Q {
    Q::new(x.numer().clone(), x.denom().clone())
}

pub fn from_big(x: &Q) -> Rational {
    Rational::new(x.numer().clone(), x.denom().clone()).expect("nonzero denominator")
}

pub fn dense(m: &Matrix<Rational>) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| to_big(m.get(i, j))).collect()).collect()
}

pub fn from_dense(rows: &[Vec<Q>]) -> Matrix<Rational> {
    let c = rows.first().map_or(0, Vec::len);
    Matrix::from_fn(&(), rows.len(), c, |i, j| from_big(&rows[i][j]))
}

/// Rank by plain Gaussian elimination over Q.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for k in c..m {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn det(rows: &[Vec<Q>]) -> Q {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        let pivot = a[c][c].clone();
        d *= &pivot;
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[i][k] -= t;
                }
            }
        }
    }
    d
}

pub fn matmul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..m).map(|j| row.iter().zip(b).fold(Q::zero(), |s, (x, r)| s + x * &r[j])).collect()).collect()
}

/// Jordan block sizes of a nilpotent matrix from its rank sequence.
pub fn jordan_type(rows: &[Vec<Q>]) -> Vec<usize> {
    let n = rows.len();
    let mut ranks = vec![n];
    let mut p = rows.to_vec();
    for _ in 0..=n {
        ranks.push(rank(&p));
        p = matmul(&p, rows);
    }
    let mut out = Vec::new();
    for s in (1..=n).rev() {
        let c = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        out.extend(std::iter::repeat_n(s, c));
    }
    out
}

/// e_k(A): the sum of the k×k principal minors.
pub fn elementary(rows: &[Vec<Q>], k: usize) -> Q {
    let n = rows.len();
    if k == 0 {
        return Q::one();
    }
    let mut total = Q::zero();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return total;
    }
    loop {
        let sub: Vec<Vec<Q>> = idx.iter().map(|&i| idx.iter().map(|&j| rows[i][j].clone()).collect()).collect();
        total += det(&sub);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else { break };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
    total
}

/// s_u(A) through the dual Jacobi–Trudi determinant det(e_{u'_i - i + j}).
pub fn schur_trace(rows: &[Vec<Q>], u: &Partition) -> Q {
    let conj = u.columns();
    let l = conj.len();
    let m: Vec<Vec<Q>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = conj[i] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        Q::zero()
                    } else {
                        elementary(rows, k as usize)
                    }
                })
                .collect()
        })
        .collect();
    det(&m)
}

/// Product of (x - r) over the roots, low degree first.
pub fn poly_from_roots(roots: &[Q]) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for r in roots {
        let mut next = vec![Q::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= r * c;
        }
        p = next;
    }
    p
}

/// Number of semistandard tableaux by the hook-content formula.
pub fn hook_content(u: &Partition, d: usize) -> BigInt {
    let parts = u.parts();
    let conj = u.columns();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &len) in parts.iter().enumerate() {
        for j in 0..len {
            let content = d as i64 + j as i64 - i as i64;
            if content <= 0 {
                return BigInt::zero();
            }
            num *= content;
            den *= (len - j) + (conj[j] - i) - 1;
        }
    }
    num / den
}

pub fn random_int_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Rational> {
    Matrix::from_fn(&(), n, n, |_, _| Rational::from_integer(rng.gen_range(-bound..=bound)))
}

pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Matrix<Rational> {
    let mut m = Matrix::<Rational>::identity(&(), n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = Rational::from_integer(rng.gen_range(-2..=2));
        let mut e = Matrix::<Rational>::identity(&(), n);
        e.set(i, j, c);
        m = m.mul(&e);
    }
    m
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}
