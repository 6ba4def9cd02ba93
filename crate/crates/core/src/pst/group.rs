use std::collections::HashMap;
use std::hash::Hash;

use super::PstError;

/// A finite group Gal(L/K) with its inertia subgroup and a Frobenius lift ω.
///
/// Elements are the indices 0..n of the multiplication table. Every g factors
/// uniquely as g = g'·ω^i with g' in the inertia subgroup and 0 ≤ i < f; the
/// exponent i is the semilinearity degree of g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisShape {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    inertia: Vec<usize>,
    in_inertia: Vec<bool>,
    omega: usize,
    f: usize,
    deg: Vec<usize>,
    inertia_part: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> PstError {
    PstError::InvalidShape(msg.into())
}

impl GaloisShape {
    /// Validates the group axioms, normality of the inertia subgroup and the
    /// coset decomposition. `deg`, when given, must agree with the
    /// decomposition.
    pub fn new(
        table: Vec<Vec<usize>>,
        inertia: Vec<usize>,
        omega: usize,
        f: usize,
        deg: Option<Vec<usize>>,
    ) -> Result<Self, PstError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(invalid("multiplication table must be n×n with entries below n"));
        }
        let m = |a: usize, b: usize| table[a][b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or_else(|| invalid("no identity element"))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| m(g, h) == identity && m(h, g) == identity)
                .ok_or_else(|| invalid(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(invalid(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut in_inertia = vec![false; n];
        for &g in &inertia {
            if g >= n || in_inertia[g] {
                return Err(invalid(format!("bad or repeated inertia element {g}")));
            }
            in_inertia[g] = true;
        }
        if !in_inertia[identity] || inertia.iter().any(|&a| inertia.iter().any(|&b| !in_inertia[m(a, b)])) {
            return Err(invalid("inertia is not a subgroup"));
        }
        for g in 0..n {
            if inertia.iter().any(|&h| !in_inertia[m(m(g, h), inverse[g])]) {
                return Err(invalid(format!("inertia is not normal (conjugation by {g})")));
            }
        }
        if omega >= n || f == 0 || n != f * inertia.len() {
            return Err(invalid("index of inertia must be f"));
        }
        let mut omega_pow = vec![identity];
        for i in 1..=f {
            omega_pow.push(m(omega_pow[i - 1], omega));
        }
        if (1..f).any(|i| in_inertia[omega_pow[i]]) || !in_inertia[omega_pow[f]] {
            return Err(invalid("omega must have order f modulo inertia"));
        }
        let mut computed = vec![usize::MAX; n];
        let mut inertia_part = vec![0; n];
        for &h in &inertia {
            for (i, &w) in omega_pow.iter().take(f).enumerate() {
                let g = m(h, w);
                computed[g] = i;
                inertia_part[g] = h;
            }
        }
        if let Some(deg) = deg {
            if deg != computed {
                return Err(invalid("deg disagrees with the factorization g = g'ω^i"));
            }
        }
        let mut inertia = inertia;
        inertia.sort_unstable();
        Ok(GaloisShape { table, identity, inverse, inertia, in_inertia, omega, f, deg: computed, inertia_part })
    }

    /// Builds a shape from concrete elements and a multiplication law.
    pub fn from_elements<T: Clone + Eq + Hash>(
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
        is_inertia: impl Fn(&T) -> bool,
        omega: &T,
        f: usize,
    ) -> Result<Self, PstError> {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| index.get(&mul(a, b)).copied().ok_or_else(|| invalid("elements not closed")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inertia = (0..elements.len()).filter(|&i| is_inertia(&elements[i])).collect();
        let omega = *index.get(omega).ok_or_else(|| invalid("omega is not an element"))?;
        Self::new(table, inertia, omega, f, None)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn inertia(&self) -> &[usize] {
        &self.inertia
    }

    pub fn in_inertia(&self, g: usize) -> bool {
        self.in_inertia[g]
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn deg(&self, g: usize) -> usize {
        self.deg[g]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    /// The factor g' of g = g'·ω^i.
    pub fn inertia_part(&self, g: usize) -> usize {
        self.inertia_part[g]
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn omega_power(&self, k: usize) -> usize {
        self.power(self.omega, k)
    }

    /// ω g ω^{-1}.
    pub fn conjugate_by_omega(&self, g: usize) -> usize {
        self.mul(self.mul(self.omega, g), self.inverse[self.omega])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// Z/n with inertia the subgroup of index f, ω = 1.
pub fn cyclic(n: usize, f: usize) -> Result<GaloisShape, PstError> {
    if f == 0 || !n.is_multiple_of(f) {
        return Err(invalid("f must divide n"));
    }
    let els: Vec<usize> = (0..n).collect();
    GaloisShape::from_elements(&els, |a, b| (a + b) % n, |a| a % f == 0, &(1 % n), f)
}

/// Z/m × Z/f with inertia Z/m × 0 and ω = (0, 1).
pub fn split_product(m: usize, f: usize) -> Result<GaloisShape, PstError> {
    let els: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..f).map(move |b| (a, b))).collect();
    GaloisShape::from_elements(&els, |a, b| ((a.0 + b.0) % m, (a.1 + b.1) % f), |a| a.1 == 0, &(0, 1 % f), f)
}

/// The dihedral group of order 2m: inertia the rotations, ω a reflection.
pub fn dihedral(m: usize) -> Result<GaloisShape, PstError> {
    let els: Vec<(usize, usize)> = (0..m).flat_map(|r| (0..2).map(move |s| (r, s))).collect();
    let mul = |a: &(usize, usize), b: &(usize, usize)| {
        let r = if a.1 == 0 { a.0 + b.0 } else { a.0 + m - b.0 };
        (r % m, (a.1 + b.1) % 2)
    };
    GaloisShape::from_elements(&els, mul, |a| a.1 == 0, &(0, 1), 2)
}

/// The dicyclic group ⟨a, x | a^{2n}, x² = a^n, x a x^{-1} = a^{-1}⟩ of
/// order 4n (n = 2 is the quaternion group): inertia ⟨a⟩, ω = x.
pub fn dicyclic(n: usize) -> Result<GaloisShape, PstError> {
    let k = 2 * n;
    let els: Vec<(usize, usize)> = (0..k).flat_map(|r| (0..2).map(move |s| (r, s))).collect();
    let mul = |a: &(usize, usize), b: &(usize, usize)| match (a.1, b.1) {
        (0, s) => ((a.0 + b.0) % k, s),
        (_, 0) => ((a.0 + k - b.0) % k, 1),
        _ => ((a.0 + k - b.0 + n) % k, 0),
    };
    GaloisShape::from_elements(&els, mul, |a| a.1 == 0, &(0, 1), 2)
}

/// The alternating group A4: inertia the Klein four-group, ω a 3-cycle.
pub fn alternating4() -> Result<GaloisShape, PstError> {
    let mut els: Vec<[usize; 4]> = Vec::new();
    for p in permutations4() {
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            els.push(p);
        }
    }
    let compose = |a: &[usize; 4], b: &[usize; 4]| [a[b[0]], a[b[1]], a[b[2]], a[b[3]]];
    let klein = |p: &[usize; 4]| (0..4).all(|i| p[p[i]] == i);
    GaloisShape::from_elements(&els, compose, klein, &[1, 2, 0, 3], 3)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_valid() {
        for (shape, n, i, f) in [
            (cyclic(4, 2).unwrap(), 4, 2, 2),
            (cyclic(6, 3).unwrap(), 6, 2, 3),
            (split_product(3, 2).unwrap(), 6, 3, 2),
            (dihedral(3).unwrap(), 6, 3, 2),
            (dicyclic(2).unwrap(), 8, 4, 2),
            (dicyclic(3).unwrap(), 12, 6, 2),
            (alternating4().unwrap(), 12, 4, 3),
        ] {
            assert_eq!((shape.order(), shape.inertia().len(), shape.f()), (n, i, f));
            for g in shape.elements() {
                let rebuilt = shape.mul(shape.inertia_part(g), shape.omega_power(shape.deg(g)));
                assert_eq!(rebuilt, g);
            }
        }
    }

    #[test]
    fn rejects_bad_data() {
        let c4 = cyclic(4, 2).unwrap();
        let table = c4.table().to_vec();
        assert!(GaloisShape::new(table.clone(), vec![0, 1], 1, 2, None).is_err());
        assert!(GaloisShape::new(table.clone(), vec![0, 2], 2, 2, None).is_err());
        assert!(GaloisShape::new(table.clone(), vec![0, 2], 1, 2, Some(vec![0, 1, 1, 1])).is_err());
        assert!(GaloisShape::new(table, vec![0, 2], 1, 2, Some(vec![0, 1, 0, 1])).is_ok());
        // S3 with a non-normal subgroup of order 2 as "inertia"
        let s3 = dihedral(3).unwrap();
        let refl = (0..6).find(|&g| !s3.in_inertia(g)).unwrap();
        assert!(GaloisShape::new(s3.table().to_vec(), vec![s3.identity(), refl], 1, 3, None).is_err());
    }
}
