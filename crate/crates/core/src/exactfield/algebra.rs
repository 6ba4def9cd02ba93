use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::poly::{self, Poly};
use super::{AlgebraError, Rational, Ring};

/// The algebra Q[x]/(q(x)) for a monic q of degree at least one.
///
/// q need not be irreducible: products of fields (étale algebras) and
/// non-reduced algebras such as dual numbers Q[e]/(e^2) are both allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuotientAlgebra {
    modulus: Poly,
}

impl QuotientAlgebra {
    pub fn new(modulus: Vec<Rational>) -> Result<Arc<Self>, AlgebraError> {
        let mut modulus = modulus;
        poly::trim(&mut modulus);
        match modulus.last() {
            None => Err(AlgebraError::BadModulus("zero polynomial".into())),
            Some(_) if modulus.len() < 2 => Err(AlgebraError::BadModulus("degree 0".into())),
            Some(lead) if !lead.is_one() => Err(AlgebraError::BadModulus("not monic".into())),
            Some(_) => {
                if modulus == Self::rationals().modulus {
                    Ok(Self::rationals())
                } else {
                    Ok(Arc::new(QuotientAlgebra { modulus }))
                }
            }
        }
    }

    pub fn from_integers(modulus: &[i64]) -> Result<Arc<Self>, AlgebraError> {
        Self::new(modulus.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    /// Q itself, presented as Q[x]/(x). Shared, so parent checks are pointer
    /// comparisons in the common case.
    pub fn rationals() -> Arc<Self> {
        static Q: OnceLock<Arc<QuotientAlgebra>> = OnceLock::new();
        Q.get_or_init(|| Arc::new(QuotientAlgebra { modulus: vec![Rational::zero(), Rational::one()] })).clone()
    }

    /// Q(zeta_n) as Q[x]/(Phi_n).
    pub fn cyclotomic(n: usize) -> Arc<Self> {
        Self::new(poly::cyclotomic(n)).expect("cyclotomic polynomials are monic")
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus == Self::rationals().modulus
    }
}

impl fmt::Debug for QuotientAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({:?})", self.modulus)
    }
}

/// An element of a [`QuotientAlgebra`], stored as the reduced coefficient
/// vector of length `degree(modulus)`.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<QuotientAlgebra>,
    coeffs: Vec<Rational>,
}

impl AlgebraElement {
    /// Reduces an arbitrary coefficient vector modulo the modulus.
    pub fn new(alg: &Arc<QuotientAlgebra>, coeffs: Vec<Rational>) -> Self {
        let n = alg.degree();
        let mut c = if coeffs.len() > n { poly::rem(&coeffs, &alg.modulus) } else { coeffs };
        c.resize(n, Rational::zero());
        AlgebraElement { alg: alg.clone(), coeffs: c }
    }

    pub fn rational(q: Rational) -> Self {
        Self::constant(&QuotientAlgebra::rationals(), q)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn constant(alg: &Arc<QuotientAlgebra>, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); alg.degree()];
        coeffs[0] = q;
        AlgebraElement { alg: alg.clone(), coeffs }
    }

    /// The class of x.
    pub fn generator(alg: &Arc<QuotientAlgebra>) -> Self {
        Self::new(alg, vec![Rational::zero(), Rational::one()])
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The constant coefficient when every higher coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Ring::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(Rational::is_integer)
    }

    /// Canonical representative modulo Z: constant coefficient moved into
    /// `[0, 1)`, everything else untouched.
    pub fn normalize_mod_z(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].fract_positive();
        out
    }

    /// Inverse via extended Euclid on the lift; fails exactly when
    /// gcd(lift, modulus) is non-constant.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let (g, s, _) = poly::ext_gcd(&self.coeffs, &self.alg.modulus);
        if poly::degree(&g) != Some(0) {
            return Err(AlgebraError::NotAUnit);
        }
        Ok(Self::new(&self.alg, s))
    }

    fn check_parent(&self, rhs: &Self) {
        assert!(
            Arc::ptr_eq(&self.alg, &rhs.alg) || self.alg == rhs.alg,
            "algebra elements from different parents: {:?} vs {:?}",
            self.alg,
            rhs.alg
        );
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for AlgebraElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coefficient vector; a total order used only to
/// canonicalize multisets.
impl Ord for AlgebraElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alg.modulus.cmp(&other.alg.modulus).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q:?}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*x"),
                _ => format!("{c:?}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Ring for AlgebraElement {
    type Parent = Arc<QuotientAlgebra>;

    fn parent(&self) -> Self::Parent {
        self.alg.clone()
    }

    fn zero(parent: &Self::Parent) -> Self {
        Self::constant(parent, Rational::zero())
    }

    fn one(parent: &Self::Parent) -> Self {
        Self::constant(parent, Rational::one())
    }

    fn from_rational(parent: &Self::Parent, q: &Rational) -> Self {
        Self::constant(parent, q.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_parent(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check_parent(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect();
        AlgebraElement { alg: self.alg.clone(), coeffs }
    }

    fn neg(&self) -> Self {
        AlgebraElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_parent(rhs);
        let n = self.alg.degree();
        if n == 1 {
            return AlgebraElement { alg: self.alg.clone(), coeffs: vec![self.coeffs[0].mul(&rhs.coeffs[0])] };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
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
        // Reduce from the top using x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
        let m = &self.alg.modulus;
        for k in (n..prod.len()).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut prod[k], Rational::zero());
            for (j, mj) in m.iter().enumerate().take(n) {
                if !mj.is_zero() {
                    prod[k - n + j] = prod[k - n + j].sub(&c.mul(mj));
                }
            }
        }
        prod.truncate(n);
        AlgebraElement { alg: self.alg.clone(), coeffs: prod }
    }

    fn scale(&self, q: &Rational) -> Self {
        AlgebraElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|c| c.mul(q)).collect() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
}
