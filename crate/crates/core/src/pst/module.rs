use std::fmt;
use std::sync::Arc;

use super::{GaloisShape, PstError};
use crate::exactfield::{Etale, EtaleParent, Matrix, Rational, Ring};
use crate::schur::SchurSpace;
use crate::tableaux::Partition;

/// A (φ, N, Gal(L/K))-module, free of rank d over L_0 ⊗ E = E^f.
///
/// In the chosen basis: φ(v) = Φ·σ(v), N(v) = N·v and g(v) = U_g·σ^{deg g}(v).
#[derive(Debug, Clone, PartialEq)]
pub struct PhiNGalModule<S: Ring> {
    shape: Arc<GaloisShape>,
    prime: Rational,
    phi: Matrix<Etale<S>>,
    n: Matrix<Etale<S>>,
    rho: Vec<Matrix<Etale<S>>>,
}

/// One relation that failed, with the group elements or entry involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: &'static str,
    pub witness: String,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.relation, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<RelationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, relation: &'static str, witness: impl Into<String>) {
        self.failures.push(RelationFailure { relation, witness: witness.into() });
    }
}

pub const PHI_INVERTIBLE: &str = "phi invertible";
pub const N_NILPOTENT: &str = "N nilpotent";
pub const N_PHI: &str = "N phi = p phi N";
pub const RHO_IDENTITY: &str = "rho(1) = Id";
pub const RHO_COCYCLE: &str = "rho(gh) = rho(g) sigma^deg(g)(rho(h))";
pub const PHI_COMMUTES: &str = "phi commutes with G";
pub const N_COMMUTES: &str = "N commutes with G";

fn first_nonzero<R: Ring>(m: &Matrix<R>) -> String {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                return format!("entry ({i}, {j}) of the residual");
            }
        }
    }
    "zero residual".into()
}

impl<S: Ring> PhiNGalModule<S> {
    /// Checks sizes only; the algebraic relations are checked by
    /// [`validate`](Self::validate).
    pub fn new(
        shape: Arc<GaloisShape>,
        prime: Rational,
        phi: Matrix<Etale<S>>,
        n: Matrix<Etale<S>>,
        rho: Vec<Matrix<Etale<S>>>,
    ) -> Result<Self, PstError> {
        let d = phi.rows();
        let parent = phi.parent().clone();
        if parent.arity != shape.f() {
            return Err(PstError::Dimension(format!("coefficients have arity {}, f = {}", parent.arity, shape.f())));
        }
        if rho.len() != shape.order() {
            return Err(PstError::Dimension(format!(
                "rho has {} matrices for a group of order {}",
                rho.len(),
                shape.order()
            )));
        }
        for m in std::iter::once(&phi).chain(std::iter::once(&n)).chain(&rho) {
            if m.rows() != d || m.cols() != d {
                return Err(PstError::Dimension(format!("expected {d}×{d} matrices")));
            }
            if *m.parent() != parent {
                return Err(PstError::Dimension("matrices over different coefficient rings".into()));
            }
        }
        Ok(PhiNGalModule { shape, prime, phi, n, rho })
    }

    pub fn shape(&self) -> &Arc<GaloisShape> {
        &self.shape
    }

    pub fn prime(&self) -> &Rational {
        &self.prime
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn parent(&self) -> &EtaleParent<S::Parent> {
        self.phi.parent()
    }

    pub fn phi(&self) -> &Matrix<Etale<S>> {
        &self.phi
    }

    pub fn nmat(&self) -> &Matrix<Etale<S>> {
        &self.n
    }

    pub fn rho(&self, g: usize) -> &Matrix<Etale<S>> {
        &self.rho[g]
    }

    pub fn rho_all(&self) -> &[Matrix<Etale<S>>] {
        &self.rho
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let shape = &*self.shape;
        let d = self.rank() as u64;
        let p = &self.prime;
        if !self.phi.determinant().is_unit() {
            report.fail(PHI_INVERTIBLE, "det(phi) is not a unit");
        }
        if !self.n.pow(d).is_zero() {
            report.fail(N_NILPOTENT, "N^d != 0");
        }
        let lhs = self.n.mul(&self.phi);
        let rhs = self.phi.mul(&self.n.shift(1)).scale_rational(p);
        if lhs != rhs {
            report.fail(N_PHI, first_nonzero(&lhs.sub(&rhs)));
        }
        if !self.rho[shape.identity()].is_identity() {
            report.fail(RHO_IDENTITY, format!("g = {}", shape.identity()));
        }
        let shifted: Vec<Vec<Matrix<Etale<S>>>> =
            (0..shape.f()).map(|k| self.rho.iter().map(|m| m.shift(k as i64)).collect()).collect();
        'cocycle: for g in shape.elements() {
            for h in shape.elements() {
                let lhs = &self.rho[shape.mul(g, h)];
                let rhs = self.rho[g].mul(&shifted[shape.deg(g)][h]);
                if *lhs != rhs {
                    report.fail(RHO_COCYCLE, format!("(g, h) = ({g}, {h})"));
                    break 'cocycle;
                }
            }
        }
        for g in shape.elements() {
            let k = shape.deg(g) as i64;
            let u = &self.rho[g];
            if self.phi.mul(&shifted[1 % shape.f()][g]) != u.mul(&self.phi.shift(k)) {
                report.fail(PHI_COMMUTES, format!("g = {g}"));
                break;
            }
        }
        for g in shape.elements() {
            let u = &self.rho[g];
            if self.n.mul(u) != u.mul(&self.n.shift(shape.deg(g) as i64)) {
                report.fail(N_COMMUTES, format!("g = {g}"));
                break;
            }
        }
        report
    }

    fn require_valid(&self) -> Result<(), PstError> {
        match self.validate().failures.into_iter().next() {
            None => Ok(()),
            Some(f) => Err(PstError::InvalidModule(f)),
        }
    }

    /// First inertia element acting nontrivially, if any.
    pub(crate) fn nontrivial_inertia(&self) -> Option<usize> {
        self.shape.inertia().iter().copied().find(|&g| !self.rho[g].is_identity())
    }

    /// Applies a ring map to every coefficient.
    pub fn map_scalars<T: Ring>(&self, base: &T::Parent, f: impl Fn(&S) -> T) -> PhiNGalModule<T> {
        let parent = EtaleParent { base: base.clone(), arity: self.shape.f() };
        let conv = |m: &Matrix<Etale<S>>| m.map(&parent, |e| e.map(&f));
        PhiNGalModule {
            shape: self.shape.clone(),
            prime: self.prime.clone(),
            phi: conv(&self.phi),
            n: conv(&self.n),
            rho: self.rho.iter().map(conv).collect(),
        }
    }

    /// Replaces the Galois action by g ↦ c(g)·ρ(g) for scalars c(g) in the
    /// σ-fixed subring (used for twisting by a character).
    pub fn scale_action(&self, c: impl Fn(usize) -> S) -> PhiNGalModule<S> {
        let f = self.shape.f();
        let rho = self.rho.iter().enumerate().map(|(g, m)| m.scale(&Etale::diagonal(&c(g), f))).collect();
        PhiNGalModule { rho, ..self.clone() }
    }

    pub(crate) fn with_parts(&self, phi: Matrix<Etale<S>>, n: Matrix<Etale<S>>, rho: Vec<Matrix<Etale<S>>>) -> Self {
        PhiNGalModule { shape: self.shape.clone(), prime: self.prime.clone(), phi, n, rho }
    }
}

/// Semi-stable: inertia acts trivially.
pub fn is_semistable<S: Ring>(d: &PhiNGalModule<S>) -> Result<bool, PstError> {
    d.require_valid()?;
    Ok(d.nontrivial_inertia().is_none())
}

/// Crystalline: semi-stable with N = 0.
pub fn is_crystalline<S: Ring>(d: &PhiNGalModule<S>) -> Result<bool, PstError> {
    Ok(is_semistable(d)? && d.nmat().is_zero())
}

fn compatible<S: Ring>(a: &PhiNGalModule<S>, b: &PhiNGalModule<S>) -> Result<(), PstError> {
    if a.shape != b.shape || a.prime != b.prime || a.parent() != b.parent() {
        return Err(PstError::ShapeMismatch);
    }
    Ok(())
}

pub fn module_tensor<S: Ring>(a: &PhiNGalModule<S>, b: &PhiNGalModule<S>) -> Result<PhiNGalModule<S>, PstError> {
    compatible(a, b)?;
    let rho = a.rho.iter().zip(&b.rho).map(|(x, y)| x.kron(y)).collect();
    Ok(a.with_parts(a.phi.kron(&b.phi), a.n.kron_sum(&b.n), rho))
}

fn componentwise<S: Ring>(
    m: &Matrix<Etale<S>>,
    op: impl Fn(&Matrix<S>) -> Result<Matrix<S>, PstError>,
) -> Result<Matrix<Etale<S>>, PstError> {
    let parts = (0..m.parent().arity).map(|i| op(&m.component(i))).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_components(&parts))
}

pub fn module_schur<S: Ring>(d: &PhiNGalModule<S>, u: &Partition) -> Result<PhiNGalModule<S>, PstError> {
    let space = SchurSpace::new(u, d.rank());
    if space.dimension() == 0 {
        return Err(PstError::EmptySchur);
    }
    let induced = |m: &Matrix<Etale<S>>| componentwise(m, |c| Ok(space.induced_matrix(c)?));
    let phi = induced(&d.phi)?;
    let n = componentwise(&d.n, |c| Ok(space.derivation_matrix(c)?))?;
    let rho = d.rho.iter().map(induced).collect::<Result<Vec<_>, _>>()?;
    Ok(d.with_parts(phi, n, rho))
}
