use std::collections::BTreeMap;
use std::sync::Arc;

use super::{module_schur, module_tensor, GaloisShape, PhiNGalModule, PstError};
use crate::exactfield::{Ext, ExtAlgebra, Ring};
use crate::tableaux::{r_of, Partition};

/// A character on a subset of the group (the inertia subgroup or all of
/// it), keyed by element index.
#[derive(Debug, Clone, PartialEq)]
pub struct Character<R> {
    values: BTreeMap<usize, R>,
}

impl<R: Ring> Character<R> {
    pub fn new(values: BTreeMap<usize, R>) -> Self {
        Character { values }
    }

    pub fn get(&self, g: usize) -> Option<&R> {
        self.values.get(&g)
    }

    pub fn values(&self) -> &BTreeMap<usize, R> {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(Ring::is_one)
    }

    /// First pair (g, h) in the domain with χ(gh) ≠ χ(g)χ(h).
    pub fn multiplicativity_failure(&self, shape: &GaloisShape) -> Option<(usize, usize)> {
        for (&g, x) in &self.values {
            for (&h, y) in &self.values {
                match self.values.get(&shape.mul(g, h)) {
                    Some(z) if *z == x.mul(y) => {}
                    _ => return Some((g, h)),
                }
            }
        }
        None
    }
}

/// The construction whose semi-stability is assumed.
#[derive(Debug, Clone, Copy)]
pub enum Context<'a, S: Ring> {
    TensorWith(&'a PhiNGalModule<S>),
    SchurShape(&'a Partition),
}

impl<S: Ring> Context<'_, S> {
    pub fn build(&self, d: &PhiNGalModule<S>) -> Result<PhiNGalModule<S>, PstError> {
        match self {
            Context::TensorWith(other) => module_tensor(d, other),
            Context::SchurShape(u) => {
                let needed = r_of(u);
                if d.rank() < needed {
                    return Err(PstError::RankTooSmall { rank: d.rank(), needed });
                }
                module_schur(d, u)
            }
        }
    }
}

/// The character η through which inertia acts on `d`, given that the
/// context construction has trivial inertia action.
pub fn inertia_scalar_extract<S: Ring>(
    d: &PhiNGalModule<S>,
    context: &Context<'_, S>,
) -> Result<Character<S>, PstError> {
    let ctx = context.build(d)?;
    if let Some(g) = ctx.nontrivial_inertia() {
        return Err(PstError::ContextNotSemistable { element: g });
    }
    extract_scalars(d)
}

/// Reads off η(g) from ρ(g) = η(g)·Id on inertia, checking that η(g) lies in
/// the σ-fixed subring and is invariant under conjugation by ω.
pub fn extract_scalars<S: Ring>(d: &PhiNGalModule<S>) -> Result<Character<S>, PstError> {
    let shape = d.shape();
    let mut values = BTreeMap::new();
    for &g in shape.inertia() {
        let c = d.rho(g).scalar_value().ok_or(PstError::NotScalar { element: g })?;
        if !c.is_diagonal() {
            return Err(PstError::NotInFixedRing { element: g });
        }
        values.insert(g, c.component(0).clone());
    }
    let eta = Character::new(values);
    check_conjugation(&eta, shape)?;
    Ok(eta)
}

fn check_conjugation<S: Ring>(eta: &Character<S>, shape: &GaloisShape) -> Result<(), PstError> {
    for &g in shape.inertia() {
        if eta.get(shape.conjugate_by_omega(g)) != eta.get(g) {
            return Err(PstError::NotConjInvariant { element: g });
        }
    }
    Ok(())
}

/// A character μ on the whole group with values in F = E[x]/(m), where m is
/// x^f − η(ω^f) or a supplied factor of it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedCharacter<S: Ring> {
    pub field: Arc<ExtAlgebra<S>>,
    pub root_of: S,
    pub mu: Character<Ext<S>>,
}

impl<S: Ring> ExtendedCharacter<S> {
    pub fn value(&self, g: usize) -> &Ext<S> {
        self.mu.get(g).expect("extended characters are defined everywhere")
    }

    /// μ(g)^k, with negative powers taken as μ(g^{-1})^{|k|}.
    pub fn power(&self, shape: &GaloisShape, g: usize, k: i64) -> Ext<S> {
        let base = if k < 0 { self.value(shape.inverse(g)) } else { self.value(g) };
        base.pow(k.unsigned_abs())
    }
}

/// Extends η from inertia to the whole group by μ(g'ω^i) = η(g')·x^i in
/// F = E[x]/(x^f − η(ω^f)), optionally cut down by a monic factor of
/// x^f − η(ω^f).
pub fn extend_character<S: Ring>(
    eta: &Character<S>,
    shape: &GaloisShape,
    factor: Option<Vec<S>>,
) -> Result<ExtendedCharacter<S>, PstError> {
    for &g in shape.inertia() {
        if eta.get(g).is_none() {
            return Err(PstError::Dimension(format!("eta is undefined at inertia element {g}")));
        }
    }
    check_conjugation(eta, shape)?;
    if let Some((g, h)) = eta.multiplicativity_failure(shape) {
        return Err(PstError::NotACharacter { g, h });
    }
    let f = shape.f();
    let c = eta.get(shape.omega_power(f)).expect("omega^f lies in inertia").clone();
    if !c.is_unit() {
        return Err(PstError::NotAUnit);
    }
    let base = c.parent();
    let field = match factor {
        None => ExtAlgebra::pure(&base, f, &c)?,
        Some(m) => {
            let field = ExtAlgebra::new(&base, m)?;
            if Ext::generator(&field).pow(f as u64) != Ext::embed(&field, &c) {
                return Err(PstError::BadFactor);
            }
            field
        }
    };
    let x = Ext::generator(&field);
    let values = shape
        .elements()
        .map(|g| {
            let h = eta.get(shape.inertia_part(g)).expect("eta is defined on inertia");
            (g, Ext::embed(&field, h).mul(&x.pow(shape.deg(g) as u64)))
        })
        .collect();
    let mu = Character::new(values);
    if let Some((g, h)) = mu.multiplicativity_failure(shape) {
        return Err(PstError::NotACharacter { g, h });
    }
    debug_assert!(shape.inertia().iter().all(|&g| *mu.get(g).unwrap() == Ext::embed(&field, eta.get(g).unwrap())));
    debug_assert_eq!(x.pow(f as u64), Ext::embed(&field, &c));
    Ok(ExtendedCharacter { field, root_of: c, mu })
}

/// D(μ^k): coefficients extended to F and ρ(g) scaled by μ(g)^k. φ and N are
/// unchanged.
pub fn twist_module<S: Ring>(d: &PhiNGalModule<S>, mu: &ExtendedCharacter<S>, k: i64) -> PhiNGalModule<Ext<S>> {
    let extended = d.map_scalars(&mu.field, |a| Ext::embed(&mu.field, a));
    twist_in_place(&extended, mu, k)
}

/// Twist of a module already defined over F.
pub fn twist_in_place<S: Ring>(d: &PhiNGalModule<Ext<S>>, mu: &ExtendedCharacter<S>, k: i64) -> PhiNGalModule<Ext<S>> {
    let shape = d.shape().clone();
    d.scale_action(|g| mu.power(&shape, g, k))
}
