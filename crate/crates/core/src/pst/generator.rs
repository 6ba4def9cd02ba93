//! Seeded construction of valid (φ, N, Gal)-modules with a planted inertia
//! character: a scalar cocycle built from η, optionally a permutation action
//! of the Frobenius quotient, and a random change of basis over E^f.

use std::sync::Arc;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{alternating4, cyclic, dicyclic, dihedral, split_product, Character, GaloisShape, PhiNGalModule, PstError};
use crate::exactfield::{jordan_block, AlgebraElement, Etale, Matrix, QuotientAlgebra, Rational, Ring};
use crate::tableaux::{r_of, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic { n: usize, f: usize },
    SplitProduct { m: usize, f: usize },
    Dihedral { m: usize },
    Dicyclic { n: usize },
    Alternating4,
}

impl Family {
    pub fn shape(&self) -> Result<GaloisShape, PstError> {
        match *self {
            Family::Cyclic { n, f } => cyclic(n, f),
            Family::SplitProduct { m, f } => split_product(m, f),
            Family::Dihedral { m } => dihedral(m),
            Family::Dicyclic { n } => dicyclic(n),
            Family::Alternating4 => alternating4(),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            Family::Cyclic { n, .. } => n,
            Family::SplitProduct { m, f } => m * f,
            Family::Dihedral { m } => 2 * m,
            Family::Dicyclic { n } => 4 * n,
            Family::Alternating4 => 12,
        }
    }

    pub fn f(&self) -> usize {
        match *self {
            Family::Cyclic { f, .. } | Family::SplitProduct { f, .. } => f,
            Family::Dihedral { .. } | Family::Dicyclic { .. } => 2,
            Family::Alternating4 => 3,
        }
    }

    /// Every family member with |G| ≤ max_order and f ≤ max_f.
    pub fn all(max_order: usize, max_f: usize) -> Vec<Family> {
        let mut out = Vec::new();
        for n in 1..=max_order {
            for f in (1..=max_f).filter(|f| n % f == 0) {
                out.push(Family::Cyclic { n, f });
            }
        }
        for f in 2..=max_f {
            for m in 2..=max_order / f {
                out.push(Family::SplitProduct { m, f });
            }
        }
        if max_f >= 2 {
            out.extend((3..=max_order / 2).map(|m| Family::Dihedral { m }));
            out.extend((2..=max_order / 4).map(|n| Family::Dicyclic { n }));
        }
        if max_f >= 3 && max_order >= 12 {
            out.push(Family::Alternating4);
        }
        out
    }
}

/// A character of a cyclic inertia group I = ⟨t⟩: η(t^j) = ζ_o^{b·j}.
#[derive(Debug, Clone)]
pub struct PlantedCharacter {
    pub order: usize,
    pub exponent: usize,
    pub generator: usize,
    pub field: Arc<QuotientAlgebra>,
}

/// E = Q(ζ_o), with Q itself when o ≤ 2.
pub fn coefficient_field(o: usize) -> Arc<QuotientAlgebra> {
    if o <= 2 {
        QuotientAlgebra::rationals()
    } else {
        QuotientAlgebra::cyclotomic(o)
    }
}

fn root_of_unity(field: &Arc<QuotientAlgebra>, o: usize, k: usize) -> AlgebraElement {
    match o {
        1 => AlgebraElement::one(field),
        2 => AlgebraElement::from_integer(field, if k.is_multiple_of(2) { 1 } else { -1 }),
        _ => AlgebraElement::generator(field).pow((k % o) as u64),
    }
}

impl PlantedCharacter {
    pub fn trivial(shape: &GaloisShape) -> Self {
        PlantedCharacter { order: 1, exponent: 0, generator: shape.identity(), field: QuotientAlgebra::rationals() }
    }

    pub fn character(&self, shape: &GaloisShape) -> Character<AlgebraElement> {
        let mut values = std::collections::BTreeMap::new();
        if self.order == 1 {
            for &g in shape.inertia() {
                values.insert(g, AlgebraElement::one(&self.field));
            }
            return Character::new(values);
        }
        let mut g = shape.identity();
        for j in 0..shape.inertia().len() {
            values.insert(g, root_of_unity(&self.field, self.order, self.exponent * j));
            g = shape.mul(g, self.generator);
        }
        Character::new(values)
    }

    pub fn inverse_character(&self, shape: &GaloisShape) -> Character<AlgebraElement> {
        let eta = self.character(shape);
        Character::new(shape.inertia().iter().map(|&g| (g, eta.get(shape.inverse(g)).unwrap().clone())).collect())
    }
}

fn element_order(shape: &GaloisShape, g: usize) -> usize {
    let mut k = 1;
    let mut x = g;
    while x != shape.identity() {
        x = shape.mul(x, g);
        k += 1;
    }
    k
}

/// The ω-invariant characters of a cyclic inertia group, restricted to those
/// with η^k = 1 when `kill` is Some(k). Non-cyclic inertia yields only the
/// trivial character.
pub fn invariant_characters(shape: &GaloisShape, kill: Option<usize>) -> Vec<PlantedCharacter> {
    let size = shape.inertia().len();
    let Some(&t) = shape.inertia().iter().find(|&&g| element_order(shape, g) == size) else {
        return vec![PlantedCharacter::trivial(shape)];
    };
    let conj = shape.conjugate_by_omega(t);
    let j = (0..size).find(|&j| shape.power(t, j) == conj).expect("inertia is normal and cyclic");
    let mut out = Vec::new();
    for a in 0..size {
        if (a * j) % size != a % size || kill.is_some_and(|k| (a * k) % size != 0) {
            continue;
        }
        let g = a.gcd(&size);
        let order = size / g;
        if order == 1 {
            out.push(PlantedCharacter::trivial(shape));
        } else {
            out.push(PlantedCharacter { order, exponent: a / g, generator: t, field: coefficient_field(order) });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monodromy {
    /// N is a single Jordan block and φ = λ·diag(1, p, p², …).
    Jordan,
    /// N = 0.
    Zero,
}

fn random_element<R: Rng>(rng: &mut R, field: &Arc<QuotientAlgebra>) -> AlgebraElement {
    let coeffs = (0..field.degree())
        .map(|k| Rational::from_integer(if k == 0 { rng.gen_range(-2..=2) } else { rng.gen_range(-1..=1) }))
        .collect();
    AlgebraElement::new(field, coeffs)
}

fn random_invertible<R: Rng>(rng: &mut R, field: &Arc<QuotientAlgebra>, d: usize) -> Matrix<AlgebraElement> {
    loop {
        let m = Matrix::from_fn(field, d, d, |_, _| random_element(rng, field));
        if m.determinant().is_unit() {
            return m;
        }
    }
}

fn permutation_matrix(field: &Arc<QuotientAlgebra>, d: usize) -> Matrix<AlgebraElement> {
    Matrix::from_fn(field, d, d, |i, j| {
        if i == (j + 1) % d {
            AlgebraElement::one(field)
        } else {
            AlgebraElement::zero(field)
        }
    })
}

/// A valid module of rank d on which inertia acts through η·Id.
pub fn build_module<R: Rng>(
    rng: &mut R,
    shape: &Arc<GaloisShape>,
    eta: &Character<AlgebraElement>,
    field: &Arc<QuotientAlgebra>,
    d: usize,
    monodromy: Monodromy,
    prime: &Rational,
) -> PhiNGalModule<AlgebraElement> {
    let f = shape.f();
    let one = AlgebraElement::one(field);
    let lift = |a: &AlgebraElement| {
        if a.algebra() == field {
            a.clone()
        } else {
            AlgebraElement::constant(field, a.as_rational().expect("rational character value").clone())
        }
    };
    let c = lift(eta.get(shape.omega_power(f)).expect("omega^f lies in inertia"));
    let mut comps = vec![one.clone(); f];
    comps[0] = c;
    let lambda = Etale::from_components(comps);
    // Λ_i = λ σ(λ) ⋯ σ^{i-1}(λ)
    let mut big_lambda = vec![Etale::diagonal(&one, f)];
    for i in 0..f - 1 {
        let next = big_lambda[i].mul(&lambda.shift(i as i64));
        big_lambda.push(next);
    }
    let embed = |m: &Matrix<AlgebraElement>| Matrix::diagonal_embedding(m, f);
    let permute = monodromy == Monodromy::Zero && d >= 2 && f.is_multiple_of(d) && rng.gen_bool(0.5);
    let perm = if permute { permutation_matrix(field, d) } else { Matrix::identity(field, d) };
    let (c_mat, n0) = match monodromy {
        Monodromy::Jordan => {
            let powers: Vec<AlgebraElement> =
                (0..d).map(|i| AlgebraElement::constant(field, prime.pow(i as u64))).collect();
            (Matrix::diagonal(field, &powers), jordan_block(field, d))
        }
        Monodromy::Zero => {
            let c = if permute {
                let k = AlgebraElement::from_integer(field, rng.gen_range(2..=3));
                Matrix::identity(field, d).add(&perm.scale(&k))
            } else {
                random_invertible(rng, field, d)
            };
            (c, Matrix::zeros(field, d, d))
        }
    };
    let phi0 = embed(&c_mat).scale(&lambda);
    let rho0: Vec<Matrix<Etale<AlgebraElement>>> = shape
        .elements()
        .map(|g| {
            let i = shape.deg(g);
            let u = Etale::diagonal(&lift(eta.get(shape.inertia_part(g)).unwrap()), f).mul(&big_lambda[i]);
            embed(&perm.pow(i as u64)).scale(&u)
        })
        .collect();
    let b_parts: Vec<Matrix<AlgebraElement>> = (0..f).map(|_| random_invertible(rng, field, d)).collect();
    let b = Matrix::from_components(&b_parts);
    let b_inv = b.inverse().expect("change of basis is invertible");
    let phi = b.mul(&phi0).mul(&b_inv.shift(1));
    let n = b.mul(&embed(&n0)).mul(&b_inv);
    let rho = rho0.iter().enumerate().map(|(g, u)| b.mul(u).mul(&b_inv.shift(shape.deg(g) as i64))).collect();
    PhiNGalModule::new(shape.clone(), prime.clone(), phi, n, rho).expect("generated sizes are consistent")
}

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub max_order: usize,
    pub max_f: usize,
    pub max_rank: usize,
    pub prime: Rational,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { max_order: 12, max_f: 3, max_rank: 3, prime: Rational::from_integer(2) }
    }
}

/// D and D' with inertia acting through η and η^{-1}, so D ⊗ D' is
/// semi-stable.
#[derive(Debug, Clone)]
pub struct TensorInstance {
    pub family: Family,
    pub eta: Character<AlgebraElement>,
    pub d: PhiNGalModule<AlgebraElement>,
    pub d2: PhiNGalModule<AlgebraElement>,
    pub crystalline: bool,
}

#[derive(Debug, Clone)]
pub struct SchurInstance {
    pub family: Family,
    pub eta: Character<AlgebraElement>,
    pub d: PhiNGalModule<AlgebraElement>,
    pub shape: Partition,
    pub crystalline: bool,
}

fn random_shape<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> (Family, Arc<GaloisShape>) {
    let families = Family::all(cfg.max_order, cfg.max_f);
    let family = *families.choose(rng).expect("at least the trivial group");
    (family, Arc::new(family.shape().expect("family shapes are valid")))
}

/// Re-expresses a character's values in a larger field.
fn lift_character(eta: &Character<AlgebraElement>, field: &Arc<QuotientAlgebra>) -> Character<AlgebraElement> {
    Character::new(
        eta.values()
            .iter()
            .map(|(&g, v)| {
                let v = if v.algebra() == field {
                    v.clone()
                } else {
                    AlgebraElement::constant(field, v.as_rational().expect("rational value").clone())
                };
                (g, v)
            })
            .collect(),
    )
}

pub fn tensor_instance<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> TensorInstance {
    let (family, shape) = random_shape(rng, cfg);
    let planted = invariant_characters(&shape, None).choose(rng).cloned().expect("trivial character exists");
    let field = planted.field.clone();
    let eta = lift_character(&planted.character(&shape), &field);
    let eta_inv = lift_character(&planted.inverse_character(&shape), &field);
    let crystalline = rng.gen_bool(0.5);
    let monodromy = if crystalline { Monodromy::Zero } else { Monodromy::Jordan };
    let d1 = rng.gen_range(1..=cfg.max_rank);
    let d2 = rng.gen_range(1..=cfg.max_rank);
    let d = build_module(rng, &shape, &eta, &field, d1, monodromy, &cfg.prime);
    let d2 = build_module(rng, &shape, &eta_inv, &field, d2, monodromy, &cfg.prime);
    let crystalline = d.nmat().is_zero() && d2.nmat().is_zero();
    TensorInstance { family, eta, d, d2, crystalline }
}

/// Partitions with |u| ≤ max_size whose rank bound fits under max_rank.
pub fn admissible_shapes(max_size: usize, max_rank: usize) -> Vec<Partition> {
    (1..=max_size).flat_map(Partition::all_of_size).filter(|u| r_of(u) <= max_rank).collect()
}

pub fn schur_instance<R: Rng>(rng: &mut R, cfg: &GeneratorConfig, u: &Partition, rank: usize) -> SchurInstance {
    let (family, shape) = random_shape(rng, cfg);
    let planted = invariant_characters(&shape, Some(u.size())).choose(rng).cloned().expect("trivial character exists");
    let field = planted.field.clone();
    let eta = lift_character(&planted.character(&shape), &field);
    let crystalline = rng.gen_bool(0.5);
    let monodromy = if crystalline { Monodromy::Zero } else { Monodromy::Jordan };
    let d = build_module(rng, &shape, &eta, &field, rank, monodromy, &cfg.prime);
    let crystalline = d.nmat().is_zero();
    SchurInstance { family, eta, d, shape: u.clone(), crystalline }
}
