use std::fmt;

use super::character::{extend_character, inertia_scalar_extract, twist_module, Character, Context, ExtendedCharacter};
use super::{is_crystalline, is_semistable, PhiNGalModule, PstError};
use crate::exactfield::{Ext, Matrix, Ring};
use crate::schur::SchurSpace;

/// A named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, witness: Option<String>) -> Self {
        Verdict { name: name.into(), passed, witness }
    }

    pub fn check(name: impl Into<String>, passed: bool) -> Self {
        Verdict::new(name, passed, None)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.passed { "pass" } else { "FAIL" }, self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        Ok(())
    }
}

fn nonzero_entry<R: Ring>(m: &Matrix<R>) -> Option<String> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
        .map(|(i, j)| format!("entry ({i}, {j})"))
}

/// Monodromy descent: if N vanishes on the context construction then it
/// vanishes on the factors.
pub fn monodromy_descend<S: Ring>(d: &PhiNGalModule<S>, context: &Context<'_, S>) -> Result<Verdict, PstError> {
    match context {
        Context::TensorWith(other) => {
            let total = d.nmat().kron_sum(other.nmat());
            if let Some(w) = nonzero_entry(&total) {
                return Err(PstError::HypothesisNotMet(format!("N⊗1 + 1⊗N' has nonzero {w}")));
            }
            let witness = nonzero_entry(d.nmat())
                .map(|w| format!("N: {w}"))
                .or_else(|| nonzero_entry(other.nmat()).map(|w| format!("N': {w}")));
            Ok(Verdict::new("N = 0 and N' = 0 on the factors", witness.is_none(), witness))
        }
        Context::SchurShape(u) => {
            let needed = crate::tableaux::r_of(u);
            if d.rank() < needed {
                return Err(PstError::RankTooSmall { rank: d.rank(), needed });
            }
            let space = SchurSpace::new(u, d.rank());
            let n = d.nmat();
            for h in 0..n.parent().arity {
                let induced = space.derivation_matrix(&n.component(h))?;
                if let Some(w) = nonzero_entry(&induced) {
                    return Err(PstError::HypothesisNotMet(format!("N on the Schur module has nonzero {w}")));
                }
            }
            let witness = nonzero_entry(n);
            Ok(Verdict::new("N = 0 on the module", witness.is_none(), witness))
        }
    }
}

/// Output of a twist pipeline.
#[derive(Debug, Clone)]
pub struct PipelineOutcome<S: Ring> {
    pub eta: Character<S>,
    pub extension: ExtendedCharacter<S>,
    /// D(μ^{-1}) and, for tensor products, D'(μ).
    pub twisted: Vec<PhiNGalModule<Ext<S>>>,
    pub crystalline_context: bool,
    pub verdicts: Vec<Verdict>,
}

impl<S: Ring> PipelineOutcome<S> {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

fn require_valid<S: Ring>(d: &PhiNGalModule<S>) -> Result<(), PstError> {
    match d.validate().failures.into_iter().next() {
        None => Ok(()),
        Some(f) => Err(PstError::InvalidModule(f)),
    }
}

fn character_verdicts<S: Ring>(d: &PhiNGalModule<S>, eta: &Character<S>, ext: &ExtendedCharacter<S>) -> Vec<Verdict> {
    let shape = d.shape();
    let restricts = shape
        .inertia()
        .iter()
        .all(|&g| *ext.value(g) == Ext::embed(&ext.field, eta.get(g).expect("eta is defined on inertia")));
    let f = shape.f() as u64;
    let root = ext.value(shape.omega()).pow(f) == Ext::embed(&ext.field, &ext.root_of);
    let mult = ext.mu.multiplicativity_failure(shape);
    vec![
        Verdict::check("mu restricted to inertia equals eta", restricts),
        Verdict::check("mu(omega)^f = eta(omega^f)", root),
        Verdict::new("mu is multiplicative", mult.is_none(), mult.map(|(g, h)| format!("(g, h) = ({g}, {h})"))),
    ]
}

fn twist_verdicts<S: Ring>(
    label: &str,
    twisted: &PhiNGalModule<Ext<S>>,
    crystalline: bool,
) -> Result<Vec<Verdict>, PstError> {
    let mut out = vec![Verdict::check(format!("{label} is semistable"), is_semistable(twisted)?)];
    if crystalline {
        out.push(Verdict::check(format!("{label} is crystalline"), is_crystalline(twisted)?));
    }
    Ok(out)
}

/// Given D ⊗ D' semi-stable, finds μ with D(μ^{-1}) and D'(μ) semi-stable
/// (and crystalline when D ⊗ D' is).
pub fn pipeline_sst_tensor<S: Ring>(
    d: &PhiNGalModule<S>,
    d2: &PhiNGalModule<S>,
    factor: Option<Vec<S>>,
) -> Result<PipelineOutcome<S>, PstError> {
    require_valid(d)?;
    require_valid(d2)?;
    let context = Context::TensorWith(d2);
    let eta = inertia_scalar_extract(d, &context)?;
    let ext = extend_character(&eta, d.shape(), factor)?;
    let crystalline = d.nmat().kron_sum(d2.nmat()).is_zero();
    let first = twist_module(d, &ext, -1);
    let second = twist_module(d2, &ext, 1);
    let mut verdicts = character_verdicts(d, &eta, &ext);
    verdicts.extend(twist_verdicts("D(mu^-1)", &first, crystalline)?);
    verdicts.extend(twist_verdicts("D'(mu)", &second, crystalline)?);
    if crystalline {
        verdicts.push(monodromy_descend(d, &context)?);
    }
    Ok(PipelineOutcome {
        eta,
        extension: ext,
        twisted: vec![first, second],
        crystalline_context: crystalline,
        verdicts,
    })
}

/// Given Schur^u(D) semi-stable with rank(D) ≥ r(u), finds μ with D(μ^{-1})
/// semi-stable (and crystalline when Schur^u(D) is).
pub fn pipeline_sst_schur<S: Ring>(
    d: &PhiNGalModule<S>,
    u: &crate::tableaux::Partition,
    factor: Option<Vec<S>>,
) -> Result<PipelineOutcome<S>, PstError> {
    require_valid(d)?;
    let context = Context::SchurShape(u);
    let eta = inertia_scalar_extract(d, &context)?;
    let ext = extend_character(&eta, d.shape(), factor)?;
    let space = SchurSpace::new(u, d.rank());
    let n = d.nmat();
    let mut crystalline = true;
    for h in 0..n.parent().arity {
        crystalline &= space.derivation_matrix(&n.component(h))?.is_zero();
    }
    let first = twist_module(d, &ext, -1);
    let mut verdicts = character_verdicts(d, &eta, &ext);
    verdicts.extend(twist_verdicts("D(mu^-1)", &first, crystalline)?);
    if crystalline {
        verdicts.push(monodromy_descend(d, &context)?);
    }
    Ok(PipelineOutcome { eta, extension: ext, twisted: vec![first], crystalline_context: crystalline, verdicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{AlgebraElement, Etale, Matrix, QuotientAlgebra, Rational};
    use crate::pst::generator::{admissible_shapes, schur_instance, tensor_instance, GeneratorConfig};
    use crate::pst::{cyclic, module_schur, module_tensor};
    use crate::tableaux::{r_of, Partition};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    type M = PhiNGalModule<AlgebraElement>;

    /// Rank-d module over Q with f = 1 on Z/2 (all inertia): φ = 1, N given,
    /// ρ(1) given.
    fn order_two(rho1: &[i64], n: Matrix<Etale<AlgebraElement>>) -> M {
        let q = QuotientAlgebra::rationals();
        let shape = Arc::new(cyclic(2, 1).unwrap());
        let d = rho1.len();
        let ints: Vec<AlgebraElement> = rho1.iter().map(|&x| AlgebraElement::integer(x)).collect();
        let id = Matrix::diagonal_embedding(&Matrix::identity(&q, d), 1);
        let g = Matrix::diagonal_embedding(&Matrix::diagonal(&q, &ints), 1);
        PhiNGalModule::new(shape, Rational::from_integer(2), id.clone(), n, vec![id, g]).unwrap()
    }

    fn zero_n(d: usize) -> Matrix<Etale<AlgebraElement>> {
        Matrix::diagonal_embedding(&Matrix::zeros(&QuotientAlgebra::rationals(), d, d), 1)
    }

    #[test]
    fn extraction_examples() {
        let triv = order_two(&[1], zero_n(1));
        let eta = inertia_scalar_extract(&triv, &Context::TensorWith(&triv)).unwrap();
        assert!(eta.is_trivial());

        let minus = order_two(&[-1, -1], zero_n(2));
        let sym2 = Partition::row(2);
        let eta = inertia_scalar_extract(&minus, &Context::SchurShape(&sym2)).unwrap();
        assert_eq!(eta.get(1), Some(&AlgebraElement::integer(-1)));

        let mixed = order_two(&[1, -1], zero_n(2));
        let wedge = Partition::column(2);
        assert_eq!(
            inertia_scalar_extract(&mixed, &Context::SchurShape(&wedge)),
            Err(PstError::RankTooSmall { rank: 2, needed: 3 })
        );
        let mixed3 = order_two(&[1, -1, 1], zero_n(3));
        assert_eq!(
            inertia_scalar_extract(&mixed3, &Context::SchurShape(&wedge)),
            Err(PstError::ContextNotSemistable { element: 1 })
        );
    }

    #[test]
    fn descent_examples() {
        let j2 = Matrix::diagonal_embedding(&crate::exactfield::jordan_block(&QuotientAlgebra::rationals(), 2), 1);
        let with_n = order_two(&[1, 1], j2);
        let plain = order_two(&[1, 1], zero_n(2));
        assert!(monodromy_descend(&plain, &Context::TensorWith(&plain)).unwrap().passed);
        assert!(matches!(monodromy_descend(&with_n, &Context::TensorWith(&plain)), Err(PstError::HypothesisNotMet(_))));
        assert!(matches!(
            monodromy_descend(&with_n, &Context::SchurShape(&Partition::row(2))),
            Err(PstError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn schur_pipeline_rank_bound() {
        let m = order_two(&[-1, -1], zero_n(2));
        assert_eq!(
            pipeline_sst_schur(&m, &Partition::column(2), None).err(),
            Some(PstError::RankTooSmall { rank: 2, needed: 3 })
        );
        let out = pipeline_sst_schur(&m, &Partition::row(2), None).unwrap();
        assert!(out.passed(), "{:?}", out.verdicts);
        assert_eq!(out.eta.get(1), Some(&AlgebraElement::integer(-1)));
    }

    #[test]
    fn generated_pipelines_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GeneratorConfig::default();
        for _ in 0..10 {
            let inst = tensor_instance(&mut rng, &cfg);
            let out = pipeline_sst_tensor(&inst.d, &inst.d2, None).unwrap();
            assert!(out.passed(), "{:?}", out.verdicts);
            assert_eq!(out.eta, inst.eta);
            assert_eq!(out.crystalline_context, inst.crystalline);
            assert!(crate::pst::validate_ok(&module_tensor(&inst.d, &inst.d2).unwrap()));
        }
        let shapes = admissible_shapes(4, cfg.max_rank);
        for _ in 0..10 {
            let u = shapes.choose(&mut rng).unwrap().clone();
            let rank = rng.gen_range(r_of(&u)..=cfg.max_rank);
            let inst = schur_instance(&mut rng, &cfg, &u, rank);
            let out = pipeline_sst_schur(&inst.d, &u, None).unwrap();
            assert!(out.passed(), "{:?}", out.verdicts);
            assert_eq!(out.eta, inst.eta);
            assert_eq!(out.crystalline_context, inst.crystalline);
            assert!(crate::pst::validate_ok(&module_schur(&inst.d, &u).unwrap()));
        }
    }
}
