//! Classification-level calculus for C_p- and B_dR-representations:
//! Sen weights with Jordan depths, tensor and Schur rules, the
//! Hodge–Tate and de Rham predicates, and the twist solvers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactfield::{
    block_diagonal, eigenvalue_block_structure, jordan_block, nilpotent_block_structure, AlgebraElement, AlgebraError,
    Etale, Matrix, QuotientAlgebra, Rational, Ring,
};
use crate::schur::{SchurError, SchurSpace};
use crate::tableaux::{enumerate_tableaux, r_of, standard_chain, Partition, Tableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    HodgeTate,
    DeRham,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::HodgeTate => "HT",
            Flavor::DeRham => "dR",
        })
    }
}

/// Certificate that a twist problem has no solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// a_{i,h} + a'_{j,h} is not an integer (indices 1-based).
    TensorSum { embedding: String, i: usize, j: usize, sum: AlgebraElement },
    /// a_{T,h} is not an integer.
    SchurSum { embedding: String, tableau: Tableau, sum: AlgebraElement },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TensorSum { embedding, i, j, sum } => {
                write!(f, "embedding {embedding}: a_{i} + a'_{j} = {sum:?} is not an integer")
            }
            Witness::SchurSum { embedding, tableau, sum } => {
                write!(f, "embedding {embedding}: tableau {tableau} has weight {sum:?}, not an integer")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SenError {
    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch { expected: Flavor, found: Flavor },
    #[error("class data must have at least one block")]
    EmptyClass,
    #[error("the Schur module is zero")]
    EmptySchur,
    #[error("rank {rank} is below the bound {needed}")]
    RankTooSmall { rank: usize, needed: usize },
    #[error("no twisting character: {0}")]
    NoSolution(Witness),
    #[error("embedding labels differ")]
    EmbeddingMismatch,
    #[error("weight systems need equal cardinalities per embedding")]
    UnequalCardinality,
    #[error("weights live in incompatible algebras")]
    IncompatibleAlgebras,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// One indecomposable summand: weight `weight` with a Jordan block of size
/// `depth + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub weight: AlgebraElement,
    pub depth: usize,
}

impl Block {
    pub fn new(weight: AlgebraElement, depth: usize) -> Self {
        Block { weight, depth }
    }
}

/// An isomorphism class in Fontaine's classification, as a sorted multiset
/// of blocks. de Rham weights are stored normalized mod Z.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassData {
    flavor: Flavor,
    blocks: Vec<Block>,
}

/// The smallest algebra containing all given weights: Q unless some weight
/// lies in a larger algebra, in which case all such must agree.
fn common_algebra<'a>(ws: impl IntoIterator<Item = &'a AlgebraElement>) -> Result<Arc<QuotientAlgebra>, SenError> {
    let mut alg: Option<Arc<QuotientAlgebra>> = None;
    for w in ws {
        if w.algebra().is_rationals() {
            continue;
        }
        match &alg {
            None => alg = Some(w.algebra().clone()),
            Some(a) if a == w.algebra() => {}
            Some(_) => return Err(SenError::IncompatibleAlgebras),
        }
    }
    Ok(alg.unwrap_or_else(QuotientAlgebra::rationals))
}

fn lift(w: &AlgebraElement, alg: &Arc<QuotientAlgebra>) -> AlgebraElement {
    if w.algebra() == alg {
        w.clone()
    } else {
        let q = w.as_rational().expect("only rational weights are lifted").clone();
        AlgebraElement::constant(alg, q)
    }
}

fn add_weights(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, SenError> {
    let alg = common_algebra([a, b])?;
    Ok(lift(a, &alg).add(&lift(b, &alg)))
}

impl ClassData {
    pub fn new(flavor: Flavor, blocks: Vec<Block>) -> Result<Self, SenError> {
        if blocks.is_empty() {
            return Err(SenError::EmptyClass);
        }
        let alg = common_algebra(blocks.iter().map(|b| &b.weight))?;
        let mut blocks: Vec<Block> = blocks
            .into_iter()
            .map(|b| {
                let w = lift(&b.weight, &alg);
                let w = match flavor {
                    Flavor::HodgeTate => w,
                    Flavor::DeRham => w.normalize_mod_z(),
                };
                Block::new(w, b.depth)
            })
            .collect();
        blocks.sort();
        Ok(ClassData { flavor, blocks })
    }

    /// Semisimple class with the given weights.
    pub fn semisimple(flavor: Flavor, weights: &[AlgebraElement]) -> Result<Self, SenError> {
        Self::new(flavor, weights.iter().map(|w| Block::new(w.clone(), 0)).collect())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        self.blocks[0].weight.algebra()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.depth + 1).sum()
    }

    /// The weight multiset, each block counted depth + 1 times, in the order
    /// of the coordinates of `theta`.
    pub fn weights(&self) -> Vec<AlgebraElement> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(b.weight.clone(), b.depth + 1)).collect()
    }

    /// Block diagonal Θ with blocks w·I + J.
    pub fn theta(&self) -> Matrix<AlgebraElement> {
        let alg = self.algebra().clone();
        let blocks: Vec<Matrix<AlgebraElement>> = self
            .blocks
            .iter()
            .map(|b| Matrix::scalar(&alg, b.depth + 1, &b.weight).add(&jordan_block(&alg, b.depth + 1)))
            .collect();
        block_diagonal(&alg, &blocks)
    }

    /// Nilpotent part of `theta`, which has rational entries.
    pub fn nilpotent_part(&self) -> Matrix<Rational> {
        let blocks: Vec<Matrix<Rational>> = self.blocks.iter().map(|b| jordan_block(&(), b.depth + 1)).collect();
        block_diagonal(&(), &blocks)
    }

    pub fn direct_sum(&self, other: &ClassData) -> Result<ClassData, SenError> {
        self.same_flavor(other)?;
        ClassData::new(self.flavor, self.blocks.iter().chain(&other.blocks).cloned().collect())
    }

    fn same_flavor(&self, other: &ClassData) -> Result<(), SenError> {
        if self.flavor != other.flavor {
            return Err(SenError::FlavorMismatch { expected: self.flavor, found: other.flavor });
        }
        Ok(())
    }

    fn require(&self, flavor: Flavor) -> Result<(), SenError> {
        if self.flavor != flavor {
            return Err(SenError::FlavorMismatch { expected: flavor, found: self.flavor });
        }
        Ok(())
    }

    fn semisimple_integral(&self) -> bool {
        self.blocks.iter().all(|b| b.depth == 0 && b.weight.is_integer())
    }
}

impl fmt::Display for ClassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.flavor)?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({:?};{})", b.weight, b.depth)?;
        }
        f.write_str("]")
    }
}

/// Clebsch–Gordan: J_m ⊗ 1 + 1 ⊗ J_n has blocks of sizes m+n-2k+1,
/// k = 1..min(m, n).
pub fn clebsch_gordan(m: usize, n: usize) -> Vec<usize> {
    (1..=m.min(n)).map(|k| m + n + 1 - 2 * k).collect()
}

pub fn class_tensor(a: &ClassData, b: &ClassData) -> Result<ClassData, SenError> {
    a.same_flavor(b)?;
    let mut blocks = Vec::new();
    for x in a.blocks() {
        for y in b.blocks() {
            let w = add_weights(&x.weight, &y.weight)?;
            for size in clebsch_gordan(x.depth + 1, y.depth + 1) {
                blocks.push(Block::new(w.clone(), size - 1));
            }
        }
    }
    ClassData::new(a.flavor, blocks)
}

/// Classification of Schur^u applied to `a`. The semisimple part of the
/// induced operator is diagonal with the tableau sums; the nilpotent part is
/// the derivation of the rational Jordan matrix, analysed on each eigenspace.
pub fn class_schur(a: &ClassData, u: &Partition) -> Result<ClassData, SenError> {
    let space = SchurSpace::new(u, a.rank());
    if space.dimension() == 0 {
        return Err(SenError::EmptySchur);
    }
    let weights = a.weights();
    let alg = a.algebra().clone();
    let nil = space.derivation_matrix(&a.nilpotent_part())?;
    let mut groups: BTreeMap<AlgebraElement, Vec<usize>> = BTreeMap::new();
    for (k, t) in space.basis().iter().enumerate() {
        let sum = t.reading_word().iter().fold(AlgebraElement::zero(&alg), |s, &e| s.add(&weights[e - 1]));
        groups.entry(sum).or_default().push(k);
    }
    let mut blocks = Vec::new();
    for (w, idx) in groups {
        for size in nilpotent_block_structure(&nil.submatrix(&idx, &idx))? {
            blocks.push(Block::new(w.clone(), size - 1));
        }
    }
    ClassData::new(a.flavor, blocks)
}

/// Hodge–Tate: semisimple Sen operator with integer weights.
pub fn is_hodge_tate(a: &ClassData) -> Result<bool, SenError> {
    a.require(Flavor::HodgeTate)?;
    Ok(a.semisimple_integral())
}

/// de Rham: semisimple with weights in Z (that is, zero mod Z).
pub fn is_de_rham(a: &ClassData) -> Result<bool, SenError> {
    a.require(Flavor::DeRham)?;
    Ok(a.semisimple_integral())
}

pub fn twist_class(a: &ClassData, w: &AlgebraElement) -> Result<ClassData, SenError> {
    let blocks = a
        .blocks()
        .iter()
        .map(|b| Ok(Block::new(add_weights(&b.weight, w)?, b.depth)))
        .collect::<Result<Vec<_>, SenError>>()?;
    ClassData::new(a.flavor, blocks)
}

/// Classification of an operator whose eigenvalues are known: the blocks for
/// each listed eigenvalue are read off from the ranks of (Θ - λ)^k.
pub fn class_from_theta(
    theta: &Matrix<AlgebraElement>,
    eigenvalues: &[AlgebraElement],
    flavor: Flavor,
) -> Result<ClassData, SenError> {
    let mut distinct = eigenvalues.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut blocks = Vec::new();
    for lambda in distinct {
        for size in eigenvalue_block_structure(theta, &lambda)? {
            blocks.push(Block::new(lambda.clone(), size - 1));
        }
    }
    if blocks.iter().map(|b| b.depth + 1).sum::<usize>() != theta.rows() {
        return Err(AlgebraError::Dimension("eigenvalues do not account for the whole space".into()).into());
    }
    ClassData::new(flavor, blocks)
}

/// Per-embedding h-weights a_{i,h}, i = 1..rank.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSystem {
    embeddings: Vec<String>,
    weights: Vec<Vec<AlgebraElement>>,
}

impl WeightSystem {
    pub fn new(embeddings: Vec<String>, weights: Vec<Vec<AlgebraElement>>) -> Result<Self, SenError> {
        if embeddings.len() != weights.len() {
            return Err(SenError::EmbeddingMismatch);
        }
        if weights.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(SenError::UnequalCardinality);
        }
        Ok(WeightSystem { embeddings, weights })
    }

    /// A single embedding labelled "h1".
    pub fn single(weights: Vec<AlgebraElement>) -> Self {
        WeightSystem { embeddings: vec!["h1".into()], weights: vec![weights] }
    }

    pub fn embeddings(&self) -> &[String] {
        &self.embeddings
    }

    pub fn weights(&self) -> &[Vec<AlgebraElement>] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Weights after twisting by a character with the given weights.
    pub fn twist(&self, mu: &CharacterWeights, sign: i64) -> Result<WeightSystem, SenError> {
        if mu.embeddings != self.embeddings {
            return Err(SenError::EmbeddingMismatch);
        }
        let weights = self
            .weights
            .iter()
            .zip(&mu.weights)
            .map(|(ws, m)| {
                let m = m.scale(&Rational::from_integer(sign));
                ws.iter().map(|w| add_weights(w, &m)).collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(WeightSystem { embeddings: self.embeddings.clone(), weights })
    }

    pub fn is_integral(&self) -> bool {
        self.weights.iter().flatten().all(AlgebraElement::is_integer)
    }
}

/// Weights ω_h of a character, one per embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterWeights {
    pub embeddings: Vec<String>,
    pub weights: Vec<AlgebraElement>,
}

/// Returns (a_{1,h})_h when every a_{i,h} + a'_{j,h} is an integer.
pub fn tensor_twist_solve(w: &WeightSystem, w2: &WeightSystem) -> Result<CharacterWeights, SenError> {
    if w.embeddings != w2.embeddings {
        return Err(SenError::EmbeddingMismatch);
    }
    if w.rank() == 0 || w2.rank() == 0 {
        return Err(SenError::RankTooSmall { rank: 0, needed: 1 });
    }
    for (h, (a, b)) in w.embeddings.iter().zip(w.weights.iter().zip(&w2.weights)) {
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let sum = add_weights(x, y)?;
                if !sum.is_integer() {
                    return Err(SenError::NoSolution(Witness::TensorSum {
                        embedding: h.clone(),
                        i: i + 1,
                        j: j + 1,
                        sum,
                    }));
                }
            }
        }
    }
    Ok(first_weights(w))
}

fn first_weights(w: &WeightSystem) -> CharacterWeights {
    CharacterWeights { embeddings: w.embeddings.clone(), weights: w.weights.iter().map(|ws| ws[0].clone()).collect() }
}

/// Returns (a_{1,h})_h when every tableau sum a_{T,h} is an integer. The
/// differences a_{i,h} - a_{1,h} are integers because consecutive
/// tableaux of the standard chain differ by a single entry i → i+1.
pub fn schur_twist_solve(w: &WeightSystem, u: &Partition) -> Result<CharacterWeights, SenError> {
    let needed = r_of(u);
    let rank = w.rank();
    if rank < needed {
        return Err(SenError::RankTooSmall { rank, needed });
    }
    let basis = enumerate_tableaux(u, rank);
    let chain = standard_chain(u, rank).expect("rank bound checked");
    for (h, ws) in w.embeddings.iter().zip(&w.weights) {
        let alg = common_algebra(ws)?;
        let ws: Vec<AlgebraElement> = ws.iter().map(|x| lift(x, &alg)).collect();
        let sum = |t: &Tableau| t.reading_word().iter().fold(AlgebraElement::zero(&alg), |s, &e| s.add(&ws[e - 1]));
        for t in &basis {
            let s = sum(t);
            if !s.is_integer() {
                return Err(SenError::NoSolution(Witness::SchurSum {
                    embedding: h.clone(),
                    tableau: t.clone(),
                    sum: s,
                }));
            }
        }
        for pair in chain.windows(2) {
            let (from, to) = changed_entry(&pair[0], &pair[1]);
            debug_assert_eq!(to, from + 1);
            let step = sum(&pair[1]).sub(&sum(&pair[0]));
            debug_assert_eq!(step, ws[to - 1].sub(&ws[from - 1]));
            debug_assert!(step.is_integer());
        }
    }
    Ok(first_weights(w))
}

fn changed_entry(a: &Tableau, b: &Tableau) -> (usize, usize) {
    a.reading_word().into_iter().zip(b.reading_word()).find(|(x, y)| x != y).expect("consecutive chain tableaux differ")
}

/// Per-embedding decomposition ω = p^{-n} ω' with ω' p-integral and n ≥ 0
/// minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterReport {
    pub weights: CharacterWeights,
    pub prime: BigInt,
    pub exponents: Vec<u32>,
    pub integral_parts: Vec<AlgebraElement>,
}

pub fn charwts_construct(targets: &CharacterWeights, prime: &BigInt) -> Result<CharacterReport, SenError> {
    if targets.embeddings.len() != targets.weights.len() {
        return Err(SenError::EmbeddingMismatch);
    }
    let mut exponents = Vec::new();
    let mut integral_parts = Vec::new();
    for w in &targets.weights {
        let n = w.coeffs().iter().filter_map(|c| c.valuation(prime)).map(|v| -v).max().unwrap_or(0).max(0);
        let n = u32::try_from(n).expect("valuation fits in u32");
        let scale = Rational::from_bigint(prime.pow(n));
        exponents.push(n);
        integral_parts.push(w.scale(&scale));
    }
    Ok(CharacterReport { weights: targets.clone(), prime: prime.clone(), exponents, integral_parts })
}

/// Class data over E ⊗ F split along the embeddings h of F.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitClassData {
    pub labels: Vec<String>,
    pub components: Vec<ClassData>,
}

impl SplitClassData {
    pub fn new(labels: Vec<String>, components: Vec<ClassData>) -> Result<Self, SenError> {
        if labels.len() != components.len() || labels.is_empty() {
            return Err(SenError::EmbeddingMismatch);
        }
        let rank = components[0].rank();
        if components.iter().any(|c| c.rank() != rank || c.flavor != components[0].flavor) {
            return Err(SenError::UnequalCardinality);
        }
        Ok(SplitClassData { labels, components })
    }

    pub fn rank(&self) -> usize {
        self.components[0].rank()
    }

    pub fn tensor(&self, other: &SplitClassData) -> Result<SplitClassData, SenError> {
        if self.labels != other.labels {
            return Err(SenError::EmbeddingMismatch);
        }
        let comps =
            self.components.iter().zip(&other.components).map(|(a, b)| class_tensor(a, b)).collect::<Result<_, _>>()?;
        SplitClassData::new(self.labels.clone(), comps)
    }

    pub fn schur(&self, u: &Partition) -> Result<SplitClassData, SenError> {
        let comps = self.components.iter().map(|a| class_schur(a, u)).collect::<Result<_, _>>()?;
        SplitClassData::new(self.labels.clone(), comps)
    }

    /// The unsplit operator over the product algebra, one Θ per label on
    /// the diagonal.
    pub fn theta(&self) -> Result<Matrix<Etale<AlgebraElement>>, SenError> {
        let alg = common_algebra(self.components.iter().flat_map(|c| c.blocks.iter().map(|b| &b.weight)))?;
        let parts: Vec<Matrix<AlgebraElement>> =
            self.components.iter().map(|c| c.theta().map(&alg, |x| lift(x, &alg))).collect();
        Ok(Matrix::from_components(&parts))
    }

    /// Classification of an upper-triangular operator over the product
    /// algebra, with eigenvalues read from its diagonal.
    pub fn from_triangular(
        labels: Vec<String>,
        theta: &Matrix<Etale<AlgebraElement>>,
        flavor: Flavor,
    ) -> Result<SplitClassData, SenError> {
        let comps = (0..labels.len())
            .map(|h| {
                let m = theta.component(h);
                let eig: Vec<AlgebraElement> = (0..m.rows()).map(|i| m.get(i, i).clone()).collect();
                class_from_theta(&m, &eig, flavor)
            })
            .collect::<Result<_, _>>()?;
        SplitClassData::new(labels, comps)
    }
}

/// The per-embedding slices of split data.
pub fn split_components(data: &SplitClassData) -> Vec<(String, ClassData)> {
    data.labels.iter().cloned().zip(data.components.iter().cloned()).collect()
}

/// Per-embedding weight systems of split data, each block counted with
/// multiplicity depth + 1.
pub fn split_weight_systems(data: &SplitClassData) -> Vec<WeightSystem> {
    data.labels
        .iter()
        .zip(&data.components)
        .map(|(h, c)| WeightSystem { embeddings: vec![h.clone()], weights: vec![c.weights()] })
        .collect()
}
