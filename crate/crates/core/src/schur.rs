//! The Schur functor Schur^u on free modules of rank d.
//!
//! Schur^u(M) is the quotient of Λ^{v_1}M ⊗ … ⊗ Λ^{v_{u_1}}M (one exterior
//! power per column) by the Garnir exchange relations; the images e_T of
//! semistandard fillings form a basis. A filling's wedge factors are read
//! column by column, left to right, each column top to bottom, so a
//! semistandard filling is exactly its basis vector with coefficient +1.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::{Matrix, Rational, Ring};
use crate::tableaux::{enumerate_tableaux, Partition, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("filling does not have shape {0}")]
    ShapeMismatch(Partition),
    #[error("entry {entry} outside 1..={bound}")]
    EntryOutOfRange { entry: usize, bound: usize },
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
}

type Columns = Vec<Vec<usize>>;
type Expansion = Arc<Vec<(usize, BigInt)>>;

/// Schur^u of a free module of rank d, with its tableau basis and a
/// straightening memo shared by every computation on this space.
pub struct SchurSpace {
    shape: Partition,
    rank: usize,
    basis: Vec<Tableau>,
    index: HashMap<Columns, usize>,
    memo: RwLock<HashMap<Columns, Expansion>>,
}

/// Coordinates of an element of Schur^u(M) in the basis e_T.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurVector<'a> {
    pub space: &'a SchurSpace,
    pub coords: Vec<Rational>,
}

impl PartialEq for SchurSpace {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.rank == other.rank
    }
}

impl std::fmt::Debug for SchurSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Schur^{}(rank {})", self.shape, self.rank)
    }
}

impl SchurSpace {
    pub fn new(shape: &Partition, rank: usize) -> Self {
        let basis = enumerate_tableaux(shape, rank);
        let index = basis.iter().enumerate().map(|(i, t)| (t.columns(), i)).collect();
        SchurSpace { shape: shape.clone(), rank, basis, index, memo: RwLock::new(HashMap::new()) }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(&t.columns()).copied()
    }

    /// Expansion of m_T for an arbitrary filling (given by rows) in the
    /// basis e_S.
    pub fn straighten(&self, rows: &[Vec<usize>]) -> Result<SchurVector<'_>, SchurError> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lens != self.shape.parts() {
            return Err(SchurError::ShapeMismatch(self.shape.clone()));
        }
        if let Some(&e) = rows.iter().flatten().find(|&&e| e == 0 || e > self.rank) {
            return Err(SchurError::EntryOutOfRange { entry: e, bound: self.rank });
        }
        let cols: Columns =
            (0..lens[0]).map(|j| rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()).collect();
        let mut coords = vec![Rational::zero(); self.dimension()];
        if let Some((sign, sorted)) = sort_columns(cols) {
            for (idx, c) in self.straighten_sorted(sorted).iter() {
                coords[*idx] = Rational::from_bigint(c * sign);
            }
        }
        Ok(SchurVector { space: self, coords })
    }

    /// Straightening of a filling whose columns are strictly increasing.
    fn straighten_sorted(&self, cols: Columns) -> Expansion {
        if let Some(hit) = self.memo.read().expect("memo lock poisoned").get(&cols) {
            return hit.clone();
        }
        let result = Arc::new(self.straighten_uncached(&cols));
        self.memo.write().expect("memo lock poisoned").insert(cols, result.clone());
        result
    }

    fn straighten_uncached(&self, cols: &Columns) -> Vec<(usize, BigInt)> {
        let Some((j, i)) = first_row_violation(cols) else {
            let idx = *self.index.get(cols).expect("semistandard fillings are basis elements");
            return vec![(idx, BigInt::one())];
        };
        // Garnir relation for the violation t[i][j] > t[i][j+1]:
        //   Σ_σ sgn(σ) m_{σT} = 0
        // over the shuffles of A = column j from row i down and
        // B = column j+1 down to row i. Every non-identity shuffle moves
        // smaller entries into column j, so the recursion terminates.
        let a: Vec<usize> = cols[j][i..].to_vec();
        let b: Vec<usize> = cols[j + 1][..=i].to_vec();
        let pool: Vec<usize> = a.iter().chain(&b).copied().collect();
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for chosen in combinations(pool.len(), a.len()).into_iter().skip(1) {
            let rest: Vec<usize> = (0..pool.len()).filter(|k| !chosen.contains(k)).collect();
            let perm: Vec<usize> = chosen.iter().chain(&rest).copied().collect();
            let sign = permutation_sign(&perm);
            let mut next = cols.clone();
            next[j].truncate(i);
            next[j].extend(chosen.iter().map(|&k| pool[k]));
            next[j + 1] = rest.iter().map(|&k| pool[k]).chain(cols[j + 1][i + 1..].iter().copied()).collect();
            let Some((sort_sign, sorted)) = sort_columns(next) else { continue };
            // m_T = -Σ_{σ≠id} sgn(σ) m_{σT}
            let factor = -(sign * sort_sign);
            for (idx, c) in self.straighten_sorted(sorted).iter() {
                *acc.entry(*idx).or_insert_with(BigInt::zero) += c * factor;
            }
        }
        let mut out: Vec<(usize, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// The matrix of Schur^u(A) in the basis e_T: apply A to every wedge
    /// factor, expand each column by its minors, straighten.
    pub fn induced_matrix<R: Ring>(&self, a: &Matrix<R>) -> Result<Matrix<R>, SchurError> {
        self.check_square(a)?;
        let parent = a.parent();
        let dim = self.dimension();
        let mut out = Matrix::zeros(parent, dim, dim);
        let mut minor_cache: HashMap<Vec<usize>, Vec<(Vec<usize>, R)>> = HashMap::new();
        for (col_idx, t) in self.basis.iter().enumerate() {
            let columns = t.columns();
            let expansions: Vec<Vec<(Vec<usize>, R)>> = columns
                .iter()
                .map(|c| minor_cache.entry(c.clone()).or_insert_with(|| wedge_image(a, c, self.rank)).clone())
                .collect();
            let mut acc: Vec<R> = vec![R::zero(parent); dim];
            let mut chosen: Columns = Vec::with_capacity(columns.len());
            self.expand_product(&expansions, 0, &R::one(parent), &mut chosen, &mut acc);
            for (row, v) in acc.into_iter().enumerate() {
                out.set(row, col_idx, v);
            }
        }
        Ok(out)
    }

    fn expand_product<R: Ring>(
        &self,
        expansions: &[Vec<(Vec<usize>, R)>],
        k: usize,
        coeff: &R,
        chosen: &mut Columns,
        acc: &mut [R],
    ) {
        if k == expansions.len() {
            for (idx, c) in self.straighten_sorted(chosen.clone()).iter() {
                acc[*idx] = acc[*idx].add(&scale_int(coeff, c));
            }
            return;
        }
        for (subset, minor) in &expansions[k] {
            chosen.push(subset.clone());
            self.expand_product(expansions, k + 1, &coeff.mul(minor), chosen, acc);
            chosen.pop();
        }
    }

    /// The derivation (Lie algebra) action induced by Θ: the sum over cells
    /// of Θ applied in that cell's slot.
    pub fn derivation_matrix<R: Ring>(&self, theta: &Matrix<R>) -> Result<Matrix<R>, SchurError> {
        self.check_square(theta)?;
        let parent = theta.parent();
        let dim = self.dimension();
        let mut out = Matrix::zeros(parent, dim, dim);
        for (col_idx, t) in self.basis.iter().enumerate() {
            let columns = t.columns();
            let mut acc: Vec<R> = vec![R::zero(parent); dim];
            for (j, col) in columns.iter().enumerate() {
                for (i, &entry) in col.iter().enumerate() {
                    for s in 1..=self.rank {
                        let coeff = theta.get(s - 1, entry - 1);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut next = columns.clone();
                        next[j][i] = s;
                        let Some((sign, sorted)) = sort_columns(next) else { continue };
                        let c = if sign < 0 { coeff.neg() } else { coeff.clone() };
                        for (idx, k) in self.straighten_sorted(sorted).iter() {
                            acc[*idx] = acc[*idx].add(&scale_int(&c, k));
                        }
                    }
                }
            }
            for (row, v) in acc.into_iter().enumerate() {
                out.set(row, col_idx, v);
            }
        }
        Ok(out)
    }

    fn check_square<R: Ring>(&self, a: &Matrix<R>) -> Result<(), SchurError> {
        if a.rows() != self.rank || a.cols() != self.rank {
            return Err(SchurError::NotSquare(a.rows(), a.cols()));
        }
        Ok(())
    }
}

fn scale_int<R: Ring>(x: &R, c: &BigInt) -> R {
    if c.is_one() {
        x.clone()
    } else if *c == BigInt::from(-1) {
        x.neg()
    } else {
        x.scale(&Rational::from_bigint(c.clone()))
    }
}

/// Image of e_{t_1} ∧ … ∧ e_{t_v} under Λ^v(A): pairs (sorted index set S,
/// det A[S, t]) with nonzero minor. Entries are 1-based.
fn wedge_image<R: Ring>(a: &Matrix<R>, col: &[usize], d: usize) -> Vec<(Vec<usize>, R)> {
    let src: Vec<usize> = col.iter().map(|&t| t - 1).collect();
    combinations(d, col.len())
        .into_iter()
        .filter_map(|rows| {
            let det = a.submatrix(&rows, &src).determinant();
            (!det.is_zero()).then(|| (rows.iter().map(|r| r + 1).collect(), det))
        })
        .collect()
}

/// Sorts every column increasingly, returning the sign of the combined
/// permutation, or `None` when some column repeats an entry (m_T = 0).
fn sort_columns(mut cols: Columns) -> Option<(i32, Columns)> {
    let mut sign = 1;
    for col in cols.iter_mut() {
        // insertion sort, counting transpositions
        for k in 1..col.len() {
            let mut m = k;
            while m > 0 && col[m - 1] > col[m] {
                col.swap(m - 1, m);
                sign = -sign;
                m -= 1;
            }
        }
        if col.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
    }
    Some((sign, cols))
}

/// First (column j, row i) with t[i][j] > t[i][j+1], scanning columns left
/// to right.
fn first_row_violation(cols: &Columns) -> Option<(usize, usize)> {
    for j in 0..cols.len().saturating_sub(1) {
        for i in 0..cols[j + 1].len() {
            if cols[j][i] > cols[j + 1][i] {
                return Some((j, i));
            }
        }
    }
    None
}

/// k-subsets of 0..n in lexicographic order; the first is 0..k.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Expansion of m_T for a filling of shape u with entries in 1..=d.
pub fn straighten(rows: &[Vec<usize>], u: &Partition, d: usize) -> Result<Vec<Rational>, SchurError> {
    Ok(SchurSpace::new(u, d).straighten(rows)?.coords)
}

pub fn schur_matrix<R: Ring>(a: &Matrix<R>, u: &Partition) -> Result<Matrix<R>, SchurError> {
    SchurSpace::new(u, a.rows()).induced_matrix(a)
}

pub fn schur_derivation<R: Ring>(theta: &Matrix<R>, u: &Partition) -> Result<Matrix<R>, SchurError> {
    SchurSpace::new(u, theta.rows()).derivation_matrix(theta)
}

/// Length of the right-most column of u.
pub fn nu_rightmost(u: &Partition) -> usize {
    *u.columns().last().expect("partitions are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{jordan_block, AlgebraElement, QuotientAlgebra};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&(), rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn semistandard_fillings_are_unit_vectors() {
        let space = SchurSpace::new(&p(&[2, 1]), 3);
        for (i, t) in space.basis().iter().enumerate() {
            let v = space.straighten(t.rows()).unwrap();
            for (k, c) in v.coords.iter().enumerate() {
                assert_eq!(c.is_one(), k == i);
                assert!(k == i || c.is_zero());
            }
        }
    }

    #[test]
    fn antisymmetry_of_exterior_square() {
        let v = straighten(&[vec![2], vec![1]], &p(&[1, 1]), 2).unwrap();
        assert_eq!(v, vec![Rational::from_integer(-1)]);
        let z = straighten(&[vec![1], vec![1]], &p(&[1, 1]), 2).unwrap();
        assert_eq!(z, vec![Rational::zero()]);
    }

    #[test]
    fn symmetric_square_commutes() {
        // (2) with filling [2, 1] is e_{[1,2]} in Sym^2.
        let v = straighten(&[vec![2, 1]], &p(&[2]), 2).unwrap();
        assert_eq!(v, vec![Rational::zero(), Rational::one(), Rational::zero()]);
    }

    #[test]
    fn garnir_on_hook() {
        // columns (b,c | a) with a<b<c: m = m(a,c | b) - m(a,b | c).
        let space = SchurSpace::new(&p(&[2, 1]), 3);
        let v = space.straighten(&[vec![2, 1], vec![3]]).unwrap();
        let e = |rows: Vec<Vec<usize>>| space.index_of(&Tableau::new(rows).unwrap()).unwrap();
        let mut expect = vec![Rational::zero(); space.dimension()];
        expect[e(vec![vec![1, 2], vec![3]])] = Rational::one();
        expect[e(vec![vec![1, 3], vec![2]])] = Rational::from_integer(-1);
        assert_eq!(v.coords, expect);
    }

    #[test]
    fn identity_maps_to_identity() {
        for u in [p(&[2, 1]), p(&[3]), p(&[2, 2]), p(&[1, 1, 1])] {
            let id = Matrix::<Rational>::identity(&(), 3);
            assert!(schur_matrix(&id, &u).unwrap().is_identity());
        }
    }

    #[test]
    fn top_exterior_power_is_determinant() {
        let a = ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let m = schur_matrix(&a, &Partition::column(3)).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(*m.get(0, 0), a.determinant());
    }

    #[test]
    fn sym2_of_diagonal() {
        let q = QuotientAlgebra::from_integers(&[0, 0, 0, 1]).unwrap();
        let a = AlgebraElement::constant(&q, Rational::from_integer(3));
        let b = AlgebraElement::generator(&q);
        let z = AlgebraElement::zero(&q);
        let m = Matrix::from_rows(&q, vec![vec![a.clone(), z.clone()], vec![z, b.clone()]]).unwrap();
        let s = schur_matrix(&m, &p(&[2])).unwrap();
        let expect = Matrix::diagonal(&q, &[a.mul(&a), a.mul(&b), b.mul(&b)]);
        assert_eq!(s, expect);
    }

    #[test]
    fn derivation_examples() {
        let theta = Matrix::<Rational>::diagonal(&(), &[1.into(), 10.into(), 100.into()]);
        let u = p(&[2, 1]);
        let d = schur_derivation(&theta, &u).unwrap();
        let space = SchurSpace::new(&u, 3);
        for (k, t) in space.basis().iter().enumerate() {
            let sum: i64 = t.reading_word().iter().map(|&e| 10i64.pow(e as u32 - 1)).sum();
            assert_eq!(*d.get(k, k), Rational::from_integer(sum));
        }
        assert!(schur_derivation(&Matrix::<Rational>::zeros(&(), 3, 3), &u).unwrap().is_zero());
        let n = jordan_block::<Rational>(&(), 2);
        assert!(schur_derivation(&n, &p(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_rightmost(&p(&[2, 1])), 1);
        assert_eq!(nu_rightmost(&p(&[2, 2])), 2);
        assert_eq!(nu_rightmost(&p(&[3, 1, 1])), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(straighten(&[vec![1, 2]], &p(&[2, 1]), 2), Err(SchurError::ShapeMismatch(_))));
        assert!(matches!(
            straighten(&[vec![1, 3]], &p(&[2]), 2),
            Err(SchurError::EntryOutOfRange { entry: 3, bound: 2 })
        ));
        let a = Matrix::<Rational>::zeros(&(), 2, 3);
        assert!(schur_matrix(&a, &p(&[2])).is_err());
    }
}
