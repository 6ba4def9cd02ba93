//! Schur functor checks against independent models.
//!
//! The main model embeds Schur^u(V) into ⊗_rows Sym(V): a filling F goes to
//! Σ_π sgn(π) · (rows of πF as monomials) over the column permutations π.
//! That map kills the exchange relations and is injective on the quotient.

mod common;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dense, q, random_int_matrix, rank, schur_trace, to_big, Q};
use schur_twist::exactfield::{AlgebraElement, Matrix, QuotientAlgebra, Rational, Ring};
use schur_twist::schur::{nu_rightmost, schur_derivation, schur_matrix, straighten, SchurSpace};
use schur_twist::tableaux::{enumerate_tableaux, lr_coefficient, r_of, Partition, Tableau};

type Sym = HashMap<Vec<Vec<usize>>, Q>;

fn shapes(max: usize) -> Vec<Partition> {
    (1..=max).flat_map(Partition::all_of_size).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut next = p.clone();
            next.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((next, sign));
        }
    }
    out
}

fn add_into(acc: &mut Sym, key: Vec<Vec<usize>>, c: Q) {
    let e = acc.entry(key).or_insert_with(Q::zero);
    *e += c;
}

fn prune(mut m: Sym) -> Sym {
    m.retain(|_, c| !c.is_zero());
    m
}

fn psi(rows: &[Vec<usize>]) -> Sym {
    let cols: Vec<Vec<usize>> =
        (0..rows[0].len()).map(|j| rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()).collect();
    let mut acc: Sym = HashMap::new();
    let per_col: Vec<Vec<(Vec<usize>, i64)>> = cols.iter().map(|c| permutations(c.len())).collect();
    let mut choice = vec![0usize; cols.len()];
    loop {
        let mut sign = 1;
        let mut filled: Vec<Vec<usize>> = rows.iter().map(|r| vec![0; r.len()]).collect();
        for (j, col) in cols.iter().enumerate() {
            let (perm, s) = &per_col[j][choice[j]];
            sign *= s;
            for (i, &k) in perm.iter().enumerate() {
                filled[i][j] = col[k];
            }
        }
        for r in &mut filled {
            r.sort_unstable();
        }
        add_into(&mut acc, filled, q(sign));
        let Some(j) = (0..cols.len()).find(|&j| choice[j] + 1 < per_col[j].len()) else { break };
        choice[j] += 1;
        for c in choice.iter_mut().take(j) {
            *c = 0;
        }
    }
    prune(acc)
}

fn combine(terms: impl IntoIterator<Item = (Q, Sym)>) -> Sym {
    let mut acc = HashMap::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        for (k, v) in m {
            add_into(&mut acc, k, &c * v);
        }
    }
    prune(acc)
}

fn random_filling<R: Rng>(rng: &mut R, u: &Partition, d: usize) -> Vec<Vec<usize>> {
    u.parts().iter().map(|&l| (0..l).map(|_| rng.gen_range(1..=d)).collect()).collect()
}

fn all_fillings(u: &Partition, d: usize) -> Vec<Vec<Vec<usize>>> {
    let n = u.size();
    let mut out = Vec::new();
    let mut flat = vec![1usize; n];
    loop {
        let mut it = flat.iter().copied();
        out.push(u.parts().iter().map(|&l| it.by_ref().take(l).collect()).collect());
        let Some(k) = (0..n).find(|&k| flat[k] < d) else { break };
        flat[k] += 1;
        for x in flat.iter_mut().take(k) {
            *x = 1;
        }
    }
    out
}

#[test]
fn tableau_images_are_independent() {
    for u in shapes(5) {
        for d in 1..=4 {
            let basis = enumerate_tableaux(&u, d);
            if basis.is_empty() {
                continue;
            }
            let images: Vec<Sym> = basis.iter().map(|t| psi(t.rows())).collect();
            let mut keys: Vec<&Vec<Vec<usize>>> = images.iter().flat_map(|m| m.keys()).collect();
            keys.sort();
            keys.dedup();
            let rows: Vec<Vec<Q>> = images
                .iter()
                .map(|m| keys.iter().map(|k| m.get(*k).cloned().unwrap_or_else(Q::zero)).collect())
                .collect();
            assert_eq!(rank(&rows), basis.len(), "{u} d={d}");
        }
    }
}

#[test]
fn straightening_matches_symmetrizer_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for u in shapes(5) {
        for d in 1..=4 {
            let space = SchurSpace::new(&u, d);
            let images: Vec<Sym> = space.basis().iter().map(|t| psi(t.rows())).collect();
            for _ in 0..12 {
                let f = random_filling(&mut rng, &u, d);
                let coords = space.straighten(&f).unwrap().coords;
                let rhs = combine(coords.iter().map(to_big).zip(images.iter().cloned()));
                assert_eq!(psi(&f), rhs, "{u} d={d} filling {f:?}");
            }
        }
    }
}

#[test]
fn schur_matrix_matches_symmetrizer_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for u in shapes(4) {
        for d in 1..=3 {
            let basis = enumerate_tableaux(&u, d);
            if basis.is_empty() {
                continue;
            }
            let a = random_int_matrix(&mut rng, d, 2);
            let ad = dense(&a);
            let m = dense(&schur_matrix(&a, &u).unwrap());
            let images: Vec<Sym> = basis.iter().map(|t| psi(t.rows())).collect();
            let fillings: Vec<(Vec<Vec<usize>>, Sym)> = all_fillings(&u, d)
                .into_iter()
                .map(|f| {
                    let p = psi(&f);
                    (f, p)
                })
                .collect();
            for (s_idx, s) in basis.iter().enumerate() {
                let lhs = combine((0..basis.len()).map(|t| (m[t][s_idx].clone(), images[t].clone())));
                let rhs = combine(fillings.iter().map(|(f, p)| {
                    let mut c = Q::one();
                    for (fr, sr) in f.iter().zip(s.rows()) {
                        for (&x, &y) in fr.iter().zip(sr) {
                            c *= &ad[x - 1][y - 1];
                        }
                    }
                    (c, p.clone())
                }));
                assert_eq!(lhs, rhs, "{u} d={d} column {s_idx}");
            }
        }
    }
}

#[test]
fn semistandard_fillings_straighten_to_themselves() {
    for u in shapes(5) {
        for d in 1..=4 {
            let space = SchurSpace::new(&u, d);
            for (i, t) in space.basis().iter().enumerate() {
                let coords = straighten(t.rows(), &u, d).unwrap();
                for (j, c) in coords.iter().enumerate() {
                    assert_eq!(*c, Rational::from_integer((i == j) as i64), "{u} d={d}");
                }
            }
        }
    }
}

#[test]
fn repeated_column_entry_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for u in shapes(5).into_iter().filter(|u| u.num_rows() >= 2) {
        for d in 1..=4 {
            for _ in 0..6 {
                let mut f = random_filling(&mut rng, &u, d);
                f[1][0] = f[0][0];
                assert!(straighten(&f, &u, d).unwrap().iter().all(Rational::is_zero), "{u} {f:?}");
            }
        }
    }
}

#[test]
fn trace_is_jacobi_trudi() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for u in shapes(5) {
        for d in 1..=4 {
            let a = random_int_matrix(&mut rng, d, 3);
            let tr = if enumerate_tableaux(&u, d).is_empty() {
                Q::zero()
            } else {
                to_big(&schur_matrix(&a, &u).unwrap().trace())
            };
            assert_eq!(tr, schur_trace(&dense(&a), &u), "{u} d={d}");
        }
    }
}

#[test]
fn products_of_traces_follow_littlewood_richardson() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let d = 5;
    let a = random_int_matrix(&mut rng, d, 2);
    let ad = dense(&a);
    for lambda in shapes(4) {
        for mu in shapes(5 - lambda.size()) {
            let lhs = schur_trace(&ad, &lambda) * schur_trace(&ad, &mu);
            let mut rhs = Q::zero();
            for u in Partition::all_of_size(lambda.size() + mu.size()) {
                let c = lr_coefficient(&lambda, &mu, &u);
                if c > 0 && u.num_rows() <= d {
                    rhs += q(c as i64) * to_big(&schur_matrix(&a, &u).unwrap().trace());
                }
            }
            assert_eq!(lhs, rhs, "{lambda} * {mu}");
        }
    }
}

fn lift(alg: &Arc<QuotientAlgebra>, m: &Matrix<Rational>) -> Matrix<AlgebraElement> {
    m.map(alg, |x| AlgebraElement::constant(alg, x.clone()))
}

#[test]
fn derivation_is_first_order_part() {
    let dual = QuotientAlgebra::from_integers(&[0, 0, 1]).unwrap();
    let eps = AlgebraElement::generator(&dual);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for u in shapes(4) {
        for d in 1..=3 {
            if enumerate_tableaux(&u, d).is_empty() {
                continue;
            }
            let theta = random_int_matrix(&mut rng, d, 3);
            let a = Matrix::identity(&dual, d).add(&lift(&dual, &theta).scale(&eps));
            let expected = {
                let der = schur_derivation(&theta, &u).unwrap();
                Matrix::identity(&dual, der.rows()).add(&lift(&dual, &der).scale(&eps))
            };
            assert_eq!(schur_matrix(&a, &u).unwrap(), expected, "{u} d={d}");
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

#[test]
fn unipotent_raises_corner_by_nu() {
    let mut modulus = vec![0i64; 17];
    modulus[16] = 1;
    let trunc = QuotientAlgebra::from_integers(&modulus).unwrap();
    let c = AlgebraElement::generator(&trunc);
    for u in shapes(5) {
        let nu = nu_rightmost(&u);
        for d in r_of(&u).max(nu + 1)..=4 {
            let unip = Matrix::from_fn(&trunc, d, d, |i, k| {
                if i <= k {
                    c.pow((k - i) as u64).scale(&Rational::from_integer(binomial(k, i)))
                } else {
                    AlgebraElement::zero(&trunc)
                }
            });
            let t = Tableau::standard(&u);
            let mut raised = t.rows().to_vec();
            let last = u.parts()[nu - 1] - 1;
            raised[nu - 1][last] = nu + 1;
            let t2 = Tableau::new(raised).unwrap();
            let space = SchurSpace::new(&u, d);
            let (i, i2) = (space.index_of(&t).unwrap(), space.index_of(&t2).unwrap());
            let m = space.induced_matrix(&unip).unwrap();
            for row in 0..m.rows() {
                let expected = if row == i2 {
                    AlgebraElement::one(&trunc)
                } else if row == i {
                    c.scale(&Rational::from_integer(nu as i64))
                } else {
                    AlgebraElement::zero(&trunc)
                };
                assert_eq!(m.get(row, i2), &expected, "{u} d={d} row {row}");
            }
        }
    }
}
