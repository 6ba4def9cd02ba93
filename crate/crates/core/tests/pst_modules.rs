use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schur_twist::exactfield::{AlgebraElement, Etale, Matrix, QuotientAlgebra, Rational};
use schur_twist::json::{module_from_json, module_to_json};
use schur_twist::pst::generator::{schur_instance, tensor_instance, GeneratorConfig};
use schur_twist::pst::{
    cyclic, extract_scalars, is_crystalline, is_semistable, module_schur, module_tensor, pipeline_sst_schur,
    PhiNGalModule, PstError, N_COMMUTES, N_NILPOTENT, N_PHI, PHI_COMMUTES, PHI_INVERTIBLE, RHO_COCYCLE, RHO_IDENTITY,
};
use schur_twist::tableaux::Partition;

type M = PhiNGalModule<AlgebraElement>;

fn lift(rows: &[[i64; 2]; 2]) -> Matrix<Etale<AlgebraElement>> {
    let q = QuotientAlgebra::rationals();
    let m = Matrix::from_fn(&q, 2, 2, |i, j| AlgebraElement::integer(rows[i][j]));
    Matrix::diagonal_embedding(&m, 1)
}

/// Rank 2 over Q on Z/2 with f = 1 and p = 2.
fn order_two(phi: [[i64; 2]; 2], n: [[i64; 2]; 2], rho_t: [[i64; 2]; 2]) -> M {
    let shape = Arc::new(cyclic(2, 1).unwrap());
    let rho = vec![lift(&[[1, 0], [0, 1]]), lift(&rho_t)];
    PhiNGalModule::new(shape, Rational::from_integer(2), lift(&phi), lift(&n), rho).unwrap()
}

fn failures(d: &M) -> Vec<String> {
    d.validate().failures.into_iter().map(|f| f.relation.to_string()).collect()
}

const ID: [[i64; 2]; 2] = [[1, 0], [0, 1]];
const ZERO: [[i64; 2]; 2] = [[0, 0], [0, 0]];

#[test]
fn each_relation_is_reported_by_name() {
    assert!(failures(&order_two([[2, 0], [0, 1]], [[0, 0], [1, 0]], [[1, 0], [0, 1]])).is_empty());
    assert_eq!(failures(&order_two([[1, 1], [1, 1]], ZERO, ID)), [PHI_INVERTIBLE]);
    assert_eq!(failures(&order_two(ID, [[0, 1], [0, 0]], ID)), [N_PHI]);
    assert!(failures(&order_two(ID, ID, ID)).contains(&N_NILPOTENT.to_string()));
    assert_eq!(failures(&order_two([[1, 1], [0, 1]], ZERO, [[1, 0], [0, -1]])), [PHI_COMMUTES]);
    assert_eq!(failures(&order_two([[2, 0], [0, 1]], [[0, 0], [1, 0]], [[1, 0], [0, -1]])), [N_COMMUTES]);
    assert_eq!(failures(&order_two(ID, ZERO, [[2, 0], [0, 2]])), [RHO_COCYCLE]);
}

#[test]
fn rho_of_identity_must_be_one() {
    let shape = Arc::new(cyclic(1, 1).unwrap());
    let d = PhiNGalModule::new(shape, Rational::from_integer(2), lift(&ID), lift(&ZERO), vec![lift(&[[3, 0], [0, 3]])])
        .unwrap();
    assert!(failures(&d).contains(&RHO_IDENTITY.to_string()));
    assert!(matches!(is_semistable(&d), Err(PstError::InvalidModule(_))));
}

#[test]
fn size_mismatches_are_rejected() {
    let shape = Arc::new(cyclic(2, 1).unwrap());
    let err = PhiNGalModule::new(shape, Rational::from_integer(2), lift(&ID), lift(&ZERO), vec![lift(&ID)]);
    assert!(matches!(err, Err(PstError::Dimension(_))));
}

#[test]
fn non_scalar_inertia_is_named() {
    let d = order_two([[2, 0], [0, 1]], ZERO, [[1, 0], [0, -1]]);
    assert!(d.validate().is_valid());
    assert!(!is_semistable(&d).unwrap());
    assert_eq!(extract_scalars(&d), Err(PstError::NotScalar { element: 1 }));
}

#[test]
fn sign_character_is_extracted() {
    let d = order_two([[2, 0], [0, 1]], [[0, 0], [1, 0]], [[-1, 0], [0, -1]]);
    let eta = extract_scalars(&d).unwrap();
    assert_eq!(eta.get(1).unwrap(), &AlgebraElement::integer(-1));
    assert!(!is_crystalline(&d).unwrap());
    let square = module_tensor(&d, &d).unwrap();
    assert!(square.validate().is_valid());
    assert!(is_semistable(&square).unwrap());
    let wedge = module_schur(&d, &Partition::new(vec![1, 1]).unwrap()).unwrap();
    assert!(is_semistable(&wedge).unwrap());
    let sym = module_schur(&d, &Partition::row(2)).unwrap();
    assert!(is_semistable(&sym).unwrap());
}

#[test]
fn small_rank_is_refused() {
    let d = order_two(ID, ZERO, [[-1, 0], [0, -1]]);
    let u = Partition::new(vec![1, 1]).unwrap();
    assert_eq!(pipeline_sst_schur(&d, &u, None).err(), Some(PstError::RankTooSmall { rank: 2, needed: 3 }));
}

#[test]
fn generated_constructions_stay_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cfg = GeneratorConfig::default();
    for _ in 0..12 {
        let t = tensor_instance(&mut rng, &cfg);
        let prod = module_tensor(&t.d, &t.d2).unwrap();
        assert!(prod.validate().is_valid(), "{:?}", t.family);
        assert!(is_semistable(&prod).unwrap(), "{:?}", t.family);
        assert_eq!(is_crystalline(&prod).unwrap(), t.crystalline);
    }
    let u = Partition::new(vec![2, 1]).unwrap();
    for _ in 0..6 {
        let s = schur_instance(&mut rng, &cfg, &u, 3);
        let m = module_schur(&s.d, &u).unwrap();
        assert!(m.validate().is_valid(), "{:?}", s.family);
        assert!(is_semistable(&m).unwrap(), "{:?}", s.family);
    }
}

#[test]
fn module_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let cfg = GeneratorConfig::default();
    for _ in 0..10 {
        let t = tensor_instance(&mut rng, &cfg);
        for d in [&t.d, &t.d2] {
            let back = module_from_json(&module_to_json(d)).unwrap();
            assert_eq!(&back, d);
        }
    }
}

#[test]
fn malformed_module_json_is_rejected() {
    let d = order_two(ID, ZERO, ID);
    let mut v = module_to_json(&d);
    v.as_object_mut().unwrap().remove("phi");
    assert!(module_from_json(&v).is_err());
    assert!(module_from_json(&serde_json::json!([1, 2, 3])).is_err());
}
