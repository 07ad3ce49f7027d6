use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trienv::algebra::{
    base_algebra, inverse, make_algebra, mul, path_algebra, validate, AlgebraError,
    AlgebraPresentation, Arrow, QuiverPresentation, Relation,
};
use trienv::exactlin::{FieldSpec, PrimeField, Ring};

fn field(p: u64) -> PrimeField {
    PrimeField::new(FieldSpec::new(p).unwrap())
}

fn basis(n: usize, i: usize) -> Vec<u64> {
    (0..n).map(|k| u64::from(k == i)).collect()
}

/// Independent sweep: all triples and both unit laws, straight from the tensor.
fn sweep(f: &PrimeField, alg: &AlgebraPresentation<u64>) -> bool {
    let n = alg.dim();
    let prod = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n];
        for s in 0..n {
            for t in 0..n {
                for (k, slot) in out.iter_mut().enumerate() {
                    let term = f.mul(&f.mul(&a[s], &b[t]), alg.structure(s, t, k));
                    *slot = f.add(slot, &term);
                }
            }
        }
        out
    };
    for i in 0..n {
        let bi = basis(n, i);
        if prod(alg.unit(), &bi) != bi || prod(&bi, alg.unit()) != bi {
            return false;
        }
        for j in 0..n {
            for k in 0..n {
                let (bj, bk) = (basis(n, j), basis(n, k));
                if prod(&prod(&bi, &bj), &bk) != prod(&bi, &prod(&bj, &bk)) {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn base_and_dual_numbers() {
    let f = field(2);
    let k = make_algebra(&f, 1, vec![1], vec![1]).unwrap();
    assert_eq!(k, base_algebra(&f));
    let mut m = vec![0u64; 8];
    m[0] = 1;
    m[3] = 1;
    m[5] = 1;
    let dual = make_algebra(&f, 2, vec![1, 0], m).unwrap();
    assert!(sweep(&f, &dual));
    assert_eq!(mul(&f, &dual, &[0, 1], &[0, 1]), vec![0, 0]);
    // 1 + x is a unit, x is not
    assert_eq!(inverse(&f, &dual, &[1, 1]), Some(vec![1, 1]));
    assert_eq!(inverse(&f, &dual, &[0, 1]), None);
}

#[test]
fn invalid_tables_rejected() {
    let f = field(3);
    // basis (1, b) with b·1 = 1
    let mut m = vec![0u64; 8];
    m[0] = 1; // 1·1 = 1
    m[3] = 1; // 1·b = b
    m[4] = 1; // b·1 = 1
    m[6] = 1; // b·b = 1
    let err = make_algebra(&f, 2, vec![1, 0], m).unwrap_err();
    assert!(matches!(err, AlgebraError::UnitViolation { .. }), "{err}");

    // 3-dim table with b1·b1 = b2, b1·b2 = b0, b2·b1 = 0
    let n = 3;
    let mut m = vec![0u64; 27];
    let set = |m: &mut Vec<u64>, i: usize, j: usize, k: usize| m[(i * n + j) * n + k] = 1;
    for i in 0..n {
        set(&mut m, 0, i, i);
        set(&mut m, i, 0, i);
    }
    set(&mut m, 1, 1, 2);
    set(&mut m, 1, 2, 0);
    let err = make_algebra(&f, 3, vec![1, 0, 0], m).unwrap_err();
    assert!(
        matches!(err, AlgebraError::AssociativityViolation { .. }),
        "{err}"
    );
}

fn random_quiver(rng: &mut ChaCha8Rng) -> QuiverPresentation {
    let vertices = rng.gen_range(1..=3);
    let arrows: Vec<Arrow> = (0..rng.gen_range(0..=3))
        .map(|i| Arrow {
            name: format!("a{i}"),
            source: rng.gen_range(0..vertices),
            target: rng.gen_range(0..vertices),
        })
        .collect();
    let bound = rng.gen_range(1..=3);
    let mut relations = Vec::new();
    // random monomial relations of length 2
    for _ in 0..rng.gen_range(0..=2) {
        if arrows.is_empty() {
            break;
        }
        let a = rng.gen_range(0..arrows.len());
        let b = rng.gen_range(0..arrows.len());
        if arrows[a].target == arrows[b].source {
            relations.push(Relation {
                terms: vec![(BigInt::from(1), vec![a, b])],
            });
        }
    }
    QuiverPresentation {
        vertices,
        arrows,
        relations,
        bound,
    }
}

#[test]
fn path_algebras_pass_the_full_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut built = 0;
    for _ in 0..80 {
        let q = random_quiver(&mut rng);
        let f = field([2, 3][rng.gen_range(0..2)]);
        match path_algebra(&f, &q) {
            Ok(alg) => {
                built += 1;
                assert!(sweep(&f, &alg));
                assert!(validate(&f, &alg).is_ok());
                let rebuilt = make_algebra(
                    &f,
                    alg.dim(),
                    alg.unit().to_vec(),
                    alg.structure_tensor().to_vec(),
                );
                assert_eq!(rebuilt.as_ref(), Ok(&alg));
                assert!(alg.dim() >= q.vertices);
            }
            Err(AlgebraError::NotFiniteDimensional { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(built > 20);
}

#[test]
fn quiver_examples() {
    let f = field(2);
    let a2 = QuiverPresentation {
        vertices: 2,
        arrows: vec![Arrow {
            name: "a".into(),
            source: 0,
            target: 1,
        }],
        relations: vec![],
        bound: 2,
    };
    assert_eq!(path_algebra(&f, &a2).unwrap().dim(), 3);
    let looped = QuiverPresentation {
        vertices: 1,
        arrows: vec![Arrow {
            name: "x".into(),
            source: 0,
            target: 0,
        }],
        relations: vec![],
        bound: 2,
    };
    assert!(matches!(
        path_algebra(&f, &looped),
        Err(AlgebraError::NotFiniteDimensional { .. })
    ));
    let dual = QuiverPresentation {
        relations: vec![Relation {
            terms: vec![(BigInt::from(1), vec![0, 0])],
        }],
        ..looped
    };
    let alg = path_algebra(&f, &dual).unwrap();
    assert_eq!(alg.dim(), 2);
    assert!(sweep(&f, &alg));
}
