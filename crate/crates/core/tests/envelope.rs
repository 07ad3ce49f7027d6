mod common;

use std::sync::Arc;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trienv::envelope::{CertificateFault, GeneratorSet, OracleBounds, OracleError};
use trienv::homotopy::{Complex, Context};

fn gens<E>(items: &[Arc<Complex<E>>]) -> GeneratorSet<E> {
    GeneratorSet::new(items.to_vec())
}

#[test]
fn stage_examples_over_a_field() {
    let k = field(2);
    let (k0, k1) = (free(&k, 1, 0), free(&k, 1, 1));

    let state = k.tower_step(&k.tower_start(&gens(std::slice::from_ref(&k0)), &k1));
    assert!(state.stages[0].is_fixed_point());
    assert_eq!(state.top(), &k1);

    let state = k.tower_step(&k.tower_start(&gens(std::slice::from_ref(&k0)), &k0));
    let alpha = k.tower_map(&state, 1);
    assert!(k.null_homotopy(&alpha).is_some());
    assert_eq!(state.manifest(), vec![vec![1]]);
}

#[test]
fn membership_examples() {
    let k = field(2);
    let (k0, k1) = (free(&k, 1, 0), free(&k, 1, 1));
    let zero = Arc::new(Complex::zero());

    let r = k.check_membership(&gens(std::slice::from_ref(&k0)), &zero, 6);
    assert_eq!(r.member_stage(), Some(0));
    let r = k.check_membership(&gens(std::slice::from_ref(&k0)), &k0, 6);
    assert_eq!(r.member_stage(), Some(1));
    let r = k.check_membership(&gens(std::slice::from_ref(&k0)), &free(&k, 2, 0), 6);
    assert_eq!(r.member_stage(), Some(1));

    let r = k.check_membership(&gens(std::slice::from_ref(&k0)), &k1, 6);
    assert!(!r.is_member());
    assert_eq!(r.stationary_at(), Some(1));
    for d in &r.diagnostics {
        assert_eq!(d.hom_group.free_rank(), 1);
        assert!(!d.dead);
    }

    // Y literally in D
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = Arc::new(k.random_small_complex(&mut rng, 0, 3, 4));
        if k.is_contractible(&x).is_some() {
            continue;
        }
        let r = k.check_membership(&gens(&[k0.clone(), x.clone()]), &x, 6);
        assert_eq!(r.member_stage(), Some(1));
    }
}

#[test]
fn integer_membership_examples() {
    let z = integers();
    let cases: [(&[i64], i64, Option<usize>); 6] = [
        (&[2], 4, Some(2)),
        (&[2], 8, Some(3)),
        (&[2, 3], 6, Some(1)),
        (&[4], 2, Some(2)),
        (&[2], 2, Some(1)),
        (&[2], 6, None),
    ];
    for (d, y, stage) in cases {
        let g = GeneratorSet::new(d.iter().map(|&m| c(&z, m)).collect());
        let r = z.check_membership(&g, &c(&z, y), 6);
        assert_eq!(r.member_stage(), stage, "D = {d:?}, Y = C({y})");
    }
    let r = z.check_membership(&GeneratorSet::new(vec![c(&z, 2)]), &c(&z, 6), 6);
    assert_eq!(r.stationary_at(), Some(2));
    let groups: Vec<String> = r
        .diagnostics
        .iter()
        .map(|d| d.hom_group.to_string())
        .collect();
    assert_eq!(groups, ["Z/6", "Z/3", "Z/3"]);
}

#[test]
fn certificates_verify_and_reject_tampering() {
    let z = integers();
    let g = GeneratorSet::new(vec![c(&z, 2)]);
    let y = c(&z, 4);
    let r = z.check_membership(&g, &y, 6);
    let cert = r.certificate().unwrap().clone();
    assert_eq!(z.verify_certificate(&g, &y, &cert), Ok(()));
    assert_eq!(cert.manifest, vec![vec![1], vec![1]]);

    assert_eq!(
        z.verify_certificate(&g, &c(&z, 8), &cert),
        Err(CertificateFault::BaseMismatch)
    );

    let mut bad = cert.clone();
    bad.scale = num_bigint::BigInt::from(2);
    assert!(z.verify_certificate(&g, &y, &bad).is_err());

    let mut bad = cert.clone();
    bad.lift = z.scale_map(&bad.lift, &num_bigint::BigInt::from(3));
    assert_eq!(
        z.verify_certificate(&g, &y, &bad),
        Err(CertificateFault::RetractWitness)
    );

    let mut bad = cert.clone();
    bad.death = z.zero_homotopy(bad.death.source(), bad.death.target());
    assert_eq!(
        z.verify_certificate(&g, &y, &bad),
        Err(CertificateFault::DeathWitness)
    );

    let k = field(2);
    let k0 = free(&k, 1, 0);
    let zero = Arc::new(Complex::zero());
    for y in [zero, k0.clone()] {
        let r = k.check_membership(&gens(std::slice::from_ref(&k0)), &y, 6);
        let cert = r.certificate().unwrap();
        assert_eq!(
            k.verify_certificate(&gens(std::slice::from_ref(&k0)), &y, cert),
            Ok(())
        );
    }
}

#[test]
fn certificates_are_reproducible() {
    let z = integers();
    let g = GeneratorSet::new(vec![c(&z, 2), c(&z, 3)]);
    let a = z.check_membership(&g, &c(&z, 6), 6);
    let b = z.check_membership(&g, &c(&z, 6), 6);
    assert_eq!(a.certificate(), b.certificate());
    assert_eq!(a.diagnostics, b.diagnostics);
}

#[test]
fn functor_value_examples() {
    let k = field(2);
    let (k0, k1) = (free(&k, 1, 0), free(&k, 1, 1));
    let state = k.build_tower(&gens(std::slice::from_ref(&k0)), &k1, 4);
    let table = k.functor_values(&state, std::slice::from_ref(&k1));
    assert!(table[0].iter().all(|e| e.group.free_rank() == 1));

    let z = integers();
    let g = GeneratorSet::new(vec![c(&z, 2)]);
    let y = c(&z, 6);
    let state = z.build_tower(&g, &y, 3);
    let table = z.functor_values(&state, &[y.clone(), c(&z, 2)]);
    assert_eq!(&table[0][0].group, z.hom_space(&y, &y).group());
    for entry in &table[1] {
        if let Some(image) = &entry.connecting_image {
            assert!(image.is_trivial());
        }
    }
}

#[test]
fn oracle_examples() {
    let k = field(2);
    let (k0, k1) = (free(&k, 1, 0), free(&k, 1, 1));
    let b = OracleBounds::new(3, 4);
    assert!(
        k.oracle_member(&gens(std::slice::from_ref(&k0)), &free(&k, 2, 0), &b)
            .unwrap()
            .member
    );
    let out = k
        .oracle_member(&gens(std::slice::from_ref(&k0)), &k1, &b)
        .unwrap();
    assert!(!out.member);
    assert!(!out.saturated);
    assert!(out.skipped > 0);
    // contractible generators reduce to 0, so the closure is exhausted at once
    let acyclic = k.cone(&k.identity(&k0)).object;
    let out = k.oracle_member(&gens(&[acyclic]), &k0, &b).unwrap();
    assert!(!out.member && out.saturated);

    let z = integers();
    let b = OracleBounds::new(2, 6);
    assert!(
        z.oracle_member(&GeneratorSet::new(vec![c(&z, 2)]), &c(&z, 4), &b)
            .unwrap()
            .member
    );
    assert!(
        !z.oracle_member(&GeneratorSet::new(vec![c(&z, 2)]), &c(&z, 6), &b)
            .unwrap()
            .member
    );
    assert!(
        z.oracle_member(&GeneratorSet::new(vec![c(&z, 2), c(&z, 3)]), &c(&z, 6), &b)
            .unwrap()
            .member
    );

    let tight = OracleBounds {
        max_pool: 1,
        ..OracleBounds::new(3, 6)
    };
    let err = z.oracle_member(
        &GeneratorSet::new(vec![c(&z, 2), c(&z, 3)]),
        &c(&z, 5),
        &tight,
    );
    assert!(matches!(err, Err(OracleError::BoundsExceeded(_))));
}

#[test]
fn dual_numbers_examples() {
    let a = dual_numbers();
    let p = p_complex(&a);
    let (a0, a1) = (free(&a, 1, 0), free(&a, 1, 1));
    let r = a.check_membership(&gens(&[a0.clone(), a1.clone()]), &p, 6);
    assert_eq!(r.member_stage(), Some(2));
    assert!(
        a.oracle_member(&gens(&[a0.clone(), a1]), &p, &OracleBounds::new(3, 3))
            .unwrap()
            .member
    );

    // A is a retract of an extension of P by P; rank 3 is too tight to see it
    let r = a.check_membership(&gens(std::slice::from_ref(&p)), &a0, 6);
    assert_eq!(r.member_stage(), Some(2));
    let tight = a
        .oracle_member(
            &gens(std::slice::from_ref(&p)),
            &a0,
            &OracleBounds::new(3, 3),
        )
        .unwrap();
    assert!(!tight.member && !tight.saturated);
    assert!(
        a.oracle_member(&gens(&[p]), &a0, &OracleBounds::new(3, 4))
            .unwrap()
            .member
    );
}

fn random_instance(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> (GeneratorSet<u64>, Arc<Complex<u64>>) {
    let n = rng.gen_range(1..=2);
    let d: Vec<_> = (0..n)
        .map(|_| Arc::new(ctx.random_small_complex(rng, -1, 3, 3)))
        .collect();
    let y = Arc::new(ctx.random_small_complex(rng, -1, 3, 3));
    (GeneratorSet::new(d), y)
}

/// Every `e → Y_n` becomes null-homotopic in `Y_{n+1}`.
fn assert_one_step_death<R: trienv::Ring>(
    ctx: &Context<R>,
    state: &trienv::envelope::TowerState<R::Elem>,
) {
    for n in 0..state.height() {
        let alpha = &state.stages[n].alpha;
        for e in state.generators.elements() {
            let hom = ctx.hom_space(e, state.object(n));
            for g in hom.generators() {
                let pushed = ctx.compose(alpha, g).unwrap();
                assert!(ctx.null_homotopy(&pushed).is_some(), "stage {n}");
            }
        }
    }
}

#[test]
fn one_step_death_on_random_towers() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for ctx in [field(2), field(3), dual_numbers()] {
        for _ in 0..8 {
            let (g, y) = random_instance(&ctx, &mut rng);
            let state = ctx.build_tower(&g, &y, 3);
            assert_one_step_death(&ctx, &state);
        }
    }
    let z = integers();
    let state = z.build_tower(&GeneratorSet::new(vec![c(&z, 2)]), &c(&z, 6), 3);
    assert_one_step_death(&z, &state);
}

#[test]
fn death_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let k = field(2);
    let mut checked = 0;
    for _ in 0..30 {
        let (g, y) = random_instance(&k, &mut rng);
        let r = k.check_membership(&g, &y, 4);
        let Some(n) = r.member_stage() else { continue };
        let state = k.build_tower(&g, &y, n + 2);
        for m in n..=state.height() {
            assert!(k.null_homotopy(&k.tower_map(&state, m)).is_some());
        }
        checked += 1;
    }
    assert!(checked > 5);
    let z = integers();
    let g = GeneratorSet::new(vec![c(&z, 2)]);
    let state = z.build_tower(&g, &c(&z, 4), 4);
    for m in 2..=state.height() {
        assert!(z.null_homotopy(&z.tower_map(&state, m)).is_some());
    }
}

#[test]
fn extensions_of_members_are_members() {
    let k = field(2);
    let k0 = free(&k, 1, 0);
    let a = dual_numbers();
    let (a0, a1) = (free(&a, 1, 0), free(&a, 1, 1));
    let suites: Vec<(FieldCtx, GeneratorSet<u64>, Vec<Arc<Complex<u64>>>)> = vec![
        (
            k.clone(),
            gens(std::slice::from_ref(&k0)),
            vec![k0.clone(), free(&k, 2, 0)],
        ),
        (
            k.clone(),
            gens(&[k0.clone(), free(&k, 1, 1)]),
            vec![k0.clone(), free(&k, 1, 1)],
        ),
        (
            a.clone(),
            gens(&[a0.clone(), a1.clone()]),
            vec![a0.clone(), a1.clone(), p_complex(&a)],
        ),
    ];
    for (ctx, g, members) in suites {
        for x in &members {
            for y in &members {
                // C = cone(w : Y[-1] -> X)
                let shifted = Arc::new(ctx.shift(y, -1));
                let hom = ctx.hom_space(&shifted, x);
                let mut maps = vec![ctx.zero_map(&shifted, x)];
                maps.extend(hom.generators().iter().cloned());
                for w in maps {
                    let cone = ctx.cone(&w).object;
                    let r = ctx.check_membership(&g, &cone, 6);
                    assert!(r.is_member(), "extension not detected");
                }
            }
        }
    }
    let z = integers();
    let g = GeneratorSet::new(vec![c(&z, 2)]);
    let (x, y) = (c(&z, 2), c(&z, 4));
    let shifted = Arc::new(z.shift(&y, -1));
    for w in z.hom_space(&shifted, &x).generators() {
        assert!(z.check_membership(&g, &z.cone(w).object, 6).is_member());
    }
}

#[test]
fn retract_of_power_examples() {
    let k = field(3);
    let k0 = free(&k, 1, 0);
    let k2 = free(&k, 2, 0);
    let (s, r) = k.retract_of_power(&k0, &k2).unwrap();
    assert!(k.verify_retract(&s, &r).is_some());
    assert!(k.retract_of_power(&free(&k, 1, 1), &k2).is_none());
}
