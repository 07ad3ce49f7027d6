mod common;

use std::sync::Arc;

use common::*;
use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trienv::exactlin::{rref_field, FgAbelianGroup, Matrix};
use trienv::homotopy::{ChainMap, Complex, Context, HomotopyError};

fn field_rank(ctx: &FieldCtx, m: &Matrix<u64>) -> usize {
    rref_field(m, ctx.ring().spec()).rank
}

/// Matrix of `t ↦ g ∘ t` from `Hom(T, A)` to `Hom(T, B)` on generators.
fn postcompose(ctx: &FieldCtx, t: &Arc<Complex<u64>>, g: &ChainMap<u64>) -> Matrix<u64> {
    let from = ctx.hom_space(t, g.source());
    let to = ctx.hom_space(t, g.target());
    let columns: Vec<Vec<u64>> = from
        .generators()
        .iter()
        .map(|s| ctx.class_coordinates(&to, &ctx.compose(g, s).unwrap()))
        .collect();
    Matrix::from_columns(to.dimension(), &columns)
}

fn exact_at(ctx: &FieldCtx, t: &Arc<Complex<u64>>, f: &ChainMap<u64>, g: &ChainMap<u64>) -> bool {
    let m1 = postcompose(ctx, t, f);
    let m2 = postcompose(ctx, t, g);
    let middle = ctx.hom_space(t, f.target()).dimension();
    let composite_zero =
        m2.cols() == 0 || m2.rows() == 0 || m2.mul(ctx.ring(), &m1).is_zero(ctx.ring());
    composite_zero && field_rank(ctx, &m1) + field_rank(ctx, &m2) == middle
}

fn random_field_complex(ctx: &FieldCtx, rng: &mut dyn RngCore) -> Arc<Complex<u64>> {
    let lo = (rng.next_u32() % 3) as i64 - 1;
    Arc::new(ctx.random_small_complex(rng, lo, 3, 5))
}

#[test]
fn shift_conventions() {
    let k = field(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = k.random_complex(&mut rng, 0, &[2, 3, 1]);
    assert_eq!(k.shift(&x, 0), x);
    assert_eq!(k.shift(&k.shift(&x, 1), -1), x);
    let s = k.shift(&k.free_in_degree(1, 0), 1);
    assert_eq!((s.lo(), s.rank(-1), s.total_rank()), (-1, 1, 1));
    let d0 = x.stored_diff(0).unwrap();
    let sx = k.shift(&x, 1);
    assert_eq!(sx.stored_diff(-1).unwrap(), &k.neg_module_map(d0));
}

#[test]
fn d_squared_is_checked() {
    let k = field(2);
    let one = k.scalar_map(&[vec![1]]);
    let err = k
        .complex(0, vec![1, 1, 1], vec![one.clone(), one])
        .unwrap_err();
    assert_eq!(err, HomotopyError::DSquaredNonzero { degree: 0 });
}

#[test]
fn cone_examples() {
    let k = field(2);
    let k0 = free(&k, 1, 0);
    let cone = k.cone(&k.identity(&k0));
    assert_eq!(cone.object.total_rank(), 2);
    assert!(k.is_contractible(&cone.object).is_some());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = Arc::new(k.random_complex(&mut rng, 0, &[1, 2]));
    let y = Arc::new(k.random_complex(&mut rng, 0, &[2, 1]));
    let cone = k.cone(&k.zero_map(&x, &y));
    let sum = k.direct_sum(&[Arc::new(k.shift(&x, 1)), y.clone()]);
    assert_eq!(cone.object, sum.object);

    let z = integers();
    let z0 = free(&z, 1, 0);
    let two = k_map(&z, &z0, 2);
    let c2 = z.cone(&two).object;
    // Z --2--> Z in degrees -1, 0
    assert_eq!((c2.lo(), c2.hi()), (-1, 1));
    assert_eq!(c2.stored_diff(-1).unwrap(), &z.scalar_map(&[vec![2]]));
    let end = z.hom_space(&c2, &c2);
    assert_eq!(
        end.group(),
        &FgAbelianGroup::new(0, vec![BigInt::from(2)]).unwrap()
    );
}

fn k_map<R: trienv::Ring>(
    ctx: &Context<R>,
    x: &Arc<Complex<R::Elem>>,
    m: i64,
) -> ChainMap<R::Elem> {
    let id = ctx.identity(x);
    ctx.scale_map(&id, &ctx.ring().from_i64(m))
}

#[test]
fn hom_examples() {
    let k = field(2);
    let (k0, k1) = (free(&k, 1, 0), free(&k, 1, 1));
    assert_eq!(k.hom_space(&k0, &k0).dimension(), 1);
    assert_eq!(k.hom_space(&k0, &k1).dimension(), 0);

    let a = dual_numbers();
    let p = p_complex(&a);
    let end = a.hom_space(&p, &p);
    assert_eq!(end.dimension(), 2);
    assert_eq!(end.cycle_rank(), 3);

    let z = integers();
    assert!(z.hom_space(&c(&z, 2), &c(&z, 3)).is_zero());
    assert_eq!(z.hom_space(&c(&z, 6), &c(&z, 6)).group().to_string(), "Z/6");
    assert_eq!(z.hom_space(&c(&z, 2), &c(&z, 4)).group().to_string(), "Z/2");
    let z0 = free(&z, 1, 0);
    assert_eq!(z.hom_space(&z0, &z0).group(), &FgAbelianGroup::free(1));

    let zero = Arc::new(Complex::zero());
    assert!(k.hom_space(&zero, &k0).is_zero());
    assert!(k.hom_space(&k0, &zero).is_zero());
}

#[test]
fn null_homotopy_examples() {
    let k = field(2);
    let k0 = free(&k, 1, 0);
    let h = k.null_homotopy(&k.zero_map(&k0, &k0)).unwrap();
    assert!(h.components().iter().all(|m| k.module_map_is_zero(m)));
    assert!(k.null_homotopy(&k.identity(&k0)).is_none());
    let cone = k.cone(&k.identity(&k0)).object;
    let h = k.null_homotopy(&k.identity(&cone)).unwrap();
    assert!(k.witnesses_null_homotopy(&k.identity(&cone), &h));
}

#[test]
fn retract_examples() {
    let k = field(2);
    let k0 = free(&k, 1, 0);
    let id = k.identity(&k0);
    let h = k.verify_retract(&id, &id).unwrap();
    assert!(h.components().iter().all(|m| k.module_map_is_zero(m)));

    let sum = k.direct_sum(&[k0.clone(), free(&k, 1, 1)]);
    assert!(k
        .verify_retract(&sum.injections[0], &sum.projections[0])
        .is_some());
    let zero = k.zero_map(&k0, &sum.object);
    assert!(k.verify_retract(&zero, &sum.projections[0]).is_none());
}

#[test]
fn cone_of_identity_is_contractible() {
    for p in [2, 3] {
        let k = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + p);
        for _ in 0..50 {
            let x = random_field_complex(&k, &mut rng);
            let cone = k.cone(&k.identity(&x)).object;
            let h = k.is_contractible(&cone).expect("cone(id) is contractible");
            assert!(k.witnesses_null_homotopy(&k.identity(&cone), &h));
        }
    }
}

#[test]
fn rotation_comparison_is_a_homotopy_equivalence() {
    for p in [2, 3] {
        let k = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + p);
        for _ in 0..50 {
            let x = random_field_complex(&k, &mut rng);
            let y = random_field_complex(&k, &mut rng);
            let f = k.random_chain_map(&mut rng, &x, &y);
            let (second, phi, psi) = k.rotation_comparison(&f);
            assert_eq!(phi.source(), &second.object);
            assert!(k.verify_retract(&psi, &phi).is_some());
            assert!(k.verify_retract(&phi, &psi).is_some());
        }
    }
}

#[test]
fn hom_sequences_are_exact() {
    let k = field(2);
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    for _ in 0..50 {
        let x = random_field_complex(&k, &mut rng);
        let y = random_field_complex(&k, &mut rng);
        let t = random_field_complex(&k, &mut rng);
        let f = k.random_chain_map(&mut rng, &x, &y);
        let cone = k.cone(&f);
        assert!(exact_at(&k, &t, &f, &cone.incl));
        assert!(exact_at(&k, &t, &cone.incl, &cone.proj));
    }
}

#[test]
fn hom_dimension_is_shift_invariant() {
    for ctx in [field(2), field(3), dual_numbers()] {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + ctx.dim() as u64);
        for _ in 0..30 {
            let x = random_field_complex(&ctx, &mut rng);
            let y = random_field_complex(&ctx, &mut rng);
            let m = rng.gen_range(-2..=2);
            let (sx, sy) = (Arc::new(ctx.shift(&x, m)), Arc::new(ctx.shift(&y, m)));
            assert_eq!(
                ctx.hom_space(&x, &y).dimension(),
                ctx.hom_space(&sx, &sy).dimension()
            );
        }
    }
}

#[test]
fn null_homotopy_agrees_with_class_coordinates() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let contexts: Vec<FieldCtx> = vec![field(2), field(3), dual_numbers()];
    for ctx in &contexts {
        for _ in 0..40 {
            let x = random_field_complex(ctx, &mut rng);
            let y = random_field_complex(ctx, &mut rng);
            let hom = ctx.hom_space(&x, &y);
            let f = if rng.gen_bool(0.5) {
                ctx.homotopy_boundary(&ctx.random_homotopy(&mut rng, &x, &y))
            } else {
                ctx.random_chain_map(&mut rng, &x, &y)
            };
            assert_eq!(ctx.null_homotopy(&f).is_some(), ctx.is_zero_class(&hom, &f));
        }
    }
    let z = integers();
    for _ in 0..40 {
        let x = Arc::new(z.random_small_complex(&mut rng, 0, 2, 4));
        let y = Arc::new(z.random_small_complex(&mut rng, 0, 2, 4));
        let hom = z.hom_space(&x, &y);
        let f = z.random_chain_map(&mut rng, &x, &y);
        assert_eq!(z.null_homotopy(&f).is_some(), z.is_zero_class(&hom, &f));
    }
}

#[test]
fn integer_classes_have_the_group_orders() {
    let z = integers();
    for m in 2..8 {
        let x = c(&z, m);
        let hom = z.hom_space(&x, &x);
        assert_eq!(hom.group().order(), Some(BigInt::from(m)));
        let id = z.identity(&x);
        for s in 1..=m {
            let scaled = z.scale_map(&id, &BigInt::from(s));
            assert_eq!(
                z.null_homotopy(&scaled).is_some(),
                s % m == 0,
                "m = {m}, s = {s}"
            );
        }
    }
}

#[test]
fn reduction_is_a_homotopy_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let contexts: Vec<FieldCtx> = vec![field(2), field(3), dual_numbers()];
    for ctx in &contexts {
        for _ in 0..30 {
            let x = random_field_complex(ctx, &mut rng);
            check_reduction(ctx, &x);
        }
    }
    let z = integers();
    for _ in 0..30 {
        let x = Arc::new(z.random_small_complex(&mut rng, 0, 3, 5));
        check_reduction(&z, &x);
    }
    check_reduction(&z, &c(&z, 1));
    assert!(z.reduce(&c(&z, 1)).object.is_zero_object());
}

fn check_reduction<R: trienv::Ring>(ctx: &Context<R>, x: &Arc<Complex<R::Elem>>) {
    let red = ctx.reduce(x);
    assert!(ctx.is_valid_complex(&red.object));
    assert!(ctx.is_chain_map(&red.to_reduced));
    assert!(ctx.is_chain_map(&red.from_reduced));
    assert!(ctx
        .verify_retract(&red.from_reduced, &red.to_reduced)
        .is_some());
    assert!(ctx
        .verify_retract(&red.to_reduced, &red.from_reduced)
        .is_some());
    assert!(red.object.total_rank() <= x.total_rank());
}

#[test]
fn direct_sum_maps_round_trip() {
    let k = field(3);
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let parts: Vec<Arc<Complex<u64>>> =
        (0..3).map(|_| random_field_complex(&k, &mut rng)).collect();
    let sum = k.direct_sum(&parts);
    for (i, part) in parts.iter().enumerate() {
        let pi = &sum.projections[i];
        let ii = &sum.injections[i];
        assert_eq!(k.compose(pi, ii).unwrap(), k.identity(part));
    }
    let back = k.map_from_sum(&sum, &sum.injections, &sum.object).unwrap();
    assert_eq!(back, k.identity(&sum.object));
    let forth = k.map_to_sum(&sum.object, &sum, &sum.projections).unwrap();
    assert_eq!(forth, k.identity(&sum.object));
}
