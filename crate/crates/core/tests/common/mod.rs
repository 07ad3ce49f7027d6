#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use trienv::algebra::make_algebra;
use trienv::exactlin::{FieldSpec, Integers, PrimeField};
use trienv::homotopy::{Complex, Context};

pub type IntCtx = Context<Integers>;
pub type FieldCtx = Context<PrimeField>;

pub fn integers() -> IntCtx {
    Context::over_base(Integers)
}

pub fn field(p: u64) -> FieldCtx {
    Context::over_base(PrimeField::new(FieldSpec::new(p).unwrap()))
}

/// F_2[x]/(x^2) with basis (1, x).
pub fn dual_numbers() -> FieldCtx {
    let ring = PrimeField::new(FieldSpec::new(2).unwrap());
    let mut mult = vec![0u64; 8];
    mult[0] = 1; // 1·1 = 1
    mult[3] = 1; // 1·x = x
    mult[5] = 1; // x·1 = x
    let alg = make_algebra(&ring, 2, vec![1, 0], mult).unwrap();
    Context::new(ring, alg)
}

/// `Z --m--> Z` in degrees 0, 1.
pub fn c(ctx: &IntCtx, m: i64) -> Arc<Complex<BigInt>> {
    Arc::new(ctx.two_term(0, ctx.scalar_map(&[vec![m]])).unwrap())
}

pub fn free<R: trienv::Ring>(ctx: &Context<R>, rank: usize, degree: i64) -> Arc<Complex<R::Elem>> {
    Arc::new(ctx.free_in_degree(rank, degree))
}

/// `A --x--> A` in degrees 0, 1 over the dual numbers.
pub fn p_complex(ctx: &FieldCtx) -> Arc<Complex<u64>> {
    let x = ctx.element_map(&[vec![vec![0, 1]]]);
    Arc::new(ctx.two_term(0, x).unwrap())
}
