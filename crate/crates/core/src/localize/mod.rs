//! Localization of integer coefficients at a prime, through Hom groups:
//! `Hom_p(X, Y) = Hom(X, Y) ⊗ Z_(p)`, and the local-global comparison of
//! envelope towers.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::envelope::{DeathCriterion, GeneratorSet, TowerReport};
use crate::exactlin::{factorize, is_prime, snf, ExactError, FgAbelianGroup, Integers, Matrix};
use crate::homotopy::{ChainMap, ClassOrder, Complex, Context, HomSpace, Homotopy};

type IntContext = Context<Integers>;
type IntComplex = Complex<BigInt>;

/// Localization at a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalizationContext {
    p: u64,
}

impl LocalizationContext {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if is_prime(p) {
            Ok(LocalizationContext { p })
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// A Hom group together with its localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedHomGroup {
    pub global: FgAbelianGroup,
    pub local: FgAbelianGroup,
    /// Order of each normal-form generator after localizing (0 = free,
    /// 1 = killed).
    pub generator_orders: Vec<BigInt>,
}

/// The `p`-primary part of `n` (`n ≠ 0`).
fn p_part(n: &BigInt, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut out = BigInt::one();
    while n.is_multiple_of(&p) {
        n /= &p;
        out *= &p;
    }
    out
}

/// Free rank kept; each invariant factor replaced by its `p`-primary part.
pub fn localize_group(g: &FgAbelianGroup, p: u64) -> FgAbelianGroup {
    let orders: Vec<BigInt> = g.moduli().iter().map(|m| localize_order(m, p)).collect();
    FgAbelianGroup::from_cyclic_orders(&orders)
}

fn localize_order(m: &BigInt, p: u64) -> BigInt {
    if m.is_zero() {
        BigInt::zero()
    } else {
        p_part(m, p)
    }
}

pub fn localize_hom(hom: &HomSpace<BigInt>, p: u64) -> LocalizedHomGroup {
    LocalizedHomGroup {
        global: hom.group().clone(),
        local: localize_group(hom.group(), p),
        generator_orders: hom
            .group()
            .moduli()
            .iter()
            .map(|m| localize_order(m, p))
            .collect(),
    }
}

/// The class of `f` has finite order prime to `p`, i.e. `s·f ~ 0` for some
/// `s ∉ (p)`.
pub fn is_zero_local(
    ctx: &IntContext,
    hom: &HomSpace<BigInt>,
    f: &ChainMap<BigInt>,
    p: u64,
) -> bool {
    local_killer(ctx, hom, f, p).is_some()
}

/// The order `s` of the class of `f`, when it is prime to `p`.
fn local_killer(
    ctx: &IntContext,
    hom: &HomSpace<BigInt>,
    f: &ChainMap<BigInt>,
    p: u64,
) -> Option<BigInt> {
    match ctx.class_order(hom, f) {
        ClassOrder::Finite(n) if n.gcd(&BigInt::from(p)).is_one() => Some(n),
        _ => None,
    }
}

/// Death test for the `p`-local tower: `α_{0,n}` vanishes after inverting
/// every integer prime to `p`.
pub struct LocalDeath {
    pub p: u64,
}

impl DeathCriterion<Integers> for LocalDeath {
    fn witness(
        &self,
        ctx: &IntContext,
        hom: &HomSpace<BigInt>,
        alpha: &ChainMap<BigInt>,
    ) -> Option<(BigInt, Homotopy<BigInt>)> {
        let s = local_killer(ctx, hom, alpha, self.p)?;
        let h = ctx
            .null_homotopy(&ctx.scale_map(alpha, &s))
            .expect("a multiple by the class order is null-homotopic");
        Some((s, h))
    }

    fn summarize(&self, group: &FgAbelianGroup) -> FgAbelianGroup {
        localize_group(group, self.p)
    }

    fn prime(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// The envelope tower on the same integer complexes, with `p`-local death.
pub fn check_membership_local(
    ctx: &IntContext,
    generators: &GeneratorSet<BigInt>,
    y: &Arc<IntComplex>,
    p: u64,
    max_stages: usize,
) -> TowerReport<BigInt> {
    ctx.run_tower(generators, y, max_stages, &LocalDeath { p })
}

fn as_matrix(m: &crate::homotopy::ModuleMap<BigInt>) -> Matrix<BigInt> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| m.entry(i, j)[0].clone())
}

/// Primes dividing a torsion coefficient of some `Hom(A, B)` with
/// `A, B ∈ D ∪ {Y}`, or an elementary divisor of some differential.
pub fn relevant_primes(
    ctx: &IntContext,
    generators: &GeneratorSet<BigInt>,
    y: &Arc<IntComplex>,
) -> Vec<u64> {
    let objects: Vec<Arc<IntComplex>> = generators
        .elements()
        .iter()
        .cloned()
        .chain(std::iter::once(y.clone()))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|a| (0..objects.len()).map(move |b| (a, b)))
        .collect();
    let mut primes: BTreeSet<u64> = pairs
        .par_iter()
        .map(|&(a, b)| {
            ctx.hom_space(&objects[a], &objects[b])
                .group()
                .torsion_primes()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    for x in &objects {
        for d in x.degrees() {
            let Some(m) = x.stored_diff(d) else { continue };
            for e in snf(&as_matrix(m)).elementary_divisors() {
                if e.is_zero() {
                    continue;
                }
                for (q, _) in factorize(&e) {
                    primes.insert(u64::try_from(&q).expect("prime fits in u64"));
                }
            }
        }
    }
    primes.into_iter().collect()
}

/// Global and `p`-local verdicts side by side.
#[derive(Clone, Debug)]
pub struct LocalGlobalReport {
    pub global: TowerReport<BigInt>,
    pub locals: Vec<(u64, TowerReport<BigInt>)>,
    /// Primes where the global tower found membership but the local one did
    /// not (or only later). Any entry is an internal fault.
    pub easy_direction_faults: Vec<u64>,
    /// Global verdict undetermined while every local tower reports Member.
    pub locals_suggest_membership: bool,
}

impl LocalGlobalReport {
    pub fn is_consistent(&self) -> bool {
        self.easy_direction_faults.is_empty()
    }
}

pub fn local_global_report(
    ctx: &IntContext,
    generators: &GeneratorSet<BigInt>,
    y: &Arc<IntComplex>,
    primes: &[u64],
    max_stages: usize,
) -> LocalGlobalReport {
    let global = ctx.check_membership(generators, y, max_stages);
    let locals: Vec<(u64, TowerReport<BigInt>)> = primes
        .par_iter()
        .map(|&p| (p, check_membership_local(ctx, generators, y, p, max_stages)))
        .collect();
    let easy_direction_faults = match global.member_stage() {
        Some(n) => locals
            .iter()
            .filter(|(_, r)| r.member_stage().is_none_or(|m| m > n))
            .map(|(p, _)| *p)
            .collect(),
        None => Vec::new(),
    };
    let locals_suggest_membership =
        !global.is_member() && !locals.is_empty() && locals.iter().all(|(_, r)| r.is_member());
    LocalGlobalReport {
        global,
        locals,
        easy_direction_faults,
        locals_suggest_membership,
    }
}
