use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use super::GeneratorSet;
use crate::exactlin::{Matrix, Ring};
use crate::homotopy::{ChainMap, Complex, Context};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    /// Rounds of the extension step.
    pub max_depth: usize,
    /// Cones above this total rank are skipped (and counted).
    pub max_total_rank: usize,
    /// Largest number of classes enumerated for a single pair.
    pub max_classes: usize,
    pub max_pool: usize,
    /// Free coordinates range over `[-free_range, free_range]` in integer mode.
    pub free_range: i64,
}

impl OracleBounds {
    pub fn new(max_depth: usize, max_total_rank: usize) -> Self {
        OracleBounds {
            max_depth,
            max_total_rank,
            max_classes: 4096,
            max_pool: 4000,
            free_range: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub member: bool,
    /// Extension round at which `Y` was found to be a retract.
    pub found_at_depth: Option<usize>,
    pub pool_size: usize,
    /// Cones dropped for exceeding `max_total_rank`.
    pub skipped: usize,
    /// The closure stopped growing before `max_depth` with nothing skipped
    /// and every class enumerated, so `false` is exact.
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle bounds exceeded: {0}")]
    BoundsExceeded(String),
}

struct Round<E> {
    objects: Vec<Arc<Complex<E>>>,
    skipped: usize,
    /// No free coordinate was truncated to `free_range`.
    exhaustive: bool,
}

impl<R: Ring> Context<R> {
    /// Brute-force closure of `D ∪ {0}` under extensions (all classes
    /// `w : B[-1] → A` up to the bounds), with a retract test against every
    /// pool object. `true` is always backed by a verified retraction.
    pub fn oracle_member(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
        bounds: &OracleBounds,
    ) -> Result<OracleOutcome, OracleError> {
        let mut outcome = OracleOutcome {
            member: false,
            found_at_depth: None,
            pool_size: 0,
            skipped: 0,
            saturated: false,
        };
        let mut seen = HashSet::new();
        let mut pool: Vec<Arc<Complex<R::Elem>>> = Vec::new();
        for x in
            std::iter::once(Arc::new(Complex::zero())).chain(generators.elements().iter().cloned())
        {
            let reduced = self.reduce(&x).object;
            if seen.insert(reduced.clone()) {
                pool.push(reduced);
            }
        }
        let mut fresh = pool.clone();
        for depth in 0..=bounds.max_depth {
            if depth > 0 {
                let round = self.extension_round(&pool, bounds)?;
                outcome.skipped += round.skipped;
                fresh = round
                    .objects
                    .into_iter()
                    .filter(|x| seen.insert(x.clone()))
                    .collect();
                if fresh.is_empty() {
                    outcome.saturated = round.skipped == 0 && round.exhaustive;
                    break;
                }
                pool.extend(fresh.iter().cloned());
                if pool.len() > bounds.max_pool {
                    return Err(OracleError::BoundsExceeded(format!(
                        "pool grew past {} objects",
                        bounds.max_pool
                    )));
                }
            }
            if fresh
                .par_iter()
                .any(|p| self.retract_of_power(y, p).is_some())
            {
                outcome.member = true;
                outcome.found_at_depth = Some(depth);
                break;
            }
        }
        outcome.pool_size = pool.len();
        Ok(outcome)
    }

    fn extension_round(
        &self,
        pool: &[Arc<Complex<R::Elem>>],
        bounds: &OracleBounds,
    ) -> Result<Round<R::Elem>, OracleError> {
        let pairs: Vec<(usize, usize)> = (0..pool.len())
            .flat_map(|a| (0..pool.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| !pool[a].is_zero_object() && !pool[b].is_zero_object())
            .collect();
        let results: Vec<Result<Round<R::Elem>, OracleError>> = pairs
            .par_iter()
            .map(|&(a, b)| self.extensions_of(&pool[a], &pool[b], bounds))
            .collect();
        let mut out = Round {
            objects: Vec::new(),
            skipped: 0,
            exhaustive: true,
        };
        for r in results {
            let r = r?;
            out.skipped += r.skipped;
            out.exhaustive &= r.exhaustive;
            out.objects.extend(r.objects);
        }
        Ok(out)
    }

    /// Reduced cones of every enumerated class `w : B[-1] → A`; these sit in
    /// triangles `A → Cone(w) → B → A[1]`.
    fn extensions_of(
        &self,
        a: &Arc<Complex<R::Elem>>,
        b: &Arc<Complex<R::Elem>>,
        bounds: &OracleBounds,
    ) -> Result<Round<R::Elem>, OracleError> {
        if a.total_rank() + b.total_rank() > bounds.max_total_rank {
            return Ok(Round {
                objects: Vec::new(),
                skipped: 1,
                exhaustive: true,
            });
        }
        let shifted = Arc::new(self.shift(b, -1));
        let hom = self.hom_space(&shifted, a);
        let moduli = hom.group().moduli();
        let exhaustive = self.ring().is_field() || moduli.iter().all(|m| !m.is_zero());
        let ranges = self.coefficient_ranges(&moduli, bounds.free_range);
        let count = ranges
            .iter()
            .try_fold(1usize, |acc, r| acc.checked_mul(r.len()))
            .filter(|&c| c <= bounds.max_classes)
            .ok_or_else(|| {
                let group = if self.ring().is_field() {
                    format!("{}^{}", self.ring().label(), hom.dimension())
                } else {
                    hom.group().to_string()
                };
                OracleError::BoundsExceeded(format!(
                    "more than {} classes in Hom(B[-1], A) with group {group}",
                    bounds.max_classes
                ))
            })?;
        let mut out = Vec::with_capacity(count);
        let mut index = vec![0usize; ranges.len()];
        for _ in 0..count {
            let coeffs: Vec<R::Elem> = index
                .iter()
                .zip(&ranges)
                .map(|(&i, r)| self.ring().from_i64(r[i]))
                .collect();
            let w = self.combination(&hom, &coeffs);
            out.push(self.reduce(&self.cone(&w).object).object);
            for (slot, r) in index.iter_mut().zip(&ranges) {
                *slot += 1;
                if *slot < r.len() {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(Round {
            objects: out,
            skipped: 0,
            exhaustive,
        })
    }

    fn coefficient_ranges(&self, moduli: &[BigInt], free_range: i64) -> Vec<Vec<i64>> {
        let p = if self.ring().is_field() {
            Some(self.ring().to_int(&self.ring().neg(&self.ring().one())) + 1)
        } else {
            None
        };
        moduli
            .iter()
            .map(|m| {
                let order = if m.is_zero() {
                    p.clone()
                } else {
                    Some(m.clone())
                };
                match order.and_then(|o| o.to_i64()) {
                    Some(o) => (0..o).collect(),
                    None => (-free_range..=free_range).collect(),
                }
            })
            .collect()
    }

    /// A section `s : Y → P^m` and retraction `r` with `r ∘ s ~ id_Y`, where
    /// `s` collects the generators of `Hom(Y, P)`. Any retraction of `Y`
    /// through a power of `P` can be rewritten in this form, so this is
    /// exhaustive.
    pub fn retract_of_power(
        &self,
        y: &Arc<Complex<R::Elem>>,
        p: &Arc<Complex<R::Elem>>,
    ) -> Option<(ChainMap<R::Elem>, ChainMap<R::Elem>)> {
        let ring = self.ring();
        let into = self.hom_space(y, p);
        let back = self.hom_space(p, y);
        let end = self.hom_space(y, y);
        let (m, k) = (into.generators().len(), back.generators().len());
        let mut columns = Vec::new();
        for g in into.generators() {
            for t in back.generators() {
                let tg = self.compose(t, g).expect("composable");
                columns.push(self.class_coordinates(&end, &tg));
            }
        }
        let moduli = end.group().moduli();
        for (i, modulus) in moduli.iter().enumerate() {
            if !modulus.is_zero() {
                let mut col = vec![ring.zero(); moduli.len()];
                col[i] = ring.from_int(modulus);
                columns.push(col);
            }
        }
        let system = Matrix::from_columns(moduli.len(), &columns);
        let rhs = self.class_coordinates(&end, &self.identity(y));
        let coeffs = ring.solve(&system, &rhs).expect("consistent shapes")?;
        let retractions: Vec<ChainMap<R::Elem>> = (0..m)
            .map(|l| self.combination(&back, &coeffs[l * k..(l + 1) * k]))
            .collect();
        let sum = self.direct_sum(&vec![p.clone(); m]);
        let s = self
            .map_to_sum(y, &sum, into.generators())
            .expect("matching summands");
        let r = self
            .map_from_sum(&sum, &retractions, y)
            .expect("matching summands");
        self.verify_retract(&s, &r)?;
        Some((s, r))
    }
}
