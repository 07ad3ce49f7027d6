use std::sync::Arc;

use rayon::prelude::*;

use super::{GeneratorSet, MembershipCertificate};
use crate::exactlin::{FgAbelianGroup, Ring};
use crate::homotopy::{ChainMap, Complex, Context, HomSpace, Homotopy};

/// One stage `Y_{n-1} → Y_n` of the tower.
#[derive(Clone, Debug)]
pub struct Stage<E> {
    /// `Y_n`, the cone of `evaluation`.
    pub object: Arc<Complex<E>>,
    /// `α_{n-1} : Y_{n-1} → Y_n`, the cone inclusion.
    pub alpha: ChainMap<E>,
    /// `α_{0,n} : Y → Y_n`.
    pub alpha_total: ChainMap<E>,
    /// `⊕_e e^{|B_e|} → Y_{n-1}`.
    pub evaluation: ChainMap<E>,
    /// `Hom(e, Y_{n-1})` for each generator, in manifest order.
    pub hom_bases: Vec<HomSpace<E>>,
    /// Number of copies of each generator that were coned in.
    pub multiplicities: Vec<usize>,
}

impl<E> Stage<E> {
    /// No generator had a nonzero Hom into the previous stage.
    pub fn is_fixed_point(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 0)
    }
}

#[derive(Clone, Debug)]
pub struct TowerState<E> {
    pub generators: GeneratorSet<E>,
    pub base: Arc<Complex<E>>,
    pub stages: Vec<Stage<E>>,
}

impl<E: Clone> TowerState<E> {
    /// Number of completed steps `n` (the last object is `Y_n`).
    pub fn height(&self) -> usize {
        self.stages.len()
    }

    /// `Y_n` (`Y_0 = Y`).
    pub fn object(&self, n: usize) -> &Arc<Complex<E>> {
        if n == 0 {
            &self.base
        } else {
            &self.stages[n - 1].object
        }
    }

    pub fn top(&self) -> &Arc<Complex<E>> {
        self.object(self.height())
    }

    pub fn manifest(&self) -> Vec<Vec<usize>> {
        self.stages
            .iter()
            .map(|s| s.multiplicities.clone())
            .collect()
    }
}

/// Summary of `Hom(Y, Y_n)` and of the class of `α_{0,n}` in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageDiagnostics {
    pub stage: usize,
    pub total_rank: usize,
    pub multiplicities: Vec<usize>,
    pub hom_group: FgAbelianGroup,
    pub image: FgAbelianGroup,
    pub dead: bool,
}

#[derive(Clone, Debug)]
pub enum Verdict<E> {
    Member(Box<MembershipCertificate<E>>),
    Undetermined {
        /// First stage that was a fixed point, if the tower stabilized.
        stationary_at: Option<usize>,
    },
}

#[derive(Clone, Debug)]
pub struct TowerReport<E> {
    pub verdict: Verdict<E>,
    pub stages_run: usize,
    pub prime: Option<u64>,
    pub diagnostics: Vec<StageDiagnostics>,
}

impl<E> TowerReport<E> {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Verdict::Member(_))
    }

    pub fn certificate(&self) -> Option<&MembershipCertificate<E>> {
        match &self.verdict {
            Verdict::Member(c) => Some(c),
            Verdict::Undetermined { .. } => None,
        }
    }

    pub fn member_stage(&self) -> Option<usize> {
        self.certificate().map(|c| c.stage)
    }

    pub fn stationary_at(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Undetermined { stationary_at } => stationary_at,
            Verdict::Member(_) => None,
        }
    }
}

/// When `α_{0,n}` counts as zero.
pub trait DeathCriterion<R: Ring>: Sync {
    /// A scale `s` and homotopy `h` with `s·α = d h + h d`, if `α` vanishes.
    fn witness(
        &self,
        ctx: &Context<R>,
        hom: &HomSpace<R::Elem>,
        alpha: &ChainMap<R::Elem>,
    ) -> Option<(R::Elem, Homotopy<R::Elem>)>;

    /// The group reported in diagnostics.
    fn summarize(&self, group: &FgAbelianGroup) -> FgAbelianGroup;

    /// The prime, for localized criteria.
    fn prime(&self) -> Option<u64>;
}

/// Vanishing in the homotopy category itself.
pub struct GlobalDeath;

impl<R: Ring> DeathCriterion<R> for GlobalDeath {
    fn witness(
        &self,
        ctx: &Context<R>,
        _hom: &HomSpace<R::Elem>,
        alpha: &ChainMap<R::Elem>,
    ) -> Option<(R::Elem, Homotopy<R::Elem>)> {
        ctx.null_homotopy(alpha).map(|h| (ctx.ring().one(), h))
    }

    fn summarize(&self, group: &FgAbelianGroup) -> FgAbelianGroup {
        group.clone()
    }

    fn prime(&self) -> Option<u64> {
        None
    }
}

impl<R: Ring> Context<R> {
    pub fn tower_start(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
    ) -> TowerState<R::Elem> {
        TowerState {
            generators: generators.clone(),
            base: y.clone(),
            stages: Vec::new(),
        }
    }

    /// One more stage: cone off every class `e → Y_{n-1}` at once through
    /// the universal evaluation map.
    pub fn tower_step(&self, state: &TowerState<R::Elem>) -> TowerState<R::Elem> {
        let mut next = state.clone();
        self.advance(&mut next);
        next
    }

    pub(crate) fn advance(&self, state: &mut TowerState<R::Elem>) {
        let prev = state.top().clone();
        let hom_bases: Vec<HomSpace<R::Elem>> = state
            .generators
            .elements()
            .par_iter()
            .map(|e| self.hom_space(e, &prev))
            .collect();
        let multiplicities: Vec<usize> = hom_bases.iter().map(HomSpace::dimension).collect();
        let mut summands = Vec::new();
        let mut maps = Vec::new();
        for (e, hom) in state.generators.elements().iter().zip(&hom_bases) {
            for g in hom.generators() {
                summands.push(e.clone());
                maps.push(g.clone());
            }
        }
        let sum = self.direct_sum(&summands);
        let evaluation = self
            .map_from_sum(&sum, &maps, &prev)
            .expect("generators map into the previous stage");
        let cone = self.cone(&evaluation);
        let alpha_total = match state.stages.last() {
            Some(s) => self
                .compose(&cone.incl, &s.alpha_total)
                .expect("tower maps compose"),
            None => cone.incl.clone(),
        };
        state.stages.push(Stage {
            object: cone.object,
            alpha: cone.incl,
            alpha_total,
            evaluation,
            hom_bases,
            multiplicities,
        });
    }

    /// `α_{0,n}` (`id_Y` for `n = 0`).
    pub fn tower_map(&self, state: &TowerState<R::Elem>, n: usize) -> ChainMap<R::Elem> {
        if n == 0 {
            self.identity(&state.base)
        } else {
            state.stages[n - 1].alpha_total.clone()
        }
    }

    /// Builds the tower to height `n`, stopping early at a fixed point.
    pub fn build_tower(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
        n: usize,
    ) -> TowerState<R::Elem> {
        let mut state = self.tower_start(generators, y);
        while state.height() < n {
            self.advance(&mut state);
            if state.stages.last().is_some_and(Stage::is_fixed_point) {
                break;
            }
        }
        state
    }

    pub fn check_membership(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
        max_stages: usize,
    ) -> TowerReport<R::Elem> {
        self.run_tower(generators, y, max_stages, &GlobalDeath)
    }

    /// Runs the tower under a given vanishing criterion. A `Member` verdict
    /// is only returned with a certificate that has been verified.
    pub fn run_tower(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
        max_stages: usize,
        criterion: &dyn DeathCriterion<R>,
    ) -> TowerReport<R::Elem> {
        let mut state = self.tower_start(generators, y);
        let mut diagnostics = Vec::new();
        let mut stationary_at = None;
        loop {
            let n = state.height();
            let alpha = self.tower_map(&state, n);
            let hom = self.hom_space(y, state.top());
            let image = self.generated_subgroup(&hom, std::slice::from_ref(&alpha));
            let witness = criterion.witness(self, &hom, &alpha);
            diagnostics.push(StageDiagnostics {
                stage: n,
                total_rank: state.top().total_rank(),
                multiplicities: state
                    .stages
                    .last()
                    .map_or_else(Vec::new, |s| s.multiplicities.clone()),
                hom_group: criterion.summarize(hom.group()),
                image: criterion.summarize(&image),
                dead: witness.is_some(),
            });
            if let Some((scale, h)) = witness {
                let cert = self.extract_certificate(&state, n, scale, criterion.prime(), h);
                self.verify_certificate(generators, y, &cert)
                    .unwrap_or_else(|fault| {
                        panic!("internal fault: fresh certificate rejected: {fault}")
                    });
                return TowerReport {
                    verdict: Verdict::Member(Box::new(cert)),
                    stages_run: n,
                    prime: criterion.prime(),
                    diagnostics,
                };
            }
            if stationary_at.is_some() || n >= max_stages {
                break;
            }
            self.advance(&mut state);
            if state.stages.last().is_some_and(Stage::is_fixed_point) {
                stationary_at = Some(state.height());
            }
        }
        TowerReport {
            verdict: Verdict::Undetermined { stationary_at },
            stages_run: state.height(),
            prime: criterion.prime(),
            diagnostics,
        }
    }
}
