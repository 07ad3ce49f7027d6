use std::sync::Arc;

use rayon::prelude::*;

use super::TowerState;
use crate::exactlin::{FgAbelianGroup, Ring};
use crate::homotopy::{Complex, Context, HomSpace};

/// `Hom(T, Y_n)` and the image of `Hom(T, Y_n) → Hom(T, Y_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorEntry {
    pub stage: usize,
    pub group: FgAbelianGroup,
    /// `None` at the top of the tower.
    pub connecting_image: Option<FgAbelianGroup>,
}

impl<R: Ring> Context<R> {
    /// Table of `Hom(T, Y_n)` for each probe `T` and each stage `n`.
    pub fn functor_values(
        &self,
        state: &TowerState<R::Elem>,
        probes: &[Arc<Complex<R::Elem>>],
    ) -> Vec<Vec<FunctorEntry>> {
        probes
            .par_iter()
            .map(|t| self.functor_row(state, t))
            .collect()
    }

    fn functor_row(
        &self,
        state: &TowerState<R::Elem>,
        t: &Arc<Complex<R::Elem>>,
    ) -> Vec<FunctorEntry> {
        let homs: Vec<HomSpace<R::Elem>> = (0..=state.height())
            .map(|n| self.hom_space(t, state.object(n)))
            .collect();
        (0..homs.len())
            .map(|n| {
                let connecting_image = homs.get(n + 1).map(|next| {
                    let alpha = &state.stages[n].alpha;
                    let images: Vec<_> = homs[n]
                        .generators()
                        .iter()
                        .map(|g| self.compose(alpha, g).expect("composable"))
                        .collect();
                    self.generated_subgroup(next, &images)
                });
                FunctorEntry {
                    stage: n,
                    group: homs[n].group().clone(),
                    connecting_image,
                }
            })
            .collect()
    }
}
