use std::sync::Arc;

use super::{ChainMap, Complex, Context, ModuleMap};
use crate::algebra;
use crate::exactlin::Ring;

/// A homotopy equivalence `X ≃ X'` obtained by cancelling invertible
/// differential entries, with both comparison maps.
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    pub object: Arc<Complex<E>>,
    pub to_reduced: ChainMap<E>,
    pub from_reduced: ChainMap<E>,
}

impl<R: Ring> Context<R> {
    /// Repeatedly cancels a unit entry of some differential (Gaussian
    /// elimination). Over a field with the trivial algebra the result has
    /// zero differential; in general no differential entry is a unit.
    pub fn reduce(&self, x: &Arc<Complex<R::Elem>>) -> Reduction<R::Elem> {
        let mut current = x.clone();
        let mut to = self.identity(x);
        let mut from = self.identity(x);
        while let Some((k, i, j, uinv)) = self.find_unit_entry(&current) {
            let (next, f, g) = self.eliminate(&current, k, i, j, &uinv);
            to = self.compose(&f, &to).expect("composable");
            from = self.compose(&from, &g).expect("composable");
            current = next;
        }
        Reduction {
            object: current,
            to_reduced: to,
            from_reduced: from,
        }
    }

    fn find_unit_entry(&self, x: &Complex<R::Elem>) -> Option<(i64, usize, usize, Vec<R::Elem>)> {
        for k in x.degrees() {
            let Some(d) = x.stored_diff(k) else { continue };
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let e = d.entry(i, j);
                    if e.iter().all(|c| self.ring().is_zero(c)) {
                        continue;
                    }
                    if let Some(inv) = algebra::inverse(self.ring(), self.algebra(), e) {
                        return Some((k, i, j, inv));
                    }
                }
            }
        }
        None
    }

    #[allow(clippy::type_complexity)]
    fn eliminate(
        &self,
        x: &Arc<Complex<R::Elem>>,
        k: i64,
        i: usize,
        j: usize,
        uinv: &[R::Elem],
    ) -> (Arc<Complex<R::Elem>>, ChainMap<R::Elem>, ChainMap<R::Elem>) {
        let dk = self.diff(x, k).into_owned();
        let (rk, rk1) = (x.rank(k), x.rank(k + 1));
        let phi_inv = {
            let mut m = self.zero_module_map(1, 1);
            m.set_entry(0, 0, uinv);
            m
        };
        // gamma: B1 → E, delta: D → B2, eps: D → E
        let gamma = dk.block(0, rk1, j, j + 1).remove_row_col(Some(i), None);
        let delta = dk.block(i, i + 1, 0, rk).remove_row_col(None, Some(j));
        let eps = dk.remove_row_col(Some(i), Some(j));
        let gamma_phi_inv = self.compose_module_maps(&gamma, &phi_inv);
        let correction = self.compose_module_maps(&gamma_phi_inv, &delta);
        let new_dk = self.add_module_maps(&eps, &self.neg_module_map(&correction));
        let phi_inv_delta = self.compose_module_maps(&phi_inv, &delta);

        let new_rank = |d: i64| {
            let r = x.rank(d);
            if d == k || d == k + 1 {
                r - 1
            } else {
                r
            }
        };
        let (lo, hi) = (x.lo(), x.hi());
        let ranks: Vec<usize> = (lo..hi).map(new_rank).collect();
        let diffs: Vec<ModuleMap<R::Elem>> = (lo..hi - 1)
            .map(|d| {
                let orig = self.diff(x, d).into_owned();
                if d == k - 1 {
                    orig.remove_row_col(Some(j), None)
                } else if d == k {
                    new_dk.clone()
                } else if d == k + 1 {
                    orig.remove_row_col(None, Some(i))
                } else {
                    orig
                }
            })
            .collect();
        let reduced = Arc::new(
            self.complex(lo, ranks, diffs)
                .expect("Gaussian elimination preserves d∘d = 0"),
        );

        let f = self.map_from_fn(x, &reduced, |d| {
            let id = self.identity_module_map(x.rank(d));
            if d == k {
                id.remove_row_col(Some(j), None)
            } else if d == k + 1 {
                let mut m = id.remove_row_col(Some(i), None);
                let neg = self.neg_module_map(&gamma_phi_inv);
                for r in 0..m.rows() {
                    m.set_entry(r, i, neg.entry(r, 0));
                }
                m
            } else {
                id
            }
        });
        let g = self.map_from_fn(&reduced, x, |d| {
            let id = self.identity_module_map(x.rank(d));
            if d == k {
                let mut m = id.remove_row_col(None, Some(j));
                let neg = self.neg_module_map(&phi_inv_delta);
                for c in 0..m.cols() {
                    m.set_entry(j, c, neg.entry(0, c));
                }
                m
            } else if d == k + 1 {
                id.remove_row_col(None, Some(i))
            } else {
                id
            }
        });
        (reduced, f, g)
    }
}
