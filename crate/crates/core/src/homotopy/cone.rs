use std::sync::Arc;

use super::{ChainMap, Complex, Context, HomotopyError};
use crate::exactlin::Ring;

/// Standard distinguished triangle `X --f--> Y --incl--> C --proj--> X[1]`.
#[derive(Clone, Debug)]
pub struct Cone<E> {
    pub object: Arc<Complex<E>>,
    pub incl: ChainMap<E>,
    pub proj: ChainMap<E>,
}

/// Direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum<E> {
    pub object: Arc<Complex<E>>,
    pub summands: Vec<Arc<Complex<E>>>,
    pub injections: Vec<ChainMap<E>>,
    pub projections: Vec<ChainMap<E>>,
}

impl<R: Ring> Context<R> {
    /// `Cone(f)^d = X^{d+1} ⊕ Y^d` with differential `[[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self, f: &ChainMap<R::Elem>) -> Cone<R::Elem> {
        let x = f.source();
        let y = f.target();
        let lo = (x.lo() - 1).min(y.lo());
        let hi = (x.hi() - 1).max(y.hi());
        let object = Arc::new(self.assemble(
            lo,
            hi,
            |d| x.rank(d + 1) + y.rank(d),
            |d| {
                let rows = [x.rank(d + 2), y.rank(d + 1)];
                let cols = [x.rank(d + 1), y.rank(d)];
                self.block_module_map(&rows, &cols, |bi, bj| match (bi, bj) {
                    (0, 0) => Some(self.neg_module_map(&self.diff(x, d + 1))),
                    (1, 0) => Some(self.component(f, d + 1).into_owned()),
                    (1, 1) => Some(self.diff(y, d).into_owned()),
                    _ => None,
                })
            },
        ));
        let incl = self.map_from_fn(y, &object, |d| {
            self.block_module_map(&[x.rank(d + 1), y.rank(d)], &[y.rank(d)], |bi, _| {
                (bi == 1).then(|| self.identity_module_map(y.rank(d)))
            })
        });
        let shifted = Arc::new(self.shift(x, 1));
        let proj = self.map_from_fn(&object, &shifted, |d| {
            self.block_module_map(&[x.rank(d + 1)], &[x.rank(d + 1), y.rank(d)], |_, bj| {
                (bj == 0).then(|| self.identity_module_map(x.rank(d + 1)))
            })
        });
        Cone { object, incl, proj }
    }

    /// Comparison maps between `Cone(incl_f)` and `X[1]` for the rotated
    /// triangle: `φ = (0, id, 0)` and `ψ = (-f, id, 0)`.
    pub fn rotation_comparison(
        &self,
        f: &ChainMap<R::Elem>,
    ) -> (Cone<R::Elem>, ChainMap<R::Elem>, ChainMap<R::Elem>) {
        let x = f.source();
        let y = f.target();
        let first = self.cone(f);
        let second = self.cone(&first.incl);
        let shifted = Arc::new(self.shift(x, 1));
        let sizes = |d: i64| [y.rank(d + 1), x.rank(d + 1), y.rank(d)];
        let phi = self.map_from_fn(&second.object, &shifted, |d| {
            self.block_module_map(&[x.rank(d + 1)], &sizes(d), |_, bj| {
                (bj == 1).then(|| self.identity_module_map(x.rank(d + 1)))
            })
        });
        let psi = self.map_from_fn(&shifted, &second.object, |d| {
            self.block_module_map(&sizes(d), &[x.rank(d + 1)], |bi, _| match bi {
                0 => Some(self.neg_module_map(&self.component(f, d + 1))),
                1 => Some(self.identity_module_map(x.rank(d + 1))),
                _ => None,
            })
        });
        (second, phi, psi)
    }

    pub fn direct_sum(&self, summands: &[Arc<Complex<R::Elem>>]) -> DirectSum<R::Elem> {
        let nonzero: Vec<&Arc<Complex<R::Elem>>> =
            summands.iter().filter(|s| !s.is_zero_object()).collect();
        let lo = nonzero.iter().map(|s| s.lo()).min().unwrap_or(0);
        let hi = nonzero.iter().map(|s| s.hi()).max().unwrap_or(0);
        let object = Arc::new(self.assemble(
            lo,
            hi,
            |d| summands.iter().map(|s| s.rank(d)).sum(),
            |d| {
                let rows: Vec<usize> = summands.iter().map(|s| s.rank(d + 1)).collect();
                let cols: Vec<usize> = summands.iter().map(|s| s.rank(d)).collect();
                self.block_module_map(&rows, &cols, |bi, bj| {
                    (bi == bj).then(|| self.diff(&summands[bi], d).into_owned())
                })
            },
        ));
        let sizes = |d: i64| -> Vec<usize> { summands.iter().map(|s| s.rank(d)).collect() };
        let injections = (0..summands.len())
            .map(|i| {
                self.map_from_fn(&summands[i], &object, |d| {
                    let s = sizes(d);
                    self.block_module_map(&s, &[s[i]], |bi, _| {
                        (bi == i).then(|| self.identity_module_map(s[i]))
                    })
                })
            })
            .collect();
        let projections = (0..summands.len())
            .map(|i| {
                self.map_from_fn(&object, &summands[i], |d| {
                    let s = sizes(d);
                    self.block_module_map(&[s[i]], &s, |_, bj| {
                        (bj == i).then(|| self.identity_module_map(s[i]))
                    })
                })
            })
            .collect();
        DirectSum {
            object,
            summands: summands.to_vec(),
            injections,
            projections,
        }
    }

    /// The map `⊕ X_i → Y` restricting to `maps[i]` on summand `i`.
    pub fn map_from_sum(
        &self,
        sum: &DirectSum<R::Elem>,
        maps: &[ChainMap<R::Elem>],
        target: &Arc<Complex<R::Elem>>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        if maps.len() != sum.summands.len()
            || maps
                .iter()
                .zip(&sum.summands)
                .any(|(m, s)| m.source() != s || m.target() != target)
        {
            return Err(HomotopyError::Mismatch(
                "maps do not match the summands".into(),
            ));
        }
        Ok(self.map_from_fn(&sum.object, target, |d| {
            let cols: Vec<usize> = sum.summands.iter().map(|s| s.rank(d)).collect();
            self.block_module_map(&[target.rank(d)], &cols, |_, bj| {
                Some(self.component(&maps[bj], d).into_owned())
            })
        }))
    }

    /// The map `X → ⊕ Y_i` with components `maps[i]`.
    pub fn map_to_sum(
        &self,
        source: &Arc<Complex<R::Elem>>,
        sum: &DirectSum<R::Elem>,
        maps: &[ChainMap<R::Elem>],
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        if maps.len() != sum.summands.len()
            || maps
                .iter()
                .zip(&sum.summands)
                .any(|(m, s)| m.target() != s || m.source() != source)
        {
            return Err(HomotopyError::Mismatch(
                "maps do not match the summands".into(),
            ));
        }
        Ok(self.map_from_fn(source, &sum.object, |d| {
            let rows: Vec<usize> = sum.summands.iter().map(|s| s.rank(d)).collect();
            self.block_module_map(&rows, &[source.rank(d)], |bi, _| {
                Some(self.component(&maps[bi], d).into_owned())
            })
        }))
    }
}
