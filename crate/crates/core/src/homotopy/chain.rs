use std::borrow::Cow;
use std::sync::Arc;

use super::{Complex, Context, HomotopyError, ModuleMap};
use crate::exactlin::Ring;

/// Degreewise maps `f^d : X^d → Y^d`, one per degree of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap<E> {
    source: Arc<Complex<E>>,
    target: Arc<Complex<E>>,
    components: Vec<ModuleMap<E>>,
}

/// Degree-lowering maps `h^d : X^d → Y^{d-1}`, one per degree of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homotopy<E> {
    source: Arc<Complex<E>>,
    target: Arc<Complex<E>>,
    components: Vec<ModuleMap<E>>,
}

macro_rules! graded_accessors {
    ($ty:ident) => {
        impl<E: Clone> $ty<E> {
            pub fn source(&self) -> &Arc<Complex<E>> {
                &self.source
            }

            pub fn target(&self) -> &Arc<Complex<E>> {
                &self.target
            }

            /// Stored component at `degree` (must be a source degree).
            pub fn stored(&self, degree: i64) -> Option<&ModuleMap<E>> {
                if degree < self.source.lo() || degree >= self.source.hi() {
                    return None;
                }
                self.components.get((degree - self.source.lo()) as usize)
            }

            pub fn components(&self) -> &[ModuleMap<E>] {
                &self.components
            }

            /// Concatenated coordinates of all components.
            pub fn flatten(&self) -> Vec<E> {
                self.components
                    .iter()
                    .flat_map(|m| m.coords().iter().cloned())
                    .collect()
            }
        }
    };
}

graded_accessors!(ChainMap);
graded_accessors!(Homotopy);

impl<R: Ring> Context<R> {
    pub fn component<'a>(
        &self,
        f: &'a ChainMap<R::Elem>,
        degree: i64,
    ) -> Cow<'a, ModuleMap<R::Elem>> {
        match f.stored(degree) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(self.zero_module_map(f.target.rank(degree), f.source.rank(degree))),
        }
    }

    pub fn homotopy_component<'a>(
        &self,
        h: &'a Homotopy<R::Elem>,
        degree: i64,
    ) -> Cow<'a, ModuleMap<R::Elem>> {
        match h.stored(degree) {
            Some(m) => Cow::Borrowed(m),
            None => {
                Cow::Owned(self.zero_module_map(h.target.rank(degree - 1), h.source.rank(degree)))
            }
        }
    }

    /// Validated chain map: component shapes and `d_Y ∘ f = f ∘ d_X`.
    pub fn chain_map(
        &self,
        source: Arc<Complex<R::Elem>>,
        target: Arc<Complex<R::Elem>>,
        components: Vec<ModuleMap<R::Elem>>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        let f = self.chain_map_unchecked(source, target, components)?;
        if let Some(degree) = self.commutation_failure(&f) {
            return Err(HomotopyError::NotAChainMap { degree });
        }
        Ok(f)
    }

    /// Checks shapes only.
    pub fn chain_map_unchecked(
        &self,
        source: Arc<Complex<R::Elem>>,
        target: Arc<Complex<R::Elem>>,
        components: Vec<ModuleMap<R::Elem>>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        check_shapes(self, &source, &target, &components, 0)?;
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    pub fn homotopy(
        &self,
        source: Arc<Complex<R::Elem>>,
        target: Arc<Complex<R::Elem>>,
        components: Vec<ModuleMap<R::Elem>>,
    ) -> Result<Homotopy<R::Elem>, HomotopyError> {
        check_shapes(self, &source, &target, &components, 1)?;
        Ok(Homotopy {
            source,
            target,
            components,
        })
    }

    /// First degree where `d_Y ∘ f^d ≠ f^{d+1} ∘ d_X`, if any.
    pub fn commutation_failure(&self, f: &ChainMap<R::Elem>) -> Option<i64> {
        let lo = f.source.lo().min(f.target.lo()) - 1;
        let hi = f.source.hi().max(f.target.hi()) + 1;
        (lo..hi).find(|&d| {
            let left = self.compose_module_maps(&self.diff(&f.target, d), &self.component(f, d));
            let right =
                self.compose_module_maps(&self.component(f, d + 1), &self.diff(&f.source, d));
            left != right
        })
    }

    pub fn is_chain_map(&self, f: &ChainMap<R::Elem>) -> bool {
        check_shapes(self, &f.source, &f.target, &f.components, 0).is_ok()
            && self.commutation_failure(f).is_none()
    }

    pub fn identity(&self, x: &Arc<Complex<R::Elem>>) -> ChainMap<R::Elem> {
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components: x
                .degrees()
                .map(|d| self.identity_module_map(x.rank(d)))
                .collect(),
        }
    }

    pub fn zero_map(
        &self,
        source: &Arc<Complex<R::Elem>>,
        target: &Arc<Complex<R::Elem>>,
    ) -> ChainMap<R::Elem> {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: source
                .degrees()
                .map(|d| self.zero_module_map(target.rank(d), source.rank(d)))
                .collect(),
        }
    }

    pub fn zero_homotopy(
        &self,
        source: &Arc<Complex<R::Elem>>,
        target: &Arc<Complex<R::Elem>>,
    ) -> Homotopy<R::Elem> {
        Homotopy {
            source: source.clone(),
            target: target.clone(),
            components: source
                .degrees()
                .map(|d| self.zero_module_map(target.rank(d - 1), source.rank(d)))
                .collect(),
        }
    }

    /// Map with components given by a function of the degree.
    pub(crate) fn map_from_fn(
        &self,
        source: &Arc<Complex<R::Elem>>,
        target: &Arc<Complex<R::Elem>>,
        component: impl Fn(i64) -> ModuleMap<R::Elem>,
    ) -> ChainMap<R::Elem> {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: source.degrees().map(component).collect(),
        }
    }

    /// `g ∘ f`.
    pub fn compose(
        &self,
        g: &ChainMap<R::Elem>,
        f: &ChainMap<R::Elem>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        if f.target != g.source {
            return Err(HomotopyError::Mismatch(
                "composition: target of the first map is not the source of the second".into(),
            ));
        }
        Ok(self.map_from_fn(&f.source, &g.target, |d| {
            self.compose_module_maps(&self.component(g, d), &self.component(f, d))
        }))
    }

    fn check_parallel(
        &self,
        f: &ChainMap<R::Elem>,
        g: &ChainMap<R::Elem>,
    ) -> Result<(), HomotopyError> {
        if f.source != g.source || f.target != g.target {
            return Err(HomotopyError::Mismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add_maps(
        &self,
        f: &ChainMap<R::Elem>,
        g: &ChainMap<R::Elem>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        self.check_parallel(f, g)?;
        Ok(self.map_from_fn(&f.source, &f.target, |d| {
            self.add_module_maps(&self.component(f, d), &self.component(g, d))
        }))
    }

    pub fn sub_maps(
        &self,
        f: &ChainMap<R::Elem>,
        g: &ChainMap<R::Elem>,
    ) -> Result<ChainMap<R::Elem>, HomotopyError> {
        self.check_parallel(f, g)?;
        Ok(self.map_from_fn(&f.source, &f.target, |d| {
            self.add_module_maps(
                &self.component(f, d),
                &self.neg_module_map(&self.component(g, d)),
            )
        }))
    }

    pub fn scale_map(&self, f: &ChainMap<R::Elem>, s: &R::Elem) -> ChainMap<R::Elem> {
        self.map_from_fn(&f.source, &f.target, |d| {
            self.scale_module_map(&self.component(f, d), s)
        })
    }

    pub fn is_zero_map(&self, f: &ChainMap<R::Elem>) -> bool {
        f.components.iter().all(|m| self.module_map_is_zero(m))
    }

    /// `f[m]`, with components `f[m]^d = f^{d+m}` (no sign).
    pub fn shift_map(&self, f: &ChainMap<R::Elem>, m: i64) -> ChainMap<R::Elem> {
        ChainMap {
            source: Arc::new(self.shift(&f.source, m)),
            target: Arc::new(self.shift(&f.target, m)),
            components: f.components.clone(),
        }
    }

    /// `d_Y ∘ h + h ∘ d_X`, computed directly from the components.
    pub fn homotopy_boundary(&self, h: &Homotopy<R::Elem>) -> ChainMap<R::Elem> {
        self.map_from_fn(&h.source, &h.target, |d| {
            let a = self
                .compose_module_maps(&self.diff(&h.target, d - 1), &self.homotopy_component(h, d));
            let b = self
                .compose_module_maps(&self.homotopy_component(h, d + 1), &self.diff(&h.source, d));
            self.add_module_maps(&a, &b)
        })
    }

    /// Whether `h` witnesses `f ~ 0`.
    pub fn witnesses_null_homotopy(&self, f: &ChainMap<R::Elem>, h: &Homotopy<R::Elem>) -> bool {
        h.source == f.source && h.target == f.target && self.homotopy_boundary(h) == *f
    }
}

fn check_shapes<R: Ring>(
    ctx: &Context<R>,
    source: &Complex<R::Elem>,
    target: &Complex<R::Elem>,
    components: &[ModuleMap<R::Elem>],
    lowering: i64,
) -> Result<(), HomotopyError> {
    let expected = source.degrees().count();
    if components.len() != expected {
        return Err(HomotopyError::Shape(format!(
            "{} components supplied for {} source degrees",
            components.len(),
            expected
        )));
    }
    for (d, c) in source.degrees().zip(components) {
        let rows = target.rank(d - lowering);
        let cols = source.rank(d);
        if c.rows() != rows || c.cols() != cols || c.dim() != ctx.dim() {
            return Err(HomotopyError::Shape(format!(
                "component at degree {d} is {}x{}, expected {rows}x{cols}",
                c.rows(),
                c.cols()
            )));
        }
    }
    Ok(())
}
