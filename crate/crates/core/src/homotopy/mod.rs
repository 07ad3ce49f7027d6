//! The homotopy category `K^b(free A)`: bounded complexes of free modules
//! over a coefficient context, with shifts, cones, sums, and exact Hom
//! spaces (chain maps modulo null-homotopic maps).
//!
//! Sign conventions: `X[1]^d = X^{d+1}` with `d_{X[1]} = -d_X`; the cone of
//! `f: X → Y` is `X^{d+1} ⊕ Y^d` with differential `[[-d_X, 0], [f, d_Y]]`.

mod chain;
mod complex;
mod cone;
mod hom;
mod modmap;
mod reduce;

use thiserror::Error;

use crate::algebra::{self, AlgebraPresentation};
use crate::exactlin::Ring;

pub use chain::{ChainMap, Homotopy};
pub use complex::Complex;
pub use cone::{Cone, DirectSum};
pub use hom::{ClassOrder, HomSpace};
pub use modmap::ModuleMap;
pub use reduce::Reduction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("d∘d is nonzero starting at degree {degree}")]
    DSquaredNonzero { degree: i64 },
    #[error("not a chain map: commutation fails at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Mismatch(String),
}

/// Coefficient context: a base ring and a free algebra over it. Complexes
/// are complexes of free modules over the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context<R: Ring> {
    ring: R,
    algebra: AlgebraPresentation<R::Elem>,
}

impl<R: Ring> Context<R> {
    pub fn new(ring: R, algebra: AlgebraPresentation<R::Elem>) -> Self {
        Context { ring, algebra }
    }

    /// Complexes of free modules over the base ring itself.
    pub fn over_base(ring: R) -> Self {
        let algebra = algebra::base_algebra(&ring);
        Context { ring, algebra }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn algebra(&self) -> &AlgebraPresentation<R::Elem> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Algebra element from coordinates given as integers.
    pub fn element(&self, coords: &[i64]) -> Vec<R::Elem> {
        assert_eq!(coords.len(), self.dim(), "element has wrong length");
        coords.iter().map(|&c| self.ring.from_i64(c)).collect()
    }

    /// `c · 1` for an integer `c`.
    pub fn scalar_element(&self, c: i64) -> Vec<R::Elem> {
        let s = self.ring.from_i64(c);
        self.algebra
            .unit()
            .iter()
            .map(|u| self.ring.mul(u, &s))
            .collect()
    }

    /// Module map from a grid of integer scalars (multiples of the unit).
    pub fn scalar_map(&self, rows: &[Vec<i64>]) -> ModuleMap<R::Elem> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = self.zero_module_map(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set_entry(i, j, &self.scalar_element(v));
            }
        }
        m
    }

    /// Module map from a grid of algebra elements.
    pub fn element_map(&self, rows: &[Vec<Vec<R::Elem>>]) -> ModuleMap<R::Elem> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = self.zero_module_map(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set_entry(i, j, v);
            }
        }
        m
    }
}
