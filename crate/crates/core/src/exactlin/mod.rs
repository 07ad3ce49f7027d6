//! Exact linear algebra over prime fields and the integers.
//!
//! Everything above this layer is written against the [`Ring`] context trait,
//! which bundles element arithmetic with the handful of linear-algebra
//! primitives the homotopy engine needs (kernels, exact solving, quotient
//! modules). The two implementations are [`PrimeField`] and [`Integers`].

mod field;
mod group;
mod integer;
mod matrix;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use thiserror::Error;

pub use field::{rref_field, solve_field, FieldSpec, PrimeField, Rref};
pub use group::{factorize, is_prime, FgAbelianGroup};
pub use integer::{abelian_group, snf, solve_integer, GroupChart, Integers, Smith};
pub use matrix::Matrix;

pub type IntMatrix = Matrix<BigInt>;
pub type FieldMatrix = Matrix<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("characteristic {0} is not a supported prime (need a prime 2 <= p < 65536)")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
}

/// `cycles / boundaries` for a pair of linear maps with `phi ∘ psi = 0`:
/// the kernel of `phi` modulo the image of `psi`, in normal form.
#[derive(Clone, Debug)]
pub struct Subquotient<E> {
    /// Basis of the cycle module as columns (ambient × k).
    pub cycles: Matrix<E>,
    /// Left inverse of `cycles` (k × ambient).
    pub cycle_coords: Matrix<E>,
    pub group: FgAbelianGroup,
    /// Normal-form coordinates from cycle coordinates (g × k).
    pub to_normal: Matrix<E>,
    /// Cycle coordinates of each normal-form generator (k × g).
    pub from_normal: Matrix<E>,
}

/// Normal form of `R^k / colspan(relations)`.
#[derive(Clone, Debug)]
pub struct QuotientModule<E> {
    pub group: FgAbelianGroup,
    pub to_normal: Matrix<E>,
    pub from_normal: Matrix<E>,
}

/// Coefficient ring context.
pub trait Ring: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + Display + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer in the ring (reduction mod p in field mode).
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Canonical integer representative (`[0, p)` in field mode).
    fn to_int(&self, a: &Self::Elem) -> BigInt;
    /// Whether the textual integer is already the canonical representative.
    fn is_canonical(&self, n: &BigInt) -> bool;
    fn is_field(&self) -> bool;
    /// Short label: `F_p` or `Z`.
    fn label(&self) -> String;

    /// Basis of the kernel (columns) together with a left inverse of it.
    /// Over the integers the basis spans the full (saturated) kernel lattice.
    fn kernel(&self, m: &Matrix<Self::Elem>) -> (Matrix<Self::Elem>, Matrix<Self::Elem>);
    /// Solve `a · x = b` exactly; `None` when no solution exists in the ring.
    fn solve(
        &self,
        a: &Matrix<Self::Elem>,
        b: &[Self::Elem],
    ) -> Result<Option<Vec<Self::Elem>>, ExactError>;
    /// Normal form of the quotient of `R^k` by the column span of `relations`.
    fn quotient_module(&self, relations: &Matrix<Self::Elem>) -> QuotientModule<Self::Elem>;
    /// Structure of the submodule generated by the columns of `vectors`,
    /// given in normal-form coordinates of a module with the stated moduli.
    fn subgroup(&self, vectors: &Matrix<Self::Elem>, moduli: &[BigInt]) -> FgAbelianGroup;
    /// Reduce a normal-form coordinate modulo its torsion order (0 = free).
    fn reduce_mod(&self, a: &Self::Elem, modulus: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    /// `ker(phi) / im(psi)`; requires `phi · psi = 0`.
    fn subquotient(
        &self,
        phi: &Matrix<Self::Elem>,
        psi: &Matrix<Self::Elem>,
    ) -> Subquotient<Self::Elem> {
        let (cycles, cycle_coords) = self.kernel(phi);
        let relations = cycle_coords.mul(self, psi);
        let q = self.quotient_module(&relations);
        Subquotient {
            cycles,
            cycle_coords,
            group: q.group,
            to_normal: q.to_normal,
            from_normal: q.from_normal,
        }
    }
}
