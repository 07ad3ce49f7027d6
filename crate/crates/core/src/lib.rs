//! Exact computations in bounded homotopy categories of free modules over
//! finite-dimensional algebras: Hom spaces, cones, and thick-subcategory
//! membership with checkable certificates.

pub mod algebra;
pub mod envelope;
pub mod exactlin;
pub mod homotopy;
pub mod localize;
pub mod testing;

pub use exactlin::{FgAbelianGroup, Integers, PrimeField, Ring};
pub use homotopy::{ChainMap, Complex, Context, HomSpace, Homotopy, ModuleMap};

pub type FieldContext = Context<PrimeField>;
pub type IntContext = Context<Integers>;
pub type FieldComplex = Complex<u64>;
pub type IntComplex = Complex<num_bigint::BigInt>;
