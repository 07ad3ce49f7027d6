//! Finite-dimensional associative unital algebras given by structure
//! constants over the base ring. Integer mode only ever uses the ring itself.

mod quiver;

use thiserror::Error;

use crate::exactlin::{Matrix, Ring};

pub use quiver::{path_algebra, Arrow, QuiverPresentation, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure tensor has wrong shape: {0}")]
    Shape(String),
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    AssociativityViolation { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element {index} ({side} side)")]
    UnitViolation { index: usize, side: &'static str },
    #[error("quotient is not finite-dimensional: nonzero path of length {length} survives")]
    NotFiniteDimensional { length: usize },
    #[error("invalid quiver relation: {0}")]
    InvalidRelation(String),
}

/// Algebra with basis `b_0 .. b_{n-1}` and `b_i · b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation<E> {
    dim: usize,
    mult: Vec<E>,
    unit: Vec<E>,
}

impl<E: Clone> AlgebraPresentation<E> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[E] {
        &self.unit
    }

    /// Structure constant `c[i][j][k]`.
    pub fn structure(&self, i: usize, j: usize, k: usize) -> &E {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_tensor(&self) -> &[E] {
        &self.mult
    }
}

/// The base ring viewed as a one-dimensional algebra over itself.
pub fn base_algebra<R: Ring>(ring: &R) -> AlgebraPresentation<R::Elem> {
    AlgebraPresentation {
        dim: 1,
        mult: vec![ring.one()],
        unit: vec![ring.one()],
    }
}

pub fn make_algebra<R: Ring>(
    ring: &R,
    dim: usize,
    unit: Vec<R::Elem>,
    mult: Vec<R::Elem>,
) -> Result<AlgebraPresentation<R::Elem>, AlgebraError> {
    if dim == 0 {
        return Err(AlgebraError::Shape("dimension must be positive".into()));
    }
    if unit.len() != dim {
        return Err(AlgebraError::Shape(format!(
            "unit has {} coordinates, expected {dim}",
            unit.len()
        )));
    }
    if mult.len() != dim * dim * dim {
        return Err(AlgebraError::Shape(format!(
            "structure tensor has {} entries, expected {}",
            mult.len(),
            dim * dim * dim
        )));
    }
    let alg = AlgebraPresentation { dim, mult, unit };
    validate(ring, &alg)?;
    Ok(alg)
}

/// Full sweep: associativity on all basis triples, unit laws on all basis
/// elements.
pub fn validate<R: Ring>(ring: &R, alg: &AlgebraPresentation<R::Elem>) -> Result<(), AlgebraError> {
    let n = alg.dim;
    let basis = |i: usize| -> Vec<R::Elem> {
        (0..n)
            .map(|k| if k == i { ring.one() } else { ring.zero() })
            .collect()
    };
    for i in 0..n {
        let bi = basis(i);
        if mul(ring, alg, &alg.unit, &bi) != bi {
            return Err(AlgebraError::UnitViolation {
                index: i,
                side: "left",
            });
        }
        if mul(ring, alg, &bi, &alg.unit) != bi {
            return Err(AlgebraError::UnitViolation {
                index: i,
                side: "right",
            });
        }
    }
    for i in 0..n {
        let bi = basis(i);
        for j in 0..n {
            let bj = basis(j);
            let bij = mul(ring, alg, &bi, &bj);
            for k in 0..n {
                let bk = basis(k);
                let left = mul(ring, alg, &bij, &bk);
                let right = mul(ring, alg, &bi, &mul(ring, alg, &bj, &bk));
                if left != right {
                    return Err(AlgebraError::AssociativityViolation { i, j, k });
                }
            }
        }
    }
    Ok(())
}

pub fn mul<R: Ring>(
    ring: &R,
    alg: &AlgebraPresentation<R::Elem>,
    a: &[R::Elem],
    b: &[R::Elem],
) -> Vec<R::Elem> {
    let n = alg.dim;
    if n == 1 {
        return vec![ring.mul(&ring.mul(&a[0], &b[0]), &alg.mult[0])];
    }
    let mut out = vec![ring.zero(); n];
    for (s, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (t, y) in b.iter().enumerate() {
            if ring.is_zero(y) {
                continue;
            }
            let xy = ring.mul(x, y);
            for (k, slot) in out.iter_mut().enumerate() {
                let c = alg.structure(s, t, k);
                if !ring.is_zero(c) {
                    *slot = ring.add(slot, &ring.mul(&xy, c));
                }
            }
        }
    }
    out
}

/// Matrix of `x ↦ x · b` in basis coordinates.
pub fn right_mul_matrix<R: Ring>(
    ring: &R,
    alg: &AlgebraPresentation<R::Elem>,
    b: &[R::Elem],
) -> Matrix<R::Elem> {
    let n = alg.dim;
    Matrix::from_fn(n, n, |k, s| {
        let mut acc = ring.zero();
        for (t, bt) in b.iter().enumerate() {
            let c = alg.structure(s, t, k);
            if !ring.is_zero(c) && !ring.is_zero(bt) {
                acc = ring.add(&acc, &ring.mul(bt, c));
            }
        }
        acc
    })
}

/// Matrix of `x ↦ a · x` in basis coordinates.
pub fn left_mul_matrix<R: Ring>(
    ring: &R,
    alg: &AlgebraPresentation<R::Elem>,
    a: &[R::Elem],
) -> Matrix<R::Elem> {
    let n = alg.dim;
    Matrix::from_fn(n, n, |k, t| {
        let mut acc = ring.zero();
        for (s, as_) in a.iter().enumerate() {
            let c = alg.structure(s, t, k);
            if !ring.is_zero(c) && !ring.is_zero(as_) {
                acc = ring.add(&acc, &ring.mul(as_, c));
            }
        }
        acc
    })
}

/// Two-sided inverse of `a`, if `a` is a unit.
pub fn inverse<R: Ring>(
    ring: &R,
    alg: &AlgebraPresentation<R::Elem>,
    a: &[R::Elem],
) -> Option<Vec<R::Elem>> {
    // x · a = 1
    let m = right_mul_matrix(ring, alg, a);
    let x = ring.solve(&m, &alg.unit).ok()??;
    (mul(ring, alg, a, &x) == alg.unit).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{FieldSpec, Integers, PrimeField};

    fn f2() -> PrimeField {
        PrimeField::new(FieldSpec::new(2).unwrap())
    }

    pub(crate) fn dual_numbers_tensor() -> Vec<u64> {
        // basis (1, x): 1·1 = 1, 1·x = x, x·1 = x, x·x = 0
        let mut c = vec![0u64; 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        c[idx(0, 0, 0)] = 1;
        c[idx(0, 1, 1)] = 1;
        c[idx(1, 0, 1)] = 1;
        c
    }

    #[test]
    fn base_field_is_valid() {
        let f = f2();
        let alg = make_algebra(&f, 1, vec![1], vec![1]).unwrap();
        assert_eq!(alg, base_algebra(&f));
    }

    #[test]
    fn dual_numbers_validate() {
        let f = f2();
        let alg = make_algebra(&f, 2, vec![1, 0], dual_numbers_tensor()).unwrap();
        assert_eq!(mul(&f, &alg, &[0, 1], &[0, 1]), vec![0, 0]);
        assert_eq!(inverse(&f, &alg, &[1, 1]), Some(vec![1, 1]));
        assert_eq!(inverse(&f, &alg, &[0, 1]), None);
    }

    #[test]
    fn unit_violation_detected() {
        let f = f2();
        // claimed unit x in the dual numbers
        let err = make_algebra(&f, 2, vec![0, 1], dual_numbers_tensor()).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::UnitViolation {
                index: 0,
                side: "left"
            }
        );
        let err = make_algebra(&f, 2, vec![1], dual_numbers_tensor()).unwrap_err();
        assert!(matches!(err, AlgebraError::Shape(_)));
    }

    #[test]
    fn associativity_violation_reports_triple() {
        // unital but not associative: basis (e, a, b), a·a = b, a·b = e, b·a = 0
        let f = PrimeField::new(FieldSpec::new(5).unwrap());
        let n = 3;
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut c = vec![0u64; n * n * n];
        for t in 0..n {
            c[idx(0, t, t)] = 1;
            c[idx(t, 0, t)] = 1;
        }
        c[idx(1, 1, 2)] = 1; // a·a = b
        c[idx(1, 2, 0)] = 1; // a·b = e
                             // b·a = 0: (a·a)·a = 0 but a·(a·a) = e
        let err = make_algebra(&f, n, vec![1, 0, 0], c).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::AssociativityViolation { i: 1, j: 1, k: 1 }
        );
    }

    #[test]
    fn integer_units() {
        let z = Integers;
        let alg = base_algebra(&z);
        use num_bigint::BigInt;
        assert_eq!(
            inverse(&z, &alg, &[BigInt::from(-1)]),
            Some(vec![BigInt::from(-1)])
        );
        assert_eq!(inverse(&z, &alg, &[BigInt::from(2)]), None);
    }
}
