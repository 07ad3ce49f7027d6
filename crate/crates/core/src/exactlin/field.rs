use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{is_prime, ExactError, FgAbelianGroup, Matrix, QuotientModule, Ring};

/// Characteristic of a prime field, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

/// The prime field `F_p`, elements stored as canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    spec: FieldSpec,
}

impl PrimeField {
    pub fn new(spec: FieldSpec) -> Self {
        PrimeField { spec }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.p
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(pow_mod(a, self.spec.p - 2, self.spec.p))
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Nullspace basis as columns, one per non-pivot column, in column order.
    pub kernel_basis: Matrix<u64>,
    pub reduced: Matrix<u64>,
}

pub fn rref_field(m: &Matrix<u64>, spec: FieldSpec) -> Rref {
    let field = PrimeField::new(spec);
    let p = spec.p;
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| *a.get(i, c) != 0) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = field.inv(*a.get(r, c)).expect("nonzero pivot");
        a.scale_row(&field, r, &inv);
        for i in 0..rows {
            if i != r {
                let f = *a.get(i, c);
                if f != 0 {
                    a.add_row_multiple(&field, i, r, &(p - f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel_basis = Matrix::zeros(&field, cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        kernel_basis.set(fc, k, 1);
        for (row, &pc) in pivots.iter().enumerate() {
            let v = *a.get(row, fc);
            if v != 0 {
                kernel_basis.set(pc, k, p - v);
            }
        }
    }
    Rref {
        rank: pivots.len(),
        pivots,
        kernel_basis,
        reduced: a,
    }
}

pub fn solve_field(
    a: &Matrix<u64>,
    b: &[u64],
    spec: FieldSpec,
) -> Result<Option<Vec<u64>>, ExactError> {
    if a.rows() != b.len() {
        return Err(ExactError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let aug = a.hstack(&Matrix::from_columns(b.len(), &[b.to_vec()]));
    let rref = rref_field(&aug, spec);
    if rref.pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![0u64; a.cols()];
    for (row, &pc) in rref.pivots.iter().enumerate() {
        x[pc] = *rref.reduced.get(row, a.cols());
    }
    Ok(Some(x))
}

/// Inverse of a square invertible matrix.
fn invert(field: &PrimeField, m: &Matrix<u64>) -> Matrix<u64> {
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(field, n));
    let rref = rref_field(&aug, field.spec);
    assert!(
        rref.rank == n && rref.pivots.iter().all(|&c| c < n),
        "matrix is not invertible"
    );
    rref.reduced.column_range(n, 2 * n)
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.spec.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.spec.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.spec.p - a) % self.spec.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.spec.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.spec.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn to_int(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }

    fn is_canonical(&self, n: &BigInt) -> bool {
        *n >= BigInt::from(0) && *n < BigInt::from(self.spec.p)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn label(&self) -> String {
        format!("F_{}", self.spec.p)
    }

    fn kernel(&self, m: &Matrix<u64>) -> (Matrix<u64>, Matrix<u64>) {
        let rref = rref_field(m, self.spec);
        let free: Vec<usize> = (0..m.cols()).filter(|c| !rref.pivots.contains(c)).collect();
        // basis vectors restrict to the identity on the free columns
        let coords = Matrix::from_fn(free.len(), m.cols(), |k, c| u64::from(free[k] == c));
        (rref.kernel_basis, coords)
    }

    fn solve(&self, a: &Matrix<u64>, b: &[u64]) -> Result<Option<Vec<u64>>, ExactError> {
        solve_field(a, b, self.spec)
    }

    fn quotient_module(&self, relations: &Matrix<u64>) -> QuotientModule<u64> {
        let k = relations.rows();
        let m = relations.cols();
        let aug = relations.hstack(&Matrix::identity(self, k));
        let rref = rref_field(&aug, self.spec);
        let rel_pivots: Vec<usize> = rref.pivots.iter().copied().filter(|&c| c < m).collect();
        let chosen: Vec<usize> = rref
            .pivots
            .iter()
            .copied()
            .filter(|&c| c >= m)
            .map(|c| c - m)
            .collect();
        let from_normal = Matrix::from_fn(k, chosen.len(), |i, j| u64::from(chosen[j] == i));
        let square = relations.select_columns(&rel_pivots).hstack(&from_normal);
        let inv = invert(self, &square);
        let to_normal = inv.row_range(rel_pivots.len(), k);
        QuotientModule {
            group: FgAbelianGroup::free(chosen.len()),
            to_normal,
            from_normal,
        }
    }

    fn subgroup(&self, vectors: &Matrix<u64>, _moduli: &[BigInt]) -> FgAbelianGroup {
        FgAbelianGroup::free(rref_field(vectors, self.spec).rank)
    }

    fn reduce_mod(&self, a: &u64, _modulus: &BigInt) -> u64 {
        *a
    }
}
