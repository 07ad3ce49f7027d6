use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, FgAbelianGroup, Matrix, QuotientModule, Ring};

/// The ring of integers, arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

/// Smith decomposition `A = left · diagonal · right` with `left`, `right`
/// unimodular; `left_inv · A · right_inv = diagonal`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: Matrix<BigInt>,
    pub diagonal: Matrix<BigInt>,
    pub right: Matrix<BigInt>,
    pub left_inv: Matrix<BigInt>,
    pub right_inv: Matrix<BigInt>,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...` (units included).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| self.diagonal.get(i, i).clone())
            .collect()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
pub fn snf(a: &Matrix<BigInt>) -> Smith {
    let z = Integers;
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = Matrix::identity(&z, m);
    let mut pinv = Matrix::identity(&z, m);
    let mut q = Matrix::identity(&z, n);
    let mut qinv = Matrix::identity(&z, n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = d.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| v.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, p, pinv, q, qinv, rank);
            };
            d.swap_rows(t, bi);
            p.swap_rows(t, bi);
            pinv.swap_cols(t, bi);
            d.swap_cols(t, bj);
            q.swap_cols(t, bj);
            qinv.swap_rows(t, bj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let quot = d.get(i, t).div_floor(&pivot);
                if !quot.is_zero() {
                    let neg = -&quot;
                    d.add_row_multiple(&z, i, t, &neg);
                    p.add_row_multiple(&z, i, t, &neg);
                    pinv.add_col_multiple(&z, t, i, &quot);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let quot = d.get(t, j).div_floor(&pivot);
                if !quot.is_zero() {
                    let neg = -&quot;
                    d.add_col_multiple(&z, j, t, &neg);
                    q.add_col_multiple(&z, j, t, &neg);
                    qinv.add_row_multiple(&z, t, j, &quot);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let one = BigInt::one();
                d.add_row_multiple(&z, t, i, &one);
                p.add_row_multiple(&z, t, i, &one);
                pinv.add_col_multiple(&z, i, t, &-one);
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            let minus = -BigInt::one();
            d.scale_row(&z, t, &minus);
            p.scale_row(&z, t, &minus);
            pinv.scale_col(&z, t, &minus);
        }
        rank = t + 1;
    }
    finish(d, p, pinv, q, qinv, rank)
}

fn finish(
    d: Matrix<BigInt>,
    p: Matrix<BigInt>,
    pinv: Matrix<BigInt>,
    q: Matrix<BigInt>,
    qinv: Matrix<BigInt>,
    rank: usize,
) -> Smith {
    Smith {
        left: pinv,
        diagonal: d,
        right: qinv,
        left_inv: p,
        right_inv: q,
        rank,
    }
}

/// Coordinate change between a presentation's generators and the normal form.
#[derive(Clone, Debug)]
pub struct GroupChart {
    /// Normal-form coordinates of an element given in generator coordinates.
    pub to_normal: Matrix<BigInt>,
    /// Generator coordinates of each normal-form generator (columns).
    pub from_normal: Matrix<BigInt>,
}

/// Cokernel of a presentation whose rows are relations and whose columns are
/// generators.
pub fn abelian_group(presentation: &Matrix<BigInt>) -> (FgAbelianGroup, GroupChart) {
    let k = presentation.cols();
    let smith = snf(presentation);
    // row vector x of generator coordinates maps to x · Q, where Q = right_inv
    let mut torsion = Vec::new();
    let mut factors = Vec::new();
    let mut free = Vec::new();
    for i in 0..k {
        let d = if i < smith.rank {
            smith.diagonal.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            free.push(i);
        } else if !d.is_one() {
            torsion.push(i);
            factors.push(d);
        }
    }
    let kept: Vec<usize> = torsion.iter().chain(free.iter()).copied().collect();
    let q = &smith.right_inv;
    let qinv = &smith.right;
    let to_normal = Matrix::from_fn(kept.len(), k, |r, c| q.get(c, kept[r]).clone());
    let from_normal = Matrix::from_fn(k, kept.len(), |r, c| qinv.get(kept[c], r).clone());
    let group = FgAbelianGroup::new(free.len(), factors).expect("snf yields a divisibility chain");
    (
        group,
        GroupChart {
            to_normal,
            from_normal,
        },
    )
}

/// Integer solution of `a · x = b`, if one exists.
pub fn solve_integer(a: &Matrix<BigInt>, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, ExactError> {
    if a.rows() != b.len() {
        return Err(ExactError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let z = Integers;
    let smith = snf(a);
    let pb = smith.left_inv.mul_vec(&z, b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, v) in pb.iter().enumerate() {
        if i < smith.rank {
            let (quot, rem) = v.div_rem(smith.diagonal.get(i, i));
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = quot;
        } else if !v.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(smith.right_inv.mul_vec(&z, &y)))
}

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn to_int(&self, a: &BigInt) -> BigInt {
        a.clone()
    }

    fn is_canonical(&self, _n: &BigInt) -> bool {
        true
    }

    fn is_field(&self) -> bool {
        false
    }

    fn label(&self) -> String {
        "Z".to_string()
    }

    fn kernel(&self, m: &Matrix<BigInt>) -> (Matrix<BigInt>, Matrix<BigInt>) {
        let smith = snf(m);
        let n = m.cols();
        let basis = smith.right_inv.column_range(smith.rank, n);
        let coords = smith.right.row_range(smith.rank, n);
        (basis, coords)
    }

    fn solve(&self, a: &Matrix<BigInt>, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, ExactError> {
        solve_integer(a, b)
    }

    fn quotient_module(&self, relations: &Matrix<BigInt>) -> QuotientModule<BigInt> {
        let (group, chart) = abelian_group(&relations.transpose());
        QuotientModule {
            group,
            to_normal: chart.to_normal,
            from_normal: chart.from_normal,
        }
    }

    fn subgroup(&self, vectors: &Matrix<BigInt>, moduli: &[BigInt]) -> FgAbelianGroup {
        assert_eq!(vectors.rows(), moduli.len(), "moduli length mismatch");
        let m = vectors.cols();
        let torsion: Vec<usize> = (0..moduli.len())
            .filter(|&i| !moduli[i].is_zero())
            .collect();
        let wraps = Matrix::from_fn(moduli.len(), torsion.len(), |i, j| {
            if torsion[j] == i {
                moduli[i].clone()
            } else {
                BigInt::zero()
            }
        });
        let (kernel, _) = self.kernel(&vectors.hstack(&wraps));
        // relations among the generating vectors: first m kernel coordinates
        let relations = kernel.row_range(0, m).transpose();
        abelian_group(&relations).0
    }

    fn reduce_mod(&self, a: &BigInt, modulus: &BigInt) -> BigInt {
        if modulus.is_zero() {
            a.clone()
        } else {
            a.mod_floor(modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().copied().map(BigInt::from).collect())
                .collect(),
        )
    }

    fn check_decomposition(a: &Matrix<BigInt>) -> Smith {
        let z = Integers;
        let s = snf(a);
        assert_eq!(s.left.mul(&z, &s.diagonal).mul(&z, &s.right), *a);
        assert_eq!(s.left_inv.mul(&z, a).mul(&z, &s.right_inv), s.diagonal);
        assert_eq!(s.left.mul(&z, &s.left_inv), Matrix::identity(&z, a.rows()));
        assert_eq!(
            s.right.mul(&z, &s.right_inv),
            Matrix::identity(&z, a.cols())
        );
        s
    }

    #[test]
    fn diagonal_chain_is_fixed() {
        let a = int_matrix(&[&[2, 0], &[0, 4]]);
        let s = check_decomposition(&a);
        assert_eq!(s.diagonal, a);
        assert_eq!(s.left, Matrix::identity(&Integers, 2));
        assert_eq!(s.right, Matrix::identity(&Integers, 2));
    }

    #[test]
    fn two_three_gives_one_six() {
        let s = check_decomposition(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(
            s.elementary_divisors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn zero_matrix() {
        let a = int_matrix(&[&[0, 0, 0], &[0, 0, 0]]);
        let s = check_decomposition(&a);
        assert_eq!(s.rank, 0);
        assert_eq!(s.diagonal, a);
    }

    #[test]
    fn groups_from_presentations() {
        let (g, _) = abelian_group(&int_matrix(&[&[2]]));
        assert_eq!(g.invariant_factors(), &[BigInt::from(2)]);
        let (g, _) = abelian_group(&Matrix::from_fn(0, 2, |_, _| BigInt::zero()));
        assert_eq!(g, FgAbelianGroup::free(2));
        let (g, chart) = abelian_group(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(g.to_string(), "Z/6");
        // the generator (1, 1) has order 6: its normal coordinate is a unit mod 6
        let c = chart
            .to_normal
            .mul_vec(&Integers, &[BigInt::one(), BigInt::one()]);
        assert_eq!(c[0].gcd(&BigInt::from(6)), BigInt::one());
    }

    #[test]
    fn integer_solve() {
        let a = int_matrix(&[&[2, 4], &[0, 6]]);
        let b = vec![BigInt::from(6), BigInt::from(6)];
        let x = solve_integer(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&Integers, &x), b);
        assert_eq!(
            solve_integer(&a, &[BigInt::from(1), BigInt::from(0)]).unwrap(),
            None
        );
    }

    #[test]
    fn subgroup_of_cyclic() {
        // <2> inside Z/6 is Z/3; <(1, 0)> inside Z/2 + Z is Z/2
        let z = Integers;
        let g = z.subgroup(&int_matrix(&[&[2]]), &[BigInt::from(6)]);
        assert_eq!(g.to_string(), "Z/3");
        let g = z.subgroup(
            &int_matrix(&[&[1], &[0]]),
            &[BigInt::from(2), BigInt::zero()],
        );
        assert_eq!(g.to_string(), "Z/2");
        let g = z.subgroup(
            &int_matrix(&[&[0], &[3]]),
            &[BigInt::from(2), BigInt::zero()],
        );
        assert_eq!(g.to_string(), "Z");
    }
}
