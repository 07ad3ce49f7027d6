use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// A finitely generated module over the coefficient ring in normal form:
/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`, `d_i ≥ 2`.
///
/// Over a prime field the torsion list is always empty and `free_rank` is the
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, ExactError> {
        for (idx, d) in invariant_factors.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(ExactError::InvalidGroup(format!(
                    "invariant factor {d} at position {idx} must be at least 2"
                )));
            }
            if idx > 0 && !d.is_multiple_of(&invariant_factors[idx - 1]) {
                return Err(ExactError::InvalidGroup(format!(
                    "divisibility chain broken at position {idx}"
                )));
            }
        }
        Ok(FgAbelianGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn zero() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning infinite
    /// cyclic, 1 meaning trivial) into invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let mut free_rank = 0;
        let mut primes_powers: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
        for order in orders {
            let order = order.abs();
            if order.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&order) {
                let pe = num_traits::pow(p.clone(), e);
                match primes_powers.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, list)) => list.push(pe),
                    None => primes_powers.push((p, vec![pe])),
                }
            }
        }
        let len = primes_powers
            .iter()
            .map(|(_, l)| l.len())
            .max()
            .unwrap_or(0);
        let mut factors = vec![BigInt::one(); len];
        for (_, list) in primes_powers.iter_mut() {
            list.sort();
            // align largest powers to the end
            let offset = len - list.len();
            for (i, pe) in list.iter().enumerate() {
                factors[offset + i] *= pe;
            }
        }
        let invariant_factors = factors.into_iter().filter(|d| !d.is_one()).collect();
        FgAbelianGroup {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Number of cyclic summands in the normal form (torsion first, then free).
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Moduli of the normal-form coordinates: torsion orders, then 0 for free.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut out = self.invariant_factors.clone();
        out.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        out
    }

    /// Order of the group if finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.moduli();
        orders.extend(other.moduli());
        FgAbelianGroup::from_cyclic_orders(&orders)
    }

    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = Vec::new();
        for d in &self.invariant_factors {
            for (p, _) in factorize(d) {
                let p = u64::try_from(&p).expect("prime factor fits in u64");
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort_unstable();
        primes
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Trial-division factorization; adequate for the torsion orders that occur
/// in desk-scale Hom groups.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut e = 0;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn cyclic_orders_normalize() {
        let g = FgAbelianGroup::from_cyclic_orders(&big(&[2, 3]));
        assert_eq!(g.invariant_factors(), big(&[6]).as_slice());
        let g = FgAbelianGroup::from_cyclic_orders(&big(&[4, 2, 1, 0]));
        assert_eq!(g.invariant_factors(), big(&[2, 4]).as_slice());
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.to_string(), "Z/2 + Z/4 + Z");
    }

    #[test]
    fn rejects_broken_chain() {
        assert!(FgAbelianGroup::new(0, big(&[2, 3])).is_err());
        assert!(FgAbelianGroup::new(0, big(&[1])).is_err());
        assert!(FgAbelianGroup::new(1, big(&[2, 6])).is_ok());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(65521));
        assert!(!is_prime(4) && !is_prime(1) && !is_prime(0));
        assert_eq!(
            factorize(&BigInt::from(360)),
            vec![
                (BigInt::from(2), 3),
                (BigInt::from(3), 2),
                (BigInt::from(5), 1)
            ]
        );
    }
}
