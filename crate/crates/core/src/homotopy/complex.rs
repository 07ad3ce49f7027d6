use std::borrow::Cow;

use super::{Context, HomotopyError, ModuleMap};
use crate::exactlin::Ring;

/// Bounded complex of free modules, cohomologically graded: the differential
/// `d^k : X^k → X^{k+1}` raises degree.
///
/// Stored trimmed: the lowest and highest stored degrees have nonzero rank,
/// and the zero object is the complex with no degrees. Equality is literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Complex<E> {
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is the differential from degree `lo + k` to `lo + k + 1`.
    diffs: Vec<ModuleMap<E>>,
}

impl<E: Clone> Complex<E> {
    pub fn zero() -> Self {
        Complex {
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn is_zero_object(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree with nonzero rank (0 for the zero object).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// One past the highest degree with nonzero rank.
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.lo..self.hi()
    }

    pub fn rank(&self, degree: i64) -> usize {
        if degree < self.lo || degree >= self.hi() {
            return 0;
        }
        self.ranks[(degree - self.lo) as usize]
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Stored differential out of `degree`, if both ends are in range.
    pub fn stored_diff(&self, degree: i64) -> Option<&ModuleMap<E>> {
        if degree < self.lo || degree + 1 >= self.hi() {
            return None;
        }
        self.diffs.get((degree - self.lo) as usize)
    }
}

impl<R: Ring> Context<R> {
    /// Differential `d^degree`, zero outside the stored range.
    pub fn diff<'a>(&self, x: &'a Complex<R::Elem>, degree: i64) -> Cow<'a, ModuleMap<R::Elem>> {
        match x.stored_diff(degree) {
            Some(d) => Cow::Borrowed(d),
            None => Cow::Owned(self.zero_module_map(x.rank(degree + 1), x.rank(degree))),
        }
    }

    /// Builds and validates a complex from its lowest degree, ranks, and the
    /// differentials `lo → lo+1, ...`. Shapes and `d ∘ d = 0` are checked;
    /// zero ranks at either end are trimmed.
    pub fn complex(
        &self,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<ModuleMap<R::Elem>>,
    ) -> Result<Complex<R::Elem>, HomotopyError> {
        let expected = ranks.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(HomotopyError::Shape(format!(
                "{} differentials supplied for {} degrees",
                diffs.len(),
                ranks.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k + 1] || d.cols() != ranks[k] || d.dim() != self.dim() {
                return Err(HomotopyError::Shape(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    ranks[k + 1],
                    ranks[k]
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = self.compose_module_maps(&diffs[k + 1], &diffs[k]);
            if !self.module_map_is_zero(&dd) {
                return Err(HomotopyError::DSquaredNonzero {
                    degree: lo + k as i64,
                });
            }
        }
        Ok(trim(lo, ranks, diffs))
    }

    /// Complex with the given ranks and differentials read from `diff(d)`
    /// over a degree range; no `d ∘ d` check (callers construct valid data).
    pub(crate) fn assemble(
        &self,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        diff: impl Fn(i64) -> ModuleMap<R::Elem>,
    ) -> Complex<R::Elem> {
        if hi <= lo {
            return Complex::zero();
        }
        let ranks: Vec<usize> = (lo..hi).map(&rank).collect();
        let diffs: Vec<ModuleMap<R::Elem>> = (lo..hi - 1).map(&diff).collect();
        trim(lo, ranks, diffs)
    }

    pub fn is_valid_complex(&self, x: &Complex<R::Elem>) -> bool {
        self.complex(x.lo, x.ranks.clone(), x.diffs.clone())
            .is_ok_and(|y| y == *x)
    }

    /// `X[m]^d = X^{d+m}` with differential scaled by `(-1)^m`.
    pub fn shift(&self, x: &Complex<R::Elem>, m: i64) -> Complex<R::Elem> {
        if x.is_zero_object() {
            return Complex::zero();
        }
        let diffs = if m.rem_euclid(2) == 0 {
            x.diffs.clone()
        } else {
            x.diffs.iter().map(|d| self.neg_module_map(d)).collect()
        };
        Complex {
            lo: x.lo - m,
            ranks: x.ranks.clone(),
            diffs,
        }
    }

    /// The complex with a single free module of the given rank in `degree`.
    pub fn free_in_degree(&self, rank: usize, degree: i64) -> Complex<R::Elem> {
        trim(degree, vec![rank], Vec::new())
    }

    /// Two-term complex `A^cols --d--> A^rows` in degrees `lo, lo+1`.
    pub fn two_term(
        &self,
        lo: i64,
        d: ModuleMap<R::Elem>,
    ) -> Result<Complex<R::Elem>, HomotopyError> {
        self.complex(lo, vec![d.cols(), d.rows()], vec![d])
    }
}

fn trim<E: Clone>(lo: i64, mut ranks: Vec<usize>, mut diffs: Vec<ModuleMap<E>>) -> Complex<E> {
    let mut lo = lo;
    while ranks.first() == Some(&0) {
        ranks.remove(0);
        if !diffs.is_empty() {
            diffs.remove(0);
        }
        lo += 1;
    }
    while ranks.last() == Some(&0) {
        ranks.pop();
        diffs.pop();
    }
    if ranks.is_empty() {
        return Complex::zero();
    }
    Complex { lo, ranks, diffs }
}
