//! Seeded random objects for property suites.

use std::sync::Arc;

use rand::Rng as _;
use rand::RngCore;

use crate::exactlin::{Matrix, Ring};
use crate::homotopy::{ChainMap, Complex, Context, Homotopy, ModuleMap};

impl<R: Ring> Context<R> {
    /// Uniform in field mode, `[-3, 3]` per coordinate over the integers.
    pub fn random_element(&self, rng: &mut dyn RngCore) -> Vec<R::Elem> {
        (0..self.dim()).map(|_| self.random_scalar(rng)).collect()
    }

    fn random_scalar(&self, rng: &mut dyn RngCore) -> R::Elem {
        let ring = self.ring();
        if ring.is_field() {
            let p = ring.to_int(&ring.neg(&ring.one())) + 1;
            let p = u64::try_from(p).expect("small characteristic");
            ring.from_i64(rng.gen_range(0..p) as i64)
        } else {
            ring.from_i64(rng.gen_range(-3..=3))
        }
    }

    pub fn random_module_map(
        &self,
        rng: &mut dyn RngCore,
        rows: usize,
        cols: usize,
    ) -> ModuleMap<R::Elem> {
        let data = (0..rows * cols * self.dim())
            .map(|_| self.random_scalar(rng))
            .collect();
        ModuleMap::from_coords(rows, cols, self.dim(), data)
    }

    /// Random complex with the given ranks: each differential has random rows
    /// drawn from the left annihilator of the previous one, so `d ∘ d = 0`.
    pub fn random_complex(
        &self,
        rng: &mut dyn RngCore,
        lo: i64,
        ranks: &[usize],
    ) -> Complex<R::Elem> {
        let mut diffs: Vec<ModuleMap<R::Elem>> = Vec::new();
        for k in 0..ranks.len().saturating_sub(1) {
            let (rows, cols) = (ranks[k + 1], ranks[k]);
            let d = match diffs.last() {
                None => self.random_module_map(rng, rows, cols),
                Some(prev) => self.random_annihilating(rng, prev, rows),
            };
            diffs.push(d);
        }
        self.complex(lo, ranks.to_vec(), diffs)
            .expect("construction satisfies d ∘ d = 0")
    }

    /// Random `rows × prev.rows()` map `m` with `m ∘ prev = 0`.
    fn random_annihilating(
        &self,
        rng: &mut dyn RngCore,
        prev: &ModuleMap<R::Elem>,
        rows: usize,
    ) -> ModuleMap<R::Elem> {
        let ring = self.ring();
        let n = prev.rows();
        let dim = self.dim();
        let columns: Vec<Vec<R::Elem>> = (0..n * dim)
            .map(|t| {
                let mut v = ModuleMap::from_coords(1, n, dim, vec![ring.zero(); n * dim]);
                let mut e = vec![ring.zero(); dim];
                e[t % dim] = ring.one();
                v.set_entry(0, t / dim, &e);
                self.compose_module_maps(&v, prev).coords().to_vec()
            })
            .collect();
        let system = Matrix::from_columns(prev.cols() * dim, &columns);
        let (basis, _) = ring.kernel(&system);
        let mut out = self.zero_module_map(rows, n);
        for i in 0..rows {
            let mut coords = vec![ring.zero(); n * dim];
            for b in 0..basis.cols() {
                let c = self.random_scalar(rng);
                for (t, slot) in coords.iter_mut().enumerate() {
                    *slot = ring.add(slot, &ring.mul(&c, basis.get(t, b)));
                }
            }
            for j in 0..n {
                out.set_entry(i, j, &coords[j * dim..(j + 1) * dim]);
            }
        }
        out
    }

    /// Random complex with total rank at most `max_total_rank`, supported in
    /// `[lo, lo + span)`.
    pub fn random_small_complex(
        &self,
        rng: &mut dyn RngCore,
        lo: i64,
        span: usize,
        max_total_rank: usize,
    ) -> Complex<R::Elem> {
        let mut ranks = vec![0usize; span.max(1)];
        let total = rng.gen_range(1..=max_total_rank.max(1));
        for _ in 0..total {
            let at = rng.gen_range(0..ranks.len());
            ranks[at] += 1;
        }
        self.random_complex(rng, lo, &ranks)
    }

    pub fn random_homotopy(
        &self,
        rng: &mut dyn RngCore,
        x: &Arc<Complex<R::Elem>>,
        y: &Arc<Complex<R::Elem>>,
    ) -> Homotopy<R::Elem> {
        let components = x
            .degrees()
            .map(|d| self.random_module_map(rng, y.rank(d - 1), x.rank(d)))
            .collect();
        self.homotopy(x.clone(), y.clone(), components)
            .expect("shapes match")
    }

    /// Random combination of Hom generators plus a random boundary.
    pub fn random_chain_map(
        &self,
        rng: &mut dyn RngCore,
        x: &Arc<Complex<R::Elem>>,
        y: &Arc<Complex<R::Elem>>,
    ) -> ChainMap<R::Elem> {
        let hom = self.hom_space(x, y);
        let coeffs: Vec<R::Elem> = (0..hom.dimension())
            .map(|_| self.random_scalar(rng))
            .collect();
        let class = self.combination(&hom, &coeffs);
        let boundary = self.homotopy_boundary(&self.random_homotopy(rng, x, y));
        self.add_maps(&class, &boundary).expect("parallel maps")
    }
}
