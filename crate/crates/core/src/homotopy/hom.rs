use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ChainMap, Complex, Context, Homotopy, ModuleMap};
use crate::algebra;
use crate::exactlin::{FgAbelianGroup, Matrix, Ring, Subquotient};

/// `Hom_K(X, Y)`: chain maps modulo null-homotopic maps, with a normal-form
/// generating set (a basis in field mode) and exact coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace<E> {
    source: Arc<Complex<E>>,
    target: Arc<Complex<E>>,
    quotient: Subquotient<E>,
    generators: Vec<ChainMap<E>>,
}

/// Order of a class in a Hom group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOrder {
    Finite(BigInt),
    Infinite,
}

impl<E: Clone> HomSpace<E> {
    pub fn source(&self) -> &Arc<Complex<E>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex<E>> {
        &self.target
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.quotient.group
    }

    /// Generators in normal-form order: torsion summands first, then free.
    pub fn generators(&self) -> &[ChainMap<E>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.quotient.group.is_trivial()
    }

    /// Dimension over the base field (number of normal-form generators).
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Dimension of the cycle module (all chain maps).
    pub fn cycle_rank(&self) -> usize {
        self.quotient.cycles.cols()
    }
}

/// Block layout of a space of graded maps `X^d → Y^{d - lowering}`.
struct Layout {
    offsets: Vec<usize>,
    lo: i64,
    total: usize,
}

impl Layout {
    fn new(x: &Complex<impl Clone>, y: &Complex<impl Clone>, lowering: i64, dim: usize) -> Self {
        let mut offsets = Vec::new();
        let mut total = 0;
        for d in x.degrees() {
            offsets.push(total);
            total += y.rank(d - lowering) * x.rank(d) * dim;
        }
        Layout {
            offsets,
            lo: x.lo(),
            total,
        }
    }

    fn offset(&self, degree: i64) -> Option<usize> {
        if degree < self.lo {
            return None;
        }
        self.offsets.get((degree - self.lo) as usize).copied()
    }
}

impl<R: Ring> Context<R> {
    /// Adds the coordinate matrix of `U ↦ sign · (L ∘ U)` into `m`, where `U`
    /// is an unknown `a × b` block at column offset `unk` and the result is an
    /// `L.rows × b` block at row offset `eq`.
    #[allow(clippy::too_many_arguments)]
    fn add_post(
        &self,
        m: &mut Matrix<R::Elem>,
        eq: usize,
        unk: usize,
        l: &ModuleMap<R::Elem>,
        unknown_cols: usize,
        negate: bool,
    ) {
        let ring = self.ring();
        let dim = self.dim();
        for k in 0..l.rows() {
            for i in 0..l.cols() {
                let entry = l.entry(k, i);
                if entry.iter().all(|x| ring.is_zero(x)) {
                    continue;
                }
                let rm = algebra::right_mul_matrix(ring, self.algebra(), entry);
                for j in 0..unknown_cols {
                    let row0 = eq + (k * unknown_cols + j) * dim;
                    let col0 = unk + (i * unknown_cols + j) * dim;
                    accumulate(ring, m, row0, col0, &rm, negate);
                }
            }
        }
    }

    /// Adds the coordinate matrix of `U ↦ sign · (U ∘ K)`, `U` an unknown
    /// `a × K.rows` block, result an `a × K.cols` block.
    #[allow(clippy::too_many_arguments)]
    fn add_pre(
        &self,
        m: &mut Matrix<R::Elem>,
        eq: usize,
        unk: usize,
        k_map: &ModuleMap<R::Elem>,
        unknown_rows: usize,
        negate: bool,
    ) {
        let ring = self.ring();
        let dim = self.dim();
        for i in 0..k_map.rows() {
            for j in 0..k_map.cols() {
                let entry = k_map.entry(i, j);
                if entry.iter().all(|x| ring.is_zero(x)) {
                    continue;
                }
                let lm = algebra::left_mul_matrix(ring, self.algebra(), entry);
                for k in 0..unknown_rows {
                    let row0 = eq + (k * k_map.cols() + j) * dim;
                    let col0 = unk + (k * k_map.rows() + i) * dim;
                    accumulate(ring, m, row0, col0, &lm, negate);
                }
            }
        }
    }

    /// Linear map on chain-map coordinates whose kernel is the chain maps:
    /// `f ↦ (d_Y ∘ f^d - f^{d+1} ∘ d_X)_d`.
    fn commutator_system(&self, x: &Complex<R::Elem>, y: &Complex<R::Elem>) -> Matrix<R::Elem> {
        let dim = self.dim();
        let unknowns = Layout::new(x, y, 0, dim);
        let equations = Layout::new(x, y, -1, dim);
        let mut m = Matrix::zeros(self.ring(), equations.total, unknowns.total);
        for d in x.degrees() {
            let eq = equations.offset(d).expect("source degree");
            // d_Y^d ∘ f^d
            if let (Some(unk), Some(dy)) = (unknowns.offset(d), y.stored_diff(d)) {
                self.add_post(&mut m, eq, unk, dy, x.rank(d), false);
            }
            // - f^{d+1} ∘ d_X^d
            if let (Some(unk), Some(dx)) = (unknowns.offset(d + 1), x.stored_diff(d)) {
                self.add_pre(&mut m, eq, unk, dx, y.rank(d + 1), true);
            }
        }
        m
    }

    /// Linear map from homotopy coordinates to chain-map coordinates:
    /// `h ↦ (d_Y ∘ h^d + h^{d+1} ∘ d_X)_d`.
    fn boundary_system(&self, x: &Complex<R::Elem>, y: &Complex<R::Elem>) -> Matrix<R::Elem> {
        let dim = self.dim();
        let maps = Layout::new(x, y, 0, dim);
        let homotopies = Layout::new(x, y, 1, dim);
        let mut m = Matrix::zeros(self.ring(), maps.total, homotopies.total);
        for d in x.degrees() {
            let eq = maps.offset(d).expect("source degree");
            if let (Some(unk), Some(dy)) = (homotopies.offset(d), y.stored_diff(d - 1)) {
                self.add_post(&mut m, eq, unk, dy, x.rank(d), false);
            }
            if let (Some(unk), Some(dx)) = (homotopies.offset(d + 1), x.stored_diff(d)) {
                self.add_pre(&mut m, eq, unk, dx, y.rank(d), false);
            }
        }
        m
    }

    fn map_from_coords(
        &self,
        x: &Arc<Complex<R::Elem>>,
        y: &Arc<Complex<R::Elem>>,
        coords: &[R::Elem],
    ) -> ChainMap<R::Elem> {
        let dim = self.dim();
        let mut at = 0;
        let mut components = Vec::new();
        for d in x.degrees() {
            let (rows, cols) = (y.rank(d), x.rank(d));
            let n = rows * cols * dim;
            components.push(ModuleMap::from_coords(
                rows,
                cols,
                dim,
                coords[at..at + n].to_vec(),
            ));
            at += n;
        }
        self.chain_map_unchecked(x.clone(), y.clone(), components)
            .expect("layout matches shapes")
    }

    fn homotopy_from_coords(
        &self,
        x: &Arc<Complex<R::Elem>>,
        y: &Arc<Complex<R::Elem>>,
        coords: &[R::Elem],
    ) -> Homotopy<R::Elem> {
        let dim = self.dim();
        let mut at = 0;
        let mut components = Vec::new();
        for d in x.degrees() {
            let (rows, cols) = (y.rank(d - 1), x.rank(d));
            let n = rows * cols * dim;
            components.push(ModuleMap::from_coords(
                rows,
                cols,
                dim,
                coords[at..at + n].to_vec(),
            ));
            at += n;
        }
        self.homotopy(x.clone(), y.clone(), components)
            .expect("layout matches shapes")
    }

    /// Exact `Hom_K(X, Y)`.
    pub fn hom_space(
        &self,
        x: &Arc<Complex<R::Elem>>,
        y: &Arc<Complex<R::Elem>>,
    ) -> HomSpace<R::Elem> {
        let phi = self.commutator_system(x, y);
        let psi = self.boundary_system(x, y);
        let quotient = self.ring().subquotient(&phi, &psi);
        let generator_coords = quotient.cycles.mul(self.ring(), &quotient.from_normal);
        let generators = (0..generator_coords.cols())
            .map(|g| self.map_from_coords(x, y, &generator_coords.column(g)))
            .collect();
        HomSpace {
            source: x.clone(),
            target: y.clone(),
            quotient,
            generators,
        }
    }

    /// Normal-form coordinates of the class of `f`, each reduced modulo its
    /// torsion order.
    pub fn class_coordinates(
        &self,
        hom: &HomSpace<R::Elem>,
        f: &ChainMap<R::Elem>,
    ) -> Vec<R::Elem> {
        assert!(
            f.source() == hom.source() && f.target() == hom.target(),
            "map does not belong to this Hom space"
        );
        let ring = self.ring();
        let cycle = hom.quotient.cycle_coords.mul_vec(ring, &f.flatten());
        let normal = hom.quotient.to_normal.mul_vec(ring, &cycle);
        normal
            .iter()
            .zip(hom.group().moduli())
            .map(|(c, m)| ring.reduce_mod(c, &m))
            .collect()
    }

    pub fn is_zero_class(&self, hom: &HomSpace<R::Elem>, f: &ChainMap<R::Elem>) -> bool {
        let ring = self.ring();
        self.class_coordinates(hom, f)
            .iter()
            .all(|c| ring.is_zero(c))
    }

    /// Additive order of the class of `f` (in field mode a nonzero class has
    /// order `p`).
    pub fn class_order(&self, hom: &HomSpace<R::Elem>, f: &ChainMap<R::Elem>) -> ClassOrder {
        let ring = self.ring();
        let coords = self.class_coordinates(hom, f);
        if ring.is_field() {
            return if coords.iter().all(|c| ring.is_zero(c)) {
                ClassOrder::Finite(BigInt::one())
            } else {
                ClassOrder::Finite(ring.to_int(&ring.neg(&ring.one())) + 1)
            };
        }
        let mut order = BigInt::one();
        for (c, m) in coords.iter().zip(hom.group().moduli()) {
            let c = ring.to_int(c);
            if c.is_zero() {
                continue;
            }
            if m.is_zero() {
                return ClassOrder::Infinite;
            }
            order = order.lcm(&(&m / c.gcd(&m)));
        }
        ClassOrder::Finite(order)
    }

    /// Chain map `Σ c_i g_i` over the normal-form generators.
    pub fn combination(&self, hom: &HomSpace<R::Elem>, coeffs: &[R::Elem]) -> ChainMap<R::Elem> {
        assert_eq!(
            coeffs.len(),
            hom.generators.len(),
            "coefficient count mismatch"
        );
        let mut acc = self.zero_map(&hom.source, &hom.target);
        for (c, g) in coeffs.iter().zip(&hom.generators) {
            if !self.ring().is_zero(c) {
                acc = self
                    .add_maps(&acc, &self.scale_map(g, c))
                    .expect("parallel maps");
            }
        }
        acc
    }

    /// Structure of the subgroup generated by the classes of `maps`.
    pub fn generated_subgroup(
        &self,
        hom: &HomSpace<R::Elem>,
        maps: &[ChainMap<R::Elem>],
    ) -> FgAbelianGroup {
        let columns: Vec<Vec<R::Elem>> = maps
            .iter()
            .map(|f| self.class_coordinates(hom, f))
            .collect();
        let vectors = Matrix::from_columns(hom.generators.len(), &columns);
        self.ring().subgroup(&vectors, &hom.group().moduli())
    }

    /// A homotopy `h` with `f = d h + h d`, if `f` is null-homotopic.
    pub fn null_homotopy(&self, f: &ChainMap<R::Elem>) -> Option<Homotopy<R::Elem>> {
        let psi = self.boundary_system(f.source(), f.target());
        let coords = self
            .ring()
            .solve(&psi, &f.flatten())
            .expect("boundary system matches map layout")?;
        let h = self.homotopy_from_coords(f.source(), f.target(), &coords);
        debug_assert!(self.witnesses_null_homotopy(f, &h));
        Some(h)
    }

    /// Null-homotopy of `id_X`.
    pub fn is_contractible(&self, x: &Arc<Complex<R::Elem>>) -> Option<Homotopy<R::Elem>> {
        self.null_homotopy(&self.identity(x))
    }

    /// Witness that `r ∘ s ~ id_X` for `s: X → Y`, `r: Y → X`.
    pub fn verify_retract(
        &self,
        s: &ChainMap<R::Elem>,
        r: &ChainMap<R::Elem>,
    ) -> Option<Homotopy<R::Elem>> {
        if s.target() != r.source() || s.source() != r.target() {
            return None;
        }
        if !self.is_chain_map(s) || !self.is_chain_map(r) {
            return None;
        }
        let rs = self.compose(r, s).ok()?;
        let diff = self.sub_maps(&rs, &self.identity(s.source())).ok()?;
        self.null_homotopy(&diff)
    }
}

fn accumulate<R: Ring>(
    ring: &R,
    m: &mut Matrix<R::Elem>,
    row0: usize,
    col0: usize,
    block: &Matrix<R::Elem>,
    negate: bool,
) {
    for t in 0..block.rows() {
        for s in 0..block.cols() {
            let v = block.get(t, s);
            if ring.is_zero(v) {
                continue;
            }
            let v = if negate { ring.neg(v) } else { v.clone() };
            let slot = m.get_mut(row0 + t, col0 + s);
            *slot = ring.add(slot, &v);
        }
    }
}
