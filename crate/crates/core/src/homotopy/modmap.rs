use super::Context;
use crate::algebra;
use crate::exactlin::Ring;

/// A map of free modules `A^cols → A^rows`, stored as a `rows × cols` matrix
/// of algebra elements (each a coordinate vector of length `dim`). Entry
/// `(i, j)` acts on summand `j` by right multiplication and lands in summand
/// `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap<E> {
    rows: usize,
    cols: usize,
    dim: usize,
    data: Vec<E>,
}

impl<E: Clone> ModuleMap<E> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &[E] {
        let start = (i * self.cols + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: &[E]) {
        assert_eq!(value.len(), self.dim, "algebra element has wrong length");
        let start = (i * self.cols + j) * self.dim;
        self.data[start..start + self.dim].clone_from_slice(value);
    }

    /// Flat coordinates, entry-major then basis coordinate.
    pub fn coords(&self) -> &[E] {
        &self.data
    }

    pub fn from_coords(rows: usize, cols: usize, dim: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols * dim, "coordinate count mismatch");
        ModuleMap {
            rows,
            cols,
            dim,
            data,
        }
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0) * self.dim);
        for i in r0..r1 {
            for j in c0..c1 {
                data.extend_from_slice(self.entry(i, j));
            }
        }
        ModuleMap {
            rows: r1 - r0,
            cols: c1 - c0,
            dim: self.dim,
            data,
        }
    }

    pub fn remove_row_col(&self, row: Option<usize>, col: Option<usize>) -> Self {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&i| Some(i) != row).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&j| Some(j) != col).collect();
        let mut data = Vec::with_capacity(keep_rows.len() * keep_cols.len() * self.dim);
        for &i in &keep_rows {
            for &j in &keep_cols {
                data.extend_from_slice(self.entry(i, j));
            }
        }
        ModuleMap {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            dim: self.dim,
            data,
        }
    }
}

impl<R: Ring> Context<R> {
    pub fn zero_module_map(&self, rows: usize, cols: usize) -> ModuleMap<R::Elem> {
        let dim = self.dim();
        ModuleMap {
            rows,
            cols,
            dim,
            data: vec![self.ring().zero(); rows * cols * dim],
        }
    }

    pub fn identity_module_map(&self, n: usize) -> ModuleMap<R::Elem> {
        let mut m = self.zero_module_map(n, n);
        let unit = self.algebra().unit().to_vec();
        for i in 0..n {
            m.set_entry(i, i, &unit);
        }
        m
    }

    /// `g ∘ f`: `(g ∘ f)_{kj} = Σ_i f_{ij} · g_{ki}` (right action).
    pub fn compose_module_maps(
        &self,
        g: &ModuleMap<R::Elem>,
        f: &ModuleMap<R::Elem>,
    ) -> ModuleMap<R::Elem> {
        assert_eq!(g.cols, f.rows, "module map composition shape mismatch");
        let ring = self.ring();
        let mut out = self.zero_module_map(g.rows, f.cols);
        for k in 0..g.rows {
            for i in 0..g.cols {
                let gk = g.entry(k, i);
                if gk.iter().all(|x| ring.is_zero(x)) {
                    continue;
                }
                for j in 0..f.cols {
                    let fi = f.entry(i, j);
                    if fi.iter().all(|x| ring.is_zero(x)) {
                        continue;
                    }
                    let prod = algebra::mul(ring, self.algebra(), fi, gk);
                    let start = (k * out.cols + j) * out.dim;
                    for (slot, v) in out.data[start..start + out.dim].iter_mut().zip(&prod) {
                        *slot = ring.add(slot, v);
                    }
                }
            }
        }
        out
    }

    pub fn add_module_maps(
        &self,
        a: &ModuleMap<R::Elem>,
        b: &ModuleMap<R::Elem>,
    ) -> ModuleMap<R::Elem> {
        assert_eq!(
            (a.rows, a.cols),
            (b.rows, b.cols),
            "module map sum shape mismatch"
        );
        let ring = self.ring();
        ModuleMap {
            rows: a.rows,
            cols: a.cols,
            dim: a.dim,
            data: a
                .data
                .iter()
                .zip(&b.data)
                .map(|(x, y)| ring.add(x, y))
                .collect(),
        }
    }

    /// Multiply every coordinate by a scalar of the base ring.
    pub fn scale_module_map(&self, a: &ModuleMap<R::Elem>, s: &R::Elem) -> ModuleMap<R::Elem> {
        let ring = self.ring();
        ModuleMap {
            rows: a.rows,
            cols: a.cols,
            dim: a.dim,
            data: a.data.iter().map(|x| ring.mul(x, s)).collect(),
        }
    }

    pub fn neg_module_map(&self, a: &ModuleMap<R::Elem>) -> ModuleMap<R::Elem> {
        self.scale_module_map(a, &self.ring().neg(&self.ring().one()))
    }

    pub fn module_map_is_zero(&self, a: &ModuleMap<R::Elem>) -> bool {
        a.data.iter().all(|x| self.ring().is_zero(x))
    }

    /// Block matrix with the given block sizes; missing blocks are zero.
    pub fn block_module_map(
        &self,
        row_sizes: &[usize],
        col_sizes: &[usize],
        block: impl Fn(usize, usize) -> Option<ModuleMap<R::Elem>>,
    ) -> ModuleMap<R::Elem> {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = self.zero_module_map(rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = block(bi, bj) {
                    assert_eq!(
                        (b.rows, b.cols),
                        (rs, cs),
                        "block ({bi}, {bj}) has wrong shape"
                    );
                    for i in 0..rs {
                        for j in 0..cs {
                            out.set_entry(r0 + i, c0 + j, b.entry(i, j));
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }
}
