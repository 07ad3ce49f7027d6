use num_bigint::BigInt;

use super::{make_algebra, AlgebraError, AlgebraPresentation};
use crate::exactlin::{rref_field, Matrix, PrimeField, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Formal combination of paths; each path is a sequence of arrow indices
/// read left to right (`a.b` means `a` then `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(BigInt, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Paths longer than this must vanish in the quotient.
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl QuiverPresentation {
    fn endpoints(&self, arrows: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*arrows.first()?)?;
        let mut at = first.target;
        for &a in &arrows[1..] {
            let arrow = self.arrows.get(a)?;
            if arrow.source != at {
                return None;
            }
            at = arrow.target;
        }
        Some((first.source, at))
    }

    fn paths_of_length(&self, len: usize) -> Vec<Path> {
        if len == 0 {
            return (0..self.vertices)
                .map(|v| Path {
                    source: v,
                    target: v,
                    arrows: Vec::new(),
                })
                .collect();
        }
        let mut out = Vec::new();
        for shorter in self.paths_of_length(len - 1) {
            for (idx, arrow) in self.arrows.iter().enumerate() {
                if len > 1 && arrow.source != shorter.target {
                    continue;
                }
                let mut arrows = shorter.arrows.clone();
                arrows.push(idx);
                let source = if len == 1 {
                    arrow.source
                } else {
                    shorter.source
                };
                out.push(Path {
                    source,
                    target: arrow.target,
                    arrows,
                });
            }
            if len == 1 {
                break;
            }
        }
        out
    }
}

/// Ideal component in one path length: generators as rows over the paths.
fn ideal_rows(
    field: &PrimeField,
    q: &QuiverPresentation,
    checked: &[(usize, usize, usize, Vec<(u64, Vec<usize>)>)],
    paths: &[Path],
    len: usize,
) -> Matrix<u64> {
    let mut rows = Vec::new();
    for (rel_len, rs, rt, terms) in checked {
        if *rel_len > len {
            continue;
        }
        for a in 0..=len - rel_len {
            let b = len - rel_len - a;
            for u in q.paths_of_length(a).iter().filter(|u| u.target == *rs) {
                for v in q.paths_of_length(b).iter().filter(|v| v.source == *rt) {
                    let mut row = vec![field.zero(); paths.len()];
                    for (coef, path) in terms {
                        let mut full = u.arrows.clone();
                        full.extend(path);
                        full.extend(&v.arrows);
                        let col = paths
                            .iter()
                            .position(|p| p.arrows == full)
                            .expect("composite path is enumerated");
                        row[col] = field.add(&row[col], coef);
                    }
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_fn(rows.len(), paths.len(), |i, j| rows[i][j])
}

/// Quotient of the path algebra by a homogeneous relation ideal, with basis
/// the surviving path classes (vertex idempotents first, then by length).
pub fn path_algebra(
    field: &PrimeField,
    q: &QuiverPresentation,
) -> Result<AlgebraPresentation<u64>, AlgebraError> {
    if q.vertices == 0 {
        return Err(AlgebraError::Shape(
            "quiver needs at least one vertex".into(),
        ));
    }
    for arrow in &q.arrows {
        if arrow.source >= q.vertices || arrow.target >= q.vertices {
            return Err(AlgebraError::InvalidRelation(format!(
                "arrow {} has an endpoint outside the vertex range",
                arrow.name
            )));
        }
    }
    let mut checked = Vec::new();
    for (idx, rel) in q.relations.iter().enumerate() {
        let mut shape: Option<(usize, usize, usize)> = None;
        let mut terms = Vec::new();
        for (coef, path) in &rel.terms {
            let (s, t) = q.endpoints(path).ok_or_else(|| {
                AlgebraError::InvalidRelation(format!("relation {idx} has a non-composable path"))
            })?;
            let this = (path.len(), s, t);
            if shape.is_some_and(|sh| sh != this) {
                return Err(AlgebraError::InvalidRelation(format!(
                    "relation {idx} mixes paths of different lengths or endpoints"
                )));
            }
            shape = Some(this);
            terms.push((field.from_int(coef), path.clone()));
        }
        let (len, s, t) = shape
            .ok_or_else(|| AlgebraError::InvalidRelation(format!("relation {idx} has no terms")))?;
        checked.push((len, s, t, terms));
    }

    let top = q.bound + 1;
    let top_paths = q.paths_of_length(top);
    if !top_paths.is_empty() {
        let ideal = ideal_rows(field, q, &checked, &top_paths, top);
        if rref_field(&ideal, field.spec()).rank < top_paths.len() {
            return Err(AlgebraError::NotFiniteDimensional { length: top });
        }
    }

    // per length: surviving basis paths and a reduction map path -> basis coords
    let mut basis: Vec<Path> = Vec::new();
    let mut reductions: Vec<(Vec<Path>, Vec<Vec<(usize, u64)>>)> = Vec::new();
    for len in 0..=q.bound {
        let paths = q.paths_of_length(len);
        let ideal = ideal_rows(field, q, &checked, &paths, len);
        let rref = rref_field(&ideal, field.spec());
        let offset = basis.len();
        let free: Vec<usize> = (0..paths.len())
            .filter(|c| !rref.pivots.contains(c))
            .collect();
        let mut reduce = Vec::with_capacity(paths.len());
        for col in 0..paths.len() {
            if let Some(k) = free.iter().position(|&f| f == col) {
                reduce.push(vec![(offset + k, 1)]);
            } else {
                let row = rref.pivots.iter().position(|&p| p == col).expect("pivot");
                let mut combo = Vec::new();
                for (k, &fc) in free.iter().enumerate() {
                    let v = *rref.reduced.get(row, fc);
                    if v != 0 {
                        combo.push((offset + k, field.neg(&v)));
                    }
                }
                reduce.push(combo);
            }
        }
        basis.extend(free.iter().map(|&c| paths[c].clone()));
        reductions.push((paths, reduce));
    }

    let n = basis.len();
    let mut mult = vec![0u64; n * n * n];
    for (i, pi) in basis.iter().enumerate() {
        for (j, pj) in basis.iter().enumerate() {
            if pi.target != pj.source {
                continue;
            }
            let len = pi.arrows.len() + pj.arrows.len();
            if len > q.bound {
                continue;
            }
            let mut arrows = pi.arrows.clone();
            arrows.extend(&pj.arrows);
            let (paths, reduce) = &reductions[len];
            let col = if len == 0 {
                pi.source
            } else {
                paths
                    .iter()
                    .position(|p| p.arrows == arrows)
                    .expect("product path is enumerated")
            };
            for &(k, c) in &reduce[col] {
                mult[(i * n + j) * n + k] = c;
            }
        }
    }
    let mut unit = vec![0u64; n];
    for slot in unit.iter_mut().take(q.vertices) {
        *slot = 1;
    }
    make_algebra(field, n, unit, mult)
}
