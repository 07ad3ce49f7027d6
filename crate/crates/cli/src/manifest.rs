//! Category manifests.
//!
//! ```text
//! [category]
//! mode = field        # or: integer
//! p = 2
//!
//! [algebra]           # optional; default is the base field
//! dim = 2
//! unit = (1, 0)
//! product 1 1 = (0, 0)
//!
//! [quiver]            # alternative to [algebra]
//! vertices = 1
//! arrow x = 0 -> 0
//! relation = x.x
//! bound = 4
//! ```
//!
//! Unlisted products in `[algebra]` are zero. Basis indices start at 0.

use std::fmt;

use num_bigint::BigInt;
use trienv::algebra::{self, AlgebraError, Arrow, QuiverPresentation, Relation};
use trienv::exactlin::{FieldSpec, Integers, PrimeField, Ring};
use trienv::homotopy::Context;

use crate::document::{parse_document, split_tuple, ParseError, Section};

#[derive(Clone, Debug)]
pub enum Category {
    Field(Context<PrimeField>),
    Integer(Context<Integers>),
}

impl Category {
    pub fn label(&self) -> String {
        match self {
            Category::Field(ctx) => format!(
                "{} (algebra of dimension {})",
                ctx.ring().label(),
                ctx.dim()
            ),
            Category::Integer(_) => "Z".to_string(),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Category::Integer(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifestError {
    Parse(ParseError),
    Validation { line: usize, message: String },
}

impl fmt::Display for ManifestError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifestError::Parse(e) => write!(f, "parse error: {e}"),
            ManifestError::Validation { line, message } => {
                write!(f, "validation error: line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for ManifestError {}

impl From<ParseError> for ManifestError {
    fn from(e: ParseError) -> Self {
        ManifestError::Parse(e)
    }
}

fn perr(line: usize, message: impl Into<String>) -> ManifestError {
    ManifestError::Parse(ParseError::new(line, message))
}

pub fn parse_category_manifest(text: &str) -> Result<Category, ManifestError> {
    let doc = parse_document(text)?;
    for s in &doc.sections {
        if !matches!(s.kind.as_str(), "category" | "algebra" | "quiver") {
            return Err(perr(s.line, format!("unknown section [{}]", s.kind)));
        }
    }
    let category = doc
        .single("category")?
        .ok_or_else(|| perr(0, "missing [category] section"))?;
    for (line, key, _) in category.pairs()? {
        if key != "mode" && key != "p" {
            return Err(perr(
                line.number,
                format!("unknown field `{key}` in [category]"),
            ));
        }
    }
    let (mode_line, mode) = category.required("mode")?;
    let algebra = doc.single("algebra")?;
    let quiver = doc.single("quiver")?;
    match mode.as_str() {
        "integer" => {
            if let Some((line, _)) = category.value("p")? {
                return Err(perr(line, "integer mode takes no characteristic"));
            }
            if let Some(s) = algebra.or(quiver) {
                return Err(perr(
                    s.line,
                    "integer mode uses the integers themselves; no algebra section is allowed",
                ));
            }
            Ok(Category::Integer(Context::over_base(Integers)))
        }
        "field" => {
            let (p_line, p) = category.required("p")?;
            let p: u64 = p.parse().map_err(|_| {
                perr(
                    p_line,
                    format!("field `p`: expected an integer, found `{p}`"),
                )
            })?;
            let spec = FieldSpec::new(p)
                .map_err(|_| perr(p_line, "characteristic must be prime (and below 65536)"))?;
            let field = PrimeField::new(spec);
            match (algebra, quiver) {
                (Some(_), Some(q)) => {
                    Err(perr(q.line, "give either [algebra] or [quiver], not both"))
                }
                (Some(a), None) => parse_algebra(&field, a),
                (None, Some(q)) => parse_quiver(&field, q),
                (None, None) => Ok(Category::Field(Context::over_base(field))),
            }
        }
        other => Err(perr(
            mode_line,
            format!("field `mode`: expected `field` or `integer`, found `{other}`"),
        )),
    }
}

fn parse_coords(
    field: &PrimeField,
    line: usize,
    text: &str,
    dim: usize,
) -> Result<Vec<u64>, ManifestError> {
    let items = split_tuple(text).map_err(|m| perr(line, m))?;
    if items.len() != dim {
        return Err(perr(
            line,
            format!("expected {dim} coordinates, found {}", items.len()),
        ));
    }
    items
        .iter()
        .map(|t| {
            let n: BigInt = t
                .parse()
                .map_err(|_| perr(line, format!("expected an integer, found `{t}`")))?;
            if !field.is_canonical(&n) {
                return Err(perr(
                    line,
                    format!("coefficient {n} is outside [0, {})", field.characteristic()),
                ));
            }
            Ok(field.from_int(&n))
        })
        .collect()
}

fn parse_index(line: usize, text: &str, dim: usize) -> Result<usize, ManifestError> {
    let i: usize = text
        .parse()
        .map_err(|_| perr(line, format!("expected a basis index, found `{text}`")))?;
    if i >= dim {
        return Err(perr(
            line,
            format!("basis index {i} is out of range for dimension {dim}"),
        ));
    }
    Ok(i)
}

fn parse_algebra(field: &PrimeField, s: &Section) -> Result<Category, ManifestError> {
    let (dim_line, dim) = s.required("dim")?;
    let dim: usize = dim
        .parse()
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| perr(dim_line, "field `dim`: expected a positive integer"))?;
    let mut unit = None;
    let mut mult = vec![0u64; dim * dim * dim];
    let mut seen = Vec::new();
    for (line, key, value) in s.pairs()? {
        let mut words = key.split_whitespace();
        match words.next() {
            Some("dim") => {}
            Some("unit") => unit = Some(parse_coords(field, line.number, &value, dim)?),
            Some("product") => {
                let i = parse_index(line.number, words.next().unwrap_or(""), dim)?;
                let j = parse_index(line.number, words.next().unwrap_or(""), dim)?;
                if words.next().is_some() {
                    return Err(perr(line.number, "expected `product i j = (..)`"));
                }
                if seen.contains(&(i, j)) {
                    return Err(perr(line.number, format!("duplicate product {i} {j}")));
                }
                seen.push((i, j));
                let coords = parse_coords(field, line.number, &value, dim)?;
                for (k, c) in coords.into_iter().enumerate() {
                    mult[(i * dim + j) * dim + k] = c;
                }
            }
            _ => {
                return Err(perr(
                    line.number,
                    format!("unknown field `{key}` in [algebra]"),
                ))
            }
        }
    }
    let unit = match unit {
        Some(u) => u,
        None if dim == 1 && seen.is_empty() => vec![1],
        None => return Err(perr(s.line, "[algebra] is missing field `unit`")),
    };
    if dim == 1 && seen.is_empty() {
        mult = vec![1];
    }
    let alg = algebra::make_algebra(field, dim, unit, mult).map_err(|e| validation(s.line, e))?;
    Ok(Category::Field(Context::new(*field, alg)))
}

fn validation(line: usize, e: AlgebraError) -> ManifestError {
    ManifestError::Validation {
        line,
        message: e.to_string(),
    }
}

fn parse_quiver(field: &PrimeField, s: &Section) -> Result<Category, ManifestError> {
    let (v_line, vertices) = s.required("vertices")?;
    let vertices: usize = vertices
        .parse()
        .map_err(|_| perr(v_line, "field `vertices`: expected an integer"))?;
    let (b_line, bound) = s.required("bound")?;
    let bound: usize = bound
        .parse()
        .map_err(|_| perr(b_line, "field `bound`: expected an integer"))?;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relation_lines = Vec::new();
    for (line, key, value) in s.pairs()? {
        let mut words = key.split_whitespace();
        match words.next() {
            Some("vertices") | Some("bound") => {}
            Some("arrow") => {
                let name = words
                    .next()
                    .filter(|n| n.chars().all(|c| c.is_alphanumeric() || c == '_'))
                    .ok_or_else(|| perr(line.number, "expected `arrow NAME = SOURCE -> TARGET`"))?;
                if arrows.iter().any(|a| a.name == name) {
                    return Err(perr(line.number, format!("duplicate arrow `{name}`")));
                }
                let (src, tgt) = value
                    .split_once("->")
                    .ok_or_else(|| perr(line.number, "expected `SOURCE -> TARGET`"))?;
                let vertex = |t: &str| -> Result<usize, ManifestError> {
                    t.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v < vertices)
                        .ok_or_else(|| {
                            perr(
                                line.number,
                                format!("`{}` is not a vertex below {vertices}", t.trim()),
                            )
                        })
                };
                arrows.push(Arrow {
                    name: name.to_string(),
                    source: vertex(src)?,
                    target: vertex(tgt)?,
                });
            }
            Some("relation") => relation_lines.push((line.number, value)),
            _ => {
                return Err(perr(
                    line.number,
                    format!("unknown field `{key}` in [quiver]"),
                ))
            }
        }
    }
    let relations = relation_lines
        .iter()
        .map(|(line, text)| parse_relation(*line, text, &arrows))
        .collect::<Result<Vec<_>, _>>()?;
    let q = QuiverPresentation {
        vertices,
        arrows,
        relations,
        bound,
    };
    let alg = algebra::path_algebra(field, &q).map_err(|e| validation(s.line, e))?;
    Ok(Category::Field(Context::new(*field, alg)))
}

/// `x.x - 2 a.b + c.d`: signed integer multiples of paths, arrows joined by
/// `.` in traversal order.
fn parse_relation(line: usize, text: &str, arrows: &[Arrow]) -> Result<Relation, ManifestError> {
    let spaced = text.replace('+', " + ").replace('-', " - ");
    let mut terms = Vec::new();
    let mut sign = BigInt::from(1);
    let mut coef: Option<BigInt> = None;
    for token in spaced.split_whitespace() {
        match token {
            "+" => {}
            "-" => sign = -sign,
            t if t.chars().all(|c| c.is_ascii_digit()) => {
                if coef.is_some() {
                    return Err(perr(line, "two coefficients in a row"));
                }
                coef = Some(t.parse().expect("digits"));
            }
            t => {
                let path = t
                    .split('.')
                    .map(|name| {
                        arrows
                            .iter()
                            .position(|a| a.name == name)
                            .ok_or_else(|| perr(line, format!("unknown arrow `{name}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let c = coef.take().unwrap_or_else(|| BigInt::from(1));
                terms.push((&sign * c, path));
                sign = BigInt::from(1);
            }
        }
    }
    if coef.is_some() || terms.is_empty() {
        return Err(perr(line, "relation must end with a path"));
    }
    Ok(Relation { terms })
}
