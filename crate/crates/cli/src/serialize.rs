//! Text forms of complexes, chain maps, homotopies and certificates.
//!
//! ```text
//! [complex NAME]          # NAME is omitted in single-complex files
//! rank 0 = 1
//! rank 1 = 1
//! [differential NAME 0]   # rows of d^0 : X^0 -> X^1
//! [2]
//!
//! [map NAME]
//! source = X
//! target = Y
//! [component NAME 0]
//! [1]
//! ```
//!
//! Entries are integers when the algebra has dimension 1 and coordinate
//! tuples `(c0, c1, ..)` otherwise; a bare integer `c` also means `c·1`.
//! Missing ranks, differentials and components are zero.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use trienv::envelope::MembershipCertificate;
use trienv::exactlin::Ring;
use trienv::homotopy::{ChainMap, Complex, Context, Homotopy, HomotopyError, ModuleMap};

use crate::document::{
    parse_document, split_row, split_tuple, Document, Line, ParseError, Section,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Parse(ParseError),
    /// The data parses but is not a valid complex or map.
    Invalid {
        line: usize,
        error: HomotopyError,
    },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(e) => write!(f, "{e}"),
            FormatError::Invalid { line, error } => write!(f, "line {line}: {error}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Parse(e)
    }
}

fn perr(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse(ParseError::new(line, message))
}

pub fn render_entry<R: Ring>(ctx: &Context<R>, e: &[R::Elem]) -> String {
    let ring = ctx.ring();
    if e.len() == 1 {
        return ring.to_int(&e[0]).to_string();
    }
    let parts: Vec<String> = e.iter().map(|c| ring.to_int(c).to_string()).collect();
    format!("({})", parts.join(", "))
}

fn parse_scalar<R: Ring>(
    ctx: &Context<R>,
    line: usize,
    text: &str,
) -> Result<R::Elem, FormatError> {
    let n: BigInt = text.trim().parse().map_err(|_| {
        perr(
            line,
            format!("expected an integer, found `{}`", text.trim()),
        )
    })?;
    if !ctx.ring().is_canonical(&n) {
        return Err(perr(
            line,
            format!(
                "entry {n} is not a canonical residue of {}",
                ctx.ring().label()
            ),
        ));
    }
    Ok(ctx.ring().from_int(&n))
}

pub fn parse_entry<R: Ring>(
    ctx: &Context<R>,
    line: usize,
    text: &str,
) -> Result<Vec<R::Elem>, FormatError> {
    let ring = ctx.ring();
    if text.trim_start().starts_with('(') {
        let items = split_tuple(text).map_err(|m| perr(line, m))?;
        if items.len() != ctx.dim() {
            return Err(perr(
                line,
                format!("expected {} coordinates, found {}", ctx.dim(), items.len()),
            ));
        }
        return items.iter().map(|t| parse_scalar(ctx, line, t)).collect();
    }
    let s = parse_scalar(ctx, line, text)?;
    Ok(ctx
        .algebra()
        .unit()
        .iter()
        .map(|u| ring.mul(u, &s))
        .collect())
}

fn render_matrix<R: Ring>(ctx: &Context<R>, out: &mut String, m: &ModuleMap<R::Elem>) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| render_entry(ctx, m.entry(i, j)))
            .collect();
        let _ = writeln!(out, "[{}]", row.join(", "));
    }
}

fn parse_matrix<R: Ring>(
    ctx: &Context<R>,
    section: &Section,
    rows: usize,
    cols: usize,
) -> Result<ModuleMap<R::Elem>, FormatError> {
    if section.body.len() != rows {
        return Err(perr(
            section.line,
            format!("expected {rows} matrix rows, found {}", section.body.len()),
        ));
    }
    let mut m = ctx.zero_module_map(rows, cols);
    for (i, line) in section.body.iter().enumerate() {
        let items = split_row(line)?;
        if items.len() != cols {
            return Err(perr(
                line.number,
                format!("expected {cols} entries, found {}", items.len()),
            ));
        }
        for (j, item) in items.iter().enumerate() {
            m.set_entry(i, j, &parse_entry(ctx, line.number, item)?);
        }
    }
    Ok(m)
}

fn header(kind: &str, name: Option<&str>, degree: Option<i64>) -> String {
    let mut h = format!("[{kind}");
    if let Some(n) = name {
        h.push(' ');
        h.push_str(n);
    }
    if let Some(d) = degree {
        let _ = write!(h, " {d}");
    }
    h.push_str("]\n");
    h
}

pub fn render_complex<R: Ring>(
    ctx: &Context<R>,
    name: Option<&str>,
    x: &Complex<R::Elem>,
) -> String {
    let mut out = header("complex", name, None);
    for d in x.degrees() {
        let _ = writeln!(out, "rank {d} = {}", x.rank(d));
    }
    for d in x.degrees() {
        if d + 1 >= x.hi() || x.rank(d) == 0 || x.rank(d + 1) == 0 {
            continue;
        }
        out.push_str(&header("differential", name, Some(d)));
        render_matrix(ctx, &mut out, &ctx.diff(x, d));
    }
    out
}

/// Splits the header arguments of a named section into (name, degree).
fn named_degree(s: &Section, name: Option<&str>) -> Result<Option<i64>, FormatError> {
    let (owner, degree) = match s.args.as_slice() {
        [d] => (None, d),
        [n, d] => (Some(n.as_str()), d),
        _ => return Err(perr(s.line, format!("malformed [{}] header", s.kind))),
    };
    if owner != name {
        return Ok(None);
    }
    degree
        .parse::<i64>()
        .map(Some)
        .map_err(|_| perr(s.line, format!("expected a degree, found `{degree}`")))
}

fn degree_key(line: &Line, key: &str) -> Result<Option<i64>, FormatError> {
    let mut words = key.split_whitespace();
    if words.next() != Some("rank") {
        return Err(perr(
            line.number,
            format!("unknown field `{key}` in [complex]"),
        ));
    }
    match (words.next(), words.next()) {
        (Some(d), None) => d
            .parse::<i64>()
            .map(Some)
            .map_err(|_| perr(line.number, format!("expected a degree, found `{d}`"))),
        _ => Err(perr(line.number, "expected `rank DEGREE = N`")),
    }
}

pub fn complex_from_doc<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
    name: Option<&str>,
) -> Result<Complex<R::Elem>, FormatError> {
    let owner = |s: &&Section| s.args.first().map(String::as_str) == name;
    let heads: Vec<&Section> = doc.sections_of("complex").filter(owner).collect();
    let head = match heads.as_slice() {
        [h] => *h,
        [] => {
            return Err(perr(
                0,
                format!(
                    "missing [complex{}] section",
                    name.map(|n| format!(" {n}")).unwrap_or_default()
                ),
            ))
        }
        [_, h, ..] => return Err(perr(h.line, "duplicate complex section")),
    };
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (line, key, value) in head.pairs()? {
        let d = degree_key(line, &key)?.expect("rank key has a degree");
        let r: usize = value
            .parse()
            .map_err(|_| perr(line.number, format!("expected a rank, found `{value}`")))?;
        if ranks.insert(d, r).is_some() {
            return Err(perr(line.number, format!("duplicate rank for degree {d}")));
        }
    }
    let lo = ranks.keys().next().copied().unwrap_or(0);
    let hi = ranks.keys().last().map_or(0, |d| d + 1);
    let rank = |d: i64| ranks.get(&d).copied().unwrap_or(0);
    let mut diffs: BTreeMap<i64, (usize, ModuleMap<R::Elem>)> = BTreeMap::new();
    for s in doc.sections_of("differential") {
        let Some(d) = named_degree(s, name)? else {
            continue;
        };
        if d < lo || d + 1 >= hi {
            return Err(perr(
                s.line,
                format!("differential at degree {d} leaves the stated support"),
            ));
        }
        let m = parse_matrix(ctx, s, rank(d + 1), rank(d))?;
        if diffs.insert(d, (s.line, m)).is_some() {
            return Err(perr(
                s.line,
                format!("duplicate differential for degree {d}"),
            ));
        }
    }
    let ranks_vec: Vec<usize> = (lo..hi).map(rank).collect();
    let maps: Vec<ModuleMap<R::Elem>> = (lo..hi.max(lo + 1) - 1)
        .map(|d| match diffs.get(&d) {
            Some((_, m)) => m.clone(),
            None => ctx.zero_module_map(rank(d + 1), rank(d)),
        })
        .collect();
    ctx.complex(lo, ranks_vec, maps).map_err(|error| {
        let line = match &error {
            HomotopyError::DSquaredNonzero { degree } => {
                diffs.get(degree).map_or(head.line, |(l, _)| *l)
            }
            _ => head.line,
        };
        FormatError::Invalid { line, error }
    })
}

/// A file holding one unnamed complex.
pub fn parse_complex<R: Ring>(
    ctx: &Context<R>,
    text: &str,
) -> Result<Complex<R::Elem>, FormatError> {
    let doc = parse_document(text)?;
    for s in &doc.sections {
        let unnamed = match s.kind.as_str() {
            "complex" => s.args.is_empty(),
            "differential" => s.args.len() == 1,
            _ => {
                return Err(perr(
                    s.line,
                    format!("unexpected section [{}] in a complex file", s.kind),
                ))
            }
        };
        if !unnamed {
            return Err(perr(s.line, "sections in a complex file take no name"));
        }
    }
    if doc.sections.is_empty() {
        return Ok(Complex::zero());
    }
    complex_from_doc(ctx, &doc, None)
}

fn render_graded<R: Ring>(
    ctx: &Context<R>,
    kind: &str,
    name: &str,
    source: &str,
    target: &str,
    components: &[ModuleMap<R::Elem>],
    lo: i64,
) -> String {
    let mut out = header(kind, Some(name), None);
    let _ = writeln!(out, "source = {source}");
    let _ = writeln!(out, "target = {target}");
    for (k, c) in components.iter().enumerate() {
        if c.rows() == 0 || c.cols() == 0 {
            continue;
        }
        out.push_str(&header("component", Some(name), Some(lo + k as i64)));
        render_matrix(ctx, &mut out, c);
    }
    out
}

pub fn render_map<R: Ring>(
    ctx: &Context<R>,
    name: &str,
    source: &str,
    target: &str,
    f: &ChainMap<R::Elem>,
) -> String {
    render_graded(
        ctx,
        "map",
        name,
        source,
        target,
        f.components(),
        f.source().lo(),
    )
}

pub fn render_homotopy<R: Ring>(
    ctx: &Context<R>,
    name: &str,
    source: &str,
    target: &str,
    h: &Homotopy<R::Elem>,
) -> String {
    render_graded(
        ctx,
        "homotopy",
        name,
        source,
        target,
        h.components(),
        h.source().lo(),
    )
}

/// Looks up complexes referenced by `source = ..` / `target = ..`.
pub trait Objects<E> {
    fn object(&self, name: &str) -> Option<Arc<Complex<E>>>;
}

impl<E> Objects<E> for BTreeMap<String, Arc<Complex<E>>> {
    fn object(&self, name: &str) -> Option<Arc<Complex<E>>> {
        self.get(name).cloned()
    }
}

type Graded<E> = (Arc<Complex<E>>, Arc<Complex<E>>, Vec<ModuleMap<E>>, usize);

fn graded_from_doc<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
    kind: &str,
    name: &str,
    objects: &dyn Objects<R::Elem>,
    lowering: i64,
) -> Result<Graded<R::Elem>, FormatError> {
    let heads: Vec<&Section> = doc
        .sections_of(kind)
        .filter(|s| s.args.first().map(String::as_str) == Some(name))
        .collect();
    let head = match heads.as_slice() {
        [h] => *h,
        [] => return Err(perr(0, format!("missing [{kind} {name}] section"))),
        [_, h, ..] => return Err(perr(h.line, format!("duplicate [{kind} {name}] section"))),
    };
    for (line, key, _) in head.pairs()? {
        if key != "source" && key != "target" {
            return Err(perr(
                line.number,
                format!("unknown field `{key}` in [{kind}]"),
            ));
        }
    }
    let lookup = |key: &str| -> Result<Arc<Complex<R::Elem>>, FormatError> {
        let (line, v) = head.required(key)?;
        objects
            .object(&v)
            .ok_or_else(|| perr(line, format!("unknown complex `{v}`")))
    };
    let source = lookup("source")?;
    let target = lookup("target")?;
    let mut given: BTreeMap<i64, ModuleMap<R::Elem>> = BTreeMap::new();
    for s in doc.sections_of("component") {
        if s.args.len() != 2 || s.args[0] != name {
            continue;
        }
        let Some(d) = named_degree(s, Some(name))? else {
            continue;
        };
        if d < source.lo() || d >= source.hi() {
            return Err(perr(
                s.line,
                format!("component at degree {d} is outside the source support"),
            ));
        }
        let m = parse_matrix(ctx, s, target.rank(d - lowering), source.rank(d))?;
        if given.insert(d, m).is_some() {
            return Err(perr(s.line, format!("duplicate component for degree {d}")));
        }
    }
    let components = source
        .degrees()
        .map(|d| {
            given
                .remove(&d)
                .unwrap_or_else(|| ctx.zero_module_map(target.rank(d - lowering), source.rank(d)))
        })
        .collect();
    Ok((source, target, components, head.line))
}

pub fn map_from_doc<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
    name: &str,
    objects: &dyn Objects<R::Elem>,
) -> Result<ChainMap<R::Elem>, FormatError> {
    let (source, target, components, line) = graded_from_doc(ctx, doc, "map", name, objects, 0)?;
    ctx.chain_map(source, target, components)
        .map_err(|error| FormatError::Invalid { line, error })
}

pub fn homotopy_from_doc<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
    name: &str,
    objects: &dyn Objects<R::Elem>,
) -> Result<Homotopy<R::Elem>, FormatError> {
    let (source, target, components, line) =
        graded_from_doc(ctx, doc, "homotopy", name, objects, 1)?;
    ctx.homotopy(source, target, components)
        .map_err(|error| FormatError::Invalid { line, error })
}

/// Every `[complex NAME]` of a document.
pub fn named_complexes<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
) -> Result<BTreeMap<String, Arc<Complex<R::Elem>>>, FormatError> {
    let mut out = BTreeMap::new();
    for s in doc.sections_of("complex") {
        let Some(name) = s.arg(0) else {
            return Err(perr(
                s.line,
                "complex sections in this document must be named",
            ));
        };
        if out.contains_key(name) {
            return Err(perr(s.line, format!("duplicate complex `{name}`")));
        }
        out.insert(
            name.to_string(),
            Arc::new(complex_from_doc(ctx, doc, Some(name))?),
        );
    }
    Ok(out)
}

/// Body of a certificate: everything an independent checker needs.
pub fn render_certificate<R: Ring>(
    ctx: &Context<R>,
    generators: &[Arc<Complex<R::Elem>>],
    cert: &MembershipCertificate<R::Elem>,
) -> String {
    let mut out = String::from("[certificate]\n");
    let _ = writeln!(out, "stage = {}", cert.stage);
    let _ = writeln!(
        out,
        "prime = {}",
        cert.prime.map_or("none".to_string(), |p| p.to_string())
    );
    let _ = writeln!(out, "scale = {}", ctx.ring().to_int(&cert.scale));
    let _ = writeln!(out, "generators = {}", generators.len());
    for (n, mults) in cert.manifest.iter().enumerate() {
        let m: Vec<String> = mults.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "summands {} = {}", n + 1, m.join(" "));
    }
    out.push('\n');
    for (i, g) in generators.iter().enumerate() {
        out.push_str(&render_complex(ctx, Some(&format!("gen{i}")), g));
        out.push('\n');
    }
    out.push_str(&render_complex(ctx, Some("base"), &cert.base));
    out.push('\n');
    out.push_str(&render_complex(ctx, Some("top"), cert.alpha.target()));
    out.push('\n');
    out.push_str(&render_complex(ctx, Some("object"), &cert.object));
    out.push('\n');
    out.push_str(&render_map(ctx, "alpha", "base", "top", &cert.alpha));
    out.push('\n');
    out.push_str(&render_homotopy(ctx, "death", "base", "top", &cert.death));
    out.push('\n');
    out.push_str(&render_map(ctx, "proj", "object", "base", &cert.proj));
    out.push('\n');
    out.push_str(&render_map(ctx, "lift", "base", "object", &cert.lift));
    out.push('\n');
    out.push_str(&render_homotopy(
        ctx,
        "retract",
        "base",
        "base",
        &cert.retract_homotopy,
    ));
    out
}

/// Parsed certificate together with the generators it records.
pub struct ParsedCertificate<E> {
    pub generators: Vec<Arc<Complex<E>>>,
    pub certificate: MembershipCertificate<E>,
}

fn parse_usize(line: usize, field: &str, v: &str) -> Result<usize, FormatError> {
    v.parse().map_err(|_| {
        perr(
            line,
            format!("field `{field}`: expected a nonnegative integer, found `{v}`"),
        )
    })
}

pub fn certificate_from_doc<R: Ring>(
    ctx: &Context<R>,
    doc: &Document,
) -> Result<ParsedCertificate<R::Elem>, FormatError> {
    let head = doc
        .single("certificate")?
        .ok_or_else(|| perr(0, "missing [certificate] section"))?;
    let (l, stage) = head.required("stage")?;
    let stage = parse_usize(l, "stage", &stage)?;
    let (l, prime) = head.required("prime")?;
    let prime = match prime.as_str() {
        "none" => None,
        p => Some(p.parse::<u64>().map_err(|_| {
            perr(
                l,
                format!("field `prime`: expected `none` or a prime, found `{p}`"),
            )
        })?),
    };
    let (l, scale) = head.required("scale")?;
    let scale = parse_scalar(ctx, l, &scale)?;
    let (l, count) = head.required("generators")?;
    let count = parse_usize(l, "generators", &count)?;
    let mut manifest = Vec::new();
    for (line, key, value) in head.pairs()? {
        let mut words = key.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("stage" | "prime" | "scale" | "generators"), None, None) => {}
            (Some("summands"), Some(n), None) => {
                let n = parse_usize(line.number, "summands", n)?;
                if n != manifest.len() + 1 {
                    return Err(perr(
                        line.number,
                        "summand lines must list stages 1, 2, .. in order",
                    ));
                }
                let mults = value
                    .split_whitespace()
                    .map(|m| parse_usize(line.number, "summands", m))
                    .collect::<Result<Vec<_>, _>>()?;
                if mults.len() != count {
                    return Err(perr(
                        line.number,
                        format!("expected {count} multiplicities"),
                    ));
                }
                manifest.push(mults);
            }
            _ => {
                return Err(perr(
                    line.number,
                    format!("unknown field `{key}` in [certificate]"),
                ))
            }
        }
    }
    if manifest.len() != stage {
        return Err(perr(
            head.line,
            format!("expected {stage} summand lines, found {}", manifest.len()),
        ));
    }
    let objects = named_complexes(ctx, doc)?;
    let generators = (0..count)
        .map(|i| {
            objects
                .get(&format!("gen{i}"))
                .cloned()
                .ok_or_else(|| perr(0, format!("missing [complex gen{i}] section")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let base = objects
        .get("base")
        .cloned()
        .ok_or_else(|| perr(0, "missing [complex base] section"))?;
    let object = objects
        .get("object")
        .cloned()
        .ok_or_else(|| perr(0, "missing [complex object] section"))?;
    let certificate = MembershipCertificate {
        stage,
        prime,
        scale,
        manifest,
        base,
        alpha: map_from_doc(ctx, doc, "alpha", &objects)?,
        death: homotopy_from_doc(ctx, doc, "death", &objects)?,
        object,
        proj: map_from_doc(ctx, doc, "proj", &objects)?,
        lift: map_from_doc(ctx, doc, "lift", &objects)?,
        retract_homotopy: homotopy_from_doc(ctx, doc, "retract", &objects)?,
    };
    Ok(ParsedCertificate {
        generators,
        certificate,
    })
}
