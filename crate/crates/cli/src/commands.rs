use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use sha2::{Digest, Sha256};
use trienv::envelope::{
    DeathCriterion, GeneratorSet, GlobalDeath, MembershipCertificate, OracleBounds, OracleError,
    StageDiagnostics, TowerReport, Verdict,
};
use trienv::exactlin::{FgAbelianGroup, Integers, PrimeField, Ring};
use trienv::homotopy::{Complex, Context};
use trienv::localize::{self, LocalDeath};

use crate::config::RunConfig;
use crate::document::{parse_document, Document};
use crate::manifest::{parse_category_manifest, Category};
use crate::serialize::{
    certificate_from_doc, map_from_doc, named_complexes, parse_complex, render_certificate,
    render_complex, render_homotopy, render_map, FormatError,
};
use crate::{EXIT_INCONSISTENT, EXIT_INPUT, EXIT_MEMBER, EXIT_UNDETERMINED, EXIT_VERIFY};

/// File contents supplied to a command. Paths are resolved by the caller.
#[derive(Clone, Debug, Default)]
pub struct Inputs {
    pub manifest: String,
    pub generators: Vec<String>,
    pub target: Option<String>,
    pub source: Option<String>,
    pub map: Option<String>,
    pub certificate: Option<String>,
    pub probes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Files to write, in order.
    pub files: Vec<(PathBuf, String)>,
}

impl CommandOutput {
    fn ok(code: i32, stdout: String) -> Self {
        CommandOutput {
            code,
            stdout,
            stderr: String::new(),
            files: Vec::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        CommandOutput {
            code,
            stdout: String::new(),
            stderr,
            files: Vec::new(),
        }
    }
}

type Failure = (i32, String);

fn input_error(what: &str, e: impl std::fmt::Display) -> Failure {
    (EXIT_INPUT, format!("error: {what}: {e}"))
}

fn finish(result: Result<CommandOutput, Failure>) -> CommandOutput {
    result.unwrap_or_else(|(code, message)| CommandOutput::fail(code, message))
}

/// Coefficient modes that may or may not support localization.
pub trait Localizable: Ring {
    fn local_criterion(p: u64) -> Option<Box<dyn DeathCriterion<Self>>>;
}

impl Localizable for PrimeField {
    fn local_criterion(_: u64) -> Option<Box<dyn DeathCriterion<Self>>> {
        None
    }
}

impl Localizable for Integers {
    fn local_criterion(p: u64) -> Option<Box<dyn DeathCriterion<Self>>> {
        Some(Box::new(LocalDeath { p }))
    }
}

fn criterion<R: Localizable>(prime: Option<u64>) -> Result<Box<dyn DeathCriterion<R>>, Failure> {
    match prime {
        None => Ok(Box::new(GlobalDeath)),
        Some(p) => R::local_criterion(p).ok_or_else(|| {
            (
                EXIT_INPUT,
                "error: --prime requires integer mode".to_string(),
            )
        }),
    }
}

macro_rules! dispatch {
    ($category:expr, $ctx:ident => $body:expr) => {
        match $category {
            Category::Field($ctx) => $body,
            Category::Integer($ctx) => $body,
        }
    };
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()).as_slice())
}

fn document_header(kind: &str, category: &Category, manifest: &str) -> String {
    let mut out = String::from("[document]\n");
    let _ = writeln!(out, "kind = {kind}");
    let _ = writeln!(out, "tool = trienv {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "category = {}", category.label());
    let _ = writeln!(out, "manifest_sha256 = {}", sha256_hex(manifest));
    out
}

fn load_category(inputs: &Inputs) -> Result<Category, Failure> {
    parse_category_manifest(&inputs.manifest).map_err(|e| input_error("manifest", e))
}

fn load_complex<R: Ring>(
    ctx: &Context<R>,
    what: &str,
    text: &str,
) -> Result<Arc<Complex<R::Elem>>, Failure> {
    parse_complex(ctx, text)
        .map(Arc::new)
        .map_err(|e| input_error(what, e))
}

fn load_target<R: Ring>(
    ctx: &Context<R>,
    inputs: &Inputs,
) -> Result<Arc<Complex<R::Elem>>, Failure> {
    let text = inputs
        .target
        .as_deref()
        .ok_or_else(|| (EXIT_INPUT, "error: --target is required".to_string()))?;
    load_complex(ctx, "target complex", text)
}

fn load_generators<R: Ring>(
    ctx: &Context<R>,
    inputs: &Inputs,
) -> Result<GeneratorSet<R::Elem>, Failure> {
    let elements = inputs
        .generators
        .iter()
        .enumerate()
        .map(|(i, t)| load_complex(ctx, &format!("generator {i}"), t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeneratorSet::new(elements))
}

/// `F_p^n` in field mode, the abelian group otherwise.
pub fn render_group<R: Ring>(ctx: &Context<R>, g: &FgAbelianGroup) -> String {
    if ctx.ring().is_field() {
        match g.free_rank() {
            0 => "0".to_string(),
            1 => ctx.ring().label(),
            n => format!("{}^{n}", ctx.ring().label()),
        }
    } else {
        g.to_string()
    }
}

fn render_multiplicities(m: &[usize]) -> String {
    if m.is_empty() {
        return "none".into();
    }
    m.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn render_diagnostics<R: Ring>(
    ctx: &Context<R>,
    out: &mut String,
    diagnostics: &[StageDiagnostics],
    label: Option<u64>,
) {
    for s in diagnostics {
        out.push('\n');
        match label {
            Some(p) => {
                let _ = writeln!(out, "[stage {} local {p}]", s.stage);
            }
            None => {
                let _ = writeln!(out, "[stage {}]", s.stage);
            }
        }
        let _ = writeln!(out, "total_rank = {}", s.total_rank);
        let _ = writeln!(
            out,
            "summands = {}",
            render_multiplicities(&s.multiplicities)
        );
        let _ = writeln!(
            out,
            "hom_target_stage = {}",
            render_group(ctx, &s.hom_group)
        );
        let _ = writeln!(out, "image_of_identity = {}", render_group(ctx, &s.image));
        let _ = writeln!(out, "dead = {}", s.dead);
    }
}

fn verdict_line<E>(report: &TowerReport<E>) -> String {
    match &report.verdict {
        Verdict::Member(c) => format!("member at stage {}", c.stage),
        Verdict::Undetermined {
            stationary_at: Some(n),
        } => {
            format!("undetermined (stationary from stage {n})")
        }
        Verdict::Undetermined {
            stationary_at: None,
        } => {
            format!("undetermined after {} stages", report.stages_run)
        }
    }
}

fn timing(start: Instant) -> String {
    format!("[timing]\nwall_ms = {}\n", start.elapsed().as_millis())
}

/// Removes the `[timing]` section, the only run-dependent part of a report.
pub fn strip_timing(report: &str) -> String {
    match report.find("[timing]") {
        Some(i) => report[..i].to_string(),
        None => report.to_string(),
    }
}

fn certificate_document<R: Ring>(
    ctx: &Context<R>,
    category: &Category,
    manifest: &str,
    config: &RunConfig,
    generators: &GeneratorSet<R::Elem>,
    cert: &MembershipCertificate<R::Elem>,
) -> String {
    let body = format!(
        "{}\n{}",
        config.render(),
        render_certificate(ctx, generators.elements(), cert)
    );
    let mut out = document_header("certificate", category, manifest);
    let _ = writeln!(out, "content_sha256 = {}", sha256_hex(&body));
    out.push('\n');
    out.push_str(&body);
    out
}

pub fn cmd_member(config: &RunConfig, inputs: &Inputs) -> CommandOutput {
    finish((|| {
        config
            .validate()
            .map_err(|e| (EXIT_INPUT, format!("error: {e}")))?;
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => member_in(ctx, &category, config, inputs))
    })())
}

fn member_in<R: Localizable>(
    ctx: &Context<R>,
    category: &Category,
    config: &RunConfig,
    inputs: &Inputs,
) -> Result<CommandOutput, Failure> {
    let start = Instant::now();
    let generators = load_generators(ctx, inputs)?;
    let y = load_target(ctx, inputs)?;
    let crit = criterion::<R>(config.prime)?;
    let report = ctx.run_tower(&generators, &y, config.max_stages, crit.as_ref());
    let mut out = document_header("member-report", category, &inputs.manifest);
    out.push('\n');
    out.push_str(&config.render());
    out.push_str("\n[result]\n");
    let _ = writeln!(
        out,
        "verdict = {}",
        if report.is_member() {
            "member"
        } else {
            "undetermined"
        }
    );
    let _ = writeln!(out, "summary = {}", verdict_line(&report));
    let _ = writeln!(out, "stages_run = {}", report.stages_run);
    let _ = writeln!(out, "generators = {}", generators.len());
    let mut files = Vec::new();
    if let Some(cert) = report.certificate() {
        match &config.out {
            Some(path) => {
                let _ = writeln!(out, "certificate = {}", path.display());
                files.push((
                    path.clone(),
                    certificate_document(
                        ctx,
                        category,
                        &inputs.manifest,
                        config,
                        &generators,
                        cert,
                    ),
                ));
            }
            None => out.push_str("certificate = not written (no --out given)\n"),
        }
    }
    render_diagnostics(ctx, &mut out, &report.diagnostics, None);
    out.push('\n');
    out.push_str(&timing(start));
    let code = if report.is_member() {
        EXIT_MEMBER
    } else {
        EXIT_UNDETERMINED
    };
    Ok(CommandOutput {
        code,
        stdout: out,
        stderr: String::new(),
        files,
    })
}

pub fn cmd_verify(inputs: &Inputs) -> CommandOutput {
    finish((|| {
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => verify_in(ctx, &category, inputs))
    })())
}

fn verify_fail(check: &str, detail: impl std::fmt::Display) -> Failure {
    (
        EXIT_VERIFY,
        format!("verification failed: {check}: {detail}"),
    )
}

fn config_from_doc(doc: &Document) -> Result<RunConfig, Failure> {
    let bad = |e: &dyn std::fmt::Display| input_error("certificate", e);
    let section = doc
        .single("config")
        .map_err(|e| bad(&e))?
        .ok_or_else(|| input_error("certificate", "missing [config] section"))?;
    let get = |key: &str| -> Result<String, Failure> {
        section.required(key).map(|(_, v)| v).map_err(|e| bad(&e))
    };
    let num = |key: &str| -> Result<u64, Failure> {
        get(key)?
            .parse::<u64>()
            .map_err(|_| input_error("certificate", format!("field `{key}` is not a number")))
    };
    let opt_list = |v: String| -> Result<Vec<u64>, Failure> {
        if v == "none" {
            return Ok(Vec::new());
        }
        v.split_whitespace()
            .map(|p| {
                p.parse::<u64>()
                    .map_err(|_| input_error("certificate", format!("bad prime `{p}`")))
            })
            .collect()
    };
    let prime = opt_list(get("prime")?)?;
    Ok(RunConfig {
        max_stages: num("max_stages")? as usize,
        max_depth: num("max_depth")? as usize,
        max_total_rank: num("max_total_rank")? as usize,
        prime: prime.first().copied(),
        primes: opt_list(get("primes")?)?,
        auto_primes: get("auto_primes")? == "true",
        seed: num("seed")?,
        out: None,
    })
}

fn verify_in<R: Localizable>(
    ctx: &Context<R>,
    category: &Category,
    inputs: &Inputs,
) -> Result<CommandOutput, Failure> {
    let generators = load_generators(ctx, inputs)?;
    let y = load_target(ctx, inputs)?;
    let text = inputs
        .certificate
        .as_deref()
        .ok_or_else(|| (EXIT_INPUT, "error: --certificate is required".to_string()))?;
    let doc = parse_document(text).map_err(|e| input_error("certificate", e))?;
    let header = doc
        .single("document")
        .map_err(|e| input_error("certificate", e))?
        .ok_or_else(|| input_error("certificate", "missing [document] section"))?;
    let kind = header
        .required("kind")
        .map_err(|e| input_error("certificate", e))?
        .1;
    if kind != "certificate" {
        return Err(input_error(
            "certificate",
            format!("document kind is `{kind}`"),
        ));
    }
    let digest = header
        .required("manifest_sha256")
        .map_err(|e| input_error("certificate", e))?
        .1;
    if digest != sha256_hex(&inputs.manifest) {
        return Err(verify_fail(
            "manifest digest",
            "certificate was issued for a different manifest",
        ));
    }
    let content = header
        .required("content_sha256")
        .map_err(|e| input_error("certificate", e))?
        .1;
    let body = text.split_once("\n\n").map_or("", |(_, body)| body);
    if content != sha256_hex(body) {
        return Err(verify_fail(
            "content digest",
            "certificate body was modified after issue",
        ));
    }
    let config = config_from_doc(&doc)?;
    let parsed = match certificate_from_doc(ctx, &doc) {
        Ok(p) => p,
        Err(FormatError::Invalid { line, error }) => {
            return Err(verify_fail(
                "well-formed data",
                format!("line {line}: {error}"),
            ))
        }
        Err(e) => return Err(input_error("certificate", e)),
    };
    let cert = parsed.certificate;
    if parsed.generators.len() != generators.len() {
        return Err(verify_fail(
            "generators",
            format!(
                "certificate records {} generators, {} supplied",
                parsed.generators.len(),
                generators.len()
            ),
        ));
    }
    for (i, (a, b)) in parsed
        .generators
        .iter()
        .zip(generators.elements())
        .enumerate()
    {
        if a != b {
            return Err(verify_fail(
                "generators",
                format!("generator {i} differs from the supplied file"),
            ));
        }
    }
    if cert.prime != config.prime {
        return Err(verify_fail("prime", "certificate and config disagree"));
    }
    let crit = criterion::<R>(cert.prime).map_err(|(_, m)| verify_fail("prime", m))?;
    ctx.verify_certificate(&generators, &y, &cert)
        .map_err(|fault| verify_fail(fault_name(&fault), fault))?;
    let canonical = canonical_certificate(ctx, &generators, &y, cert.stage, crit.as_ref())
        .ok_or_else(|| {
            verify_fail(
                "tower reproduction",
                "recomputed tower map does not vanish at the recorded stage",
            )
        })?;
    let expected = certificate_document(
        ctx,
        category,
        &inputs.manifest,
        &config,
        &generators,
        &canonical,
    );
    if expected != text {
        let line = expected
            .lines()
            .zip(text.lines())
            .position(|(a, b)| a != b)
            .map_or_else(
                || expected.lines().count().min(text.lines().count()) + 1,
                |i| i + 1,
            );
        return Err(verify_fail(
            "bit-exact reconstruction",
            format!("document differs from the recomputed certificate at line {line}"),
        ));
    }
    let mut out = String::from("[verification]\nresult = ok\n");
    let _ = writeln!(out, "stage = {}", cert.stage);
    let _ = writeln!(
        out,
        "prime = {}",
        cert.prime.map_or("none".into(), |p| p.to_string())
    );
    Ok(CommandOutput::ok(EXIT_MEMBER, out))
}

fn fault_name(fault: &trienv::envelope::CertificateFault) -> &'static str {
    use trienv::envelope::CertificateFault::*;
    match fault {
        BaseMismatch => "base object",
        TowerMismatch(_) => "tower reproduction",
        ObjectMismatch => "shifted cone",
        ScaleNotInvertible => "scale",
        DeathWitness => "death homotopy",
        LiftFailure => "lift",
        RetractWitness => "retract homotopy",
    }
}

/// The certificate that `member` emits for this stage.
pub fn canonical_certificate<R: Ring>(
    ctx: &Context<R>,
    generators: &GeneratorSet<R::Elem>,
    y: &Arc<Complex<R::Elem>>,
    stage: usize,
    crit: &dyn DeathCriterion<R>,
) -> Option<MembershipCertificate<R::Elem>> {
    let state = ctx.build_tower(generators, y, stage);
    if state.height() != stage {
        return None;
    }
    let alpha = ctx.tower_map(&state, stage);
    let hom = ctx.hom_space(y, state.top());
    let (scale, h) = crit.witness(ctx, &hom, &alpha)?;
    Some(ctx.extract_certificate(&state, stage, scale, crit.prime(), h))
}

pub fn cmd_local_global(config: &RunConfig, inputs: &Inputs) -> CommandOutput {
    finish((|| {
        config
            .validate()
            .map_err(|e| (EXIT_INPUT, format!("error: {e}")))?;
        let category = load_category(inputs)?;
        let Category::Integer(ctx) = &category else {
            return Err((
                EXIT_INPUT,
                "error: local-global requires integer mode".to_string(),
            ));
        };
        let start = Instant::now();
        let generators = load_generators(ctx, inputs)?;
        let y = load_target(ctx, inputs)?;
        let mut primes = config.primes.clone();
        let auto = config.auto_primes || primes.is_empty();
        if auto {
            primes.extend(localize::relevant_primes(ctx, &generators, &y));
        }
        primes.sort_unstable();
        primes.dedup();
        let report =
            localize::local_global_report(ctx, &generators, &y, &primes, config.max_stages);
        let mut out = document_header("local-global-report", &category, &inputs.manifest);
        out.push('\n');
        out.push_str(&config.render());
        out.push_str("\n[result]\n");
        let _ = writeln!(out, "primes = {}", render_primes(&primes));
        let _ = writeln!(
            out,
            "prime_source = {}",
            if auto {
                "relevant primes plus explicit list"
            } else {
                "explicit list"
            }
        );
        let _ = writeln!(out, "global = {}", verdict_line(&report.global));
        for (p, r) in &report.locals {
            let _ = writeln!(out, "local {p} = {}", verdict_line(r));
        }
        let _ = writeln!(out, "consistent = {}", report.is_consistent());
        let _ = writeln!(
            out,
            "easy_direction_faults = {}",
            render_primes(&report.easy_direction_faults)
        );
        let _ = writeln!(
            out,
            "locals_suggest_membership = {}",
            report.locals_suggest_membership
        );
        if report.locals_suggest_membership {
            out.push_str("note = locals suggest membership; raise max_stages\n");
        }
        out.push_str("scope = only the listed primes were examined; this is a finite surrogate for all primes\n");
        render_diagnostics(ctx, &mut out, &report.global.diagnostics, None);
        for (p, r) in &report.locals {
            render_diagnostics(ctx, &mut out, &r.diagnostics, Some(*p));
        }
        out.push('\n');
        out.push_str(&timing(start));
        let code = if report.is_consistent() {
            EXIT_MEMBER
        } else {
            EXIT_INCONSISTENT
        };
        Ok(CommandOutput::ok(code, out))
    })())
}

fn render_primes(p: &[u64]) -> String {
    if p.is_empty() {
        "none".into()
    } else {
        render_multiplicities(&p.iter().map(|&q| q as usize).collect::<Vec<_>>())
    }
}

pub fn cmd_oracle(config: &RunConfig, inputs: &Inputs) -> CommandOutput {
    finish((|| {
        config
            .validate()
            .map_err(|e| (EXIT_INPUT, format!("error: {e}")))?;
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => oracle_in(ctx, &category, config, inputs))
    })())
}

fn oracle_in<R: Ring>(
    ctx: &Context<R>,
    category: &Category,
    config: &RunConfig,
    inputs: &Inputs,
) -> Result<CommandOutput, Failure> {
    let start = Instant::now();
    let generators = load_generators(ctx, inputs)?;
    let y = load_target(ctx, inputs)?;
    let bounds = OracleBounds::new(config.max_depth, config.max_total_rank);
    let mut out = document_header("oracle-report", category, &inputs.manifest);
    out.push('\n');
    out.push_str(&config.render());
    out.push_str("\n[result]\n");
    let code = match ctx.oracle_member(&generators, &y, &bounds) {
        Ok(o) => {
            let _ = writeln!(
                out,
                "verdict = {}",
                if o.member { "member" } else { "not found" }
            );
            let _ = writeln!(
                out,
                "found_at_depth = {}",
                o.found_at_depth.map_or("none".into(), |d| d.to_string())
            );
            let _ = writeln!(out, "pool_size = {}", o.pool_size);
            let _ = writeln!(out, "skipped_over_rank_bound = {}", o.skipped);
            let _ = writeln!(out, "saturated = {}", o.saturated);
            if o.member {
                EXIT_MEMBER
            } else {
                EXIT_UNDETERMINED
            }
        }
        Err(OracleError::BoundsExceeded(why)) => {
            out.push_str("verdict = bounds exceeded\n");
            let _ = writeln!(out, "reason = {why}");
            EXIT_UNDETERMINED
        }
    };
    out.push('\n');
    out.push_str(&timing(start));
    Ok(CommandOutput::ok(code, out))
}

pub fn cmd_functor_table(config: &RunConfig, inputs: &Inputs) -> CommandOutput {
    finish((|| {
        config
            .validate()
            .map_err(|e| (EXIT_INPUT, format!("error: {e}")))?;
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => functor_in(ctx, &category, config, inputs))
    })())
}

fn functor_in<R: Ring>(
    ctx: &Context<R>,
    category: &Category,
    config: &RunConfig,
    inputs: &Inputs,
) -> Result<CommandOutput, Failure> {
    let start = Instant::now();
    let generators = load_generators(ctx, inputs)?;
    let y = load_target(ctx, inputs)?;
    let mut probes: Vec<(String, Arc<Complex<R::Elem>>)> = Vec::new();
    if inputs.probes.is_empty() {
        for (i, g) in generators.elements().iter().enumerate() {
            probes.push((format!("generator {i}"), g.clone()));
        }
        probes.push(("target".into(), y.clone()));
    } else {
        for (i, t) in inputs.probes.iter().enumerate() {
            probes.push((
                format!("probe {i}"),
                load_complex(ctx, &format!("probe {i}"), t)?,
            ));
        }
    }
    let state = ctx.build_tower(&generators, &y, config.max_stages);
    let objects: Vec<_> = probes.iter().map(|(_, p)| p.clone()).collect();
    let table = ctx.functor_values(&state, &objects);
    let mut out = document_header("functor-table", category, &inputs.manifest);
    out.push('\n');
    out.push_str(&config.render());
    out.push_str("\n[tower]\n");
    let _ = writeln!(out, "height = {}", state.height());
    let _ = writeln!(
        out,
        "stationary = {}",
        state.stages.last().is_some_and(|s| s.is_fixed_point())
    );
    for ((label, _), row) in probes.iter().zip(&table) {
        let _ = writeln!(out, "\n[probe {}]", label.replace(' ', "_"));
        for e in row {
            let image = e
                .connecting_image
                .as_ref()
                .map_or("none".into(), |g| render_group(ctx, g));
            let _ = writeln!(
                out,
                "stage {} = {} ; image in next stage = {}",
                e.stage,
                render_group(ctx, &e.group),
                image
            );
        }
    }
    out.push('\n');
    out.push_str(&timing(start));
    Ok(CommandOutput::ok(EXIT_MEMBER, out))
}

pub fn cmd_hom(inputs: &Inputs) -> CommandOutput {
    finish((|| {
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => hom_in(ctx, &category, inputs))
    })())
}

fn hom_in<R: Ring>(
    ctx: &Context<R>,
    category: &Category,
    inputs: &Inputs,
) -> Result<CommandOutput, Failure> {
    let x = load_complex(
        ctx,
        "source complex",
        inputs
            .source
            .as_deref()
            .ok_or_else(|| (EXIT_INPUT, "error: --source is required".to_string()))?,
    )?;
    let y = load_target(ctx, inputs)?;
    let hom = ctx.hom_space(&x, &y);
    let mut out = document_header("hom", category, &inputs.manifest);
    out.push_str("\n[hom]\n");
    let _ = writeln!(out, "group = {}", render_group(ctx, hom.group()));
    let _ = writeln!(out, "generators = {}", hom.dimension());
    let _ = writeln!(out, "chain_maps_rank = {}", hom.cycle_rank());
    out.push('\n');
    out.push_str(&render_complex(ctx, Some("source"), &x));
    out.push('\n');
    out.push_str(&render_complex(ctx, Some("target"), &y));
    for (i, g) in hom.generators().iter().enumerate() {
        out.push('\n');
        out.push_str(&render_map(ctx, &format!("gen{i}"), "source", "target", g));
    }
    Ok(CommandOutput::ok(EXIT_MEMBER, out))
}

pub fn cmd_cone(inputs: &Inputs) -> CommandOutput {
    finish((|| {
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => cone_in(ctx, inputs))
    })())
}

fn cone_in<R: Ring>(ctx: &Context<R>, inputs: &Inputs) -> Result<CommandOutput, Failure> {
    let text = inputs
        .map
        .as_deref()
        .ok_or_else(|| (EXIT_INPUT, "error: --map is required".to_string()))?;
    let doc = parse_document(text).map_err(|e| input_error("map file", e))?;
    let objects: BTreeMap<String, Arc<Complex<R::Elem>>> =
        named_complexes(ctx, &doc).map_err(|e| input_error("map file", e))?;
    let names: Vec<&str> = doc.sections_of("map").filter_map(|s| s.arg(0)).collect();
    let [name] = names.as_slice() else {
        return Err(input_error(
            "map file",
            "expected exactly one [map NAME] section",
        ));
    };
    let f = map_from_doc(ctx, &doc, name, &objects).map_err(|e| input_error("map file", e))?;
    let cone = ctx.cone(&f);
    Ok(CommandOutput::ok(
        EXIT_MEMBER,
        render_complex(ctx, None, &cone.object),
    ))
}

pub fn cmd_contract(inputs: &Inputs) -> CommandOutput {
    finish((|| {
        let category = load_category(inputs)?;
        dispatch!(&category, ctx => contract_in(ctx, inputs))
    })())
}

fn contract_in<R: Ring>(ctx: &Context<R>, inputs: &Inputs) -> Result<CommandOutput, Failure> {
    let x = load_target(ctx, inputs)?;
    match ctx.is_contractible(&x) {
        Some(h) => {
            let mut out = String::from("[result]\ncontractible = true\n\n");
            out.push_str(&render_complex(ctx, Some("x"), &x));
            out.push('\n');
            out.push_str(&render_homotopy(ctx, "contraction", "x", "x", &h));
            Ok(CommandOutput::ok(EXIT_MEMBER, out))
        }
        None => Ok(CommandOutput::ok(
            EXIT_UNDETERMINED,
            "[result]\ncontractible = false\n".into(),
        )),
    }
}
