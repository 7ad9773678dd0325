use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use pgblock::analysis::bounds::Lemma;
use pgblock::analysis::certify::{certify_linearity, CertifyOptions};
use pgblock::analysis::suite::{run_lemma_suite, Status, SuiteEntry, SuiteOptions};
use pgblock::analysis::AnalysisError;
use pgblock::blocking::{self, analyze, analyze_with_census, BlockingOptions, BlockingReport, LinearSetInfo};
use pgblock::census::LineCensus;
use pgblock::corpus;
use pgblock::geometry::Geometry;
use pgblock::io::{parse_code_rows, parse_point_set, parse_reduced, write_point_set, write_reduced};
use pgblock::pointset::PointSet;
use pgblock::reduction::SpreadContext;
use pgblock::search::{enumerate_minimal, small_threshold, verify_catalog, Linearity, SearchConfig, SearchError};

use crate::output::{write_json, write_text};
use crate::{parse_list, BuildCmd, Cli, Command, Failure, LinearFrom, Outcome, ProjectArgs, SearchArgs, VerifyArgs};

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Build { what } => build(cli, what),
        Command::Verify(args) => verify(cli, args),
        Command::Search(args) => search(cli, args),
        Command::Project(args) => project(cli, args),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn options(cli: &Cli, linear: Option<LinearSetInfo>) -> BlockingOptions {
    BlockingOptions { seed: cli.seed, linear, ..Default::default() }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(r: &BlockingReport) -> String {
    let e = r.exponent_e.map_or("-".to_string(), |e| e.to_string());
    format!(
        "{} points, blocking {}, minimal {}, small {}, exponent {e}",
        r.size,
        yes(r.is_blocking),
        yes(r.is_minimal),
        yes(r.is_small)
    )
}

/// Subfield degree `e` with `p^e = q0`.
fn degree_of(p: u32, q0: u64) -> Option<u32> {
    (1..=31).find(|&e| (p as u64).checked_pow(e) == Some(q0))
}

struct Built {
    name: String,
    geometry: Geometry,
    points: PointSet,
    linear: Option<LinearSetInfo>,
    reduced: Option<String>,
}

fn build(cli: &Cli, what: &BuildCmd) -> Result<Outcome, Failure> {
    let built = match what {
        BuildCmd::Line { field, n } => from_instance(corpus::line(*n, field.field()?)?),
        BuildCmd::BaerSubplane { field, n } => from_instance(corpus::baer_subplane_in(*n, field.field()?)?),
        BuildCmd::LinearSet { from: LinearFrom::FromVectors { field, n, e, vectors } } => {
            let f = field.field()?;
            let gens = parse_code_rows(&read(vectors)?, n + 1, f.q() as u64).context("vectors file")?;
            let name = format!("linear set of rank at most {} in PG({n},{})", gens.len(), f.q());
            let inst = corpus::linear_set(name, *n, f, *e, &gens)?;
            let reduced = inst.reduced.as_ref().map(|pi| write_reduced(pi.ambient_dim(), pi_q0(&inst), pi.rows()));
            Built { reduced, ..from_instance(inst) }
        }
        BuildCmd::LinearSet { from: LinearFrom::FromSubspace { field, n, e, subspace } } => {
            let f = field.field()?;
            let red = parse_reduced(&read(subspace)?).context("subspace file")?;
            let ctx = SpreadContext::new(*n, f.clone(), *e)?;
            let m = ctx.reduced().n();
            if red.m != m || red.q0 != ctx.q0() as u64 {
                return Err(anyhow!("subspace file is for RED {} {}, expected RED {m} {}", red.m, red.q0, ctx.q0()).into());
            }
            let pi = ctx.reduced_subspace(red.rows);
            if pi.is_empty() {
                return Err(anyhow!("the subspace is zero").into());
            }
            let points = ctx.linear_set_from_subspace(&pi)?;
            let rank = pi.rows().len();
            Built {
                name: format!("rank-{rank} linear set in PG({n},{})", f.q()),
                geometry: Geometry::lazy(*n, f)?,
                points,
                linear: Some(LinearSetInfo { e: *e, rank }),
                reduced: Some(write_reduced(m, ctx.q0() as u64, pi.rows())),
            }
        }
    };
    let report = analyze(&built.geometry, &built.points, &options(cli, built.linear))?;
    write_text(&cli.out, "points.pg", &write_point_set(&built.geometry, &built.points))?;
    write_json(&cli.out, "report.json", &report)?;
    write_json(&cli.out, "field.json", &built.geometry.field().record())?;
    if let Some(red) = &built.reduced {
        write_text(&cli.out, "subspace.red", red)?;
    }
    let summary = format!("{}: {}", built.name, describe(&report));
    println!("{summary}");
    Ok(Outcome { code: 0, summary })
}

fn pi_q0(inst: &corpus::Instance) -> u64 {
    let f = inst.geometry.field();
    (f.p() as u64).pow(inst.linear.map_or(f.t(), |l| l.e))
}

fn from_instance(inst: corpus::Instance) -> Built {
    Built { name: inst.name, geometry: inst.geometry, points: inst.points, linear: inst.linear, reduced: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Check {
    OneModP,
    Sublines,
    Lemmas,
    Certify,
}

fn parse_checks(s: &str) -> anyhow::Result<BTreeSet<Check>> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| match w {
            "1modp" => Ok(Check::OneModP),
            "sublines" => Ok(Check::Sublines),
            "lemmas" => Ok(Check::Lemmas),
            "certify" => Ok(Check::Certify),
            other => bail!("unknown check {other:?}; expected 1modp, sublines, lemmas or certify"),
        })
        .collect()
}

fn property(id: &str, quote: &str, bound: Option<i64>, measured: Option<i64>, status: Status, detail: String) -> SuiteEntry {
    SuiteEntry {
        lemma: id.into(),
        anchor_quote: quote.into(),
        bound,
        measured,
        status,
        scope: "exhaustive".into(),
        detail,
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn property_entries(g: &Geometry, r: &BlockingReport) -> Vec<SuiteEntry> {
    let w = &r.witnesses;
    let blocking_detail = match w.unblocked_hyperplane {
        Some(h) => format!("hyperplane {} misses B ({:?})", h, r.blocking_method),
        None => format!("{:?}", r.blocking_method),
    };
    let minimal = if r.is_blocking {
        property(
            "minimal",
            "every point of B lies on a tangent hyperplane",
            Some(0),
            Some(w.inessential.len() as i64),
            pass_fail(r.is_minimal),
            format!("{} tangent witnesses, inessential points {:?}", w.tangents.len(), w.inessential),
        )
    } else {
        property("minimal", "every point of B lies on a tangent hyperplane", None, None, Status::Informational, "not blocking".into())
    };
    let threshold = small_threshold(g.q()) as i64;
    vec![
        property("blocking", "B meets every hyperplane", None, None, pass_fail(r.is_blocking), blocking_detail),
        minimal,
        property(
            "small",
            "|B| < 3(q+1)/2",
            Some(threshold),
            Some(r.size as i64),
            if r.is_small { Status::Pass } else { Status::Informational },
            String::new(),
        ),
    ]
}

fn load_evidence(args: &VerifyArgs, g: &Geometry, b: &PointSet) -> anyhow::Result<Option<LinearSetInfo>> {
    let Some(path) = &args.subspace else {
        return Ok(None);
    };
    let red = parse_reduced(&read(path)?).context("subspace file")?;
    let p = g.field().p();
    let e = degree_of(p, red.q0).ok_or_else(|| anyhow!("q0 = {} is not a power of {p}", red.q0))?;
    if args.e.is_some_and(|x| x != e) {
        bail!("--e {} does not match q0 = {} in the subspace file", args.e.unwrap(), red.q0);
    }
    let ctx = SpreadContext::new(g.n(), g.field().clone(), e)?;
    if red.m != ctx.reduced().n() {
        bail!("subspace file has m = {}, expected {}", red.m, ctx.reduced().n());
    }
    let pi = ctx.reduced_subspace(red.rows);
    if ctx.linear_set_from_subspace(&pi)? != *b {
        bail!("the subspace does not generate the input point set");
    }
    Ok(Some(LinearSetInfo { e, rank: pi.rows().len() }))
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, Failure> {
    let checks = parse_checks(&args.checks)?;
    let block = parse_point_set(&read(&args.input)?).with_context(|| format!("{}", args.input.display()))?;
    let (g, b) = (&block.geometry, &block.points);
    if b.is_empty() {
        return Err(anyhow!("the point set is empty").into());
    }
    let linear = load_evidence(args, g, b)?;
    let census = LineCensus::build(g, b);
    let report = analyze_with_census(g, b, &census, &options(cli, linear))
        .context("blocking analysis (large spaces need --subspace as evidence)")?;

    let mut entries = property_entries(g, &report);
    let mut only = Vec::new();
    if checks.contains(&Check::OneModP) {
        only.push(Lemma::OneModP);
    }
    if checks.contains(&Check::Sublines) {
        only.push(Lemma::Sublines);
    }
    if checks.contains(&Check::Lemmas) {
        only.extend(pgblock::analysis::bounds::ALL_LEMMAS.iter().filter(|l| !matches!(l, Lemma::OneModP | Lemma::Sublines)));
    }
    if !only.is_empty() {
        let opts = SuiteOptions { only: Some(only), ..Default::default() };
        entries.extend(run_lemma_suite(g, b, &census, &report, &opts));
    }
    if checks.contains(&Check::Certify) {
        let quote = "B = B(xi) for a subspace xi of dimension h in the reduced space";
        let entry = match certify_linearity(g, b, &census, &report, &CertifyOptions::default()) {
            Ok(cert) => {
                write_json(&cli.out, "certificate.json", &cert)?;
                let status = if cert.verified {
                    Status::Pass
                } else if cert.hypotheses.inside {
                    Status::Fail
                } else {
                    Status::OutsideHypotheses
                };
                let detail = format!("{} lifted sublines, {} skipped, {}", cert.lifted_lines.len(), cert.skipped, cert.label);
                property("certify", quote, Some(cert.h as i64), Some(cert.xi_dim as i64), status, detail)
            }
            Err(err @ (AnalysisError::NotSmallMinimal | AnalysisError::NonIntegralDegree { .. } | AnalysisError::NoSecant)) => {
                property("certify", quote, None, None, Status::Informational, err.to_string())
            }
            Err(err) => return Err(err.into()),
        };
        entries.push(entry);
    }

    write_json(&cli.out, "report.json", &report)?;
    write_json(&cli.out, "suite.json", &entries)?;
    println!("{:?}: {}", g, describe(&report));
    for e in &entries {
        let status = serde_json::to_value(e.status)?;
        let num = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
        println!(
            "{:<18} {:<18} measured {:>8}  bound {:>8}  {}",
            status.as_str().unwrap_or(""),
            e.lemma,
            num(e.measured),
            num(e.bound),
            e.scope
        );
        if e.status == Status::Fail {
            println!("    \"{}\"", e.anchor_quote);
        }
    }
    let fails = entries.iter().filter(|e| e.status == Status::Fail).count();
    let summary = format!("{} checks, {fails} FAIL", entries.len());
    println!("{summary}");
    Ok(Outcome { code: if fails > 0 { 1 } else { 0 }, summary })
}

fn search(cli: &Cli, args: &SearchArgs) -> Result<Outcome, Failure> {
    let g = Geometry::lazy(args.n, args.field.field()?)?;
    let mut cfg = SearchConfig::new(g.clone());
    cfg.max_size = args.max_size;
    cfg.seed = cli.seed;
    cfg.force = args.force;
    cfg.prune = !args.no_prune;
    let res = enumerate_minimal(&cfg).map_err(|e| match e {
        SearchError::GuardExceeded { .. } => Failure { code: 3, err: e.into() },
        other => Failure::from(other),
    })?;
    let v = verify_catalog(&g, &res);
    let mut text = String::new();
    for (i, entry) in res.catalog.iter().enumerate() {
        let kind = match &entry.linearity {
            Linearity::Line => "line",
            Linearity::Certified { .. } => "certified linear",
            Linearity::Uncertified { .. } => "uncertified",
        };
        text.push_str(&format!("# entry {i}: {} points, {kind}\n", entry.points.len()));
        text.push_str(&write_point_set(&g, &entry.point_set(&g)));
    }
    write_text(&cli.out, "catalog.pg", &text)?;
    write_json(&cli.out, "catalog.json", &res)?;
    write_json(&cli.out, "verification.json", &v)?;
    let summary = format!(
        "{:?}, max size {}: {} minimal blocking sets, sizes {:?}; {} lines, {} certified, {} uncertified, {} alarms",
        g,
        res.max_size,
        res.catalog.len(),
        v.sizes,
        v.lines,
        v.certified,
        v.uncertified,
        v.alarms.len()
    );
    println!("{summary}");
    println!(
        "nodes {}, pruned {}, leaves {}, non-minimal leaves {}",
        res.counters.nodes, res.counters.pruned, res.counters.leaves, res.counters.non_minimal_leaves
    );
    let code = if v.alarms.is_empty() && v.uncertified == 0 { 0 } else { 1 };
    Ok(Outcome { code, summary })
}

fn coords_arg(s: &str, g: &Geometry, what: &str) -> anyhow::Result<Vec<u32>> {
    let v = parse_list(s).with_context(|| what.to_string())?;
    if v.len() != g.n() + 1 || v.iter().any(|&c| c as u64 >= g.q()) {
        bail!("{what} needs {} codes below {}", g.n() + 1, g.q());
    }
    Ok(v)
}

fn project(cli: &Cli, args: &ProjectArgs) -> Result<Outcome, Failure> {
    let block = parse_point_set(&read(&args.input)?).with_context(|| format!("{}", args.input.display()))?;
    let (g, b) = (&block.geometry, &block.points);
    if g.n() < 2 {
        return Err(anyhow!("projection needs n >= 2").into());
    }
    let center = match &args.center {
        Some(s) => g.index_of(&coords_arg(s, g, "--center")?)?,
        None => blocking::find_tangent_only_point(g, b, blocking::DEFAULT_WORK_BUDGET)?
            .ok_or_else(|| anyhow!("every point outside the set lies on a secant"))?,
    };
    let center_coords = g.coords(center);
    let hp = match &args.hyperplane {
        Some(s) => g.hyperplane_from_dual(&coords_arg(s, g, "--hyperplane")?)?,
        None => g.hyperplanes().find(|h| !g.incident(h, &center_coords)).expect("some hyperplane misses a point"),
    };
    let (target, image) = blocking::project(g, b, center, &hp)?;
    let before = analyze(g, b, &options(cli, None))?;
    let after = analyze(&target, &image, &options(cli, None))?;
    write_text(&cli.out, "image.pg", &write_point_set(&target, &image))?;
    write_json(&cli.out, "before.json", &before)?;
    write_json(&cli.out, "after.json", &after)?;
    write_json(
        &cli.out,
        "projection.json",
        &serde_json::json!({
            "center": center_coords,
            "hyperplane": hp.dual,
            "source_size": b.len(),
            "image_size": image.len(),
        }),
    )?;
    let ssm = |r: &BlockingReport| r.is_blocking && r.is_minimal && r.is_small;
    println!("before {:?}: {}", g, describe(&before));
    println!("after  {:?}: {}", target, describe(&after));
    let ok = !ssm(&before) || ssm(&after);
    let summary = format!(
        "projection from {center_coords:?} onto {:?}: {} -> {} points{}",
        hp.dual,
        b.len(),
        image.len(),
        if ok { "" } else { "; FAIL: the image is not a small minimal blocking set" }
    );
    println!("{summary}");
    Ok(Outcome { code: if ok { 0 } else { 1 }, summary })
}
