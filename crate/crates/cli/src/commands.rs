use std::fmt::Write;
use std::path::Path;
use std::sync::Arc;

use glw_core::cmodule::{parse_module, representable, CModule};
use glw_core::filters::{
    check_axioms, check_local, enumerate_gabriel_filters, parse_filter, torsion_counterexample, torsion_radical, Completion,
    Filter, Lattices, Witness,
};
use glw_core::localization::verify::{verify_theorems, Status, VerifyConfig, VerifyReport};
use glw_core::localization::{gabriel_localize, is_closed, prelocalize, ClosedWitness};
use glw_core::presentation::{build_category, parse_category, CategoryData};
use serde::Serialize;

use crate::{dot, Format, Reading};

const W5_GCAT: &str = include_str!("../../../fixtures/w5.gcat");
const WINDOW_GFIL: &str = include_str!("../../../fixtures/window_filter.gfil");

pub struct Ctx {
    pub format: Format,
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub dmax: usize,
    pub timings: bool,
}

/// Rendered output and exit status, or an input error message.
pub type CmdResult = Result<(String, Outcome), String>;

pub fn dims_text(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn located(path: &Path, e: glw_core::Error) -> String {
    // Parse errors already start with `line:col`.
    match e {
        glw_core::Error::Parse { .. } => format!("{}:{}", path.display(), e),
        _ => format!("{}: {}", path.display(), e),
    }
}

fn category_from_text(path: &Path, text: &str) -> Result<Arc<CategoryData>, String> {
    let q = parse_category(text).map_err(|e| located(path, e))?;
    build_category(q).map(Arc::new).map_err(|e| located(path, e))
}

fn load_category(path: &Path, cap: u64) -> Result<(Arc<CategoryData>, Lattices), String> {
    let cat = category_from_text(path, &read(path)?)?;
    let lat = Lattices::new(&cat, cap).map_err(|e| located(path, e))?;
    Ok((cat, lat))
}

fn filter_from_text(path: &Path, text: &str, lat: &Lattices, reading: Reading) -> Result<(Filter, String), String> {
    let spec = parse_filter(text, lat).map_err(|e| located(path, e))?;
    Ok(match reading {
        Reading::File => {
            let name = spec.completion.map_or("literal".to_string(), |c| c.to_string());
            (spec.filter(lat), name)
        }
        Reading::Literal => (spec.literal(), "literal".into()),
        Reading::Upclose => (glw_core::filters::complete_filter(lat, &spec.generators, Completion::Upclose), "upclose".into()),
        Reading::UpcloseMeet => {
            (glw_core::filters::complete_filter(lat, &spec.generators, Completion::UpcloseMeet), "upclose+meet".into())
        }
    })
}

fn load_filter(path: &Path, lat: &Lattices, reading: Reading) -> Result<(Filter, String), String> {
    filter_from_text(path, &read(path)?, lat, reading)
}

fn load_module(path: &Path, cat: &Arc<CategoryData>) -> Result<CModule, String> {
    parse_module(&read(path)?, cat).map_err(|e| located(path, e))
}

/// Serializes `report` or takes the text rendering; DOT is reserved for
/// lattice output.
fn emit<R: Serialize>(ctx: &Ctx, report: &R, text: impl FnOnce() -> String) -> Result<String, String> {
    match ctx.format {
        Format::Text => Ok(text()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        Format::Dot => Err("dot output is only available for `ideals` and `example`".into()),
    }
}

#[derive(Serialize)]
struct FilterOut {
    description: String,
    members: Vec<Vec<usize>>,
}

impl FilterOut {
    fn new(f: &Filter, lat: &Lattices) -> Self {
        FilterOut { description: f.describe(lat), members: f.members.clone() }
    }
}

#[derive(Serialize)]
struct AxiomOut {
    axiom: &'static str,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rechecked: Option<bool>,
}

impl AxiomOut {
    fn new(axiom: &'static str, w: Option<&Witness>, lat: &Lattices, f: &Filter) -> Self {
        AxiomOut {
            axiom,
            holds: w.is_none(),
            witness: w.cloned(),
            description: w.map(|w| w.describe(lat)),
            rechecked: w.map(|w| w.recheck(lat, f)),
        }
    }

    fn line(&self) -> String {
        match (&self.description, self.rechecked) {
            (Some(d), Some(ok)) => {
                format!("{} fails: {} ({})", self.axiom, d, if ok { "rechecked" } else { "RECHECK FAILED" })
            }
            _ => format!("{} holds", self.axiom),
        }
    }
}

fn axioms_out(lat: &Lattices, f: &Filter) -> (Vec<AxiomOut>, bool, bool) {
    let report = check_axioms(lat, f);
    let out = report.verdicts().iter().map(|&(a, w)| AxiomOut::new(a, w, lat, f)).collect();
    (out, report.is_linear(), report.is_gabriel())
}

// homs

#[derive(Serialize)]
struct HomBasis {
    source: String,
    target: String,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct HomsReport {
    command: &'static str,
    prime: u32,
    objects: Vec<String>,
    /// `dims[a][b] = dim Hom(a, b)`.
    dims: Vec<Vec<usize>>,
    bases: Vec<HomBasis>,
}

pub fn homs(ctx: &Ctx, cat_path: &Path) -> CmdResult {
    let cat = category_from_text(cat_path, &read(cat_path)?)?;
    let n = cat.num_objects();
    let objects: Vec<String> = (0..n).map(|c| cat.object_name(c).to_string()).collect();
    let dims: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| cat.hom_dim(a, b)).collect()).collect();
    let mut bases = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let basis: Vec<String> =
                (0..cat.hom_dim(a, b)).map(|k| cat.format_morphism(&cat.basis_morphism(a, b, k))).collect();
            if !basis.is_empty() {
                bases.push(HomBasis { source: objects[a].clone(), target: objects[b].clone(), basis });
            }
        }
    }
    let report = HomsReport { command: "homs", prime: cat.prime().get(), objects, dims, bases };
    let text = emit(ctx, &report, || {
        let width = report.objects.iter().map(String::len).max().unwrap_or(1).max(2);
        let mut s = String::new();
        writeln!(s, "dim Hom(row, column) over F_{}", report.prime).unwrap();
        write!(s, "{:width$}", "").unwrap();
        for o in &report.objects {
            write!(s, " {:>width$}", o).unwrap();
        }
        s.push('\n');
        for (a, row) in report.dims.iter().enumerate() {
            write!(s, "{:width$}", report.objects[a]).unwrap();
            for d in row {
                write!(s, " {:>width$}", d).unwrap();
            }
            s.push('\n');
        }
        s.push_str("bases\n");
        for h in &report.bases {
            writeln!(s, "  {} -> {}: {}", h.source, h.target, h.basis.join(", ")).unwrap();
        }
        s
    })?;
    Ok((text, Outcome::Success))
}

// ideals

#[derive(Serialize)]
struct IdealOut {
    index: usize,
    label: String,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct LatticeOut {
    object: String,
    count: usize,
    ideals: Vec<IdealOut>,
    hasse: Vec<(usize, usize)>,
}

impl LatticeOut {
    fn new(lat: &Lattices, c: usize) -> Self {
        let l = lat.at(c);
        LatticeOut {
            object: lat.category().object_name(c).to_string(),
            count: l.len(),
            ideals: l
                .ideals
                .iter()
                .enumerate()
                .map(|(i, ideal)| IdealOut { index: i, label: lat.ideal_label(c, i), dims: ideal.dims() })
                .collect(),
            hasse: l.hasse.clone(),
        }
    }

    fn text(&self, s: &mut String) {
        writeln!(s, "ideals of P_{}: {}", self.object, self.count).unwrap();
        let rows: Vec<(String, &str)> = self.ideals.iter().map(|i| (dims_text(&i.dims), i.label.as_str())).collect();
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        for (i, (d, label)) in rows.iter().enumerate() {
            writeln!(s, "  {:>2}  {:width$}  {}", i, d, label).unwrap();
        }
        let covers: Vec<String> = self.hasse.iter().map(|(a, b)| format!("{}<{}", a, b)).collect();
        writeln!(s, "hasse: {}", covers.join(" ")).unwrap();
    }
}

#[derive(Serialize)]
struct IdealsReport {
    command: &'static str,
    #[serde(flatten)]
    lattice: LatticeOut,
}

pub fn ideals(ctx: &Ctx, cat_path: &Path, object: &str) -> CmdResult {
    let (cat, lat) = load_category(cat_path, ctx.cap)?;
    let c = cat.object_index(object).map_err(|e| e.to_string())?;
    if ctx.format == Format::Dot {
        return Ok((dot::lattice(&lat, c), Outcome::Success));
    }
    let report = IdealsReport { command: "ideals", lattice: LatticeOut::new(&lat, c) };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        report.lattice.text(&mut s);
        s
    })?;
    Ok((text, Outcome::Success))
}

// check-filter

#[derive(Serialize)]
struct CheckFilterReport {
    command: &'static str,
    reading: String,
    filter: FilterOut,
    axioms: Vec<AxiomOut>,
    linear: bool,
    gabriel: bool,
}

pub fn check_filter(ctx: &Ctx, cat_path: &Path, fil_path: &Path, reading: Reading) -> CmdResult {
    let (_, lat) = load_category(cat_path, ctx.cap)?;
    let (f, reading) = load_filter(fil_path, &lat, reading)?;
    let (axioms, linear, gabriel) = axioms_out(&lat, &f);
    let report = CheckFilterReport { command: "check-filter", reading, filter: FilterOut::new(&f, &lat), axioms, linear, gabriel };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        writeln!(s, "filter ({}): {}", report.reading, report.filter.description).unwrap();
        for a in &report.axioms {
            writeln!(s, "  {}", a.line()).unwrap();
        }
        writeln!(s, "linear: {}", yes_no(report.linear)).unwrap();
        writeln!(s, "gabriel: {}", yes_no(report.gabriel)).unwrap();
        s
    })?;
    let ok = report.gabriel && report.axioms.iter().all(|a| a.rechecked != Some(false));
    Ok((text, if ok { Outcome::Success } else { Outcome::Failure }))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// filters

#[derive(Serialize)]
struct CensusEntry {
    index: usize,
    description: String,
    members: Vec<Vec<usize>>,
    minima: Vec<usize>,
}

#[derive(Serialize)]
struct RejectedEntry {
    index: usize,
    description: String,
    members: Vec<Vec<usize>>,
    minima: Vec<usize>,
    witness: Witness,
    witness_description: String,
}

#[derive(Serialize)]
struct FiltersReport {
    command: &'static str,
    visited: u64,
    gabriel_count: usize,
    gabriel: Vec<CensusEntry>,
    linear_only: Vec<RejectedEntry>,
}

pub fn filters(ctx: &Ctx, cat_path: &Path, budget: u64) -> CmdResult {
    let (_, lat) = load_category(cat_path, ctx.cap)?;
    let census = enumerate_gabriel_filters(&lat, budget).map_err(|e| e.to_string())?;
    let gabriel: Vec<CensusEntry> = census
        .gabriel
        .iter()
        .enumerate()
        .map(|(index, f)| CensusEntry {
            index,
            description: f.describe(&lat),
            members: f.members.clone(),
            minima: f.minima(&lat),
        })
        .collect();
    let linear_only = census
        .linear_only
        .iter()
        .enumerate()
        .map(|(index, r)| RejectedEntry {
            index,
            description: r.filter.describe(&lat),
            members: r.filter.members.clone(),
            minima: r.filter.minima(&lat),
            witness: r.witness.clone(),
            witness_description: r.witness.describe(&lat),
        })
        .collect();
    let report = FiltersReport { command: "filters", visited: census.visited, gabriel_count: gabriel.len(), gabriel, linear_only };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        writeln!(s, "gabriel filters: {}", report.gabriel_count).unwrap();
        for e in &report.gabriel {
            writeln!(s, "  #{} {}", e.index, e.description).unwrap();
        }
        writeln!(s, "linear filters failing T4: {}", report.linear_only.len()).unwrap();
        for e in &report.linear_only {
            writeln!(s, "  #{} {}", e.index, e.description).unwrap();
            writeln!(s, "      T4 fails {}", e.witness_description).unwrap();
        }
        s
    })?;
    Ok((text, Outcome::Success))
}

// torsion

#[derive(Serialize)]
struct TorsionCounterexample {
    object: String,
    element: Vec<u32>,
    annihilator: String,
}

#[derive(Serialize)]
struct TorsionReport {
    command: &'static str,
    reading: String,
    filter: FilterOut,
    source_dims: Vec<usize>,
    torsion_dims: Vec<usize>,
    torsion: bool,
    torsion_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<TorsionCounterexample>,
}

fn require_axioms(lat: &Lattices, f: &Filter, gabriel: bool) -> Result<(), String> {
    let report = check_axioms(lat, f);
    let ok = if gabriel { report.is_gabriel() } else { report.is_linear() };
    if ok {
        return Ok(());
    }
    let first = report.verdicts().iter().find_map(|(_, w)| *w).map(|w| w.describe(lat)).unwrap_or_default();
    Err(format!("filter does not satisfy {}: {}", report.failing().join(", "), first))
}

pub fn torsion(ctx: &Ctx, cat_path: &Path, fil_path: &Path, mod_path: &Path, reading: Reading) -> CmdResult {
    let (cat, lat) = load_category(cat_path, ctx.cap)?;
    let (f, reading) = load_filter(fil_path, &lat, reading)?;
    let m = load_module(mod_path, &cat)?;
    require_axioms(&lat, &f, false)?;
    let t = torsion_radical(&m, &lat, &f).map_err(|e| e.to_string())?;
    let counterexample = torsion_counterexample(&m, &lat, &f, ctx.cap)
        .map_err(|e| e.to_string())?
        .map(|(c, x, a)| TorsionCounterexample {
            object: cat.object_name(c).to_string(),
            element: x,
            annihilator: lat.ideal_label(c, a),
        });
    let report = TorsionReport {
        command: "torsion",
        reading,
        filter: FilterOut::new(&f, &lat),
        source_dims: m.dims().to_vec(),
        torsion_dims: t.dims(),
        torsion: t.is_full(),
        torsion_free: t.is_zero(),
        counterexample,
    };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        writeln!(s, "filter ({}): {}", report.reading, report.filter.description).unwrap();
        writeln!(s, "module dims: {}", dims_text(&report.source_dims)).unwrap();
        writeln!(s, "torsion radical dims: {}", dims_text(&report.torsion_dims)).unwrap();
        writeln!(s, "torsion: {}", yes_no(report.torsion)).unwrap();
        writeln!(s, "torsion-free: {}", yes_no(report.torsion_free)).unwrap();
        if let Some(x) = &report.counterexample {
            writeln!(s, "non-torsion element: {:?} at {}, annihilator {} not in F", x.element, x.object, x.annihilator)
                .unwrap();
        }
        s
    })?;
    Ok((text, Outcome::Success))
}

// localize

#[derive(Serialize)]
struct LocalizeReport {
    command: &'static str,
    reading: String,
    filter: FilterOut,
    prelocalized_dims: Vec<usize>,
    #[serde(flatten)]
    summary: glw_core::localization::LocalizationSummary,
    localized_module: String,
}

pub fn localize(ctx: &Ctx, cat_path: &Path, fil_path: &Path, mod_path: &Path, reading: Reading) -> CmdResult {
    let (cat, lat) = load_category(cat_path, ctx.cap)?;
    let (f, reading) = load_filter(fil_path, &lat, reading)?;
    let m = load_module(mod_path, &cat)?;
    require_axioms(&lat, &f, true)?;
    let pre = prelocalize(&m, &lat, &f).map_err(|e| e.to_string())?;
    let loc = gabriel_localize(&m, &lat, &f).map_err(|e| e.to_string())?;
    let report = LocalizeReport {
        command: "localize",
        reading,
        filter: FilterOut::new(&f, &lat),
        prelocalized_dims: pre.module.dims().to_vec(),
        summary: loc.summary(),
        localized_module: loc.module().to_gmod(&file_name(cat_path)),
    };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        let sm = &report.summary;
        writeln!(s, "filter ({}): {}", report.reading, report.filter.description).unwrap();
        writeln!(s, "module dims:        {}", dims_text(&sm.source_dims)).unwrap();
        writeln!(s, "torsion dims:       {}", dims_text(&sm.torsion_dims)).unwrap();
        writeln!(s, "prelocalized dims:  {}", dims_text(&report.prelocalized_dims)).unwrap();
        writeln!(s, "localized dims:     {}", dims_text(&sm.localized_dims)).unwrap();
        writeln!(s, "ker delta dims:     {}", dims_text(&sm.kernel_dims)).unwrap();
        writeln!(s, "coker delta dims:   {}", dims_text(&sm.cokernel_dims)).unwrap();
        s.push_str("localized module:\n");
        for line in report.localized_module.lines() {
            writeln!(s, "  {}", line).unwrap();
        }
        s
    })?;
    Ok((text, Outcome::Success))
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

// closed

#[derive(Serialize)]
struct ClosedReport {
    command: &'static str,
    reading: String,
    filter: FilterOut,
    closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ClosedWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_description: Option<String>,
}

fn describe_closed(w: &ClosedWitness, lat: &Lattices) -> String {
    let cat = lat.category();
    match w {
        ClosedWitness::Torsion { object, element } => {
            format!("torsion element {:?} at {}", element, cat.object_name(*object))
        }
        ClosedWitness::NotInjective { object, ideal, defect } => format!(
            "restriction Nat(P_{o}, M) -> Nat({}, M) at {o} has a kernel of dimension {}",
            lat.ideal_label(*object, *ideal),
            defect,
            o = cat.object_name(*object)
        ),
        ClosedWitness::NotSurjective { object, ideal, defect } => format!(
            "restriction Nat(P_{o}, M) -> Nat({}, M) at {o} misses {} dimension(s)",
            lat.ideal_label(*object, *ideal),
            defect,
            o = cat.object_name(*object)
        ),
    }
}

pub fn closed(ctx: &Ctx, cat_path: &Path, fil_path: &Path, mod_path: &Path, reading: Reading) -> CmdResult {
    let (cat, lat) = load_category(cat_path, ctx.cap)?;
    let (f, reading) = load_filter(fil_path, &lat, reading)?;
    let m = load_module(mod_path, &cat)?;
    require_axioms(&lat, &f, false)?;
    let witness = is_closed(&m, &lat, &f).map_err(|e| e.to_string())?;
    let report = ClosedReport {
        command: "closed",
        reading,
        filter: FilterOut::new(&f, &lat),
        closed: witness.is_none(),
        witness_description: witness.as_ref().map(|w| describe_closed(w, &lat)),
        witness,
    };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        writeln!(s, "filter ({}): {}", report.reading, report.filter.description).unwrap();
        writeln!(s, "closed: {}", yes_no(report.closed)).unwrap();
        if let Some(d) = &report.witness_description {
            writeln!(s, "witness: {}", d).unwrap();
        }
        s
    })?;
    Ok((text, if report.closed { Outcome::Success } else { Outcome::Failure }))
}

// verify

#[derive(Serialize)]
struct VerifyOut {
    command: &'static str,
    seed: u64,
    samples: usize,
    dmax: usize,
    passed: bool,
    reports: Vec<VerifyReport>,
}

pub fn verify(ctx: &Ctx, cat_path: &Path, fil_path: Option<&Path>, reading: Reading, o: &VerifyOptions) -> CmdResult {
    let (_, lat) = load_category(cat_path, ctx.cap)?;
    let filters: Vec<Filter> = match fil_path {
        Some(p) => vec![load_filter(p, &lat, reading)?.0],
        None => enumerate_gabriel_filters(&lat, 1_000_000).map_err(|e| e.to_string())?.gabriel,
    };
    let config = VerifyConfig {
        seed: o.seed,
        samples: o.samples,
        dmax: o.dmax,
        cap: ctx.cap,
        timings: o.timings,
        catfile: file_name(cat_path),
    };
    let reports = filters
        .iter()
        .map(|f| verify_theorems(&lat, f, &config))
        .collect::<glw_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let passed = reports.iter().all(VerifyReport::passed);
    let out = VerifyOut { command: "verify", seed: o.seed, samples: o.samples, dmax: o.dmax, passed, reports };
    let text = emit(ctx, &out, || {
        let mut s = String::new();
        writeln!(s, "seed {}, {} samples, fiber dimension <= {}", out.seed, out.samples, out.dmax).unwrap();
        for r in &out.reports {
            writeln!(s, "filter: {}", r.filter).unwrap();
            for c in &r.checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                write!(s, "  {} {} ({} cases)", status, c.name, c.cases).unwrap();
                if let Some(ms) = c.millis {
                    write!(s, " {} ms", ms).unwrap();
                }
                s.push('\n');
                if let Some(n) = &c.note {
                    writeln!(s, "       {}", n).unwrap();
                }
                if let Some(w) = &c.witness {
                    writeln!(s, "       sample {}: {}", w.sample, w.detail).unwrap();
                    for line in w.module.lines() {
                        writeln!(s, "         {}", line).unwrap();
                    }
                }
            }
        }
        let failed: usize = out.reports.iter().map(|r| r.failures().count()).sum();
        writeln!(s, "{} failing check(s) across {} filter(s)", failed, out.reports.len()).unwrap();
        s
    })?;
    Ok((text, if passed { Outcome::Success } else { Outcome::Failure }))
}

// example

#[derive(Serialize)]
struct LocalOut {
    t1: AxiomOut,
    t2: AxiomOut,
}

#[derive(Serialize)]
struct ReadingOut {
    reading: &'static str,
    filter: FilterOut,
    local: LocalOut,
    axioms: Vec<AxiomOut>,
    linear: bool,
    gabriel: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    projective_torsion: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    localized_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    localized_zero: Option<bool>,
}

#[derive(Serialize)]
struct ExampleReport {
    command: &'static str,
    lattice: LatticeOut,
    readings: Vec<ReadingOut>,
    /// Every emitted witness re-validated, and every Gabriel reading has
    /// `𝔾(P) = 0` exactly when `P` is torsion.
    consistent: bool,
}

pub fn example(ctx: &Ctx) -> CmdResult {
    let cat_path = Path::new("w5.gcat");
    let cat = category_from_text(cat_path, W5_GCAT)?;
    let lat = Lattices::new(&cat, ctx.cap).map_err(|e| located(cat_path, e))?;
    let v2 = cat.object_index("v2").map_err(|e| e.to_string())?;
    if ctx.format == Format::Dot {
        return Ok((dot::lattice(&lat, v2), Outcome::Success));
    }
    let fil_path = Path::new("window_filter.gfil");
    let p = representable(&cat, v2);
    let mut readings = Vec::new();
    let mut consistent = true;
    for (name, reading) in [("literal", Reading::Literal), ("upclose", Reading::Upclose), ("upclose+meet", Reading::UpcloseMeet)] {
        let (f, _) = filter_from_text(fil_path, WINDOW_GFIL, &lat, reading)?;
        let (axioms, linear, gabriel) = axioms_out(&lat, &f);
        let (t1, t2) = check_local(&lat, &f, v2);
        let local = LocalOut {
            t1: AxiomOut::new("T1", t1.as_ref(), &lat, &f),
            t2: AxiomOut::new("T2", t2.as_ref(), &lat, &f),
        };
        consistent &= axioms.iter().chain([&local.t1, &local.t2]).all(|a| a.rechecked != Some(false));
        let mut out = ReadingOut {
            reading: name,
            filter: FilterOut::new(&f, &lat),
            local,
            axioms,
            linear,
            gabriel,
            projective_torsion: None,
            localized_dims: None,
            localized_zero: None,
        };
        if gabriel {
            let torsion = torsion_radical(&p, &lat, &f).map_err(|e| e.to_string())?.is_full();
            let loc = gabriel_localize(&p, &lat, &f).map_err(|e| e.to_string())?;
            let zero = loc.module().is_zero();
            consistent &= zero == torsion;
            out.projective_torsion = Some(torsion);
            out.localized_dims = Some(loc.module().dims().to_vec());
            out.localized_zero = Some(zero);
        }
        readings.push(out);
    }
    let report = ExampleReport { command: "example", lattice: LatticeOut::new(&lat, v2), readings, consistent };
    let text = emit(ctx, &report, || {
        let mut s = String::new();
        report.lattice.text(&mut s);
        for r in &report.readings {
            writeln!(s, "\nprinted filter, {} reading", r.reading).unwrap();
            writeln!(s, "  {}", r.filter.description).unwrap();
            writeln!(s, "  at v2: {}; {}", r.local.t1.line(), r.local.t2.line()).unwrap();
            for a in &r.axioms {
                writeln!(s, "  {}", a.line()).unwrap();
            }
            writeln!(s, "  gabriel: {}", yes_no(r.gabriel)).unwrap();
            if let (Some(t), Some(d), Some(z)) = (r.projective_torsion, &r.localized_dims, r.localized_zero) {
                writeln!(s, "  P_v2 torsion: {}", yes_no(t)).unwrap();
                writeln!(s, "  G(P_v2) dims: {}, zero: {}", dims_text(d), yes_no(z)).unwrap();
            }
        }
        writeln!(s, "\nconsistent: {}", yes_no(report.consistent)).unwrap();
        s
    })?;
    Ok((text, if report.consistent { Outcome::Success } else { Outcome::Failure }))
}
