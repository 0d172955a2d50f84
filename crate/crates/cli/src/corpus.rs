//! Bundled presentations with expected-results files, and the runner that
//! recomputes every recorded value and reports mismatches.

use hybrid_core::algebra::build_algebra;
use hybrid_core::data::BiserialQuiverData;
use hybrid_core::error::{Error, Result};
use hybrid_core::format::parse_presentation;
use hybrid_core::modrep::{arrow_module, omega_orbit, simple_module, DEFAULT_PERIOD_BOUND};
use hybrid_core::relations::generate_relations;
use hybrid_core::symmetric::{symmetric_form_exists, verify_verdict};
use hybrid_core::validate::{validate, Level};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Names of the checks, in report order.
pub const CHECKS: [&str; 7] = ["validation", "cap", "dimension_vector", "cartan", "blocks", "symmetric", "periods"];

/// The directory shipped with the sources.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

/// Contents of `expected/<name>.json`. Fields other than `origin`,
/// `validation` and `cap` are `null` when they do not apply: everything
/// after `cap` is `null` for an algebra that hits a cap, and `periods` is
/// `null` unless the presentation passes full validation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub origin: String,
    /// Rule ids violated at the full validation level, in report order.
    pub validation: Vec<String>,
    pub cap: bool,
    pub dimension_vector: Option<Vec<usize>>,
    pub cartan: Option<Vec<Vec<usize>>>,
    /// Vertex names of each block.
    pub blocks: Option<Vec<Vec<String>>>,
    pub symmetric: Option<bool>,
    pub periods: Option<Periods>,
}

/// Ω-periods of arrow modules `βH` and simple modules, `null` when none is
/// found within the default bound.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Periods {
    pub arrows: BTreeMap<String, Option<usize>>,
    pub simples: BTreeMap<String, Option<usize>>,
}

/// Computes every field of an expected-results file except `origin`.
pub fn observe(data: &BiserialQuiverData) -> Result<Expected> {
    let q = data.quiver();
    let report = validate(data, Level::Full)?;
    let mut validation: Vec<String> = Vec::new();
    for v in &report.violations {
        if !validation.iter().any(|r| r == v.rule.id()) {
            validation.push(v.rule.id().to_string());
        }
    }
    let mut out = Expected { validation, ..Expected::default() };
    let a = match build_algebra(data, &generate_relations(data, &data.classify_arrows())) {
        Ok(a) => a,
        Err(Error::TruncationCap { .. } | Error::SearchCap(_)) => {
            out.cap = true;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.dimension_vector = Some(a.dimension_vector().into_iter().map(|(_, d)| d).collect());
    out.cartan = Some(a.cartan_matrix());
    out.blocks = Some(
        a.block_vertex_sets()
            .iter()
            .map(|b| b.iter().map(|&v| q.vertex_name(v).to_string()).collect())
            .collect(),
    );
    let verdict = symmetric_form_exists(&a);
    if !verify_verdict(&a, &verdict) {
        return Err(Error::Construction("the symmetric-form verdict does not verify".into()));
    }
    out.symmetric = Some(verdict.is_symmetric());
    if report.passed() {
        let mut periods = Periods::default();
        for x in 0..q.num_arrows() {
            let orbit = omega_orbit(&a, &arrow_module(&a, x)?, DEFAULT_PERIOD_BOUND)?;
            periods.arrows.insert(q.arrow_name(x).to_string(), orbit.period);
        }
        for &v in a.vertices() {
            let orbit = omega_orbit(&a, &simple_module(&a, v), DEFAULT_PERIOD_BOUND)?;
            periods.simples.insert(q.vertex_name(v).to_string(), orbit.period);
        }
        out.periods = Some(periods);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub name: String,
    /// `"pass"` or `"fail"` for each check.
    pub checks: BTreeMap<String, String>,
    /// Expected and observed values of failing checks.
    pub details: BTreeMap<String, String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.details.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub passed: bool,
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("values serialize")
}

fn compare(name: &str, expected: &Expected, observed: &Expected) -> EntryReport {
    let pairs = [
        (json(&expected.validation), json(&observed.validation)),
        (json(&expected.cap), json(&observed.cap)),
        (json(&expected.dimension_vector), json(&observed.dimension_vector)),
        (json(&expected.cartan), json(&observed.cartan)),
        (json(&expected.blocks), json(&observed.blocks)),
        (json(&expected.symmetric), json(&observed.symmetric)),
        (json(&expected.periods), json(&observed.periods)),
    ];
    let mut report = EntryReport { name: name.to_string(), checks: BTreeMap::new(), details: BTreeMap::new() };
    for (check, (e, o)) in CHECKS.iter().zip(pairs) {
        let ok = e == o;
        report.checks.insert(check.to_string(), if ok { "pass" } else { "fail" }.to_string());
        if !ok {
            report.details.insert(check.to_string(), format!("expected {e}, got {o}"));
        }
    }
    report
}

fn failed_entry(name: &str, why: String) -> EntryReport {
    let checks = CHECKS.iter().map(|c| (c.to_string(), "fail".to_string())).collect();
    EntryReport { name: name.to_string(), checks, details: [("entry".to_string(), why)].into() }
}

pub fn run_entry(dir: &Path, name: &str) -> EntryReport {
    let load = || -> std::result::Result<(BiserialQuiverData, Expected), String> {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).map_err(|e| e.to_string())?;
        let data = parse_presentation(&text).map_err(|e| e.to_string())?;
        let path = dir.join("expected").join(format!("{name}.json"));
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let expected = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok((data, expected))
    };
    match load() {
        Ok((data, expected)) => match observe(&data) {
            Ok(observed) => compare(name, &expected, &observed),
            Err(e) => failed_entry(name, e.to_string()),
        },
        Err(e) => failed_entry(name, e),
    }
}

/// Presentation names in `dir`, sorted.
pub fn entry_names(dir: &Path) -> Result<Vec<String>> {
    let read = std::fs::read_dir(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let mut names: Vec<String> = read
        .filter_map(|e| {
            let p = e.ok()?.path();
            (p.is_file() && p.extension()? == "json").then(|| p.file_stem().map(|s| s.to_string_lossy().into_owned()))?
        })
        .collect();
    names.sort();
    Ok(names)
}

/// Runs every entry, one thread per entry, and reports them by name.
pub fn run(dir: &Path) -> Result<CorpusReport> {
    let names = entry_names(dir)?;
    let entries: Vec<EntryReport> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || run_entry(dir, n))).collect();
        handles
            .into_iter()
            .zip(&names)
            .map(|(h, n)| h.join().unwrap_or_else(|_| failed_entry(n, "the check panicked".into())))
            .collect()
    });
    let passed = entries.iter().all(EntryReport::passed);
    Ok(CorpusReport { entries, passed })
}

/// One line per entry, then one line per failing check.
pub fn render_text(report: &CorpusReport) -> String {
    let width = report.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in &report.entries {
        let fails: Vec<&str> = e.details.keys().map(String::as_str).collect();
        let status = if fails.is_empty() { "pass".to_string() } else { format!("FAIL ({})", fails.join(", ")) };
        out += &format!("{:width$}  {status}\n", e.name);
    }
    for e in report.entries.iter().filter(|e| !e.passed()) {
        for (check, detail) in &e.details {
            out += &format!("{}: {check}: {detail}\n", e.name);
        }
    }
    let bad = report.entries.iter().filter(|e| !e.passed()).count();
    out += &format!("{} entries, {} failed\n", report.entries.len(), bad);
    out
}
