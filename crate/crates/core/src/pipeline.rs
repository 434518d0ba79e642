//! From a multisegment to its K-type table and a genericity certificate.
//!
//! The steps are: sort the multisegment into Langlands order, build the
//! standard module, take its head (the Langlands quotient), restrict to
//! the finite Hecke algebra and count every Specht module in it. The
//! certificate compares the multiplicity of the sign-type label `(n)` with
//! the linking criterion: it must be 1 for generic multisegments and 0
//! otherwise.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affhecke::induced_standard_module;
use crate::combin::{count_syt, enumerate_partitions, max_label, min_label, Partition};
use crate::error::{consistency, usage, HeckeError, Result};
use crate::finhecke::{hom_dimension, specht_module, HeckeParams, SpechtModule, VerifyPolicy};
use crate::modlab::cosocle;
use crate::scalar::Rational;
use crate::segments::{enumerate_by_starts, is_generic, langlands_sort, line_multiplier, Multisegment};

/// Largest rank swept without an explicit opt-in.
pub const DEFAULT_MAX_N: usize = 4;

/// Parameters for the affine algebra. On top of the finite guard, `q = 1`
/// is rejected: segment values would collapse and linking would no longer
/// be visible in the module structure.
pub fn affine_params(n: usize, q: &Rational) -> Result<HeckeParams> {
    if q.is_one() {
        return Err(HeckeError::Parameter("q = 1 is not allowed for affine computations".into()));
    }
    HeckeParams::new(n, q.clone())
}

/// Every Specht module of one rank, built once and shared.
#[derive(Clone, Debug)]
pub struct SpechtCatalog {
    params: HeckeParams,
    modules: Vec<SpechtModule>,
}

impl SpechtCatalog {
    pub fn new(params: &HeckeParams) -> Result<Self> {
        let modules = enumerate_partitions(params.n() as u32)
            .iter()
            .map(|l| specht_module(params, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpechtCatalog { params: params.clone(), modules })
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    /// In descending lexicographic order of labels.
    pub fn modules(&self) -> &[SpechtModule] {
        &self.modules
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            _ => Err(usage!("unknown verdict {s:?}")),
        }
    }
}

fn verdict(generic: bool, sign_multiplicity: u64) -> Verdict {
    if (generic && sign_multiplicity == 1) || (!generic && sign_multiplicity == 0) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Multiplicities of every Specht module in the restricted Langlands
/// quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub n: usize,
    pub q: Rational,
    pub multisegment: Multisegment,
    /// Keyed by partition, in descending lexicographic order.
    pub entries: IndexMap<Partition, u64>,
    pub quotient_dim: usize,
}

impl MultiplicityTable {
    pub fn get(&self, label: &Partition) -> u64 {
        self.entries.get(label).copied().unwrap_or(0)
    }

    pub fn sign_multiplicity(&self) -> u64 {
        min_label(self.n as u32).map(|l| self.get(&l.0)).unwrap_or(0)
    }

    pub fn trivial_multiplicity(&self) -> u64 {
        max_label(self.n as u32).map(|l| self.get(&l.0)).unwrap_or(0)
    }

    pub fn generic(&self) -> bool {
        is_generic(&self.multisegment)
    }

    pub fn verdict(&self) -> Verdict {
        verdict(self.generic(), self.sign_multiplicity())
    }

    /// `Σ entries · dims`, which must equal the quotient dimension.
    pub fn accounted_dim(&self) -> u64 {
        self.entries.iter().map(|(l, m)| m * count_syt(l)).sum()
    }
}

/// K-type table of the Langlands quotient of `m` at `q`.
pub fn ktype_table(m: &Multisegment, q: &Rational) -> Result<MultiplicityTable> {
    let params = affine_params(m.n(), q)?;
    let catalog = SpechtCatalog::new(&params)?;
    ktype_table_with(&catalog, m)
}

/// As [`ktype_table`], reusing prebuilt Specht modules.
pub fn ktype_table_with(catalog: &SpechtCatalog, m: &Multisegment) -> Result<MultiplicityTable> {
    let params = catalog.params();
    let n = params.n();
    if m.n() != n {
        return Err(usage!("multisegment {m} has total length {}, expected {n}", m.n()));
    }
    check_lines_independent(m, params.q())?;
    let canonical = langlands_sort(m);
    let standard = induced_standard_module(params, &canonical)?;
    let head = cosocle(&standard)?;
    let restricted = head.module().restrict_to_finite();
    let mut entries = IndexMap::new();
    for s in catalog.modules() {
        let mult = hom_dimension(s.module(), &restricted)? as u64;
        entries.insert(s.label().clone(), mult);
    }
    let table =
        MultiplicityTable { n, q: params.q().clone(), multisegment: canonical, entries, quotient_dim: head.dim() };
    if table.accounted_dim() != table.quotient_dim as u64 {
        return Err(consistency!(
            "multiplicities of {} account for dimension {}, quotient has {}",
            table.multisegment,
            table.accounted_dim(),
            table.quotient_dim
        ));
    }
    Ok(table)
}

/// Segments on different lines must never become linked through the
/// values: no ratio of two line multipliers may be a power of `q`.
fn check_lines_independent(m: &Multisegment, q: &Rational) -> Result<()> {
    let lines = m.lines();
    let span: i64 = m.segments().iter().map(|s| s.start.abs() + s.len as i64).sum::<i64>() + 1;
    for (k, &a) in lines.iter().enumerate() {
        for &b in &lines[k + 1..] {
            let ratio = &line_multiplier(a)? / &line_multiplier(b)?;
            if (-span..=span).any(|e| q.pow(e as i32) == ratio) {
                return Err(HeckeError::Parameter(format!("lines {a} and {b} are not independent at q = {q}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub multisegment: Multisegment,
    pub generic: bool,
    pub sign_multiplicity: u64,
    pub quotient_dim: usize,
    pub verdict: Verdict,
    pub timing: Duration,
}

impl Certificate {
    fn from_table(table: &MultiplicityTable, timing: Duration) -> Self {
        Certificate {
            multisegment: table.multisegment.clone(),
            generic: table.generic(),
            sign_multiplicity: table.sign_multiplicity(),
            quotient_dim: table.quotient_dim,
            verdict: table.verdict(),
            timing,
        }
    }
}

pub fn certify(m: &Multisegment, q: &Rational) -> Result<Certificate> {
    let params = affine_params(m.n(), q)?;
    let catalog = SpechtCatalog::new(&params)?;
    certify_with(&catalog, m)
}

pub fn certify_with(catalog: &SpechtCatalog, m: &Multisegment) -> Result<Certificate> {
    let start = Instant::now();
    let table = ktype_table_with(catalog, m)?;
    Ok(Certificate::from_table(&table, start.elapsed()))
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    /// Range of segment starts.
    pub starts: RangeInclusive<i64>,
    pub q: Rational,
    pub jobs: usize,
    /// Permits `n = 5`.
    pub allow_n5: bool,
    pub verify: VerifyPolicy,
}

impl SweepConfig {
    /// Starts in `[0, n]`, `q = 3`, one worker.
    pub fn new(n: usize) -> Self {
        SweepConfig {
            n,
            starts: 0..=n as i64,
            q: Rational::from_integer(3),
            jobs: 1,
            allow_n5: false,
            verify: VerifyPolicy::from_env(),
        }
    }
}

/// Outcome of a sweep, in canonical multisegment order.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub n: usize,
    pub q: Rational,
    pub certificates: Vec<Certificate>,
    /// Multisegments whose computation raised an error.
    pub errors: Vec<(Multisegment, String)>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> usize {
        self.certificates.iter().filter(|c| c.verdict == Verdict::Pass).count()
    }

    pub fn failed(&self) -> usize {
        self.certificates.len() - self.passed()
    }

    /// 0 when everything passed, 1 on a theorem failure, 3 on errors.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            3
        } else if self.failed() > 0 {
            1
        } else {
            0
        }
    }
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let cap = if config.allow_n5 { 5 } else { DEFAULT_MAX_N };
    if config.n == 0 || config.n > cap {
        return Err(usage!("sweeps support 1 <= n <= {cap} (n = 5 needs the explicit opt-in)"));
    }
    if config.starts.is_empty() {
        return Err(usage!("empty start window"));
    }
    if config.jobs == 0 {
        return Err(usage!("need at least one worker"));
    }
    let started = Instant::now();
    let params = affine_params(config.n, &config.q)?.with_verify(config.verify);
    let catalog = SpechtCatalog::new(&params)?;
    let items = enumerate_by_starts(config.n, config.starts.clone());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| usage!("cannot start worker pool: {e}"))?;
    let results: Vec<(Multisegment, Result<Certificate>)> =
        pool.install(|| items.par_iter().map(|m| (m.clone(), certify_with(&catalog, m))).collect());
    let mut certificates = Vec::new();
    let mut errors = Vec::new();
    for (m, r) in results {
        match r {
            Ok(c) => certificates.push(c),
            Err(e) => errors.push((m, e.to_string())),
        }
    }
    Ok(SweepReport { n: config.n, q: config.q.clone(), certificates, errors, elapsed: started.elapsed() })
}

/// Comparison of a multi-line multisegment with its single-line parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinesCheck {
    pub full: MultiplicityTable,
    pub parts: Vec<MultiplicityTable>,
    /// Product over lines of the sign-type multiplicities.
    pub expected_sign: u64,
    /// Product over lines of the trivial-type multiplicities.
    pub expected_trivial: u64,
    /// Multinomial coefficient times the product of per-line dimensions.
    pub expected_dim: u64,
}

impl LinesCheck {
    pub fn consistent(&self) -> bool {
        self.full.sign_multiplicity() == self.expected_sign
            && self.full.trivial_multiplicity() == self.expected_trivial
            && self.full.quotient_dim as u64 == self.expected_dim
    }
}

/// Irreducible quotients on different lines induce irreducibly, so the
/// sign and trivial multiplicities multiply across lines and dimensions
/// multiply up to the multinomial coefficient.
pub fn lines_cross_check(m: &Multisegment, q: &Rational) -> Result<LinesCheck> {
    if m.n() > DEFAULT_MAX_N {
        return Err(usage!("the line cross-check supports n <= {DEFAULT_MAX_N}"));
    }
    let full = ktype_table(m, q)?;
    let parts =
        m.lines().into_iter().map(|line| ktype_table(&m.restrict_to_line(line), q)).collect::<Result<Vec<_>>>()?;
    let expected_sign = parts.iter().map(MultiplicityTable::sign_multiplicity).product();
    let expected_trivial = parts.iter().map(MultiplicityTable::trivial_multiplicity).product();
    let mut expected_dim: u64 = (1..=m.n() as u64).product();
    for p in &parts {
        expected_dim /= (1..=p.n as u64).product::<u64>();
        expected_dim *= p.quotient_dim as u64;
    }
    Ok(LinesCheck { full, parts, expected_sign, expected_trivial, expected_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(usage!("unknown format {s:?} (expected text, json or csv)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    n: usize,
    q: String,
    multisegment: String,
    quotient_dim: usize,
    multiplicities: IndexMap<String, u64>,
    generic: bool,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    timing_ms: Option<f64>,
}

impl TableRecord {
    fn new(t: &MultiplicityTable, timing: Option<Duration>) -> Self {
        TableRecord {
            n: t.n,
            q: t.q.to_string(),
            multisegment: t.multisegment.to_string(),
            quotient_dim: t.quotient_dim,
            multiplicities: t.entries.iter().map(|(l, m)| (l.to_string(), *m)).collect(),
            generic: t.generic(),
            verdict: t.verdict().as_str().into(),
            timing_ms: timing.map(|d| d.as_secs_f64() * 1e3),
        }
    }
}

/// Serializes a table. Timing is only included when given.
pub fn emit_table(t: &MultiplicityTable, format: Format, timing: Option<Duration>) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&TableRecord::new(t, timing))
                .map_err(|e| consistency!("json serialization failed: {e}"))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| consistency!("csv serialization failed: {e}");
            w.write_record(["partition", "dimension", "multiplicity"]).map_err(io)?;
            for (l, m) in &t.entries {
                w.write_record([l.to_string(), count_syt(l).to_string(), m.to_string()]).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| consistency!("csv flush failed: {e}"))?;
            String::from_utf8(bytes).map_err(|e| consistency!("csv output not utf-8: {e}"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "multisegment: {}", t.multisegment);
            let _ = writeln!(s, "n = {}, q = {}, quotient dimension {}", t.n, t.q, t.quotient_dim);
            let _ =
                writeln!(s, "generic: {}, verdict: {}", if t.generic() { "yes" } else { "no" }, t.verdict().as_str());
            if let Some(d) = timing {
                let _ = writeln!(s, "time: {:.3} ms", d.as_secs_f64() * 1e3);
            }
            let labels: Vec<String> = t.entries.keys().map(ToString::to_string).collect();
            let width = labels.iter().map(String::len).max().unwrap_or(0).max("partition".len());
            let _ = writeln!(s, "{:<width$}  {:>12}  {:>9}", "partition", "multiplicity", "dimension");
            for ((l, m), label) in t.entries.iter().zip(&labels) {
                let _ = writeln!(s, "{label:<width$}  {m:>12}  {:>9}", count_syt(l));
            }
            Ok(s)
        }
    }
}

/// Inverse of [`emit_table`] in JSON format.
pub fn parse_table_json(s: &str) -> Result<MultiplicityTable> {
    let r: TableRecord = serde_json::from_str(s).map_err(|e| usage!("bad table json: {e}"))?;
    let q: Rational = r.q.parse().map_err(|_| usage!("bad q in table json: {:?}", r.q))?;
    let entries =
        r.multiplicities.iter().map(|(k, v)| Ok((k.parse::<Partition>()?, *v))).collect::<Result<IndexMap<_, _>>>()?;
    let table =
        MultiplicityTable { n: r.n, q, multisegment: r.multisegment.parse()?, entries, quotient_dim: r.quotient_dim };
    if table.generic() != r.generic || table.verdict() != Verdict::from_str(&r.verdict)? {
        return Err(usage!("table json is internally inconsistent"));
    }
    Ok(table)
}

#[derive(Serialize)]
struct CertificateRecord {
    multisegment: String,
    generic: bool,
    sign_multiplicity: u64,
    quotient_dim: usize,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

impl CertificateRecord {
    fn new(c: &Certificate, timing: bool) -> Self {
        CertificateRecord {
            multisegment: c.multisegment.to_string(),
            generic: c.generic,
            sign_multiplicity: c.sign_multiplicity,
            quotient_dim: c.quotient_dim,
            verdict: c.verdict.as_str(),
            timing_ms: timing.then_some(c.timing.as_secs_f64() * 1e3),
        }
    }
}

#[derive(Serialize)]
struct SweepRecord {
    n: usize,
    q: String,
    total: usize,
    passed: usize,
    failed: usize,
    errors: Vec<(String, String)>,
    certificates: Vec<CertificateRecord>,
}

pub fn emit_certificate(c: &Certificate, format: Format, timing: bool) -> Result<String> {
    emit_certificates(std::slice::from_ref(c), &[], None, format, timing)
}

pub fn emit_sweep(r: &SweepReport, format: Format, timing: bool) -> Result<String> {
    emit_certificates(&r.certificates, &r.errors, Some((r.n, &r.q, r.elapsed)), format, timing)
}

fn emit_certificates(
    certs: &[Certificate],
    errors: &[(Multisegment, String)],
    summary: Option<(usize, &Rational, Duration)>,
    format: Format,
    timing: bool,
) -> Result<String> {
    let passed = certs.iter().filter(|c| c.verdict == Verdict::Pass).count();
    match format {
        Format::Json => {
            let records: Vec<CertificateRecord> = certs.iter().map(|c| CertificateRecord::new(c, timing)).collect();
            let value = match summary {
                Some((n, q, _)) => serde_json::to_value(SweepRecord {
                    n,
                    q: q.to_string(),
                    total: certs.len() + errors.len(),
                    passed,
                    failed: certs.len() - passed,
                    errors: errors.iter().map(|(m, e)| (m.to_string(), e.clone())).collect(),
                    certificates: records,
                }),
                None => serde_json::to_value(&records[0]),
            }
            .map_err(|e| consistency!("json serialization failed: {e}"))?;
            let mut s =
                serde_json::to_string_pretty(&value).map_err(|e| consistency!("json serialization failed: {e}"))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| consistency!("csv serialization failed: {e}");
            let mut header = vec!["multisegment", "generic", "sign_multiplicity", "quotient_dim", "verdict"];
            if timing {
                header.push("timing_ms");
            }
            w.write_record(&header).map_err(io)?;
            for c in certs {
                let mut row = vec![
                    c.multisegment.to_string(),
                    c.generic.to_string(),
                    c.sign_multiplicity.to_string(),
                    c.quotient_dim.to_string(),
                    c.verdict.as_str().to_string(),
                ];
                if timing {
                    row.push(format!("{:.3}", c.timing.as_secs_f64() * 1e3));
                }
                w.write_record(&row).map_err(io)?;
            }
            for (m, e) in errors {
                w.write_record([m.to_string(), String::new(), String::new(), String::new(), format!("error: {e}")])
                    .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| consistency!("csv flush failed: {e}"))?;
            String::from_utf8(bytes).map_err(|e| consistency!("csv output not utf-8: {e}"))
        }
        Format::Text => {
            let mut s = String::new();
            let labels: Vec<String> = certs.iter().map(|c| c.multisegment.to_string()).collect();
            let width = labels.iter().map(String::len).max().unwrap_or(0).max("multisegment".len());
            let _ = writeln!(s, "{:<width$}  {:>7}  {:>4}  {:>3}  verdict", "multisegment", "generic", "sign", "dim");
            for (c, label) in certs.iter().zip(&labels) {
                let _ = write!(
                    s,
                    "{label:<width$}  {:>7}  {:>4}  {:>3}  {}",
                    if c.generic { "yes" } else { "no" },
                    c.sign_multiplicity,
                    c.quotient_dim,
                    c.verdict.as_str()
                );
                if timing {
                    let _ = write!(s, "  {:.3} ms", c.timing.as_secs_f64() * 1e3);
                }
                s.push('\n');
            }
            for (m, e) in errors {
                let _ = writeln!(s, "{m}: error: {e}");
            }
            if let Some((n, q, elapsed)) = summary {
                let _ = write!(
                    s,
                    "n = {n}, q = {q}: {} multisegments, {passed} passed, {} failed, {} errors",
                    certs.len() + errors.len(),
                    certs.len() - passed,
                    errors.len()
                );
                if timing {
                    let _ = write!(s, " in {:.3} s", elapsed.as_secs_f64());
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}
