//! Verification suites: each replays a family of claims over the catalog and
//! reports one record per check.
//!
//! Checks run in parallel; records are assembled in declaration order, so a
//! report depends only on the catalog, the options and the toolkit version.

mod arithmetic;
mod classbounds;
mod crowns;
mod generation;
mod probability;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cache::TOOLKIT_VERSION;
use crate::catalog::default_catalog;
use crate::perm::PermGroup;
use crate::error::{Error, Result};
use crate::report::{Status, Verdict};

/// Suite identifiers, in the order `all` runs them.
pub const SUITES: [&str; 9] = [
    "asl-crown",
    "frobenius-crowns",
    "class-count-bound",
    "partition-product",
    "refined-prime",
    "generator-bounds",
    "socle-class-bounds",
    "generation-probability",
    "arithmetic",
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides the per-suite order cap for catalog sweeps.
    pub max_order: Option<u128>,
    /// Monte Carlo samples per probability estimate.
    pub samples: u64,
    /// Record wall-clock time per check (breaks byte-identical reports).
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            max_order: None,
            samples: 100_000,
            timings: false,
        }
    }
}

impl SuiteOptions {
    pub(crate) fn cap(&self, default: u128) -> u128 {
        self.max_order.unwrap_or(default)
    }

    /// Per-check seed, independent of execution order.
    pub(crate) fn seed_for(&self, salt: u64) -> u64 {
        self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }
}

type CheckFn = Box<dyn Fn(&SuiteOptions) -> Result<Vec<Verdict>> + Send + Sync>;

/// A named check producing one or more verdicts.
pub struct Check {
    pub id: String,
    run: CheckFn,
}

impl Check {
    pub fn new(id: impl Into<String>, run: impl Fn(&SuiteOptions) -> Result<Vec<Verdict>> + Send + Sync + 'static) -> Self {
        Check {
            id: id.into(),
            run: Box::new(run),
        }
    }

    pub fn single(id: impl Into<String>, run: impl Fn(&SuiteOptions) -> Result<Verdict> + Send + Sync + 'static) -> Self {
        Self::new(id, move |o| run(o).map(|v| vec![v]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub vacuous: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub options: SuiteOptions,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    /// 0 when everything passed, 1 on any failure, 2 when only undecided
    /// checks stand in the way.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.undecided > 0 {
            2
        } else {
            0
        }
    }

    /// Header line, one line per record, summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({
            "suite": self.suite,
            "version": self.version,
            "options": self.options,
        });
        out.push_str(&header.to_string());
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tstatus\tlhs\trhs\tinstance\tclaim\tnote\n");
        for r in &self.records {
            let v = &r.verdict;
            let clean = |s: &str| s.replace(['\t', '\n'], " ");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.id,
                v.status,
                clean(&v.lhs),
                clean(&v.rhs),
                clean(&v.instance),
                clean(&v.claim),
                clean(v.note.as_deref().unwrap_or(""))
            ));
        }
        out
    }
}

/// Names of all catalog members: base groups first, then crowns.
pub(crate) fn member_names() -> Result<Vec<String>> {
    let cat = default_catalog()?;
    Ok(cat
        .groups()
        .iter()
        .map(|e| e.name.clone())
        .chain(cat.crowns().iter().map(|c| c.name.clone()))
        .collect())
}

/// Builds a catalog member, or returns the record explaining why it is
/// skipped at this order cap.
pub(crate) fn member_within(name: &str, cap: u128, claim: &str) -> Result<std::result::Result<PermGroup, Verdict>> {
    let g = default_catalog()?.build(name)?;
    if g.order() > cap {
        return Ok(Err(Verdict::new(claim, name, g.order(), cap, Status::Skipped)
            .with_note(format!("order {} above the cap {cap}", g.order()))));
    }
    Ok(Ok(g))
}

fn checks_for(suite: &str) -> Result<Vec<Check>> {
    Ok(match suite {
        "asl-crown" => crowns::asl_crown(),
        "frobenius-crowns" => crowns::frobenius_crowns(),
        "class-count-bound" => classbounds::class_count_bound()?,
        "partition-product" => classbounds::partition_product()?,
        "refined-prime" => classbounds::refined_prime()?,
        "generator-bounds" => generation::generator_bounds()?,
        "socle-class-bounds" => crowns::socle_class_bounds()?,
        "generation-probability" => probability::generation_probability(),
        "arithmetic" => arithmetic::arithmetic(),
        other => return Err(Error::UnknownName(format!("suite {other}"))),
    })
}

/// Turns a check error into a record rather than aborting the suite: caps
/// give `undecided`, anything else `fail`.
fn error_verdict(id: &str, e: &Error) -> Verdict {
    let status = match e {
        Error::CapExceeded { .. } | Error::FactoringTimeout(_) => Status::Undecided,
        _ => Status::Fail,
    };
    Verdict::new("check completes", id, "error", "-", status).with_note(e.to_string())
}

fn run_checks(suite: &str, checks: Vec<Check>, options: &SuiteOptions) -> SuiteReport {
    let results: Vec<Vec<CheckRecord>> = checks
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let verdicts = (c.run)(options).unwrap_or_else(|e| vec![error_verdict(&c.id, &e)]);
            let ms = options.timings.then(|| start.elapsed().as_millis() as u64);
            let n = verdicts.len();
            verdicts
                .into_iter()
                .enumerate()
                .map(|(i, verdict)| CheckRecord {
                    id: if n == 1 { c.id.clone() } else { format!("{}/{}", c.id, i + 1) },
                    verdict,
                    runtime_ms: ms,
                })
                .collect()
        })
        .collect();
    let records: Vec<CheckRecord> = results.into_iter().flatten().collect();
    let mut summary = Summary::default();
    for r in &records {
        match r.verdict.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped => summary.skipped += 1,
            Status::Vacuous => summary.vacuous += 1,
            Status::Undecided => summary.undecided += 1,
        }
    }
    SuiteReport {
        suite: suite.to_string(),
        version: TOOLKIT_VERSION.to_string(),
        options: options.clone(),
        records,
        summary,
    }
}

/// Runs one suite, or every suite for `"all"` (record ids are then prefixed
/// with the suite name).
pub fn run_suite(suite: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    if suite == "all" {
        let mut checks = Vec::new();
        for s in SUITES {
            for mut c in checks_for(s)? {
                c.id = format!("{s}:{}", c.id);
                checks.push(c);
            }
        }
        return Ok(run_checks("all", checks, options));
    }
    Ok(run_checks(suite, checks_for(suite)?, options))
}

/// Check ids of a suite without running it.
pub fn list_checks(suite: &str) -> Result<Vec<String>> {
    Ok(checks_for(suite)?.into_iter().map(|c| c.id).collect())
}
