mod parse;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cig_core::arith::{audit_family, factorize_u128, zsigmondy, Family};
use cig_core::cache::ResultCache;
use cig_core::catalog::Member;
use cig_core::classes::{a_pi, k_pi, pi_part};
use cig_core::crowns::{crown_params, crown_power, d_crown_abelian, verify_abcase, verify_t_bound};
use cig_core::gf::h1_dimension;
use cig_core::invgen::{find_cig, generates, min_generators, CigSearch, DecisionPath, InvgenContext, MIN_GENERATORS_CAP};
use cig_core::suite::{list_checks, SUITES};
use cig_core::{conjugacy_classes, default_catalog, load_catalog, run_suite, Catalog, Error, Result, SuiteOptions};

/// Exit status for invalid input or internal errors (0–2 carry verdicts).
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "cig", version, about = "Invariable generation and class-count toolkit for permutation groups")]
struct Cli {
    /// Catalog file to use instead of the bundled one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes: representative, size, element order, centralizer order.
    Classes {
        group: String,
        /// JSONL cache for class summaries.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Number of conjugacy classes of π-elements.
    Kpi {
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        pi: Vec<u64>,
    },
    /// Largest number, over cosets lA, of A-classes of π-elements inside lA.
    Api {
        l: String,
        /// `socle`, or `;`-separated generators of a normal subgroup.
        a: String,
        #[arg(long, value_delimiter = ',', required = true)]
        pi: Vec<u64>,
    },
    /// Decide whether the given elements invariably generate the group.
    Invgen {
        group: String,
        /// `;`-separated permutations in cycle notation.
        #[arg(long)]
        elements: String,
        #[arg(long, value_enum, default_value_t = Path::Auto)]
        path: Path,
    },
    /// Search for a coprime invariable generating set.
    CigSearch {
        group: String,
        /// Defaults to the number of prime divisors of |G|, which is exhaustive.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Minimal number of generators, by exhaustive search.
    Dmin {
        group: String,
        #[arg(long, default_value_t = 3)]
        cap: usize,
    },
    /// Crown-based power L_t of a monolithic catalog group.
    Crown {
        base: String,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum)]
        check: Option<CrownCheck>,
    },
    /// First cohomology dimensions of a module.
    H1 {
        /// Catalog group (quotient presentation and socle module) or `ngens:word;word;...`.
        quotient: String,
        /// Module as inline JSON or a JSON file: {"p": 7, "matrices": [[[3]]]}.
        /// Defaults to the socle when the quotient is a catalog group.
        module: Option<String>,
    },
    /// Audit the class-count inequality for a Lie-type family over a grid.
    Audit {
        family: String,
        /// e.g. `n=2..4,q=2..64`.
        #[arg(long)]
        grid: String,
    },
    /// Primitive prime divisors of q^n − 1.
    Zsigmondy { q: u64, n: u32 },
    /// Run a verification suite (`all` runs every suite).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Order cap for catalog sweeps (overrides per-suite defaults).
        #[arg(long)]
        max_order: Option<u128>,
        /// Monte Carlo samples per probability estimate.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Record per-check wall-clock time (reports are then not reproducible byte for byte).
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Print the check ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// List catalog members and suites.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Path {
    Auto,
    Certificate,
    Exhaustive,
}

impl From<Path> for DecisionPath {
    fn from(p: Path) -> Self {
        match p {
            Path::Auto => DecisionPath::Auto,
            Path::Certificate => DecisionPath::Certificate,
            Path::Exhaustive => DecisionPath::Exhaustive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CrownCheck {
    /// Coprime invariable generating set search (abelian socle: also the ab-case verdict).
    Cig,
    /// t ≤ ∏ a_π bound for a found witness.
    TBound,
    /// d(L_t): formula (abelian socle) against exhaustive search.
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")));
}

fn catalog(path: &Option<PathBuf>) -> Result<&'static Catalog> {
    match path {
        Some(p) => Ok(Box::leak(Box::new(load_catalog(p)?))),
        None => default_catalog(),
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cat = catalog(&cli.catalog)?;
    match cli.command {
        Command::Classes { group, cache } => {
            let g = parse::group(cat, &group)?;
            let table = conjugacy_classes(&g)?;
            let mut out = json!({"group": group, "order": g.order().to_string(), "classes": table.to_json()});
            if let Some(path) = cache {
                let cache = ResultCache::open(path)?;
                out["summary"] = cache.class_summary(&table)?;
                out["cache_rejected"] = json!(cache.rejected());
            }
            print(&out);
        }
        Command::Kpi { group, pi } => {
            let g = parse::group(cat, &group)?;
            let pi = parse::prime_set(&pi)?;
            let k = k_pi(&conjugacy_classes(&g)?, &pi);
            print(&json!({"group": group, "pi": pi.primes(), "k_pi": k, "order_pi": pi_part(g.order(), &pi).to_string()}));
        }
        Command::Api { l, a, pi } => {
            let lg = parse::group(cat, &l)?;
            let ag = if a.eq_ignore_ascii_case("socle") {
                cat.entry(&l)?.monolithic()?.socle
            } else {
                cig_core::PermGroup::new(parse::elements(&a, Some(lg.degree()))?)?
            };
            let pi = parse::prime_set(&pi)?;
            let v = a_pi(&lg, &ag, &pi)?;
            let k = k_pi(&conjugacy_classes(&ag)?, &pi);
            print(&json!({"l": l, "a_order": ag.order().to_string(), "pi": pi.primes(), "a_pi": v, "k_pi_of_a": k}));
        }
        Command::Invgen { group, elements, path } => {
            let g = parse::group(cat, &group)?;
            let elems = parse::elements(&elements, Some(g.degree()))?;
            let gen = generates(&g, &elems)?;
            let v = InvgenContext::new(&g)?.invariably_generates(&elems, path.into())?;
            print(&json!({"group": group, "generates": gen, "invariable": v.holds(), "decision": v}));
            return Ok(if v.holds() { 0 } else { 1 });
        }
        Command::CigSearch { group, max_size } => {
            let g = parse::group(cat, &group)?;
            let k = max_size.unwrap_or_else(|| factorize_u128(g.order()).len().max(1));
            let s = find_cig(&g, k)?;
            print(&json!({"group": group, "max_size": k, "result": s}));
            return Ok(match s {
                CigSearch::Undecided { .. } => 2,
                _ => 0,
            });
        }
        Command::Dmin { group, cap } => {
            let g = parse::group(cat, &group)?;
            let m = min_generators(&g, cap)?;
            print(&json!({"group": group, "d": m.d, "cap": m.cap, "witness": m}));
        }
        Command::Crown { base, t, check } => return crown(cat, &base, t, check),
        Command::H1 { quotient, module } => {
            let (pres, action) = match cat.get(&quotient) {
                Some(Member::Group(e)) => {
                    let pres = e
                        .presentation
                        .clone()
                        .ok_or_else(|| Error::InvalidArgument(format!("{quotient} has no quotient presentation")))?;
                    let action = match module {
                        Some(m) => parse::module(&m)?,
                        None => e
                            .monolithic()?
                            .module
                            .ok_or_else(|| Error::InvalidArgument(format!("{quotient} has a nonabelian socle")))?,
                    };
                    (pres, action)
                }
                _ => {
                    let m = module.ok_or_else(|| Error::InvalidArgument("a module is required".into()))?;
                    (parse::presentation(&quotient)?, parse::module(&m)?)
                }
            };
            let h = h1_dimension(&pres, &action)?;
            print(&json!({"quotient": quotient, "p": action.p(), "dim": action.dim(), "h1": h,
                "h1_order": (action.p() as u128).checked_pow(h.dim_h1 as u32).map(|o| o.to_string())}));
        }
        Command::Audit { family, grid } => {
            let fam: Family = family.parse()?;
            let ((n0, n1), (q0, q1)) = parse::grid(&grid)?;
            let mut failures = 0;
            for n in n0..=n1 {
                for q in q0..=q1 {
                    let f = factorize_u128(q as u128);
                    if f.len() != 1 {
                        continue;
                    }
                    match audit_family(fam, n, f[0].0 as u64, f[0].1) {
                        Ok(v) => {
                            if !v.pass && !v.exceptional {
                                failures += 1;
                            }
                            emit(&format!("{}\n", json!({"q": q, "verdict": v})));
                        }
                        Err(Error::InvalidArgument(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
            return Ok(u8::from(failures > 0));
        }
        Command::Zsigmondy { q, n } => {
            let z: Vec<String> = zsigmondy(q, n)?.iter().map(|p| p.to_string()).collect();
            print(&json!({"q": q, "n": n, "primitive_prime_divisors": z}));
        }
        Command::Verify { suite, seed, jobs, format, max_order, samples, timings, output, list } => {
            if list {
                for id in list_checks(&suite)? {
                    emit(&format!("{id}\n"));
                }
                return Ok(0);
            }
            let options = SuiteOptions { seed, max_order, samples, timings };
            let run = || run_suite(&suite, &options);
            let report = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?
                    .install(run)?,
                None => run()?,
            };
            let text = match format {
                Format::Json => report.to_jsonl(),
                Format::Tsv => report.to_tsv(),
            };
            match output {
                Some(p) => fs::write(p, text)?,
                None => emit(&text),
            }
            let s = &report.summary;
            eprintln!(
                "{}: {} pass, {} fail, {} undecided, {} vacuous, {} skipped",
                report.suite, s.pass, s.fail, s.undecided, s.vacuous, s.skipped
            );
            return Ok(report.exit_code() as u8);
        }
        Command::List => {
            let groups: Vec<Value> = cat
                .groups()
                .iter()
                .map(|e| json!({"name": e.name, "aliases": e.aliases, "order": e.order.to_string(), "degree": e.degree}))
                .collect();
            let crowns: Vec<Value> = cat
                .crowns()
                .iter()
                .map(|c| json!({"name": c.name, "crown_of": c.crown_of, "t": c.t}))
                .collect();
            print(&json!({"groups": groups, "crowns": crowns, "suites": SUITES}));
        }
    }
    Ok(0)
}

fn crown(cat: &Catalog, base: &str, t: usize, check: Option<CrownCheck>) -> Result<u8> {
    let entry = cat.entry(base)?;
    let data = entry.monolithic()?;
    let crown = crown_power(&data, t)?;
    let g = &crown.group;
    let mut out = json!({
        "base": base, "t": t, "order": g.order().to_string(), "degree": g.degree(),
        "socle_abelian": data.abelian,
    });
    let mut code = 0;
    match check {
        None => {}
        Some(CrownCheck::Cig) => {
            let k = factorize_u128(g.order()).len().max(1);
            if data.abelian {
                let v = verify_abcase(&crown, k)?;
                code = u8::from(v.status.is_failure());
                out["verdict"] = json!(v);
            } else {
                let s = find_cig(g, k)?;
                code = if matches!(s, CigSearch::Undecided { .. }) { 2 } else { 0 };
                out["result"] = json!(s);
            }
        }
        Some(CrownCheck::TBound) => match find_cig(g, factorize_u128(g.order()).len().max(1))? {
            CigSearch::Found(w) => {
                let vs = verify_t_bound(&crown, &w, cat.simple_out_order(data.simple_factor_order))?;
                code = u8::from(vs.iter().any(|v| v.status.is_failure()));
                out["verdicts"] = json!(vs);
            }
            other => out["result"] = json!(other),
        },
        Some(CrownCheck::D) => {
            let formula = match (&entry.presentation, data.abelian) {
                (Some(pres), true) => Some(d_crown_abelian(&crown_params(&data, pres, t)?)?),
                _ => None,
            };
            let m = min_generators(g, formula.unwrap_or(MIN_GENERATORS_CAP).min(MIN_GENERATORS_CAP))?;
            if let Some(f) = formula {
                code = u8::from(m.d != Some(f) && f <= MIN_GENERATORS_CAP);
            }
            out["formula"] = json!(formula);
            out["search"] = json!(m);
        }
    }
    print(&out);
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
