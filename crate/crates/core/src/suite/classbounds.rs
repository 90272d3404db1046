use serde_json::json;

use super::{member_names, member_within, Check};
use crate::arith::in_exceptional_set;
use crate::catalog::{default_catalog, Provenance};
use crate::classes::{conjugacy_classes, k_pi, max_partition_product, pi_part, PrimeSet};
use crate::error::Result;
use crate::report::{Status, Verdict};

const CLASS_BOUND_CAP: u128 = 100_000;
const PARTITION_CAP: u128 = 2_000_000;

fn simple_names() -> Result<Vec<String>> {
    Ok(default_catalog()?
        .groups()
        .iter()
        .filter(|e| e.simple)
        .map(|e| e.name.clone())
        .collect())
}

fn out_note(name: &str) -> Result<(Option<u64>, String)> {
    let e = default_catalog()?.entry(name)?;
    let tag = match e.provenance_of("out_order") {
        Some(Provenance::ExternalReference) => "external reference",
        Some(Provenance::Stated) => "stated",
        Some(Provenance::Derived) => "derived",
        None => "missing",
    };
    Ok((e.out_order, format!("|Out S| = {} taken from catalog ({tag})", e.out_order.map_or("?".into(), |o| o.to_string()))))
}

pub(super) fn class_count_bound() -> Result<Vec<Check>> {
    const CLAIM: &str = "k_π(G) ≤ |G|_π and k_π(G) ≤ k_p(G)·|G|_{π∖p} for all π ⊆ π(G), p ∈ π";
    Ok(member_names()?
        .into_iter()
        .map(|name| {
            Check::single(name.clone(), move |o| {
                let g = match member_within(&name, o.cap(CLASS_BOUND_CAP), CLAIM)? {
                    Ok(g) => g,
                    Err(skip) => return Ok(skip),
                };
                let table = conjugacy_classes(&g)?;
                let n = g.order();
                let (mut checked, mut failures, mut tightest) = (0usize, Vec::new(), (0.0f64, String::new()));
                for pi in PrimeSet::of(n).subsets() {
                    let k = k_pi(&table, &pi) as u128;
                    let bound = pi_part(n, &pi);
                    checked += 1;
                    if k > bound {
                        failures.push(format!("π = {{{pi}}}: {k} > {bound}"));
                    }
                    let ratio = k as f64 / bound as f64;
                    if ratio > tightest.0 && !pi.is_empty() {
                        tightest = (ratio, format!("π = {{{pi}}}: {k} ≤ {bound}"));
                    }
                    for &p in pi.primes() {
                        let kp = k_pi(&table, &PrimeSet::single(p)?) as u128;
                        let split = kp * pi_part(n, &pi.without(p));
                        checked += 1;
                        if k > split {
                            failures.push(format!("π = {{{pi}}}, p = {p}: {k} > {split}"));
                        }
                    }
                }
                Ok(Verdict::equal(CLAIM, format!("{name} (order {n})"), failures.len(), 0)
                    .with_witness(json!({"inequalities": checked, "failures": failures, "tightest": tightest.1})))
            })
        })
        .collect())
}

pub(super) fn partition_product() -> Result<Vec<Check>> {
    const CLAIM: &str = "max over partitions of π(S) of ∏ k_{π_i}(S) ≤ |S| / (2|Out S|)";
    let mut checks: Vec<Check> = simple_names()?
        .into_iter()
        .map(|name| {
            Check::single(name.clone(), move |o| {
                let g = match member_within(&name, o.cap(PARTITION_CAP), CLAIM)? {
                    Ok(g) => g,
                    Err(skip) => return Ok(skip),
                };
                let (out, note) = out_note(&name)?;
                let Some(out) = out else {
                    return Ok(Verdict::new(CLAIM, name.as_str(), "-", "-", Status::Skipped).with_note(note));
                };
                let r = max_partition_product(&conjugacy_classes(&g)?, out)?;
                Ok(Verdict::at_most(CLAIM, format!("{name} (order {})", g.order()), r.best_product, r.bound)
                    .with_witness(json!({"best_partition": r.best_partition}))
                    .with_note(format!("rhs = ⌊|S|/(2|Out S|)⌋; {note}")))
            })
        })
        .collect();
    checks.push(Check::single("A5-best-product", |_| {
        let g = default_catalog()?.build("A5")?;
        let r = max_partition_product(&conjugacy_classes(&g)?, 2)?;
        Ok(Verdict::same("A5 best product and bound", "A5", (r.best_product, r.bound), (12, 15))
            .with_witness(json!({"best_partition": r.best_partition})))
    }));
    Ok(checks)
}

pub(super) fn refined_prime() -> Result<Vec<Check>> {
    const CLAIM: &str =
        "outside the exceptional set some prime p has 2|Out S|·k_p(S) ≤ |S|_p; inside it no prime does";
    let mut checks: Vec<Check> = simple_names()?
        .into_iter()
        .map(|name| {
            Check::single(name.clone(), move |o| {
                let g = match member_within(&name, o.cap(u128::MAX), CLAIM)? {
                    Ok(g) => g,
                    Err(skip) => return Ok(skip),
                };
                let (out, note) = out_note(&name)?;
                let Some(out) = out else {
                    return Ok(Verdict::new(CLAIM, name.as_str(), "-", "-", Status::Skipped).with_note(note));
                };
                let table = conjugacy_classes(&g)?;
                let n = g.order();
                let mut per_prime = Vec::new();
                let mut good = Vec::new();
                for &p in PrimeSet::of(n).primes() {
                    let kp = k_pi(&table, &PrimeSet::single(p)?) as u128;
                    let sp = pi_part(n, &PrimeSet::single(p)?);
                    per_prime.push(json!({"p": p, "k_p": kp, "order_p": sp.to_string()}));
                    if 2 * out as u128 * kp <= sp {
                        good.push(p);
                    }
                }
                let exceptional = in_exceptional_set(&name)?;
                let (rhs, ok) = if exceptional {
                    ("none (exceptional set)", good.is_empty())
                } else {
                    ("at least one", !good.is_empty())
                };
                Ok(Verdict::new(CLAIM, format!("{name} (order {n})"), format!("{good:?}"), rhs, Status::from_bool(ok))
                    .with_witness(json!({"primes": per_prime}))
                    .with_note(note))
            })
        })
        .collect();
    let value_check = |id: &'static str, group: &'static str, p: u64, expected: usize| {
        Check::single(id, move |_| {
            let g = default_catalog()?.build(group)?;
            let k = k_pi(&conjugacy_classes(&g)?, &PrimeSet::single(p)?);
            Ok(Verdict::equal("exact p-class counts of alternating groups", format!("k_{p}({group})"), k, expected))
        })
    };
    checks.push(value_check("k2-A8", "A8", 2, 5));
    checks.push(value_check("k3-A9", "A9", 3, 6));
    for (id, group) in [("k5-A10", "A10"), ("k5-A11", "A11"), ("k5-A12", "A12"), ("k5-A13", "A13")] {
        checks.push(value_check(id, group, 5, 3));
    }
    Ok(checks)
}
