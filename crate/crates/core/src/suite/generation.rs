use serde_json::json;

use super::{member_names, member_within, Check};
use crate::arith::factorize_u128;
use crate::catalog::{default_catalog, Member};
use crate::classes::PrimeSet;
use crate::crowns::{crown_params, d_crown_abelian};
use crate::error::Result;
use crate::invgen::{find_cig_with, min_generators, CigSearch, DecisionPath, InvgenContext, MIN_GENERATORS_CAP};
use crate::report::{Status, Verdict};
use crate::structure::{exponent, is_minimal_exponent, is_soluble};

const GENERATION_CAP: u128 = 100_000;

/// Coprime elements have distinct prime-power orders, so searching up to
/// `|π(G)|` elements is exhaustive.
fn exhaustive_cig(ctx: &InvgenContext) -> Result<CigSearch> {
    find_cig_with(ctx, PrimeSet::of(ctx.group().order()).len().max(1), DecisionPath::Auto)
}

fn member_checks(name: String) -> Check {
    Check::new(name.clone(), move |o| {
        const CLAIM: &str = "coprimely invariably generated groups have d(G) ≤ 3, and d(G) ≤ 2 when soluble";
        let g = match member_within(&name, o.cap(GENERATION_CAP), CLAIM)? {
            Ok(g) => g,
            Err(skip) => return Ok(vec![skip]),
        };
        let ctx = InvgenContext::new(&g)?;
        let search = exhaustive_cig(&ctx)?;
        let instance = format!("{name} (order {})", g.order());
        let mut out = Vec::new();
        match &search {
            CigSearch::Found(w) => {
                let soluble = is_soluble(&g);
                let m = min_generators(&g, 3)?;
                // `None` means no tuple of at most 3 elements generates
                let d = m.d.unwrap_or(4);
                let bound = if soluble { 2 } else { 3 };
                out.push(
                    Verdict::at_most(CLAIM, instance.clone(), d, bound)
                        .with_witness(json!({"cig": w, "generators": m, "soluble": soluble})),
                );
            }
            CigSearch::NoneFound { .. } => {
                out.push(Verdict::new(CLAIM, instance.clone(), "-", "-", Status::Vacuous).with_witness(json!(search)))
            }
            CigSearch::Undecided { reason } => {
                out.push(Verdict::new(CLAIM, instance.clone(), "-", "-", Status::Undecided).with_note(reason.clone()))
            }
        }
        const MIN_EXP: &str =
            "a minimal-exponent group is invariably generated by one element of order p^n for each p^n ∥ exp(G)";
        if is_minimal_exponent(&g)? {
            let exp = exponent(ctx.table());
            let classes: Vec<usize> = factorize_u128(exp as u128)
                .into_iter()
                .filter_map(|(p, e)| {
                    let q = (p as u64).pow(e);
                    ctx.table().classes().iter().position(|c| c.order == q)
                })
                .collect();
            let primes = factorize_u128(exp as u128).len();
            let holds = classes.len() == primes && ctx.decide_classes(&classes, DecisionPath::Auto)?.holds();
            let reps: Vec<String> = classes.iter().map(|&c| ctx.table().classes()[c].rep.to_string()).collect();
            out.push(
                Verdict::same(MIN_EXP, instance.clone(), (holds, matches!(search, CigSearch::Found(_))), (true, true))
                    .with_witness(json!({"exponent": exp, "elements": reps})),
            );
        } else {
            out.push(Verdict::new(MIN_EXP, instance, "-", "-", Status::Vacuous).with_note("exponent is not minimal"));
        }
        Ok(out)
    })
}

/// For crowns: images of a coprime invariable generating set of `L_t` in the
/// quotient `L` (first coordinate) invariably generate `L`.
fn quotient_check(name: String) -> Check {
    Check::single(format!("quotient/{name}"), move |o| {
        const CLAIM: &str = "coprime invariable generation passes to the quotient L_t → L";
        let g = match member_within(&name, o.cap(GENERATION_CAP), CLAIM)? {
            Ok(g) => g,
            Err(skip) => return Ok(skip),
        };
        let crown = default_catalog()?.crown(&name)?;
        let search = exhaustive_cig(&InvgenContext::new(&g)?)?;
        let Some(w) = search.witness() else {
            return Ok(Verdict::new(CLAIM, name.as_str(), "-", "-", Status::Vacuous).with_witness(json!(search)));
        };
        let proj = crown.projection(0)?;
        let images = w.elements.iter().map(|x| proj.apply(x)).collect::<Result<Vec<_>>>()?;
        let base = InvgenContext::new(&crown.base.group)?;
        let holds = base.invariably_generates(&images, DecisionPath::Auto)?.holds();
        Ok(Verdict::equal(CLAIM, name.as_str(), holds, true)
            .with_witness(json!({"images": images.iter().map(|x| x.to_string()).collect::<Vec<_>>()})))
    })
}

/// The generator-count formula agrees with exhaustive search on abelian-socle crowns.
fn formula_check(name: String) -> Check {
    Check::single(format!("crown-formula/{name}"), move |o| {
        const CLAIM: &str = "d(L_t) from the crown formula equals the exhaustive search";
        let g = match member_within(&name, o.cap(GENERATION_CAP), CLAIM)? {
            Ok(g) => g,
            Err(skip) => return Ok(skip),
        };
        let cat = default_catalog()?;
        let Some(Member::Crown(c)) = cat.get(&name) else {
            unreachable!("crown names come from the catalog");
        };
        let base = cat.entry(&c.crown_of)?;
        let data = base.monolithic()?;
        if !data.abelian {
            return Ok(Verdict::new(CLAIM, name.as_str(), "-", "-", Status::Skipped).with_note("nonabelian socle"));
        }
        let Some(pres) = &base.presentation else {
            return Ok(Verdict::new(CLAIM, name.as_str(), "-", "-", Status::Skipped).with_note("no quotient presentation"));
        };
        let formula = d_crown_abelian(&crown_params(&data, pres, c.t)?)?;
        if formula > MIN_GENERATORS_CAP {
            return Ok(Verdict::new(CLAIM, name.as_str(), formula, "-", Status::Skipped)
                .with_note(format!("search cap is {MIN_GENERATORS_CAP}")));
        }
        let m = min_generators(&g, formula)?;
        Ok(Verdict::same(CLAIM, format!("{name} (order {})", g.order()), Some(formula), m.d).with_witness(json!(m)))
    })
}

pub(super) fn generator_bounds() -> Result<Vec<Check>> {
    let cat = default_catalog()?;
    let mut checks: Vec<Check> = member_names()?.into_iter().map(member_checks).collect();
    for c in cat.crowns() {
        checks.push(quotient_check(c.name.clone()));
    }
    for c in cat.crowns() {
        checks.push(formula_check(c.name.clone()));
    }
    Ok(checks)
}
