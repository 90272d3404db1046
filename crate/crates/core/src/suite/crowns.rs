use std::sync::OnceLock;

use serde_json::json;

use super::{member_names, Check, SuiteOptions};
use crate::catalog::{asl_crown_elements, build_asl24, build_frobenius, default_catalog, MonolithicFixture};
use crate::classes::{conjugacy_classes, a_pi, k_pi, PrimeSet, A_PI_ORDER_CAP};
use crate::crowns::{
    count_complements_by_lifting, crown_params, crown_power, d_crown_abelian, socle_cohomology, verify_abcase,
    verify_t_bound, CrownSpec,
};
use crate::error::{Error, Result};
use crate::invgen::{find_cig, min_generators, pairwise_coprime, random_generating_tuple, CigSearch, DecisionPath, InvgenContext};
use crate::perm::StabChain;
use crate::report::{Status, Verdict};
use crate::structure::{exponent, minimal_normal_subgroups};

struct Asl {
    fixture: MonolithicFixture,
    crown: CrownSpec,
    ctx: InvgenContext,
}

fn asl() -> Result<&'static Asl> {
    static CELL: OnceLock<std::result::Result<Asl, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        (|| -> Result<Asl> {
            let fixture = build_asl24()?;
            let crown = crown_power(&fixture.data, 2)?;
            let ctx = InvgenContext::new(&crown.group)?;
            Ok(Asl { fixture, crown, ctx })
        })()
        .map_err(|e| e.to_string())
    })
    .as_ref()
    .map_err(|e| Error::InvalidArgument(format!("ASL2(4) crown: {e}")))
}

pub(super) fn asl_crown() -> Vec<Check> {
    vec![
        Check::single("fixture", |_| {
            let d = &asl()?.fixture.data;
            let q = d.group.order() / d.socle.order();
            Ok(Verdict::same(
                "ASL2(4) is monolithic of order 960 with abelian socle 16 and quotient 60",
                "ASL2(4) on 16 points",
                (d.group.order(), d.socle.order(), q, d.abelian),
                (960, 16, 60, true),
            ))
        }),
        Check::single("crown-order", |_| {
            let c = &asl()?.crown;
            Ok(Verdict::same("L_2 has order 16·960 on 32 points", "L_2", (c.group.order(), c.group.degree()), (15360, 32)))
        }),
        Check::single("h1-order", |_| {
            let a = asl()?;
            let h1 = socle_cohomology(&a.fixture.data, &a.fixture.presentation)?;
            Ok(Verdict::equal("|H¹(SL2(4), V)| = 4", "V = F_4², natural module", 2u128.pow(h1.dim_h1 as u32), 4)
                .with_witness(json!(h1)))
        }),
        Check::single("complement-lifting-oracle", |_| {
            let a = asl()?;
            let h1 = socle_cohomology(&a.fixture.data, &a.fixture.presentation)?;
            let count = count_complements_by_lifting(&a.fixture.data, &a.fixture.presentation)?;
            let expected = 2u128.pow((h1.dim_b1 + h1.dim_h1) as u32);
            Ok(Verdict::equal("relator-respecting lifts number |B¹|·|H¹|", "ASL2(4)", count, expected)
                .with_note("the lifts are counted by brute force over V², an oracle independent of the linear algebra"))
        }),
        Check::single("module-parameters", |_| {
            let a = asl()?;
            let p = crown_params(&a.fixture.data, &a.fixture.presentation, 2)?;
            Ok(Verdict::same("r = 2, s = 1, θ = 1, d(L/A) = 2", "ASL2(4)", (p.r, p.s, p.theta, p.dl_quotient), (2, 1, 1, 2))
                .with_witness(json!(p)))
        }),
        Check::single("generator-formula", |_| {
            let a = asl()?;
            let p = crown_params(&a.fixture.data, &a.fixture.presentation, 2)?;
            Ok(Verdict::equal("d(L_2) = 3 by the crown formula", "L_2", d_crown_abelian(&p)?, 3))
        }),
        Check::single("generator-search", |_| {
            let m = min_generators(&asl()?.crown.group, 3)?;
            Ok(Verdict::same("no pair generates L_2 and some triple does", "L_2", m.d, Some(3)).with_witness(json!(m)))
        }),
        Check::single("explicit-triple", |_| {
            let a = asl()?;
            let els = asl_crown_elements(&a.crown)?;
            let orders: Vec<u64> = els.iter().map(|x| x.order()).collect();
            let v = a.ctx.invariably_generates(&els, DecisionPath::Exhaustive)?;
            let lhs = (orders.clone(), v.holds());
            Ok(Verdict::same("x, y, z of orders 3, 5, 2 invariably generate L_2", "L_2", lhs, (vec![3, 5, 2], true))
                .with_witness(json!({"elements": els.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
                .with_note("decided by the exhaustive conjugate scan"))
        }),
        Check::single("diagonal-exponent", |_| {
            let c = &asl()?.crown;
            let diag = c.diagonal()?;
            let exp_diag = exponent(&conjugacy_classes(&diag)?);
            let exp_crown = exponent(asl()?.ctx.table());
            let proper = diag.order() < c.group.order();
            Ok(Verdict::same("the diagonal is a proper subgroup with exponent exp(L_2)", "L_2", (proper, exp_diag), (true, exp_crown))
                .with_witness(json!({"diagonal_order": diag.order().to_string()})))
        }),
    ]
}

/// `(n, p, |L|)` for the Frobenius fixture `F_p ⋊ C_n` at `t`.
const FROBENIUS: [(u64, u64, u128); 3] = [(2, 3, 6), (6, 7, 42), (30, 31, 930)];
const FIRST_PRIMES: [u64; 3] = [2, 3, 5];
/// Element draws allowed when searching for a prescribed-order generating set.
const TUPLE_DRAWS: u64 = 2_000_000;

fn frobenius_crown(t: usize) -> Result<(MonolithicFixture, CrownSpec)> {
    let f = build_frobenius(t)?;
    let c = crown_power(&f.data, t)?;
    Ok((f, c))
}

pub(super) fn frobenius_crowns() -> Vec<Check> {
    let mut checks = Vec::new();
    for t in 1..=3usize {
        let (n, p, order) = FROBENIUS[t - 1];
        checks.push(Check::single(format!("t{t}-fixture"), move |_| {
            let f = build_frobenius(t)?;
            let m = f.data.group.order() / f.data.socle.order();
            Ok(Verdict::same("n = product of the first t primes, p least prime with n | p − 1", format!("t = {t}"), (m as u64, f.data.socle.order() as u64, f.data.group.order()), (n, p, order)))
        }));
        checks.push(Check::single(format!("t{t}-parameters"), move |_| {
            let f = build_frobenius(t)?;
            let h1 = socle_cohomology(&f.data, &f.presentation)?;
            let params = crown_params(&f.data, &f.presentation, t)?;
            Ok(Verdict::same("θ = 1, r = 1, s = 0 and H¹ vanishes (coprime action)", format!("t = {t}"), (params.theta, params.r, params.s, h1.dim_h1), (1, 1, 0, 0))
                .with_witness(json!(h1)))
        }));
        checks.push(Check::single(format!("t{t}-formula"), move |_| {
            let f = build_frobenius(t)?;
            let params = crown_params(&f.data, &f.presentation, t)?;
            Ok(Verdict::equal("d(L_t) = t + 1 by the crown formula", format!("t = {t}"), d_crown_abelian(&params)?, t + 1))
        }));
        checks.push(Check::single(format!("t{t}-search"), move |_| {
            if t > 2 {
                return Ok(Verdict::new("d(L_t) = t + 1 by exhaustive search", format!("t = {t}"), "-", t + 1, Status::Skipped)
                    .with_note("exhaustive generator search is limited to t ≤ 2"));
            }
            let (_, c) = frobenius_crown(t)?;
            let m = min_generators(&c.group, t + 1)?;
            Ok(Verdict::same("d(L_t) = t + 1 by exhaustive search", format!("t = {t}, |L_t| = {}", c.group.order()), m.d, Some(t + 1))
                .with_witness(json!(m)))
        }));
        checks.push(Check::single(format!("t{t}-coprime-generators"), move |o: &SuiteOptions| {
            let (_, c) = frobenius_crown(t)?;
            let mut orders: Vec<u64> = FIRST_PRIMES[..t].to_vec();
            orders.push(p);
            let claim = "some t + 1 elements of orders p_1, …, p_t, p generate L_t";
            match random_generating_tuple(&c.group, &orders, o.seed_for(0xf0 + t as u64), TUPLE_DRAWS) {
                Some(tuple) => {
                    let got: Vec<u64> = tuple.iter().map(|x| x.order()).collect();
                    let ok = got == orders
                        && pairwise_coprime(&got)
                        && StabChain::reaches_order(c.group.degree(), &tuple, c.group.order());
                    Ok(Verdict::new(claim, format!("t = {t}"), format!("{got:?}"), format!("{orders:?}"), Status::from_bool(ok))
                        .with_witness(json!(tuple.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
                }
                None => Ok(Verdict::new(claim, format!("t = {t}"), "not found", format!("{orders:?}"), Status::Undecided)
                    .with_note(format!("no generating tuple within {TUPLE_DRAWS} random draws"))),
            }
        }));
        checks.push(Check::single(format!("t{t}-invariable"), move |_| {
            let (_, c) = frobenius_crown(t)?;
            if t == 1 {
                return verify_abcase(&c, 4);
            }
            // coprime elements have distinct prime-power orders, so |π(L_t)| bounds the size
            let size = PrimeSet::of(c.group.order()).len();
            let s = find_cig(&c.group, size)?;
            Ok(Verdict::equal("no coprime invariable generating set since t > r = 1", format!("t = {t}"), outcome(&s), "none_found")
                .with_witness(json!(s)))
        }));
    }
    checks
}

fn outcome(s: &CigSearch) -> &'static str {
    match s {
        CigSearch::Found(_) => "found",
        CigSearch::NoneFound { .. } => "none_found",
        CigSearch::Undecided { .. } => "undecided",
    }
}

const A_PI_CAP: u128 = 100_000;

/// Nonabelian-socle crowns checked against the invariable-generation bounds.
const NONABELIAN_CROWNS: [(&str, usize); 6] = [("A5", 1), ("A5", 2), ("A5", 3), ("S5", 1), ("S5", 2), ("S5", 3)];

/// `|Out S|` of the simple factor of the socle, found by order among the
/// simple catalog entries (unambiguous for the factors used here).
fn simple_factor_out(order: u128) -> Result<Option<u64>> {
    Ok(default_catalog()?.simple_out_order(order))
}

pub(super) fn socle_class_bounds() -> Result<Vec<Check>> {
    let cat = default_catalog()?;
    let mut checks = Vec::new();
    const A_CLAIM: &str = "a_π(L, A) ≤ k_π(A) for the socle A of a monolithic L";
    for name in member_names()? {
        if cat.entry(&name).is_err() {
            continue; // crowns with t ≥ 2 are not monolithic
        }
        checks.push(Check::single(format!("a-pi/{name}"), move |o| {
            let g = match super::member_within(&name, o.cap(A_PI_CAP).min(A_PI_ORDER_CAP), A_CLAIM)? {
                Ok(g) => g,
                Err(skip) => return Ok(skip),
            };
            let mins = minimal_normal_subgroups(&g)?;
            if mins.len() != 1 {
                return Ok(Verdict::new(A_CLAIM, name.as_str(), "-", "-", Status::Skipped)
                    .with_note(format!("{} minimal normal subgroups: not monolithic", mins.len())));
            }
            let a = &mins[0];
            let table = conjugacy_classes(a)?;
            let mut rows = Vec::new();
            let mut failures = 0;
            for pi in PrimeSet::of(g.order()).subsets() {
                let lhs = a_pi(&g, a, &pi)?;
                let rhs = k_pi(&table, &pi);
                failures += usize::from(lhs > rhs);
                rows.push(json!({"pi": pi.to_string(), "a_pi": lhs, "k_pi_socle": rhs}));
            }
            Ok(Verdict::equal(A_CLAIM, format!("{name}, |A| = {}", a.order()), failures, 0).with_witness(json!(rows)))
        }));
    }
    for (base, t) in NONABELIAN_CROWNS {
        checks.push(Check::new(format!("t-bound/{base}^{t}"), move |_| {
            let data = default_catalog()?.entry(base)?.monolithic()?;
            let crown = crown_power(&data, t)?;
            let size = PrimeSet::of(crown.group.order()).len();
            let claim = "an invariable witness bounds t by ∏ a_{π(|g_i|)}";
            Ok(match find_cig(&crown.group, size)? {
                CigSearch::Found(w) => verify_t_bound(&crown, &w, simple_factor_out(data.simple_factor_order)?)?,
                s @ CigSearch::NoneFound { .. } => vec![Verdict::new(claim, format!("{base}^{t}"), "-", "-", Status::Vacuous)
                    .with_witness(json!(s))
                    .with_note("no coprime invariable generating set exists, so there is no witness to test")],
                CigSearch::Undecided { reason } => {
                    vec![Verdict::new(claim, format!("{base}^{t}"), "-", "-", Status::Undecided).with_note(reason)]
                }
            })
        }));
        checks.push(Check::single(format!("two-generated/{base}^{t}"), move |_| {
            let data = default_catalog()?.entry(base)?.monolithic()?;
            let crown = crown_power(&data, t)?;
            let claim = "crowns with t ≤ |A|/(2n|Out S|) are 2-generated";
            let Some(out) = simple_factor_out(data.simple_factor_order)? else {
                return Ok(Verdict::new(claim, format!("{base}^{t}"), "-", "-", Status::Skipped).with_note("no |Out S| in catalog"));
            };
            let limit = data.socle.order() / (2 * data.n_copies as u128 * out as u128);
            if t as u128 > limit {
                return Ok(Verdict::new(claim, format!("{base}^{t}"), t, limit, Status::Vacuous));
            }
            let m = min_generators(&crown.group, 3)?;
            Ok(Verdict::same(claim, format!("{base}^{t}, t ≤ {limit}"), m.d, Some(2)).with_witness(json!(m)))
        }));
    }
    Ok(checks)
}
