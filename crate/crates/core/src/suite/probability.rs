use serde_json::json;

use super::Check;
use crate::catalog::default_catalog;
use crate::crowns::{estimate_pla, exact_pla};
use crate::report::{Status, Verdict};

const CLAIM: &str = "P_{L,A}(2) ≥ 1/2 for monolithic L with socle A";

/// Catalog groups whose socle is used as `A`.
const PAIRS: [&str; 4] = ["S5", "ASL2(4)", "C7:C6", "A5"];

fn lower_bound_check(name: &'static str, salt: u64) -> Check {
    Check::new(format!("lower-bound/{name}"), move |o| {
        let data = default_catalog()?.entry(name)?.monolithic()?;
        let est = estimate_pla(&data.group, &data.socle, 2, o.samples, o.seed_for(salt))?;
        let floor = 0.5 - 3.0 * est.stderr;
        let instance = format!("({name}, socle of order {}, d = 2)", data.socle.order());
        let sampled = Verdict::new(
            CLAIM,
            instance.clone(),
            format!("{:.6}", est.estimate),
            format!("≥ {floor:.6}"),
            Status::from_bool(est.estimate >= floor),
        )
        .with_witness(json!(est))
        .with_note("rhs = 1/2 − 3·stderr");
        let (good, accepted) = exact_pla(&data.group, &data.socle, 2)?;
        let exact = Verdict::new(
            CLAIM,
            format!("{instance}, exhaustive"),
            format!("{good}/{accepted}"),
            "≥ 1/2",
            Status::from_bool(2 * good >= accepted),
        );
        Ok(vec![sampled, exact])
    })
}

pub(super) fn generation_probability() -> Vec<Check> {
    let mut checks: Vec<Check> = PAIRS
        .iter()
        .enumerate()
        .map(|(i, &name)| lower_bound_check(name, 0x91a0 + i as u64))
        .collect();
    checks.push(Check::single("exact-agreement/A5", |o| {
        let a5 = default_catalog()?.build("A5")?;
        let (good, accepted) = exact_pla(&a5, &a5, 2)?;
        let est = estimate_pla(&a5, &a5, 2, o.samples, o.seed_for(0x91af))?;
        let exact = good as f64 / accepted as f64;
        let dev = (est.estimate - exact).abs();
        let exact_ok = good * 30 == accepted * 19;
        Ok(Verdict::new(
            "sampled P(2) for A5 agrees with the exact value 19/30",
            "(A5, A5, 2)",
            format!("|{:.6} − {exact:.6}| = {dev:.6}", est.estimate),
            format!("≤ {:.6}", 3.0 * est.stderr),
            Status::from_bool(exact_ok && dev <= 3.0 * est.stderr),
        )
        .with_witness(json!({"exact": format!("{good}/{accepted}"), "estimate": est})))
    }));
    checks
}
