use serde_json::json;

use super::power::CrownSpec;
use crate::classes::{a_pi, PrimeSet};
use crate::error::{Error, Result};
use crate::invgen::{find_cig_with, CigSearch, DecisionPath, GenWitness, InvgenContext};
use crate::report::{Status, Verdict};

/// Coprime invariable generation of an abelian-socle crown forces
/// `t ≤ dim_{End}(A)`. Runs the search and records the comparison.
pub fn verify_abcase(crown: &CrownSpec, max_size: usize) -> Result<Verdict> {
    let module = crown
        .base
        .module
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("socle is not abelian".into()))?;
    let r = module.endomorphism_field()?.dim;
    let instance = format!("order {} crown, t = {}", crown.group.order(), crown.t);
    let ctx = InvgenContext::new(&crown.group)?;
    let search = find_cig_with(&ctx, max_size, DecisionPath::Auto)?;
    let claim = "coprime invariable generation of an abelian-socle crown needs t ≤ r";
    Ok(match &search {
        CigSearch::Found(w) => Verdict::at_most(claim, instance, crown.t, r).with_witness(json!(w)),
        CigSearch::NoneFound { .. } => Verdict::new(claim, instance, crown.t, r, Status::Vacuous)
            .with_witness(json!(search))
            .with_note("no coprime invariable generating set exists"),
        CigSearch::Undecided { reason } => {
            Verdict::new(claim, instance, crown.t, r, Status::Undecided).with_note(reason.clone())
        }
    })
}

/// For a nonabelian-socle crown invariably generated by `witness`,
/// `t ≤ ∏ a_{π(|g_i|)}(L, A)`; with `out_order` also `∏ a ≤ |A| / (2n|Out S|)`
/// for coprime witnesses.
pub fn verify_t_bound(crown: &CrownSpec, witness: &GenWitness, out_order: Option<u64>) -> Result<Vec<Verdict>> {
    if crown.base.abelian {
        return Err(Error::InvalidArgument("socle is abelian".into()));
    }
    if !witness.invariable {
        return Err(Error::InvalidArgument("witness not verified as invariable".into()));
    }
    let l = &crown.base.group;
    let a = &crown.base.socle;
    let mut product: u128 = 1;
    let mut factors = Vec::new();
    for &o in &witness.orders {
        let pi = PrimeSet::of(o as u128);
        let value = a_pi(l, a, &pi)? as u128;
        factors.push(json!({"pi": pi.to_string(), "a_pi": value}));
        product *= value;
    }
    let instance = format!("order {} crown, t = {}, orders {:?}", crown.group.order(), crown.t, witness.orders);
    let mut out = vec![Verdict::at_most(
        "invariable generation of a crown bounds t by the product of a_π",
        instance.clone(),
        crown.t as u128,
        product,
    )
    .with_witness(json!({"elements": witness, "factors": factors}))];
    let claim = "product of a_π is at most |A| / (2n|Out S|) for coprime witnesses";
    out.push(match out_order {
        Some(o) if witness.coprime => {
            // product ≤ |A| / (2n·o)  ⇔  2n·o·product ≤ |A|
            let lhs = 2 * crown.base.n_copies as u128 * o as u128 * product;
            Verdict::at_most(claim, instance, lhs, a.order()).with_note("lhs = 2·n·|Out S|·product")
        }
        Some(_) => Verdict::new(claim, instance, product, "-", Status::Skipped).with_note("witness not coprime"),
        None => Verdict::new(claim, instance, product, "-", Status::Skipped).with_note("no outer automorphism data"),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crowns::crown_power;
    use crate::invgen::find_cig;
    use crate::perm::PermGroup;
    use crate::structure::recognize_monolithic;

    #[test]
    fn frobenius_crowns() {
        let l = PermGroup::from_cycle_strings(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]).unwrap();
        let base = recognize_monolithic(&l, None).unwrap();
        let v1 = verify_abcase(&crown_power(&base, 1).unwrap(), 4).unwrap();
        assert_eq!(v1.status, Status::Pass);
        let v2 = verify_abcase(&crown_power(&base, 2).unwrap(), 4).unwrap();
        assert_eq!(v2.status, Status::Vacuous);
    }

    #[test]
    fn s5_t_bound() {
        let s5 = PermGroup::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        let base = recognize_monolithic(&s5, None).unwrap();
        let crown = crown_power(&base, 1).unwrap();
        let w = find_cig(&crown.group, 3).unwrap();
        let w = w.witness().expect("S5 is coprimely invariably generated");
        let verdicts = verify_t_bound(&crown, w, Some(2)).unwrap();
        assert_eq!(verdicts[0].status, Status::Pass);
        assert_ne!(verdicts[1].status, Status::Fail);
    }
}
