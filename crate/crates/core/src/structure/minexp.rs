//! Minimal-exponent groups: no proper subgroup has the exponent of the group.
//!
//! Exponent is monotone under inclusion (`exp H` divides `exp G` for `H ≤ G`) and
//! every proper subgroup lies in a maximal one, so a group has minimal exponent
//! exactly when every maximal subgroup has a strictly smaller exponent.
//!
//! The search itself uses the equivalent element form, with the lattice as a
//! fallback when it runs out of budget: writing
//! `exp G = ∏ p_i^{n_i}`, a proper subgroup of the same exponent exists iff some
//! tuple `(x_i)` with `|x_i| = p_i^{n_i}` generates a proper subgroup.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::factorize_u128;
use crate::classes::{conjugacy_classes, ClassTable};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

use super::lattice::{SubgroupLattice, LATTICE_ORDER_CAP};
use super::normal::exponent;

/// Joins allowed to the lattice before switching to the tuple search.
pub const MINEXP_LATTICE_BUDGET: usize = 200_000;
/// Subgroup closures allowed in the tuple search.
pub const EXPONENT_SEARCH_BUDGET: usize = 5_000_000;

/// How a minimal-exponent verdict was reached.
#[derive(Clone, Debug)]
pub enum ExponentVerdict {
    /// No proper subgroup has the full exponent.
    Minimal,
    /// A proper subgroup with the full exponent.
    Witness(PermGroup),
}

impl ExponentVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, ExponentVerdict::Minimal)
    }
}

pub fn is_minimal_exponent(g: &PermGroup) -> Result<bool> {
    Ok(minimal_exponent_verdict(g)?.is_minimal())
}

pub fn minimal_exponent_verdict(g: &PermGroup) -> Result<ExponentVerdict> {
    if g.is_trivial() {
        return Ok(ExponentVerdict::Minimal);
    }
    let table = conjugacy_classes(g)?;
    let e = exponent(&table);
    let err = match tuple_search(g, &table, e) {
        Err(err @ Error::CapExceeded { .. }) if g.order() <= LATTICE_ORDER_CAP => err,
        other => return other,
    };
    match lattice_verdict(g, e) {
        Err(Error::CapExceeded { .. }) => Err(err),
        other => other,
    }
}

/// Compares `e` with the exponent of every maximal subgroup.
fn lattice_verdict(g: &PermGroup, e: u64) -> Result<ExponentVerdict> {
    let lattice = SubgroupLattice::with_budget(g, MINEXP_LATTICE_BUDGET)?;
    for m in lattice.maximal_subgroups().classes {
        if exponent(&conjugacy_classes(&m.group)?) == e {
            return Ok(ExponentVerdict::Witness(m.group));
        }
    }
    Ok(ExponentVerdict::Minimal)
}

/// Searches tuples of elements of orders `p_i^{n_i}` for one generating a
/// proper subgroup. The largest prime power is fixed up to conjugacy and the
/// rest are tried in decreasing order: elements of large prime order lie in
/// few maximal subgroups, so most branches reach the whole group early.
pub fn tuple_search(g: &PermGroup, table: &ClassTable, e: u64) -> Result<ExponentVerdict> {
    if !table.has_element_table() {
        return Err(Error::CapExceeded {
            what: "tuple search group order",
            value: g.order(),
            cap: crate::classes::CLASS_TABLE_CAP,
        });
    }
    let targets: Vec<u64> = factorize_u128(e as u128)
        .into_iter()
        .map(|(p, k)| (p as u64).pow(k))
        .collect();
    let mut lists: Vec<(u64, Vec<usize>, Vec<u32>)> = targets
        .iter()
        .map(|&o| {
            let classes: Vec<usize> = (0..table.len()).filter(|&c| table.classes()[c].order == o).collect();
            let members = classes
                .iter()
                .flat_map(|&c| table.members(c).expect("element table").iter().copied())
                .collect();
            (o, classes, members)
        })
        .collect();
    lists.sort_by_key(|l| std::cmp::Reverse(l.0));
    let (_, fixed_classes, _) = lists.remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xe4b0);
    let mut rest: Vec<Vec<u32>> = lists.into_iter().map(|(_, _, m)| m).collect();
    for m in &mut rest {
        m.shuffle(&mut rng);
    }
    let mut calls = 0usize;
    for c in fixed_classes {
        let x = table.classes()[c].rep.clone();
        if let Some(h) = extend(g, &mut vec![x], &rest, &mut calls)? {
            return Ok(ExponentVerdict::Witness(h));
        }
    }
    Ok(ExponentVerdict::Minimal)
}

fn extend(
    g: &PermGroup,
    gens: &mut Vec<Permutation>,
    rest: &[Vec<u32>],
    calls: &mut usize,
) -> Result<Option<PermGroup>> {
    *calls += 1;
    if *calls > EXPONENT_SEARCH_BUDGET {
        return Err(Error::CapExceeded {
            what: "exponent search closures",
            value: *calls as u128,
            cap: EXPONENT_SEARCH_BUDGET as u128,
        });
    }
    if StabChain::reaches_order(g.degree(), gens, g.order()) {
        return Ok(None);
    }
    let Some((list, tail)) = rest.split_first() else {
        return Ok(Some(PermGroup::new(gens.clone())?));
    };
    for &r in list {
        gens.push(g.unrank(r as u64));
        let found = extend(g, gens, tail, calls)?;
        gens.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Looks for `x, y` generating a proper subgroup with the exponent of `g`,
/// with `x` running over class representatives. `None` after an exhaustive scan.
pub fn two_generated_same_exponent(g: &PermGroup) -> Result<Option<(Permutation, Permutation)>> {
    let table = conjugacy_classes(g)?;
    if !table.has_element_table() {
        return Err(Error::CapExceeded {
            what: "two-generator scan order",
            value: g.order(),
            cap: crate::classes::CLASS_TABLE_CAP,
        });
    }
    let e = exponent(&table);
    let n = g.order();
    let mut calls = 0usize;
    for class in table.classes() {
        let x = &class.rep;
        for r in 0..n as u64 {
            let y = g.unrank(r);
            calls += 1;
            if calls > EXPONENT_SEARCH_BUDGET {
                return Err(Error::CapExceeded {
                    what: "two-generator scan",
                    value: calls as u128,
                    cap: EXPONENT_SEARCH_BUDGET as u128,
                });
            }
            let gens = [x.clone(), y.clone()];
            if StabChain::reaches_order(g.degree(), &gens, n) {
                continue;
            }
            let h = PermGroup::new(gens.to_vec())?;
            if exponent(&conjugacy_classes(&h)?) == e {
                return Ok(Some((x.clone(), y)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn examples() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(is_minimal_exponent(&a5).unwrap());
        assert!(is_minimal_exponent(&group(5, &["(1 2 3 4 5)"])).unwrap());
        // S4 has exponent 12 and so do none of its maximals (8 → 4, 6 → 6, 12 → 6)
        assert!(is_minimal_exponent(&group(4, &["(1 2)", "(1 2 3 4)"])).unwrap());
        // C2 × C2 × C2 is not: C2 already has exponent 2
        let c2cube = group(6, &["(1 2)", "(3 4)", "(5 6)"]);
        assert!(!is_minimal_exponent(&c2cube).unwrap());
    }

    #[test]
    fn tuple_search_agrees_with_lattice() {
        for gens in [
            vec!["(1 2 3 4 5)", "(1 2 3)"],
            vec!["(1 2)", "(1 2 3 4)"],
            vec!["(1 2)", "(3 4)", "(5 6)"],
            vec!["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"],
            vec!["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"],
        ] {
            let g = group(7, &gens);
            let t = conjugacy_classes(&g).unwrap();
            let e = exponent(&t);
            let lattice = lattice_verdict(&g, e).unwrap().is_minimal();
            let tuples = tuple_search(&g, &t, e).unwrap();
            assert_eq!(lattice, tuples.is_minimal(), "{gens:?}");
            if let ExponentVerdict::Witness(h) = tuples {
                assert!(h.order() < g.order());
                assert_eq!(exponent(&conjugacy_classes(&h).unwrap()), e);
            }
        }
    }

    #[test]
    fn two_generated_scan() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(two_generated_same_exponent(&a5).unwrap(), None);
        let c2cube = group(6, &["(1 2)", "(3 4)", "(5 6)"]);
        assert!(two_generated_same_exponent(&c2cube).unwrap().is_some());
    }
}
