use std::cmp::Reverse;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use super::decide::{DecisionPath, InvgenContext, EXHAUSTIVE_CLOSURE_BUDGET};
use super::witness::GenWitness;
use crate::classes::{centralizer, conjugacy_classes, CLASS_TABLE_CAP};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};
use crate::structure::derived_subgroup;

/// Outcome of a coprime invariable generating set search.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CigSearch {
    Found(GenWitness),
    /// Every candidate tuple up to the size bound was refuted.
    NoneFound { max_size: usize, reason: String },
    /// Some candidates could not be decided within the caps.
    Undecided { reason: String },
}

impl CigSearch {
    pub fn witness(&self) -> Option<&GenWitness> {
        match self {
            CigSearch::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_none_found(&self) -> bool {
        matches!(self, CigSearch::NoneFound { .. })
    }
}

pub fn find_cig(g: &PermGroup, max_size: usize) -> Result<CigSearch> {
    find_cig_with(&InvgenContext::new(g)?, max_size, DecisionPath::Auto)
}

/// Searches tuples of class representatives with pairwise coprime orders, by
/// increasing size, classes scanned by descending element order and then
/// ascending class size.
///
/// Coprime elements map to a cyclic subgroup of the abelianization, so a group
/// with non-cyclic abelianization has no such set at all.
pub fn find_cig_with(ctx: &InvgenContext, max_size: usize, path: DecisionPath) -> Result<CigSearch> {
    let g = ctx.group();
    if g.is_trivial() {
        return Ok(CigSearch::Found(GenWitness::new(Vec::new(), true)));
    }
    let table = ctx.table();
    let derived = derived_subgroup(g);
    let cyclic_top = table.classes().iter().any(|c| {
        let mut gens = derived.generators().to_vec();
        gens.push(c.rep.clone());
        StabChain::reaches_order(g.degree(), &gens, g.order())
    });
    if !cyclic_top {
        return Ok(CigSearch::NoneFound {
            max_size,
            reason: "abelianization is not cyclic".into(),
        });
    }
    let mut order: Vec<usize> = (0..table.len()).filter(|&c| table.classes()[c].order > 1).collect();
    order.sort_by_key(|&c| (Reverse(table.classes()[c].order), table.classes()[c].size, c));
    let mut undecided = 0usize;
    for size in 1..=max_size {
        let mut chosen = Vec::new();
        if let Some(w) = tuples(ctx, &order, 0, size, &mut chosen, path, &mut undecided)? {
            return Ok(CigSearch::Found(w));
        }
    }
    if undecided > 0 {
        return Ok(CigSearch::Undecided {
            reason: format!("{undecided} candidate tuples exceeded the search caps"),
        });
    }
    Ok(CigSearch::NoneFound {
        max_size,
        reason: "every coprime class tuple refuted".into(),
    })
}

fn tuples(
    ctx: &InvgenContext,
    order: &[usize],
    from: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    path: DecisionPath,
    undecided: &mut usize,
) -> Result<Option<GenWitness>> {
    let classes = ctx.table().classes();
    if chosen.len() == size {
        let reps: Vec<Permutation> = chosen.iter().map(|&c| classes[c].rep.clone()).collect();
        if !StabChain::reaches_order(ctx.group().degree(), &reps, ctx.group().order()) {
            return Ok(None);
        }
        return match ctx.invariably_generates(&reps, path) {
            Ok(v) if v.holds() => Ok(Some(GenWitness::new(reps, true))),
            Ok(_) => Ok(None),
            Err(Error::CapExceeded { .. }) => {
                *undecided += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        };
    }
    for i in from..order.len() {
        let c = order[i];
        if chosen.iter().any(|&d| classes[d].order.gcd(&classes[c].order) != 1) {
            continue;
        }
        chosen.push(c);
        let found = tuples(ctx, order, i + 1, size, chosen, path, undecided)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn cycles<S: Serializer>(v: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// Result of the minimal generator search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinGenerators {
    /// `None` when no tuple of at most `cap` elements generates.
    pub d: Option<usize>,
    pub cap: usize,
    #[serde(serialize_with = "cycles")]
    pub witness: Vec<Permutation>,
}

/// Largest cap accepted by [`min_generators`].
pub const MIN_GENERATORS_CAP: usize = 4;

/// `d(G)` by exhaustive search: the first element runs over class
/// representatives, the second over orbit representatives of the first one's
/// centralizer, the rest over coset representatives of the subgroup generated
/// so far.
pub fn min_generators(g: &PermGroup, cap: usize) -> Result<MinGenerators> {
    if cap > MIN_GENERATORS_CAP {
        return Err(Error::InvalidArgument(format!("cap {cap} exceeds {MIN_GENERATORS_CAP}")));
    }
    if g.is_trivial() {
        return Ok(MinGenerators { d: Some(0), cap, witness: Vec::new() });
    }
    if g.order() > CLASS_TABLE_CAP {
        return Err(Error::CapExceeded {
            what: "generator search order",
            value: g.order(),
            cap: CLASS_TABLE_CAP,
        });
    }
    let table = conjugacy_classes(g)?;
    let mut reps: Vec<Permutation> = table.classes().iter().filter(|c| c.order > 1).map(|c| c.rep.clone()).collect();
    reps.sort_by_key(|x| Reverse(x.order()));
    let mut calls = 0u64;
    for d in 1..=cap {
        for x in &reps {
            let second = if d >= 2 {
                centralizer_orbit_reps(g, x)?
            } else {
                Vec::new()
            };
            let mut tuple = vec![x.clone()];
            if extend(g, &mut tuple, d, &second, &mut calls)? {
                return Ok(MinGenerators { d: Some(d), cap, witness: tuple });
            }
        }
    }
    Ok(MinGenerators { d: None, cap, witness: Vec::new() })
}

fn extend(g: &PermGroup, tuple: &mut Vec<Permutation>, d: usize, second: &[u64], calls: &mut u64) -> Result<bool> {
    *calls += 1;
    if *calls > EXHAUSTIVE_CLOSURE_BUDGET {
        return Err(Error::CapExceeded {
            what: "generator search closures",
            value: *calls as u128,
            cap: EXHAUSTIVE_CLOSURE_BUDGET as u128,
        });
    }
    if tuple.len() == d {
        return Ok(StabChain::reaches_order(g.degree(), tuple, g.order()));
    }
    let chain = StabChain::new(g.degree(), tuple);
    let candidates: Vec<u64> = if tuple.len() == 1 {
        second.to_vec()
    } else {
        coset_reps(g, &chain)
    };
    for r in candidates {
        let y = g.unrank(r);
        if chain.contains(&y) {
            continue;
        }
        tuple.push(y);
        if extend(g, tuple, d, second, calls)? {
            return Ok(true);
        }
        tuple.pop();
    }
    Ok(false)
}

/// Ranks of one element per right coset `Hy`: `⟨H, y⟩ = ⟨H, hy⟩`, so one
/// representative per coset suffices.
fn coset_reps(g: &PermGroup, h: &StabChain) -> Vec<u64> {
    let n = g.order() as usize;
    let members: Vec<Permutation> = (0..h.order() as u64).map(|r| h.unrank(r)).collect();
    let mut seen = vec![false; n];
    let mut reps = Vec::with_capacity(n / members.len());
    for start in 0..n {
        if seen[start] {
            continue;
        }
        reps.push(start as u64);
        let y = g.unrank(start as u64);
        for m in &members {
            seen[g.rank(&m.mul(&y)) as usize] = true;
        }
    }
    reps
}

/// Ranks of one element from each orbit of `C_G(x)` acting on `G` by conjugation.
fn centralizer_orbit_reps(g: &PermGroup, x: &Permutation) -> Result<Vec<u64>> {
    let cent = centralizer(g, x)?;
    let gens: Vec<&Permutation> = cent.generators().iter().filter(|c| !c.is_identity()).collect();
    let n = g.order() as usize;
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(start as u64);
        let mut stack = vec![start as u64];
        while let Some(r) = stack.pop() {
            let y = g.unrank(r);
            for c in &gens {
                let s = g.rank(&y.conjugate(c));
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    stack.push(s);
                }
            }
        }
    }
    Ok(reps)
}

/// Random search for generators of `g` with the prescribed element orders:
/// elements are drawn until one of each order is at hand, then the tuple is
/// tested; at most `tries` draws in total. Deterministic for a fixed seed.
pub fn random_generating_tuple(g: &PermGroup, orders: &[u64], seed: u64, tries: u64) -> Option<Vec<Permutation>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<Option<Permutation>> = vec![None; orders.len()];
    for _ in 0..tries {
        let x = g.random_element(&mut rng);
        let o = x.order();
        if let Some(i) = (0..orders.len()).find(|&i| orders[i] == o && slots[i].is_none()) {
            slots[i] = Some(x);
        }
        if slots.iter().all(Option::is_some) {
            let tuple: Vec<Permutation> = slots.iter_mut().map(|s| s.take().expect("filled")).collect();
            if StabChain::reaches_order(g.degree(), &tuple, g.order()) {
                return Some(tuple);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn a5_cig() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let w = find_cig(&a5, 3).unwrap();
        let w = w.witness().unwrap();
        let mut orders = w.orders.clone();
        orders.sort();
        assert_eq!(orders, vec![3, 5]);
        assert!(w.coprime && w.invariable);
    }

    #[test]
    fn psl27_has_cig() {
        let g = group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 2)(3 6)"]);
        assert_eq!(g.order(), 168);
        assert!(find_cig(&g, 3).unwrap().witness().is_some());
    }

    #[test]
    fn non_cyclic_abelianization_has_none() {
        let v = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(find_cig(&v, 3).unwrap().is_none_found());
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        assert!(find_cig(&c6, 2).unwrap().witness().is_some());
    }

    #[test]
    fn generator_numbers() {
        let c2cube = group(6, &["(1 2)", "(3 4)", "(5 6)"]);
        assert_eq!(min_generators(&c2cube, 4).unwrap().d, Some(3));
        assert_eq!(min_generators(&c2cube, 2).unwrap().d, None);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let m = min_generators(&a5, 3).unwrap();
        assert_eq!(m.d, Some(2));
        assert!(StabChain::reaches_order(5, &m.witness, 60));
        assert_eq!(min_generators(&group(5, &["(1 2 3 4 5)"]), 2).unwrap().d, Some(1));
        assert!(min_generators(&a5, 5).is_err());
    }
}

#[cfg(test)]
mod random_tuple_tests {
    use super::*;

    #[test]
    fn finds_prescribed_orders() {
        let s4 = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let t = random_generating_tuple(&s4, &[2, 3], 5, 10_000).expect("S4 = <(1 2), (2 3 4)>-type pair");
        assert_eq!(t.iter().map(|x| x.order()).collect::<Vec<_>>(), vec![2, 3]);
        let v4 = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert!(random_generating_tuple(&v4, &[2], 5, 1000).is_none());
    }
}
