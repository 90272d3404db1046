use num_integer::Integer;

use crate::classes::{conjugacy_classes, ClassTable};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

/// Largest order accepted by [`minimal_normal_subgroups`].
pub const NORMAL_SCAN_CAP: u128 = 1_000_000;

/// Smallest normal subgroup of `g` containing `elems`.
///
/// Conjugates of the current generators by generators of `g` are added until
/// the set is closed.
pub fn normal_closure(g: &PermGroup, elems: &[Permutation]) -> PermGroup {
    let degree = g.degree();
    let mut gens: Vec<Permutation> = elems.iter().filter(|x| !x.is_identity()).cloned().collect();
    if gens.is_empty() {
        return PermGroup::trivial(degree);
    }
    let mut chain = StabChain::new(degree, &gens);
    let mut k = 0;
    while k < gens.len() {
        for s in g.generators() {
            let c = gens[k].conjugate(s);
            if !chain.contains(&c) {
                chain.add_generators(std::slice::from_ref(&c));
                gens.push(c);
            }
        }
        k += 1;
    }
    PermGroup::new(gens).expect("subgroup of a valid group")
}

/// `[G, G]`: the normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            comms.push(gens[i].commutator(&gens[j]));
        }
    }
    normal_closure(g, &comms)
}

/// `G = G^(0) ≥ G' ≥ G'' ≥ …` until it stabilizes.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("nonempty");
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(g: &PermGroup) -> bool {
    derived_series(g).last().expect("nonempty").is_trivial()
}

pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
}

/// Nonabelian simple, or cyclic of prime order.
pub fn is_simple(g: &PermGroup, table: &ClassTable) -> bool {
    if g.is_trivial() {
        return false;
    }
    if is_abelian(g) {
        return crate::arith::is_prime(g.order() as u64);
    }
    table
        .classes()
        .iter()
        .filter(|c| !c.rep.is_identity())
        .all(|c| normal_closure(g, std::slice::from_ref(&c.rep)).order() == g.order())
}

/// Least common multiple of the element orders.
pub fn exponent(table: &ClassTable) -> u64 {
    table
        .classes()
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.order))
}

/// All minimal normal subgroups: the minimal members among the normal
/// closures of class representatives.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    if g.order() > NORMAL_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "normal subgroup scan order",
            value: g.order(),
            cap: NORMAL_SCAN_CAP,
        });
    }
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let table = conjugacy_classes(g)?;
    let mut closures: Vec<PermGroup> = Vec::new();
    for c in table.classes().iter().filter(|c| !c.rep.is_identity()) {
        let n = normal_closure(g, std::slice::from_ref(&c.rep));
        if !closures.iter().any(|m| m.order() == n.order() && m.same_as(&n)) {
            closures.push(n);
        }
    }
    closures.sort_by_key(|n| n.order());
    let minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// Product of all minimal normal subgroups.
pub fn socle(g: &PermGroup) -> Result<PermGroup> {
    let mins = minimal_normal_subgroups(g)?;
    let gens: Vec<Permutation> = mins.iter().flat_map(|m| m.generators().to_vec()).collect();
    if gens.is_empty() {
        return Ok(PermGroup::trivial(g.degree()));
    }
    PermGroup::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn minimal_normals() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let m = minimal_normal_subgroups(&s4).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 4);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let m = minimal_normal_subgroups(&a5).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 60);
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let orders: Vec<u128> = minimal_normal_subgroups(&c6).unwrap().iter().map(|m| m.order()).collect();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn solubility() {
        assert!(is_soluble(&group(4, &["(1 2)", "(1 2 3 4)"])));
        assert!(!is_soluble(&group(5, &["(1 2 3 4 5)", "(1 2 3)"])));
        assert!(is_soluble(&group(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"])));
        let series = derived_series(&group(4, &["(1 2)", "(1 2 3 4)"]));
        let orders: Vec<u128> = series.iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
    }

    #[test]
    fn exponents_and_simplicity() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let t = conjugacy_classes(&a5).unwrap();
        assert_eq!(exponent(&t), 30);
        assert!(is_simple(&a5, &t));
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(exponent(&conjugacy_classes(&v4).unwrap()), 2);
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let t4 = conjugacy_classes(&a4).unwrap();
        assert_eq!(exponent(&t4), 6);
        assert!(!is_simple(&a4, &t4));
        let c5 = group(5, &["(1 2 3 4 5)"]);
        assert!(is_simple(&c5, &conjugacy_classes(&c5).unwrap()));
    }

    #[test]
    fn normal_closure_of_transposition() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let t = Permutation::parse("(1 2)", Some(4)).unwrap();
        assert_eq!(normal_closure(&s4, &[t]).order(), 24);
        let d = Permutation::parse("(1 2)(3 4)", Some(4)).unwrap();
        assert_eq!(normal_closure(&s4, &[d]).order(), 4);
    }
}
