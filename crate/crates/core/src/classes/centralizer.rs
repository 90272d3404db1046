use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

/// Largest conjugacy class explored by [`centralizer`].
pub const CENTRALIZER_ORBIT_CAP: usize = 20_000_000;

/// `C_G(g)`, built from Schreier generators of the conjugation orbit of `g`.
///
/// The orbit is explored with parent pointers; Schreier generators
/// `t_y · s · t_{y^s}⁻¹` centralize `g` and, by Schreier's lemma, generate the
/// whole centralizer. They are added (seeded random picks first, then a full
/// sweep) until the order reaches `|G| / |g^G|`.
pub fn centralizer(group: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    if !group.contains(g)? {
        return Err(Error::NotInGroup(g.to_string()));
    }
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .filter(|s| !s.is_identity())
        .cloned()
        .collect();
    if gens.is_empty() {
        return Ok(group.clone());
    }
    // orbit[i] = element, parent[i] = (parent index, generator index)
    let mut orbit = vec![g.clone()];
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, 0)];
    let mut index: HashMap<u64, u32> = HashMap::new();
    index.insert(group.rank(g), 0);
    let mut k = 0;
    while k < orbit.len() {
        for (si, s) in gens.iter().enumerate() {
            let z = orbit[k].conjugate(s);
            let r = group.rank(&z);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(r) {
                e.insert(orbit.len() as u32);
                orbit.push(z);
                parent.push((k as u32, si as u32));
                if orbit.len() > CENTRALIZER_ORBIT_CAP {
                    return Err(Error::CapExceeded {
                        what: "conjugacy class size",
                        value: orbit.len() as u128,
                        cap: CENTRALIZER_ORBIT_CAP as u128,
                    });
                }
            }
        }
        k += 1;
    }
    let target = group.order() / orbit.len() as u128;
    let transversal = |mut i: usize| -> Permutation {
        let mut word = Vec::new();
        while parent[i].0 != u32::MAX {
            word.push(parent[i].1 as usize);
            i = parent[i].0 as usize;
        }
        word.iter()
            .rev()
            .fold(Permutation::identity(g.degree()), |t, &s| t.mul(&gens[s]))
    };
    let schreier = |i: usize, s: usize| -> Permutation {
        let z = orbit[i].conjugate(&gens[s]);
        let j = index[&group.rank(&z)] as usize;
        transversal(i).mul(&gens[s]).mul(&transversal(j).inverse())
    };

    let degree = group.degree();
    let mut cgens = vec![Permutation::identity(degree)];
    let mut chain = StabChain::new(degree, &cgens);
    let mut rng = ChaCha8Rng::seed_from_u64(0xce17);
    let consider = |x: Permutation, chain: &mut StabChain, cgens: &mut Vec<Permutation>| {
        if !chain.contains(&x) {
            chain.add_generators(std::slice::from_ref(&x));
            cgens.push(x);
        }
    };
    for _ in 0..64 {
        if chain.order() == target {
            break;
        }
        let i = rng.gen_range(0..orbit.len());
        let s = rng.gen_range(0..gens.len());
        consider(schreier(i, s), &mut chain, &mut cgens);
    }
    'sweep: for i in 0..orbit.len() {
        for s in 0..gens.len() {
            if chain.order() == target {
                break 'sweep;
            }
            consider(schreier(i, s), &mut chain, &mut cgens);
        }
    }
    debug_assert_eq!(chain.order(), target);
    if cgens.len() > 1 {
        cgens.remove(0);
    }
    PermGroup::new(cgens)
}

/// Some `x ∈ G` with `from^x = to`, or `None` when the two are not conjugate.
///
/// Breadth-first search over the conjugation orbit of `from`.
pub fn find_conjugator(
    group: &PermGroup,
    from: &Permutation,
    to: &Permutation,
) -> Result<Option<Permutation>> {
    if !group.contains(from)? {
        return Err(Error::NotInGroup(from.to_string()));
    }
    if from == to {
        return Ok(Some(group.identity()));
    }
    if from.cycle_type() != to.cycle_type() || !group.contains(to)? {
        return Ok(None);
    }
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(group.rank(from));
    let mut frontier = vec![(from.clone(), group.identity())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (y, x) in frontier {
            for s in group.generators() {
                let z = y.conjugate(s);
                if seen.insert(group.rank(&z)) {
                    let xz = x.mul(s);
                    if &z == to {
                        return Ok(Some(xz));
                    }
                    if seen.len() > CENTRALIZER_ORBIT_CAP {
                        return Err(Error::CapExceeded {
                            what: "conjugacy class size",
                            value: seen.len() as u128,
                            cap: CENTRALIZER_ORBIT_CAP as u128,
                        });
                    }
                    next.push((z, xz));
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn brute(group: &PermGroup, g: &Permutation) -> u128 {
        group
            .enumerate_elements(100_000)
            .unwrap()
            .iter()
            .filter(|x| g.mul(x) == x.mul(g))
            .count() as u128
    }

    #[test]
    fn examples() {
        let a5 = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        assert_eq!(centralizer(&a5, &a5.identity()).unwrap().order(), 60);
        assert_eq!(centralizer(&a5, &p("(1 2 3 4 5)", 5)).unwrap().order(), 5);
        let s5 = PermGroup::from_cycle_strings(5, &["(1 2)", "(1 2 3 4 5)"]).unwrap();
        assert_eq!(centralizer(&s5, &p("(1 2)", 5)).unwrap().order(), 12);
        assert!(centralizer(&a5, &p("(1 2)", 5)).is_err());
    }

    #[test]
    fn conjugators() {
        let a5 = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        let a = p("(1 2 3 4 5)", 5);
        // a⁻¹ = a^(2 5)(3 4), an even conjugator
        let b = p("(1 5 4 3 2)", 5);
        let x = find_conjugator(&a5, &a, &b).unwrap().unwrap();
        assert_eq!(a.conjugate(&x), b);
        // the two classes of 5-cycles are not fused in A5
        assert_eq!(find_conjugator(&a5, &a, &p("(1 2 3 5 4)", 5)).unwrap(), None);
        assert_eq!(find_conjugator(&a5, &a, &a.mul(&a)).unwrap(), None);
    }

    #[test]
    fn matches_brute_force_and_commutes() {
        let m = PermGroup::from_cycle_strings(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 2)(3 6)"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = m.random_element(&mut rng);
            let c = centralizer(&m, &g).unwrap();
            assert_eq!(c.order(), brute(&m, &g));
            for x in c.generators() {
                assert_eq!(g.mul(x), x.mul(&g));
            }
        }
    }
}
