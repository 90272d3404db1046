use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

/// Largest order for which the subgroup lattice is computed.
pub const LATTICE_ORDER_CAP: u128 = 20_000;
/// Largest number of subgroup joins attempted while building a lattice.
pub const LATTICE_JOIN_BUDGET: usize = 3_000_000;

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub group: PermGroup,
    pub class_size: usize,
    /// Sorted ranks (in the parent) of the representative's elements.
    pub ranks: Vec<u32>,
}

impl SubgroupClass {
    pub fn order(&self) -> u128 {
        self.group.order()
    }
}

/// Representatives of subgroup classes of `parent`.
#[derive(Clone, Debug)]
pub struct SubgroupClassList {
    pub parent: PermGroup,
    pub classes: Vec<SubgroupClass>,
    pub complete_up_to_conjugacy: bool,
}

#[derive(Serialize)]
struct ExportedClass {
    order: u128,
    class_size: usize,
    generators: Vec<String>,
}

impl SubgroupClassList {
    /// `[{order, class_size, generators}]` with generators in cycle notation.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<ExportedClass> = self
            .classes
            .iter()
            .map(|c| ExportedClass {
                order: c.order(),
                class_size: c.class_size,
                generators: c.group.generators().iter().map(|g| g.to_string()).collect(),
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }
}

/// All subgroups of a small group up to conjugacy, with conjugation tables.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    parent: PermGroup,
    /// `conj[s][r]` is the rank of `unrank(r)` conjugated by generator `s`.
    conj: Vec<Vec<u32>>,
    /// Cyclic subgroups of prime-power order: (generator rank, element ranks).
    zuppos: Vec<(u32, Vec<u32>)>,
    classes: Vec<SubgroupClass>,
}

fn set_key(ranks: &[u32]) -> u128 {
    let mut a = DefaultHasher::new();
    0xa5u8.hash(&mut a);
    ranks.hash(&mut a);
    let mut b = DefaultHasher::new();
    0x5au8.hash(&mut b);
    ranks.hash(&mut b);
    ((a.finish() as u128) << 64) | b.finish() as u128
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

impl SubgroupLattice {
    /// Builds every subgroup class by repeatedly joining known class
    /// representatives with cyclic subgroups of prime-power order.
    ///
    /// Every subgroup is generated by the prime-power cyclic subgroups it
    /// contains, so closing the set of representatives under such joins
    /// reaches all classes.
    pub fn new(g: &PermGroup) -> Result<Self> {
        Self::with_budget(g, LATTICE_JOIN_BUDGET)
    }

    pub fn with_budget(g: &PermGroup, budget: usize) -> Result<Self> {
        let n = g.order();
        if n > LATTICE_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "lattice group order",
                value: n,
                cap: LATTICE_ORDER_CAP,
            });
        }
        let elems = g.enumerate_elements(LATTICE_ORDER_CAP)?;
        let conj: Vec<Vec<u32>> = g
            .generators()
            .iter()
            .map(|s| elems.iter().map(|x| g.rank(&x.conjugate(s)) as u32).collect())
            .collect();
        let mut zuppos = Vec::new();
        for (r, x) in elems.iter().enumerate() {
            let o = x.order();
            if !is_prime_power(o) {
                continue;
            }
            let mut powers = Vec::with_capacity(o as usize);
            let mut y = g.identity();
            let mut canonical = true;
            for i in 0..o {
                let ry = g.rank(&y) as u32;
                if i > 0 && num_integer::gcd(i, o) == 1 && (ry as usize) < r {
                    canonical = false;
                    break;
                }
                powers.push(ry);
                y = y.mul(x);
            }
            if canonical {
                powers.sort_unstable();
                zuppos.push((r as u32, powers));
            }
        }
        let mut lattice = SubgroupLattice {
            parent: g.clone(),
            conj,
            zuppos,
            classes: Vec::new(),
        };
        let mut seen: HashMap<u128, usize> = HashMap::new();
        let trivial = PermGroup::trivial(g.degree());
        lattice.register(trivial, vec![0], &mut seen);
        let mut joins = 0usize;
        let mut i = 0;
        while i < lattice.classes.len() {
            let h = lattice.classes[i].clone();
            let mut bits = FixedBitSet::with_capacity(n as usize);
            for &r in &h.ranks {
                bits.insert(r as usize);
            }
            let base: Vec<Permutation> = h
                .group
                .generators()
                .iter()
                .filter(|x| !x.is_identity())
                .cloned()
                .collect();
            for z in 0..lattice.zuppos.len() {
                let zr = lattice.zuppos[z].0;
                if bits.contains(zr as usize) {
                    continue;
                }
                joins += 1;
                if joins > budget {
                    return Err(Error::CapExceeded {
                        what: "lattice joins",
                        value: joins as u128,
                        cap: budget as u128,
                    });
                }
                let mut gens = base.clone();
                gens.push(elems[zr as usize].clone());
                let chain = StabChain::new(g.degree(), &gens);
                if chain.order() == n {
                    continue;
                }
                let mut ranks: Vec<u32> = (0..chain.order() as u64)
                    .map(|k| g.rank(&chain.unrank(k)) as u32)
                    .collect();
                ranks.sort_unstable();
                if seen.contains_key(&set_key(&ranks)) {
                    continue;
                }
                let sub = PermGroup::new(gens)?;
                lattice.register(sub, ranks, &mut seen);
            }
            i += 1;
        }
        lattice.register(g.clone(), (0..n as u32).collect(), &mut seen);
        lattice.classes.sort_by_key(|c| c.order());
        Ok(lattice)
    }

    /// Adds a new class and records the keys of all its conjugates.
    fn register(&mut self, group: PermGroup, ranks: Vec<u32>, seen: &mut HashMap<u128, usize>) {
        let idx = self.classes.len();
        let orbit = self.conjugates_of(&ranks);
        for c in &orbit {
            seen.insert(set_key(c), idx);
        }
        self.classes.push(SubgroupClass {
            group,
            class_size: orbit.len(),
            ranks,
        });
    }

    /// All conjugates of a subgroup given by its sorted rank set.
    pub fn conjugates_of(&self, ranks: &[u32]) -> Vec<Vec<u32>> {
        let mut orbit = vec![ranks.to_vec()];
        let mut keys = std::collections::HashSet::new();
        keys.insert(set_key(ranks));
        let mut k = 0;
        while k < orbit.len() {
            for table in &self.conj {
                let mut c: Vec<u32> = orbit[k].iter().map(|&r| table[r as usize]).collect();
                c.sort_unstable();
                if keys.insert(set_key(&c)) {
                    orbit.push(c);
                }
            }
            k += 1;
        }
        orbit
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    /// Classes sorted by order, trivial subgroup first and the whole group last.
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    /// Number of cyclic subgroups of prime-power order (including the trivial one
    /// is excluded).
    pub fn zuppo_count(&self) -> usize {
        self.zuppos.len()
    }

    /// A proper subgroup `M` is maximal iff joining it with any prime-power cyclic
    /// subgroup outside it gives the whole group.
    fn is_maximal(&self, c: &SubgroupClass) -> bool {
        let n = self.parent.order();
        if c.order() == n {
            return false;
        }
        let mut bits = FixedBitSet::with_capacity(n as usize);
        for &r in &c.ranks {
            bits.insert(r as usize);
        }
        let base = c.group.generators();
        self.zuppos.iter().all(|(zr, _)| {
            if bits.contains(*zr as usize) {
                return true;
            }
            let mut gens = base.to_vec();
            gens.push(self.parent.unrank(*zr as u64));
            StabChain::reaches_order(self.parent.degree(), &gens, n)
        })
    }

    pub fn maximal_subgroups(&self) -> SubgroupClassList {
        let classes = self
            .classes
            .iter()
            .filter(|c| self.is_maximal(c))
            .cloned()
            .collect();
        SubgroupClassList {
            parent: self.parent.clone(),
            classes,
            complete_up_to_conjugacy: true,
        }
    }

    pub fn all_subgroups(&self) -> SubgroupClassList {
        SubgroupClassList {
            parent: self.parent.clone(),
            classes: self.classes.clone(),
            complete_up_to_conjugacy: true,
        }
    }
}

/// Representatives of the conjugacy classes of maximal subgroups.
pub fn maximal_subgroups(g: &PermGroup) -> Result<SubgroupClassList> {
    if g.is_trivial() {
        return Ok(SubgroupClassList {
            parent: g.clone(),
            classes: Vec::new(),
            complete_up_to_conjugacy: true,
        });
    }
    Ok(SubgroupLattice::new(g)?.maximal_subgroups())
}

/// Intersection of all maximal subgroups.
pub fn frattini(g: &PermGroup) -> Result<PermGroup> {
    if g.is_trivial() {
        return Ok(g.clone());
    }
    let lattice = SubgroupLattice::new(g)?;
    let n = g.order() as usize;
    let mut inter = FixedBitSet::with_capacity(n);
    inter.insert_range(..);
    for m in lattice.maximal_subgroups().classes {
        for conj in lattice.conjugates_of(&m.ranks) {
            let mut bits = FixedBitSet::with_capacity(n);
            for r in conj {
                bits.insert(r as usize);
            }
            inter.intersect_with(&bits);
        }
    }
    let mut gens = vec![g.identity()];
    let mut chain = StabChain::new(g.degree(), &gens);
    for r in inter.ones() {
        let x = g.unrank(r as u64);
        if !chain.contains(&x) {
            chain.add_generators(std::slice::from_ref(&x));
            gens.push(x);
        }
    }
    PermGroup::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn summary(list: &SubgroupClassList) -> Vec<(u128, usize)> {
        let mut v: Vec<(u128, usize)> = list.classes.iter().map(|c| (c.order(), c.class_size)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn a5_maximals() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let m = maximal_subgroups(&a5).unwrap();
        assert_eq!(summary(&m), vec![(6, 10), (10, 6), (12, 5)]);
        let lattice = SubgroupLattice::new(&a5).unwrap();
        // 1, C2, C3, V4, C5, S3, D10, A4, A5
        assert_eq!(lattice.classes().len(), 9);
        let total: usize = lattice.classes().iter().map(|c| c.class_size).sum();
        assert_eq!(total, 59);
    }

    #[test]
    fn small_examples() {
        let c7 = group(7, &["(1 2 3 4 5 6 7)"]);
        assert_eq!(summary(&maximal_subgroups(&c7).unwrap()), vec![(1, 1)]);
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let orders: Vec<u128> = summary(&maximal_subgroups(&s4).unwrap()).iter().map(|x| x.0).collect();
        assert_eq!(orders, vec![6, 8, 12]);
        // S4 has 30 subgroups in 11 classes
        let l = SubgroupLattice::new(&s4).unwrap();
        assert_eq!(l.classes().len(), 11);
        assert_eq!(l.classes().iter().map(|c| c.class_size).sum::<usize>(), 30);
    }

    #[test]
    fn frattini_examples() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(frattini(&a5).unwrap().is_trivial());
        let c4 = group(4, &["(1 2 3 4)"]);
        assert_eq!(frattini(&c4).unwrap().order(), 2);
        let q8 = group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]);
        let phi = frattini(&q8).unwrap();
        assert_eq!(phi.order(), 2);
        assert!(q8.normalizes(&phi));
    }

    #[test]
    fn cap_is_enforced() {
        let a8 = group(8, &["(1 2 3)", "(2 3 4 5 6 7 8)"]);
        assert!(matches!(maximal_subgroups(&a8), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn json_export() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let v = maximal_subgroups(&s3).unwrap().to_json();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert!(v[0]["generators"].is_array());
    }
}
