use std::collections::HashSet;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::witness::{Certificate, InvariableVerdict};
use crate::classes::{centralizer, conjugacy_classes, ClassTable};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};
use crate::structure::{SubgroupLattice, LATTICE_ORDER_CAP};

/// Subgroup closures allowed for one exhaustive decision.
pub const EXHAUSTIVE_CLOSURE_BUDGET: u64 = 100_000_000;
/// Random conjugate tuples tried before the exhaustive scan.
pub const RANDOM_REFUTATION_TRIES: usize = 256;
/// Largest class enumerated when the class table has no element index.
pub const CLASS_ORBIT_CAP: usize = 5_000_000;
/// Partial subgroups up to this order are remembered during the scan.
const MEMO_ORDER: u128 = 4096;

/// Which decision procedure to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DecisionPath {
    /// Exhaustive scan, falling back to maximal subgroups when the scan
    /// exceeds its budget (or reusing them once built).
    #[default]
    Auto,
    /// Look for a maximal subgroup meeting every class.
    Certificate,
    /// Enumerate conjugate tuples.
    Exhaustive,
}

#[derive(Clone, Debug)]
struct Maximal {
    group: PermGroup,
    ranks: Vec<u32>,
    classes_met: FixedBitSet,
}

/// `true` iff `elems` generate `g`.
pub fn generates(g: &PermGroup, elems: &[Permutation]) -> Result<bool> {
    for x in elems {
        if !g.contains(x)? {
            return Err(Error::NotInGroup(x.to_string()));
        }
    }
    Ok(StabChain::reaches_order(g.degree(), elems, g.order()))
}

/// Decides invariable generation with [`DecisionPath::Auto`].
pub fn invariably_generates(g: &PermGroup, elems: &[Permutation]) -> Result<InvariableVerdict> {
    InvgenContext::new(g)?.invariably_generates(elems, DecisionPath::Auto)
}

/// Class data and (lazily) maximal subgroups of one group, shared by repeated
/// invariable-generation decisions.
pub struct InvgenContext {
    group: PermGroup,
    table: ClassTable,
    maximals: OnceLock<Option<Vec<Maximal>>>,
    closures: AtomicU64,
}

impl InvgenContext {
    pub fn new(group: &PermGroup) -> Result<Self> {
        Ok(Self::from_table(conjugacy_classes(group)?))
    }

    pub fn from_table(table: ClassTable) -> Self {
        InvgenContext {
            group: table.group().clone(),
            table,
            maximals: OnceLock::new(),
            closures: AtomicU64::new(0),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    /// Subgroup closures spent by exhaustive scans so far.
    pub fn closures_used(&self) -> u64 {
        self.closures.load(Ordering::Relaxed)
    }

    fn maximals(&self) -> Option<&[Maximal]> {
        self.maximals
            .get_or_init(|| {
                if self.group.order() > LATTICE_ORDER_CAP || !self.table.has_element_table() {
                    return None;
                }
                let lattice = SubgroupLattice::new(&self.group).ok()?;
                let n = self.table.len();
                let list = lattice
                    .maximal_subgroups()
                    .classes
                    .into_iter()
                    .map(|m| {
                        let mut classes_met = FixedBitSet::with_capacity(n);
                        for &r in &m.ranks {
                            classes_met.insert(self.table.class_of_rank(r as u64).expect("element table"));
                        }
                        Maximal {
                            group: m.group,
                            ranks: m.ranks,
                            classes_met,
                        }
                    })
                    .collect();
                Some(list)
            })
            .as_deref()
    }

    /// `true` when the certificate path can run (builds the lattice on first use).
    pub fn certificate_path_available(&self) -> bool {
        self.maximals().is_some()
    }

    /// Representatives of the maximal-subgroup classes, if the lattice is feasible.
    pub fn maximal_subgroups(&self) -> Option<Vec<PermGroup>> {
        self.maximals().map(|ms| ms.iter().map(|m| m.group.clone()).collect())
    }

    /// Whether every choice of conjugates of `elems` generates the group.
    pub fn invariably_generates(&self, elems: &[Permutation], path: DecisionPath) -> Result<InvariableVerdict> {
        let classes = elems
            .iter()
            .map(|x| self.table.class_index(x))
            .collect::<Result<Vec<_>>>()?;
        match path {
            DecisionPath::Certificate => self.by_certificate(&classes).ok_or(Error::CapExceeded {
                what: "lattice order for the certificate path",
                value: self.group.order(),
                cap: LATTICE_ORDER_CAP,
            }),
            DecisionPath::Exhaustive => self.by_exhaustion(elems, &classes),
            // the scan usually settles a tuple long before the lattice is
            // built, so the lattice is only used once it exists or as a fallback
            DecisionPath::Auto => {
                if matches!(self.maximals.get(), Some(Some(_))) {
                    return Ok(self.by_certificate(&classes).expect("lattice built"));
                }
                match self.by_exhaustion(elems, &classes) {
                    Err(e @ Error::CapExceeded { .. }) => self.by_certificate(&classes).ok_or(e),
                    other => other,
                }
            }
        }
    }

    /// Same decision for the class representatives of `classes`.
    pub fn decide_classes(&self, classes: &[usize], path: DecisionPath) -> Result<InvariableVerdict> {
        let reps: Vec<Permutation> = classes.iter().map(|&c| self.table.classes()[c].rep.clone()).collect();
        self.invariably_generates(&reps, path)
    }

    /// Not invariable iff some maximal subgroup meets every class.
    fn by_certificate(&self, classes: &[usize]) -> Option<InvariableVerdict> {
        let maximals = self.maximals()?;
        if self.group.is_trivial() {
            return Some(InvariableVerdict::Invariable);
        }
        for m in maximals {
            if classes.iter().all(|&c| m.classes_met.contains(c)) {
                let conjugates = classes
                    .iter()
                    .map(|&c| {
                        let r = m
                            .ranks
                            .iter()
                            .find(|&&r| self.table.class_of_rank(r as u64) == Some(c))
                            .expect("class met");
                        self.group.unrank(*r as u64)
                    })
                    .collect();
                return Some(InvariableVerdict::NotInvariable(Certificate {
                    subgroup: m.group.clone(),
                    conjugates,
                }));
            }
        }
        Some(InvariableVerdict::Invariable)
    }

    fn class_ranks(&self, c: usize) -> Result<Vec<u64>> {
        if let Some(m) = self.table.members(c) {
            return Ok(m.iter().map(|&r| r as u64).collect());
        }
        let rep = &self.table.classes()[c].rep;
        Ok(self
            .group
            .conjugacy_orbit(rep, CLASS_ORBIT_CAP)?
            .iter()
            .map(|x| self.group.rank(x))
            .collect())
    }

    fn spend(&self) -> Result<()> {
        let used = self.closures.fetch_add(1, Ordering::Relaxed) + 1;
        if used > EXHAUSTIVE_CLOSURE_BUDGET {
            return Err(Error::CapExceeded {
                what: "exhaustive subgroup closures",
                value: used as u128,
                cap: EXHAUSTIVE_CLOSURE_BUDGET as u128,
            });
        }
        Ok(())
    }

    /// Fixes the element with the smallest class, reduces the next one modulo
    /// the centralizer of the fixed element and scans all remaining conjugates.
    fn by_exhaustion(&self, elems: &[Permutation], classes: &[usize]) -> Result<InvariableVerdict> {
        let g = &self.group;
        let n = g.order();
        let not_invariable = |conjugates: Vec<Permutation>| -> Result<InvariableVerdict> {
            let subgroup = if conjugates.iter().all(|x| x.is_identity()) {
                PermGroup::trivial(g.degree())
            } else {
                PermGroup::new(conjugates.clone())?
            };
            Ok(InvariableVerdict::NotInvariable(Certificate { subgroup, conjugates }))
        };
        if !StabChain::reaches_order(g.degree(), elems, n) {
            return not_invariable(elems.to_vec());
        }
        if elems.len() <= 1 {
            // a single generator: every conjugate also generates
            return Ok(InvariableVerdict::Invariable);
        }
        let mut order: Vec<usize> = (0..elems.len()).collect();
        order.sort_by_key(|&i| (self.table.classes()[classes[i]].size, i));
        let fixed = elems[order[0]].clone();
        let rest: Vec<usize> = order[1..].to_vec();

        let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
        for _ in 0..RANDOM_REFUTATION_TRIES {
            let mut tuple = vec![fixed.clone()];
            for &i in &rest {
                tuple.push(elems[i].conjugate(&g.random_element(&mut rng)));
            }
            self.spend()?;
            if !StabChain::reaches_order(g.degree(), &tuple, n) {
                return not_invariable(self.reorder(&tuple, &order));
            }
        }

        let cent = centralizer(g, &fixed)?;
        let first = self.orbit_representatives(&self.class_ranks(classes[rest[0]])?, &cent);
        let mut levels = vec![first];
        for &i in &rest[1..] {
            levels.push(self.class_ranks(classes[i])?);
        }
        let mut memo: HashSet<(usize, u128)> = HashSet::new();
        let mut tuple = vec![fixed];
        if self.scan(&mut tuple, &levels, &mut memo)? {
            return not_invariable(self.reorder(&tuple, &order));
        }
        Ok(InvariableVerdict::Invariable)
    }

    fn reorder(&self, tuple: &[Permutation], order: &[usize]) -> Vec<Permutation> {
        let mut out = vec![self.group.identity(); tuple.len()];
        for (k, &i) in order.iter().enumerate() {
            out[i] = tuple[k].clone();
        }
        out
    }

    /// Depth-first scan; `true` (with `tuple` filled) when some conjugate tuple
    /// generates a proper subgroup.
    fn scan(&self, tuple: &mut Vec<Permutation>, levels: &[Vec<u64>], memo: &mut HashSet<(usize, u128)>) -> Result<bool> {
        let g = &self.group;
        self.spend()?;
        let chain = StabChain::new(g.degree(), tuple);
        if chain.order() == g.order() {
            return Ok(false);
        }
        let Some((level, deeper)) = levels.split_first() else {
            return Ok(true);
        };
        if chain.order() <= MEMO_ORDER {
            let mut ranks: Vec<u64> = (0..chain.order() as u64).map(|k| g.rank(&chain.unrank(k))).collect();
            ranks.sort_unstable();
            let mut h = DefaultHasher::new();
            ranks.hash(&mut h);
            let mut h2 = DefaultHasher::new();
            (ranks.len(), &ranks).hash(&mut h2);
            let key = ((h.finish() as u128) << 64) | h2.finish() as u128;
            if !memo.insert((levels.len(), key)) {
                return Ok(false);
            }
        }
        for &r in level {
            tuple.push(g.unrank(r));
            if self.scan(tuple, deeper, memo)? {
                return Ok(true);
            }
            tuple.pop();
        }
        Ok(false)
    }

    /// One rank from each orbit of `cent` (by conjugation) on the given ranks.
    fn orbit_representatives(&self, ranks: &[u64], cent: &PermGroup) -> Vec<u64> {
        let g = &self.group;
        let index: std::collections::HashMap<u64, usize> = ranks.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut seen = vec![false; ranks.len()];
        let mut reps = Vec::new();
        let gens: Vec<&Permutation> = cent.generators().iter().filter(|c| !c.is_identity()).collect();
        for start in 0..ranks.len() {
            if seen[start] {
                continue;
            }
            reps.push(ranks[start]);
            seen[start] = true;
            let mut stack = vec![ranks[start]];
            while let Some(r) = stack.pop() {
                let x = g.unrank(r);
                for c in &gens {
                    let y = g.rank(&x.conjugate(c));
                    let j = index[&y];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(y);
                    }
                }
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::find_conjugator;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn generation_examples() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(generates(&a5, &[p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)]).unwrap());
        assert!(!generates(&a5, &[a5.identity()]).unwrap());
        assert!(!generates(&a5, &[p("(1 2)(3 4)", 5), p("(1 3)(2 4)", 5)]).unwrap());
        assert!(generates(&a5, &[p("(1 2)", 5)]).is_err());
    }

    #[test]
    fn a5_examples_on_both_paths() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let ctx = InvgenContext::new(&a5).unwrap();
        let yes = [p("(1 2 3)", 5), p("(1 2 3 4 5)", 5)];
        let no = [p("(1 2)(3 4)", 5), p("(1 2 3 4 5)", 5)];
        for path in [DecisionPath::Certificate, DecisionPath::Exhaustive] {
            assert!(ctx.invariably_generates(&yes, path).unwrap().holds());
            let v = ctx.invariably_generates(&no, path).unwrap();
            let cert = v.certificate().expect("not invariable");
            assert!(cert.subgroup.order() < 60);
            for (x, y) in no.iter().zip(&cert.conjugates) {
                assert!(cert.subgroup.has(y));
                assert!(find_conjugator(&a5, x, y).unwrap().is_some());
            }
        }
        let cert = ctx.invariably_generates(&no, DecisionPath::Certificate).unwrap();
        assert_eq!(cert.certificate().unwrap().subgroup.order(), 10);
    }

    #[test]
    fn paths_agree_on_all_class_pairs() {
        for g in [
            group(5, &["(1 2 3 4 5)", "(1 2 3)"]),
            group(4, &["(1 2)", "(1 2 3 4)"]),
            group(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]),
            group(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)", "(1 2)(3 6)"]),
        ] {
            let ctx = InvgenContext::new(&g).unwrap();
            let k = ctx.table().len();
            for a in 0..k {
                for b in a..k {
                    let x = ctx.decide_classes(&[a, b], DecisionPath::Certificate).unwrap();
                    let y = ctx.decide_classes(&[a, b], DecisionPath::Exhaustive).unwrap();
                    assert_eq!(x.holds(), y.holds(), "classes {a}, {b} of order {}", g.order());
                }
            }
        }
    }

    #[test]
    fn single_generators_and_trivial_group() {
        let c7 = group(7, &["(1 2 3 4 5 6 7)"]);
        let ctx = InvgenContext::new(&c7).unwrap();
        assert!(ctx.invariably_generates(&[p("(1 3 5 7 2 4 6)", 7)], DecisionPath::Exhaustive).unwrap().holds());
        assert!(ctx.invariably_generates(&[p("(1 3 5 7 2 4 6)", 7)], DecisionPath::Certificate).unwrap().holds());
        assert!(!ctx.invariably_generates(&[], DecisionPath::Exhaustive).unwrap().holds());
    }
}
