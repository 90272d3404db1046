use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Largest order for which classes are computed by partitioning the whole group.
pub const CLASS_TABLE_CAP: u128 = 10_000_000;

const UNSEEN: u32 = u32::MAX;

fn as_cycles<S: Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// A conjugacy class with its representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    #[serde(serialize_with = "as_cycles")]
    pub rep: Permutation,
    pub size: u128,
    pub order: u64,
    pub centralizer_order: u128,
}

#[derive(Clone, Debug)]
enum Lookup {
    /// `class_of[rank]` for every element, plus the member ranks of each class.
    Table {
        class_of: Vec<u32>,
        members: Vec<Vec<u32>>,
    },
    /// Natural alternating or symmetric group: classes keyed by cycle type and,
    /// for split alternating classes, the parity of a conjugating permutation.
    CycleType {
        by_type: HashMap<Vec<usize>, usize>,
        split: Vec<bool>,
    },
}

/// The conjugacy classes of a group, with a way to classify arbitrary elements.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group: PermGroup,
    classes: Vec<ConjClass>,
    lookup: Lookup,
}

/// Classes of `group`: by orbit partition up to [`CLASS_TABLE_CAP`], otherwise
/// by cycle types when `group` is the natural alternating or symmetric group.
pub fn conjugacy_classes(group: &PermGroup) -> Result<ClassTable> {
    if group.order() <= CLASS_TABLE_CAP {
        ClassTable::by_orbits(group)
    } else if natural_kind(group).is_some() {
        ClassTable::by_cycle_types(group)
    } else {
        Err(Error::CapExceeded {
            what: "class computation order",
            value: group.order(),
            cap: CLASS_TABLE_CAP,
        })
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `Some(true)` for the natural symmetric group, `Some(false)` for the natural
/// alternating group.
fn natural_kind(group: &PermGroup) -> Option<bool> {
    let n = group.degree();
    if n > 34 {
        return None;
    }
    let full = factorial(n);
    if group.order() == full {
        Some(true)
    } else if n >= 2 && group.order() * 2 == full {
        Some(false)
    } else {
        None
    }
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// Permutation with the given cycle type (descending parts) on consecutive points.
fn with_cycle_type(n: usize, parts: &[usize]) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut start = 0;
    for &len in parts {
        for k in 0..len {
            images[start + k] = (start + (k + 1) % len) as u32;
        }
        start += len;
    }
    Permutation::from_images(images).expect("valid cycles")
}

/// Size of the symmetric-group class with this cycle type.
fn symmetric_class_size(n: usize, parts: &[usize]) -> u128 {
    let mut denom: u128 = 1;
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
        denom *= p as u128;
    }
    for &m in counts.values() {
        denom *= factorial(m);
    }
    factorial(n) / denom
}

fn all_odd_distinct(parts: &[usize]) -> bool {
    parts.iter().all(|&p| p % 2 == 1) && parts.windows(2).all(|w| w[0] != w[1])
}

/// All cycles including fixed points, grouped by descending length.
fn cycles_by_length(p: &Permutation) -> Vec<Vec<u32>> {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start as u32;
        while !seen[x as usize] {
            seen[x as usize] = true;
            c.push(x);
            x = p.image(x);
        }
        out.push(c);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()));
    out
}

impl ClassTable {
    /// Partitions the group into conjugation orbits, indexed by element rank.
    pub fn by_orbits(group: &PermGroup) -> Result<Self> {
        let order = group.order();
        if order > CLASS_TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "class table order",
                value: order,
                cap: CLASS_TABLE_CAP,
            });
        }
        let n = order as usize;
        let mut class_of = vec![UNSEEN; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        let gens: Vec<&Permutation> = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .collect();
        for start in 0..n {
            if class_of[start] != UNSEEN {
                continue;
            }
            let c = members.len() as u32;
            class_of[start] = c;
            let mut orbit = vec![start as u32];
            let mut k = 0;
            while k < orbit.len() {
                let y = group.unrank(orbit[k] as u64);
                for s in &gens {
                    let r = group.rank(&y.conjugate(s)) as usize;
                    if class_of[r] == UNSEEN {
                        class_of[r] = c;
                        orbit.push(r as u32);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            members.push(orbit);
        }
        let raw: Vec<ConjClass> = members
            .iter()
            .map(|m| {
                let rep = group.unrank(m[0] as u64);
                let size = m.len() as u128;
                ConjClass {
                    order: rep.order(),
                    rep,
                    size,
                    centralizer_order: order / size,
                }
            })
            .collect();
        // canonical order: element order, then size, then smallest member rank
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&i| (raw[i].order, raw[i].size, members[i][0]));
        let mut new_index = vec![0u32; raw.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = new_index[*c as usize];
        }
        let classes = perm.iter().map(|&i| raw[i].clone()).collect();
        let mut members_sorted: Vec<Vec<u32>> = vec![Vec::new(); members.len()];
        for (old, m) in members.into_iter().enumerate() {
            members_sorted[new_index[old] as usize] = m;
        }
        Ok(ClassTable {
            group: group.clone(),
            classes,
            lookup: Lookup::Table {
                class_of,
                members: members_sorted,
            },
        })
    }

    /// Closed-form classes of the natural alternating or symmetric group.
    ///
    /// Symmetric classes are the cycle types; an even cycle type splits into two
    /// alternating classes exactly when its parts are odd and distinct.
    pub fn by_cycle_types(group: &PermGroup) -> Result<Self> {
        let symmetric = natural_kind(group).ok_or_else(|| {
            Error::InvalidArgument("not a natural alternating or symmetric group".into())
        })?;
        let n = group.degree();
        let order = group.order();
        let mut types = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut types);
        let mut classes = Vec::new();
        let mut split = Vec::new();
        let mut by_type = HashMap::new();
        let swap = if n >= 2 {
            Permutation::from_cycles(n, &[vec![0, 1]])?
        } else {
            Permutation::identity(n)
        };
        for parts in types {
            let even = parts.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0;
            if !symmetric && !even {
                continue;
            }
            let rep = with_cycle_type(n, &parts);
            let size = symmetric_class_size(n, &parts);
            by_type.insert(parts.clone(), classes.len());
            if !symmetric && all_odd_distinct(&parts) && n >= 2 {
                for r in [rep.clone(), rep.conjugate(&swap)] {
                    classes.push(ConjClass {
                        order: r.order(),
                        rep: r,
                        size: size / 2,
                        centralizer_order: order / (size / 2),
                    });
                    split.push(true);
                }
            } else {
                classes.push(ConjClass {
                    order: rep.order(),
                    rep,
                    size,
                    centralizer_order: order / size,
                });
                split.push(false);
            }
        }
        // canonical order as in the orbit path; remap the index
        let mut perm: Vec<usize> = (0..classes.len()).collect();
        perm.sort_by(|&a, &b| {
            (classes[a].order, classes[a].size)
                .cmp(&(classes[b].order, classes[b].size))
                .then(a.cmp(&b))
        });
        let mut new_index = vec![0usize; classes.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_classes: Vec<ConjClass> = perm.iter().map(|&i| classes[i].clone()).collect();
        let sorted_split: Vec<bool> = perm.iter().map(|&i| split[i]).collect();
        for v in by_type.values_mut() {
            *v = new_index[*v];
        }
        // pairs have equal (order, size) and consecutive old indices, so they
        // remain consecutive and in the same relative order after sorting
        debug_assert!(by_type.values().all(|&i| !sorted_split[i] || sorted_split[i + 1]));
        Ok(ClassTable {
            group: group.clone(),
            classes: sorted_classes,
            lookup: Lookup::CycleType {
                by_type,
                split: sorted_split,
            },
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `true` when every element has a stored class index (orbit path).
    pub fn has_element_table(&self) -> bool {
        matches!(self.lookup, Lookup::Table { .. })
    }

    /// Class index from an element rank (orbit path only).
    pub fn class_of_rank(&self, rank: u64) -> Option<usize> {
        match &self.lookup {
            Lookup::Table { class_of, .. } => Some(class_of[rank as usize] as usize),
            Lookup::CycleType { .. } => None,
        }
    }

    /// Ranks of the elements of class `c` (orbit path only).
    pub fn members(&self, c: usize) -> Option<&[u32]> {
        match &self.lookup {
            Lookup::Table { members, .. } => Some(&members[c]),
            Lookup::CycleType { .. } => None,
        }
    }

    /// Index of the class containing `g`.
    pub fn class_index(&self, g: &Permutation) -> Result<usize> {
        if !self.group.contains(g)? {
            return Err(Error::NotInGroup(g.to_string()));
        }
        match &self.lookup {
            Lookup::Table { class_of, .. } => Ok(class_of[self.group.rank(g) as usize] as usize),
            Lookup::CycleType { by_type, split } => {
                let c = by_type[&g.cycle_type()];
                if !split[c] {
                    return Ok(c);
                }
                // conjugator x with rep^x = g, matching cycles of equal length
                let rep = &self.classes[c].rep;
                let mut images = vec![0u32; g.degree()];
                for (rc, gc) in cycles_by_length(rep).iter().zip(cycles_by_length(g).iter()) {
                    for (&a, &b) in rc.iter().zip(gc) {
                        images[a as usize] = b;
                    }
                }
                let x = Permutation::from_images(images)?;
                debug_assert_eq!(&rep.conjugate(&x), g);
                Ok(if x.is_even() { c } else { c + 1 })
            }
        }
    }

    /// Sizes sum to the group order and each size times its centralizer order is `|G|`.
    pub fn is_consistent(&self) -> bool {
        let order = self.group.order();
        self.classes.iter().map(|c| c.size).sum::<u128>() == order
            && self
                .classes
                .iter()
                .all(|c| c.size * c.centralizer_order == order && order % c.size == 0)
    }

    /// JSON export: one object per class.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.classes).expect("classes serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    fn alternating(n: usize) -> PermGroup {
        let cycle = if n % 2 == 1 {
            format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        } else {
            format!("({})", (2..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
        };
        group(n, &["(1 2 3)", &cycle])
    }

    /// Brute-force orbit partition over an explicit element list.
    fn brute_class_sizes(g: &PermGroup) -> Vec<u128> {
        let elems = g.enumerate_elements(100_000).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut sizes = Vec::new();
        for x in &elems {
            if seen.contains(x) {
                continue;
            }
            let class: std::collections::HashSet<Permutation> =
                elems.iter().map(|y| x.conjugate(y)).collect();
            sizes.push(class.len() as u128);
            seen.extend(class);
        }
        sizes.sort_unstable();
        sizes
    }

    fn sorted_sizes(t: &ClassTable) -> Vec<u128> {
        let mut s: Vec<u128> = t.classes().iter().map(|c| c.size).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn trivial_and_a5() {
        let t = conjugacy_classes(&PermGroup::trivial(3)).unwrap();
        assert_eq!(t.len(), 1);
        let a5 = alternating(5);
        let t = conjugacy_classes(&a5).unwrap();
        assert_eq!(sorted_sizes(&t), vec![1, 12, 12, 15, 20]);
        assert!(t.is_consistent());
        let orders: Vec<u64> = t.classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
    }

    #[test]
    fn orbit_path_matches_brute_force() {
        for g in [
            group(4, &["(1 2)", "(1 2 3 4)"]),
            alternating(6),
            group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]), // Q8
            group(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]),
        ] {
            let t = conjugacy_classes(&g).unwrap();
            assert_eq!(sorted_sizes(&t), brute_class_sizes(&g));
        }
    }

    #[test]
    fn cycle_type_path_agrees_with_orbits() {
        for n in 5..=7 {
            let g = alternating(n);
            let a = ClassTable::by_orbits(&g).unwrap();
            let b = ClassTable::by_cycle_types(&g).unwrap();
            assert_eq!(a.len(), b.len());
            assert_eq!(sorted_sizes(&a), sorted_sizes(&b));
            // both paths classify every element identically up to relabelling
            let mut pairing = HashMap::new();
            for x in g.enumerate_elements(5040).unwrap() {
                let ia = a.class_index(&x).unwrap();
                let ib = b.class_index(&x).unwrap();
                assert_eq!(*pairing.entry(ia).or_insert(ib), ib);
            }
        }
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let b = ClassTable::by_cycle_types(&s5).unwrap();
        assert_eq!(b.len(), 7);
        assert!(b.is_consistent());
    }

    #[test]
    fn large_alternating_uses_cycle_types() {
        let a12 = alternating(12);
        let t = conjugacy_classes(&a12).unwrap();
        assert!(!t.has_element_table());
        assert!(t.is_consistent());
        let five: Permutation = Permutation::parse("(1 2 3 4 5)", Some(12)).unwrap();
        assert_eq!(t.classes()[t.class_index(&five).unwrap()].order, 5);
    }

    #[test]
    fn json_export() {
        let t = conjugacy_classes(&group(3, &["(1 2 3)", "(1 2)"])).unwrap();
        let v = t.to_json();
        assert_eq!(v[0]["rep"], "()");
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert!(v[1].get("centralizer_order").is_some());
    }
}
