use serde::Serialize;

use super::primeset::PrimeSet;
use super::table::ClassTable;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Largest index `[L : A]` accepted by [`a_pi`].
pub const A_PI_INDEX_CAP: u128 = 10_000;
/// Largest `|L|` accepted by [`a_pi`] (elements are labelled by rank).
pub const A_PI_ORDER_CAP: u128 = 5_000_000;

/// `k_π(G)`: the number of classes of π-elements (the identity always counts).
pub fn k_pi(table: &ClassTable, pi: &PrimeSet) -> usize {
    table
        .classes()
        .iter()
        .filter(|c| pi.divides_only(c.order as u128))
        .count()
}

/// `a_π(L, A)`: the largest number, over cosets `lA`, of `A`-conjugacy classes
/// of π-elements inside `lA`.
///
/// Cosets are labelled by scanning `L` in rank order; within a coset the
/// π-elements are partitioned into orbits under conjugation by generators of `A`
/// (normality keeps each orbit inside its coset).
pub fn a_pi(l: &PermGroup, a: &PermGroup, pi: &PrimeSet) -> Result<usize> {
    if a.degree() != l.degree() {
        return Err(Error::DegreeMismatch {
            expected: l.degree(),
            found: a.degree(),
        });
    }
    if !a.is_subgroup_of(l) || !l.normalizes(a) {
        return Err(Error::NotNormal);
    }
    let index = l.order() / a.order();
    if index > A_PI_INDEX_CAP {
        return Err(Error::CapExceeded {
            what: "index [L:A]",
            value: index,
            cap: A_PI_INDEX_CAP,
        });
    }
    if l.order() > A_PI_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "a_pi group order",
            value: l.order(),
            cap: A_PI_ORDER_CAP,
        });
    }
    let n = l.order() as usize;
    let a_elems = a.enumerate_elements(A_PI_ORDER_CAP)?;
    let a_gens: Vec<_> = a.generators().iter().filter(|g| !g.is_identity()).collect();
    const NONE: u32 = u32::MAX;
    let mut coset = vec![NONE; n];
    let mut seen = vec![false; n];
    let mut best = 0;
    for start in 0..n {
        if coset[start] != NONE {
            continue;
        }
        let x = l.unrank(start as u64);
        let members: Vec<usize> = a_elems.iter().map(|y| l.rank(&x.mul(y)) as usize).collect();
        for &m in &members {
            coset[m] = start as u32;
        }
        let mut orbits = 0;
        for &m in &members {
            if seen[m] {
                continue;
            }
            let g = l.unrank(m as u64);
            if !pi.divides_only(g.order() as u128) {
                continue;
            }
            orbits += 1;
            seen[m] = true;
            let mut queue = vec![g];
            while let Some(y) = queue.pop() {
                for s in &a_gens {
                    let z = y.conjugate(s);
                    let r = l.rank(&z) as usize;
                    if !seen[r] {
                        seen[r] = true;
                        queue.push(z);
                    }
                }
            }
        }
        best = best.max(orbits);
    }
    Ok(best)
}

/// Outcome of maximizing `∏ k_{π_i}(S)` over set partitions of `π(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionProduct {
    pub best_product: u128,
    pub best_partition: Vec<Vec<u64>>,
    /// `⌊|S| / (2|Out S|)⌋`; an integer product is at most the rational bound
    /// exactly when it is at most this floor.
    pub bound: u128,
    pub pass: bool,
}

fn set_partitions(items: &[u64]) -> Vec<Vec<Vec<u64>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        // `first` in its own block, or added to any existing block
        let mut own = vec![vec![first]];
        own.extend(p.iter().cloned());
        out.push(own);
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
    }
    out
}

/// Maximizes `∏ k_{π_i}(S)` over all set partitions of `π(S)` and compares with
/// `|S| / (2·out_order)`. Simplicity of `S` is the caller's responsibility.
pub fn max_partition_product(table: &ClassTable, out_order: u64) -> Result<PartitionProduct> {
    let order = table.group().order();
    let primes = PrimeSet::of(order);
    if primes.len() > 7 {
        return Err(Error::CapExceeded {
            what: "number of prime divisors",
            value: primes.len() as u128,
            cap: 7,
        });
    }
    if out_order == 0 {
        return Err(Error::InvalidArgument("out_order must be positive".into()));
    }
    let bound = order / (2 * out_order as u128);
    let mut best: Option<(u128, Vec<Vec<u64>>)> = None;
    for mut partition in set_partitions(primes.primes()) {
        let product = partition
            .iter()
            .map(|block| {
                let pi = PrimeSet::new(block.clone()).expect("primes");
                k_pi(table, &pi) as u128
            })
            .product::<u128>();
        partition.sort();
        if best.as_ref().is_none_or(|(b, _)| product > *b) {
            best = Some((product, partition));
        }
    }
    let (best_product, best_partition) = best.expect("at least one partition");
    Ok(PartitionProduct {
        best_product,
        best_partition,
        bound,
        pass: best_product <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (k, &b) in bell.iter().enumerate() {
            let items: Vec<u64> = (0..k as u64).collect();
            assert_eq!(set_partitions(&items).len(), b);
        }
    }

    #[test]
    fn k_pi_examples() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let t = conjugacy_classes(&a5).unwrap();
        assert_eq!(k_pi(&t, &PrimeSet::empty()), 1);
        assert_eq!(k_pi(&t, &"2".parse().unwrap()), 2);
        assert_eq!(k_pi(&t, &"5".parse().unwrap()), 3);
        assert_eq!(k_pi(&t, &"2,3,5".parse().unwrap()), 5);
    }

    #[test]
    fn a_pi_examples() {
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(a_pi(&s5, &a5, &PrimeSet::empty()).unwrap(), 1);
        assert_eq!(a_pi(&s5, &a5, &"2".parse().unwrap()).unwrap(), 2);
        let a4 = group(5, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(a_pi(&s5, &a4, &PrimeSet::empty()), Err(Error::NotNormal));
    }

    #[test]
    fn a5_partition_product() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let t = conjugacy_classes(&a5).unwrap();
        let r = max_partition_product(&t, 2).unwrap();
        assert_eq!(r.best_product, 12);
        assert_eq!(r.best_partition, vec![vec![2], vec![3], vec![5]]);
        assert_eq!(r.bound, 15);
        assert!(r.pass);
    }
}
