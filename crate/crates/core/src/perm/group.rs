use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::chain::StabChain;
use super::permutation::{Permutation, MAX_DEGREE};
use crate::error::{Error, Result};

/// Largest group order accepted by [`PermGroup::new`].
///
/// Large enough for the alternating group of degree 13.
pub const MAX_ORDER: u128 = 10_000_000_000;

/// A permutation group with a certified stabilizer chain.
///
/// Immutable once built, so it can be shared freely between threads.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    /// Builds the group generated by `generators`.
    ///
    /// The list must be nonempty and all generators must share one degree;
    /// the trivial group is built from an identity permutation.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
        if degree > MAX_DEGREE {
            return Err(Error::CapExceeded {
                what: "degree",
                value: degree as u128,
                cap: MAX_DEGREE as u128,
            });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators);
        if chain.order() > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "group order",
                value: chain.order(),
                cap: MAX_ORDER,
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    /// Parses generators in cycle notation on `degree` points.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, Some(degree)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)]).expect("identity group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.chain.contains(p))
    }

    /// `contains` for callers that already know the degrees agree.
    pub fn has(&self, p: &Permutation) -> bool {
        self.chain.contains(p)
    }

    pub fn rank(&self, p: &Permutation) -> u64 {
        self.chain.rank(p)
    }

    pub fn unrank(&self, r: u64) -> Permutation {
        self.chain.unrank(r)
    }

    /// All elements, provided the order is at most `cap`.
    pub fn enumerate_elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        if self.order() > cap {
            return Err(Error::CapExceeded {
                what: "enumeration",
                value: self.order(),
                cap,
            });
        }
        Ok((0..self.order() as u64).map(|r| self.unrank(r)).collect())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    /// Equality as subsets of the symmetric group.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `true` when every generator of `self` normalizes `sub`.
    pub fn normalizes(&self, sub: &PermGroup) -> bool {
        self.generators.iter().all(|x| {
            sub.generators
                .iter()
                .all(|h| sub.has(&h.conjugate(x)))
        })
    }

    /// Subgroup generated by the given elements together with this group's generators.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(gens)
    }

    /// Conjugate subgroup `x^-1 G x`.
    pub fn conjugate_by(&self, x: &Permutation) -> PermGroup {
        PermGroup::new(self.generators.iter().map(|g| g.conjugate(x)).collect())
            .expect("conjugate of a valid group")
    }

    /// Orbits on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start as u32];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.image(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Uniformly random element.
    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Orbit of `x` under conjugation, found by breadth-first search.
    ///
    /// The search stops with an error after `cap` elements.
    pub fn conjugacy_orbit(&self, x: &Permutation, cap: usize) -> Result<Vec<Permutation>> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = y.conjugate(g);
                if seen.insert(z.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "orbit",
                            value: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    queue.push_back(z);
                }
            }
            out.push(y);
        }
        Ok(out)
    }

    /// Order of the subgroup generated by `elems` (no membership check).
    pub fn subgroup_order(degree: usize, elems: &[Permutation]) -> u128 {
        StabChain::new(degree, elems).order()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, gens [", self.order())?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Convenience: `PermGroup::new`.
pub fn build_group(generators: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(group(5, &["()"]).order(), 1);
        assert_eq!(group(5, &["(1 2 3 4 5)", "(1 2 3)"]).order(), 60);
        assert_eq!(group(4, &["(1 2)", "(1 2 3 4)"]).order(), 24);
    }

    #[test]
    fn build_errors() {
        assert_eq!(PermGroup::new(vec![]).unwrap_err(), Error::NoGenerators);
        let err = PermGroup::new(vec![Permutation::identity(3), Permutation::identity(4)]);
        assert!(matches!(err, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn contains_examples() {
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(a5.contains(&Permutation::identity(5)).unwrap());
        assert!(!a5.contains(&Permutation::parse("(1 2)", Some(5)).unwrap()).unwrap());
        assert!(a5
            .contains(&Permutation::parse("(1 2)(3 4)", Some(5)).unwrap())
            .unwrap());
        assert!(a5.contains(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let trivial = PermGroup::trivial(3);
        assert_eq!(
            trivial.enumerate_elements(10).unwrap(),
            vec![Permutation::identity(3)]
        );
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let elems = a4.enumerate_elements(100).unwrap();
        assert_eq!(elems.len(), 12);
        let distinct: HashSet<_> = elems.iter().collect();
        assert_eq!(distinct.len(), 12);
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(matches!(
            a5.enumerate_elements(30),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn orbits_and_conjugacy_orbit() {
        let g = group(6, &["(1 2 3)", "(4 5)"]);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let t = Permutation::parse("(1 2)", Some(4)).unwrap();
        assert_eq!(s4.conjugacy_orbit(&t, 100).unwrap().len(), 6);
    }
}
