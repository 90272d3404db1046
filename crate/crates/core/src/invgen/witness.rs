use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::perm::{PermGroup, Permutation};

fn cycles<S: Serializer>(v: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// A generating set together with the facts checked about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenWitness {
    #[serde(serialize_with = "cycles")]
    pub elements: Vec<Permutation>,
    pub orders: Vec<u64>,
    /// Orders pairwise coprime.
    pub coprime: bool,
    pub invariable: bool,
}

impl GenWitness {
    pub fn new(elements: Vec<Permutation>, invariable: bool) -> Self {
        let orders: Vec<u64> = elements.iter().map(|x| x.order()).collect();
        GenWitness {
            coprime: pairwise_coprime(&orders),
            orders,
            elements,
            invariable,
        }
    }
}

pub fn pairwise_coprime(orders: &[u64]) -> bool {
    orders
        .iter()
        .enumerate()
        .all(|(i, a)| orders[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// A proper subgroup containing a conjugate of every given element.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "group_gens")]
    pub subgroup: PermGroup,
    /// `conjugates[i]` is conjugate to the `i`-th element and lies in `subgroup`.
    #[serde(serialize_with = "cycles")]
    pub conjugates: Vec<Permutation>,
}

fn group_gens<S: Serializer>(g: &PermGroup, s: S) -> std::result::Result<S::Ok, S::Error> {
    cycles(g.generators(), s)
}

/// Outcome of an invariable-generation decision.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InvariableVerdict {
    Invariable,
    NotInvariable(Certificate),
}

impl InvariableVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, InvariableVerdict::Invariable)
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            InvariableVerdict::Invariable => None,
            InvariableVerdict::NotInvariable(c) => Some(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprimality() {
        assert!(pairwise_coprime(&[3, 5, 4]));
        assert!(!pairwise_coprime(&[6, 5, 4]));
        assert!(pairwise_coprime(&[]));
        let w = GenWitness::new(
            vec![
                Permutation::parse("(1 2 3)", Some(5)).unwrap(),
                Permutation::parse("(1 2 3 4 5)", None).unwrap(),
            ],
            true,
        );
        assert_eq!(w.orders, vec![3, 5]);
        assert!(w.coprime);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["elements"][1], "(1 2 3 4 5)");
    }
}
