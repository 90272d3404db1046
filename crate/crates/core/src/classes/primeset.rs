use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// A finite set of primes `π`, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{bad} is not prime")));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn empty() -> Self {
        PrimeSet::default()
    }

    pub fn single(p: u64) -> Result<Self> {
        Self::new(vec![p])
    }

    /// `π(n)`: the prime divisors of `n`.
    pub fn of(n: u128) -> Self {
        PrimeSet {
            primes: prime_divisors(n).into_iter().map(|p| p as u64).collect(),
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    pub fn without(&self, p: u64) -> PrimeSet {
        PrimeSet {
            primes: self.primes.iter().copied().filter(|&x| x != p).collect(),
        }
    }

    /// `true` when every prime factor of `n` lies in the set.
    pub fn divides_only(&self, mut n: u128) -> bool {
        for &p in &self.primes {
            while n % p as u128 == 0 {
                n /= p as u128;
            }
        }
        n == 1
    }

    /// All subsets, in binary-counter order (the empty set first).
    pub fn subsets(&self) -> Vec<PrimeSet> {
        let k = self.primes.len();
        (0..1usize << k)
            .map(|mask| PrimeSet {
                primes: (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.primes[i])
                    .collect(),
            })
            .collect()
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Parses `"2,3,5"`; the empty string and `"{}"` give the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let primes = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad prime `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// `|n|_π`: the largest divisor of `n` whose prime factors all lie in `pi`.
pub fn pi_part(n: u128, pi: &PrimeSet) -> u128 {
    let mut part = 1;
    let mut rest = n;
    for &p in pi.primes() {
        let p = p as u128;
        while rest % p == 0 {
            rest /= p;
            part *= p;
        }
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_parts() {
        let two_three: PrimeSet = "2,3".parse().unwrap();
        assert_eq!(pi_part(360, &two_three), 72);
        assert_eq!(pi_part(360, &PrimeSet::empty()), 1);
        assert_eq!(pi_part(20160, &PrimeSet::single(2).unwrap()), 64);
    }

    #[test]
    fn parsing_and_display() {
        let s: PrimeSet = "{5, 2,3,2}".parse().unwrap();
        assert_eq!(s.primes(), &[2, 3, 5]);
        assert_eq!(s.to_string(), "{2,3,5}");
        assert!("4".parse::<PrimeSet>().is_err());
        assert!("".parse::<PrimeSet>().unwrap().is_empty());
    }

    #[test]
    fn subsets_and_membership() {
        let s = PrimeSet::of(60);
        assert_eq!(s.primes(), &[2, 3, 5]);
        assert_eq!(s.subsets().len(), 8);
        assert!(s.divides_only(30));
        assert!(!s.divides_only(14));
        assert!(PrimeSet::empty().divides_only(1));
    }
}
