use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const PARTITION_CAP: usize = 10_000;

/// The partition numbers `p(0..=n)` by Euler's pentagonal recurrence
/// `p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
pub fn partition_counts(n: usize) -> Result<Vec<BigInt>> {
    if n > PARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "partition argument",
            value: n as u128,
            cap: PARTITION_CAP as u128,
        });
    }
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut total = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let mut term = p[m - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        p.push(total);
    }
    Ok(p)
}

pub fn partition_count(n: usize) -> Result<num_bigint::BigUint> {
    let all = partition_counts(n)?;
    Ok(all[n].to_biguint().expect("partition numbers are positive"))
}

/// Least prime `r` with `n/2 < r < n − 2`, or 5 when `n = 7`.
///
/// In `A_n` an element of order `r` is a single `r`-cycle, so all nontrivial
/// `r`-elements form at most one conjugacy class.
pub fn large_cycle_prime(n: u64) -> Result<u64> {
    if n < 7 {
        return Err(Error::InvalidArgument(format!("need n >= 7, got {n}")));
    }
    if n == 7 {
        return Ok(5);
    }
    let r = (n / 2 + 1..n - 2)
        .find(|&r| super::is_prime(r))
        .expect("Bertrand's postulate guarantees a prime in (n/2, n-2) for n >= 8");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn count_by_enumeration(n: usize, max_part: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n))
            .map(|part| count_by_enumeration(n - part, part))
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(partition_count(0).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(1).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(5).unwrap(), BigUint::from(7u32));
        assert_eq!(partition_count(10).unwrap(), BigUint::from(42u32));
        assert_eq!(
            partition_count(100).unwrap(),
            "190569292".parse::<BigUint>().unwrap()
        );
    }

    #[test]
    fn matches_enumeration() {
        let all = partition_counts(40).unwrap();
        for (n, p) in all.iter().enumerate() {
            assert_eq!(*p, BigInt::from(count_by_enumeration(n, n)), "p({n})");
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(partition_count(PARTITION_CAP + 1).is_err());
    }

    #[test]
    fn large_cycle_primes() {
        assert_eq!(large_cycle_prime(7).unwrap(), 5);
        assert_eq!(large_cycle_prime(14).unwrap(), 11);
        assert_eq!(large_cycle_prime(20).unwrap(), 11);
        assert!(large_cycle_prime(6).is_err());
        for n in 8..2000 {
            let r = large_cycle_prime(n).unwrap();
            assert!(2 * r > n && r + 2 < n);
        }
    }
}
