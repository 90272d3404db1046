use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, StabChain};

/// Accepted samples per shard; shard `i` uses its own seed derived from `(seed, i)`.
const SHARD: u64 = 4096;
/// Draws allowed per requested sample before giving up on the quotient condition.
const MAX_DRAWS_PER_SAMPLE: u64 = 100;
/// Largest `|L|^d` enumerated by [`exact_pla`].
pub const EXACT_PLA_CAP: u128 = 50_000_000;

/// Monte Carlo estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub accepted: u64,
    pub generating: u64,
    pub draws: u64,
}

fn shard_seed(seed: u64, shard: u64) -> u64 {
    // splitmix64 step, so neighbouring shards get unrelated streams
    let mut z = seed ^ shard.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn check(l: &PermGroup, a: &PermGroup) -> Result<()> {
    if !a.is_subgroup_of(l) || !l.normalizes(a) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

/// Conditional probability that `d` random elements of `l` generate `l`,
/// given that they generate `l` modulo `a`, by rejection sampling.
/// Deterministic for a fixed seed regardless of thread count.
pub fn estimate_pla(l: &PermGroup, a: &PermGroup, d: usize, samples: u64, seed: u64) -> Result<PlaEstimate> {
    check(l, a)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let n = l.order();
    let shards = samples.div_ceil(SHARD);
    let results: Vec<(u64, u64, u64)> = (0..shards)
        .into_par_iter()
        .map(|i| {
            let want = SHARD.min(samples - i * SHARD);
            let mut rng = ChaCha8Rng::seed_from_u64(shard_seed(seed, i));
            let (mut accepted, mut good, mut draws) = (0u64, 0u64, 0u64);
            while accepted < want && draws < want * MAX_DRAWS_PER_SAMPLE {
                draws += 1;
                let tuple: Vec<Permutation> = (0..d).map(|_| l.random_element(&mut rng)).collect();
                let mut with_socle = tuple.clone();
                with_socle.extend(a.generators().iter().cloned());
                if !StabChain::reaches_order(l.degree(), &with_socle, n) {
                    continue;
                }
                accepted += 1;
                if StabChain::reaches_order(l.degree(), &tuple, n) {
                    good += 1;
                }
            }
            (accepted, good, draws)
        })
        .collect();
    let (accepted, generating, draws) = results
        .iter()
        .fold((0, 0, 0), |acc, r| (acc.0 + r.0, acc.1 + r.1, acc.2 + r.2));
    if accepted == 0 {
        return Err(Error::NoAcceptedSamples);
    }
    let p = generating as f64 / accepted as f64;
    Ok(PlaEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / accepted as f64).sqrt(),
        accepted,
        generating,
        draws,
    })
}

/// The same probability by enumerating all `d`-tuples: `(generating, accepted)`.
pub fn exact_pla(l: &PermGroup, a: &PermGroup, d: usize) -> Result<(u128, u128)> {
    check(l, a)?;
    let n = l.order();
    let total = n
        .checked_pow(d as u32)
        .filter(|&t| t <= EXACT_PLA_CAP)
        .ok_or(Error::CapExceeded {
            what: "tuples enumerated",
            value: u128::MAX,
            cap: EXACT_PLA_CAP,
        })?;
    let elems = l.enumerate_elements(EXACT_PLA_CAP)?;
    let (mut accepted, mut good) = (0u128, 0u128);
    for code in 0..total {
        let mut c = code;
        let tuple: Vec<Permutation> = (0..d)
            .map(|_| {
                let x = elems[(c % n) as usize].clone();
                c /= n;
                x
            })
            .collect();
        let mut with_socle = tuple.clone();
        with_socle.extend(a.generators().iter().cloned());
        if StabChain::reaches_order(l.degree(), &with_socle, n) {
            accepted += 1;
            if StabChain::reaches_order(l.degree(), &tuple, n) {
                good += 1;
            }
        }
    }
    Ok((good, accepted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_pairs_exact_and_sampled() {
        let a5 = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
        let (good, total) = exact_pla(&a5, &a5, 2).unwrap();
        assert_eq!((good, total), (2280, 3600)); // 19/30
        let e = estimate_pla(&a5, &a5, 2, 20_000, 7).unwrap();
        assert!((e.estimate - 19.0 / 30.0).abs() <= 3.0 * e.stderr + 1e-9);
        assert_eq!(e, estimate_pla(&a5, &a5, 2, 20_000, 7).unwrap());
    }

    #[test]
    fn saturates_for_many_elements() {
        let s4 = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let v4 = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        let e = estimate_pla(&s4, &v4, 8, 5_000, 1).unwrap();
        assert!(e.estimate > 0.99);
        assert!(estimate_pla(&s4, &PermGroup::from_cycle_strings(4, &["(1 2)"]).unwrap(), 2, 10, 1).is_err());
    }
}
