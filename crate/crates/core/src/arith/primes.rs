use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on big integers. Exact below 3.3·10^24 (first twelve prime
/// bases); beyond that the error probability is below 4^-12 per composite.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u128) -> Vec<u128> {
    factorize_u128(n).into_iter().map(|(p, _)| p).collect()
}

/// Prime factorization of a machine integer, ascending.
pub fn factorize_u128(n: u128) -> Vec<(u128, u32)> {
    factorize(&BigUint::from(n), DEFAULT_BUDGET)
        .expect("128-bit inputs factor well within budget")
        .into_iter()
        .map(|(p, k)| (p.to_u128().expect("factor fits"), k))
        .collect()
}

/// Pollard-rho iteration budget per call of [`factorize`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Prime factorization by trial division, Miller–Rabin and Pollard rho (Brent).
///
/// Gives up with [`Error::FactoringTimeout`] once `budget` rho iterations are spent.
pub fn factorize(n: &BigUint, budget: u64) -> Result<Vec<(BigUint, u32)>> {
    let mut factors: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut d = 2u64;
    while d < 10_000 {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % d).is_zero() {
            factors.push(dd.clone());
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut spent = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            factors.push(m);
            continue;
        }
        let f = rho(&m, &mut rng, budget, &mut spent)
            .ok_or_else(|| Error::FactoringTimeout(n.to_string()))?;
        stack.push(&m / &f);
        stack.push(f);
    }
    factors.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((p, k)) if *p == f => *k += 1,
            _ => out.push((f, 1)),
        }
    }
    Ok(out)
}

/// One nontrivial factor of the composite `n`.
fn rho(n: &BigUint, rng: &mut ChaCha8Rng, budget: u64, spent: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&one, n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += BATCH;
                *spent += BATCH;
                if *spent > budget {
                    return None;
                }
            }
            r *= 2;
        }
        if &g == n {
            // backtrack one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1` required).
pub fn multiplicative_order(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    if m.is_one() {
        return Ok(BigUint::one());
    }
    if !a.gcd(m).is_one() {
        return Err(Error::InvalidArgument(format!("{a} is not a unit mod {m}")));
    }
    // order divides phi(m)
    let mut phi = BigUint::one();
    for (p, k) in factorize(m, DEFAULT_BUDGET)? {
        phi *= (&p - 1u32) * p.pow(k - 1);
    }
    let mut order = phi.clone();
    for (r, k) in factorize(&phi, DEFAULT_BUDGET)? {
        for _ in 0..k {
            let smaller = &order / &r;
            if a.modpow(&smaller, m).is_one() {
                order = smaller;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Value of the `n`-th cyclotomic polynomial at `q`.
pub fn cyclotomic_value(n: u32, q: &BigUint) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let term = q.pow(d) - 1u32;
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Primitive prime divisors of `q^n - 1`: primes `r` with `ord_r(q) = n`.
///
/// They are the prime factors of `Φ_n(q)` that do not divide `n`; each one is
/// re-checked directly.
pub fn zsigmondy(q: u64, n: u32) -> Result<Vec<BigUint>> {
    if q < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "zsigmondy needs q >= 2 and n >= 2, got q = {q}, n = {n}"
        )));
    }
    let qb = BigUint::from(q);
    let mut phi = cyclotomic_value(n, &qb);
    let n_primes = prime_divisors(n as u128);
    for &l in &n_primes {
        let l = l as u64;
        while (&phi % l).is_zero() {
            phi /= l;
        }
    }
    let mut out = Vec::new();
    let target = BigUint::from(n);
    for (r, _) in factorize(&phi, DEFAULT_BUDGET)? {
        if (&qb % &r).is_zero() {
            continue;
        }
        let exact = qb.modpow(&target, &r).is_one()
            && n_primes
                .iter()
                .all(|&l| !qb.modpow(&BigUint::from(n / l as u32), &r).is_one());
        if exact {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(n: usize) -> Vec<bool> {
        let mut is = vec![true; n + 1];
        is[0] = false;
        is[1] = false;
        let mut i = 2;
        while i * i <= n {
            if is[i] {
                let mut j = i * i;
                while j <= n {
                    is[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn primality_matches_sieve() {
        let s = sieve(20_000);
        for n in 0..=20_000u64 {
            assert_eq!(is_prime(n), s[n as usize], "{n}");
            assert_eq!(is_prime_big(&BigUint::from(n)), s[n as usize]);
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1u128, 2, 360, 16383, 1_000_000_007 * 998_244_353, (1 << 61) - 1] {
            let f = factorize_u128(n);
            let prod: u128 = f.iter().map(|&(p, k)| p.pow(k)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p as u64)));
        }
        assert_eq!(factorize_u128(16383), vec![(3, 1), (43, 1), (127, 1)]);
    }

    #[test]
    fn factors_large_semiprime() {
        let a = BigUint::from(4_294_967_311u64); // prime
        let b = BigUint::from(4_294_967_357u64); // prime
        let f = factorize(&(&a * &b), DEFAULT_BUDGET).unwrap();
        assert_eq!(f, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn zsigmondy_examples() {
        assert!(zsigmondy(2, 6).unwrap().is_empty());
        assert_eq!(zsigmondy(2, 14).unwrap(), vec![BigUint::from(43u32)]);
        assert!(zsigmondy(3, 2).unwrap().is_empty());
        assert_eq!(zsigmondy(2, 7).unwrap(), vec![BigUint::from(127u32)]);
    }

    #[test]
    fn zsigmondy_matches_order_scan() {
        for q in 2u64..8 {
            for n in 2u32..13 {
                let value = q.pow(n) - 1;
                // trial division oracle
                let mut factors = Vec::new();
                let mut rest = value;
                let mut d = 2;
                while d * d <= rest {
                    if rest % d == 0 {
                        factors.push(d);
                        while rest % d == 0 {
                            rest /= d;
                        }
                    }
                    d += 1;
                }
                if rest > 1 {
                    factors.push(rest);
                }
                let expected: Vec<BigUint> = factors
                    .into_iter()
                    .filter(|&r| q % r != 0)
                    .filter(|&r| (1..=n).find(|&k| pow_mod(q, k as u64, r) == 1) == Some(n))
                    .map(BigUint::from)
                    .collect();
                assert_eq!(zsigmondy(q, n).unwrap(), expected, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn cyclotomic_small_values() {
        let two = BigUint::from(2u32);
        assert_eq!(cyclotomic_value(1, &two), BigUint::from(1u32));
        assert_eq!(cyclotomic_value(6, &two), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(12, &two), BigUint::from(13u32));
    }
}
