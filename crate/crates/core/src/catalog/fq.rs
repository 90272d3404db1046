use crate::arith::{is_prime, prime_divisors};
use crate::error::{Error, Result};

/// A small finite field `F_q` with full addition and multiplication tables.
///
/// Elements are `0..q`, read as base-`p` coefficient vectors of polynomials in
/// a primitive element `x` (so for `e > 1` the element `p` is `x`).
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    e: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

/// Largest field size handled by [`SmallField`].
pub const SMALL_FIELD_CAP: u32 = 1 << 10;

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two polynomials modulo the monic `modulus` (low degree first,
/// leading coefficient omitted).
fn poly_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len();
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e ≡ −(modulus)
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[k - e + i] = (prod[k - e + i] + (p - m) * c) % p;
        }
    }
    prod.truncate(e);
    prod
}

impl SmallField {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || q > SMALL_FIELD_CAP {
            return Err(Error::InvalidArgument(format!("field size {q} out of range")));
        }
        let ps = prime_divisors(q as u128);
        if ps.len() != 1 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let p = ps[0] as u32;
        let e = (q as f64).log(p as f64).round() as u32;
        debug_assert!(is_prime(p as u64) && p.pow(e) == q);
        let n = q as usize;
        let mut add = vec![0u32; n * n];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let s: Vec<u32> = da.iter().zip(digits(b, p, e)).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = undigits(&s, p);
            }
        }
        let order_divisors: Vec<u32> = prime_divisors((q - 1) as u128).iter().map(|&r| (q - 1) / r as u32).collect();
        let has_full_order = |mul: &[u32], g: u32| -> bool {
            let pow = |k: u32| (0..k).fold(1u32, |acc, _| mul[acc as usize * n + g as usize]);
            g != 0 && pow(q - 1) == 1 && order_divisors.iter().all(|&d| pow(d) != 1)
        };
        // For e > 1 search moduli until x itself has order q − 1, which forces
        // the modulus to be irreducible.
        let candidates: Box<dyn Iterator<Item = Vec<u32>>> = if e == 1 {
            Box::new(std::iter::once(vec![0]))
        } else {
            Box::new((0..q).map(move |m| digits(m, p, e)).filter(|m| m[0] != 0))
        };
        for modulus in candidates {
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                let da = digits(a, p, e);
                for b in 0..q {
                    mul[a as usize * n + b as usize] = if e == 1 {
                        (a * b) % p
                    } else {
                        undigits(&poly_mul(&da, &digits(b, p, e), &modulus, p), p)
                    };
                }
            }
            let primitive = if e == 1 {
                (1..q).find(|&g| has_full_order(&mul, g))
            } else if has_full_order(&mul, p) {
                Some(p)
            } else {
                None
            };
            if let Some(primitive) = primitive {
                let neg = (0..q)
                    .map(|a| (0..q).find(|&b| add[a as usize * n + b as usize] == 0).expect("additive inverse"))
                    .collect();
                let inv = (0..q)
                    .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a as usize * n + b as usize] == 1).expect("unit") })
                    .collect();
                return Ok(SmallField { p, e, q, add, mul, neg, inv, primitive });
            }
        }
        unreachable!("a primitive polynomial exists for every field size")
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0) = 0`.
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// The Frobenius map `a ↦ a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = SmallField::new(q).unwrap();
            assert_eq!(f.pow(f.primitive(), (q - 1) as u64), 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [1, q - 1, q / 2] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // the powers of the primitive element are exactly the units
            let mut seen: Vec<u32> = (0..q - 1).map(|k| f.pow(f.primitive(), k as u64)).collect();
            seen.sort_unstable();
            assert_eq!(seen, (1..q).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::new(1).is_err());
    }
}
