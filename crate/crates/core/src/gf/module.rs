use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::GFMatrix;
use crate::arith::{factorize_u128, is_prime};
use crate::error::{Error, Result};

/// Largest module size `p^dim` for which irreducibility is checked by spinning.
const SPIN_CAP: u128 = 1 << 20;

/// An `F_p`-module `A = F_p^dim` with one matrix per generator of the acting group.
///
/// Matrices act on row vectors from the right, matching the right action of
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    p: u32,
    dim: usize,
    actors: Vec<GFMatrix>,
}

/// The field `End_H(A)` for an irreducible module, with `A` as a vector space over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndomorphismField {
    /// Field size `q = p^degree`.
    pub size: u128,
    /// Degree of the field over `F_p`.
    pub degree: usize,
    /// `dim_{End}(A)`.
    pub dim: usize,
}

impl ModuleAction {
    pub fn new(p: u32, dim: usize, actors: Vec<GFMatrix>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if actors.is_empty() {
            return Err(Error::InvalidArgument("module needs at least one actor".into()));
        }
        for m in &actors {
            if m.p() != p || m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidArgument(format!(
                    "actor {m:?} is not a {dim}x{dim} matrix over F_{p}"
                )));
            }
            if !m.is_invertible() {
                return Err(Error::InvalidArgument(format!("actor {m:?} is singular")));
            }
        }
        Ok(ModuleAction { p, dim, actors })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actors(&self) -> &[GFMatrix] {
        &self.actors
    }

    /// Dimension of the common fixed space `C_A(H)`.
    pub fn fixed_subspace(&self) -> usize {
        let id = GFMatrix::identity(self.p, self.dim);
        let blocks: Vec<GFMatrix> = self
            .actors
            .iter()
            .map(|m| m.sub(&id).transpose())
            .collect();
        GFMatrix::vstack(&blocks).nullspace().len()
    }

    pub fn is_trivial(&self) -> bool {
        self.fixed_subspace() == self.dim
    }

    /// Span of the orbit of `v` under the actors, as an echelon basis size.
    fn spin(&self, v: &[u32]) -> usize {
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut queue = vec![v.to_vec()];
        while let Some(w) = queue.pop() {
            if let Some(reduced) = reduce_against(&basis, &w, self.p) {
                basis.push(reduced.clone());
                for m in &self.actors {
                    queue.push(m.apply_row(&reduced));
                }
                if basis.len() == self.dim {
                    break;
                }
            }
        }
        basis.len()
    }

    /// `true` when no proper nonzero subspace is invariant.
    ///
    /// Every nonzero vector (up to scalars) is spun; the module size is capped.
    pub fn is_irreducible(&self) -> Result<bool> {
        let size = (self.p as u128).pow(self.dim as u32);
        if size > SPIN_CAP {
            return Err(Error::CapExceeded {
                what: "module size",
                value: size,
                cap: SPIN_CAP,
            });
        }
        let p = self.p as u128;
        for idx in 1..size {
            let mut v = vec![0u32; self.dim];
            let mut x = idx;
            for c in v.iter_mut() {
                *c = (x % p) as u32;
                x /= p;
            }
            // only vectors whose leading entry is 1
            if v.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            if self.spin(&v) < self.dim {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the commutant `{X : X M = M X for every actor M}`.
    pub fn commutant(&self) -> Vec<GFMatrix> {
        let d = self.dim;
        let p = self.p;
        let mut eqs = GFMatrix::zero(p, self.actors.len() * d * d, d * d);
        for (a, m) in self.actors.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    let row = a * d * d + r * d + c;
                    // (X M)[r][c] - (M X)[r][c]
                    for k in 0..d {
                        let xi = r * d + k;
                        let v = (eqs.get(row, xi) + m.get(k, c)) % p;
                        eqs.set(row, xi, v);
                        let xj = k * d + c;
                        let v = (eqs.get(row, xj) + p - m.get(r, k)) % p;
                        eqs.set(row, xj, v);
                    }
                }
            }
        }
        eqs.nullspace()
            .into_iter()
            .map(|v| {
                let rows: Vec<Vec<i64>> = v
                    .chunks(d)
                    .map(|r| r.iter().map(|&x| x as i64).collect())
                    .collect();
                GFMatrix::from_rows(p, &rows).expect("prime modulus")
            })
            .collect()
    }

    /// `End_H(A)` for an irreducible module: its size `q` and `dim_{End}(A)`.
    ///
    /// The commutant of an irreducible module is a finite field. This is
    /// confirmed by exhibiting an element of multiplicative order `q - 1`,
    /// found by seeded random sampling of the commutant.
    pub fn endomorphism_field(&self) -> Result<EndomorphismField> {
        if !self.is_irreducible()? {
            return Err(Error::Reducible);
        }
        let basis = self.commutant();
        let e = basis.len();
        if e == 0 || self.dim % e != 0 {
            return Err(Error::Reducible);
        }
        let q = (self.p as u128).pow(e as u32);
        if q > 2 {
            let unit_order = q - 1;
            let primes: Vec<u128> = factorize_u128(unit_order)
                .into_iter()
                .map(|(r, _)| r)
                .collect();
            let id = GFMatrix::identity(self.p, self.dim);
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let mut found = false;
            for _ in 0..500 {
                let mut x = GFMatrix::zero(self.p, self.dim, self.dim);
                for b in &basis {
                    let c = rng.gen_range(0..self.p);
                    x = x.add(&b.scale(c));
                }
                if x.is_zero() || x.pow(unit_order) != id {
                    continue;
                }
                if primes.iter().all(|&r| x.pow(unit_order / r) != id) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Reducible);
            }
        }
        Ok(EndomorphismField {
            size: q,
            degree: e,
            dim: self.dim / e,
        })
    }
}

/// Reduces `w` against the basis built so far; returns the normalized remainder if nonzero.
fn reduce_against(basis: &[Vec<u32>], w: &[u32], p: u32) -> Option<Vec<u32>> {
    let mut w = w.to_vec();
    let p64 = p as u64;
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).expect("nonzero basis vector");
        let c = w[lead] as u64;
        if c == 0 {
            continue;
        }
        for (x, &y) in w.iter_mut().zip(b) {
            *x = ((*x as u64 + p64 - c * y as u64 % p64) % p64) as u32;
        }
    }
    let lead = w.iter().position(|&x| x != 0)?;
    let inv = super::matrix::inv_mod(w[lead], p) as u64;
    for x in w.iter_mut() {
        *x = (*x as u64 * inv % p64) as u32;
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn scalar_c6_on_f7() -> ModuleAction {
        // 3 has multiplicative order 6 mod 7
        ModuleAction::new(7, 1, vec![GFMatrix::from_rows(7, &[vec![3]]).unwrap()]).unwrap()
    }

    #[test]
    fn scalar_module() {
        let m = scalar_c6_on_f7();
        assert_eq!(m.fixed_subspace(), 0);
        let f = m.endomorphism_field().unwrap();
        assert_eq!((f.size, f.dim), (7, 1));
    }

    #[test]
    fn trivial_module_is_fixed() {
        let m = ModuleAction::new(3, 2, vec![GFMatrix::identity(3, 2)]).unwrap();
        assert_eq!(m.fixed_subspace(), 2);
        assert!(m.is_trivial());
        assert!(!m.is_irreducible().unwrap());
        assert_eq!(m.endomorphism_field(), Err(Error::Reducible));
    }

    #[test]
    fn full_linear_group_has_scalar_commutant() {
        // GL_2(3) is generated by these two matrices
        let a = GFMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = GFMatrix::from_rows(3, &[vec![0, 1], vec![2, 0]]).unwrap();
        let c = GFMatrix::from_rows(3, &[vec![2, 0], vec![0, 1]]).unwrap();
        let m = ModuleAction::new(3, 2, vec![a, b, c]).unwrap();
        let comm = m.commutant();
        assert_eq!(comm.len(), 1);
        assert_eq!(comm[0], GFMatrix::identity(3, 2));
        let f = m.endomorphism_field().unwrap();
        assert_eq!((f.size, f.dim), (3, 2));
    }

    #[test]
    fn rejects_bad_actors() {
        let singular = GFMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(ModuleAction::new(2, 2, vec![singular]).is_err());
        assert!(ModuleAction::new(2, 2, vec![]).is_err());
        assert!(ModuleAction::new(4, 1, vec![GFMatrix::identity(2, 1)]).is_err());
    }
}
