use std::fmt;

use crate::error::{Error, Result};

/// Dense matrix over the prime field `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

impl GFMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        GFMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u32)
            .collect();
        Ok(GFMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &GFMatrix) -> GFMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = GFMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GFMatrix) -> GFMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn neg(&self) -> GFMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = (self.p - *x) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &GFMatrix) -> GFMatrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> GFMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut out = GFMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + a as u64 * self.get(i, j) as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[GFMatrix]) -> GFMatrix {
        let p = parts[0].p;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        GFMatrix { p, rows, cols, data }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[GFMatrix]) -> GFMatrix {
        let t: Vec<GFMatrix> = parts.iter().map(|m| m.transpose()).collect();
        GFMatrix::vstack(&t).transpose()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (GFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let v = (m.get(r, j) as u64 * inv % p) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + p - f * m.get(r, j) as u64 % p) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : M v = 0 }` (column vectors, returned as plain vectors).
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (self.p - r.get(row, free)) % self.p;
            }
            // scale so the leading entry is 1
            let lead = *v.iter().find(|&&x| x != 0).expect("basis vector is nonzero");
            let inv = inv_mod(lead, self.p) as u64;
            for x in v.iter_mut() {
                *x = (*x as u64 * inv % self.p as u64) as u32;
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<GFMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = GFMatrix::hstack(&[self.clone(), GFMatrix::identity(self.p, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::InvalidArgument("singular matrix".into()));
        }
        let mut inv = GFMatrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u128) -> GFMatrix {
        let mut result = GFMatrix::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }
}

impl fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(p: u32, rows: &[&[i64]]) -> GFMatrix {
        GFMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Enumerates every vector of F_p^n and keeps those in the kernel.
    fn kernel_by_enumeration(m: &GFMatrix) -> usize {
        let n = m.cols();
        let total = (m.p() as usize).pow(n as u32);
        let mut count = 0;
        for mut idx in 0..total {
            let mut v = vec![0u32; n];
            for x in v.iter_mut() {
                *x = (idx % m.p() as usize) as u32;
                idx /= m.p() as usize;
            }
            if m.transpose().apply_row(&v).iter().all(|&x| x == 0) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(GFMatrix::zero(3, 2, 2).nullspace().len(), 2);
        assert!(GFMatrix::identity(5, 3).nullspace().is_empty());
        let m = mat(3, &[&[1, 1], &[2, 2]]);
        let basis = m.nullspace();
        assert_eq!(basis, vec![vec![1, 2]]);
        assert_eq!(kernel_by_enumeration(&m), 3);
    }

    #[test]
    fn inverse_and_pow() {
        let m = mat(7, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), GFMatrix::identity(7, 2));
        assert!(mat(3, &[&[1, 1], &[2, 2]]).inverse().is_err());
        let rot = mat(2, &[&[0, 1], &[1, 1]]);
        assert_eq!(rot.pow(3), GFMatrix::identity(2, 2));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(GFMatrix::from_rows(4, &[vec![1]]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = GFMatrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..5, 1usize..5).prop_flat_map(
            |(p, r, c)| {
                prop::collection::vec(0..p as i64, r * c).prop_map(move |v| {
                    let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                    GFMatrix::from_rows(p, &rows).unwrap()
                })
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let basis = m.nullspace();
            prop_assert_eq!(m.rank() + basis.len(), m.cols());
            for v in &basis {
                prop_assert!(m.transpose().apply_row(v).iter().all(|&x| x == 0));
            }
            let expected = (m.p() as usize).pow(basis.len() as u32);
            prop_assert_eq!(kernel_by_enumeration(&m), expected);
        }
    }
}
