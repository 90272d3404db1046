use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported number of points.
pub const MAX_DEGREE: usize = 10_000;

/// A permutation of `{0, .., degree - 1}` stored as its image array.
///
/// Products act on the right: `a.mul(&b)` applies `a` first, then `b`.
/// Cycle notation is 1-based on input and output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::CapExceeded {
                what: "degree",
                value: n as u128,
                cap: MAX_DEGREE as u128,
            });
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijective(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::NotBijective(format!(
                        "point {} outside degree {degree}",
                        a.max(b) + 1
                    )));
                }
                if touched[a as usize] {
                    return Err(Error::NotBijective(format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `(1,2,3)`.
    ///
    /// When `degree` is `None` the degree is the largest point mentioned.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut current: Option<Vec<u32>> = None;
        let mut number: Option<(usize, u64)> = None;
        let mut max_point = 0u64;

        let flush = |number: &mut Option<(usize, u64)>,
                     current: &mut Option<Vec<u32>>,
                     max_point: &mut u64|
         -> Result<()> {
            if let Some((col, value)) = number.take() {
                if value == 0 {
                    return Err(Error::Parse {
                        column: col,
                        message: "points are numbered from 1".into(),
                    });
                }
                if value > MAX_DEGREE as u64 {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("point {value} exceeds the degree cap"),
                    });
                }
                match current {
                    Some(c) => c.push((value - 1) as u32),
                    None => {
                        return Err(Error::Parse {
                            column: col,
                            message: "number outside of a cycle".into(),
                        })
                    }
                }
                *max_point = (*max_point).max(value);
            }
            Ok(())
        };

        for (col, ch) in text.chars().enumerate() {
            let col = col + 1;
            match ch {
                '(' => {
                    flush(&mut number, &mut current, &mut max_point)?;
                    if current.is_some() {
                        return Err(Error::Parse {
                            column: col,
                            message: "nested '('".into(),
                        });
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current, &mut max_point)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => {
                            return Err(Error::Parse {
                                column: col,
                                message: "unmatched ')'".into(),
                            })
                        }
                    }
                }
                '0'..='9' => {
                    let d = ch as u64 - '0' as u64;
                    number = Some(match number {
                        Some((c, v)) => (c, v.saturating_mul(10).saturating_add(d)),
                        None => (col, d),
                    });
                }
                ',' => flush(&mut number, &mut current, &mut max_point)?,
                c if c.is_whitespace() => flush(&mut number, &mut current, &mut max_point)?,
                other => {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
        if current.is_some() {
            return Err(Error::Parse {
                column: text.chars().count() + 1,
                message: "unterminated cycle".into(),
            });
        }
        let degree = match degree {
            Some(d) => {
                if (max_point as usize) > d {
                    return Err(Error::Parse {
                        column: 1,
                        message: format!("point {max_point} exceeds degree {d}"),
                    });
                }
                d
            }
            None => (max_point as usize).max(1),
        };
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    #[inline]
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(self.mul(other))
    }

    /// In-place `self = self * other`.
    #[inline]
    pub(crate) fn mul_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result.mul_assign(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        result
    }

    /// `x^-1 * self * x`; relabels every cycle of `self` through `x`.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), x.degree());
        let mut images = vec![0u32; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            images[x.images[i] as usize] = x.images[y as usize];
        }
        Permutation { images }
    }

    pub fn try_conjugate(&self, x: &Permutation) -> Result<Permutation> {
        self.check_degree(x)?;
        Ok(self.conjugate(x))
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// All cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| acc.lcm(&(len as u64)))
    }

    pub fn is_even(&self) -> bool {
        let ct = self.cycle_type();
        ct.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.moved_points().next()
    }

    /// Restriction to the invariant block `offset .. offset + len`, relabelled from 0.
    pub fn restrict(&self, offset: usize, len: usize) -> Result<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in offset..offset + len {
            let y = self.images[i] as usize;
            if y < offset || y >= offset + len {
                return Err(Error::InvalidArgument(format!(
                    "points {}..{} are not invariant",
                    offset + 1,
                    offset + len
                )));
            }
            images.push((y - offset) as u32);
        }
        Ok(Permutation { images })
    }

    /// Places the permutations side by side on disjoint point blocks.
    pub fn direct_sum(parts: &[&Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0u32;
        for p in parts {
            images.extend(p.images.iter().map(|&x| x + offset));
            offset += p.degree() as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let x = p("(1 2 3)(4 5)", 5);
        assert_eq!(x.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p(" ( 3 1 2 ) ", 3).to_string(), "(1 2 3)");
        assert_eq!(p("(1,2)(3,4)", 4).to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p("()", 4), Permutation::identity(4));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::parse("(1 2", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Permutation::parse("(0 1)", None),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Permutation::parse("(1 2)(2 3)", None),
            Err(Error::NotBijective(_))
        ));
        assert!(matches!(
            Permutation::parse("(1 7)", Some(5)),
            Err(Error::Parse { .. })
        ));
        assert!(Permutation::parse("(1 x)", None).is_err());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p("(1 2 3 4 5)", 5).order(), 5);
        assert_eq!(p("(1 2)(3 4 5)", 5).order(), 6);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = p("(1 2 3)", 3);
        let t = p("(1 2)", 3);
        // direct composition oracle: t^-1 * x * t
        let direct = t.inverse().mul(&x).mul(&t);
        assert_eq!(x.conjugate(&t), direct);
        assert_eq!(x.conjugate(&t).to_string(), "(1 3 2)");
        assert_eq!(x.conjugate(&Permutation::identity(3)), x);
    }

    #[test]
    fn mismatched_degrees_are_errors() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(a.try_conjugate(&b).is_err());
    }

    #[test]
    fn powers_and_inverse() {
        let x = p("(1 2 3 4 5 6)", 6);
        assert_eq!(x.pow(6), Permutation::identity(6));
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.pow(2).order(), 3);
        assert!(x.mul(&x.inverse()).is_identity());
    }

    #[test]
    fn restriction_and_sum() {
        let a = p("(1 2)", 3);
        let b = p("(2 3)", 3);
        let s = Permutation::direct_sum(&[&a, &b]);
        assert_eq!(s.to_string(), "(1 2)(5 6)");
        assert_eq!(s.restrict(3, 3).unwrap(), b);
        assert!(p("(1 4)", 6).restrict(0, 3).is_err());
    }
}
