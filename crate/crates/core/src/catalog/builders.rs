use std::collections::HashMap;

use super::fq::SmallField;
use crate::arith::is_prime;
use crate::crowns::CrownSpec;
use crate::error::{Error, Result};
use crate::gf::Presentation;
use crate::perm::{PermGroup, Permutation};
use crate::structure::{recognize_monolithic, MonolithicData};

/// A monolithic group with a presentation of its quotient by the socle, on the
/// images of `data.quotient_lifts`.
#[derive(Clone, Debug)]
pub struct MonolithicFixture {
    pub data: MonolithicData,
    pub presentation: Presentation,
}

fn cycle_string(points: impl Iterator<Item = usize>) -> String {
    let body: Vec<String> = points.map(|i| i.to_string()).collect();
    format!("({})", body.join(" "))
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    PermGroup::from_cycle_strings(n, &[&cycle_string(1..=n)])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    PermGroup::from_cycle_strings(n, &["(1 2)", &cycle_string(1..=n)])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let long = if n % 2 == 1 { cycle_string(1..=n) } else { cycle_string(2..=n) };
    PermGroup::from_cycle_strings(n, &["(1 2 3)", &long])
}

type Matrix = Vec<Vec<u32>>;

fn vec_mat(f: &SmallField, v: &[u32], m: &Matrix) -> Vec<u32> {
    (0..v.len())
        .map(|j| (0..v.len()).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i][j]))))
        .collect()
}

fn normalize(f: &SmallField, v: &mut [u32]) {
    if let Some(&lead) = v.iter().find(|&&c| c != 0) {
        let inv = f.inv(lead);
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
}

/// `PSL(n, q)` acting on the points of the projective space, generated by the
/// elementary transvections `E_{i,i±1}(x^k)` for a polynomial basis `x^k`.
pub fn projective_special_linear(n: usize, q: u32) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let f = SmallField::new(q)?;
    let mut points: Vec<Vec<u32>> = Vec::new();
    let total = (q as usize).pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let mut v: Vec<u32> = (0..n)
            .map(|_| {
                let d = (c % q as usize) as u32;
                c /= q as usize;
                d
            })
            .collect();
        v.reverse();
        let mut w = v.clone();
        normalize(&f, &mut w);
        if w == v {
            points.push(v);
        }
    }
    let index: HashMap<Vec<u32>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let basis: Vec<u32> = (0..f.degree()).map(|k| f.pow(f.primitive(), k as u64)).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for &lam in &basis {
                let mut m: Matrix = (0..n).map(|a| (0..n).map(|b| u32::from(a == b)).collect()).collect();
                m[i][j] = lam;
                let images: Vec<u32> = points
                    .iter()
                    .map(|p| {
                        let mut w = vec_mat(&f, p, &m);
                        normalize(&f, &mut w);
                        index[&w] as u32
                    })
                    .collect();
                gens.push(Permutation::from_images(images)?);
            }
        }
    }
    PermGroup::new(gens)
}

/// `ASL₂(4) = F_4² ⋊ SL₂(4)` acting on the 16 vectors, with the quotient `SL₂(4)`
/// presented as `⟨a, b | a², b³, (ab)⁵⟩`.
pub fn build_asl24() -> Result<MonolithicFixture> {
    let f = SmallField::new(4)?;
    let vectors: Vec<[u32; 2]> = (0..16).map(|i| [i % 4, i / 4]).collect();
    let idx = |v: [u32; 2]| (v[0] + 4 * v[1]) as u32;
    let affine = |m: &[[u32; 2]; 2], t: [u32; 2]| -> Result<Permutation> {
        let images = vectors
            .iter()
            .map(|v| {
                let w0 = f.add(f.add(f.mul(v[0], m[0][0]), f.mul(v[1], m[1][0])), t[0]);
                let w1 = f.add(f.add(f.mul(v[0], m[0][1]), f.mul(v[1], m[1][1])), t[1]);
                idx([w0, w1])
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut sl = Vec::new();
    for code in 0..256u32 {
        let m = [[code & 3, (code >> 2) & 3], [(code >> 4) & 3, (code >> 6) & 3]];
        if f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0])) == 1 {
            sl.push(affine(&m, [0, 0])?);
        }
    }
    let (a, b) = sl
        .iter()
        .flat_map(|a| sl.iter().map(move |b| (a, b)))
        .find(|(a, b)| a.order() == 2 && b.order() == 3 && a.mul(b).order() == 5)
        .expect("SL2(4) ≅ A5 has (2,3,5) generators");
    let translation = asl24_translation([1, 0])?;
    let group = PermGroup::new(vec![translation, a.clone(), b.clone()])?;
    let data = recognize_monolithic(&group, Some(&[a.clone(), b.clone()]))?;
    let presentation = Presentation::new(2, vec![vec![1, 1], vec![2, 2, 2], [1, 2].repeat(5)])?;
    Ok(MonolithicFixture { data, presentation })
}

fn asl24_translation(v: [u32; 2]) -> Result<Permutation> {
    let f = SmallField::new(4)?;
    Permutation::from_images(
        (0..16u32)
            .map(|i| f.add(i % 4, v[0]) + 4 * f.add(i / 4, v[1]))
            .collect(),
    )
}

/// The explicit elements `x, y, z` of the crown `L_t` of `ASL₂(4)` (`t ≥ 2`):
/// diagonal `x` of order 3 and `y` of order 5 from `SL₂(4)`, and the
/// translation `z = (e₁, e₂, 0, …)` of order 2.
pub fn asl_crown_elements(crown: &CrownSpec) -> Result<Vec<Permutation>> {
    if crown.t < 2 || crown.base.group.degree() != 16 || crown.base.quotient_lifts.len() != 2 {
        return Err(Error::InvalidArgument("expected a crown of the ASL2(4) fixture with t ≥ 2".into()));
    }
    let (a, b) = (&crown.base.quotient_lifts[0], &crown.base.quotient_lifts[1]);
    let x = crown.lift_diagonal(b);
    let y = crown.lift_diagonal(&a.mul(b));
    let z = crown
        .lift_coordinate(&asl24_translation([1, 0])?, 0)
        .mul(&crown.lift_coordinate(&asl24_translation([0, 1])?, 1));
    Ok(vec![x, y, z])
}

/// `F_p ⋊ C_n` with `n` the product of the first `t` primes and `p` the least
/// prime with `n | p − 1`; `C_n` acts by multiplication.
pub fn build_frobenius(t: usize) -> Result<MonolithicFixture> {
    if !(1..=3).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside 1..=3")));
    }
    let n: u64 = [2u64, 3, 5][..t].iter().product();
    let p = (1..)
        .map(|k| k * n + 1)
        .find(|&p| is_prime(p))
        .expect("primes in arithmetic progressions");
    let order_mod_p = |a: u64| {
        let (mut x, mut k) = (a, 1);
        while x != 1 {
            x = x * a % p;
            k += 1;
        }
        k
    };
    let a = (2..p).find(|&a| order_mod_p(a) == n).expect("units of F_p are cyclic");
    let shift = Permutation::from_images((0..p).map(|x| ((x + 1) % p) as u32).collect())?;
    let scale = Permutation::from_images((0..p).map(|x| ((a * x) % p) as u32).collect())?;
    let group = PermGroup::new(vec![shift, scale.clone()])?;
    let data = recognize_monolithic(&group, Some(&[scale]))?;
    let presentation = Presentation::new(1, vec![vec![1; n as usize]])?;
    Ok(MonolithicFixture { data, presentation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_orders() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(cyclic(7).unwrap().order(), 7);
        for (n, q, order) in [(2, 4, 60), (2, 7, 168), (2, 8, 504), (2, 9, 360), (3, 2, 168), (3, 3, 5616), (2, 16, 4080)] {
            assert_eq!(projective_special_linear(n, q).unwrap().order(), order, "L{n}({q})");
        }
    }

    #[test]
    fn asl24_fixture() {
        let fx = build_asl24().unwrap();
        assert_eq!(fx.data.group.order(), 960);
        assert_eq!(fx.data.group.degree(), 16);
        assert_eq!(fx.data.socle.order(), 16);
        assert!(fx.data.abelian);
        let module = fx.data.module.as_ref().unwrap();
        let field = module.endomorphism_field().unwrap();
        assert_eq!((field.size, field.dim), (4, 2));
    }

    #[test]
    fn frobenius_fixtures() {
        for (t, p, order) in [(1, 3, 6), (2, 7, 42), (3, 31, 930)] {
            let fx = build_frobenius(t).unwrap();
            assert_eq!(fx.data.group.order(), order);
            assert_eq!(fx.data.socle.order(), p);
            assert!(!fx.data.module.as_ref().unwrap().is_trivial());
        }
        assert!(build_frobenius(4).is_err());
    }
}
