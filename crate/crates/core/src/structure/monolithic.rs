use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{GFMatrix, ModuleAction};
use crate::perm::{PermGroup, Permutation};

use super::lattice::frattini;
use super::normal::{is_abelian, minimal_normal_subgroups};

/// Largest abelian socle for which coordinates are tabulated.
pub const MODULE_ORDER_CAP: u128 = 1 << 20;

/// A group with a unique minimal normal subgroup and trivial Frattini subgroup.
#[derive(Clone, Debug)]
pub struct MonolithicData {
    pub group: PermGroup,
    pub socle: PermGroup,
    pub abelian: bool,
    /// `|S|` for a socle `S^n`; the prime `p` when the socle is `F_p^n`.
    pub simple_factor_order: u128,
    pub n_copies: usize,
    /// Conjugation action of `quotient_lifts` on the socle (abelian case).
    pub module: Option<ModuleAction>,
    /// Elements of the group whose images generate the quotient by the socle.
    pub quotient_lifts: Vec<Permutation>,
}

/// Coordinates of an elementary abelian `p`-group.
pub(crate) struct ElementaryAbelian {
    pub p: u32,
    pub basis: Vec<Permutation>,
    coords: HashMap<Permutation, Vec<u32>>,
}

impl ElementaryAbelian {
    pub fn new(a: &PermGroup) -> Result<Self> {
        let order = a.order();
        if order > MODULE_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "abelian socle order",
                value: order,
                cap: MODULE_ORDER_CAP,
            });
        }
        let primes = crate::arith::prime_divisors(order);
        if primes.len() != 1 {
            return Err(Error::NotMonolithic(format!("abelian socle of order {order} is not a p-group")));
        }
        let p = primes[0] as u32;
        let elems = a.enumerate_elements(MODULE_ORDER_CAP)?;
        if elems.iter().any(|x| x.order() > p as u64) {
            return Err(Error::NotMonolithic("socle is not elementary abelian".into()));
        }
        // span[v] for every vector already reached, grown one basis vector at a time
        let mut coords: HashMap<Permutation, Vec<u32>> = HashMap::new();
        coords.insert(a.identity(), Vec::new());
        let mut basis = Vec::new();
        for x in &elems {
            if coords.contains_key(x) {
                continue;
            }
            let old: Vec<(Permutation, Vec<u32>)> = coords.drain().collect();
            let mut power = a.identity();
            for c in 0..p {
                for (y, v) in &old {
                    let mut w = v.clone();
                    w.push(c);
                    coords.insert(y.mul(&power), w);
                }
                power = power.mul(x);
            }
            basis.push(x.clone());
        }
        let dim = basis.len();
        for v in coords.values_mut() {
            v.resize(dim, 0);
        }
        Ok(ElementaryAbelian { p, basis, coords })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &Permutation) -> Option<&[u32]> {
        self.coords.get(x).map(|v| v.as_slice())
    }

    /// Matrix of `v ↦ v^l` in the row-vector convention.
    pub fn action_of(&self, l: &Permutation) -> Result<GFMatrix> {
        let mut m = GFMatrix::zero(self.p, self.dim(), self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            let img = b.conjugate(l);
            let row = self.coords(&img).ok_or(Error::NotNormal)?;
            for (j, &c) in row.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

/// Frattini triviality for an abelian minimal normal `A`: equivalent to `A` having
/// a complement. When `A` is regular on the points the point stabilizer is one.
fn abelian_socle_complemented(l: &PermGroup, a: &PermGroup) -> Result<bool> {
    if a.orbits().len() == 1 && a.order() == l.degree() as u128 {
        return Ok(true);
    }
    Ok(frattini(l)?.is_trivial())
}

/// Recognizes a monolithic group with trivial Frattini subgroup.
///
/// `lifts` are the elements whose conjugation action defines the module in the
/// abelian case; by default the generators of `l` outside the socle.
pub fn recognize_monolithic(l: &PermGroup, lifts: Option<&[Permutation]>) -> Result<MonolithicData> {
    let minimal = minimal_normal_subgroups(l)?;
    match minimal.len() {
        0 => return Err(Error::NotMonolithic("trivial group".into())),
        1 => {}
        k => return Err(Error::NotMonolithic(format!("{k} minimal normal subgroups"))),
    }
    let socle = minimal.into_iter().next().expect("one");
    let quotient_lifts: Vec<Permutation> = match lifts {
        Some(ls) => {
            for x in ls {
                if !l.contains(x)? {
                    return Err(Error::NotInGroup(x.to_string()));
                }
            }
            ls.to_vec()
        }
        None => l.generators().iter().filter(|g| !socle.has(g)).cloned().collect(),
    };
    if is_abelian(&socle) {
        if !abelian_socle_complemented(l, &socle)? {
            return Err(Error::NotMonolithic("nontrivial Frattini subgroup".into()));
        }
        let ea = ElementaryAbelian::new(&socle)?;
        let mut actors = quotient_lifts
            .iter()
            .map(|x| ea.action_of(x))
            .collect::<Result<Vec<_>>>()?;
        if actors.is_empty() {
            actors.push(GFMatrix::identity(ea.p, ea.dim()));
        }
        let module = ModuleAction::new(ea.p, ea.dim(), actors)?;
        if !module.is_irreducible()? {
            return Err(Error::Reducible);
        }
        Ok(MonolithicData {
            group: l.clone(),
            simple_factor_order: ea.p as u128,
            n_copies: ea.dim(),
            socle,
            abelian: true,
            module: Some(module),
            quotient_lifts,
        })
    } else {
        // Nilpotent normal subgroups contain no nonabelian minimal normal one,
        // so the Frattini subgroup is automatically trivial here.
        let factors = minimal_normal_subgroups(&socle)?;
        let factor_order = factors[0].order();
        if factors.iter().any(|f| f.order() != factor_order)
            || factor_order.checked_pow(factors.len() as u32) != Some(socle.order())
        {
            return Err(Error::NotMonolithic("socle is not a power of one simple group".into()));
        }
        Ok(MonolithicData {
            group: l.clone(),
            simple_factor_order: factor_order,
            n_copies: factors.len(),
            socle,
            abelian: false,
            module: None,
            quotient_lifts,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::socle;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn s5_has_simple_socle() {
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        let m = recognize_monolithic(&s5, None).unwrap();
        assert!(!m.abelian);
        assert_eq!(m.socle.order(), 60);
        assert_eq!((m.simple_factor_order, m.n_copies), (60, 1));
        assert!(m.socle.same_as(&socle(&s5).unwrap()));
    }

    #[test]
    fn frobenius_42() {
        let f = group(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]);
        let m = recognize_monolithic(&f, None).unwrap();
        assert!(m.abelian);
        assert_eq!(m.socle.order(), 7);
        let module = m.module.unwrap();
        assert_eq!((module.p(), module.dim()), (7, 1));
        assert_eq!(module.endomorphism_field().unwrap().size, 7);
    }

    #[test]
    fn non_monolithic() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        assert!(matches!(recognize_monolithic(&c6, None), Err(Error::NotMonolithic(_))));
        // C4: unique minimal normal subgroup but Frattini C2
        let c4 = group(4, &["(1 2 3 4)"]);
        assert!(matches!(recognize_monolithic(&c4, None), Err(Error::NotMonolithic(_))));
    }

    #[test]
    fn a5_squared_socle() {
        // A5 wr C2 has socle A5 × A5
        let w = group(
            10,
            &["(1 2 3 4 5)", "(1 2 3)", "(1 6)(2 7)(3 8)(4 9)(5 10)"],
        );
        let m = recognize_monolithic(&w, None).unwrap();
        assert_eq!((m.simple_factor_order, m.n_copies), (60, 2));
    }

    #[test]
    fn elementary_coordinates() {
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let ea = ElementaryAbelian::new(&v4).unwrap();
        assert_eq!((ea.p, ea.dim()), (2, 2));
        for x in v4.enumerate_elements(10).unwrap() {
            assert!(ea.coords(&x).is_some());
        }
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let m = recognize_monolithic(&s4, None).unwrap();
        assert!(m.abelian);
        assert_eq!(m.module.unwrap().endomorphism_field().unwrap().size, 2);
    }
}
