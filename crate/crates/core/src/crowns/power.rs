use crate::error::{Error, Result};
use crate::perm::{Homomorphism, PermGroup, Permutation, MAX_DEGREE};
use crate::structure::MonolithicData;

/// Largest realized crown order.
pub const CROWN_ORDER_CAP: u128 = 1_000_000_000;

/// The crown-based power `L_t = {(l_1, …, l_t) : l_1A = … = l_tA}` acting on `t`
/// disjoint copies of the domain of `L`.
#[derive(Clone, Debug)]
pub struct CrownSpec {
    pub base: MonolithicData,
    pub t: usize,
    pub group: PermGroup,
}

/// `x` placed in coordinate `i` of `t`, identity elsewhere.
fn in_coordinate(x: &Permutation, i: usize, t: usize) -> Permutation {
    let id = Permutation::identity(x.degree());
    let parts: Vec<&Permutation> = (0..t).map(|j| if j == i { x } else { &id }).collect();
    Permutation::direct_sum(&parts)
}

fn diagonal(x: &Permutation, t: usize) -> Permutation {
    let parts: Vec<&Permutation> = (0..t).map(|_| x).collect();
    Permutation::direct_sum(&parts)
}

/// Builds `L_t` from diagonal copies of the generators of `L` and socle
/// generators in coordinates `1..t−1` (the diagonal supplies the last one).
/// The order is checked against `|A|^(t−1)·|L|`.
pub fn crown_power(base: &MonolithicData, t: usize) -> Result<CrownSpec> {
    if t == 0 {
        return Err(Error::InvalidArgument("crown power needs t ≥ 1".into()));
    }
    let degree = base.group.degree();
    if degree * t > MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "crown degree",
            value: (degree * t) as u128,
            cap: MAX_DEGREE as u128,
        });
    }
    let expected = base
        .socle
        .order()
        .checked_pow(t as u32 - 1)
        .and_then(|a| a.checked_mul(base.group.order()))
        .filter(|&o| o <= CROWN_ORDER_CAP)
        .ok_or(Error::CapExceeded {
            what: "crown order",
            value: u128::MAX,
            cap: CROWN_ORDER_CAP,
        })?;
    let mut gens: Vec<Permutation> = base.group.generators().iter().map(|g| diagonal(g, t)).collect();
    for i in 0..t - 1 {
        gens.extend(base.socle.generators().iter().map(|a| in_coordinate(a, i, t)));
    }
    let group = PermGroup::new(gens)?;
    if group.order() != expected {
        return Err(Error::InvalidArgument(format!(
            "crown generators give order {} instead of {expected}",
            group.order()
        )));
    }
    Ok(CrownSpec {
        base: base.clone(),
        t,
        group,
    })
}

impl CrownSpec {
    /// Projection of `L_t` onto coordinate `i` (0-based).
    pub fn projection(&self, i: usize) -> Result<Homomorphism> {
        let d = self.base.group.degree();
        Homomorphism::restriction(&self.group, i * d, d)
    }

    /// `A^t`, the socle of the crown.
    pub fn socle_power(&self) -> Result<PermGroup> {
        let gens = (0..self.t)
            .flat_map(|i| {
                self.base
                    .socle
                    .generators()
                    .iter()
                    .map(move |a| in_coordinate(a, i, self.t))
            })
            .collect();
        PermGroup::new(gens)
    }

    /// The diagonal copy of `L`.
    pub fn diagonal(&self) -> Result<PermGroup> {
        PermGroup::new(self.base.group.generators().iter().map(|g| diagonal(g, self.t)).collect())
    }

    /// Diagonal copies of arbitrary elements of `L`.
    pub fn lift_diagonal(&self, x: &Permutation) -> Permutation {
        diagonal(x, self.t)
    }

    /// `x` in coordinate `i`.
    pub fn lift_coordinate(&self, x: &Permutation, i: usize) -> Permutation {
        in_coordinate(x, i, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::recognize_monolithic;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn orders_and_projections() {
        let f42 = recognize_monolithic(&group(7, &["(1 2 3 4 5 6 7)", "(2 4 3 7 5 6)"]), None).unwrap();
        let c1 = crown_power(&f42, 1).unwrap();
        assert_eq!(c1.group.order(), 42);
        let c2 = crown_power(&f42, 2).unwrap();
        assert_eq!(c2.group.order(), 294);
        assert_eq!(c2.group.degree(), 14);
        let c3 = crown_power(&f42, 3).unwrap();
        assert_eq!(c3.group.order(), 7 * 7 * 42);
        for i in 0..3 {
            assert_eq!(c3.projection(i).unwrap().image().order(), 42);
        }
        assert_eq!(c3.socle_power().unwrap().order(), 343);
        assert_eq!(c3.diagonal().unwrap().order(), 42);
        assert!(crown_power(&f42, 0).is_err());
    }

    #[test]
    fn nonabelian_crowns() {
        let s5 = recognize_monolithic(&group(5, &["(1 2)", "(1 2 3 4 5)"]), None).unwrap();
        let c2 = crown_power(&s5, 2).unwrap();
        assert_eq!(c2.group.order(), 60 * 120);
    }
}
