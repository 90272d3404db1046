use serde::{Deserialize, Serialize};

use super::matrix::GFMatrix;
use super::module::ModuleAction;
use crate::error::{Error, Result};

/// A finite presentation: relators are words in signed 1-based generator indices
/// (`-2` is the inverse of the second generator).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(ngens: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        if relators.is_empty() {
            return Err(Error::InvalidArgument("presentation needs relators".into()));
        }
        for r in &relators {
            if let Some(&bad) = r
                .iter()
                .find(|&&x| x == 0 || x.unsigned_abs() as usize > ngens)
            {
                return Err(Error::InvalidArgument(format!(
                    "relator letter {bad} out of range 1..={ngens}"
                )));
            }
        }
        Ok(Presentation { ngens, relators })
    }

    /// Evaluates a word with a multiplication on arbitrary generator values.
    pub fn evaluate<T: Clone>(
        word: &[i32],
        gens: &[T],
        inverses: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        word.iter().fold(identity, |acc, &x| {
            let i = x.unsigned_abs() as usize - 1;
            if x > 0 {
                mul(&acc, &gens[i])
            } else {
                mul(&acc, &inverses[i])
            }
        })
    }

    /// `true` when every relator evaluates to the identity on these values.
    pub fn holds_for<T: Clone + PartialEq>(
        &self,
        gens: &[T],
        inverses: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
    ) -> bool {
        gens.len() == self.ngens
            && self
                .relators
                .iter()
                .all(|r| Self::evaluate(r, gens, inverses, identity.clone(), &mul) == identity)
    }
}

/// Dimensions of cocycles, coboundaries and first cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Dimensions {
    pub dim_z1: usize,
    pub dim_b1: usize,
    /// `dim_{F_p} H^1`.
    pub dim_h1: usize,
    /// `dim_{End} H^1`, i.e. `s_L(A)`.
    pub s: usize,
    /// Degree of the endomorphism field over `F_p`.
    pub field_degree: usize,
}

/// First cohomology of the presented group with coefficients in `action`.
///
/// A derivation is determined by its values on the generators; each relator `w`
/// must satisfy `d(w) = 0`, where `d(uv) = d(u)·v + d(v)` and
/// `d(x⁻¹) = −d(x)·x⁻¹`. Stacking these conditions gives a linear system whose
/// solution space is `Z¹`.
pub fn h1_dimension(pres: &Presentation, action: &ModuleAction) -> Result<H1Dimensions> {
    let k = pres.ngens;
    if k != action.actors().len() {
        return Err(Error::InvalidArgument(format!(
            "presentation has {k} generators but the module has {} actors",
            action.actors().len()
        )));
    }
    let p = action.p();
    let d = action.dim();
    let id = GFMatrix::identity(p, d);
    let inverses: Vec<GFMatrix> = action
        .actors()
        .iter()
        .map(|m| m.inverse().expect("actors are invertible"))
        .collect();
    if !pres.holds_for(action.actors(), &inverses, id.clone(), |a, b| a.mul(b)) {
        return Err(Error::InvalidArgument(
            "module matrices do not satisfy the relators".into(),
        ));
    }

    // One column block per relator; row block i collects the coefficient of d(x_i).
    let mut columns = Vec::with_capacity(pres.relators.len());
    for rel in &pres.relators {
        let mut blocks = vec![GFMatrix::zero(p, d, d); k];
        let mut suffix = id.clone();
        for &x in rel.iter().rev() {
            let i = x.unsigned_abs() as usize - 1;
            if x > 0 {
                blocks[i] = blocks[i].add(&suffix);
                suffix = action.actors()[i].mul(&suffix);
            } else {
                blocks[i] = blocks[i].sub(&inverses[i].mul(&suffix));
                suffix = inverses[i].mul(&suffix);
            }
        }
        columns.push(GFMatrix::vstack(&blocks));
    }
    let system = GFMatrix::hstack(&columns);
    // row vectors v with v · system = 0
    let dim_z1 = system.transpose().nullspace().len();
    let dim_b1 = d - action.fixed_subspace();
    let dim_h1 = dim_z1 - dim_b1;
    let field_degree = action.endomorphism_field()?.degree;
    if dim_h1 % field_degree != 0 {
        return Err(Error::NonIntegral {
            dim_h1,
            degree: field_degree,
        });
    }
    Ok(H1Dimensions {
        dim_z1,
        dim_b1,
        dim_h1,
        s: dim_h1 / field_degree,
        field_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> GFMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        GFMatrix::from_rows(p, &rows).unwrap()
    }

    #[test]
    fn cyclic_group_on_trivial_module() {
        for p in [2u32, 3, 5] {
            let pres = Presentation::new(1, vec![vec![1; p as usize]]).unwrap();
            let action = ModuleAction::new(p, 1, vec![GFMatrix::identity(p, 1)]).unwrap();
            let h = h1_dimension(&pres, &action).unwrap();
            assert_eq!((h.dim_z1, h.dim_b1, h.dim_h1, h.s), (1, 0, 1, 1));
        }
    }

    #[test]
    fn scalar_c6_has_no_cohomology() {
        let pres = Presentation::new(1, vec![vec![1; 6]]).unwrap();
        let action = ModuleAction::new(7, 1, vec![m(7, &[&[3]])]).unwrap();
        let h = h1_dimension(&pres, &action).unwrap();
        assert_eq!((h.dim_z1, h.dim_b1, h.dim_h1), (1, 1, 0));
    }

    #[test]
    fn rejects_mismatched_inputs() {
        assert!(Presentation::new(1, vec![vec![2]]).is_err());
        assert!(Presentation::new(1, vec![]).is_err());
        let pres = Presentation::new(2, vec![vec![1, 1]]).unwrap();
        let action = ModuleAction::new(3, 1, vec![GFMatrix::identity(3, 1)]).unwrap();
        assert!(h1_dimension(&pres, &action).is_err());
        // relator x^2 fails for the scalar 2 over F_5 (order 4)
        let pres = Presentation::new(1, vec![vec![1, 1]]).unwrap();
        let action = ModuleAction::new(5, 1, vec![m(5, &[&[2]])]).unwrap();
        assert!(h1_dimension(&pres, &action).is_err());
    }

    #[test]
    fn inverse_letters_expand_consistently() {
        // <x | x x x^-1 x^-1 x^3> presents C_3 just like <x | x^3>
        let a = Presentation::new(1, vec![vec![1, 1, 1]]).unwrap();
        let b = Presentation::new(1, vec![vec![1, 1, -1, -1, 1, 1, 1]]).unwrap();
        let action = ModuleAction::new(3, 1, vec![GFMatrix::identity(3, 1)]).unwrap();
        assert_eq!(
            h1_dimension(&a, &action).unwrap(),
            h1_dimension(&b, &action).unwrap()
        );
    }
}
