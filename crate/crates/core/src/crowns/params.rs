use serde::{Deserialize, Serialize};

use crate::classes::conjugacy_classes;
use crate::error::{Error, Result};
use crate::gf::{h1_dimension, H1Dimensions, Presentation};
use crate::perm::{PermGroup, Permutation, StabChain};
use crate::structure::MonolithicData;

/// Inputs of the generator-count formula for crown-based powers with abelian socle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownParams {
    /// `d(L/A)`.
    pub dl_quotient: usize,
    /// `dim_{End}(A)`.
    pub r: usize,
    /// `dim_{End} H¹(L/A, A)`.
    pub s: usize,
    /// 0 for a trivial module, 1 otherwise.
    pub theta: usize,
    pub t: usize,
}

impl CrownParams {
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.t == 0 || self.theta > 1 {
            return Err(Error::InvalidArgument(format!("invalid crown parameters {self:?}")));
        }
        if self.s >= self.r {
            return Err(Error::InvalidArgument(format!("s = {} is not below r = {}", self.s, self.r)));
        }
        Ok(())
    }

    pub fn with_t(self, t: usize) -> Self {
        CrownParams { t, ..self }
    }
}

/// `d(L_t) = max(d(L/A), θ + ⌈(t + s)/r⌉)`.
pub fn d_crown_abelian(params: &CrownParams) -> Result<usize> {
    params.validate()?;
    Ok(params.dl_quotient.max(params.theta + (params.t + params.s).div_ceil(params.r)))
}

/// Least `k` such that `k` elements together with `a` generate `l`, i.e.
/// `d(L/A)`; searched up to `cap`.
pub fn quotient_generator_number(l: &PermGroup, a: &PermGroup, cap: usize) -> Result<Option<usize>> {
    let target = l.order();
    let base: Vec<Permutation> = a.generators().to_vec();
    let joins = |extra: &[Permutation]| {
        let mut gens = base.clone();
        gens.extend_from_slice(extra);
        StabChain::reaches_order(l.degree(), &gens, target)
    };
    if joins(&[]) {
        return Ok(Some(0));
    }
    let table = conjugacy_classes(l)?;
    let reps: Vec<Permutation> = table.classes().iter().map(|c| c.rep.clone()).collect();
    if cap >= 1 && reps.iter().any(|x| joins(std::slice::from_ref(x))) {
        return Ok(Some(1));
    }
    if cap >= 2 {
        if l.order() > 1_000_000 {
            return Err(Error::CapExceeded {
                what: "quotient generator search order",
                value: l.order(),
                cap: 1_000_000,
            });
        }
        for x in &reps {
            for r in 0..l.order() as u64 {
                if joins(&[x.clone(), l.unrank(r)]) {
                    return Ok(Some(2));
                }
            }
        }
    }
    if cap >= 3 {
        return Err(Error::InvalidArgument("quotient generator search supports cap ≤ 2".into()));
    }
    Ok(None)
}

/// The lifts of the quotient generators must satisfy the presentation modulo
/// the socle, and the module actors must match them one-to-one.
fn check_lifts(base: &MonolithicData, pres: &Presentation) -> Result<()> {
    if base.quotient_lifts.len() != pres.ngens {
        return Err(Error::InvalidArgument(format!(
            "presentation has {} generators but there are {} lifts",
            pres.ngens,
            base.quotient_lifts.len()
        )));
    }
    let inv: Vec<Permutation> = base.quotient_lifts.iter().map(|x| x.inverse()).collect();
    let id = base.group.identity();
    for rel in &pres.relators {
        let w = Presentation::evaluate(rel, &base.quotient_lifts, &inv, id.clone(), |a, b| a.mul(b));
        if !base.socle.has(&w) {
            return Err(Error::InvalidArgument("lifts do not satisfy the relators modulo the socle".into()));
        }
    }
    let mut gens = base.socle.generators().to_vec();
    gens.extend(base.quotient_lifts.iter().cloned());
    if !StabChain::reaches_order(base.group.degree(), &gens, base.group.order()) {
        return Err(Error::InvalidArgument("lifts do not generate the quotient".into()));
    }
    Ok(())
}

/// `H¹(L/A, A)` for an abelian-socle monolithic group, with `L/A` given by a
/// presentation on the images of `base.quotient_lifts`.
pub fn socle_cohomology(base: &MonolithicData, pres: &Presentation) -> Result<H1Dimensions> {
    let module = base
        .module
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("socle is not abelian".into()))?;
    check_lifts(base, pres)?;
    h1_dimension(pres, module)
}

/// All parameters of the formula for `L_t`.
pub fn crown_params(base: &MonolithicData, pres: &Presentation, t: usize) -> Result<CrownParams> {
    let module = base
        .module
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("socle is not abelian".into()))?;
    let h1 = socle_cohomology(base, pres)?;
    let field = module.endomorphism_field()?;
    let dl_quotient = quotient_generator_number(&base.group, &base.socle, 2)?
        .ok_or_else(|| Error::InvalidArgument("quotient needs more than two generators".into()))?;
    let params = CrownParams {
        dl_quotient,
        r: field.dim,
        s: h1.s,
        theta: usize::from(!module.is_trivial()),
        t,
    };
    params.validate()?;
    Ok(params)
}

/// Largest `|A|^k` enumerated by [`count_complements_by_lifting`].
pub const COMPLEMENT_SEARCH_CAP: u128 = 10_000_000;

/// Number of tuples `(a_i) ∈ A^k` such that the elements `l_i·a_i` satisfy the
/// relators. Each such tuple generates a distinct complement-generating lift,
/// and the count equals `|Z¹(L/A, A)|` when a complement exists.
pub fn count_complements_by_lifting(base: &MonolithicData, pres: &Presentation) -> Result<u128> {
    check_lifts(base, pres)?;
    let a = base.socle.order();
    let k = pres.ngens;
    let total = a
        .checked_pow(k as u32)
        .filter(|&x| x <= COMPLEMENT_SEARCH_CAP)
        .ok_or(Error::CapExceeded {
            what: "complement lifting tuples",
            value: u128::MAX,
            cap: COMPLEMENT_SEARCH_CAP,
        })?;
    let socle_elems = base.socle.enumerate_elements(COMPLEMENT_SEARCH_CAP)?;
    let id = base.group.identity();
    let mut count = 0u128;
    for code in 0..total {
        let mut c = code;
        let gens: Vec<Permutation> = base
            .quotient_lifts
            .iter()
            .map(|l| {
                let ai = &socle_elems[(c % a) as usize];
                c /= a;
                l.mul(ai)
            })
            .collect();
        let inv: Vec<Permutation> = gens.iter().map(|x| x.inverse()).collect();
        if pres.holds_for(&gens, &inv, id.clone(), |x, y| x.mul(y)) {
            count += 1;
        }
    }
    Ok(count)
}
