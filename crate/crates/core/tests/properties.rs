//! Invariants checked across the bundled catalog, with random inputs drawn by
//! proptest where the property quantifies over elements.

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cig_core::arith::zsigmondy;
use cig_core::catalog::class_fingerprint;
use cig_core::classes::{k_pi, ClassTable};
use cig_core::crowns::{count_complements_by_lifting, crown_power, d_crown_abelian, CrownParams};
use cig_core::gf::h1_dimension;
use cig_core::invgen::{generates, DecisionPath, InvgenContext};
use cig_core::structure::{
    exponent, frattini, is_abelian, is_soluble, minimal_normal_subgroups, recognize_monolithic, SubgroupLattice,
};
use cig_core::{conjugacy_classes, default_catalog, PermGroup, Permutation, PrimeSet};

/// Catalog members (base groups and crowns) of order at most 10^5.
fn small_members() -> &'static [(String, PermGroup)] {
    static M: OnceLock<Vec<(String, PermGroup)>> = OnceLock::new();
    M.get_or_init(|| {
        let cat = default_catalog().unwrap();
        let names = cat.groups().iter().map(|e| e.name.clone()).chain(cat.crowns().iter().map(|c| c.name.clone()));
        names
            .map(|n| {
                let g = cat.build(&n).unwrap();
                (n, g)
            })
            .filter(|(_, g)| g.order() <= 100_000)
            .collect()
    })
}

fn member(i: usize) -> &'static (String, PermGroup) {
    let m = small_members();
    &m[i % m.len()]
}

fn random_elements(g: &PermGroup, seed: u64, n: usize) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| g.random_element(&mut rng)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_of_product(i in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = member(i);
        let v = random_elements(g, seed, 2);
        let (p, q) = (&v[0], &v[1]);
        prop_assert_eq!(p.mul(q).inverse(), q.inverse().mul(&p.inverse()));
        prop_assert!(p.mul(&p.inverse()).is_identity());
    }

    #[test]
    fn conjugation_preserves_cycle_type(i in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = member(i);
        let v = random_elements(g, seed, 2);
        prop_assert_eq!(v[0].conjugate(&v[1]).cycle_type(), v[0].cycle_type());
    }

    #[test]
    fn generator_words_stay_inside(i in 0usize..1000, word in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..40)) {
        let (_, g) = member(i);
        let gens = g.generators();
        let mut x = g.identity();
        for (k, inv) in word {
            let s = &gens[k.index(gens.len())];
            x = x.mul(&if inv { s.inverse() } else { s.clone() });
        }
        prop_assert!(g.contains(&x).unwrap());
    }

    #[test]
    fn k_pi_is_monotone(i in 0usize..1000, mask in 0u32..256, extra in 0u32..256) {
        let (_, g) = member(i);
        let table = conjugacy_classes(g).unwrap();
        let primes = PrimeSet::of(g.order());
        let pick = |m: u32| PrimeSet::new(primes.primes().iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, &p)| p).collect()).unwrap();
        let small = pick(mask);
        let large = pick(mask | extra);
        prop_assert!(k_pi(&table, &small) <= k_pi(&table, &large));
    }

    #[test]
    fn invariable_generation_ignores_conjugation(i in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = member(i);
        if g.order() > 20_000 {
            return Ok(());
        }
        let ctx = InvgenContext::new(g).unwrap();
        let elems = random_elements(g, seed, 2);
        let moved: Vec<Permutation> = elems.iter().zip(random_elements(g, seed ^ 1, 2)).map(|(x, c)| x.conjugate(&c)).collect();
        let v = ctx.invariably_generates(&elems, DecisionPath::Exhaustive).unwrap();
        let w = ctx.invariably_generates(&moved, DecisionPath::Exhaustive).unwrap();
        prop_assert_eq!(v.holds(), w.holds());
        if v.holds() {
            prop_assert!(generates(g, &elems).unwrap());
        }
        if let Some(cert) = v.certificate() {
            prop_assert!(cert.subgroup.order() < g.order());
            for (x, y) in elems.iter().zip(&cert.conjugates) {
                prop_assert!(cert.subgroup.has(y));
                prop_assert_eq!(ctx.table().class_index(x).unwrap(), ctx.table().class_index(y).unwrap());
            }
        }
    }

    #[test]
    fn crown_formula_is_monotone_in_t(dl in 1usize..4, r in 1usize..4, s in 0usize..4, theta in 0usize..2, t in 1usize..8) {
        let p = CrownParams { dl_quotient: dl, r, s, theta, t };
        let q = CrownParams { t: t + 1, ..p };
        if let (Ok(a), Ok(b)) = (d_crown_abelian(&p), d_crown_abelian(&q)) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn primitive_prime_divisors(q in 2u64..60, n in 2u32..24) {
        let qn = num_bigint::BigUint::from(q).pow(n) - 1u32;
        for r in zsigmondy(q, n).unwrap() {
            prop_assert_eq!(&qn % &r, 0u32.into());
            let ord = (1..=n).find(|&k| num_bigint::BigUint::from(q).modpow(&k.into(), &r) == 1u32.into());
            prop_assert_eq!(ord, Some(n));
        }
    }
}

#[test]
fn order_matches_enumeration() {
    for (name, g) in small_members().iter().filter(|(_, g)| g.order() <= 5000) {
        assert_eq!(g.enumerate_elements(5000).unwrap().len() as u128, g.order(), "{name}");
    }
}

#[test]
fn class_sizes_partition_the_group() {
    let cat = default_catalog().unwrap();
    for e in cat.groups() {
        let g = e.build().unwrap();
        let t = conjugacy_classes(&g).unwrap();
        let n = g.order();
        assert_eq!(t.classes().iter().map(|c| c.size).sum::<u128>(), n, "{}", e.name);
        for c in t.classes() {
            assert_eq!(n % c.size, 0, "{}", e.name);
            assert_eq!(c.size * c.centralizer_order, n, "{}", e.name);
        }
    }
}

#[test]
fn alternating_cycle_types_match_orbits() {
    for n in 5..=7 {
        let g = default_catalog().unwrap().build(&format!("A{n}")).unwrap();
        let by_types = ClassTable::by_cycle_types(&g).unwrap();
        let by_orbits = ClassTable::by_orbits(&g).unwrap();
        assert_eq!(class_fingerprint(&by_types), class_fingerprint(&by_orbits), "A{n}");
    }
}

#[test]
fn lattice_and_normal_structure() {
    for (name, g) in small_members().iter().filter(|(_, g)| g.order() <= 2000) {
        let table = conjugacy_classes(g).unwrap();
        let e = exponent(&table);
        assert_eq!(g.order() % e as u128, 0, "{name}");
        let lattice = SubgroupLattice::new(g).unwrap();
        for h in lattice.classes() {
            assert_eq!(e % exponent(&conjugacy_classes(&h.group).unwrap()), 0, "{name}");
        }
        let maximals = lattice.maximal_subgroups().classes;
        for m in &maximals {
            assert!(m.group.order() < g.order(), "{name}");
            // no proper subgroup strictly contains a maximal one
            for h in lattice.classes() {
                if h.group.order() > m.group.order() && h.group.order() < g.order() {
                    for c in lattice.conjugates_of(&h.ranks) {
                        let conj = PermGroup::new(c.iter().map(|&r| g.unrank(r as u64)).collect()).unwrap();
                        assert!(!m.group.is_subgroup_of(&conj), "{name}");
                    }
                }
            }
        }
        let phi = frattini(g).unwrap();
        assert!(g.normalizes(&phi), "{name}");
    }
}

#[test]
fn monolithic_socle_is_the_minimal_normal_subgroup() {
    for (name, g) in small_members() {
        let mins = minimal_normal_subgroups(g).unwrap();
        if mins.len() != 1 {
            continue;
        }
        // the recognizer targets primitive groups; a nilpotent normal Frattini
        // subgroup can only be nontrivial when the minimal normal subgroup is abelian
        if is_abelian(&mins[0]) && frattini(g).unwrap().order() != 1 {
            continue;
        }
        let data = recognize_monolithic(g, None).unwrap();
        assert!(data.socle.same_as(&mins[0]), "{name}");
    }
}

#[test]
fn crown_orders() {
    let cat = default_catalog().unwrap();
    for c in cat.crowns() {
        let base = cat.entry(&c.crown_of).unwrap().monolithic().unwrap();
        let crown = crown_power(&base, c.t).unwrap();
        let expected = base.socle.order().pow(c.t as u32 - 1) * base.group.order();
        assert_eq!(crown.group.order(), expected, "{}", c.name);
    }
}

#[test]
fn cohomology_of_catalog_modules() {
    let cat = default_catalog().unwrap();
    for e in cat.groups() {
        let Some(pres) = &e.presentation else { continue };
        let data = e.monolithic().unwrap();
        let Some(module) = &data.module else { continue };
        let h = h1_dimension(pres, module).unwrap();
        assert!(h.dim_h1 < module.dim(), "{}", e.name);
        let field = module.endomorphism_field().unwrap();
        assert_eq!(module.dim() % field.degree, 0, "{}", e.name);
        assert_eq!(field.size.pow(field.dim as u32), (module.p() as u128).pow(module.dim() as u32), "{}", e.name);
        let quotient = PermGroup::new(data.quotient_lifts.clone()).unwrap().order();
        let acting_soluble = is_soluble(&e.build().unwrap());
        if acting_soluble {
            assert_eq!(h.dim_h1, 0, "{}", e.name);
        }
        if data.socle.order() * quotient <= 100_000 {
            let complements = count_complements_by_lifting(&data, pres).unwrap();
            assert_eq!(complements, (module.p() as u128).pow(h.dim_z1 as u32), "{}", e.name);
        }
    }
}
