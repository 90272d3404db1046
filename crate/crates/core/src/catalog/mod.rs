//! Bundled group fixtures with per-datum provenance.
//!
//! Entries are JSON records with cycle-notation generators. Every entry is
//! validated on load: the declared order is recomputed, claimed simplicity
//! and solubility are checked where feasible, and quotient presentations are
//! evaluated on the listed lifts.

mod builders;
mod fq;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use builders::{
    alternating, asl_crown_elements, build_asl24, build_frobenius, cyclic, projective_special_linear, symmetric, MonolithicFixture,
};
pub use fq::{SmallField, SMALL_FIELD_CAP};

use crate::classes::ClassTable;
use crate::crowns::{crown_power, CrownSpec};
use crate::error::{Error, Result};
use crate::gf::Presentation;
use crate::perm::{PermGroup, Permutation};
use crate::structure::{derived_subgroup, is_soluble, minimal_normal_subgroups, recognize_monolithic, MonolithicData};

const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.json");

/// Largest order whose claimed simplicity is verified through the full
/// normal-subgroup scan; larger entries are only checked to be perfect.
pub const SIMPLICITY_CHECK_CAP: u128 = 100_000;

/// Where a datum comes from. External-reference data is never reported as computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Asserted by the source the group was taken from, not recomputed.
    Stated,
    ExternalReference,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(with = "order_string")]
    pub order: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soluble: Option<bool>,
    pub simple: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    /// Lifts of the presentation generators, when `presentation` is present.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient_lifts: Vec<String>,
    #[serde(default)]
    pub provenance: BTreeMap<String, Provenance>,
}

/// A crown-based power `L_t` of another entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownEntry {
    pub name: String,
    pub crown_of: String,
    pub t: usize,
    #[serde(default)]
    pub provenance: BTreeMap<String, Provenance>,
}

mod order_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("order {s:?} is not an integer")))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Crown(CrownEntry),
    Group(CatalogEntry),
}

#[derive(Deserialize)]
struct RawCatalog {
    version: u32,
    entries: Vec<serde_json::Value>,
}

/// A catalog member after name resolution.
#[derive(Clone, Copy, Debug)]
pub enum Member<'a> {
    Group(&'a CatalogEntry),
    Crown(&'a CrownEntry),
}

#[derive(Clone, Debug)]
pub struct Catalog {
    groups: Vec<CatalogEntry>,
    crowns: Vec<CrownEntry>,
    index: HashMap<String, Member2>,
}

#[derive(Clone, Copy, Debug)]
enum Member2 {
    Group(usize),
    Crown(usize),
}

fn catalog_error(entry: &str, message: impl Into<String>) -> Error {
    Error::Catalog {
        entry: entry.to_string(),
        message: message.into(),
    }
}

fn key(name: &str) -> String {
    name.trim().to_ascii_lowercase()
}

impl CatalogEntry {
    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::parse(g, Some(self.degree)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| catalog_error(&self.name, format!("generators: {e}")))?;
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(gens)
    }

    pub fn lifts(&self) -> Result<Vec<Permutation>> {
        self.quotient_lifts
            .iter()
            .map(|g| Permutation::parse(g, Some(self.degree)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| catalog_error(&self.name, format!("quotient_lifts: {e}")))
    }

    pub fn provenance_of(&self, datum: &str) -> Option<Provenance> {
        self.provenance.get(datum).copied()
    }

    /// Monolithic structure, using the listed lifts for the socle module.
    pub fn monolithic(&self) -> Result<MonolithicData> {
        let g = self.build()?;
        let lifts = self.lifts()?;
        recognize_monolithic(&g, (!lifts.is_empty()).then_some(lifts.as_slice()))
    }

    /// Order, simplicity, solubility and presentation checks.
    pub fn validate(&self) -> Result<PermGroup> {
        let fail = |m: String| catalog_error(&self.name, m);
        let g = self.build()?;
        if g.order() != self.order {
            return Err(fail(format!("order: declared {} but generators give {}", self.order, g.order())));
        }
        let soluble = is_soluble(&g);
        if let Some(s) = self.soluble {
            if s != soluble {
                return Err(fail(format!("soluble: declared {s} but computed {soluble}")));
            }
        }
        if self.simple {
            if soluble && !crate::arith::is_prime(g.order() as u64) {
                return Err(fail("simple: group is soluble of composite order".into()));
            }
            if g.order() <= SIMPLICITY_CHECK_CAP {
                let mins = minimal_normal_subgroups(&g)?;
                if mins.len() != 1 || mins[0].order() != g.order() {
                    return Err(fail("simple: has a proper nontrivial normal subgroup".into()));
                }
            } else if derived_subgroup(&g).order() != g.order() {
                return Err(fail("simple: group is not perfect".into()));
            }
        }
        if self.out_order.is_some() && self.provenance_of("out_order").is_none() {
            return Err(fail("out_order: missing provenance".into()));
        }
        match (&self.presentation, self.quotient_lifts.is_empty()) {
            (Some(pres), false) => {
                let data = self.monolithic()?;
                let lifts = &data.quotient_lifts;
                if lifts.len() != pres.ngens {
                    return Err(fail("presentation: generator count differs from lifts".into()));
                }
                let inv: Vec<Permutation> = lifts.iter().map(|x| x.inverse()).collect();
                for rel in &pres.relators {
                    let w = Presentation::evaluate(rel, lifts, &inv, g.identity(), |a, b| a.mul(b));
                    if !data.socle.has(&w) {
                        return Err(fail(format!("presentation: relator {rel:?} is not trivial modulo the socle")));
                    }
                }
            }
            (None, true) => {}
            _ => return Err(fail("presentation and quotient_lifts must be given together".into())),
        }
        Ok(g)
    }
}

impl Catalog {
    /// Parses and validates a catalog document.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCatalog = serde_json::from_str(text)?;
        if raw.version != 1 {
            return Err(Error::InvalidArgument(format!("unsupported catalog version {}", raw.version)));
        }
        let mut groups = Vec::new();
        let mut crowns = Vec::new();
        for (i, value) in raw.entries.into_iter().enumerate() {
            let name = value
                .get("name")
                .and_then(|n| n.as_str())
                .map_or_else(|| format!("#{i}"), str::to_string);
            match serde_json::from_value::<RawEntry>(value) {
                Ok(RawEntry::Group(e)) => groups.push(e),
                Ok(RawEntry::Crown(c)) => crowns.push(c),
                Err(e) => return Err(catalog_error(&name, format!("malformed entry: {e}"))),
            }
        }
        let mut index = HashMap::new();
        let mut register = |name: &str, m: Member2| {
            if index.insert(key(name), m).is_some() {
                Err(catalog_error(name, "duplicate name or alias"))
            } else {
                Ok(())
            }
        };
        for (i, e) in groups.iter().enumerate() {
            register(&e.name, Member2::Group(i))?;
            for a in &e.aliases {
                register(a, Member2::Group(i))?;
            }
        }
        for (i, c) in crowns.iter().enumerate() {
            register(&c.name, Member2::Crown(i))?;
        }
        let catalog = Catalog { groups, crowns, index };
        catalog.validate()?;
        Ok(catalog)
    }

    fn validate(&self) -> Result<()> {
        use rayon::prelude::*;
        self.groups.par_iter().try_for_each(|e| e.validate().map(|_| ()))?;
        for c in &self.crowns {
            if c.t == 0 {
                return Err(catalog_error(&c.name, "t must be positive"));
            }
            match self.get(&c.crown_of) {
                Some(Member::Group(_)) => {}
                _ => return Err(catalog_error(&c.name, format!("crown_of: unknown group {}", c.crown_of))),
            }
        }
        Ok(())
    }

    pub fn groups(&self) -> &[CatalogEntry] {
        &self.groups
    }

    pub fn crowns(&self) -> &[CrownEntry] {
        &self.crowns
    }

    pub fn len(&self) -> usize {
        self.groups.len() + self.crowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Lookup by name or alias, ignoring ASCII case.
    pub fn get(&self, name: &str) -> Option<Member<'_>> {
        self.index.get(&key(name)).map(|m| match *m {
            Member2::Group(i) => Member::Group(&self.groups[i]),
            Member2::Crown(i) => Member::Crown(&self.crowns[i]),
        })
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry> {
        match self.get(name) {
            Some(Member::Group(e)) => Ok(e),
            Some(Member::Crown(_)) => Err(catalog_error(name, "is a crown, not a base group")),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn crown(&self, name: &str) -> Result<CrownSpec> {
        match self.get(name) {
            Some(Member::Crown(c)) => crown_power(&self.entry(&c.crown_of)?.monolithic()?, c.t),
            Some(Member::Group(_)) => Err(catalog_error(name, "is not a crown entry")),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }

    /// `|Out S|` of the unique simple base group of the given order, if the
    /// catalog records one (simple groups of equal order are ambiguous).
    pub fn simple_out_order(&self, order: u128) -> Option<u64> {
        let hits: Vec<_> = self.groups.iter().filter(|e| e.simple && e.order == order).collect();
        match hits.as_slice() {
            [e] => e.out_order,
            _ => None,
        }
    }

    /// The permutation group for any member.
    pub fn build(&self, name: &str) -> Result<PermGroup> {
        match self.get(name) {
            Some(Member::Group(e)) => e.build(),
            Some(Member::Crown(_)) => Ok(self.crown(name)?.group),
            None => Err(Error::UnknownName(name.to_string())),
        }
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    Catalog::from_json(&std::fs::read_to_string(path)?)
}

/// The bundled catalog; parsed and validated once per process.
pub fn default_catalog() -> Result<&'static Catalog> {
    static CATALOG: std::sync::OnceLock<std::result::Result<Catalog, String>> = std::sync::OnceLock::new();
    CATALOG
        .get_or_init(|| Catalog::from_json(DEFAULT_CATALOG).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| catalog_error("<bundled>", e.clone()))
}

/// Isomorphism-invariant fingerprint: the sorted multiset of
/// (element order, class size) pairs.
pub fn class_fingerprint(table: &ClassTable) -> Vec<(u64, u128)> {
    let mut fp: Vec<(u64, u128)> = table.classes().iter().map(|c| (c.order, c.size)).collect();
    fp.sort_unstable();
    fp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::conjugacy_classes;

    #[test]
    fn bundled_catalog_validates() {
        let cat = default_catalog().unwrap();
        assert!(cat.groups().len() >= 30);
        assert!(cat.crowns().iter().any(|c| c.name == "ASL2(4)^2"));
        let a5 = cat.entry("A5").unwrap();
        assert_eq!(a5.provenance_of("out_order"), Some(Provenance::ExternalReference));
    }

    #[test]
    fn alias_resolves_to_isomorphic_group() {
        let cat = default_catalog().unwrap();
        let via_alias = cat.entry("l2(4)").unwrap();
        assert_eq!(via_alias.name, "A5");
        let fp = class_fingerprint(&conjugacy_classes(&via_alias.build().unwrap()).unwrap());
        let psl = projective_special_linear(2, 4).unwrap();
        assert_eq!(fp, class_fingerprint(&conjugacy_classes(&psl).unwrap()));
    }

    #[test]
    fn catalog_generators_match_builders() {
        let cat = default_catalog().unwrap();
        for (name, n, q) in [("L2(8)", 2, 8), ("L2(16)", 2, 16), ("L3(3)", 3, 3), ("L3(4)", 3, 4), ("L2(25)", 2, 25)] {
            let g = cat.build(name).unwrap();
            let h = projective_special_linear(n, q).unwrap();
            assert_eq!((g.order(), g.degree()), (h.order(), h.degree()), "{name}");
        }
    }

    fn doc(entry: &str) -> String {
        format!("{{\"version\": 1, \"entries\": [{entry}]}}")
    }

    #[test]
    fn wrong_order_is_rejected() {
        let bad = doc(r#"{"name": "A5", "degree": 5, "generators": ["(1 2 3)", "(1 2 3 4 5)"], "order": "120", "simple": true}"#);
        match Catalog::from_json(&bad) {
            Err(Error::Catalog { entry, message }) => {
                assert_eq!(entry, "A5");
                assert!(message.starts_with("order"), "{message}");
            }
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn false_simplicity_is_rejected() {
        let bad = doc(r#"{"name": "S5", "degree": 5, "generators": ["(1 2)", "(1 2 3 4 5)"], "order": "120", "simple": true}"#);
        assert!(matches!(Catalog::from_json(&bad), Err(Error::Catalog { .. })));
    }

    #[test]
    fn parse_error_has_position() {
        let err = Catalog::from_json("{\"version\": 1,\n \"entries\": [ oops ]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn crown_entries_build() {
        let cat = default_catalog().unwrap();
        let c = cat.crown("C7:C6^2").unwrap();
        assert_eq!(c.group.order(), 7 * 42);
        assert!(cat.crown("nope").is_err());
    }
}
