//! Argument formats shared by the subcommands.

use std::fs;

use cig_core::gf::{GFMatrix, ModuleAction, Presentation};
use cig_core::{Catalog, Error, PermGroup, Permutation, PrimeSet, Result};

/// A catalog name or alias, or an inline group `[degree:](cycles);(cycles)...`.
pub fn group(catalog: &Catalog, spec: &str) -> Result<PermGroup> {
    if catalog.get(spec).is_some() {
        return catalog.build(spec);
    }
    if !spec.contains('(') {
        return Err(Error::UnknownName(spec.to_string()));
    }
    let (degree, gens) = match spec.split_once(':') {
        Some((d, rest)) => (
            Some(d.trim().parse::<usize>().map_err(|_| invalid(format!("bad degree {d:?}")))?),
            rest,
        ),
        None => (None, spec),
    };
    let n = match degree {
        Some(n) => n,
        None => elements(gens, None)?.iter().map(Permutation::degree).max().unwrap_or(1),
    };
    PermGroup::new(elements(gens, Some(n))?)
}

/// `;`-separated permutations in cycle notation.
pub fn elements(spec: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse(s, degree))
        .collect()
}

pub fn prime_set(primes: &[u64]) -> Result<PrimeSet> {
    PrimeSet::new(primes.to_vec())
}

/// `ngens:word;word;...` with words of signed 1-based generator indices, e.g.
/// `2:1 1;2 2 2;1 2 1 2 1 2 1 2 1 2`.
pub fn presentation(spec: &str) -> Result<Presentation> {
    let (n, words) = spec
        .split_once(':')
        .ok_or_else(|| invalid("presentation must look like ngens:word;word".into()))?;
    let ngens = n.trim().parse().map_err(|_| invalid(format!("bad generator count {n:?}")))?;
    let relators = words
        .split(';')
        .map(|w| {
            w.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|x| x.parse::<i32>().map_err(|_| invalid(format!("bad relator letter {x:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Presentation::new(ngens, relators)
}

#[derive(serde::Deserialize)]
struct ModuleSpec {
    p: u32,
    matrices: Vec<Vec<Vec<i64>>>,
}

/// Inline JSON or a path to JSON: `{"p": 7, "matrices": [[[3]]]}`, one matrix
/// per presentation generator, acting on row vectors.
pub fn module(spec: &str) -> Result<ModuleAction> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec)?
    };
    let m: ModuleSpec = serde_json::from_str(&text)?;
    let dim = m.matrices.first().map_or(0, Vec::len);
    let actors = m
        .matrices
        .iter()
        .map(|rows| GFMatrix::from_rows(m.p, rows))
        .collect::<Result<Vec<_>>>()?;
    ModuleAction::new(m.p, dim, actors)
}

/// `n=2..5,q=2..64` (either bound may be a single value).
pub fn grid(spec: &str) -> Result<((u32, u32), (u64, u64))> {
    let mut n = None;
    let mut q = None;
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("grid entry {part:?} is not key=range")))?;
        let (lo, hi) = match v.split_once("..") {
            Some((a, b)) => (a, b.trim_start_matches('=')),
            None => (v, v),
        };
        let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| invalid(format!("bad bound {s:?}")));
        let range = (parse(lo)?, parse(hi)?);
        match k.trim() {
            "n" => n = Some((range.0 as u32, range.1 as u32)),
            "q" => q = Some(range),
            other => return Err(invalid(format!("unknown grid key {other:?}"))),
        }
    }
    Ok((n.unwrap_or((2, 2)), q.ok_or_else(|| invalid("grid needs a q range".into()))?))
}

fn invalid(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_groups() {
        let cat = cig_core::default_catalog().unwrap();
        assert_eq!(group(cat, "(1 2 3);(1 2)").unwrap().order(), 6);
        assert_eq!(group(cat, "5:(1 2 3)").unwrap().degree(), 5);
        assert_eq!(group(cat, "a5").unwrap().order(), 60);
        assert!(group(cat, "nonsense").is_err());
    }

    #[test]
    fn presentations_and_grids() {
        let p = presentation("2:1 1;2 2 2;1,2,1,2,1,2,1,2,1,2").unwrap();
        assert_eq!(p.relators[2].len(), 10);
        assert!(presentation("2:1 3").is_err());
        assert_eq!(grid("n=2..4,q=2..64").unwrap(), ((2, 4), (2, 64)));
        assert_eq!(grid("q=8").unwrap(), ((2, 2), (8, 8)));
        assert!(grid("n=2").is_err());
    }
}
