//! Exact arithmetic: primes, factoring, primitive prime divisors, partitions
//! and the family audits for simple groups of Lie type.

mod audit;
mod partitions;
mod primes;

pub use audit::{
    audit_family, partition_class_bound_holds, six_power_bound_holds, AuditVerdict,
    ExceptionalType, Family, Regime, AUDIT_MAX_N, AUDIT_MAX_Q, LINEAR_RANK_TWO_EXCEPTIONS,
};
pub use partitions::{large_cycle_prime, partition_count, partition_counts, PARTITION_CAP};
pub use primes::{
    cyclotomic_value, factorize, factorize_u128, is_prime, is_prime_big, multiplicative_order,
    prime_divisors, zsigmondy, DEFAULT_BUDGET,
};

use crate::error::{Error, Result};

/// Canonical simple-group name: alternating groups as `A<n>`, rank-2 linear
/// groups as `L2(q)` and the rest verbatim, with small isomorphisms resolved
/// (`L2(4) = L2(5) = A5`, `L2(9) = A6`, `L3(2) = L2(7)`, `L4(2) = A8`).
pub fn canonical_simple_name(name: &str) -> Result<String> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let upper = compact.to_ascii_uppercase();
    let unknown = || Error::UnknownName(name.to_string());
    if let Some(rest) = upper.strip_prefix("ALT").or_else(|| upper.strip_prefix('A')) {
        let rest = rest.trim_start_matches('(').trim_end_matches(')');
        let n: u64 = rest.parse().map_err(|_| unknown())?;
        if n < 5 {
            return Err(unknown());
        }
        return Ok(format!("A{n}"));
    }
    let classical = |prefix: &str, long: &str| -> Option<(String, u64, u64)> {
        if let Some(rest) = upper.strip_prefix(long) {
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            let (n, q) = inner.split_once(',')?;
            return Some((prefix.to_string(), n.parse().ok()?, q.parse().ok()?));
        }
        let rest = upper.strip_prefix(prefix)?;
        let (n, tail) = rest.split_once('(')?;
        let q = tail.strip_suffix(')')?;
        Some((prefix.to_string(), n.parse().ok()?, q.parse().ok()?))
    };
    if let Some((kind, n, q)) = classical("L", "PSL").or_else(|| classical("U", "PSU")) {
        let f = factorize_u128(q as u128);
        if f.len() != 1 || n < 2 {
            return Err(unknown());
        }
        let canonical = match (kind.as_str(), n, q) {
            ("L", 2, 4) | ("L", 2, 5) => "A5".to_string(),
            ("L", 2, 9) => "A6".to_string(),
            ("L", 3, 2) => "L2(7)".to_string(),
            ("L", 4, 2) => "A8".to_string(),
            ("L", 2, 2) | ("L", 2, 3) | ("U", 2, _) | ("U", 3, 2) => return Err(unknown()),
            _ => format!("{kind}{n}({q})"),
        };
        return Ok(canonical);
    }
    if let Some(rest) = upper.strip_prefix("SZ(") {
        let q: u64 = rest.strip_suffix(')').and_then(|s| s.parse().ok()).ok_or_else(unknown)?;
        if q < 8 || !q.is_power_of_two() || q.trailing_zeros() % 2 == 0 {
            return Err(unknown());
        }
        return Ok(format!("Sz({q})"));
    }
    const SPORADIC: [&str; 26] = [
        "M11", "M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "HS", "MCL", "SUZ", "CO1",
        "CO2", "CO3", "HE", "RU", "ON", "LY", "TH", "HN", "FI22", "FI23", "FI24'", "B", "M",
    ];
    if SPORADIC.contains(&upper.as_str()) {
        return Ok(compact);
    }
    Err(unknown())
}

/// Membership in the finite exceptional set
/// `{A_n : n ≤ 7} ∪ {L2(q) : q ∈ {7, 8, 11, 27}} ∪ {L3(4)}`.
pub fn in_exceptional_set(name: &str) -> Result<bool> {
    let c = canonical_simple_name(name)?;
    Ok(matches!(
        c.as_str(),
        "A5" | "A6" | "A7" | "L2(7)" | "L2(8)" | "L2(11)" | "L2(27)" | "L3(4)"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceptional_set_membership() {
        assert!(in_exceptional_set("A7").unwrap());
        assert!(in_exceptional_set("L2(27)").unwrap());
        assert!(!in_exceptional_set("A8").unwrap());
        assert!(in_exceptional_set("L2(4)").unwrap());
        assert!(in_exceptional_set("PSL(2,9)").unwrap());
        assert!(in_exceptional_set("L3(2)").unwrap());
        assert!(!in_exceptional_set("L2(13)").unwrap());
        assert!(!in_exceptional_set("M11").unwrap());
        assert!(!in_exceptional_set("Sz(8)").unwrap());
        assert!(in_exceptional_set("L3(4)").unwrap());
        assert!(in_exceptional_set("nonsense").is_err());
        assert!(in_exceptional_set("A4").is_err());
        assert!(in_exceptional_set("L2(6)").is_err());
    }

    #[test]
    fn canonical_names() {
        assert_eq!(canonical_simple_name("psl(2, 5)").unwrap(), "A5");
        assert_eq!(canonical_simple_name("L2(16)").unwrap(), "L2(16)");
        assert_eq!(canonical_simple_name("U3(3)").unwrap(), "U3(3)");
        assert_eq!(canonical_simple_name("L4(2)").unwrap(), "A8");
    }
}
