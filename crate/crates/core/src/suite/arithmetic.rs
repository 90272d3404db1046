use num_bigint::BigUint;
use serde_json::json;

use super::Check;
use crate::arith::{
    audit_family, factorize_u128, is_prime, large_cycle_prime, partition_class_bound_holds, partition_count,
    six_power_bound_holds, zsigmondy, ExceptionalType, Family, LINEAR_RANK_TWO_EXCEPTIONS,
};
use crate::error::Result;
use crate::report::Verdict;

fn enumerate_partitions(n: usize, max_part: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n)).map(|k| enumerate_partitions(n - k, k)).sum()
}

fn prime_powers(limit: u64) -> impl Iterator<Item = (u64, u64, u32)> {
    (2..=limit).filter_map(|q| {
        let f = factorize_u128(q as u128);
        (f.len() == 1).then(|| (q, f[0].0 as u64, f[0].1))
    })
}

/// `(q, pass)` for every prime power `q` in range where the audit applies.
fn audit_grid(family: Family, n: u32, limit: u64) -> Result<Vec<(u64, bool)>> {
    let mut out = Vec::new();
    for (q, p, e) in prime_powers(limit) {
        match audit_family(family, n, p, e) {
            Ok(v) => out.push((q, v.pass)),
            Err(crate::error::Error::InvalidArgument(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn failing(grid: &[(u64, bool)]) -> Vec<u64> {
    grid.iter().filter(|(_, ok)| !ok).map(|&(q, _)| q).collect()
}

pub(super) fn arithmetic() -> Vec<Check> {
    vec![
        Check::single("partition-count-enumeration", |_| {
            let bad: Vec<usize> = (0..=40)
                .filter(|&n| partition_count(n).map_or(true, |p| p != BigUint::from(enumerate_partitions(n, n))))
                .collect();
            Ok(Verdict::equal("partition recurrence agrees with enumeration for n ≤ 40", "n = 0..40", bad.len(), 0)
                .with_witness(json!({"mismatches": bad})))
        }),
        Check::single("partition-class-bound", |_| {
            let mut bad = Vec::new();
            for n in 1..=100 {
                if !partition_class_bound_holds(n)? {
                    bad.push(n);
                }
            }
            Ok(Verdict::equal("n·p(n) + 1 ≤ n·2^n", "n = 1..100", bad.len(), 0).with_witness(json!({"failures": bad})))
        }),
        Check::single("six-power-bounds", |_| {
            let mut bad = Vec::new();
            for n in 5..=200u32 {
                for f in [Family::Symplectic, Family::Orthogonal] {
                    if !six_power_bound_holds(f, n)? {
                        bad.push(format!("{f} {n}"));
                    }
                }
            }
            Ok(Verdict::equal("symplectic and orthogonal class estimates stay below 6^n", "n = 5..200", bad.len(), 0)
                .with_witness(json!({"failures": bad})))
        }),
        Check::single("zsigmondy-2-6", |_| {
            let z: Vec<String> = zsigmondy(2, 6)?.iter().map(|p| p.to_string()).collect();
            Ok(Verdict::equal("2^6 − 1 has no primitive prime divisor", "q = 2, n = 6", z.join(","), String::new()))
        }),
        Check::single("zsigmondy-2-14", |_| {
            let z: Vec<String> = zsigmondy(2, 14)?.iter().map(|p| p.to_string()).collect();
            Ok(Verdict::equal("primitive prime divisors of 2^14 − 1", "q = 2, n = 14", z.join(","), "43".to_string()))
        }),
        Check::single("large-cycle-prime-7", |_| {
            Ok(Verdict::equal("prime used for A7", "n = 7", large_cycle_prime(7)?, 5))
        }),
        Check::single("large-cycle-prime-range", |_| {
            let mut bad = Vec::new();
            for n in 8..=500u64 {
                let r = large_cycle_prime(n)?;
                let least = (n / 2 + 1..n - 2).find(|&k| is_prime(k));
                if !(is_prime(r) && 2 * r > n && r + 2 < n && least == Some(r)) {
                    bad.push(n);
                }
            }
            Ok(Verdict::equal("least prime r with n/2 < r < n − 2", "n = 8..500", bad.len(), 0)
                .with_witness(json!({"failures": bad})))
        }),
        Check::single("audit-linear-rank-two-even", |_| {
            let grid: Vec<(u32, bool)> =
                (2..=20).map(|e| audit_family(Family::Linear, 2, 2, e).map(|v| (e, v.pass))).collect::<Result<_>>()?;
            let wrong: Vec<u32> = grid.iter().filter(|&&(e, ok)| ok != (e >= 4)).map(|&(e, _)| e).collect();
            Ok(Verdict::equal("L2(2^e) passes exactly when e ≥ 4", "e = 2..20", wrong.len(), 0)
                .with_witness(json!({"wrong": wrong})))
        }),
        Check::single("audit-linear-rank-two-exceptions", |_| {
            let grid = audit_grid(Family::Linear, 2, 5000)?;
            Ok(Verdict::equal(
                "rank-two linear failures are exactly the listed fields",
                "q ≤ 5000",
                format!("{:?}", failing(&grid)),
                format!("{:?}", LINEAR_RANK_TWO_EXCEPTIONS),
            ))
        }),
        Check::single("audit-linear-rank-three", |_| {
            let grid = audit_grid(Family::Linear, 3, 2000)?;
            Ok(Verdict::equal("L3(q) fails only for q ∈ {2, 4}", "q ≤ 2000", format!("{:?}", failing(&grid)), "[2, 4]".into()))
        }),
        Check::single("audit-unitary-rank-three", |_| {
            let grid = audit_grid(Family::Unitary, 3, 2000)?;
            Ok(Verdict::equal("U3(q) always passes", "3 ≤ q ≤ 2000", failing(&grid).len(), 0))
        }),
        Check::single("audit-generic-linear", |_| {
            let mut linear_fail = Vec::new();
            let mut unitary_fail = Vec::new();
            for n in 4..=12u32 {
                for (q, p, e) in prime_powers(64) {
                    if !audit_family(Family::Linear, n, p, e)?.pass {
                        linear_fail.push((n, q));
                    }
                    if !audit_family(Family::Unitary, n, p, e)?.pass {
                        unitary_fail.push((n, q));
                    }
                }
            }
            Ok(Verdict::equal(
                "generic estimate fails only at (n, q) ∈ {(4,2), (4,3), (5,2)}, where exact values pass",
                "n = 4..12, q ≤ 64",
                format!("linear {linear_fail:?}, unitary {unitary_fail:?}"),
                "linear [], unitary [(4, 2), (4, 3), (5, 2)]".to_string(),
            ))
        }),
        Check::single("audit-symplectic-orthogonal", |_| {
            let mut bad = Vec::new();
            for f in [Family::Symplectic, Family::Orthogonal] {
                for n in 2..=12u32 {
                    for (q, p, e) in prime_powers(128) {
                        match audit_family(f, n, p, e) {
                            Ok(v) if !v.pass => bad.push(format!("{f} n={n} q={q}")),
                            _ => {}
                        }
                    }
                }
            }
            let tight = audit_family(Family::Orthogonal, 3, 2, 1)?;
            Ok(Verdict::equal("symplectic and orthogonal audits pass", "rank 2..12, q ≤ 128", bad.len(), 0)
                .with_witness(json!({"failures": bad, "tight_O7_2": [tight.lhs.to_string(), tight.rhs.to_string()]})))
        }),
        Check::single("audit-exceptional", |_| {
            use ExceptionalType::*;
            let mut fails = Vec::new();
            for t in [F4, E6, E6Twisted, E7, E8, G2, Suzuki, Triality, Ree, ReeF4] {
                for (q, p, e) in prime_powers(1024) {
                    if let Ok(v) = audit_family(Family::Exceptional(t), 0, p, e) {
                        if !v.pass {
                            fails.push(format!("{} q={q}", Family::Exceptional(t)));
                        }
                    }
                }
            }
            Ok(Verdict::equal("exceptional types pass except Sz(2)", "q ≤ 1024", format!("{fails:?}"), "[\"2B2 q=2\"]".into()))
        }),
    ]
}
