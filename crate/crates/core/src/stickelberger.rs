//! Stickelberger exponent sums `S(t) = sum_j [t p^j]_m` and the coset-sum
//! tests for purity and for the quadratic case.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arithmetic::{gcd, mul_mod, mult_order, UnitGroup};
use crate::error::{Error, Result};

/// `S(t)` on the cosets of `<p>` in `(Z/mZ)^x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StickelbergerProfile {
    pub m: u64,
    pub p: u64,
    pub f: u64,
    /// Index of `<p>`, i.e. the number of cosets.
    pub h: u64,
    /// Smallest coset member -> `S`.
    pub entries: BTreeMap<u64, u64>,
    /// Distinct values of `S`, ascending.
    pub values: Vec<u64>,
    /// Value -> every unit attaining it, ascending.
    pub partition: BTreeMap<u64, Vec<u64>>,
}

impl StickelbergerProfile {
    pub fn value_at(&self, t: u64) -> Option<u64> {
        self.partition
            .iter()
            .find(|(_, members)| members.binary_search(&(t % self.m)).is_ok())
            .map(|(&v, _)| v)
    }

    pub fn is_pure(&self) -> bool {
        self.values.len() == 1
    }
}

/// Two-valued profile whose level sets are the cosets of an index-2 subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticPartition {
    /// The subgroup, containing `<p>`.
    pub e0: Vec<u64>,
    pub e1: Vec<u64>,
    /// Smallest element of `e1`.
    pub s1: u64,
    pub a0: u64,
    pub a1: u64,
}

fn check_unit(x: u64, m: u64) -> Result<()> {
    if gcd(x % m, m) != 1 {
        return Err(Error::NotAUnit {
            value: x,
            modulus: m,
        });
    }
    Ok(())
}

#[inline]
fn walk_sum(t: u64, p: u64, f: u64, m: u64) -> u64 {
    let mut x = t % m;
    let mut s = 0u64;
    for _ in 0..f {
        s += x;
        x = mul_mod(x, p, m);
    }
    s
}

/// `sum_{j<f} [t p^j]_m` with representatives in `[1, m-1]`.
pub fn coset_sum(t: u64, p: u64, f: u64, m: u64) -> Result<u64> {
    check_unit(t, m)?;
    check_unit(p, m)?;
    f.checked_mul(m).ok_or(Error::Overflow("coset sum"))?;
    Ok(walk_sum(t, p, f, m))
}

pub fn profile(m: u64, p: u64) -> Result<StickelbergerProfile> {
    if m < 3 {
        return Err(Error::ModulusTooSmall { modulus: m, min: 3 });
    }
    check_unit(p, m)?;
    let f = mult_order(p, m)?;
    f.checked_mul(m).ok_or(Error::Overflow("coset sum"))?;
    let p = p % m;

    let mut value_of = vec![0u64; m as usize];
    let mut entries = BTreeMap::new();
    let mut phi = 0u64;
    for t in 1..m {
        if value_of[t as usize] != 0 || gcd(t, m) != 1 {
            continue;
        }
        let s = walk_sum(t, p, f, m);
        let mut x = t;
        for _ in 0..f {
            value_of[x as usize] = s;
            x = mul_mod(x, p, m);
        }
        entries.insert(t, s);
        phi += f;
    }
    let mut partition: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for (t, &s) in value_of.iter().enumerate() {
        if s != 0 {
            partition.entry(s).or_default().push(t as u64);
        }
    }
    Ok(StickelbergerProfile {
        m,
        p,
        f,
        h: phi / f,
        entries,
        values: partition.keys().copied().collect(),
        partition,
    })
}

/// `S(t) = f m / 2` for every unit `t`.
pub fn is_pure(m: u64, p: u64) -> Result<bool> {
    let prof = profile(m, p)?;
    Ok(prof.is_pure() && prof.values[0] * 2 == prof.f * m)
}

/// The index-2 split of a two-valued profile, if the level set of `S(1)` is
/// a subgroup. Two values without closure mean a larger field degree and
/// yield `None`.
pub fn quadratic_partition(m: u64, p: u64) -> Result<Option<QuadraticPartition>> {
    let prof = profile(m, p)?;
    let group = UnitGroup::new(m)?;
    Ok(quadratic_partition_of(&prof, &group))
}

pub fn quadratic_partition_of(
    prof: &StickelbergerProfile,
    group: &UnitGroup,
) -> Option<QuadraticPartition> {
    if prof.values.len() != 2 {
        return None;
    }
    let a0 = prof.entries[&1];
    let a1 = prof.values.iter().copied().find(|&v| v != a0)?;
    let e0 = prof.partition[&a0].clone();
    group.index_two_signature(&e0).ok()?;
    let e1 = prof.partition[&a1].clone();
    Some(QuadraticPartition {
        s1: e1[0],
        e0,
        e1,
        a0,
        a1,
    })
}

/// Scans `S(t)` over units in increasing order and stops at the first third
/// distinct value. Returns `true` when more than two values occur.
///
/// No coset bookkeeping, so memory stays constant; used as a cheap screen
/// before full classification of large moduli.
pub fn exceeds_two_values(m: u64, p: u64, f: u64) -> bool {
    let mut seen: [Option<u64>; 2] = [None, None];
    for t in (1..m).filter(|&t| gcd(t, m) == 1) {
        let s = walk_sum(t, p, f, m);
        match seen {
            [None, _] => seen[0] = Some(s),
            [Some(a), None] if a != s => seen[1] = Some(s),
            [Some(a), Some(b)] if a != s && b != s => return true,
            _ => {}
        }
    }
    false
}
