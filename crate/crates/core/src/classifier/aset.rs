use std::collections::BTreeSet;

use serde::Serialize;

/// Pairs `0 < a_i < d_i` with `a1/d1 + a2/d2` an integer and `a1 + a2` of a
/// fixed parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct APlusMinusSet {
    pub d1: u64,
    pub d2: u64,
    /// `true` for the odd-sum set.
    pub odd: bool,
    pub members: BTreeSet<(u64, u64)>,
}

impl APlusMinusSet {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn collect(d1: u64, d2: u64, odd: bool) -> APlusMinusSet {
    let mut members = BTreeSet::new();
    for a1 in 1..d1 {
        for a2 in 1..d2 {
            // a1/d1 + a2/d2 in Z  <=>  d1 d2 | a1 d2 + a2 d1
            if (a1 * d2 + a2 * d1).is_multiple_of(d1 * d2) && ((a1 + a2) % 2 == 1) == odd {
                members.insert((a1, a2));
            }
        }
    }
    APlusMinusSet {
        d1,
        d2,
        odd,
        members,
    }
}

pub fn a_minus_set(d1: u64, d2: u64) -> APlusMinusSet {
    collect(d1, d2, true)
}

pub fn a_plus_set(d1: u64, d2: u64) -> APlusMinusSet {
    collect(d1, d2, false)
}
