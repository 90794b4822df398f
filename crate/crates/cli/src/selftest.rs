//! Exhaustive self-check suites over small moduli.

use std::sync::Arc;

use quadgauss::arithmetic::{gcd, UnitGroup};
use quadgauss::characters::{
    characters_of, criterion_quadratic_in, verify_ber_identity, CyclotomicElement,
};
use quadgauss::classifier::a_minus_set;
use quadgauss::stickelberger::{profile, quadratic_partition_of};
use quadgauss::Result;
use rayon::prelude::*;

pub struct SuiteResult {
    pub name: String,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect(name: String, per_item: Vec<Result<(u64, Vec<String>)>>) -> Result<SuiteResult> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for item in per_item {
        let (n, f) = item?;
        checks += n;
        failures.extend(f);
    }
    Ok(SuiteResult {
        name,
        checks,
        failures,
    })
}

/// The identity behind the first Bernoulli number, for every nontrivial
/// character modulo every `m` in `3..=max_m`.
pub fn bernoulli(max_m: u64) -> Result<SuiteResult> {
    let items = (3..=max_m)
        .into_par_iter()
        .map(|m| {
            let g = Arc::new(UnitGroup::new(m)?);
            let mut n = 0;
            let mut bad = Vec::new();
            for chi in characters_of(&g).into_iter().filter(|c| !c.is_principal()) {
                n += 1;
                if !verify_ber_identity(&chi)? {
                    bad.push(format!("m={m} chi={:?}", chi.exponents()));
                }
            }
            Ok((n, bad))
        })
        .collect();
    collect(format!("bernoulli identity, m <= {max_m}"), items)
}

/// `sum_chi chi(x)` is `phi(m)` at `x = 1` and zero elsewhere, exactly.
pub fn orthogonality(max_m: u64) -> Result<SuiteResult> {
    let items = (3..=max_m)
        .into_par_iter()
        .map(|m| {
            let g = Arc::new(UnitGroup::new(m)?);
            let n = g.exponent();
            let chars = characters_of(&g);
            let mut bad = Vec::new();
            let mut count = 0;
            for x in g.units() {
                let mut raw = vec![0i128; n as usize];
                for chi in &chars {
                    let r = chi.evaluate(x).root().expect("unit argument");
                    raw[(r.numerator() * (n / r.denominator())) as usize] += 1;
                }
                let sum = CyclotomicElement::from_power_sums(n, &raw, 1);
                let expected = if x == 1 { g.order() as i128 } else { 0 };
                count += 1;
                if sum != CyclotomicElement::from_int(n, expected) {
                    bad.push(format!("m={m} x={x}"));
                }
            }
            Ok((count, bad))
        })
        .collect();
    collect(format!("character orthogonality, m <= {max_m}"), items)
}

/// Coset-sum partition present iff the character criterion holds, with the
/// same `E0`.
pub fn oracle_equivalence(max_m: u64) -> Result<SuiteResult> {
    let items = (3..=max_m)
        .into_par_iter()
        .map(|m| {
            let g = Arc::new(UnitGroup::new(m)?);
            let mut bad = Vec::new();
            let mut count = 0;
            for p in g.units() {
                let part = quadratic_partition_of(&profile(m, p)?, &g);
                let crit = criterion_quadratic_in(&g, p)?;
                count += 1;
                let same = match (&part, &crit.witness) {
                    (Some(q), Some(w)) => crit.holds && q.e0 == w.e0,
                    (None, None) => !crit.holds,
                    _ => false,
                };
                if !same {
                    bad.push(format!("m={m} p={p}"));
                }
            }
            Ok((count, bad))
        })
        .collect();
    collect(format!("oracle equivalence, m <= {max_m}"), items)
}

/// Emptiness of `A^-(d1, d2)`: for even `gcd`, empty iff `v2(d1) = v2(d2)`;
/// for odd `gcd`, empty iff `gcd = 1`. Plus the single-element case for
/// `f1 = 2 mod 4`, `f2 = 0 mod 4`.
pub fn a_sets(max_d: u64) -> SuiteResult {
    let mut checks = 0;
    let mut failures = Vec::new();
    for d1 in 1..=max_d {
        for d2 in 1..=max_d {
            let g = gcd(d1, d2);
            let empty = a_minus_set(d1, d2).is_empty();
            let predicted = if g.is_multiple_of(2) {
                d1.trailing_zeros() == d2.trailing_zeros()
            } else {
                g == 1
            };
            checks += 1;
            if empty != predicted {
                failures.push(format!("A^-({d1},{d2}) empty={empty}"));
            }
            if d1 % 4 == 2 && d2 % 4 == 0 {
                let set = a_minus_set(d1, d2);
                let single = set.members.len() == 1 && set.members.contains(&(d1 / 2, d2 / 2));
                checks += 1;
                if single != (gcd(d1 / 2, d2 / 2) == 1) {
                    failures.push(format!("A^-({d1},{d2}) singleton={single}"));
                }
            }
        }
    }
    SuiteResult {
        name: format!("A^- emptiness, d <= {max_d}"),
        checks,
        failures,
    }
}
