//! The complete set of quadratic pairs `(m, pbar)` for a fixed odd order `f`.
//!
//! Candidates are `m = 2^a d` with `a <= 3` and `d | 2^(4f) - 1`. A modulus
//! survives when some assignment of component orders `f_i` (with lcm `f`)
//! meets the necessary conditions of either `X^-` branch; each surviving
//! pair is then screened by the early-exit coset scan, and pairs that pass
//! the screen are classified in full.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::audit::{component_data, odd_f_empty_holds, odd_f_singleton_conditions, ComponentData};
use super::classify_in;
use crate::arithmetic::{divisors, euler_phi, factorize, gcd, lcm, mul_mod, UnitGroup};
use crate::characters::criterion_quadratic_in;
use crate::error::{Error, Result};
use crate::stickelberger::exceeds_two_values;

pub const MAX_ODD_F: u64 = 13;

/// Default cap on the worst-case coset-walk estimate. The estimate assumes
/// every screen walks all cosets; in practice the screen stops after a few,
/// so even `f = 13` (estimate about `1e12`) finishes in well under a second.
pub const DEFAULT_WORK_BUDGET: u128 = 2_000_000_000_000;

#[derive(Debug, Clone, Copy)]
pub struct OddFOptions {
    /// Upper bound on `sum (orbits) * phi(m)` over surviving moduli.
    pub work_budget: u128,
    /// Every `audit_every`-th pair rejected by the screen (per modulus,
    /// starting with the first) is confirmed by the character criterion.
    pub audit_every: u64,
}

impl Default for OddFOptions {
    fn default() -> Self {
        OddFOptions {
            work_budget: DEFAULT_WORK_BUDGET,
            audit_every: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddFReport {
    pub f: u64,
    /// Sorted `(m, pbar)`.
    pub pairs: Vec<(u64, u64)>,
    pub candidate_moduli: usize,
    pub surviving_moduli: usize,
    pub estimated_work: u128,
    pub orbits_examined: u64,
    pub screened_out: u64,
    pub fully_classified: u64,
    pub audited: u64,
}

#[derive(Default)]
struct ModulusTally {
    pairs: Vec<(u64, u64)>,
    orbits: u64,
    screened_out: u64,
    classified: u64,
    audited: u64,
}

fn passes_either_branch(comps: &[ComponentData], f: u64) -> bool {
    odd_f_singleton_conditions(comps, f) || odd_f_empty_holds(comps)
}

// Orbit count (pairs to check) times phi(m), summed over order assignments
// that pass a branch.
fn estimate(m: u64, f: u64) -> u128 {
    let base: Vec<ComponentData> = factorize(m)
        .factors()
        .map(|(q, u)| ComponentData {
            prime: q,
            exponent: u,
            modulus: q.pow(u),
            phi: (q - 1) * q.pow(u - 1),
            order: 1,
        })
        .collect();
    // An odd order on a 2-power component is 1.
    let choices: Vec<Vec<u64>> = base
        .iter()
        .map(|c| {
            if c.prime == 2 {
                vec![1]
            } else {
                divisors(gcd(f, c.phi))
            }
        })
        .collect();
    let phi_m = base.iter().map(|c| c.phi as u128).product::<u128>();
    let phi_f = euler_phi(f) as u128;
    let mut total = 0u128;
    let mut idx = vec![0usize; base.len()];
    let mut comps = base.clone();
    loop {
        for (c, (&i, ch)) in comps.iter_mut().zip(idx.iter().zip(&choices)) {
            c.order = ch[i];
        }
        if comps.iter().map(|c| c.order).fold(1, lcm) == f && passes_either_branch(&comps, f) {
            let count: u128 = comps.iter().map(|c| euler_phi(c.order) as u128).product();
            total += count / phi_f * phi_m;
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn run_modulus(m: u64, f: u64, opts: OddFOptions) -> Result<ModulusTally> {
    let group = Arc::new(UnitGroup::new(m)?);
    let mut tally = ModulusTally::default();
    let mut seen = HashSet::new();
    for p in group.elements_of_exact_order(f) {
        if seen.contains(&p) {
            continue;
        }
        // Ascending scan: p is the smallest member of its orbit.
        let mut x = 1u64;
        for i in 1..=f {
            x = mul_mod(x, p, m);
            if gcd(i, f) == 1 {
                seen.insert(x);
            }
        }
        tally.orbits += 1;
        if !passes_either_branch(&component_data(m, p), f) {
            continue;
        }
        if exceeds_two_values(m, p, f) {
            if tally.screened_out % opts.audit_every.max(1) == 0 {
                let crit = criterion_quadratic_in(&group, p)?;
                if crit.holds || crit.is_pure() {
                    return Err(Error::OracleMismatch {
                        m,
                        p,
                        detail: "coset screen saw three values, characters disagree".into(),
                    });
                }
                tally.audited += 1;
            }
            tally.screened_out += 1;
            continue;
        }
        tally.classified += 1;
        let rec = classify_in(&group, p)?;
        if rec.class.is_quadratic() {
            tally.pairs.push((m, rec.pbar));
        }
    }
    Ok(tally)
}

pub fn classify_odd_f(f: u64, opts: OddFOptions) -> Result<OddFReport> {
    if f.is_multiple_of(2) {
        return Err(Error::EvenOrder(f));
    }
    if f > MAX_ODD_F {
        return Err(Error::OrderOutOfRange { f, max: MAX_ODD_F });
    }
    let n = (1u64 << (4 * f)) - 1;
    let mut candidates: Vec<u64> = divisors(n)
        .into_iter()
        .flat_map(|d| (0..=3).map(move |a| d << a))
        .filter(|&m| m >= 3)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let estimates: Vec<(u64, u128)> = candidates
        .par_iter()
        .map(|&m| (m, estimate(m, f)))
        .collect();
    let surviving: Vec<u64> = estimates
        .iter()
        .filter(|(_, w)| *w > 0)
        .map(|&(m, _)| m)
        .collect();
    let needed: u128 = estimates.iter().map(|(_, w)| w).sum();
    if needed > opts.work_budget {
        return Err(Error::WorkBudgetExceeded {
            f,
            needed,
            budget: opts.work_budget,
        });
    }

    let tallies: Vec<ModulusTally> = surviving
        .par_iter()
        .map(|&m| run_modulus(m, f, opts))
        .collect::<Result<_>>()?;
    let mut report = OddFReport {
        f,
        pairs: Vec::new(),
        candidate_moduli: candidates.len(),
        surviving_moduli: surviving.len(),
        estimated_work: needed,
        orbits_examined: 0,
        screened_out: 0,
        fully_classified: 0,
        audited: 0,
    };
    for t in tallies {
        report.pairs.extend(t.pairs);
        report.orbits_examined += t.orbits;
        report.screened_out += t.screened_out;
        report.fully_classified += t.classified;
        report.audited += t.audited;
    }
    report.pairs.sort_unstable();
    Ok(report)
}
