//! The character-side test for the quadratic case.
//!
//! Call `V` the set of odd characters with `chi(p) = 1` whose product
//! `prod (1 - chi(l))` over primes `l | m` outside the conductor does not
//! vanish. The criterion holds exactly when `V` is a single character of
//! order 2 (that character is then the annihilator, and condition (1) is
//! non-vanishing with `chi(l) = -1`). Purity corresponds to `V` empty.

use std::sync::Arc;

use super::{
    annihilator_of, characters_of, has_full_conductor, product_vanishes, DirichletCharacter,
};
use crate::arithmetic::UnitGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Kernel of the annihilator, ascending.
    pub e0: Vec<u64>,
    pub annihilator: DirichletCharacter,
}

#[derive(Debug, Clone)]
pub struct CharacterCriterion {
    pub m: u64,
    pub p: u64,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Members of `V` found, in lexicographic order. Complete unless
    /// `truncated`.
    pub nonvanishing: Vec<DirichletCharacter>,
    pub truncated: bool,
}

impl CharacterCriterion {
    /// Every odd character trivial on `p` has a vanishing product.
    pub fn is_pure(&self) -> bool {
        !self.truncated && self.nonvanishing.is_empty()
    }

    /// `X^-(m, p)`; full-conductor characters never vanish, so they all sit
    /// in `V`. `None` when the scan stopped early.
    pub fn x_minus(&self) -> Option<Vec<DirichletCharacter>> {
        if self.truncated {
            return None;
        }
        Some(
            self.nonvanishing
                .iter()
                .filter(|c| has_full_conductor(c))
                .cloned()
                .collect(),
        )
    }
}

/// Walks the character group once with running phases and collects up to
/// `cap` members of `V`.
fn scan(group: &Arc<UnitGroup>, p: u64, cap: usize) -> (Vec<DirichletCharacter>, bool) {
    let m = group.modulus();
    let n = group.exponent();
    let factors = group.factors();
    let primes: Vec<u64> = group.factorization().primes().collect();
    let r = factors.len();

    let weight = |k: usize, x: u64| -> u64 {
        let fac = &factors[k];
        let e = group.factor_dlog(k, x).expect("unit on factor");
        ((e as u128 * (n / fac.order) as u128) % n as u128) as u64
    };
    let wp: Vec<u64> = (0..r).map(|k| weight(k, p)).collect();
    let wm: Vec<u64> = (0..r).map(|k| weight(k, m - 1)).collect();
    // wl[j][k]: contribution of factor k to chi(l_j); zero on l_j's own factors,
    // whose exponents are zero whenever l_j is outside the conductor.
    let wl: Vec<Vec<u64>> = primes
        .iter()
        .map(|&l| {
            (0..r)
                .map(|k| {
                    if factors[k].prime == l {
                        0
                    } else {
                        weight(k, l)
                    }
                })
                .collect()
        })
        .collect();
    let owner: Vec<usize> = factors.iter().map(|f| f.component).collect();

    let mut exps = vec![0u64; r];
    let mut phase_p = 0u64;
    let mut phase_m = 0u64;
    let mut phase_l = vec![0u64; primes.len()];
    let mut support = vec![0u32; primes.len()];
    let mut found = Vec::new();
    let half = n / 2;

    loop {
        if phase_p == 0 && phase_m == half {
            let vanishes = (0..primes.len()).any(|j| support[j] == 0 && phase_l[j] == 0);
            if !vanishes {
                if found.len() == cap {
                    return (found, true);
                }
                found.push(DirichletCharacter::new(group.clone(), &exps).expect("valid exponents"));
            }
        }
        // Mixed-radix increment, last digit fastest. Adding the weight on
        // wraparound too is harmless: n_k * w_k = 0 mod n.
        let mut k = r;
        loop {
            if k == 0 {
                return (found, false);
            }
            k -= 1;
            let add = |ph: &mut u64, w: u64| {
                *ph += w;
                if *ph >= n {
                    *ph -= n;
                }
            };
            add(&mut phase_p, wp[k]);
            add(&mut phase_m, wm[k]);
            for (ph, w) in phase_l.iter_mut().zip(&wl) {
                add(ph, w[k]);
            }
            exps[k] += 1;
            if exps[k] == 1 {
                support[owner[k]] += 1;
            }
            if exps[k] < factors[k].order {
                break;
            }
            exps[k] = 0;
            support[owner[k]] -= 1;
        }
    }
}

pub fn criterion_quadratic_in(group: &Arc<UnitGroup>, p: u64) -> Result<CharacterCriterion> {
    let m = group.modulus();
    if !group.is_unit(p) {
        return Err(Error::NotAUnit {
            value: p,
            modulus: m,
        });
    }
    let (nonvanishing, truncated) = scan(group, p % m, 1);
    let witness = match nonvanishing.as_slice() {
        [chi] if !truncated && chi.order() == 2 => Some(Witness {
            e0: chi.kernel(),
            annihilator: chi.clone(),
        }),
        _ => None,
    };
    Ok(CharacterCriterion {
        m,
        p: p % m,
        holds: witness.is_some(),
        witness,
        nonvanishing,
        truncated,
    })
}

pub fn criterion_quadratic(m: u64, p: u64) -> Result<CharacterCriterion> {
    let group = Arc::new(UnitGroup::new(m)?);
    criterion_quadratic_in(&group, p)
}

/// The criterion checked literally: for each order-2 character trivial on
/// `p`, in lexicographic order, test the two conditions on its kernel.
/// Returns the first qualifying kernel.
pub fn criterion_quadratic_reference(m: u64, p: u64) -> Result<Option<Vec<u64>>> {
    let group = Arc::new(UnitGroup::new(m)?);
    if !group.is_unit(p) {
        return Err(Error::NotAUnit {
            value: p,
            modulus: m,
        });
    }
    let chars = characters_of(&group);
    let odd_trivial: Vec<&DirichletCharacter> = chars
        .iter()
        .filter(|c| c.is_odd() && c.evaluate(p).is_one())
        .collect();
    for cand in chars
        .iter()
        .filter(|c| c.order() == 2 && c.evaluate(p).is_one())
    {
        let e0 = cand.kernel();
        let ann = annihilator_of(&group, &e0)?;
        let cond = ann.conductor();
        let first = ann.is_odd()
            && group
                .factorization()
                .primes()
                .filter(|&l| cond % l != 0)
                .all(|l| ann.evaluate_primitive(l).root() == Some(super::RootOfUnity::minus_one()));
        let second = odd_trivial
            .iter()
            .filter(|c| ***c != ann)
            .all(|c| product_vanishes(c));
        if first && second {
            return Ok(Some(e0));
        }
    }
    Ok(None)
}
