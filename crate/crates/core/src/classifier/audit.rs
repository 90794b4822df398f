//! Necessary conditions that every quadratic record must satisfy, and the
//! complete characterizations available when `m` has at most two prime
//! factors.
//!
//! Residue conditions are phrased through the characters of each component:
//! "`x` quadratic modulo `p_i`" means `x^(phi(m_i)/2) = 1 (mod m_i)`,
//! "nonquadratic" means `= -1`, and "quartic" means `x^(phi(m_i)/4) = 1`.

use serde::Serialize;

use super::{in_cyclic_subgroup, ClassificationRecord, XMinusStatus};
use crate::arithmetic::{factorize, gcd, mul_mod, mult_order, pow_mod};

/// Prime-power component `m_i = prime^exponent` of `m` with the order
/// `f_i` of `p` modulo `m_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    pub prime: u64,
    pub exponent: u32,
    pub modulus: u64,
    pub phi: u64,
    pub order: u64,
}

pub fn component_data(m: u64, p: u64) -> Vec<ComponentData> {
    factorize(m)
        .factors()
        .map(|(q, u)| {
            let mi = q.pow(u);
            ComponentData {
                prime: q,
                exponent: u,
                modulus: mi,
                phi: (q - 1) * q.pow(u - 1),
                order: mult_order(p % mi, mi).expect("unit modulo every component"),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
}

fn quadratic_mod(x: u64, c: &ComponentData) -> bool {
    c.phi.is_multiple_of(2) && pow_mod(x, c.phi / 2, c.modulus) == 1
}

fn nonquadratic_mod(x: u64, c: &ComponentData) -> bool {
    c.phi.is_multiple_of(2) && pow_mod(x, c.phi / 2, c.modulus) == c.modulus - 1
}

fn quartic_mod(x: u64, c: &ComponentData) -> bool {
    c.phi.is_multiple_of(4) && pow_mod(x, c.phi / 4, c.modulus) == 1
}

fn is_odd(x: u64) -> bool {
    x % 2 == 1
}

/// Order of `p` in `(Z/2^u)^x / <-1>`.
fn order_mod_sign(p: u64, modulus: u64) -> u64 {
    let mut x = p % modulus;
    let mut k = 1;
    while x != 1 && x != modulus - 1 {
        x = mul_mod(x, p, modulus);
        k += 1;
    }
    k
}

// One prime power, odd or 4.
fn single_odd_or_four(m: u64, pbar: u64, f: u64, c: &ComponentData) -> bool {
    (m, pbar % m, f) == (4, 1, 1) || (c.prime % 4 == 3 && 2 * f == c.phi)
}

// m = 2^u, u >= 3.
fn single_power_of_two(p: u64, c: &ComponentData) -> bool {
    order_mod_sign(p, c.modulus) == 1 << (c.exponent - 2)
}

// Two components with X^- = {chi_ann}, in the given order.
fn pair_singleton(a: &ComponentData, b: &ComponentData) -> bool {
    let (f1, f2) = (a.order, b.order);
    let first = 2 * f1 == a.phi
        && 4 * f2 == b.phi
        && is_odd(f1)
        && is_odd(f2)
        && gcd(f1, f2) == 1
        && quadratic_mod(b.prime, a)
        && quartic_mod(a.prime, b);
    let second = 2 * f1 == a.phi
        && is_odd(f1)
        && 2 * f2 == b.phi
        && !is_odd(f2)
        && gcd(f1, f2) == 1
        && quadratic_mod(b.prime, a);
    let third = f1 == a.phi
        && f2 == b.phi
        && f1 % 2 == 0
        && f2 % 2 == 0
        && is_odd(f1 / 2)
        && !is_odd(f2 / 2)
        && gcd(f1 / 2, f2 / 2) == 1;
    first || second || third
}

// m = 2 * p2^u2.
fn twice_prime_power(f: u64, b: &ComponentData) -> bool {
    f == b.order && 2 * b.order == b.phi && is_odd(f) && b.prime % 8 == 3
}

// Two components, v2(m) in {0, 2}, X^- empty, in the given order.
fn pair_empty(a: &ComponentData, b: &ComponentData) -> bool {
    let (f1, f2) = (a.order, b.order);
    let first = 2 * f1 == a.phi
        && 2 * f2 == b.phi
        && is_odd(f1)
        && is_odd(f2)
        && gcd(f1, f2) == 1
        && nonquadratic_mod(b.prime, a)
        && quadratic_mod(a.prime, b);
    let second = 2 * f1 == a.phi
        && is_odd(f1)
        && f2 == b.phi
        && gcd(f1, f2) == 1
        && nonquadratic_mod(b.prime, a);
    first || second
}

/// Membership in the quadratic classes as predicted by the complete
/// characterizations for `m` with one component, or two components and
/// `v2(m) <= 2`. `None` outside that range.
pub fn characterization_predicts(m: u64, p: u64) -> Option<bool> {
    let comps = component_data(m, p);
    let f = comps
        .iter()
        .map(|c| c.order)
        .fold(1, crate::arithmetic::lcm);
    let pbar = super::canonical_pbar(m, p).ok()?;
    let v2 = m.trailing_zeros();
    match comps.as_slice() {
        [c] if c.prime == 2 && c.exponent >= 3 => Some(single_power_of_two(p, c)),
        [c] => Some(single_odd_or_four(m, pbar, f, c)),
        [a, b] if v2 <= 2 => {
            let singleton = pair_singleton(a, b) || pair_singleton(b, a);
            let empty = if v2 == 1 {
                twice_prime_power(f, b)
            } else {
                pair_empty(a, b) || pair_empty(b, a)
            };
            Some(singleton || empty)
        }
        _ => None,
    }
}

/// Divisibility conditions for odd `f` and empty `X^-`, per component.
fn odd_f_empty_conditions(comps: &[ComponentData], v2: u32) -> bool {
    let r = comps.len();
    match v2 {
        0 | 2 => r.is_multiple_of(2) && comps.iter().all(|c| 2 * c.order == c.phi),
        1 => comps.iter().filter(|c| c.prime != 2).all(|c| {
            let fj = c.order;
            let base = 2 * fj == c.phi || pow_mod(2, 2 * fj, c.modulus) == 1;
            let deep = pow_mod(2, 4 * fj, c.modulus) == 1;
            if r.is_multiple_of(2) {
                base || (deep && 6 * fj == c.phi)
            } else {
                base || 4 * fj == c.phi || (deep && 8 * fj == c.phi)
            }
        }),
        _ => false,
    }
}

pub(crate) fn odd_f_singleton_conditions(comps: &[ComponentData], f: u64) -> bool {
    comps.iter().all(|c| (4 * f).is_multiple_of(c.phi))
}

pub(crate) fn odd_f_empty_holds(comps: &[ComponentData]) -> bool {
    let v2 = comps
        .first()
        .filter(|c| c.prime == 2)
        .map_or(0, |c| c.exponent);
    odd_f_empty_conditions(comps, v2)
}

/// Every applicable necessary condition on a quadratic record. Returns an
/// empty list for other classes.
pub fn audit_structural(rec: &ClassificationRecord) -> Vec<AuditCheck> {
    let Some(q) = &rec.quadratic else {
        return Vec::new();
    };
    let (m, p, f) = (rec.m, rec.pbar, rec.f);
    let comps = component_data(m, p);
    let v2 = m.trailing_zeros();
    let mut out = Vec::new();
    let mut push = |name, passed| out.push(AuditCheck { name, passed });

    push(
        "component orders combine to f",
        comps
            .iter()
            .map(|c| c.order)
            .fold(1, crate::arithmetic::lcm)
            == f,
    );
    push(
        "h = phi(m) / f",
        comps.iter().map(|c| c.phi).product::<u64>() == f * rec.h,
    );

    match q.x_minus {
        XMinusStatus::SingletonAnn => {
            push(
                "X^- = {ann}: phi(m_i) | 4f",
                odd_f_singleton_conditions(&comps, f),
            );
            if is_odd(f) {
                push("X^- = {ann}, odd f: v2(m) <= 3", v2 <= 3);
            }
        }
        XMinusStatus::Empty => {
            if is_odd(f) {
                push("X^- empty, odd f: v2(m) <= 2", v2 <= 2);
                push(
                    "X^- empty, odd f: component orders",
                    odd_f_empty_conditions(&comps, v2),
                );
            }
        }
    }
    if is_odd(f) {
        let odd_part = m >> v2;
        push("odd f: v2(m) <= 3", v2 <= 3);
        push(
            "odd f: odd part of m divides 2^(4f) - 1",
            pow_mod(2, 4 * f, odd_part) == 1 % odd_part,
        );
    }

    match comps.as_slice() {
        [c] if c.prime == 2 && c.exponent >= 3 => {
            push(
                "power of two: p has order 2^(u-2) modulo sign",
                single_power_of_two(p, c),
            );
        }
        [c] => push(
            "prime power: (4,1,1) or p_1 = 3 mod 4 with f = phi/2",
            single_odd_or_four(m, p, f, c),
        ),
        [a, b] if v2 <= 2 => match q.x_minus {
            XMinusStatus::SingletonAnn => {
                push(
                    "two components, X^- = {ann}",
                    pair_singleton(a, b) || pair_singleton(b, a),
                );
            }
            XMinusStatus::Empty if v2 == 1 => {
                push(
                    "2 * prime power: f = phi/2 odd and p_2 = 3 mod 8",
                    twice_prime_power(f, b),
                );
            }
            XMinusStatus::Empty => {
                push(
                    "two components, X^- empty",
                    pair_empty(a, b) || pair_empty(b, a),
                );
            }
        },
        _ => {}
    }
    out
}

/// The first family of non-semi-primitive pure sums: a coprime split
/// `m = c d` with coprime orders, `p` primitive modulo `c`, and some prime
/// divisor of `c` in `<p>` modulo `d`.
pub fn small_family_first_condition(m: u64, p: u64) -> bool {
    let parts: Vec<(u64, u64)> = factorize(m).factors().map(|(q, u)| (q, q.pow(u))).collect();
    let r = parts.len();
    for mask in 1..(1u32 << r) - 1 {
        let (mut c, mut d) = (1u64, 1u64);
        let mut c_primes = Vec::new();
        for (i, &(q, qu)) in parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c *= qu;
                c_primes.push(q);
            } else {
                d *= qu;
            }
        }
        let oc = mult_order(p % c, c).expect("unit");
        let od = mult_order(p % d, d).expect("unit");
        if gcd(oc, od) != 1 || oc != crate::arithmetic::euler_phi(c) {
            continue;
        }
        if c_primes.iter().any(|&l| in_cyclic_subgroup(l, p, d)) {
            return true;
        }
    }
    false
}
