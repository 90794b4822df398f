//! Exact modular arithmetic on machine words.
//!
//! Everything here works on `u64` with `u128` intermediates for products, so
//! moduli up to `2^63` are safe. Sums that could exceed `u64` go through
//! checked arithmetic and surface [`Error::Overflow`].

mod factor;
mod units;

pub use factor::{factorize, is_prime, Factorization};
pub use units::{Component, CyclicFactor, UnitGroup};

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// 2-adic valuation; `v2(0)` is reported as 64.
pub fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m).phi()
}

fn require_unit(x: u64, m: u64) -> Result<()> {
    if gcd(x % m, m) != 1 {
        return Err(Error::NotAUnit {
            value: x,
            modulus: m,
        });
    }
    Ok(())
}

/// Multiplicative order of `p` modulo `m`.
pub fn mult_order(p: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ModulusTooSmall { modulus: m, min: 1 });
    }
    if m == 1 {
        return Ok(1);
    }
    require_unit(p, m)?;
    let fac = factorize(m);
    Ok(order_dividing(p % m, m, fac.carmichael()))
}

/// Order of `x` modulo `m`, given any multiple `n` of it.
pub(crate) fn order_dividing(x: u64, m: u64, n: u64) -> u64 {
    let mut order = n;
    for (q, _) in factorize(n).factors() {
        while order.is_multiple_of(q) && pow_mod(x, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

/// All positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n).divisors()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(p: u64, m: u64) -> u64 {
        let mut x = p % m;
        let mut k = 1;
        while x != 1 {
            x = x * p % m;
            k += 1;
        }
        k
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        let brute = (1..20).filter(|&x| gcd(x, 20) == 1).count() as u64;
        assert_eq!(brute, 8);
        assert_eq!(euler_phi(20), brute);
        for p in [2, 3, 5, 7, 101, 7919] {
            assert_eq!(euler_phi(p), p - 1);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(9, 20).unwrap(), 2);
        assert_eq!(mult_order(1, 17).unwrap(), 1);
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert!(matches!(mult_order(4, 20), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn order_matches_brute_force() {
        for m in 3..=500u64 {
            for p in (1..m).filter(|&p| gcd(p, m) == 1) {
                let f = mult_order(p, m).unwrap();
                assert_eq!(f, brute_order(p, m), "order of {p} mod {m}");
            }
        }
    }

    #[test]
    fn divisor_sum_of_phi() {
        for m in 1..=2000u64 {
            let s: u64 = divisors(m).into_iter().map(euler_phi).sum();
            assert_eq!(s, m);
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 20), Some(7));
        assert_eq!(inv_mod(4, 20), None);
        assert_eq!(inv_mod(1, 2), Some(1));
    }
}
