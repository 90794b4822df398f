//! Dirichlet characters modulo `m`.
//!
//! A character is stored as an exponent vector over the cyclic factors of
//! [`UnitGroup`]: `chi(g_i) = exp(2 pi i a_i / n_i)`. Values are exact
//! [`RootOfUnity`] fractions; evaluation at a non-unit gives
//! [`CharValue::Zero`].

mod bernoulli;
mod criterion;
mod cyclotomic;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arithmetic::{gcd, lcm, Component, UnitGroup};
use crate::error::{Error, Result};

pub use bernoulli::{ber_identity_sides, bernoulli_b1, verify_ber_identity};
pub use criterion::{
    criterion_quadratic, criterion_quadratic_in, criterion_quadratic_reference, CharacterCriterion,
    Witness,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicElement};

/// `exp(2 pi i * num / den)` with `0 <= num < den` and the fraction reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let num = num % den;
        if num == 0 {
            return RootOfUnity { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub const fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub const fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// Also the multiplicative order.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(self, other: Self) -> Self {
        let den = self.den as u128 * other.den as u128;
        let num =
            (self.num as u128 * other.den as u128 + other.num as u128 * self.den as u128) % den;
        let g = gcd(num as u64, den as u64) as u128;
        let (num, den) = if num == 0 { (0, 1) } else { (num / g, den / g) };
        RootOfUnity {
            num: num as u64,
            den: den as u64,
        }
    }

    pub fn pow(self, k: u64) -> Self {
        RootOfUnity::new(
            ((self.num as u128 * k as u128) % self.den as u128) as u64,
            self.den,
        )
    }

    pub fn conj(self) -> Self {
        RootOfUnity::new(self.den - self.num, self.den)
    }

    pub fn to_complex(self) -> (f64, f64) {
        let angle = std::f64::consts::TAU * self.num as f64 / self.den as f64;
        (angle.cos(), angle.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (a, n) => write!(f, "e({a}/{n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CharValue {
    /// Value at an integer sharing a factor with the modulus.
    Zero,
    Root(RootOfUnity),
}

impl CharValue {
    pub fn root(self) -> Option<RootOfUnity> {
        match self {
            CharValue::Zero => None,
            CharValue::Root(r) => Some(r),
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, CharValue::Root(r) if r.is_one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Smallest `k` such that the character with exponent data `exps` on the
/// factors of `comp` is trivial on `{x = 1 mod p^k}`; returns `p^k`.
fn component_conductor(comp: &Component, exps: &[u64]) -> u64 {
    match *comp {
        Component::Cyclic {
            prime,
            exponent,
            order,
            ..
        } => {
            let a = exps[0];
            if a.is_multiple_of(order) {
                return 1;
            }
            // Kernel of reduction to p^k (k >= 1) is generated by g^phi(p^k).
            let mut pk = prime;
            let mut phi_pk = prime - 1;
            for _ in 1..exponent {
                if (a as u128 * phi_pk as u128).is_multiple_of(order as u128) {
                    return pk;
                }
                pk *= prime;
                phi_pk *= prime;
            }
            pk
        }
        Component::TwoPart {
            exponent, orders, ..
        } => {
            let (a, b) = (exps[0] % 2, exps[1] % orders.1);
            if a == 0 && b == 0 {
                return 1;
            }
            // Kernel of reduction to 2^k (k >= 2) is generated by 5^(2^(k-2)).
            for k in 2..exponent {
                if (b << (k - 2)) % orders.1 == 0 {
                    return 1 << k;
                }
            }
            1 << exponent
        }
    }
}

/// A Dirichlet character modulo `m` with cached order, parity and conductor.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    order: u64,
    parity: Parity,
    conductor: u64,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.modulus())
            .field("exponents", &self.exponents)
            .field("order", &self.order)
            .field("parity", &self.parity)
            .field("conductor", &self.conductor)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroup>, exponents: &[u64]) -> Result<Self> {
        let factors = group.factors();
        if exponents.len() != factors.len() {
            return Err(Error::Overflow("character exponent vector length"));
        }
        let exponents: Vec<u64> = exponents
            .iter()
            .zip(factors)
            .map(|(&a, fac)| a % fac.order)
            .collect();
        let order = exponents
            .iter()
            .zip(factors)
            .map(|(&a, fac)| fac.order / gcd(a, fac.order))
            .fold(1, lcm);
        let mut conductor = 1u64;
        let mut start = 0usize;
        for comp in group.components() {
            let width = if matches!(comp, Component::TwoPart { .. }) {
                2
            } else {
                1
            };
            conductor *= component_conductor(comp, &exponents[start..start + width]);
            start += width;
        }
        let mut chi = DirichletCharacter {
            group,
            exponents,
            order,
            parity: Parity::Even,
            conductor,
        };
        let m = chi.modulus();
        if chi.phase(m - 1) != Some(0) {
            chi.parity = Parity::Odd;
        }
        Ok(chi)
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let zeros = vec![0; group.factors().len()];
        Self::new(group, &zeros).expect("well-formed exponent vector")
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// Smallest modulus through which the character factors.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    // chi(x) = exp(2 pi i * phase / N), N = group exponent
    fn phase(&self, x: u64) -> Option<u64> {
        let n = self.group.exponent();
        let mut acc = 0u128;
        for (i, (&a, fac)) in self.exponents.iter().zip(self.group.factors()).enumerate() {
            if a == 0 {
                continue;
            }
            let e = self.group.factor_dlog(i, x)?;
            acc += a as u128 * e as u128 * (n / fac.order) as u128;
        }
        Some((acc % n as u128) as u64)
    }

    pub fn evaluate(&self, x: u64) -> CharValue {
        if !self.group.is_unit(x) {
            return CharValue::Zero;
        }
        let phase = self.phase(x).expect("unit has a discrete log");
        CharValue::Root(RootOfUnity::new(phase, self.group.exponent()))
    }

    /// Value of the associated primitive character (modulo the conductor).
    pub fn evaluate_primitive(&self, x: u64) -> CharValue {
        if gcd(x, self.conductor) != 1 {
            return CharValue::Zero;
        }
        // Factors with nonzero exponent all belong to primes dividing the
        // conductor, so x is a unit on each of them.
        let phase = self.phase(x).expect("unit on the support");
        CharValue::Root(RootOfUnity::new(phase, self.group.exponent()))
    }

    pub fn kernel(&self) -> Vec<u64> {
        self.group
            .units()
            .filter(|&x| self.phase(x) == Some(0))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus() != other.modulus() {
            return Err(Error::Overflow(
                "product of characters with different moduli",
            ));
        }
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.group.clone(), &exps)
    }
}

/// All `phi(m)` characters, in lexicographic order of exponent vectors.
pub fn character_group(m: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(UnitGroup::new(m)?);
    Ok(characters_of(&group))
}

pub fn characters_of(group: &Arc<UnitGroup>) -> Vec<DirichletCharacter> {
    let orders: Vec<u64> = group.factors().iter().map(|f| f.order).collect();
    let mut out = Vec::with_capacity(group.order() as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::new(group.clone(), &exps).expect("valid exponents"));
        let mut k = orders.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            exps[k] += 1;
            if exps[k] < orders[k] {
                break;
            }
            exps[k] = 0;
        }
    }
}

pub fn evaluate(chi: &DirichletCharacter, x: u64) -> CharValue {
    chi.evaluate(x)
}

pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

/// Conductor found by testing the divisors `c` of `m` in ascending order for
/// `chi(x) = 1` on every unit `x = 1 (mod c)`. Quadratic in `m`; kept as an
/// independent route to [`DirichletCharacter::conductor`].
pub fn conductor_by_divisors(chi: &DirichletCharacter) -> u64 {
    let m = chi.modulus();
    crate::arithmetic::divisors(m)
        .into_iter()
        .find(|&c| {
            (0..m / c)
                .map(|k| 1 + k * c)
                .filter(|&x| chi.group.is_unit(x))
                .all(|x| chi.evaluate(x).is_one())
        })
        .unwrap_or(m)
}

/// The order-2 character whose kernel is `e0`.
pub fn annihilator_of(group: &Arc<UnitGroup>, e0: &[u64]) -> Result<DirichletCharacter> {
    let outside = group
        .index_two_signature(e0)
        .map_err(|reason| Error::NotIndexTwoSubgroup {
            modulus: group.modulus(),
            reason,
        })?;
    let exps: Vec<u64> = group
        .factors()
        .iter()
        .zip(outside)
        .map(|(fac, flip)| if flip { fac.order / 2 } else { 0 })
        .collect();
    DirichletCharacter::new(group.clone(), &exps)
}

/// `O^-(m, p)`: odd characters with `chi(p) = 1`.
pub fn odd_trivial_on_p(m: u64, p: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(UnitGroup::new(m)?);
    if !group.is_unit(p) {
        return Err(Error::NotAUnit {
            value: p,
            modulus: m,
        });
    }
    Ok(characters_of(&group)
        .into_iter()
        .filter(|chi| chi.is_odd() && chi.evaluate(p).is_one())
        .collect())
}

/// Whether every prime dividing the modulus divides the conductor.
pub fn has_full_conductor(chi: &DirichletCharacter) -> bool {
    chi.group
        .factorization()
        .primes()
        .all(|q| chi.conductor().is_multiple_of(q))
}

/// `X^-(m, p)`: members of `O^-(m, p)` whose conductor is divisible by every
/// prime factor of `m`.
pub fn x_minus(m: u64, p: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(odd_trivial_on_p(m, p)?
        .into_iter()
        .filter(has_full_conductor)
        .collect())
}

/// Whether `prod (1 - chi(l))` over primes `l | m` not dividing the conductor
/// vanishes. The factor uses the primitive character, so it vanishes exactly
/// when some such `l` has `chi(l) = 1`; with no such `l` the product is 1.
pub fn product_vanishes(chi: &DirichletCharacter) -> bool {
    let c = chi.conductor();
    chi.group
        .factorization()
        .primes()
        .filter(|&l| !c.is_multiple_of(l))
        .any(|l| chi.evaluate_primitive(l).is_one())
}

/// Discriminant of the imaginary quadratic field cut out by an odd order-2
/// character: `-c` for conductor `c`.
pub fn field_discriminant(chi: &DirichletCharacter) -> Result<i64> {
    if chi.order() != 2 || !chi.is_odd() {
        return Err(Error::NotOddQuadratic {
            modulus: chi.modulus(),
        });
    }
    let d = -(chi.conductor() as i64);
    if d.rem_euclid(4) > 1 {
        return Err(Error::NotOddQuadratic {
            modulus: chi.modulus(),
        });
    }
    Ok(d)
}
