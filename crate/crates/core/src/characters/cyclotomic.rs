//! Exact arithmetic in `Q(zeta_n)`, represented modulo the `n`-th cyclotomic
//! polynomial with integer coefficients over a common positive denominator.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arithmetic::divisors;
use crate::error::{Error, Result};

fn cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i128>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i128>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

// Exact division of `num` by the monic polynomial `den`.
fn div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i128>> {
    assert!(n > 0);
    if let Some(p) = cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i128; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        poly = div_exact(&poly, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(poly);
    cache().write().unwrap().insert(n, poly.clone());
    poly
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    n: u64,
    /// Length `phi(n)`.
    coeffs: Vec<i128>,
    den: i128,
}

impl CyclotomicElement {
    pub fn zero(n: u64) -> Self {
        let deg = cyclotomic_polynomial(n).len() - 1;
        CyclotomicElement {
            n,
            coeffs: vec![0; deg],
            den: 1,
        }
    }

    pub fn from_int(n: u64, k: i128) -> Self {
        let mut out = Self::zero(n);
        out.coeffs[0] = k;
        out.reduce_fraction();
        out
    }

    /// `zeta_n^k`.
    pub fn root(n: u64, k: u64) -> Self {
        let mut raw = vec![0i128; n as usize];
        raw[(k % n) as usize] = 1;
        Self::from_power_sums(n, &raw, 1)
    }

    /// `(sum_k c_k zeta_n^k) / den` for an arbitrary-length coefficient list.
    pub fn from_power_sums(n: u64, raw: &[i128], den: i128) -> Self {
        assert!(den != 0);
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut rem = raw.to_vec();
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c != 0 {
                for (j, &d) in phi.iter().enumerate() {
                    rem[i - deg + j] -= c * d;
                }
            }
        }
        rem.resize(deg, 0);
        let mut out = CyclotomicElement {
            n,
            coeffs: rem,
            den,
        };
        out.reduce_fraction();
        out
    }

    fn reduce_fraction(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        let g = self.coeffs.iter().fold(self.den, |g, &c| gcd_i(g, c));
        if g > 1 {
            self.den /= g;
            self.coeffs.iter_mut().for_each(|c| *c /= g);
        }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::FieldTowerMismatch(format!(
                "cyclotomic orders {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * other.den + b * self.den)
            .collect();
        let mut out = CyclotomicElement {
            n: self.n,
            coeffs,
            den: self.den * other.den,
        };
        out.reduce_fraction();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut raw = vec![0i128; self.coeffs.len() + other.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Ok(Self::from_power_sums(self.n, &raw, self.den * other.den))
    }

    /// Multiplies by the rational `num / den`.
    pub fn scale(&self, num: i128, den: i128) -> Self {
        assert!(den != 0);
        let mut out = CyclotomicElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * num).collect(),
            den: self.den * den,
        };
        out.reduce_fraction();
        out
    }
}
