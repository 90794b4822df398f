use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{factorize, gcd, mul_mod, order_dividing, pow_mod, Factorization};
use crate::error::{Error, Result};

/// One prime-power component of `(Z/mZ)^x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// Odd prime power, `2` or `4`: cyclic with the smallest primitive root.
    Cyclic {
        prime: u64,
        exponent: u32,
        modulus: u64,
        generator: u64,
        order: u64,
    },
    /// `2^u` with `u >= 3`: generated by `-1` (order 2) and `5` (order `2^(u-2)`).
    TwoPart {
        exponent: u32,
        modulus: u64,
        generators: (u64, u64),
        orders: (u64, u64),
    },
}

impl Component {
    pub fn modulus(&self) -> u64 {
        match *self {
            Component::Cyclic { modulus, .. } | Component::TwoPart { modulus, .. } => modulus,
        }
    }

    pub fn prime(&self) -> u64 {
        match *self {
            Component::Cyclic { prime, .. } => prime,
            Component::TwoPart { .. } => 2,
        }
    }

    pub fn order(&self) -> u64 {
        match *self {
            Component::Cyclic { order, .. } => order,
            Component::TwoPart { orders, .. } => orders.0 * orders.1,
        }
    }
}

/// A cyclic direct factor of the unit group, in the flattened order used by
/// exponent vectors: components in increasing prime order, and for a
/// [`Component::TwoPart`] the `-1` factor before the `5` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFactor {
    pub prime: u64,
    pub component: usize,
    /// `m_i`, the prime power this factor lives in.
    pub component_modulus: u64,
    /// Generator as a residue mod `m_i`.
    pub generator: u64,
    pub order: u64,
    /// Generator lifted to mod `m`: congruent to 1 modulo every other `m_j`.
    pub lifted: u64,
}

/// `(Z/mZ)^x` with canonical generators and per-component discrete-log tables.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    factorization: Factorization,
    phi: u64,
    exponent: u64,
    components: Vec<Component>,
    factors: Vec<CyclicFactor>,
    // residue mod m_i -> packed exponent; u32::MAX for non-units.
    // Cyclic: e. TwoPart: a + 2b for (-1)^a 5^b.
    tables: Vec<Vec<u32>>,
}

const NON_UNIT: u32 = u32::MAX;

fn primitive_root_cache() -> &'static RwLock<HashMap<u64, u64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Smallest primitive root modulo `n`, where `n` is 2, 4 or an odd prime power.
pub(crate) fn smallest_primitive_root(n: u64) -> u64 {
    if let Some(&g) = primitive_root_cache().read().unwrap().get(&n) {
        return g;
    }
    let g = if n <= 2 {
        1
    } else {
        let phi = factorize(n).phi();
        let qs: Vec<u64> = factorize(phi).primes().collect();
        (2..n)
            .find(|&g| gcd(g, n) == 1 && qs.iter().all(|&q| pow_mod(g, phi / q, n) != 1))
            .expect("cyclic unit group has a primitive root")
    };
    primitive_root_cache().write().unwrap().insert(n, g);
    g
}

// x mod n_i == residue, x == 1 mod (m / n_i)
fn crt_lift(residue: u64, component_modulus: u64, m: u64) -> u64 {
    let rest = m / component_modulus;
    if rest == 1 {
        return residue % m;
    }
    // x = 1 + rest * k with rest * k == residue - 1 (mod n_i)
    let inv =
        super::inv_mod(rest % component_modulus, component_modulus).expect("coprime components");
    let k = mul_mod(
        (residue + component_modulus - 1) % component_modulus,
        inv,
        component_modulus,
    );
    (1 + mul_mod(rest, k, m)) % m
}

impl UnitGroup {
    pub fn new(m: u64) -> Result<Self> {
        if m < 3 {
            return Err(Error::ModulusTooSmall { modulus: m, min: 3 });
        }
        let factorization = factorize(m);
        if factorization.prime_powers().any(|n| n > 1 << 31) {
            return Err(Error::Overflow("discrete-log table size"));
        }
        let mut components = Vec::new();
        let mut factors = Vec::new();
        let mut tables = Vec::new();
        for (idx, (p, u)) in factorization.factors().enumerate() {
            let n = p.pow(u);
            let mut table = vec![NON_UNIT; n as usize];
            if p == 2 && u >= 3 {
                let order5 = 1u64 << (u - 2);
                let mut x = 1u64;
                for b in 0..order5 {
                    table[x as usize] = 2 * b as u32;
                    table[(n - x) as usize] = 2 * b as u32 + 1;
                    x = x * 5 % n;
                }
                components.push(Component::TwoPart {
                    exponent: u,
                    modulus: n,
                    generators: (n - 1, 5),
                    orders: (2, order5),
                });
                for (gen, order) in [(n - 1, 2), (5, order5)] {
                    factors.push(CyclicFactor {
                        prime: 2,
                        component: idx,
                        component_modulus: n,
                        generator: gen,
                        order,
                        lifted: crt_lift(gen, n, m),
                    });
                }
            } else {
                let g = smallest_primitive_root(n);
                let order = (p - 1) * p.pow(u - 1);
                let mut x = 1u64;
                for e in 0..order {
                    table[x as usize] = e as u32;
                    x = mul_mod(x, g, n);
                }
                components.push(Component::Cyclic {
                    prime: p,
                    exponent: u,
                    modulus: n,
                    generator: g,
                    order,
                });
                factors.push(CyclicFactor {
                    prime: p,
                    component: idx,
                    component_modulus: n,
                    generator: g % n,
                    order,
                    lifted: crt_lift(g % n, n, m),
                });
            }
            tables.push(table);
        }
        Ok(UnitGroup {
            modulus: m,
            phi: factorization.phi(),
            exponent: factorization.carmichael(),
            factorization,
            components,
            factors,
            tables,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// `|G| = phi(m)`.
    pub fn order(&self) -> u64 {
        self.phi
    }

    /// Exponent of the group, `lcm` of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn is_unit(&self, x: u64) -> bool {
        gcd(x % self.modulus, self.modulus) == 1
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (1..self.modulus).filter(move |&x| self.is_unit(x))
    }

    /// Discrete log of `x mod m_i` on factor `i`; `None` if not a unit mod `m_i`.
    #[inline]
    pub fn factor_dlog(&self, i: usize, x: u64) -> Option<u64> {
        let fac = &self.factors[i];
        let packed = self.tables[fac.component][(x % fac.component_modulus) as usize];
        if packed == NON_UNIT {
            return None;
        }
        Some(match self.components[fac.component] {
            Component::Cyclic { .. } => packed as u64,
            Component::TwoPart { generators, .. } => {
                if fac.generator == generators.0 {
                    (packed & 1) as u64
                } else {
                    (packed >> 1) as u64
                }
            }
        })
    }

    /// Exponents of `x` on every cyclic factor.
    pub fn dlog_components(&self, x: u64) -> Result<Vec<u64>> {
        let mut out = vec![0; self.factors.len()];
        self.dlog_into(x, &mut out)?;
        Ok(out)
    }

    pub fn dlog_into(&self, x: u64, out: &mut [u64]) -> Result<()> {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.factor_dlog(i, x).ok_or(Error::NotAUnit {
                value: x,
                modulus: self.modulus,
            })?;
        }
        Ok(())
    }

    /// Inverse of [`dlog_components`](Self::dlog_components).
    pub fn reconstruct(&self, exponents: &[u64]) -> u64 {
        self.factors
            .iter()
            .zip(exponents)
            .fold(1 % self.modulus, |acc, (fac, &e)| {
                mul_mod(
                    acc,
                    pow_mod(fac.lifted, e % fac.order, self.modulus),
                    self.modulus,
                )
            })
    }

    /// `{x : x^f = 1}`, built factor by factor; sorted ascending.
    pub fn elements_of_order_dividing(&self, f: u64) -> Vec<u64> {
        let m = self.modulus;
        let mut out = vec![1 % m];
        for fac in &self.factors {
            let d = gcd(f, fac.order);
            let step = pow_mod(fac.lifted, fac.order / d, m);
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for &x in &out {
                let mut y = x;
                for _ in 0..d {
                    next.push(y);
                    y = mul_mod(y, step, m);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    /// Checks that `set` is a subgroup of index 2 and returns, per cyclic
    /// factor, whether its generator lies outside the subgroup.
    ///
    /// Closure is tested through the generators: the indicator of the
    /// complement must satisfy `[x g_i not in E] = [x not in E] xor [g_i not in E]`
    /// for every unit `x`, which makes it a homomorphism onto `Z/2`.
    pub fn index_two_signature(&self, set: &[u64]) -> std::result::Result<Vec<bool>, String> {
        let m = self.modulus;
        let mut member = vec![false; m as usize];
        for &x in set {
            if x >= m || !self.is_unit(x) {
                return Err(format!("{x} is not a reduced unit"));
            }
            if std::mem::replace(&mut member[x as usize], true) {
                return Err(format!("{x} listed twice"));
            }
        }
        if set.len() as u64 * 2 != self.phi {
            return Err(format!(
                "size {} is not phi(m)/2 = {}",
                set.len(),
                self.phi / 2
            ));
        }
        if !member[(1 % m) as usize] {
            return Err("does not contain 1".into());
        }
        let outside: Vec<bool> = self
            .factors
            .iter()
            .map(|f| !member[f.lifted as usize])
            .collect();
        for x in self.units() {
            let inside = member[x as usize];
            for (fac, &flip) in self.factors.iter().zip(&outside) {
                let y = mul_mod(x, fac.lifted, m);
                if member[y as usize] != (inside != flip) {
                    return Err(format!("not closed: {x} * {} = {y}", fac.lifted));
                }
            }
        }
        Ok(outside)
    }

    /// Elements of exact multiplicative order `f`, sorted ascending.
    pub fn elements_of_exact_order(&self, f: u64) -> Vec<u64> {
        self.elements_of_order_dividing(f)
            .into_iter()
            .filter(|&x| order_dividing(x, self.modulus, f) == f)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_examples() {
        let g20 = UnitGroup::new(20).unwrap();
        assert_eq!(
            g20.components(),
            &[
                Component::Cyclic {
                    prime: 2,
                    exponent: 2,
                    modulus: 4,
                    generator: 3,
                    order: 2
                },
                Component::Cyclic {
                    prime: 5,
                    exponent: 1,
                    modulus: 5,
                    generator: 2,
                    order: 4
                },
            ]
        );
        let g16 = UnitGroup::new(16).unwrap();
        assert_eq!(
            g16.components(),
            &[Component::TwoPart {
                exponent: 4,
                modulus: 16,
                generators: (15, 5),
                orders: (2, 4)
            }]
        );
        let g9 = UnitGroup::new(9).unwrap();
        assert_eq!(
            g9.components(),
            &[Component::Cyclic {
                prime: 3,
                exponent: 2,
                modulus: 9,
                generator: 2,
                order: 6
            }]
        );
        assert!(UnitGroup::new(2).is_err());
    }

    #[test]
    fn dlog_examples() {
        let g = UnitGroup::new(20).unwrap();
        assert_eq!(g.dlog_components(9).unwrap(), vec![0, 2]);
        assert_eq!(g.dlog_components(1).unwrap(), vec![0, 0]);
        assert_eq!(g.dlog_components(19).unwrap(), vec![1, 2]);
        assert!(g.dlog_components(10).is_err());
    }

    #[test]
    fn component_orders_multiply_to_phi() {
        for m in 3..=2000 {
            let g = UnitGroup::new(m).unwrap();
            let prod: u64 = g.components().iter().map(Component::order).product();
            assert_eq!(prod, g.order());
            let fprod: u64 = g.factors().iter().map(|f| f.order).product();
            assert_eq!(fprod, g.order());
        }
    }

    #[test]
    fn dlog_roundtrip() {
        for m in 3..=2000 {
            let g = UnitGroup::new(m).unwrap();
            for x in g.units() {
                let e = g.dlog_components(x).unwrap();
                assert_eq!(g.reconstruct(&e), x, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn two_part_generators_generate() {
        for u in 3..=10 {
            let n = 1u64 << u;
            let g = UnitGroup::new(n).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for a in 0..2 {
                for b in 0..(n / 4) {
                    seen.insert(g.reconstruct(&[a, b]));
                }
            }
            assert_eq!(seen.len() as u64, n / 2);
        }
    }

    #[test]
    fn index_two_signature_matches_pairwise_closure() {
        for m in [5u64, 8, 12, 15, 20, 21, 24, 40] {
            let g = UnitGroup::new(m).unwrap();
            let units: Vec<u64> = g.units().collect();
            let n = units.len();
            // every half-size subset containing 1
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize * 2 != n || mask & 1 == 0 {
                    continue;
                }
                let set: Vec<u64> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| units[i])
                    .collect();
                let closed = set
                    .iter()
                    .all(|&a| set.iter().all(|&b| set.contains(&(a * b % m))));
                assert_eq!(g.index_two_signature(&set).is_ok(), closed, "m={m} {set:?}");
            }
        }
        let g = UnitGroup::new(20).unwrap();
        assert_eq!(g.index_two_signature(&[1, 3, 7, 9]), Ok(vec![true, true]));
        assert!(g.index_two_signature(&[1, 9]).is_err());
    }

    #[test]
    fn order_dividing_examples() {
        assert_eq!(
            UnitGroup::new(20).unwrap().elements_of_order_dividing(1),
            vec![1]
        );
        assert_eq!(
            UnitGroup::new(20).unwrap().elements_of_order_dividing(2),
            vec![1, 9, 11, 19]
        );
        assert_eq!(
            UnitGroup::new(7).unwrap().elements_of_order_dividing(3),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn order_dividing_matches_filter() {
        for m in 3..=500u64 {
            let g = UnitGroup::new(m).unwrap();
            for f in 1..=12 {
                let brute: Vec<u64> = g.units().filter(|&x| pow_mod(x, f, m) == 1).collect();
                assert_eq!(g.elements_of_order_dividing(f), brute, "m={m} f={f}");
            }
        }
    }
}
