use super::{gcd, mul_mod, pow_mod};

/// Prime-power decomposition `m = p_1^u_1 ... p_r^u_r` with strictly
/// increasing primes, so the 2-part (if any) comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    m: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().copied()
    }

    pub fn as_slice(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// The prime powers `m_i = p_i^u_i`.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, u)| p.pow(u))
    }

    pub fn v2(&self) -> u32 {
        match self.factors.first() {
            Some(&(2, u)) => u,
            _ => 0,
        }
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, u)| (p - 1) * p.pow(u - 1))
            .product()
    }

    /// Exponent of the unit group (Carmichael's lambda).
    pub fn carmichael(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, u)| {
                if p == 2 && u >= 3 {
                    1u64 << (u - 2)
                } else {
                    (p - 1) * p.pow(u - 1)
                }
            })
            .fold(1, super::lcm)
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, u) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..u {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin, exact on all of `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant with batched gcds. Deterministic: the polynomial constant
// is stepped through 1, 2, 3, ... until a proper factor falls out.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

const TRIAL_LIMIT: u64 = 1 << 12;

/// Trial division, with a Pollard-rho fallback for cofactors that survive
/// division by everything below `2^12`. Moduli up to `2^24` never reach the
/// fallback.
pub fn factorize(m: u64) -> Factorization {
    let mut primes = Vec::new();
    let mut n = m;
    if n > 0 {
        let mut d = 2u64;
        while d <= TRIAL_LIMIT && d * d <= n {
            while n.is_multiple_of(d) {
                primes.push(d);
                n /= d;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if n > 1 {
            split_into(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { m, factors }
}
