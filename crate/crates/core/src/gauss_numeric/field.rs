//! Small finite fields `F_q`, `q = p^f`, with log/exp/trace tables.
//!
//! An element is stored as the index `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! of its coordinate vector in the power basis `1, X, ..., X^{f-1}`.

use crate::arithmetic::{factorize, is_prime};
use crate::error::{Error, Result};

/// Largest field size accepted by [`build_field`].
pub const FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct SmallField {
    p: u64,
    degree: u32,
    q: u64,
    poly: Vec<u64>,
    generator: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

// Polynomials over F_p, low degree first. p < 2^32 so products fit in u64.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_p(a: u64, p: u64) -> u64 {
    crate::arithmetic::pow_mod(a, p - 2, p)
}

/// `a * b mod poly` for `a, b` of length `deg(poly)`.
fn mulmod(a: &[u64], b: &[u64], poly: &[u64], p: u64) -> Vec<u64> {
    let f = poly.len() - 1;
    let mut r = vec![0u64; 2 * f - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    for i in (f..2 * f - 1).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..f {
            r[i - f + j] = (r[i - f + j] + (p - c) * poly[j]) % p;
        }
    }
    r.truncate(f);
    r
}

fn powmod(a: &[u64], mut e: u64, poly: &[u64], p: u64) -> Vec<u64> {
    let f = poly.len() - 1;
    let mut acc = vec![0u64; f];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, poly, p);
        }
        base = mulmod(&base, &base, poly, p);
        e >>= 1;
    }
    acc
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let db = b.len() - 1;
    let lead_inv = inv_p(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for j in 0..=db {
            a[da - db + j] = (a[da - db + j] + (p - c) * b[j]) % p;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(x, &y, p);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

/// Ben-Or: `poly` of degree `f` is irreducible iff `gcd(poly, X^(p^i) - X) = 1`
/// for `i = 1..=f/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let f = poly.len() - 1;
    if f == 1 {
        return true;
    }
    let mut x = vec![0u64; f];
    x[1] = 1;
    let mut h = x.clone();
    for _ in 1..=f / 2 {
        h = powmod(&h, p, poly, p);
        let mut d = h.clone();
        d[1] = (d[1] + p - 1) % p;
        if poly_gcd_degree(poly, &d, p) > 0 {
            return false;
        }
    }
    true
}

fn digits(mut n: u64, p: u64, f: usize) -> Vec<u64> {
    let mut d = vec![0u64; f];
    for c in d.iter_mut() {
        *c = n % p;
        n /= p;
    }
    d
}

fn index_of(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Least monic irreducible of degree `f`, comparing non-leading coefficients
/// from `X^{f-1}` down to the constant term.
fn least_irreducible(p: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    for n in 0..p.pow(f as u32) {
        let mut poly = digits(n, p, f);
        if poly[0] == 0 {
            continue;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn build_field(p: u64, f: u32) -> Result<SmallField> {
    build_field_with_cap(p, f, FIELD_CAP)
}

/// As [`build_field`] with an explicit size cap. Tables take `12 q` bytes.
pub fn build_field_with_cap(p: u64, f: u32, cap: u64) -> Result<SmallField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let too_large = Error::FieldTooLarge { p, degree: f, cap };
    if f == 0 || cap > u32::MAX as u64 {
        return Err(too_large);
    }
    let q = match p.checked_pow(f) {
        Some(q) if q <= cap => q,
        _ => return Err(too_large),
    };
    let fu = f as usize;
    let poly = least_irreducible(p, fu);
    let n = q - 1;
    let cofactors: Vec<u64> = factorize(n).primes().map(|l| n / l).collect();

    let generator = (1..q)
        .find(|&g| {
            let d = digits(g, p, fu);
            cofactors.iter().all(|&e| {
                let r = powmod(&d, e, &poly, p);
                r[0] != 1 || r[1..].iter().any(|&c| c != 0)
            })
        })
        .expect("F_q^x is cyclic");

    // Column i of `mat` holds g X^i, so g * cur = mat cur.
    let gd = digits(generator, p, fu);
    let x = digits(p, p, fu);
    let mut xi = vec![0u64; fu];
    xi[0] = 1;
    let mut cols = Vec::with_capacity(fu);
    for _ in 0..fu {
        cols.push(mulmod(&gd, &xi, &poly, p));
        xi = mulmod(&xi, &x, &poly, p);
    }
    let mat: Vec<Vec<u64>> = (0..fu)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![u32::MAX; q as usize];
    let mut cur = vec![0u64; fu];
    cur[0] = 1;
    let mut next = vec![0u64; fu];
    for k in 0..n {
        let idx = index_of(&cur, p);
        exp.push(idx as u32);
        log[idx as usize] = k as u32;
        // q <= 2^32 bounds each row sum by f p^2 < 2^64.
        for (row, out) in mat.iter().zip(next.iter_mut()) {
            *out = row.iter().zip(&cur).map(|(&a, &c)| a * c).sum::<u64>() % p;
        }
        std::mem::swap(&mut cur, &mut next);
    }

    let mut fld = SmallField {
        p,
        degree: f,
        q,
        poly,
        generator,
        exp,
        log,
        trace: Vec::new(),
    };
    // Tr(X^j) = sum_i (X^j)^(p^i), a constant.
    let basis_trace: Vec<u64> = (0..fu)
        .map(|j| {
            let x = p.pow(j as u32);
            let mut y = x;
            let mut sum = vec![0u64; fu];
            for _ in 0..fu {
                for (s, c) in sum.iter_mut().zip(digits(y, p, fu)) {
                    *s = (*s + c) % p;
                }
                y = fld.pow(y, p);
            }
            debug_assert!(sum[1..].iter().all(|&c| c == 0));
            sum[0]
        })
        .collect();
    let mut trace = Vec::with_capacity(q as usize);
    let mut d = vec![0u64; fu];
    for _ in 0..q {
        let t = d.iter().zip(&basis_trace).map(|(c, b)| c * b).sum::<u64>() % p;
        trace.push(t as u32);
        for c in d.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
    fld.trace = trace;
    Ok(fld)
}

impl SmallField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Defining polynomial, constant term first, monic.
    pub fn polynomial(&self) -> &[u64] {
        &self.poly
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Discrete log base the generator; `None` at zero.
    pub fn dlog(&self, x: u64) -> Option<u64> {
        match self.log[x as usize] {
            u32::MAX => None,
            k => Some(k as u64),
        }
    }

    /// `g^k`.
    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.q - 1)) as usize] as u64
    }

    pub fn trace(&self, x: u64) -> u64 {
        self.trace[x as usize] as u64
    }

    pub(crate) fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    pub(crate) fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    pub fn digits(&self, x: u64) -> Vec<u64> {
        digits(x, self.p, self.degree as usize)
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        index_of(d, self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s: Vec<u64> = self
            .digits(a)
            .iter()
            .zip(self.digits(b))
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.from_digits(&s)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match (self.dlog(a), self.dlog(b)) {
            (Some(i), Some(j)) => self.exp(i + j),
            _ => 0,
        }
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        match self.dlog(a) {
            None if e == 0 => 1,
            None => 0,
            Some(i) => self.exp(((i as u128 * e as u128) % (self.q - 1) as u128) as u64),
        }
    }

    /// The element `c` of the prime field.
    pub fn scalar(&self, c: u64) -> u64 {
        c % self.p
    }

    /// Evaluate a polynomial over the prime field (constant term first) at `x`.
    pub fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), self.scalar(c)))
    }
}
