//! Numeric Gauss sums over small finite fields.
//!
//! With `g` the stored generator of `F_q^x` and `psi(x) = zeta_p^Tr(x)`, the
//! sum for `eta^a`, where `eta(g^k) = zeta_m^k`, is
//! `G(eta^a) = sum_k zeta_m^(a k) psi(g^k)`.

mod checks;
mod field;
mod sum;

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::arithmetic::{gcd, is_prime, pow_mod};
use crate::error::{Error, Result};

pub use checks::{
    check_basic_properties, check_davenport_hasse, check_semiprimitive, conjugate_two_value_test,
    verify_pair, BasicReport, ConjugateReport, LiftReport, NumericVerification,
    SemiPrimitiveReport, DEFAULT_TOLERANCE,
};
pub use field::{build_field, build_field_with_cap, SmallField, FIELD_CAP};
pub use sum::ComplexSum;

/// `exp(2 pi i k / n)`.
pub fn root_of_unity(n: u64, k: u64) -> Complex64 {
    let (s, c) = (TAU * (k % n) as f64 / n as f64).sin_cos();
    Complex64::new(c, s)
}

/// Smallest prime `p = pbar (mod m)` with `p <= bound`.
pub fn find_prime_in_class(m: u64, pbar: u64, bound: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let mut p = pbar % m;
    if p == 0 {
        p = m;
    }
    while p <= bound {
        if is_prime(p) {
            return Some(p);
        }
        p = p.checked_add(m)?;
    }
    None
}

fn require_order(fld: &SmallField, m: u64) -> Result<()> {
    let n = fld.q() - 1;
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::OrderDoesNotDivide { m, q_minus_one: n });
    }
    Ok(())
}

/// `S_j = sum_{k = j mod m} psi(g^k)`, compensated.
fn buckets(fld: &SmallField, m: u64) -> Vec<ComplexSum> {
    let p = fld.p();
    let zp: Vec<Complex64> = (0..p).map(|t| root_of_unity(p, t)).collect();
    let trace = fld.trace_table();
    let mut out = vec![ComplexSum::new(); m as usize];
    let mut j = 0usize;
    for &x in fld.exp_table() {
        out[j].add(zp[trace[x as usize] as usize]);
        j += 1;
        if j == m as usize {
            j = 0;
        }
    }
    out
}

/// `G(eta^a)` for a character `eta` of order `m` on `F_q^x`.
pub fn gauss_sum_numeric(fld: &SmallField, m: u64, a: i64) -> Result<ComplexSum> {
    require_order(fld, m)?;
    let a = a.rem_euclid(m as i64) as u64;
    Ok(buckets(fld, m)
        .iter()
        .enumerate()
        .map(|(j, s)| s.value() * root_of_unity(m, a * j as u64))
        .collect())
}

/// `G(eta^a)` for every `a` in `0..m`, by one bucket pass and an FFT.
pub fn gauss_sums(fld: &SmallField, m: u64) -> Result<Vec<Complex64>> {
    require_order(fld, m)?;
    let mut v: Vec<Complex64> = buckets(fld, m).iter().map(ComplexSum::value).collect();
    // The inverse transform carries exp(+2 pi i a j / m) and no normalization.
    FftPlanner::new()
        .plan_fft_inverse(m as usize)
        .process(&mut v);
    Ok(v)
}

/// `(-1)^(h-1) sqrt((-1)^((p-1)/2) p)^h` for odd `p`: the Gauss sum of the
/// quadratic character of `F_{p^h}`.
pub fn quadratic_closed_form(p: u64, h: u32) -> Complex64 {
    let magnitude = (p as f64).sqrt().powi(h as i32);
    let i_power = if p % 4 == 3 { h % 4 } else { 0 };
    let unit = [
        Complex64::new(1.0, 0.0),
        Complex64::i(),
        Complex64::new(-1.0, 0.0),
        -Complex64::i(),
    ][i_power as usize];
    let sign = if h % 2 == 1 { 1.0 } else { -1.0 };
    unit * (sign * magnitude)
}

/// Predicted `p^(-h/2) G_{p^h}(eta_m)` when some power of `p` is `-1 mod m`:
/// with `s` minimal and `h = 2 s t`, the sign is `(-1)^(t-1)` for `p = 2` and
/// `(-1)^(t-1+(p^s+1)t/m)` otherwise. `None` outside this situation.
pub fn semiprimitive_sign(m: u64, p: u64, h: u32) -> Option<i32> {
    if m <= 2 || gcd(m, p) != 1 {
        return None;
    }
    let mut s = 1u64;
    let mut x = p % m;
    while x != m - 1 {
        if x == 1 || s > m {
            return None;
        }
        x = x * (p % m) % m;
        s += 1;
    }
    if !(h as u64).is_multiple_of(2 * s) {
        return None;
    }
    let t = h as u64 / (2 * s);
    let mut e = t - 1;
    if p != 2 {
        // (p^s + 1)/m mod 2 from p^s mod 2m.
        let r = (pow_mod(p, s, 2 * m) + 1) % (2 * m);
        e += (r / m) * (t % 2);
    }
    Some(if e.is_multiple_of(2) { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_in_classes() {
        assert_eq!(find_prime_in_class(20, 9, 1000), Some(29));
        assert_eq!(find_prime_in_class(3, 1, 100), Some(7));
        assert_eq!(find_prime_in_class(20, 9, 28), None);
        assert_eq!(find_prime_in_class(10, 3, 3), Some(3));
    }

    #[test]
    fn trivial_character_gives_minus_one() {
        for (p, f) in [(7, 1), (29, 2), (2, 6), (3, 5)] {
            let fld = build_field(p, f).unwrap();
            let m = fld.q() - 1;
            let g = gauss_sum_numeric(&fld, m, 0).unwrap().value();
            assert!(
                (g - Complex64::new(-1.0, 0.0)).norm() < 1e-9,
                "{p}^{f}: {g}"
            );
        }
    }

    #[test]
    fn quadratic_over_f7() {
        let fld = build_field(7, 1).unwrap();
        let g = gauss_sum_numeric(&fld, 2, 1).unwrap().value();
        assert!((g - Complex64::new(0.0, 7f64.sqrt())).norm() < 1e-9);
        assert!((quadratic_closed_form(7, 1) - g).norm() < 1e-12);
    }

    #[test]
    fn norm_at_841() {
        let fld = build_field(29, 2).unwrap();
        let g = gauss_sum_numeric(&fld, 20, 1).unwrap().value();
        assert!((g.norm_sqr() / 841.0 - 1.0).abs() < 1e-6);
        assert!(matches!(
            gauss_sum_numeric(&fld, 9, 1),
            Err(Error::OrderDoesNotDivide { .. })
        ));
    }

    #[test]
    fn fft_matches_direct() {
        let fld = build_field(3, 4).unwrap();
        let all = gauss_sums(&fld, 80).unwrap();
        for a in [0i64, 1, 7, 40, 79] {
            let d = gauss_sum_numeric(&fld, 80, a).unwrap().value();
            assert!((all[a as usize] - d).norm() < 1e-10);
        }
    }

    #[test]
    fn semiprimitive_examples() {
        // 2^2 = -1 mod 5; F_16 has h = 4, s = 2, t = 1.
        assert_eq!(semiprimitive_sign(5, 2, 4), Some(1));
        assert_eq!(semiprimitive_sign(5, 2, 8), Some(-1));
        // 3 = -1 mod 4, s = 1, h = 2: (p+1)/m = 1 so the sign is -1.
        assert_eq!(semiprimitive_sign(4, 3, 2), Some(-1));
        assert_eq!(semiprimitive_sign(7, 2, 6), None);
        assert_eq!(semiprimitive_sign(5, 2, 2), None);
    }
}
