//! Numeric checks of Gauss sum identities and of quadratic classifications.

use num_complex::Complex64;
use serde::Serialize;

use super::field::{build_field_with_cap, SmallField};
use super::{find_prime_in_class, gauss_sums, require_order, root_of_unity, semiprimitive_sign};
use crate::arithmetic::{gcd, inv_mod, lcm, mult_order, UnitGroup};
use crate::classifier::classify;
use crate::error::{Error, Result};

/// Tolerance on unit-circle quantities (sums divided by their modulus).
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct BasicReport {
    pub q: u64,
    pub m: u64,
    pub tolerance: f64,
    /// `max | |G|^2 / q - 1 |` over `a != 0 mod m`.
    pub norm_deviation: f64,
    /// `max |G(eta^(ap)) - G(eta^a)| / sqrt q`.
    pub frobenius_deviation: f64,
    /// `max |G(eta^-a) - eta^a(-1) conj G(eta^a)| / sqrt q`.
    pub conjugation_deviation: f64,
}

impl BasicReport {
    pub fn passed(&self) -> bool {
        self.norm_deviation < self.tolerance
            && self.frobenius_deviation < self.tolerance
            && self.conjugation_deviation < self.tolerance
    }
}

pub fn check_basic_properties(fld: &SmallField, m: u64) -> Result<BasicReport> {
    let g = gauss_sums(fld, m)?;
    let q = fld.q();
    let sq = (q as f64).sqrt();
    // eta(-1) = zeta_m^(log(-1)) with log(-1) = (q-1)/2, or 0 in characteristic 2.
    let log_minus_one = if q % 2 == 1 { (q - 1) / 2 } else { 0 };
    let mut rep = BasicReport {
        q,
        m,
        tolerance: DEFAULT_TOLERANCE,
        norm_deviation: 0.0,
        frobenius_deviation: 0.0,
        conjugation_deviation: 0.0,
    };
    for a in 1..m {
        let ga = g[a as usize];
        rep.norm_deviation = rep
            .norm_deviation
            .max((ga.norm_sqr() / q as f64 - 1.0).abs());
        let ap = (a as u128 * fld.p() as u128 % m as u128) as usize;
        rep.frobenius_deviation = rep.frobenius_deviation.max((g[ap] - ga).norm() / sq);
        let sign = root_of_unity(m, (a as u128 * log_minus_one as u128 % m as u128) as u64);
        let d = (g[(m - a) as usize] - sign * ga.conj()).norm() / sq;
        rep.conjugation_deviation = rep.conjugation_deviation.max(d);
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub q_small: u64,
    pub q_big: u64,
    pub m: u64,
    pub s: u32,
    pub tolerance: f64,
    /// `max |G_big(eta^a o N) - (-1)^(s-1) G_small(eta^a)^s| / q_small^(s/2)` over `a`.
    pub deviation: f64,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.deviation < self.tolerance
    }
}

/// Compares the Gauss sum of `eta^a o Norm` on `big` with
/// `(-1)^(s-1) G(eta^a)^s` on `small`, for every `a mod m`.
pub fn check_davenport_hasse(
    small: &SmallField,
    big: &SmallField,
    m: u64,
    s: u32,
) -> Result<LiftReport> {
    if small.p() != big.p() || s == 0 || big.degree() != s * small.degree() {
        return Err(Error::FieldTowerMismatch(format!(
            "F_{}^{} is not a degree-{s} extension of F_{}^{}",
            big.p(),
            big.degree(),
            small.p(),
            small.degree()
        )));
    }
    require_order(small, m)?;
    let (qs, qb) = (small.q(), big.q());
    let ms = qs - 1;
    let index = (qb - 1) / ms;
    // A root theta of the small field's polynomial lies in the copy of F_qs
    // inside F_qb: zero or a power g_big^(index j).
    let theta = std::iter::once(0)
        .chain((0..ms).map(|j| big.exp(index * j)))
        .find(|&x| big.eval(small.polynomial(), x) == 0)
        .ok_or_else(|| Error::FieldTowerMismatch("no embedding of the small field".into()))?;
    let gamma = big.eval(&small.digits(small.generator()), theta);
    // gamma = g_big^(u index); Norm(g_big) = g_big^index = gamma^(u^-1).
    let u = big.dlog(gamma).expect("image of a generator is nonzero") / index;
    let v = inv_mod(u % ms, ms).expect("image of a generator has full order");

    let gs = gauss_sums(small, m)?;
    let gb = gauss_sums(big, m)?;
    let scale = (qs as f64).powf(s as f64 / 2.0);
    let sign = if s % 2 == 1 { 1.0 } else { -1.0 };
    let mut deviation = 0.0f64;
    for a in 0..m {
        let b = (a as u128 * v as u128 % m as u128) as usize;
        let predicted = gs[a as usize].powu(s) * sign;
        deviation = deviation.max((gb[b] - predicted).norm() / scale);
    }
    Ok(LiftReport {
        q_small: qs,
        q_big: qb,
        m,
        s,
        tolerance: DEFAULT_TOLERANCE,
        deviation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugateReport {
    pub q: u64,
    pub m: u64,
    /// `m lcm(2, m)`.
    pub exponent: u64,
    pub tolerance: f64,
    /// `max |r_t^exponent - 1|` over `t` in `E0`.
    pub inside_deviation: f64,
    /// `max |r_t^exponent - 1|` over `t` outside `E0`.
    pub outside_deviation: f64,
}

impl ConjugateReport {
    pub fn passed(&self) -> bool {
        self.inside_deviation < self.tolerance && self.outside_deviation >= self.tolerance
    }

    /// How far the outside ratios sit from the tolerance, as a multiple of it.
    pub fn margin(&self) -> f64 {
        self.outside_deviation / self.tolerance
    }
}

/// With `r_t = G(eta^t) / G(eta)`, checks that `r_t^(m w) = 1` for `t` in
/// `E0` and fails for some `t` outside it (`w = lcm(2, m)`).
pub fn conjugate_two_value_test(fld: &SmallField, m: u64, e0: &[u64]) -> Result<ConjugateReport> {
    require_order(fld, m)?;
    let group = UnitGroup::new(m)?;
    group
        .index_two_signature(e0)
        .map_err(|reason| Error::NotIndexTwoSubgroup { modulus: m, reason })?;
    let g = gauss_sums(fld, m)?;
    let w = lcm(2, m);
    let exponent = m * w;
    let g1 = g[1];
    let mut member = vec![false; m as usize];
    e0.iter().for_each(|&t| member[t as usize] = true);
    let mut inside = 0.0f64;
    let mut outside = 0.0f64;
    for t in (1..m).filter(|&t| gcd(t, m) == 1) {
        let r = g[t as usize] / g1;
        // Normalize away the tiny modulus error before the large power.
        let r = r / r.norm();
        let d = (Complex64::from_polar(1.0, r.arg() * exponent as f64) - 1.0).norm();
        let slot = if member[t as usize] {
            &mut inside
        } else {
            &mut outside
        };
        *slot = slot.max(d);
    }
    Ok(ConjugateReport {
        q: fld.q(),
        m,
        exponent,
        tolerance: exponent as f64 * 1e-10,
        inside_deviation: inside,
        outside_deviation: outside,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SemiPrimitiveReport {
    pub predicted: i32,
    /// `max |p^(-h/2) G(eta^a) - predicted|` over `a` of exact order `m`.
    pub deviation: f64,
}

/// The sign prediction for `eta` of order `m` when `-1` is a power of `p`
/// modulo `m`; `None` when the prediction does not apply.
pub fn check_semiprimitive(fld: &SmallField, m: u64) -> Result<Option<SemiPrimitiveReport>> {
    let Some(predicted) = semiprimitive_sign(m, fld.p(), fld.degree()) else {
        return Ok(None);
    };
    let g = gauss_sums(fld, m)?;
    let scale = (fld.q() as f64).sqrt();
    let deviation = (1..m)
        .filter(|&a| gcd(a, m) == 1)
        .map(|a| (g[a as usize] / scale - predicted as f64).norm())
        .fold(0.0, f64::max);
    Ok(Some(SemiPrimitiveReport {
        predicted,
        deviation,
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericVerification {
    pub m: u64,
    pub pbar: u64,
    pub p: u64,
    pub f: u64,
    pub q: u64,
    pub class: String,
    pub basic: BasicReport,
    /// Present for quadratic classes.
    pub conjugate: Option<ConjugateReport>,
    /// Present when some power of `p` is `-1 mod m`.
    pub semiprimitive: Option<SemiPrimitiveReport>,
    /// Lift to the quadratic extension, when it fits under the cap.
    pub lift: Option<LiftReport>,
}

impl NumericVerification {
    pub fn passed(&self) -> bool {
        self.basic.passed()
            && self.conjugate.as_ref().is_none_or(ConjugateReport::passed)
            && self
                .semiprimitive
                .as_ref()
                .is_none_or(|s| s.deviation < DEFAULT_TOLERANCE)
            && self.lift.as_ref().is_none_or(LiftReport::passed)
    }
}

/// Picks the least prime `p = pbar mod m` with `p^f <= max_q` and runs every
/// applicable check on `F_{p^f}`. `Ok(None)` when no such prime exists.
pub fn verify_pair(m: u64, pbar: u64, max_q: u64) -> Result<Option<NumericVerification>> {
    let rec = classify(m, pbar)?;
    let f = mult_order(pbar, m)?;
    let bound = (1..=max_q)
        .take_while(|&x| x.checked_pow(f as u32).is_some_and(|v| v <= max_q))
        .last();
    let Some(p) = bound.and_then(|b| find_prime_in_class(m, pbar, b)) else {
        return Ok(None);
    };
    let fld = build_field_with_cap(p, f as u32, max_q)?;
    let basic = check_basic_properties(&fld, m)?;
    let conjugate = match &rec.quadratic {
        Some(qd) => Some(conjugate_two_value_test(&fld, m, &qd.e0)?),
        None => None,
    };
    let semiprimitive = check_semiprimitive(&fld, m)?;
    let lift = match fld.q().checked_mul(fld.q()) {
        Some(q2) if q2 <= max_q => {
            let big = build_field_with_cap(p, 2 * f as u32, max_q)?;
            Some(check_davenport_hasse(&fld, &big, m, 2)?)
        }
        _ => None,
    };
    Ok(Some(NumericVerification {
        m,
        pbar,
        p,
        f,
        q: fld.q(),
        class: rec.class.name().to_string(),
        basic,
        conjugate,
        semiprimitive,
        lift,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{divisors, factorize, is_prime};
    use crate::gauss_numeric::{build_field, gauss_sum_numeric, quadratic_closed_form};

    #[test]
    fn basic_at_841() {
        let fld = build_field(29, 2).unwrap();
        let rep = check_basic_properties(&fld, 20).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.norm_deviation < 1e-6);
    }

    #[test]
    fn conjugate_split_at_20_9() {
        let fld = build_field(29, 2).unwrap();
        let rep = conjugate_two_value_test(&fld, 20, &[1, 3, 7, 9]).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.margin() > 1.0);
        // The other order-2 splits do not separate the conjugates.
        let wrong = conjugate_two_value_test(&fld, 20, &[1, 9, 11, 19]).unwrap();
        assert!(!wrong.passed());
    }

    #[test]
    fn conjugate_rejects_non_subgroup() {
        let fld = build_field(2, 4).unwrap();
        let err = conjugate_two_value_test(&fld, 5, &[1, 2, 3, 4]).unwrap_err();
        assert!(matches!(err, Error::NotIndexTwoSubgroup { .. }));
    }

    #[test]
    fn davenport_hasse_examples() {
        let f7 = build_field(7, 1).unwrap();
        let f49 = build_field(7, 2).unwrap();
        assert!(check_davenport_hasse(&f7, &f49, 3, 2).unwrap().passed());
        assert!(check_davenport_hasse(&f7, &f7, 6, 1).unwrap().passed());
        let f5 = build_field(5, 1).unwrap();
        let f125 = build_field(5, 3).unwrap();
        assert!(check_davenport_hasse(&f5, &f125, 4, 3).unwrap().passed());
        let f16 = build_field(2, 4).unwrap();
        let f256 = build_field(2, 8).unwrap();
        assert!(check_davenport_hasse(&f16, &f256, 15, 2).unwrap().passed());
        assert!(matches!(
            check_davenport_hasse(&f7, &f125, 2, 3),
            Err(Error::FieldTowerMismatch(_))
        ));
        assert!(matches!(
            check_davenport_hasse(&f49, &f49, 3, 2),
            Err(Error::FieldTowerMismatch(_))
        ));
    }

    #[test]
    fn basic_properties_all_small_fields() {
        for q in 3..=4096u64 {
            let fac = factorize(q);
            if fac.len() != 1 {
                continue;
            }
            let (p, f) = fac.as_slice()[0];
            let fld = build_field(p, f).unwrap();
            for m in divisors(q - 1).into_iter().filter(|&m| m > 2) {
                let rep = check_basic_properties(&fld, m).unwrap();
                assert!(rep.passed(), "q={q} m={m}: {rep:?}");
            }
        }
    }

    #[test]
    fn quadratic_closed_form_small() {
        for p in (3..=60u64).filter(|&p| is_prime(p)) {
            for h in 1..=3u32 {
                if p.pow(h) > crate::gauss_numeric::FIELD_CAP {
                    continue;
                }
                let fld = build_field(p, h).unwrap();
                let g = gauss_sum_numeric(&fld, 2, 1).unwrap().value();
                let want = quadratic_closed_form(p, h);
                assert!(
                    (g - want).norm() / want.norm() < 1e-9,
                    "p={p} h={h}: {g} vs {want}"
                );
            }
        }
    }

    #[test]
    fn semiprimitive_sign_small() {
        let mut checked = 0;
        for (p, h) in [
            (2u64, 4u32),
            (2, 6),
            (2, 8),
            (3, 2),
            (3, 4),
            (5, 2),
            (7, 2),
            (3, 6),
        ] {
            let fld = build_field(p, h).unwrap();
            for m in divisors(fld.q() - 1).into_iter().filter(|&m| m > 2) {
                if let Some(rep) = check_semiprimitive(&fld, m).unwrap() {
                    assert!(rep.deviation < 1e-9, "p={p} h={h} m={m}: {rep:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn verify_pair_20_9() {
        let v = verify_pair(20, 9, 1 << 20).unwrap().unwrap();
        assert_eq!((v.p, v.q), (29, 841));
        assert!(v.conjugate.is_some());
        assert!(v.lift.is_some());
        assert!(v.passed(), "{v:?}");
        assert!(verify_pair(20, 9, 800).unwrap().is_none());
    }
}
