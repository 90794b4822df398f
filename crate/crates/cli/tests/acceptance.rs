//! Acceptance criteria C1-C8, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use quadgauss::arithmetic::{euler_phi, factorize, gcd, is_prime, UnitGroup};
use quadgauss::characters::{characters_of, criterion_quadratic_in, verify_ber_identity};
use quadgauss::classifier::{
    a_minus_set, audit_structural, characterization_predicts, classify, classify_odd_f,
    diff_against_reference, enumerate, is_semiprimitive, EnumerateOptions, Filter, OddFOptions,
};
use quadgauss::gauss_numeric::{
    build_field, build_field_with_cap, check_basic_properties, check_davenport_hasse,
    conjugate_two_value_test, find_prime_in_class, gauss_sum_numeric, quadratic_closed_form,
};
use quadgauss::stickelberger::{is_pure, profile, quadratic_partition_of};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadgauss"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn order(x: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let (mut y, mut k) = (x % n, 1);
    while y != 1 {
        y = y * x % n;
        k += 1;
    }
    k
}

fn generated(p: u64, n: u64) -> BTreeSet<u64> {
    let mut s = BTreeSet::new();
    let mut y = 1 % n;
    while s.insert(y) {
        y = y * p % n;
    }
    s
}

fn c1_odd_f() -> Outcome {
    let expected: [(u64, &[(u64, u64)]); 4] = [
        (1, &[(3, 1), (4, 1), (6, 1)]),
        (3, &[(7, 2), (9, 4), (18, 7), (21, 4), (28, 9), (39, 16)]),
        (5, &[(11, 3), (22, 3), (33, 4), (55, 16), (66, 25)]),
        (7, &[]),
    ];
    for (f, want) in expected {
        let got = classify_odd_f(f, OddFOptions::default())
            .map_err(|e| e.to_string())?
            .pairs;
        ensure(got == want, format!("f={f}: library gave {got:?}"))?;
        let out = bin()
            .args(["oddf", &f.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        let listed: Vec<String> = want.iter().map(|(m, p)| format!("({m}, {p})")).collect();
        let line = format!("f = {f}: {{{}}}", listed.join(", "));
        ensure(
            out.status.success() && text.lines().next() == Some(line.as_str()),
            format!("f={f}: binary printed {text}"),
        )?;
    }
    Ok("f = 1, 3, 5, 7 exact".into())
}

fn c2_table() -> Outcome {
    let recs = enumerate(
        3,
        1000,
        EnumerateOptions {
            filter: Filter::Quadratic,
            min_h: 3,
        },
    )
    .map_err(|e| e.to_string())?;
    let diff = diff_against_reference(&recs);
    ensure(
        diff.is_identical(),
        format!("missing {:?}, extra {:?}", diff.missing, diff.extra),
    )?;
    let status = bin()
        .args(["table", "--reference", "paper1000"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.success(), "binary table diff failed")?;
    Ok(format!("{} rows identical", diff.reference_len))
}

fn c3_oracles() -> Outcome {
    let mut pairs = 0;
    for m in 3..=200u64 {
        let g = Arc::new(UnitGroup::new(m).map_err(|e| e.to_string())?);
        for p in g.units() {
            let part = quadratic_partition_of(&profile(m, p).map_err(|e| e.to_string())?, &g);
            let crit = criterion_quadratic_in(&g, p).map_err(|e| e.to_string())?;
            let same = match (&part, &crit.witness) {
                (Some(q), Some(w)) => crit.holds && q.e0 == w.e0,
                (None, None) => !crit.holds,
                _ => false,
            };
            ensure(same, format!("m={m} p={p}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, zero mismatches"))
}

fn c4_bernoulli() -> Outcome {
    let mut n = 0;
    for m in 3..=60u64 {
        let g = Arc::new(UnitGroup::new(m).map_err(|e| e.to_string())?);
        for chi in characters_of(&g).into_iter().filter(|c| !c.is_principal()) {
            ensure(
                verify_ber_identity(&chi) == Ok(true),
                format!("m={m} chi={:?}", chi.exponents()),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} characters, exact"))
}

// Condition (1) of the small family, from brute-force orders over every
// coprime split m = c d with c > 1.
fn small_family(m: u64, p: u64) -> bool {
    let c_divs = (2..=m).filter(|&c| m.is_multiple_of(c) && gcd(c, m / c) == 1);
    c_divs.into_iter().any(|c| {
        let d = m / c;
        let (oc, od) = (order(p % c, c), order(p % d, d));
        if gcd(oc, od) != 1 || oc != euler_phi(c) {
            return false;
        }
        let sub = generated(p, d);
        factorize(c).primes().any(|l| sub.contains(&(l % d)))
    })
}

fn c5_purity() -> Outcome {
    let mut prime_power_pairs = 0;
    for m in (3..=200u64).filter(|&m| factorize(m).len() == 1) {
        for p in (1..m).filter(|&p| gcd(p, m) == 1) {
            let a = is_pure(m, p).map_err(|e| e.to_string())?;
            let b = is_semiprimitive(m, p).map_err(|e| e.to_string())?;
            ensure(a == b, format!("m={m} p={p}: pure {a}, semi-primitive {b}"))?;
            prime_power_pairs += 1;
        }
    }
    let mut family = 0;
    for m in 3..=500u64 {
        for p in (1..m).filter(|&p| gcd(p, m) == 1 && small_family(m, p)) {
            let rec = classify(m, p).map_err(|e| e.to_string())?;
            ensure(rec.class.is_pure(), format!("m={m} p={p} is {}", rec.class))?;
            family += 1;
        }
    }
    ensure(family > 0, "small family never triggered")?;
    Ok(format!(
        "{prime_power_pairs} prime-power pairs, {family} family members pure"
    ))
}

fn c6_a_sets() -> Outcome {
    let mut n = 0;
    for d1 in 1..=40u64 {
        for d2 in 1..=40u64 {
            // Independent enumeration of A^-.
            let brute: BTreeSet<(u64, u64)> = (1..d1)
                .flat_map(|a1| (1..d2).map(move |a2| (a1, a2)))
                .filter(|&(a1, a2)| (a1 * d2 + a2 * d1) % (d1 * d2) == 0 && (a1 + a2) % 2 == 1)
                .collect();
            ensure(
                brute == a_minus_set(d1, d2).members,
                format!("A^-({d1},{d2}) differs"),
            )?;
            let g = gcd(d1, d2);
            let predicted = if g.is_multiple_of(2) {
                d1.trailing_zeros() == d2.trailing_zeros()
            } else {
                g == 1
            };
            ensure(
                brute.is_empty() == predicted,
                format!("emptiness at ({d1},{d2})"),
            )?;
            if d1 % 4 == 2 && d2 % 4 == 0 {
                let single = brute.len() == 1 && brute.contains(&(d1 / 2, d2 / 2));
                ensure(
                    single == (gcd(d1 / 2, d2 / 2) == 1),
                    format!("halved singleton at ({d1},{d2})"),
                )?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs (d1, d2)"))
}

fn c7_numeric() -> Outcome {
    let p = find_prime_in_class(20, 9, 1000).ok_or("no prime")?;
    ensure(p == 29, format!("prime {p}"))?;
    let fld = build_field(29, 2).map_err(|e| e.to_string())?;
    let g = gauss_sum_numeric(&fld, 20, 1)
        .map_err(|e| e.to_string())?
        .value();
    let rel = (g.norm_sqr() - 841.0).abs() / 841.0;
    ensure(rel < 1e-6, format!("|G|^2 off by {rel:e}"))?;
    let basic = check_basic_properties(&fld, 20).map_err(|e| e.to_string())?;
    ensure(
        basic.frobenius_deviation < 1e-8 && basic.conjugation_deviation < 1e-8,
        format!("{basic:?}"),
    )?;
    let e0 = classify(20, 9)
        .map_err(|e| e.to_string())?
        .quadratic
        .ok_or("(20,9) not quadratic")?
        .e0;
    let conj = conjugate_two_value_test(&fld, 20, &e0).map_err(|e| e.to_string())?;
    ensure(conj.passed(), format!("{conj:?}"))?;

    for p in (3..=200u64).filter(|&p| is_prime(p)) {
        for h in 1..=3u32 {
            let fld = build_field_with_cap(p, h, 1 << 23).map_err(|e| e.to_string())?;
            let g = gauss_sum_numeric(&fld, 2, 1)
                .map_err(|e| e.to_string())?
                .value();
            let want: Complex64 = quadratic_closed_form(p, h);
            let rel = (g - want).norm() / want.norm();
            ensure(rel < 1e-6, format!("quadratic p={p} h={h}: {rel:e}"))?;
        }
    }

    let f7 = build_field(7, 1).map_err(|e| e.to_string())?;
    let f49 = build_field(7, 2).map_err(|e| e.to_string())?;
    let lift = check_davenport_hasse(&f7, &f49, 3, 2).map_err(|e| e.to_string())?;
    ensure(lift.deviation < 1e-6, format!("{lift:?}"))?;
    Ok(format!(
        "conjugate margin {:.2e}, lift deviation {:.1e}",
        conj.margin(),
        lift.deviation
    ))
}

fn c8_audits() -> Outcome {
    let recs = enumerate(3, 1000, EnumerateOptions::default()).map_err(|e| e.to_string())?;
    let mut audits = 0;
    let mut predicted = 0;
    for r in &recs {
        for a in audit_structural(r) {
            ensure(a.passed, format!("({}, {}): {}", r.m, r.pbar, a.name))?;
            audits += 1;
        }
        if let Some(q) = characterization_predicts(r.m, r.pbar) {
            ensure(
                q == r.class.is_quadratic(),
                format!("characterization at ({}, {})", r.m, r.pbar),
            )?;
            predicted += 1;
        }
    }
    Ok(format!(
        "{} records, {audits} audits, {predicted} characterization checks",
        recs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("C1 odd-f sets", c1_odd_f),
        ("C2 table m <= 1000", c2_table),
        ("C3 oracle equivalence m <= 200", c3_oracles),
        ("C4 Bernoulli identity m <= 60", c4_bernoulli),
        ("C5 purity and semi-primitivity", c5_purity),
        ("C6 A^- sets d <= 40", c6_a_sets),
        ("C7 numeric Gauss sums", c7_numeric),
        ("C8 structural audits m <= 1000", c8_audits),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                println!("FAIL {name}: {detail} [{secs:.2}s]");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
