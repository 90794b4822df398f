//! Command-line frontend. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 when a check or diff fails, 2 on
//! usage errors.

pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use quadgauss::arithmetic::gcd;
use quadgauss::characters::{criterion_quadratic, criterion_quadratic_reference};
use quadgauss::classifier::{
    audit_structural, classify, classify_odd_f, diff_against_reference, enumerate,
    EnumerateOptions, Filter, OddFOptions, DEFAULT_WORK_BUDGET,
};
use quadgauss::gauss_numeric::{verify_pair, FIELD_CAP};
use quadgauss::stickelberger::profile;
use quadgauss::Error;

use output::{write_records, Format};

/// Default upper bound on `--m-max` without `--unsafe-max`.
pub const DEFAULT_M_CAP: u64 = 10_000;

#[derive(Parser)]
#[command(
    name = "quadgauss",
    version,
    about = "Gauss sums with a power in a quadratic field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Quadratic,
    Pure,
    All,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Quadratic => Filter::Quadratic,
            FilterArg::Pure => Filter::Pure,
            FilterArg::All => Filter::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReferenceArg {
    Paper1000,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every orbit (m, pbar) with m in a range.
    Classify {
        #[arg(long, default_value_t = 3)]
        m_min: u64,
        #[arg(long)]
        m_max: u64,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        #[arg(long, default_value_t = 0)]
        min_h: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Worker threads; output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow --m-max above 10000.
        #[arg(long)]
        unsafe_max: bool,
    },
    /// Full report for one pair.
    Check { m: u64, p: u64 },
    /// Sweep m <= 1000, h > 2 and diff against the embedded table.
    Table {
        #[arg(long, value_enum)]
        reference: ReferenceArg,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// All quadratic pairs of a fixed odd order f.
    Oddf {
        f: u64,
        /// Cap on the estimated coset-walk work.
        #[arg(long, default_value_t = DEFAULT_WORK_BUDGET)]
        budget: u128,
    },
    /// Exact and exhaustive consistency suites.
    Selftest {
        /// Bound for the orthogonality and oracle-equivalence suites.
        #[arg(long, default_value_t = 200)]
        max_m: u64,
        /// Bound for the Bernoulli identity suite.
        #[arg(long, default_value_t = 60)]
        ber_max_m: u64,
        /// Bound on d1, d2 for the A^- suites.
        #[arg(long, default_value_t = 40)]
        max_d: u64,
    },
    /// Numeric Gauss sum checks over F_q for a prime p = pbar mod m.
    VerifyNumeric {
        m: u64,
        pbar: u64,
        #[arg(long, default_value_t = FIELD_CAP)]
        max_q: u64,
    },
}

enum Failure {
    Check(String),
    Usage(String),
}

type Outcome = std::result::Result<(), Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAUnit { .. }
            | Error::ModulusTooSmall { .. }
            | Error::EvenOrder(_)
            | Error::OrderOutOfRange { .. }
            | Error::FieldTooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Check(format!("{e:#}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = match cli.command {
        Command::Classify {
            m_min,
            m_max,
            filter,
            min_h,
            format,
            out: path,
            jobs,
            unsafe_max,
        } => cmd_classify(
            &mut out,
            m_min,
            m_max,
            filter.into(),
            min_h,
            format,
            path,
            jobs,
            unsafe_max,
        ),
        Command::Check { m, p } => cmd_check(&mut out, m, p),
        Command::Table {
            reference: ReferenceArg::Paper1000,
            jobs,
        } => cmd_table(&mut out, jobs),
        Command::Oddf { f, budget } => cmd_oddf(&mut out, f, budget),
        Command::Selftest {
            max_m,
            ber_max_m,
            max_d,
        } => cmd_selftest(&mut out, max_m, ber_max_m, max_d),
        Command::VerifyNumeric { m, pbar, max_q } => cmd_verify(&mut out, m, pbar, max_q),
    };
    let _ = out.flush();
    match res {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}

fn with_jobs<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> std::result::Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Check(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify(
    out: &mut impl Write,
    m_min: u64,
    m_max: u64,
    filter: Filter,
    min_h: u64,
    format: Format,
    path: Option<std::path::PathBuf>,
    jobs: Option<usize>,
    unsafe_max: bool,
) -> Outcome {
    if m_max > DEFAULT_M_CAP && !unsafe_max {
        return Err(Failure::Usage(format!(
            "--m-max {m_max} exceeds {DEFAULT_M_CAP}; pass --unsafe-max to run anyway"
        )));
    }
    if m_min < 3 {
        return Err(Failure::Usage("--m-min must be at least 3".into()));
    }
    let opts = EnumerateOptions { filter, min_h };
    let mut records = with_jobs(jobs, || enumerate(m_min, m_max, opts))??;
    records.sort_by_key(|r| (r.m, r.pbar));
    match path {
        Some(p) => write_records(File::create(p)?, &records, format)?,
        None => write_records(out, &records, format)?,
    }
    Ok(())
}

fn fmt_set(xs: &[u64]) -> String {
    let inner: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn cmd_check(out: &mut impl Write, m: u64, p: u64) -> Outcome {
    if m < 3 {
        return Err(Failure::Usage(format!("modulus {m} is below 3")));
    }
    if gcd(p, m) != 1 {
        return Err(Failure::Usage(format!("{p} is not a unit modulo {m}")));
    }
    let rec = classify(m, p)?;
    let prof = profile(m, p)?;
    writeln!(
        out,
        "m = {m}, p = {p}, pbar = {}, f = {}, h = {}",
        rec.pbar, rec.f, rec.h
    )?;
    writeln!(out, "class: {}", rec.class)?;
    writeln!(
        out,
        "coset sums S(t): {} distinct value(s) {}",
        prof.values.len(),
        fmt_set(&prof.values)
    )?;
    for (v, members) in &prof.partition {
        if members.len() <= 32 {
            writeln!(out, "  S = {v}: {}", fmt_set(members))?;
        } else {
            writeln!(out, "  S = {v}: {} units", members.len())?;
        }
    }
    let crit = criterion_quadratic(m, p)?;
    writeln!(
        out,
        "character criterion: {}",
        if crit.holds { "holds" } else { "fails" }
    )?;
    let v = if crit.truncated {
        format!("at least {}", crit.nonvanishing.len())
    } else {
        crit.nonvanishing.len().to_string()
    };
    writeln!(
        out,
        "  odd characters trivial on p with nonvanishing product: {v}"
    )?;
    if let Some(w) = &crit.witness {
        writeln!(
            out,
            "  annihilator exponents {:?}, conductor {}",
            w.annihilator.exponents(),
            w.annihilator.conductor()
        )?;
    }
    let literal = criterion_quadratic_reference(m, p)?;
    let fast_e0 = crit.witness.as_ref().map(|w| w.e0.clone());
    writeln!(
        out,
        "  literal route agrees: {}",
        if literal == fast_e0 { "yes" } else { "NO" }
    )?;
    if let Some(q) = &rec.quadratic {
        writeln!(out, "E0 = {}", fmt_set(&q.e0))?;
        writeln!(out, "A0 = {}, A1 = {}", q.a0, q.a1)?;
        writeln!(
            out,
            "conductor = {}, discriminant = {}",
            q.conductor, q.discriminant
        )?;
        writeln!(out, "X^-: {:?}", q.x_minus)?;
    }
    let audits = audit_structural(&rec);
    if !audits.is_empty() {
        writeln!(out, "audits:")?;
        for a in &audits {
            writeln!(
                out,
                "  {} {}",
                if a.passed { "PASS" } else { "FAIL" },
                a.name
            )?;
        }
    }
    if literal != fast_e0 {
        return Err(Failure::Check("character criterion routes disagree".into()));
    }
    Ok(())
}

fn cmd_table(out: &mut impl Write, jobs: Option<usize>) -> Outcome {
    let opts = EnumerateOptions {
        filter: Filter::Quadratic,
        min_h: 3,
    };
    let records = with_jobs(jobs, || enumerate(3, 1000, opts))??;
    let diff = diff_against_reference(&records);
    writeln!(
        out,
        "reference rows: {}, computed rows: {}",
        diff.reference_len, diff.computed_len
    )?;
    for r in &diff.missing {
        writeln!(out, "missing [ {}, {}, {}, {} ]", r.m, r.pbar, r.f, r.h)?;
    }
    for r in &diff.extra {
        writeln!(out, "extra [ {}, {}, {}, {} ]", r.m, r.pbar, r.f, r.h)?;
    }
    if diff.is_identical() {
        writeln!(out, "identical")?;
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} missing, {} extra",
            diff.missing.len(),
            diff.extra.len()
        )))
    }
}

fn cmd_oddf(out: &mut impl Write, f: u64, budget: u128) -> Outcome {
    let rep = classify_odd_f(
        f,
        OddFOptions {
            work_budget: budget,
            ..OddFOptions::default()
        },
    )?;
    let pairs: Vec<String> = rep
        .pairs
        .iter()
        .map(|(m, p)| format!("({m}, {p})"))
        .collect();
    writeln!(out, "f = {f}: {{{}}}", pairs.join(", "))?;
    writeln!(
        out,
        "candidate moduli {}, surviving {}, orbits {}, screened out {}, classified {}, audited {}",
        rep.candidate_moduli,
        rep.surviving_moduli,
        rep.orbits_examined,
        rep.screened_out,
        rep.fully_classified,
        rep.audited
    )?;
    Ok(())
}

fn cmd_selftest(out: &mut impl Write, max_m: u64, ber_max_m: u64, max_d: u64) -> Outcome {
    let suites = vec![
        selftest::bernoulli(ber_max_m)?,
        selftest::orthogonality(max_m)?,
        selftest::oracle_equivalence(max_m)?,
        selftest::a_sets(max_d),
    ];
    let mut failed = 0;
    for s in &suites {
        let tag = if s.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} {} ({} checks)", s.name, s.checks)?;
        for f in s.failures.iter().take(20) {
            writeln!(out, "  {f}")?;
        }
        failed += usize::from(!s.passed());
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} suite(s) failed")));
    }
    Ok(())
}

fn cmd_verify(out: &mut impl Write, m: u64, pbar: u64, max_q: u64) -> Outcome {
    if m < 3 || gcd(pbar, m) != 1 {
        return Err(Failure::Usage(format!(
            "need m >= 3 and pbar a unit modulo m, got ({m}, {pbar})"
        )));
    }
    if max_q > FIELD_CAP {
        return Err(Failure::Usage(format!("--max-q is capped at {FIELD_CAP}")));
    }
    let Some(v) = verify_pair(m, pbar, max_q)? else {
        return Err(Failure::Check(format!(
            "no prime p = {pbar} mod {m} with p^f <= {max_q}"
        )));
    };
    let tag = |ok: bool| if ok { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "m = {m}, pbar = {pbar}, class {}: p = {}, f = {}, q = {}",
        v.class, v.p, v.f, v.q
    )?;
    let b = &v.basic;
    writeln!(
        out,
        "{} |G|^2 = q: max deviation {:.3e}",
        tag(b.norm_deviation < b.tolerance),
        b.norm_deviation
    )?;
    writeln!(
        out,
        "{} G(eta^p) = G(eta): max deviation {:.3e}",
        tag(b.frobenius_deviation < b.tolerance),
        b.frobenius_deviation
    )?;
    writeln!(
        out,
        "{} G(eta^-1) = eta(-1) conj G(eta): max deviation {:.3e}",
        tag(b.conjugation_deviation < b.tolerance),
        b.conjugation_deviation
    )?;
    if let Some(c) = &v.conjugate {
        writeln!(
            out,
            "{} conjugate ratios to the power {}: inside E0 {:.3e}, outside {:.3e} (tolerance {:.1e}, margin {:.3e})",
            tag(c.passed()),
            c.exponent,
            c.inside_deviation,
            c.outside_deviation,
            c.tolerance,
            c.margin()
        )?;
    }
    if let Some(s) = &v.semiprimitive {
        writeln!(
            out,
            "{} sign {:+}: max deviation {:.3e}",
            tag(s.deviation < b.tolerance),
            s.predicted,
            s.deviation
        )?;
    }
    match &v.lift {
        Some(l) => writeln!(
            out,
            "{} lift to F_{}: max deviation {:.3e}",
            tag(l.passed()),
            l.q_big,
            l.deviation
        )?,
        None => writeln!(out, "skip lift: q^2 exceeds {max_q}")?,
    }
    if v.passed() {
        Ok(())
    } else {
        Err(Failure::Check("numeric checks failed".into()))
    }
}
