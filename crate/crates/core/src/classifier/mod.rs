//! Classification of pairs `(m, pbar)` by the field generated by a power of
//! the Gauss sum.
//!
//! Every pair is run through both the Stickelberger coset test and the
//! character criterion. Disagreement is a bug and surfaces as
//! [`Error::OracleMismatch`].

mod aset;
mod audit;
mod oddf;
mod reference;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arithmetic::{gcd, mul_mod, mult_order, UnitGroup};
use crate::characters::{criterion_quadratic_in, field_discriminant, has_full_conductor};
use crate::error::{Error, Result};
use crate::stickelberger::{profile, quadratic_partition_of};

pub use aset::{a_minus_set, a_plus_set, APlusMinusSet};
pub use audit::{
    audit_structural, characterization_predicts, component_data, small_family_first_condition,
    AuditCheck, ComponentData,
};
pub use oddf::{classify_odd_f, OddFOptions, OddFReport, DEFAULT_WORK_BUDGET, MAX_ODD_F};
pub use reference::{diff_against_reference, reference_rows, ReferenceDiff, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassKind {
    SemiPrimitive,
    PureNonSemiPrimitive,
    QuadraticIndex2,
    QuadraticGeneral,
    /// Neither pure nor quadratic.
    Other,
}

impl ClassKind {
    pub fn is_pure(self) -> bool {
        matches!(
            self,
            ClassKind::SemiPrimitive | ClassKind::PureNonSemiPrimitive
        )
    }

    pub fn is_quadratic(self) -> bool {
        matches!(
            self,
            ClassKind::QuadraticIndex2 | ClassKind::QuadraticGeneral
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::SemiPrimitive => "SemiPrimitive",
            ClassKind::PureNonSemiPrimitive => "PureNonSemiPrimitive",
            ClassKind::QuadraticIndex2 => "QuadraticIndex2",
            ClassKind::QuadraticGeneral => "QuadraticGeneral",
            ClassKind::Other => "Other",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum XMinusStatus {
    Empty,
    SingletonAnn,
}

impl fmt::Display for XMinusStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XMinusStatus::Empty => "Empty",
            XMinusStatus::SingletonAnn => "SingletonAnn",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticData {
    pub e0: Vec<u64>,
    pub a0: u64,
    pub a1: u64,
    /// Conductor of the annihilator character.
    pub conductor: u64,
    pub discriminant: i64,
    pub x_minus: XMinusStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub m: u64,
    pub pbar: u64,
    pub f: u64,
    pub h: u64,
    pub class: ClassKind,
    pub quadratic: Option<QuadraticData>,
}

/// Minimum of `{p^i mod m : 1 <= i <= f-1, gcd(i, f) = 1}`; `p mod m` when
/// `f = 1`.
pub fn canonical_pbar(m: u64, p: u64) -> Result<u64> {
    let f = mult_order(p, m)?;
    let p = p % m;
    if f == 1 {
        return Ok(p);
    }
    let mut best = u64::MAX;
    let mut x = 1u64;
    for i in 1..f {
        x = mul_mod(x, p, m);
        if gcd(i, f) == 1 {
            best = best.min(x);
        }
    }
    Ok(best)
}

/// Whether `-1` lies in `<p>` modulo `m`.
pub fn is_semiprimitive(m: u64, p: u64) -> Result<bool> {
    if m < 3 {
        return Err(Error::ModulusTooSmall { modulus: m, min: 3 });
    }
    let f = mult_order(p, m)?;
    let p = p % m;
    let mut x = 1u64;
    for _ in 0..f {
        x = mul_mod(x, p, m);
        if x == m - 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

fn mismatch(m: u64, p: u64, detail: impl Into<String>) -> Error {
    Error::OracleMismatch {
        m,
        p,
        detail: detail.into(),
    }
}

pub fn classify(m: u64, p: u64) -> Result<ClassificationRecord> {
    let group = Arc::new(UnitGroup::new(m)?);
    classify_in(&group, p)
}

/// [`classify`] reusing a prebuilt unit group.
pub fn classify_in(group: &Arc<UnitGroup>, p: u64) -> Result<ClassificationRecord> {
    let m = group.modulus();
    let prof = profile(m, p)?;
    let p = prof.p;
    let pbar = canonical_pbar(m, p)?;
    let criterion = criterion_quadratic_in(group, p)?;

    let pure_s = prof.is_pure();
    if pure_s && prof.values[0] * 2 != prof.f * m {
        return Err(mismatch(m, p, "single coset value differs from f m / 2"));
    }
    let pure_c = criterion.is_pure();
    if pure_s != pure_c {
        return Err(mismatch(
            m,
            p,
            format!("purity: coset sums say {pure_s}, characters say {pure_c}"),
        ));
    }
    let partition = quadratic_partition_of(&prof, group);
    let e0_s = partition.as_ref().map(|q| &q.e0);
    let e0_c = criterion.witness.as_ref().map(|w| &w.e0);
    if e0_s != e0_c {
        return Err(mismatch(
            m,
            p,
            format!("quadratic split: coset sums give {e0_s:?}, characters give {e0_c:?}"),
        ));
    }
    let semi = is_semiprimitive(m, p)?;
    if semi && !pure_s {
        return Err(mismatch(m, p, "semi-primitive pair is not pure"));
    }

    let class = if pure_s {
        if semi {
            ClassKind::SemiPrimitive
        } else {
            ClassKind::PureNonSemiPrimitive
        }
    } else if partition.is_some() {
        if prof.h == 2 {
            ClassKind::QuadraticIndex2
        } else {
            ClassKind::QuadraticGeneral
        }
    } else {
        ClassKind::Other
    };

    let quadratic = match (partition, criterion.witness) {
        (Some(q), Some(w)) => {
            let ann = &w.annihilator;
            Some(QuadraticData {
                e0: q.e0,
                a0: q.a0,
                a1: q.a1,
                conductor: ann.conductor(),
                discriminant: field_discriminant(ann)?,
                x_minus: if has_full_conductor(ann) {
                    XMinusStatus::SingletonAnn
                } else {
                    XMinusStatus::Empty
                },
            })
        }
        _ => None,
    };
    Ok(ClassificationRecord {
        m,
        pbar,
        f: prof.f,
        h: prof.h,
        class,
        quadratic,
    })
}

/// Canonical representatives of the orbits `{p^i : gcd(i, ord p) = 1}`,
/// ascending.
pub fn canonical_representatives(group: &UnitGroup) -> Vec<u64> {
    let m = group.modulus();
    let mut seen = vec![false; m as usize];
    let mut reps = Vec::new();
    for p in group.units() {
        if seen[p as usize] {
            continue;
        }
        // p is the smallest unit of its orbit not yet seen, and orbits are
        // disjoint, so it is the orbit minimum.
        reps.push(p);
        let f = crate::arithmetic::order_dividing(p, m, group.exponent());
        let mut x = 1u64;
        for i in 1..=f {
            x = mul_mod(x, p, m);
            if gcd(i, f) == 1 {
                seen[x as usize] = true;
            }
        }
    }
    reps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Filter {
    Quadratic,
    Pure,
    #[default]
    All,
}

impl Filter {
    pub fn accepts(self, class: ClassKind) -> bool {
        match self {
            Filter::Quadratic => class.is_quadratic(),
            Filter::Pure => class.is_pure(),
            Filter::All => true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    pub filter: Filter,
    /// Keep only records with `h >= min_h`.
    pub min_h: u64,
}

fn records_for(m: u64, opts: EnumerateOptions) -> Result<Vec<ClassificationRecord>> {
    let group = Arc::new(UnitGroup::new(m)?);
    let mut out = Vec::new();
    for p in canonical_representatives(&group) {
        let rec = classify_in(&group, p)?;
        if rec.h >= opts.min_h && opts.filter.accepts(rec.class) {
            out.push(rec);
        }
    }
    Ok(out)
}

/// One record per orbit for every `m` in `[m_min, m_max]`, sorted by
/// `(m, pbar)`. Parallel over `m` on the current rayon pool; the output does
/// not depend on the pool size.
pub fn enumerate(
    m_min: u64,
    m_max: u64,
    opts: EnumerateOptions,
) -> Result<Vec<ClassificationRecord>> {
    if m_min > m_max {
        return Ok(Vec::new());
    }
    if m_min < 3 {
        return Err(Error::ModulusTooSmall {
            modulus: m_min,
            min: 3,
        });
    }
    let per_m: Vec<Vec<ClassificationRecord>> = (m_min..=m_max)
        .into_par_iter()
        .map(|m| records_for(m, opts))
        .collect::<Result<_>>()?;
    Ok(per_m.into_iter().flatten().collect())
}

/// Whether `x` lies in `<p>` modulo `n`.
pub(crate) fn in_cyclic_subgroup(x: u64, p: u64, n: u64) -> bool {
    if n == 1 {
        return true;
    }
    let (x, p) = (x % n, p % n);
    let mut y = 1 % n;
    let mut seen = HashSet::new();
    loop {
        if y == x {
            return true;
        }
        if !seen.insert(y) {
            return false;
        }
        y = mul_mod(y, p, n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pbar_examples() {
        assert_eq!(canonical_pbar(20, 9).unwrap(), 9);
        assert_eq!(canonical_pbar(7, 4).unwrap(), 2);
        assert_eq!(canonical_pbar(4, 1).unwrap(), 1);
        assert_eq!(canonical_pbar(4, 5).unwrap(), 1);
    }

    #[test]
    fn semiprimitive_examples() {
        assert!(is_semiprimitive(5, 2).unwrap());
        assert!(!is_semiprimitive(20, 9).unwrap());
        for m in 3..100 {
            assert!(is_semiprimitive(m, m - 1).unwrap());
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify(20, 9).unwrap();
        assert_eq!(r.class, ClassKind::QuadraticGeneral);
        assert_eq!(r.h, 4);
        let q = r.quadratic.unwrap();
        assert_eq!((q.a0, q.a1, q.discriminant), (10, 30, -20));
        assert_eq!(q.e0, vec![1, 3, 7, 9]);
        assert_eq!(q.x_minus, XMinusStatus::SingletonAnn);

        assert_eq!(classify(5, 2).unwrap().class, ClassKind::SemiPrimitive);
        let r = classify(7, 3).unwrap();
        assert_eq!((r.class, r.f), (ClassKind::SemiPrimitive, 6));
        assert_eq!(classify(7, 2).unwrap().class, ClassKind::QuadraticIndex2);
    }

    #[test]
    fn representatives_match_canonical_pbar() {
        for m in 3..300u64 {
            let g = UnitGroup::new(m).unwrap();
            let expected: Vec<u64> = g
                .units()
                .filter(|&p| canonical_pbar(m, p).unwrap() == p)
                .collect();
            assert_eq!(canonical_representatives(&g), expected, "m={m}");
        }
    }

    #[test]
    fn enumerate_examples() {
        let opts = EnumerateOptions {
            filter: Filter::Quadratic,
            min_h: 0,
        };
        let got: Vec<(u64, u64)> = enumerate(3, 6, opts)
            .unwrap()
            .iter()
            .filter(|r| r.f == 1)
            .map(|r| (r.m, r.pbar))
            .collect();
        assert_eq!(got, vec![(3, 1), (4, 1), (6, 1)]);

        let opts = EnumerateOptions {
            filter: Filter::Quadratic,
            min_h: 3,
        };
        let got = enumerate(20, 20, opts).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].m, got[0].pbar, got[0].f, got[0].h), (20, 9, 2, 4));

        assert!(enumerate(10, 9, EnumerateOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumerate_is_pool_independent() {
        let opts = EnumerateOptions::default();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| enumerate(3, 150, opts)).unwrap();
        let b = four.install(|| enumerate(3, 150, opts)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subgroup_membership() {
        assert!(in_cyclic_subgroup(4, 2, 7));
        assert!(!in_cyclic_subgroup(3, 2, 7));
        assert!(in_cyclic_subgroup(5, 3, 1));
    }
}
