//! The published list of quadratic triples with `m <= 1000` and `h > 2`,
//! embedded verbatim, one `[ m, pbar, f, h ]` row per line.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ClassificationRecord;

const REFERENCE_M1000: &str = include_str!("../../data/reference_m1000.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Row {
    pub m: u64,
    pub pbar: u64,
    pub f: u64,
    pub h: u64,
}

impl From<&ClassificationRecord> for Row {
    fn from(r: &ClassificationRecord) -> Self {
        Row {
            m: r.m,
            pbar: r.pbar,
            f: r.f,
            h: r.h,
        }
    }
}

fn parse_row(line: &str) -> Row {
    let inner = line.trim().trim_start_matches('[').trim_end_matches(']');
    let v: Vec<u64> = inner
        .split(',')
        .map(|s| s.trim().parse().expect("embedded reference row is numeric"))
        .collect();
    assert_eq!(v.len(), 4, "embedded reference row has four fields");
    Row {
        m: v[0],
        pbar: v[1],
        f: v[2],
        h: v[3],
    }
}

/// Rows of the embedded reference, in stored order.
pub fn reference_rows() -> Vec<Row> {
    REFERENCE_M1000
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_row)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceDiff {
    pub reference_len: usize,
    pub computed_len: usize,
    /// In the reference but not computed.
    pub missing: Vec<Row>,
    /// Computed but not in the reference.
    pub extra: Vec<Row>,
}

impl ReferenceDiff {
    pub fn is_identical(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn diff_against_reference<'a, I>(computed: I) -> ReferenceDiff
where
    I: IntoIterator<Item = &'a ClassificationRecord>,
{
    let reference: BTreeSet<Row> = reference_rows().into_iter().collect();
    let computed: BTreeSet<Row> = computed.into_iter().map(Row::from).collect();
    ReferenceDiff {
        reference_len: reference.len(),
        computed_len: computed.len(),
        missing: reference.difference(&computed).copied().collect(),
        extra: computed.difference(&reference).copied().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_rows() {
        let rows = reference_rows();
        assert_eq!(rows.len(), 690);
        assert_eq!(
            rows[0],
            Row {
                m: 20,
                pbar: 9,
                f: 2,
                h: 4
            }
        );
        assert!(rows.contains(&Row {
            m: 39,
            pbar: 16,
            f: 3,
            h: 8
        }));
        assert!(rows.contains(&Row {
            m: 840,
            pbar: 173,
            f: 12,
            h: 16
        }));
        assert_eq!(
            *rows.last().unwrap(),
            Row {
                m: 1000,
                pbar: 17,
                f: 100,
                h: 4
            }
        );
        let distinct: BTreeSet<Row> = rows.iter().copied().collect();
        assert_eq!(distinct.len(), rows.len());
        assert!(rows.iter().all(|r| r.h > 2 && r.m <= 1000));
    }
}
