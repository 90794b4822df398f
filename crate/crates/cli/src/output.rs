use std::io::Write;

use anyhow::Result;
use quadgauss::classifier::ClassificationRecord;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One flat row; quadratic-only columns are empty (CSV) or null (JSON).
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub m: u64,
    pub pbar: u64,
    pub f: u64,
    pub h: u64,
    pub class: &'static str,
    #[serde(rename = "A0")]
    pub a0: Option<u64>,
    #[serde(rename = "A1")]
    pub a1: Option<u64>,
    pub conductor: Option<u64>,
    pub discriminant: Option<i64>,
    pub x_minus_status: Option<String>,
}

impl From<&ClassificationRecord> for OutputRecord {
    fn from(r: &ClassificationRecord) -> Self {
        let q = r.quadratic.as_ref();
        OutputRecord {
            m: r.m,
            pbar: r.pbar,
            f: r.f,
            h: r.h,
            class: r.class.name(),
            a0: q.map(|q| q.a0),
            a1: q.map(|q| q.a1),
            conductor: q.map(|q| q.conductor),
            discriminant: q.map(|q| q.discriminant),
            x_minus_status: q.map(|q| format!("{:?}", q.x_minus)),
        }
    }
}

pub fn write_records<W: Write>(
    out: W,
    records: &[ClassificationRecord],
    format: Format,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            w.write_record([
                "m",
                "pbar",
                "f",
                "h",
                "class",
                "A0",
                "A1",
                "conductor",
                "discriminant",
                "x_minus_status",
            ])?;
            for r in records {
                w.serialize(OutputRecord::from(r))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = std::io::BufWriter::new(out);
            for r in records {
                serde_json::to_writer(&mut out, &OutputRecord::from(r))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
