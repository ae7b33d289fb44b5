//! CSV exports and their readers. Every reader re-validates what it loads.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{Histogram, TraceRow};

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(BufWriter::new(File::create(path)?)))
}

fn reader(path: &Path) -> Result<csv::Reader<BufReader<File>>> {
    Ok(csv::Reader::from_reader(BufReader::new(File::open(path)?)))
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = writer(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    Ok(reader(path)?.deserialize().collect::<std::result::Result<_, _>>()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct HistogramRow {
    bin_lo: f64,
    bin_hi: f64,
    count: u64,
}

/// Header `bin_lo,bin_hi,count`.
pub fn write_histogram(path: &Path, hist: &Histogram) -> Result<()> {
    let edges = hist.edges();
    let rows: Vec<HistogramRow> = hist
        .counts
        .iter()
        .enumerate()
        .map(|(i, &count)| HistogramRow {
            bin_lo: edges[i],
            bin_hi: edges[i + 1],
            count,
        })
        .collect();
    write_rows(path, &rows)
}

/// Reads a histogram; samples that fell outside the range are not stored, so
/// `total` is the sum of the counts.
pub fn read_histogram(path: &Path) -> Result<Histogram> {
    let rows: Vec<HistogramRow> = read_rows(path)?;
    let (first, last) = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Config(format!("{} has no bins", path.display()))),
    };
    let mut hist = Histogram::new(first.bin_lo, last.bin_hi, rows.len())?;
    let edges = hist.edges();
    for (i, row) in rows.iter().enumerate() {
        if row.bin_lo != edges[i] || row.bin_hi != edges[i + 1] {
            return Err(Error::Config(format!("{}: bin {i} has non-uniform edges", path.display())));
        }
        hist.counts[i] = row.count;
    }
    hist.total = hist.counts.iter().sum();
    Ok(hist)
}

/// Header `t,mean,var,se_mean,se_var`.
pub fn write_trace(path: &Path, rows: &[TraceRow]) -> Result<()> {
    write_rows(path, rows)
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRow>> {
    let rows: Vec<TraceRow> = read_rows(path)?;
    for (i, r) in rows.iter().enumerate() {
        if r.t != i + 1 {
            return Err(Error::Config(format!("{}: row {i} has t = {}", path.display(), r.t)));
        }
        if !(r.var >= 0.0 && r.se_mean >= 0.0 && r.se_var >= 0.0) {
            return Err(Error::Config(format!("{}: negative spread at t = {}", path.display(), r.t)));
        }
    }
    Ok(rows)
}

/// A table of named `f64` columns with an integer first column.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub index_name: String,
    pub columns: Vec<String>,
    pub index: Vec<usize>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut w = writer(path)?;
        let mut header = vec![self.index_name.clone()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for (i, row) in self.index.iter().zip(&self.rows) {
            let mut rec = vec![i.to_string()];
            // `{}` on f64 prints the shortest string that parses back exactly
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut r = reader(path)?;
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header.len() < 2 {
            return Err(Error::Config(format!("{} needs at least two columns", path.display())));
        }
        let mut index = Vec::new();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let line = index.len();
            let bad = |what: &str| Error::Config(format!("{}: bad {what} in row {line}", path.display()));
            let i = rec[0].parse::<usize>().map_err(|_| bad("index"))?;
            let row = rec
                .iter()
                .skip(1)
                .map(|s| s.parse::<f64>().map_err(|_| bad("value")))
                .collect::<Result<Vec<_>>>()?;
            index.push(i);
            rows.push(row);
        }
        Ok(Self {
            index_name: header[0].clone(),
            columns: header[1..].to_vec(),
            index,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.csv");
        let samples: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let h = Histogram::from_samples(&samples, -1.0, 1.0, 60).unwrap();
        write_histogram(&path, &h).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("bin_lo,bin_hi,count\n"));
        assert_eq!(read_histogram(&path).unwrap(), h);
    }

    #[test]
    fn table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let t = Table {
            index_name: "t".into(),
            columns: vec!["x".into(), "y".into()],
            index: vec![1, 2],
            rows: vec![vec![0.1, 1.0 / 3.0], vec![1e-300, -2.5e17]],
        };
        t.write(&path).unwrap();
        assert_eq!(Table::read(&path).unwrap(), t);
        assert_eq!(t.column("y").unwrap(), vec![1.0 / 3.0, -2.5e17]);
    }

    #[test]
    fn trace_rejects_gaps() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tr.csv");
        let row = |t| TraceRow { t, mean: 0.0, var: 1.0, se_mean: 0.1, se_var: 0.1 };
        write_trace(&path, &[row(1), row(3)]).unwrap();
        assert!(read_trace(&path).is_err());
        write_trace(&path, &[row(1), row(2)]).unwrap();
        assert_eq!(read_trace(&path).unwrap().len(), 2);
    }
}
