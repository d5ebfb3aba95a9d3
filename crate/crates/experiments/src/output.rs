//! CSV and summary files.
//!
//! Floating point values are written with 17 significant digits so that every
//! file reads back to the exact values that were written.

use std::fmt::Write as _;
use std::fs::File;
use std::path::Path;

use nnlsg::{BondId, BondMap, Field, ObservableRecord, StarGraph, C64};

use crate::error::{Error, Result};
use crate::run::CellResult;

pub const TIMESERIES_HEADER: [&str; 15] = [
    "t", "ReN_m1", "ImN_m1", "ReN_p1", "ImN_p1", "ReN_m2", "ImN_m2", "ReN_p2", "ImN_p2", "ReN", "ImN", "AbsN", "ReE",
    "ImE", "R",
];
pub const SWEEP_HEADER: [&str; 7] = ["beta_m1", "beta_p1", "Nerr", "R", "res_integrable", "res_transparent", "status"];
pub const SNAPSHOT_HEADER: [&str; 5] = ["bond", "x", "re", "im", "abs"];

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    num(x.unwrap_or(f64::NAN))
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv { path: path.into(), source })
}

fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let csv_err = |source| Error::Csv { path: path.into(), source };
    let mut w = writer(path)?;
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| Error::Io { path: path.into(), source })
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let csv_err = |source| Error::Csv { path: path.into(), source };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let found = r.headers().map_err(csv_err)?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(Error::Malformed { path: path.into(), row: 0, message: format!("unexpected header {found:?}") });
    }
    r.records().collect::<std::result::Result<_, _>>().map_err(csv_err)
}

fn field_at<T: std::str::FromStr>(path: &Path, row: usize, rec: &csv::StringRecord, col: usize) -> Result<T> {
    rec.get(col).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Malformed {
        path: path.into(),
        row,
        message: format!("column {col}: cannot parse {:?}", rec.get(col).unwrap_or("")),
    })
}

pub fn write_timeseries(path: &Path, records: &[ObservableRecord]) -> Result<()> {
    let rows = records.iter().map(|r| {
        let mut row = vec![num(r.t)];
        for b in BondId::ALL {
            row.push(num(r.norms[b].re));
            row.push(num(r.norms[b].im));
        }
        row.extend([r.total_norm.re, r.total_norm.im, r.total_norm.norm(), r.energy.re, r.energy.im].map(num));
        row.push(opt(r.reflection));
        row
    });
    write_rows(path, &TIMESERIES_HEADER, rows)
}

/// Reads back `t`, the total quasi-norm and `R` of every row.
pub fn read_timeseries(path: &Path) -> Result<Vec<(f64, C64, f64)>> {
    read_rows(path, &TIMESERIES_HEADER)?
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let f = |c| field_at::<f64>(path, i + 1, rec, c);
            Ok((f(0)?, C64::new(f(9)?, f(10)?), f(14)?))
        })
        .collect()
}

/// One row per grid point of every bond, with the signed coordinate.
pub fn write_snapshot(path: &Path, graph: &StarGraph, field: &Field) -> Result<()> {
    let rows = BondId::ALL.into_iter().flat_map(|b| {
        field.bond(b).iter().enumerate().map(move |(i, q)| {
            vec![b.label().to_string(), num(graph.coordinate(b, i)), num(q.re), num(q.im), num(q.norm())]
        })
    });
    write_rows(path, &SNAPSHOT_HEADER, rows)
}

/// Coordinates and amplitudes read from a snapshot file. The time stamp of
/// the returned field is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub x: BondMap<Vec<f64>>,
    pub field: Field,
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let mut x: BondMap<Vec<f64>> = BondMap::default();
    let mut q: BondMap<Vec<C64>> = BondMap::default();
    for (i, rec) in read_rows(path, &SNAPSHOT_HEADER)?.iter().enumerate() {
        let row = i + 1;
        let b = BondId::from_label(rec.get(0).unwrap_or("")).map_err(|e| Error::Malformed {
            path: path.into(),
            row,
            message: e.to_string(),
        })?;
        x[b].push(field_at(path, row, rec, 1)?);
        q[b].push(C64::new(field_at(path, row, rec, 2)?, field_at(path, row, rec, 3)?));
    }
    let field = Field::from_bonds(0.0, q).map_err(|e| Error::Malformed {
        path: path.into(),
        row: 0,
        message: e.to_string(),
    })?;
    Ok(Snapshot { x, field })
}

pub fn snapshot_name(t: f64) -> String {
    format!("snapshot_t{t:.4}.csv")
}

pub fn write_sweep(path: &Path, cells: &[CellResult]) -> Result<()> {
    let rows = cells.iter().map(|c| {
        vec![
            num(c.beta_m1),
            num(c.beta_p1),
            opt(c.norm_error),
            opt(c.reflection),
            num(c.res_integrable),
            num(c.res_transparent),
            c.status.clone(),
        ]
    });
    write_rows(path, &SWEEP_HEADER, rows)
}

pub fn read_sweep(path: &Path) -> Result<Vec<CellResult>> {
    let finite = |x: f64| x.is_finite().then_some(x);
    read_rows(path, &SWEEP_HEADER)?
        .iter()
        .enumerate()
        .map(|(i, rec)| {
            let f = |c| field_at::<f64>(path, i + 1, rec, c);
            Ok(CellResult {
                beta_m1: f(0)?,
                beta_p1: f(1)?,
                norm_error: finite(f(2)?),
                reflection: finite(f(3)?),
                res_integrable: f(4)?,
                res_transparent: f(5)?,
                status: rec.get(6).unwrap_or("").to_string(),
            })
        })
        .collect()
}

/// Contents of `summary.txt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub name: String,
    pub points: usize,
    pub steps: usize,
    pub dt: f64,
    pub final_time: f64,
    pub norm_error: Option<f64>,
    pub mean_norm: Option<C64>,
    pub reflection: Option<f64>,
    pub res_integrable: f64,
    pub res_transparent: f64,
    pub integrable: bool,
    pub transparent: bool,
    pub status: String,
}

impl Summary {
    pub fn render(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k}: {v}").expect("writing to a String");
        line("name", self.name.clone());
        line("points", self.points.to_string());
        line("steps", self.steps.to_string());
        line("dt", num(self.dt));
        line("final_time", num(self.final_time));
        line("Nerr", opt(self.norm_error));
        let mean = self.mean_norm.unwrap_or(C64::new(f64::NAN, f64::NAN));
        line("mean_N", format!("{} {}", num(mean.re), num(mean.im)));
        line("R", opt(self.reflection));
        line("res_integrable", num(self.res_integrable));
        line("res_transparent", num(self.res_transparent));
        line("integrable", yes(self.integrable).into());
        line("transparent", yes(self.transparent).into());
        line("status", self.status.clone());
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).map_err(|source| Error::Io { path: path.into(), source })
    }
}
