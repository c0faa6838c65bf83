//! CSV serialization of trajectories and sweeps, plus gnuplot companions.

use std::io::{self, Write};

use crate::experiments::{describe, SweepResult};
use crate::gate::{GateResult, InitialState};
use crate::model::BasisIndex;

pub const TRAJECTORY_HEADER: &str =
    "t,p_0m0a,p_0m1a,p_0mr1,p_0mr2,p_1m0a,p_1m1a,p_1mr1,p_1mr2,phase,fidelity";
pub const SWEEP_HEADER: &str = "x,fidelity_gsc,fidelity_rect";

/// 17 significant digits, enough to round-trip every `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_value).unwrap_or_default()
}

fn write_meta<W: Write>(w: &mut W, meta: &[(String, String)]) -> io::Result<()> {
    write!(w, "# meta:")?;
    for (k, v) in meta {
        write!(w, " {k}={v}")?;
    }
    writeln!(w)
}

pub fn trajectory_meta(result: &GateResult) -> Vec<(String, String)> {
    let initial = match result.config.initial_state {
        InitialState::ProductSuperposition => "product".to_string(),
        InitialState::Basis(b) => b.label(),
    };
    let mut meta = vec![("initial".to_string(), initial)];
    describe("", &result.config, &mut meta);
    meta.retain(|(k, _)| k != "dt" && k != "duration");
    meta.push(("duration".into(), format!("{:e}", result.duration)));
    meta.push(("dt".into(), format!("{:e}", result.dt)));
    meta.push(("steps".into(), result.steps.to_string()));
    meta
}

fn row_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn write_trajectory<W: Write>(w: &mut W, result: &GateResult) -> io::Result<()> {
    write_meta(w, &trajectory_meta(result))?;
    let mut rows = row_writer(w);
    rows.write_record(TRAJECTORY_HEADER.split(','))?;
    for (k, (t, pops)) in result.times.iter().zip(&result.populations).enumerate() {
        let mut record = Vec::with_capacity(11);
        record.push(format_value(*t));
        record.extend(pops.iter().map(|p| format_value(*p)));
        record.push(format_opt(
            result.tracked_phase.as_ref().and_then(|ph| ph[k]),
        ));
        record.push(format_opt(result.fidelity.as_ref().map(|f| f[k])));
        rows.write_record(&record)?;
    }
    rows.flush()
}

pub fn write_sweep<W: Write>(w: &mut W, result: &SweepResult) -> io::Result<()> {
    write_meta(w, &result.meta)?;
    let mut rows = row_writer(w);
    rows.write_record(SWEEP_HEADER.split(','))?;
    for (k, x) in result.x.iter().enumerate() {
        rows.write_record([
            format_value(*x),
            format_opt(result.fidelity_gsc.as_ref().map(|f| f[k])),
            format_opt(result.fidelity_rect.as_ref().map(|f| f[k])),
        ])?;
    }
    rows.flush()
}

/// A parsed CSV file as written by this module.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub meta: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

pub fn read_csv(text: &str) -> Result<CsvTable, String> {
    let mut meta = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# meta:") {
            for pair in rest.split_whitespace() {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| format!("bad meta entry `{pair}`"))?;
                meta.push((k.to_string(), v.to_string()));
            }
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() {
        return Err("missing header row".into());
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let row = record
            .iter()
            .map(|f| match f {
                "" => Ok(None),
                _ => f
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|e| format!("`{f}`: {e}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(CsvTable { meta, header, rows })
}

fn script_preamble(csv: &str, title: &str, xlabel: &str, ylabel: &str) -> String {
    format!(
        "set datafile separator ','\nset key autotitle columnhead\nset title '{title}'\n\
         set xlabel '{xlabel}'\nset ylabel '{ylabel}'\nset grid\ndata = '{csv}'\n"
    )
}

pub fn sweep_script(csv: &str, title: &str, xlabel: &str, result: &SweepResult) -> String {
    let mut s = script_preamble(csv, title, xlabel, "fidelity");
    let mut series = Vec::new();
    if result.fidelity_gsc.is_some() {
        series.push("data using 1:2 with lines lw 2 title 'GSC'");
    }
    if result.fidelity_rect.is_some() {
        series.push("data using 1:3 with lines dt 2 lw 2 title 'rectangular'");
    }
    s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
    s
}

pub fn trajectory_script(csv: &str, title: &str) -> String {
    let mut s = script_preamble(csv, title, "g t", "population");
    let series: Vec<String> = BasisIndex::all()
        .enumerate()
        .map(|(k, b)| format!("data using 1:{} with lines title 'P_{}'", k + 2, b.label()))
        .collect();
    s.push_str("set y2label 'phase (rad)'\nset y2tics\n");
    s.push_str(&format!(
        "plot {}, \\\n     data using 1:10 axes x1y2 with lines dt 3 title 'phase'\n",
        series.join(", \\\n     ")
    ));
    s
}
