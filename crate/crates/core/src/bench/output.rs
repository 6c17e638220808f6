//! Result tables: aligned text, csv and json.

use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{ResultRow, Status};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "instance,algorithm,peak_stored,total_generated,prev_iterations,last_iteration,time_s,cost,status";

/// Bumped whenever a column or json field changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Argument(format!("unknown format `{s}`"))),
        }
    }
}

/// Per-algorithm counts of instances where it stored the fewest nodes or
/// ran fastest (ties count for everyone tied).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub algorithms: Vec<String>,
    pub peak_stored_wins: Vec<usize>,
    pub time_wins: Vec<usize>,
}

pub fn summarize(rows: &[ResultRow]) -> Summary {
    let mut s = Summary::default();
    let mut instances: Vec<&str> = Vec::new();
    for r in rows {
        if !s.algorithms.contains(&r.algorithm) {
            s.algorithms.push(r.algorithm.clone());
        }
        if !instances.contains(&r.instance.as_str()) {
            instances.push(&r.instance);
        }
    }
    s.peak_stored_wins = vec![0; s.algorithms.len()];
    s.time_wins = vec![0; s.algorithms.len()];
    for inst in instances {
        let solved: Vec<&ResultRow> = rows
            .iter()
            .filter(|r| r.instance == inst && r.status == Status::Solved)
            .collect();
        if solved.len() < 2 {
            continue;
        }
        let best_peak = solved.iter().map(|r| r.peak_stored).min().unwrap_or(0);
        let best_time = solved.iter().map(|r| r.time_s).fold(f64::INFINITY, f64::min);
        for r in &solved {
            let a = s.algorithms.iter().position(|x| *x == r.algorithm).unwrap_or(0);
            if r.peak_stored == best_peak {
                s.peak_stored_wins[a] += 1;
            }
            if r.time_s == best_time {
                s.time_wins[a] += 1;
            }
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct Hardware {
    pub os: &'static str,
    pub arch: &'static str,
    pub logical_cpus: usize,
    pub cpu_model: Option<String>,
}

pub fn hardware_metadata() -> Hardware {
    let cpu_model = std::fs::read_to_string("/proc/cpuinfo").ok().and_then(|t| {
        t.lines()
            .find(|l| l.starts_with("model name"))
            .and_then(|l| l.split_once(':'))
            .map(|(_, v)| v.trim().to_string())
    });
    Hardware {
        os: std::env::consts::OS,
        arch: std::env::consts::ARCH,
        logical_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
        cpu_model,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders rows. With `with_time = false` the time column reads `NA`, which
/// makes the output a pure function of the requests.
pub fn format_rows(rows: &[ResultRow], format: Format, with_time: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                let time = if with_time {
                    format!("{:.3}", r.time_s)
                } else {
                    "NA".into()
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.instance),
                    csv_field(&r.algorithm),
                    r.peak_stored,
                    r.total_generated,
                    r.prev_iterations,
                    r.last_iteration,
                    time,
                    r.cost.map(|c| c.to_string()).unwrap_or_default(),
                    r.status
                );
            }
        }
        Format::Table => {
            let header = [
                "instance", "algorithm", "peak stored", "total nodes", "prev. iter.", "last iter.",
                "time (s)", "cost", "status",
            ];
            let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
            for r in rows {
                // Runs cut off by a budget report counts at the cut-off.
                let mark = if r.status == Status::BudgetExceeded { ">" } else { "" };
                cells.push(vec![
                    r.instance.clone(),
                    r.algorithm.clone(),
                    format!("{mark}{}", r.peak_stored),
                    format!("{mark}{}", r.total_generated),
                    format!("{mark}{}", r.prev_iterations),
                    format!("{mark}{}", r.last_iteration),
                    if with_time {
                        format!("{mark}{:.3}", r.time_s)
                    } else {
                        "NA".into()
                    },
                    r.cost.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
                    r.status.to_string(),
                ]);
            }
            let widths: Vec<usize> = (0..header.len())
                .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
                .collect();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .enumerate()
                    .map(|(i, (v, w))| {
                        if i < 2 {
                            format!("{v:<w$}")
                        } else {
                            format!("{v:>w$}")
                        }
                    })
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            let s = summarize(rows);
            if s.algorithms.len() > 1 {
                out.push_str("\nwins (fewest stored / fastest):\n");
                for (i, a) in s.algorithms.iter().enumerate() {
                    if with_time {
                        let _ = writeln!(out, "  {a}: {} / {}", s.peak_stored_wins[i], s.time_wins[i]);
                    } else {
                        let _ = writeln!(out, "  {a}: {} / NA", s.peak_stored_wins[i]);
                    }
                }
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                hardware: Hardware,
                rows: &'a [ResultRow],
                summary: Summary,
            }
            let doc = Doc {
                schema_version: SCHEMA_VERSION,
                hardware: hardware_metadata(),
                rows,
                summary: summarize(rows),
            };
            out = serde_json::to_string_pretty(&doc).unwrap_or_default();
            out.push('\n');
        }
    }
    out
}
