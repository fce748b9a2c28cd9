//! Output files: `records.csv`, `summary.json` and `meta.json`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use coinvest_core::scenario::SweepRecord;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::pipeline::{InstanceChecks, TuGameChecks};
use crate::CliError;

pub const RECORDS_FILE: &str = "records.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const META_FILE: &str = "meta.json";

pub const CSV_COLUMNS: [&str; 13] = [
    "scenario",
    "sweep_param",
    "sweep_value",
    "player_id",
    "beta",
    "daily_load",
    "h_star",
    "C_star",
    "r_hat",
    "shapley",
    "payment",
    "payoff",
    "v_grand",
];

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One `records.csv` row: a player of one solved instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub scenario: String,
    pub sweep_param: String,
    pub sweep_value: f64,
    pub player_id: String,
    pub beta: f64,
    pub daily_load: f64,
    pub h_star: f64,
    #[serde(rename = "C_star")]
    pub c_star: f64,
    pub r_hat: f64,
    pub shapley: f64,
    pub payment: f64,
    pub payoff: f64,
    pub v_grand: f64,
}

pub fn records_csv(records: &[SweepRecord]) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_COLUMNS)?;
    for record in records {
        for p in &record.players {
            let numbers = [
                p.beta,
                p.daily_load,
                p.h_star,
                record.capacity,
                p.r_hat,
                p.shapley,
                p.payment,
                p.payoff,
                record.grand_value,
            ]
            .map(format_float);
            let mut row = vec![
                record.scenario.clone(),
                record.sweep_param.clone(),
                format_float(record.sweep_value),
                p.player_id.clone(),
            ];
            row.extend(numbers);
            writer.write_record(&row)?;
        }
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Csv(csv::Error::from(e.into_error())))
}

pub fn read_records(path: &Path) -> Result<Vec<CsvRow>, CliError> {
    let mut reader = csv::Reader::from_path(path)?;
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_COLUMNS) {
        return Err(CliError::Csv(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("unexpected header {header:?}"),
        ))));
    }
    reader
        .deserialize()
        .collect::<Result<Vec<CsvRow>, _>>()
        .map_err(CliError::from)
}

#[derive(Debug, Clone, Serialize)]
pub struct PlayerSummary {
    pub player: String,
    pub shapley: f64,
    pub revenue: f64,
    pub payment: f64,
    pub payoff: f64,
    pub h_star: f64,
    pub veto: Option<bool>,
    pub null: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub index: usize,
    pub scenario: String,
    pub sweep_param: String,
    pub sweep_value: f64,
    pub v_grand: f64,
    pub capacity: f64,
    pub players: Vec<PlayerSummary>,
    pub checks: InstanceChecks,
    pub passed: bool,
}

impl InstanceSummary {
    pub fn new(index: usize, record: &SweepRecord, checks: InstanceChecks) -> Self {
        let players = record
            .players
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let class = checks.classes.as_ref().map(|c| c[i]);
                PlayerSummary {
                    player: p.player_id.clone(),
                    shapley: p.shapley,
                    revenue: p.r_hat,
                    payment: p.payment,
                    payoff: p.payoff,
                    h_star: p.h_star,
                    veto: class.map(|c| c.veto),
                    null: class.map(|c| c.null),
                }
            })
            .collect();
        InstanceSummary {
            index,
            scenario: record.scenario.clone(),
            sweep_param: record.sweep_param.clone(),
            sweep_value: record.sweep_value,
            v_grand: record.grand_value,
            capacity: record.capacity,
            players,
            passed: checks.passed(),
            checks,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub all_checks_passed: bool,
    pub instances: Vec<InstanceSummary>,
    pub tu_games: Vec<TuGameChecks>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub instances: usize,
    pub load_clamped_slots: usize,
    pub config: &'a RunConfig,
}

/// Writes `bytes` to a temporary sibling of `path`, then renames it.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn write_outputs(
    dir: &Path,
    records: &[SweepRecord],
    summary: &Summary,
    meta: &Meta<'_>,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let files = [
        (RECORDS_FILE, records_csv(records)?),
        (SUMMARY_FILE, serde_json::to_vec_pretty(summary)?),
        (META_FILE, serde_json::to_vec_pretty(meta)?),
    ];
    files
        .into_iter()
        .map(|(name, bytes)| {
            let path = dir.join(name);
            write_atomic(&path, &bytes)?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let x = 0.1 + 0.2;
        let s = format_float(x);
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
    }
}
