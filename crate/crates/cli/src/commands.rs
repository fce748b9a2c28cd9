use std::fs;
use std::path::{Path, PathBuf};

use crate::config::{parse_config, RunConfig};
use crate::pipeline::{build_scenario, check_instance, check_tu_game, payoff_rule, solve};
use crate::presets;
use crate::report::{write_outputs, InstanceSummary, Meta, Summary};
use crate::CliError;

/// Reads a config file, or an embedded preset when no such file exists.
pub fn load_config(source: &str) -> Result<RunConfig, CliError> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(preset) = presets::find(source) {
            return Ok(parse_config(preset.text)?);
        }
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(parse_config(&text)?)
}

#[derive(Debug)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub instances: usize,
    pub failed_checks: usize,
}

/// Solves the configured scenario and writes `records.csv`, `summary.json`
/// and `meta.json` into `config.out`. With `strict`, failed property checks
/// turn into an error after the files are written.
pub fn run(config: &RunConfig, strict: bool) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let scenario = build_scenario(config)?;
    let records = solve(&scenario.points, payoff_rule(config))?;

    let instances = scenario
        .points
        .iter()
        .zip(&records)
        .enumerate()
        .map(|(i, (point, record))| {
            let checks = check_instance(&point.game, record, None).map_err(|e| annotate(e, i))?;
            Ok(InstanceSummary::new(i, record, checks))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let tu_games = scenario
        .tu_games
        .iter()
        .map(|(name, game, payoffs)| check_tu_game(name, game, payoffs.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;

    let failed_checks = instances.iter().filter(|s| !s.passed).count()
        + tu_games.iter().filter(|g| !g.passed).count();
    let summary = Summary {
        all_checks_passed: failed_checks == 0,
        instances,
        tu_games,
    };
    let meta = Meta {
        tool: "coinvest",
        version: env!("CARGO_PKG_VERSION"),
        seed: config.seed,
        instances: records.len(),
        load_clamped_slots: scenario.clamped_slots,
        config,
    };
    let files = write_outputs(&config.out, &records, &summary, &meta)?;

    if strict && failed_checks > 0 {
        return Err(CliError::ChecksFailed {
            failed: failed_checks,
        });
    }
    Ok(RunOutcome {
        out_dir: config.out.clone(),
        files,
        instances: records.len(),
        failed_checks,
    })
}

fn annotate(err: CliError, index: usize) -> CliError {
    match err {
        CliError::Solver(e) => CliError::Solver(coinvest_core::Error::Instance {
            index,
            source: Box::new(e),
        }),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub property: &'static str,
    pub target: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    fn push(&mut self, property: &'static str, target: &str, passed: Option<bool>, detail: String) {
        let Some(passed) = passed else {
            return;
        };
        self.lines.push(CheckLine {
            property,
            target: target.to_string(),
            passed,
            detail,
        });
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag}  {:<18} {:<28} {}", l.property, l.target, l.detail)?;
        }
        write!(f, "{} checks, {} failed", self.lines.len(), self.failures())
    }
}

/// Runs every property check on the configured instances.
pub fn verify(config: &RunConfig) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let scenario = build_scenario(config)?;
    let records = solve(&scenario.points, payoff_rule(config))?;
    let mut report = VerifyReport::default();

    for (i, (point, record)) in scenario.points.iter().zip(&records).enumerate() {
        let target = format!("{} {}={}", point.scenario, point.param, point.value);
        let checks = check_instance(
            &point.game,
            record,
            Some(config.seed.wrapping_add(i as u64)),
        )
        .map_err(|e| annotate(e, i))?;
        report.push(
            "supermodularity",
            &target,
            checks.supermodularity.as_ref().map(|s| s.holds),
            checks
                .supermodularity
                .as_ref()
                .and_then(|s| s.counterexample)
                .map(|c| format!("player {} {} vs {}", c.player, c.smaller, c.larger))
                .unwrap_or_default(),
        );
        report.push(
            "core",
            &target,
            checks.core.as_ref().map(|c| c.in_core),
            checks
                .core
                .as_ref()
                .map(|c| format!("min slack {:.3e}", c.min_slack))
                .unwrap_or_default(),
        );
        report.push(
            "equal-split",
            &target,
            Some(checks.equal_split),
            String::new(),
        );
        report.push(
            "oracle-triangle",
            &target,
            checks.oracle.as_ref().map(|o| o.passed),
            checks
                .oracle
                .as_ref()
                .map(|o| {
                    format!(
                        "enum/closed {:.1e}, sampling {:.2} of 3se band",
                        o.enumeration_vs_closed, o.sampling_band
                    )
                })
                .unwrap_or_default(),
        );
        report.push(
            "settlement-balance",
            &target,
            Some(checks.settlement_balanced),
            String::new(),
        );
    }

    for (name, game, payoffs) in &scenario.tu_games {
        let checks = check_tu_game(name, game, payoffs.as_ref())?;
        let target = format!("tu-game {name}");
        report.push(
            "supermodularity",
            &target,
            checks.supermodularity.as_ref().map(|s| s.holds),
            String::new(),
        );
        report.push(
            "core",
            &target,
            Some(checks.core.in_core),
            checks
                .core
                .violating_coalition
                .map(|c| format!("violated by {c}"))
                .unwrap_or_default(),
        );
    }
    Ok(report)
}
