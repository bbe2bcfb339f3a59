//! Config parsing and the CSV formats written by the CLI.
//!
//! All reals are written with exactly six decimals and rows end in `\n`, so
//! output bytes depend only on the inputs.

use std::collections::HashSet;
use std::io::{self, Write};

use crate::config::{ConfigError, RunConfig};
use crate::experiments::stats::{mean, std_dev};
use crate::experiments::{Axis, RunSeries, SweepResult, EARLY_CHECKPOINT};
use crate::model::{fitness, Action, BodyPart};

/// Parses a flat `key = value` document. `#` starts a comment; blank lines
/// are ignored; absent keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::default();
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                text: raw.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Malformed {
                line,
                text: raw.to_string(),
            });
        }
        if !RunConfig::is_key(key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        config
            .set(key, value)
            .map_err(|source| ConfigError::Value { line, source })?;
    }
    config.validate()?;
    Ok(config)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("bad axes spec {spec:?}: {reason}")]
pub struct AxesError {
    pub spec: String,
    pub reason: String,
}

/// Parses `key=v1,v2,v3;key2=w1,w2`. Values are kept verbatim and checked
/// when the sweep applies them.
pub fn parse_axes(spec: &str) -> Result<Vec<Axis>, AxesError> {
    let err = |reason: &str| AxesError {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let mut axes = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, values) = part
            .split_once('=')
            .ok_or_else(|| err("each axis needs `key=values`"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(err("empty axis key"));
        }
        let values: Vec<String> = values.split(',').map(|v| v.trim().to_string()).collect();
        if values.iter().any(String::is_empty) {
            return Err(err("empty axis value"));
        }
        axes.push(Axis {
            key: key.to_string(),
            values,
        });
    }
    if axes.is_empty() {
        return Err(err("no axes given"));
    }
    Ok(axes)
}

pub const SERIES_HEADER: &str = "iteration,mean_fitness,diversity,best_fitness,leader_action_share";

pub fn write_series_csv<W: Write + ?Sized>(series: &RunSeries, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{SERIES_HEADER}")?;
    for s in &series.stats {
        writeln!(
            sink,
            "{},{:.6},{},{:.6},{:.6}",
            s.iteration, s.mean_fitness, s.diversity, s.best_fitness, s.leader_action_share
        )?;
    }
    sink.flush()
}

/// Long format: one row per run, the cell's axis values first.
/// Rows are ordered by cell position, then seed. A run that never reached
/// the convergence threshold reports `-1`.
pub fn write_sweep_csv<W: Write + ?Sized>(result: &SweepResult, sink: &mut W) -> io::Result<()> {
    let mut header: Vec<&str> = result.axes.iter().map(|a| a.key.as_str()).collect();
    header.extend([
        "seed",
        "final_mean_fitness",
        "final_diversity",
        "convergence_iteration",
    ]);
    writeln!(sink, "{}", header.join(","))?;

    let mut rows: Vec<_> = result
        .cells
        .iter()
        .flat_map(|c| c.runs.iter().map(move |r| (c, r)))
        .collect();
    rows.sort_by(|(ca, ra), (cb, rb)| ca.index.cmp(&cb.index).then(ra.seed.cmp(&rb.seed)));

    for (cell, r) in rows {
        let conv = r
            .convergence_iteration
            .map_or_else(|| "-1".to_string(), |i| i.to_string());
        writeln!(
            sink,
            "{},{},{:.6},{},{}",
            cell.values.join(","),
            r.seed,
            r.final_mean_fitness,
            r.final_diversity,
            conv
        )?;
    }
    sink.flush()
}

/// One row per cell: replicate mean and standard deviation of each summary.
/// Unconverged runs enter the convergence columns as `iterations + 1`; the
/// early-fitness columns read iteration 5, or the last iteration of shorter runs.
pub fn write_summary_csv<W: Write + ?Sized>(result: &SweepResult, sink: &mut W) -> io::Result<()> {
    let mut header: Vec<&str> = result.axes.iter().map(|a| a.key.as_str()).collect();
    header.extend([
        "replicates",
        "mean_final_fitness",
        "sd_final_fitness",
        "mean_final_diversity",
        "sd_final_diversity",
        "mean_convergence_iteration",
        "sd_convergence_iteration",
        "mean_early_fitness",
        "sd_early_fitness",
        "mean_final_leader_share",
        "sd_final_leader_share",
    ]);
    writeln!(sink, "{}", header.join(","))?;
    for cell in &result.cells {
        let early = EARLY_CHECKPOINT.min(cell.config.iterations);
        let columns = [
            cell.final_fitness(),
            cell.final_diversity(),
            cell.convergence(),
            cell.fitness_at(early),
            cell.final_leader_share(),
        ];
        write!(sink, "{},{}", cell.values.join(","), cell.runs.len())?;
        for xs in &columns {
            write!(sink, ",{:.6},{:.6}", mean(xs), std_dev(xs))?;
        }
        writeln!(sink)?;
    }
    sink.flush()
}

/// Every action with its fitness, ordered by base-3 code (head most
/// significant, -1 < 0 < +1).
pub fn oracle_fitness_dump<W: Write + ?Sized>(sink: &mut W) -> io::Result<()> {
    let names: Vec<&str> = BodyPart::ALL.iter().map(|p| p.name()).collect();
    writeln!(sink, "code,{},fitness", names.join(","))?;
    for a in Action::all() {
        let v = a.values();
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{:.6}",
            a.code(),
            v[0],
            v[1],
            v[2],
            v[3],
            v[4],
            v[5],
            fitness(&a)
        )?;
    }
    sink.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run, sweep, SweepOptions};

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), RunConfig::default());
        assert_eq!(
            parse_config("# nothing here\n\n   \n").unwrap(),
            RunConfig::default()
        );
    }

    #[test]
    fn paper_setup() {
        let c = parse_config("iterations = 100\nbroadcast_enabled = true  # leader on\n").unwrap();
        assert_eq!(c.iterations, 100);
        assert!(c.broadcast_enabled);
        assert_eq!(c.n_agents(), 100);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_config("seed = 3\nleader_p_invent = 1.5\n").unwrap_err();
        assert!(matches!(e, ConfigError::Value { line: 2, .. }));
        assert!(e.to_string().contains("leader_p_invent"), "{e}");

        let e = parse_config("\n\ncolour = red").unwrap_err();
        assert_eq!(
            e,
            ConfigError::UnknownKey {
                line: 3,
                key: "colour".into()
            }
        );
        assert!(matches!(
            parse_config("width 10").unwrap_err(),
            ConfigError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_config("seed = 1\nseed = 2").unwrap_err(),
            ConfigError::DuplicateKey { line: 2, .. }
        ));
        assert!(matches!(
            parse_config("width = 1\nheight = 2").unwrap_err(),
            ConfigError::Invalid(_)
        ));
    }

    #[test]
    fn axes_syntax() {
        let a = parse_axes("leader_p_invent=0,0.5,1; follower_p_invent=0.02").unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].values, vec!["0", "0.5", "1"]);
        assert_eq!(a[1].key, "follower_p_invent");
        assert!(parse_axes("").is_err());
        assert!(parse_axes("alpha").is_err());
        assert!(parse_axes("alpha=0.1,,0.2").is_err());
    }

    #[test]
    fn series_csv_layout() {
        let cfg = RunConfig {
            broadcast_enabled: true,
            ..RunConfig::default()
        };
        let s = run(&cfg).unwrap();
        let mut buf = Vec::new();
        write_series_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let lines: Vec<&str> = text.split_terminator('\n').collect();
        assert_eq!(lines.len(), 102);
        assert_eq!(lines[0], SERIES_HEADER);
        assert_eq!(lines[1], "0,0.000000,1,0.000000,1.000000");
        assert!(!text.contains('\r'));
        let mut again = Vec::new();
        write_series_csv(&s, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn sweep_csv_rows_and_sentinel() {
        let base = RunConfig {
            iterations: 3,
            ..RunConfig::default()
        };
        let axes = [Axis::new("follower_p_invent", &["0", "0.5"])];
        let r = sweep(&base, &axes, 3, 10, &SweepOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "follower_p_invent,seed,final_mean_fitness,final_diversity,convergence_iteration"
        );
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "0,10,0.000000,1,-1");
        assert!(lines[4].starts_with("0.5,13,"));
    }

    #[test]
    fn summary_csv_one_row_per_cell() {
        let base = RunConfig {
            iterations: 3,
            follower_p_invent: 0.0,
            leader_p_invent: 0.0,
            ..RunConfig::default()
        };
        let axes = [Axis::new("alpha", &["0.1", "0.2"])];
        let r = sweep(&base, &axes, 2, 0, &SweepOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_summary_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("alpha,replicates,mean_final_fitness,"));
        assert_eq!(
            lines[1],
            "0.1,2,0.000000,0.000000,1.000000,0.000000,4.000000,0.000000,\
             0.000000,0.000000,0.000000,0.000000"
        );
    }

    #[test]
    fn oracle_dump_shape() {
        let mut buf = Vec::new();
        oracle_fitness_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 729);
        assert_eq!(rows[364], "364,0,0,0,0,0,0,0.000000");
        assert_eq!(rows.iter().filter(|r| r.ends_with(",10.000000")).count(), 16);
    }
}
