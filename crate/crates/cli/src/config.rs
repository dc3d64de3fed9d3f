//! Resolved run configuration. Everything a command does is determined by a
//! [`RunConfig`], which serializes to JSON and back unchanged.

use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use klein_core::obstruction::quotient::QuotientBudget;
use klein_core::{Grid, QuotientSpec, SearchBudget, WindowedSearch};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Certificate strategy for the obstruction value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionStrategy {
    /// Orbit walk in the full tensor power `Z[pi]^{⊗4}`.
    FullRing,
    /// Windowed integer search in `I^{⊗4}`.
    Windowed,
    /// One finite quotient, given by `--quotient`.
    Quotient,
    /// The finite-quotient grid.
    #[default]
    Grid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CommandConfig {
    Cells {
        verify: bool,
    },
    Matrix {
        verify: bool,
        fixture: Option<PathBuf>,
        row: Option<usize>,
    },
    Reduce {
        verify: bool,
    },
    FTable {
        verify: bool,
    },
    Obstruction {
        strategy: ObstructionStrategy,
        quotient: Option<QuotientSpec>,
        certificate: Option<PathBuf>,
    },
    QuotientSearch {
        certificate: Option<PathBuf>,
    },
    Verify {
        path: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandConfig,
    pub format: OutputFormat,
    pub window: WindowedSearch,
    pub grid: Grid,
    pub budget: SearchBudget,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Rejects invalid combinations before any computation starts.
    pub fn validate(&self) -> Result<()> {
        ensure!(self.window.window >= 1, "window must be at least 1");
        ensure!(
            self.window.max_relations >= 1,
            "relation budget must be positive"
        );
        ensure!(
            !self.grid.ps.is_empty() && !self.grid.qs.is_empty() && !self.grid.ells.is_empty(),
            "grid must be nonempty"
        );
        for &p in &self.grid.ps {
            for &q in &self.grid.qs {
                for &ell in &self.grid.ells {
                    QuotientSpec::new(p, q, ell)
                        .with_context(|| format!("grid cell ({p}, {q}, {ell})"))?;
                }
            }
        }
        let b = &self.budget;
        ensure!(
            b.per_cell.max_rank >= 1 && b.per_cell.seconds >= 1 && b.total_seconds >= 1,
            "budget must be positive"
        );
        match &self.command {
            CommandConfig::Matrix {
                verify,
                fixture,
                row,
            } => {
                ensure!(
                    fixture.is_none() || *verify,
                    "--fixture only applies with --verify"
                );
                if let Some(r) = row {
                    ensure!((1..=60).contains(r), "row {r} outside 1..=60");
                }
            }
            CommandConfig::Obstruction {
                strategy, quotient, ..
            } => match (strategy, quotient) {
                (ObstructionStrategy::Quotient, None) => {
                    bail!("--strategy quotient needs --quotient p,q,ell")
                }
                (ObstructionStrategy::Quotient, Some(spec)) => {
                    QuotientSpec::new(spec.p, spec.q, spec.ell)?;
                }
                (_, Some(_)) => bail!("--quotient only applies with --strategy quotient"),
                _ => {}
            },
            _ => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let (lo, hi) = (
                parse_one::<i64>(lo)?,
                parse_one::<i64>(hi.trim_start_matches('='))?,
            );
            ensure!(lo <= hi, "empty range {part}");
            for v in lo..=hi {
                out.push(parse_one(&v.to_string())?);
            }
        } else {
            out.push(parse_one(part)?);
        }
    }
    Ok(out)
}

fn parse_one<T: std::str::FromStr>(s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.trim()
        .parse()
        .map_err(|e| anyhow::anyhow!("bad value {s:?}: {e}"))
}

/// `p=2,4;q=2..8;ell=0,2,3,4`; omitted axes keep their defaults.
pub fn parse_grid(s: &str) -> Result<Grid> {
    let mut grid = Grid::default();
    for axis in s.split(';').map(str::trim).filter(|a| !a.is_empty()) {
        let (name, values) = axis
            .split_once('=')
            .with_context(|| format!("grid axis {axis:?} needs '='"))?;
        match name.trim() {
            "p" => grid.ps = parse_list(values)?,
            "q" => grid.qs = parse_list(values)?,
            "ell" => grid.ells = parse_list(values)?,
            other => bail!("unknown grid axis {other:?}"),
        }
    }
    Ok(grid)
}

/// `rank=2500,cell=300,total=1800,witness=100`; omitted keys keep defaults.
pub fn parse_budget(s: &str) -> Result<SearchBudget> {
    let mut b = SearchBudget {
        per_cell: QuotientBudget::default(),
        ..SearchBudget::default()
    };
    for item in s.split(',').map(str::trim).filter(|a| !a.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .with_context(|| format!("budget item {item:?} needs '='"))?;
        let v: u64 = parse_one(v)?;
        match k.trim() {
            "rank" => b.per_cell.max_rank = v,
            "cell" => b.per_cell.seconds = v,
            "total" => b.total_seconds = v,
            "witness" => b.per_cell.witness_rank = v,
            other => bail!("unknown budget key {other:?}"),
        }
    }
    Ok(b)
}

/// `p,q,ell`.
pub fn parse_quotient(s: &str) -> Result<QuotientSpec> {
    let v: Vec<i64> = parse_list(s)?;
    let [p, q, ell] = v[..] else {
        bail!("quotient needs p,q,ell")
    };
    ensure!(ell >= 0, "ell must be nonnegative");
    Ok(QuotientSpec::new(p, q, ell as u64)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunConfig {
        RunConfig {
            command: CommandConfig::Obstruction {
                strategy: ObstructionStrategy::Quotient,
                quotient: Some(QuotientSpec::new(2, 4, 0).unwrap()),
                certificate: Some("cert.json".into()),
            },
            format: OutputFormat::Json,
            window: WindowedSearch::default(),
            grid: parse_grid("p=2;q=2..4;ell=0,2").unwrap(),
            budget: parse_budget("rank=700,cell=5").unwrap(),
            out: None,
        }
    }

    #[test]
    fn round_trips() {
        let c = sample();
        c.validate().unwrap();
        assert_eq!(RunConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn grid_and_budget_syntax() {
        let g = parse_grid("p=2,4;q=2..8").unwrap();
        assert_eq!(g.qs, vec![2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(g.ells, Grid::default().ells);
        assert!(parse_grid("r=1").is_err());
        assert_eq!(parse_budget("total=60").unwrap().total_seconds, 60);
        assert!(parse_budget("rank").is_err());
        assert_eq!(
            parse_quotient("2,4,0").unwrap(),
            QuotientSpec::new(2, 4, 0).unwrap()
        );
        assert!(parse_quotient("3,4,0").is_err());
    }

    #[test]
    fn invalid_combinations_rejected() {
        let mut c = sample();
        c.grid.ps = vec![3];
        assert!(c.validate().is_err());
        let mut c = sample();
        c.command = CommandConfig::Obstruction {
            strategy: ObstructionStrategy::Grid,
            quotient: Some(QuotientSpec::new(2, 2, 0).unwrap()),
            certificate: None,
        };
        assert!(c.validate().is_err());
        let mut c = sample();
        c.command = CommandConfig::Matrix {
            verify: false,
            fixture: Some("m.txt".into()),
            row: None,
        };
        assert!(c.validate().is_err());
        let mut c = sample();
        c.command = CommandConfig::Matrix {
            verify: false,
            fixture: None,
            row: Some(61),
        };
        assert!(c.validate().is_err());
    }
}
