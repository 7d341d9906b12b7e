//! Run configuration: `key=value` files, command-line overrides and the
//! resolved, echoable [`RunConfig`].

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use subharm::indicator::zero_set;
use subharm::potential::{Extrapolation, GeometricGrid};
use subharm::quad::QuadratureSpec;
use subharm::ProblemParams;

use crate::error::{CliError, Result};

pub const KEYS: [&str; 17] = [
    "command",
    "n",
    "rho",
    "delta",
    "theta",
    "grid",
    "tol",
    "format",
    "seed",
    "rel_tol",
    "abs_tol",
    "model",
    "radii",
    "extrapolation",
    "target",
    "random",
    "points",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Indicator,
    Zeros,
    MellinVerify,
    Simulate,
    SolveOrder,
    Counterexample,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Indicator => "indicator",
            Self::Zeros => "zeros",
            Self::MellinVerify => "mellin-verify",
            Self::Simulate => "simulate",
            Self::SolveOrder => "solve-order",
            Self::Counterexample => "counterexample",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Raw settings by key, before defaults are applied.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: Vec<(String, String)>,
}

impl Settings {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        match self.values.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.values.push((key.to_string(), value)),
        }
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(mut self, other: Settings) -> Settings {
        for (k, v) in other.values {
            self.set(&k, v);
        }
        self
    }
}

impl FromStr for Settings {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self> {
        let mut settings = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Config { line: i + 1, message };
            let (k, v) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, got `{line}`")))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(err(format!("unknown key `{k}`")));
            }
            if settings.get(k).is_some() {
                return Err(err(format!("duplicate key `{k}`")));
            }
            settings.set(k, v.trim());
        }
        Ok(settings)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridConfig {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl GridConfig {
    pub fn geometric(&self) -> Result<GeometricGrid> {
        Ok(GeometricGrid::new(self.start, self.end, self.points)?)
    }
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: u32,
    pub rho: f64,
    pub delta: f64,
    /// Radians.
    pub theta: Vec<f64>,
    pub grid: GridConfig,
    pub tol: f64,
    pub format: Format,
    pub seed: u64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extrapolation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

fn usage(key: &str, value: &str, what: &str) -> CliError {
    CliError::Usage(format!("{key}: cannot parse `{value}` as {what}"))
}

fn number<T: FromStr>(key: &str, value: &str, what: &str) -> Result<T> {
    value.trim().parse().map_err(|_| usage(key, value, what))
}

fn list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| number(key, s, "a number"))
        .collect()
}

/// One angle with an explicit unit: `130deg`, `130°` or `2.27rad`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim();
    let (value, to_rad) = if let Some(v) = t.strip_suffix("deg").or_else(|| t.strip_suffix('°')) {
        (v, PI / 180.0)
    } else if let Some(v) = t.strip_suffix("rad") {
        (v, 1.0)
    } else {
        return Err(CliError::Usage(format!("angle `{t}` needs a unit suffix: deg or rad")));
    };
    let v: f64 = number("theta", value, "an angle")?;
    let rad = v * to_rad;
    if !(0.0..=PI).contains(&rad) {
        return Err(CliError::Usage(format!("angle `{t}` outside [0, π]")));
    }
    Ok(rad)
}

pub fn parse_angles(text: &str) -> Result<Vec<f64>> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_angle).collect()
}

fn parse_grid(text: &str) -> Result<GridConfig> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, end, points] = parts[..] else {
        return Err(usage("grid", text, "start:end:points"));
    };
    Ok(GridConfig {
        start: number("grid", start, "a number")?,
        end: number("grid", end, "a number")?,
        points: number("grid", points, "a point count")?,
    })
}

impl RunConfig {
    /// Applies the defaults of `command` to the merged settings.
    pub fn resolve(command: CommandKind, s: &Settings) -> Result<Self> {
        if let Some(c) = s.get("command") {
            if c != command.name() {
                return Err(CliError::Usage(format!("config is for `{c}`, not `{}`", command.name())));
            }
        }
        let get = |k: &str| s.get(k);
        let n = get("n").map(|v| number("n", v, "an integer")).transpose()?.unwrap_or(3);
        let rho = get("rho").map(|v| number("rho", v, "a number")).transpose()?.unwrap_or(0.5);
        let delta = get("delta").map(|v| number("delta", v, "a number")).transpose()?.unwrap_or(1.0);
        let theta = match get("theta") {
            Some(v) => parse_angles(v)?,
            None => match command {
                CommandKind::Indicator => (0..6).map(|k| k as f64 * PI / 6.0).collect(),
                CommandKind::Simulate => vec![0.0, PI / 4.0, PI / 2.0],
                CommandKind::Counterexample => {
                    let root = zero_set(&ProblemParams::new(3, rho, 1.0)?)?.roots[0];
                    vec![0.0, root]
                }
                _ => Vec::new(),
            },
        };
        let grid = get("grid").map(parse_grid).transpose()?.unwrap_or(GridConfig { start: 1e2, end: 1e6, points: 9 });
        let tol = get("tol").map(|v| number("tol", v, "a number")).transpose()?.unwrap_or(match command {
            CommandKind::Indicator => 1e-6,
            CommandKind::MellinVerify => 1e-8,
            _ => 1e-2,
        });
        let format = match get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(usage("format", other, "csv or json")),
        };
        let seed = get("seed").map(|v| number("seed", v, "an integer")).transpose()?.unwrap_or(0);
        let defaults = QuadratureSpec::default();
        let rel_tol = get("rel_tol").map(|v| number("rel_tol", v, "a number")).transpose()?.unwrap_or(defaults.rel_tol);
        let abs_tol = get("abs_tol").map(|v| number("abs_tol", v, "a number")).transpose()?.unwrap_or(defaults.abs_tol);

        let only = |key: &str, kinds: &[CommandKind]| -> Result<Option<&str>> {
            match get(key) {
                Some(_) if !kinds.contains(&command) => {
                    Err(CliError::Usage(format!("`{key}` does not apply to `{}`", command.name())))
                }
                v => Ok(v),
            }
        };
        let model = only("model", &[CommandKind::Simulate])?.map(PathBuf::from);
        if command == CommandKind::Simulate && model.is_none() {
            return Err(CliError::Usage("simulate needs a model file (--model)".into()));
        }
        let radii = only("radii", &[CommandKind::Simulate])?.map(|v| list("radii", v)).transpose()?;
        let extrapolation = match only("extrapolation", &[CommandKind::Simulate])? {
            None | Some("aitken") => (command == CommandKind::Simulate).then_some("aitken"),
            Some("inverselog") => Some("inverselog"),
            Some(other) => return Err(usage("extrapolation", other, "aitken or inverselog")),
        };
        let target = only("target", &[CommandKind::SolveOrder])?
            .map(|v| number("target", v, "a number"))
            .transpose()?;
        if command == CommandKind::SolveOrder && target.is_none() {
            return Err(CliError::Usage("solve-order needs --target".into()));
        }
        let random = only("random", &[CommandKind::MellinVerify])?
            .map(|v| number("random", v, "a count"))
            .transpose()?
            .or((command == CommandKind::MellinVerify).then_some(0));
        let points = only("points", &[CommandKind::Counterexample])?
            .map(|v| number("points", v, "a count"))
            .transpose()?
            .or((command == CommandKind::Counterexample).then_some(2001));

        Ok(Self {
            command,
            n,
            rho,
            delta,
            theta,
            grid,
            tol,
            format,
            seed,
            rel_tol,
            abs_tol,
            model,
            radii,
            extrapolation,
            target,
            random,
            points,
        })
    }

    pub fn quad(&self) -> QuadratureSpec {
        let mut q = QuadratureSpec::default().with_rel_tol(self.rel_tol);
        q.abs_tol = self.abs_tol;
        q
    }

    pub fn extrapolation(&self) -> Extrapolation {
        match self.extrapolation {
            Some("inverselog") => Extrapolation::InverseLog,
            _ => Extrapolation::Aitken,
        }
    }

    /// `key=value` lines that reproduce this run when fed back through `--config`.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        let join = |v: &[f64], unit: &str| v.iter().map(|x| format!("{x:?}{unit}")).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "command={}", self.command.name());
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "rho={:?}", self.rho);
        let _ = writeln!(out, "delta={:?}", self.delta);
        let _ = writeln!(out, "theta={}", join(&self.theta, "rad"));
        let _ = writeln!(out, "grid={:?}:{:?}:{}", self.grid.start, self.grid.end, self.grid.points);
        let _ = writeln!(out, "tol={:?}", self.tol);
        let _ = writeln!(out, "format={}", if self.format == Format::Csv { "csv" } else { "json" });
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "rel_tol={:?}", self.rel_tol);
        let _ = writeln!(out, "abs_tol={:?}", self.abs_tol);
        if let Some(m) = &self.model {
            let _ = writeln!(out, "model={}", m.display());
        }
        if let Some(r) = &self.radii {
            let _ = writeln!(out, "radii={}", join(r, ""));
        }
        if let Some(e) = self.extrapolation {
            let _ = writeln!(out, "extrapolation={e}");
        }
        if let Some(t) = self.target {
            let _ = writeln!(out, "target={t:?}");
        }
        if let Some(r) = self.random {
            let _ = writeln!(out, "random={r}");
        }
        if let Some(p) = self.points {
            let _ = writeln!(out, "points={p}");
        }
        out
    }
}
