//! Run configuration assembled from defaults, an optional JSON file, environment
//! overrides and command-line flags, in increasing order of precedence.

use crate::error::CliError;
use crate::parse::GridSpec;
use crate::record::Format;
use clap::{Args, Parser, Subcommand};
use hyperwedge::mehler_fock::TransformConfig;
use hyperwedge::quadrature::{LaplaceInversionConfig, QuadratureConfig};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Prefix shared by every environment override.
pub const ENV_PREFIX: &str = "HYPERWEDGE_";

/// The commands of the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    EvalP,
    EvalQ,
    Transform,
    Verify,
    GreenPlane,
    GreenWedge,
    HeatWedge,
    Suite,
}

/// Kind of a parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Real,
    Complex,
    Text,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::EvalP => "eval-p",
            Command::EvalQ => "eval-q",
            Command::Transform => "transform",
            Command::Verify => "verify",
            Command::GreenPlane => "green-plane",
            Command::GreenWedge => "green-wedge",
            Command::HeatWedge => "heat-wedge",
            Command::Suite => "suite",
        }
    }

    /// Parameters accepted by the command.
    pub fn schema(self) -> &'static [(&'static str, Kind)] {
        use Kind::*;
        match self {
            Command::EvalP | Command::EvalQ => &[("nu", Complex), ("mu", Complex), ("z", Complex)],
            Command::Transform | Command::Verify => &[("kernel", Text), ("nu", Complex), ("z", Real), ("omega", Real), ("theta", Real)],
            Command::GreenPlane => &[("s", Complex), ("d", Real), ("a", Real), ("alpha", Real), ("b", Real), ("beta", Real)],
            Command::GreenWedge => &[("gamma", Real), ("a", Real), ("alpha", Real), ("b", Real), ("beta", Real), ("s", Complex)],
            Command::HeatWedge => &[("gamma", Real), ("a", Real), ("alpha", Real), ("b", Real), ("beta", Real), ("t", Real)],
            Command::Suite => &[("name", Text)],
        }
    }

    pub fn kind_of(self, key: &str) -> Option<Kind> {
        self.schema().iter().find(|(k, _)| *k == key).map(|(_, kind)| *kind)
    }
}

/// Tolerance overrides; unset fields keep the library defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance of every quadrature.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance of every quadrature.
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Subdivision budget of the adaptive quadrature.
    #[arg(long)]
    pub max_subdivisions: Option<usize>,
    /// Relative accuracy of residue series.
    #[arg(long)]
    pub series_rel_tol: Option<f64>,
    /// Largest pole modulus summed in residue series.
    #[arg(long)]
    pub pole_radius: Option<f64>,
    /// Talbot node count.
    #[arg(long)]
    pub talbot_nodes: Option<usize>,
    /// Talbot node count of the self-check; 0 disables the check.
    #[arg(long)]
    pub talbot_check_nodes: Option<usize>,
    /// Talbot contour scale.
    #[arg(long)]
    pub talbot_scale: Option<f64>,
}

impl Tolerances {
    /// Fields set in `other` replace those in `self`.
    pub fn overlay(self, other: Tolerances) -> Tolerances {
        Tolerances {
            rel_tol: other.rel_tol.or(self.rel_tol),
            abs_tol: other.abs_tol.or(self.abs_tol),
            max_subdivisions: other.max_subdivisions.or(self.max_subdivisions),
            series_rel_tol: other.series_rel_tol.or(self.series_rel_tol),
            pole_radius: other.pole_radius.or(self.pole_radius),
            talbot_nodes: other.talbot_nodes.or(self.talbot_nodes),
            talbot_check_nodes: other.talbot_check_nodes.or(self.talbot_check_nodes),
            talbot_scale: other.talbot_scale.or(self.talbot_scale),
        }
    }

    /// Reads `HYPERWEDGE_*` variables; unknown names under the prefix are rejected.
    pub fn from_env<I: IntoIterator<Item = (String, String)>>(vars: I) -> Result<Tolerances, CliError> {
        let mut t = Tolerances::default();
        for (name, value) in vars {
            let Some(key) = name.strip_prefix(ENV_PREFIX) else { continue };
            let real = || value.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("{name}={value:?} is not a number")));
            let count = || value.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("{name}={value:?} is not a count")));
            match key {
                "REL_TOL" => t.rel_tol = Some(real()?),
                "ABS_TOL" => t.abs_tol = Some(real()?),
                "MAX_SUBDIVISIONS" => t.max_subdivisions = Some(count()?),
                "SERIES_REL_TOL" => t.series_rel_tol = Some(real()?),
                "POLE_RADIUS" => t.pole_radius = Some(real()?),
                "TALBOT_NODES" => t.talbot_nodes = Some(count()?),
                "TALBOT_CHECK_NODES" => t.talbot_check_nodes = Some(count()?),
                "TALBOT_SCALE" => t.talbot_scale = Some(real()?),
                _ => return Err(CliError::Config(format!("unknown environment override {name}"))),
            }
        }
        Ok(t)
    }

    /// Configuration of standalone quadratures (heat kernels, Laplace transforms).
    pub fn quadrature(&self) -> QuadratureConfig {
        let base = QuadratureConfig { abs_tol: 1e-16, ..QuadratureConfig::default() };
        QuadratureConfig {
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(base.max_subdivisions),
            ..base
        }
    }

    /// Configuration of Mehler–Fock transforms.
    pub fn transform(&self) -> TransformConfig {
        let base = TransformConfig::default();
        TransformConfig {
            quadrature: QuadratureConfig {
                rel_tol: self.rel_tol.unwrap_or(base.quadrature.rel_tol),
                abs_tol: self.abs_tol.unwrap_or(base.quadrature.abs_tol),
                max_subdivisions: self.max_subdivisions.unwrap_or(base.quadrature.max_subdivisions),
                ..base.quadrature
            },
            series_rel_tol: self.series_rel_tol.unwrap_or(base.series_rel_tol),
            pole_radius: self.pole_radius.unwrap_or(base.pole_radius),
        }
    }

    /// Configuration of Talbot inversion.
    pub fn inversion(&self) -> LaplaceInversionConfig {
        let base = LaplaceInversionConfig::default();
        LaplaceInversionConfig {
            node_count: self.talbot_nodes.unwrap_or(base.node_count),
            contour_scale: self.talbot_scale.or(base.contour_scale),
            check_node_count: match self.talbot_check_nodes {
                Some(0) => None,
                Some(n) => Some(n),
                None => base.check_node_count,
            },
        }
    }

    /// Rejects non-positive tolerances and invalid Talbot settings.
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol), ("series_rel_tol", self.series_rel_tol), ("pole_radius", self.pole_radius)]
        {
            if let Some(x) = v {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(CliError::Config(format!("{name} = {x} must be positive")));
                }
            }
        }
        if self.max_subdivisions == Some(0) {
            return Err(CliError::Config("max_subdivisions must be at least 1".into()));
        }
        self.inversion().validate().map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Output destination and encoding.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_format")]
    pub format: Format,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

fn default_format() -> Format {
    Format::Json
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { format: Format::Json, path: None }
    }
}

/// A complete, validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: BTreeMap<String, String>,
    pub grid: Option<GridSpec>,
    pub tolerances: Tolerances,
    pub output: OutputSpec,
    /// Adds an `elapsed_s` column; off by default so that output is reproducible.
    pub timing: bool,
}

/// JSON configuration file mirroring [`RunConfig`].
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub parameters: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    pub grid: Option<String>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: Option<OutputSpec>,
    #[serde(default)]
    pub timing: bool,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    fn parameter_strings(&self) -> Result<BTreeMap<String, String>, CliError> {
        self.parameters
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => Ok((k.clone(), s.clone())),
                serde_json::Value::Number(n) => Ok((k.clone(), n.to_string())),
                other => Err(CliError::Config(format!("parameter {k} has unsupported value {other}"))),
            })
            .collect()
    }
}

#[derive(Debug, Parser)]
#[command(name = "hyperwedge", version, about = "Legendre functions, Mehler–Fock transforms and hyperbolic wedge kernels")]
pub struct Cli {
    /// JSON configuration file; flags given here take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Sweep `axis=KEY,from=X,to=Y,count=N[,spacing=linear|log]`.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Add wall-clock time per record.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(flatten)]
    pub tolerances: Tolerances,
    #[command(subcommand)]
    pub command: Option<CommandArgs>,
}

#[derive(Debug, Args)]
pub struct LegendreArgs {
    /// Degree ν.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Order μ (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Argument z.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Kernel name from the catalog, `cosine` (with --theta) or `all`.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Degree ν.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    /// Larger argument z.
    #[arg(long)]
    pub z: Option<String>,
    /// Smaller argument ω.
    #[arg(long)]
    pub omega: Option<String>,
    /// Angle of the cosine kernel.
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Debug, Args)]
pub struct GreenPlaneArgs {
    /// Spectral parameter s.
    #[arg(long)]
    pub s: Option<String>,
    /// Hyperbolic distance; alternatively give both points in polar form.
    #[arg(long)]
    pub d: Option<String>,
    /// Radius of the first point.
    #[arg(long)]
    pub a: Option<String>,
    /// Angle of the first point.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Radius of the second point.
    #[arg(long)]
    pub b: Option<String>,
    /// Angle of the second point.
    #[arg(long)]
    pub beta: Option<String>,
}

#[derive(Debug, Args)]
pub struct WedgeArgs {
    /// Opening angle γ.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Radius of the first point.
    #[arg(long)]
    pub a: Option<String>,
    /// Angle of the first point.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Radius of the second point.
    #[arg(long)]
    pub b: Option<String>,
    /// Angle of the second point.
    #[arg(long)]
    pub beta: Option<String>,
    /// Spectral parameter s.
    #[arg(long)]
    pub s: Option<String>,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    /// Opening angle γ.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Radius of the first point.
    #[arg(long)]
    pub a: Option<String>,
    /// Angle of the first point.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Radius of the second point.
    #[arg(long)]
    pub b: Option<String>,
    /// Angle of the second point.
    #[arg(long)]
    pub beta: Option<String>,
    /// Time t.
    #[arg(long)]
    pub t: Option<String>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Suite name or `all`.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Legendre function of the first kind.
    EvalP(LegendreArgs),
    /// Legendre function of the second kind.
    EvalQ(LegendreArgs),
    /// Both sides of a Mehler–Fock transform identity.
    Transform(TransformArgs),
    /// Like `transform`, failing when the residual exceeds its contract.
    Verify(TransformArgs),
    /// Green's function of the hyperbolic plane.
    GreenPlane(GreenPlaneArgs),
    /// Green's function of a hyperbolic wedge.
    GreenWedge(WedgeArgs),
    /// Heat kernel of a hyperbolic wedge.
    HeatWedge(HeatArgs),
    /// Named verification suite.
    Suite(SuiteArgs),
}

impl CommandArgs {
    fn split(&self) -> (Command, Vec<(&'static str, Option<String>)>) {
        match self {
            CommandArgs::EvalP(a) | CommandArgs::EvalQ(a) => {
                let cmd = if matches!(self, CommandArgs::EvalP(_)) { Command::EvalP } else { Command::EvalQ };
                (cmd, vec![("nu", a.nu.clone()), ("mu", a.mu.clone()), ("z", a.z.clone())])
            }
            CommandArgs::Transform(a) | CommandArgs::Verify(a) => {
                let cmd = if matches!(self, CommandArgs::Transform(_)) { Command::Transform } else { Command::Verify };
                let v = vec![("kernel", a.kernel.clone()), ("nu", a.nu.clone()), ("z", a.z.clone()), ("omega", a.omega.clone()), ("theta", a.theta.clone())];
                (cmd, v)
            }
            CommandArgs::GreenPlane(a) => (
                Command::GreenPlane,
                vec![("s", a.s.clone()), ("d", a.d.clone()), ("a", a.a.clone()), ("alpha", a.alpha.clone()), ("b", a.b.clone()), ("beta", a.beta.clone())],
            ),
            CommandArgs::GreenWedge(a) => (
                Command::GreenWedge,
                vec![("gamma", a.gamma.clone()), ("a", a.a.clone()), ("alpha", a.alpha.clone()), ("b", a.b.clone()), ("beta", a.beta.clone()), ("s", a.s.clone())],
            ),
            CommandArgs::HeatWedge(a) => (
                Command::HeatWedge,
                vec![("gamma", a.gamma.clone()), ("a", a.a.clone()), ("alpha", a.alpha.clone()), ("b", a.b.clone()), ("beta", a.beta.clone()), ("t", a.t.clone())],
            ),
            CommandArgs::Suite(a) => (Command::Suite, vec![("name", a.name.clone())]),
        }
    }
}

/// Merges file, environment and flags into a [`RunConfig`].
///
/// `file` is the parsed configuration file, if any; `env` the process environment.
pub fn assemble(cli: &Cli, file: Option<FileConfig>, env: Tolerances) -> Result<RunConfig, CliError> {
    let file = file.unwrap_or_default();
    let flag_cmd = cli.command.as_ref().map(CommandArgs::split);
    let command = match (&flag_cmd, file.command) {
        (Some((c, _)), Some(f)) if *c != f => {
            return Err(CliError::Config(format!("command {} on the command line conflicts with {} in the config file", c.name(), f.name())))
        }
        (Some((c, _)), _) => *c,
        (None, Some(f)) => f,
        (None, None) => return Err(CliError::Config("no command given".into())),
    };

    let mut parameters = file.parameter_strings()?;
    for (k, v) in flag_cmd.into_iter().flat_map(|(_, v)| v) {
        if let Some(v) = v {
            parameters.insert(k.to_string(), v);
        }
    }
    if let Some(unknown) = parameters.keys().find(|k| command.kind_of(k).is_none()) {
        let known: Vec<&str> = command.schema().iter().map(|(k, _)| *k).collect();
        return Err(CliError::Config(format!("unknown parameter {unknown:?} for {} (accepted: {})", command.name(), known.join(", "))));
    }

    let grid = match cli.grid.as_deref().or(file.grid.as_deref()) {
        Some(g) => {
            let g = GridSpec::parse(g)?;
            match command.kind_of(&g.axis) {
                Some(Kind::Real | Kind::Complex) => {}
                _ => return Err(CliError::Config(format!("grid axis {:?} is not a numeric parameter of {}", g.axis, command.name()))),
            }
            if command == Command::Suite {
                return Err(CliError::Config("suites do not take a grid".into()));
            }
            if parameters.contains_key(&g.axis) {
                return Err(CliError::Config(format!("parameter {} is swept by the grid and must not also be given", g.axis)));
            }
            Some(g)
        }
        None => None,
    };

    let tolerances = file.tolerances.overlay(env).overlay(cli.tolerances);
    tolerances.validate()?;
    let mut output = file.output.unwrap_or_default();
    if let Some(f) = cli.format {
        output.format = f;
    }
    if let Some(p) = &cli.output {
        output.path = Some(p.clone());
    }
    Ok(RunConfig { command, parameters, grid, tolerances, output, timing: cli.timing || file.timing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("hyperwedge").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_file_and_env() {
        let file = FileConfig::parse(r#"{"command": "eval-q", "parameters": {"nu": 0, "z": "2"}, "tolerances": {"rel_tol": 1e-6, "abs_tol": 1e-9}}"#).unwrap();
        let env = Tolerances::from_env([("HYPERWEDGE_REL_TOL".to_string(), "1e-7".to_string()), ("PATH".into(), "/bin".into())]).unwrap();
        let run = assemble(&cli(&["--rel-tol", "1e-8", "eval-q", "--z", "3"]), Some(file), env).unwrap();
        assert_eq!(run.command, Command::EvalQ);
        assert_eq!(run.parameters["nu"], "0");
        assert_eq!(run.parameters["z"], "3");
        assert_eq!(run.tolerances.rel_tol, Some(1e-8));
        assert_eq!(run.tolerances.abs_tol, Some(1e-9));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(FileConfig::parse(r#"{"command": "eval-q", "colour": 1}"#).is_err());
        assert!(FileConfig::parse(r#"{"tolerances": {"rel": 1e-3}}"#).is_err());
        let file = FileConfig::parse(r#"{"command": "eval-q", "parameters": {"omega": 2}}"#).unwrap();
        assert!(matches!(assemble(&cli(&[]), Some(file), Tolerances::default()), Err(CliError::Config(_))));
        assert!(Tolerances::from_env([("HYPERWEDGE_RELTOL".to_string(), "1".to_string())]).is_err());
        assert!(Cli::try_parse_from(["hyperwedge", "eval-q", "--omega", "2"]).is_err());
    }

    #[test]
    fn grid_axis_must_be_numeric_and_free() {
        let ok = assemble(&cli(&["--grid", "axis=z,from=1.5,to=3,count=4", "eval-q", "--nu", "0"]), None, Tolerances::default()).unwrap();
        assert_eq!(ok.grid.unwrap().count, 4);
        assert!(assemble(&cli(&["--grid", "axis=z,from=1.5,to=3,count=4", "eval-q", "--z", "2"]), None, Tolerances::default()).is_err());
        assert!(assemble(&cli(&["--grid", "axis=kernel,from=1,to=3,count=4", "transform"]), None, Tolerances::default()).is_err());
    }
}
