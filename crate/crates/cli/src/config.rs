//! Weight files and run configuration.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use szego_core::oracle::Precision;
use szego_core::weights::{make_weight, EssentialSign, Point, Weight, WeightSpec};
use szego_core::C64;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cplx {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<Cplx> for C64 {
    fn from(c: Cplx) -> C64 {
        C64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDto {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

impl From<PointDto> for Point {
    fn from(p: PointDto) -> Point {
        Point::new(C64::new(p.re, p.im), p.mult)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogCoeff {
    pub k: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignDto {
    Plus,
    Minus,
}

/// On-disk weight description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightFile {
    Lebesgue,
    Polynomial { zeros: Vec<PointDto> },
    Rational { zeros: Vec<PointDto>, poles: Vec<PointDto> },
    Essential { a: Cplx, sign: SignDto },
    LogLaurent { coeffs: Vec<LogCoeff> },
}

impl WeightFile {
    pub fn spec(&self) -> WeightSpec {
        let pts = |v: &[PointDto]| v.iter().copied().map(Point::from).collect();
        match self {
            WeightFile::Lebesgue => WeightSpec::PolynomialModSq { zeros: Vec::new() },
            WeightFile::Polynomial { zeros } => WeightSpec::PolynomialModSq { zeros: pts(zeros) },
            WeightFile::Rational { zeros, poles } => WeightSpec::RationalModSq { zeros: pts(zeros), poles: pts(poles) },
            WeightFile::Essential { a, sign } => WeightSpec::EssentialExp {
                a: (*a).into(),
                sign: match sign {
                    SignDto::Plus => EssentialSign::Plus,
                    SignDto::Minus => EssentialSign::Minus,
                },
            },
            WeightFile::LogLaurent { coeffs } => WeightSpec::LogLaurent {
                coeffs: coeffs.iter().map(|c| (c.k, C64::new(c.re, c.im))).collect(),
            },
        }
    }

    pub fn build(&self) -> Result<Weight, CliError> {
        Ok(make_weight(&self.spec())?)
    }
}

pub fn parse_weight(text: &str) -> Result<WeightFile, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("weight file: {e}")))
}

pub fn load_weight(path: &Path) -> Result<Weight, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_weight(&text)?.build()
}

pub fn parse_precision(s: &str) -> Result<Precision, String> {
    let s = s.trim().to_ascii_lowercase();
    match s.as_str() {
        "f64" | "binary64" | "double" => Ok(Precision::Binary64),
        "dd" | "double-double" => Ok(Precision::DoubleDouble),
        _ => {
            let digits = s.strip_prefix("digits:").unwrap_or(&s);
            match digits.parse::<u32>() {
                Ok(d) if d >= 10 => Ok(Precision::Digits(d)),
                _ => Err(format!("unknown precision '{s}' (use f64, dd or digits:N with N >= 10)")),
            }
        }
    }
}

/// Comma separated numbers on the command line, a JSON array in config files.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct FloatList(pub Vec<f64>);

pub fn parse_list(s: &str) -> Result<FloatList, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"))).collect::<Result<_, _>>().map(FloatList)
}

/// Options shared by every subcommand. Any of them may also come from a
/// `--config` JSON file; flags given on the command line win.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Weight description (JSON)
    #[arg(long)]
    pub weight: Option<PathBuf>,
    /// Degree
    #[arg(long)]
    pub n: Option<usize>,
    /// Smallest degree of a range
    #[arg(long)]
    pub nmin: Option<usize>,
    /// Largest degree of a range
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Contour radius r, with rho < r < 1
    #[arg(long)]
    pub r: Option<f64>,
    /// f64, dd or digits:N
    #[arg(long)]
    pub precision: Option<String>,
    /// Series truncation tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Maximum number of stored iterates
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV of evaluation points (re, im)
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// CSV of zeros (re, im[, cluster_size])
    #[arg(long)]
    pub zeros: Option<PathBuf>,
    /// exterior, residue or dominant
    #[arg(long)]
    pub mode: Option<String>,
    /// Exclusion radius around poles for the residue approximations
    #[arg(long)]
    pub eps: Option<f64>,
    /// x0,x1,y0,y1
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub window: Option<FloatList>,
    /// Grid resolution per axis
    #[arg(long)]
    pub res: Option<usize>,
    /// Half-width of the bulk annulus for clock statistics
    #[arg(long)]
    pub band: Option<f64>,
    /// Extra dashed guide circles, comma separated radii
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub guides: Option<FloatList>,
    /// Omit pole markers in plots
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub no_poles: Option<bool>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overlay(mut self, flags: &RunConfig) -> RunConfig {
        overlay!(self, flags; weight, n, nmin, nmax, r, precision, tol, max_depth, out, grid, zeros,
            mode, eps, window, res, band, guides, no_poles);
        self
    }

    pub fn weight(&self) -> Result<Weight, CliError> {
        load_weight(self.weight.as_deref().ok_or_else(|| missing("weight"))?)
    }

    pub fn n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| missing("n"))
    }

    pub fn nmax(&self) -> Result<usize, CliError> {
        self.nmax.ok_or_else(|| missing("nmax"))
    }

    pub fn precision(&self) -> Result<Precision, CliError> {
        match &self.precision {
            None => Ok(Precision::DoubleDouble),
            Some(s) => parse_precision(s).map_err(CliError::Config),
        }
    }

    pub fn window(&self) -> Result<Option<[f64; 4]>, CliError> {
        match &self.window {
            None => Ok(None),
            Some(FloatList(v)) if v.len() == 4 && v[0] < v[1] && v[2] < v[3] => Ok(Some([v[0], v[1], v[2], v[3]])),
            Some(_) => Err(CliError::Config("window must be x0,x1,y0,y1 with x0 < x1 and y0 < y1".into())),
        }
    }
}

pub fn missing(name: &str) -> CliError {
    CliError::Config(format!("missing --{name}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_files_parse() {
        let w = parse_weight(r#"{"kind": "polynomial", "zeros": [{"re":0.5,"im":0,"mult":10}, {"re":0.1,"im":0.2}]}"#).unwrap();
        match &w {
            WeightFile::Polynomial { zeros } => {
                assert_eq!(zeros.len(), 2);
                assert_eq!(zeros[0].mult, 10);
                assert_eq!(zeros[1].mult, 1);
            }
            _ => panic!("wrong kind"),
        }
        w.build().unwrap();
        parse_weight(r#"{"kind":"essential","a":{"re":0.5,"im":0},"sign":"plus"}"#).unwrap().build().unwrap();
        parse_weight(r#"{"kind":"log_laurent","coeffs":[{"k":1,"re":0.3,"im":0}]}"#).unwrap().build().unwrap();
        parse_weight(r#"{"kind":"rational","zeros":[{"re":0.5}],"poles":[{"re":0,"im":0.4}]}"#).unwrap().build().unwrap();
        parse_weight(r#"{"kind":"lebesgue"}"#).unwrap().build().unwrap();
    }

    #[test]
    fn bad_weight_files_are_config_errors() {
        assert!(matches!(parse_weight(r#"{"kind":"cubic"}"#), Err(CliError::Config(_))));
        assert!(matches!(parse_weight(r#"{"kind":"essential","a":{"re":0.5},"sign":"up"}"#), Err(CliError::Config(_))));
        let e = parse_weight(r#"{"kind":"polynomial","zeros":[{"re":1.0}]}"#).unwrap().build().unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn precision_strings() {
        assert_eq!(parse_precision("dd"), Ok(Precision::DoubleDouble));
        assert_eq!(parse_precision("f64"), Ok(Precision::Binary64));
        assert_eq!(parse_precision("digits:60"), Ok(Precision::Digits(60)));
        assert_eq!(parse_precision("80"), Ok(Precision::Digits(80)));
        assert!(parse_precision("quad").is_err());
    }

    #[test]
    fn flags_override_config() {
        let file: RunConfig = serde_json::from_str(r#"{"n": 10, "r": 0.8, "window": [0, 1, -1, 1]}"#).unwrap();
        let flags = RunConfig { n: Some(12), ..Default::default() };
        let merged = file.overlay(&flags);
        assert_eq!(merged.n, Some(12));
        assert_eq!(merged.r, Some(0.8));
        assert_eq!(merged.window().unwrap(), Some([0.0, 1.0, -1.0, 1.0]));
    }
}
