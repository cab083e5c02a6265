use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unisolv::random::Sampler;
use unisolv::{Rational, Simplex};

/// Failure with the process exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<unisolv::Error> for CliError {
    fn from(e: unisolv::Error) -> Self {
        use unisolv::Error::*;
        match e {
            Dimension(_) | Geometry(_) | InvalidFacet { .. } | Parse(_) => CliError::usage(e.to_string()),
            _ => CliError::failure(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Inclusive degree range, parsed from `N` or `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KRange {
    pub first: u32,
    pub last: u32,
}

impl KRange {
    pub fn parse(s: &str) -> CliResult<Self> {
        let num = |t: &str| -> CliResult<u32> {
            t.trim().parse::<u32>().map_err(|_| CliError::usage(format!("invalid degree {t:?} in --k {s:?}")))
        };
        let (first, last) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let k = num(s)?;
                (k, k)
            }
        };
        if first == 0 {
            return Err(CliError::usage("degree k must be at least 1"));
        }
        if first > last {
            return Err(CliError::usage(format!("empty degree range {s:?}")));
        }
        Ok(KRange { first, last })
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> {
        self.first..=self.last
    }

    pub fn single(&self) -> CliResult<u32> {
        if self.first == self.last {
            Ok(self.first)
        } else {
            Err(CliError::usage("this command takes a single degree, not a range"))
        }
    }
}

pub fn check_dim(d: usize) -> CliResult<usize> {
    if d == 2 || d == 3 {
        Ok(d)
    } else {
        Err(CliError::usage(format!("--d must be 2 or 3, got {d}")))
    }
}

/// `UNISOLV_SEED` wins over `--seed` when set.
pub fn resolve_seed(flag: u64) -> CliResult<u64> {
    match std::env::var("UNISOLV_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("UNISOLV_SEED must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(flag),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SimplexSource {
    Reference,
    File { path: PathBuf },
    Random { count: usize },
}

impl SimplexSource {
    pub fn from_flags(reference: bool, file: Option<PathBuf>, random: Option<usize>) -> CliResult<Self> {
        match (reference, file, random) {
            (_, None, None) => Ok(SimplexSource::Reference),
            (false, Some(path), None) => Ok(SimplexSource::File { path }),
            (false, None, Some(0)) => Err(CliError::usage("--random needs a count of at least 1")),
            (false, None, Some(count)) => Ok(SimplexSource::Random { count }),
            _ => Err(CliError::usage("choose one of --reference, --simplex FILE, --random N")),
        }
    }

    pub fn resolve(&self, d: usize, seed: u64) -> CliResult<Vec<Simplex>> {
        match self {
            SimplexSource::Reference => Ok(vec![Simplex::reference(d)]),
            SimplexSource::File { path } => load_simplices(path, d),
            SimplexSource::Random { count } => {
                let mut s = Sampler::new(seed);
                Ok((0..*count).map(|_| s.simplex(d)).collect())
            }
        }
    }
}

#[derive(Deserialize)]
struct SimplexRecord {
    dim: Option<usize>,
    vertices: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SimplexFile {
    One(SimplexRecord),
    Many(Vec<SimplexRecord>),
}

/// Reads one simplex or a list of simplices. Coordinates are integers or
/// `"p/q"` strings; `dim` is optional.
pub fn load_simplices(path: &Path, d: usize) -> CliResult<Vec<Simplex>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read simplex file {}: {e}", path.display())))?;
    let parsed: SimplexFile = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("bad simplex file {}: {e}", path.display())))?;
    let records = match parsed {
        SimplexFile::One(r) => vec![r],
        SimplexFile::Many(rs) => rs,
    };
    if records.is_empty() {
        return Err(CliError::usage(format!("simplex file {} is empty", path.display())));
    }
    records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let dim = r.dim.unwrap_or(r.vertices.len().saturating_sub(1));
            if dim != d {
                return Err(CliError::usage(format!("simplex {i} in {} has dimension {dim}, expected {d}", path.display())));
            }
            Simplex::new(dim, r.vertices)
                .map_err(|e| CliError::usage(format!("simplex {i} in {}: {e}", path.display())))
        })
        .collect()
}

/// Everything a command run depends on; echoed into each report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub k: Option<KRange>,
    pub d: Option<usize>,
    pub source: Option<SimplexSource>,
    pub seed: u64,
    pub exploratory: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(KRange::parse("3").unwrap(), KRange { first: 3, last: 3 });
        assert_eq!(KRange::parse("1..4").unwrap(), KRange { first: 1, last: 4 });
        assert_eq!(KRange::parse("1..=2").unwrap(), KRange { first: 1, last: 2 });
        for bad in ["0", "0..2", "3..1", "x", "", "1..", "-1"] {
            assert_eq!(KRange::parse(bad).unwrap_err().code, 2, "{bad}");
        }
    }

    #[test]
    fn sources() {
        assert_eq!(SimplexSource::from_flags(false, None, None).unwrap(), SimplexSource::Reference);
        assert!(SimplexSource::from_flags(true, None, Some(3)).is_err());
        assert!(SimplexSource::from_flags(false, None, Some(0)).is_err());
    }
}
