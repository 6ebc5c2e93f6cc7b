//! Heights `t_k` of zeros `1/2 + i t_k` of the completed zeta function,
//! one decimal per line, `#` comments allowed.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opmodel::{SetKind, ZeroMultiset};

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDataset {
    heights: Vec<f64>,
    source: String,
}

impl ZeroDataset {
    /// Validates positivity and strict increase.
    pub fn from_heights(heights: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        for (i, &t) in heights.iter().enumerate() {
            let bad = !(t.is_finite() && t > 0.0) || (i > 0 && t <= heights[i - 1]);
            if bad {
                return Err(Error::Parse {
                    path: PathBuf::from(&source),
                    line: i + 1,
                    msg: format!("height {t} is not positive and increasing"),
                });
            }
        }
        Ok(Self { heights, source })
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn count(&self) -> usize {
        self.heights.len()
    }

    /// The first `n` heights as a dataset of their own.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        self.require(n)?;
        Ok(Self {
            heights: self.heights[..n].to_vec(),
            source: self.source.clone(),
        })
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if n > self.heights.len() {
            return Err(Error::Invalid(format!(
                "{} zeros requested but {} holds only {}",
                n,
                self.source,
                self.heights.len()
            )));
        }
        Ok(())
    }

    /// Zeros `1/2 + i t_k, 1/2 - i t_k` for the first `n` heights, each
    /// conjugate pair adjacent. Assumes the zeros lie on the critical line,
    /// which is all the file format can express.
    pub fn xi_zeros(&self, n: usize) -> Result<ZeroMultiset> {
        self.require(n)?;
        let values = self.heights[..n]
            .iter()
            .flat_map(|&t| [Complex64::new(0.5, t), Complex64::new(0.5, -t)]);
        ZeroMultiset::simple(values, SetKind::Zeros)
    }

    /// Zeros `+-t_k` of `xi(1/2 + i z)`: real exactly when the data lie on
    /// the critical line.
    pub fn xi_hat_zeros(&self, n: usize) -> Result<ZeroMultiset> {
        self.require(n)?;
        let values = self.heights[..n]
            .iter()
            .flat_map(|&t| [Complex64::new(t, 0.0), Complex64::new(-t, 0.0)]);
        ZeroMultiset::simple(values, SetKind::Zeros)
    }
}

/// Parses dataset text; `source` names it in errors.
pub fn parse_zero_dataset(text: &str, source: &Path) -> Result<ZeroDataset> {
    let mut heights: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            path: source.to_path_buf(),
            line: i + 1,
            msg,
        };
        let t: f64 = line
            .parse()
            .map_err(|_| err(format!("not a decimal height: {line:?}")))?;
        if !(t.is_finite() && t > 0.0) {
            return Err(err(format!("height {t} is not positive")));
        }
        if let Some(&prev) = heights.last() {
            if t <= prev {
                return Err(err(format!("height {t} does not exceed previous {prev}")));
            }
        }
        heights.push(t);
    }
    Ok(ZeroDataset {
        heights,
        source: source.display().to_string(),
    })
}

pub fn load_zero_dataset(path: impl AsRef<Path>) -> Result<ZeroDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    parse_zero_dataset(&text, path)
}
