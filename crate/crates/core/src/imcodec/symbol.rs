//! The N-sample frequency-domain symbol and its text serialization.
//!
//! ```text
//! # N=4 g=1 k=2 M=2
//! 0,1.0000000000000000e0,0.0000000000000000e0
//! 1,1.0000000000000000e0,0.0000000000000000e0
//! 2,0.0000000000000000e0,0.0000000000000000e0
//! 3,0.0000000000000000e0,0.0000000000000000e0
//! ```
//!
//! Values carry 17 significant digits, enough to round-trip every sample
//! exactly. Any decimal float syntax is accepted on input and blank lines
//! are skipped.

use std::fmt::{self, Write as _};

use num_complex::Complex64;
use thiserror::Error;

use super::config::{ConfigError, ImConfig};
use super::modulation::{ComplexSample, DEMAP_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing header line '# N=<N> g=<g> k=<k> M=<M>'")]
    MissingHeader,
    #[error("header describes an invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("expected {expected} samples, found {found}")]
    SampleCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySymbol {
    pub samples: Vec<ComplexSample>,
    pub config: ImConfig,
}

impl FrequencySymbol {
    /// All-zero symbol for `config`.
    pub fn zeros(config: ImConfig) -> Self {
        Self {
            samples: vec![Complex64::new(0.0, 0.0); config.subcarriers()],
            config,
        }
    }

    /// Samples of subblock `beta` (0-based).
    pub fn subblock(&self, beta: usize) -> &[ComplexSample] {
        let n = self.config.subblock_len();
        &self.samples[beta * n..(beta + 1) * n]
    }

    /// Global indexes of the samples above the zero tolerance.
    pub fn active_indices(&self) -> Vec<usize> {
        self.samples
            .iter()
            .enumerate()
            .filter(|(_, s)| is_active(**s))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn active_count(&self) -> usize {
        self.samples.iter().filter(|s| is_active(**s)).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(48 * (self.samples.len() + 1));
        let c = &self.config;
        let _ = writeln!(
            out,
            "# N={} g={} k={} M={}",
            c.subcarriers(),
            c.subblocks(),
            c.active(),
            c.order()
        );
        for (i, s) in self.samples.iter().enumerate() {
            let _ = writeln!(out, "{i},{:.16e},{:.16e}", s.re, s.im);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SymbolParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (_, header) = lines.next().ok_or(SymbolParseError::MissingHeader)?;
        let config = parse_header(header)?;
        let total = config.subcarriers();

        let mut samples = vec![None; total];
        let mut found = 0;
        for (line, body) in lines {
            let syntax = |reason: String| SymbolParseError::Syntax { line, reason };
            let fields: Vec<&str> = body.split(',').map(str::trim).collect();
            let [idx, re, im] = fields[..] else {
                return Err(syntax(format!("expected 'index,re,im', got '{body}'")));
            };
            let idx: usize = idx.parse().map_err(|_| syntax(format!("bad index '{idx}'")))?;
            let re: f64 = re.parse().map_err(|_| syntax(format!("bad real part '{re}'")))?;
            let im: f64 = im.parse().map_err(|_| syntax(format!("bad imaginary part '{im}'")))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(syntax("non-finite sample".into()));
            }
            let slot = samples
                .get_mut(idx)
                .ok_or_else(|| syntax(format!("index {idx} outside 0..{total}")))?;
            if slot.is_some() {
                return Err(syntax(format!("duplicate index {idx}")));
            }
            *slot = Some(Complex64::new(re, im));
            found += 1;
        }
        if found != total {
            return Err(SymbolParseError::SampleCount { expected: total, found });
        }
        Ok(Self {
            samples: samples.into_iter().map(Option::unwrap).collect(),
            config,
        })
    }
}

impl fmt::Display for FrequencySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn is_active(s: ComplexSample) -> bool {
    s.norm() > DEMAP_TOLERANCE
}

fn parse_header(line: &str) -> Result<ImConfig, SymbolParseError> {
    let bad = || SymbolParseError::Syntax {
        line: 1,
        reason: format!("bad header '{line}'"),
    };
    let body = line.strip_prefix('#').ok_or(SymbolParseError::MissingHeader)?;
    let mut vals = [None; 4];
    for tok in body.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        let slot = match key {
            "N" => 0,
            "g" => 1,
            "k" => 2,
            "M" => 3,
            _ => return Err(bad()),
        };
        vals[slot] = Some(val.parse::<usize>().map_err(|_| bad())?);
    }
    let [Some(n), Some(g), Some(k), Some(m)] = vals else {
        return Err(bad());
    };
    Ok(ImConfig::new(n, g, k, m)?)
}
