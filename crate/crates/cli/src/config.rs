use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use levi_schur_core::combinatorics::{Parity, Shape};
use levi_schur_core::field::PrimeField;
use levi_schur_core::linalg::DEFAULT_SIZE_CAP;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("tensor space of dimension {dim} exceeds the size cap {cap}")]
    SizeCap { dim: usize, cap: usize },
    #[error(transparent)]
    Core(levi_schur_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::SizeCap { .. } => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl From<levi_schur_core::Error> for CliError {
    fn from(e: levi_schur_core::Error) -> Self {
        match e {
            levi_schur_core::Error::SizeCapExceeded { dim, cap } => CliError::SizeCap { dim, cap },
            levi_schur_core::Error::InvalidShape(msg) => CliError::Config(msg),
            levi_schur_core::Error::NotOddPrime(p) => CliError::Config(format!("{p} is not an odd prime below 2^32")),
            other => CliError::Core(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VParity {
    Even,
    Odd,
    Both,
}

impl VParity {
    pub fn parities(self) -> Vec<Parity> {
        match self {
            VParity::Even => vec![Parity::Even],
            VParity::Odd => vec![Parity::Odd],
            VParity::Both => vec![Parity::Even, Parity::Odd],
        }
    }
}

impl fmt::Display for VParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VParity::Even => "even",
            VParity::Odd => "odd",
            VParity::Both => "both",
        })
    }
}

/// `q` for the rationals or `p:<prime>` for a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Prime fields only give informative results.
    pub fn is_authoritative(self) -> bool {
        self == FieldSpec::Rationals
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s.strip_prefix("p:").ok_or_else(|| format!("expected `q` or `p:<prime>`, got `{s}`"))?;
        digits.parse().map(FieldSpec::Prime).map_err(|_| format!("`{digits}` is not an integer"))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Run every gated check.
    Verify,
    /// Orbit counts and algebra dimensions.
    Dims,
    /// Orbit representatives per layer.
    Orbits,
    /// Defining relations and commutation with the Levi algebra.
    Relations,
    /// Everything, plus the classical duality and per-relation tallies.
    Report,
}

impl Command {
    /// Commands that build matrices on the enhanced tensor space.
    pub fn is_matrix_level(self) -> bool {
        self != Command::Orbits
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub vparity: VParity,
    pub field: FieldSpec,
    pub command: Command,
    pub output: OutputFormat,
    pub size_cap: usize,
}

impl RunConfig {
    pub fn new(m: usize, n: usize, r: usize, command: Command) -> RunConfig {
        RunConfig {
            m,
            n,
            r,
            vparity: VParity::Both,
            field: FieldSpec::Rationals,
            command,
            output: OutputFormat::Text,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    /// Shape, prime and size-cap invariants.
    pub fn validate(&self) -> Result<(), CliError> {
        self.shape(Parity::Even)?;
        if let FieldSpec::Prime(p) = self.field {
            PrimeField::new(p)?;
        }
        if self.command.is_matrix_level() {
            let dim = self.ambient_dim().ok_or(CliError::SizeCap { dim: usize::MAX, cap: self.size_cap })?;
            if dim > self.size_cap {
                return Err(CliError::SizeCap { dim, cap: self.size_cap });
            }
        }
        Ok(())
    }

    pub fn shape(&self, parity: Parity) -> Result<Shape, CliError> {
        Ok(Shape::new(self.m, self.n, self.r, parity)?)
    }

    /// `(m+n+1)^r`, or `None` on overflow.
    pub fn ambient_dim(&self) -> Option<usize> {
        let r = u32::try_from(self.r).ok()?;
        (self.m + self.n + 1).checked_pow(r)
    }
}
