use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::payload::Payload;
use crate::FORMAT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckRlp,
    CheckEquivalence,
    CheckQuasiIso,
    CheckWeSset,
    CheckPureMono,
    FreeInjective,
    Subdivide,
    Ex,
    Pi0,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::CheckRlp,
        Command::CheckEquivalence,
        Command::CheckQuasiIso,
        Command::CheckWeSset,
        Command::CheckPureMono,
        Command::FreeInjective,
        Command::Subdivide,
        Command::Ex,
        Command::Pi0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckRlp => "check-rlp",
            Command::CheckEquivalence => "check-equivalence",
            Command::CheckQuasiIso => "check-quasi-iso",
            Command::CheckWeSset => "check-we-sset",
            Command::CheckPureMono => "check-pure-mono",
            Command::FreeInjective => "free-injective",
            Command::Subdivide => "subdivide",
            Command::Ex => "ex",
            Command::Pi0 => "pi0",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Parse(format!("unknown command {s}")))
    }
}

/// `Z/p` for a prime `p`, or `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Z/{p}"),
            FieldSpec::Rationals => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("Z/")
            .and_then(|p| p.parse::<u32>().ok())
            .ok_or_else(|| CliError::Parse(format!("field {s} is neither Q nor Z/p")))?;
        weqtk_core::chain::PrimeField::new(p).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(FieldSpec::Prime(p))
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Resolved budgets, echoed in every certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    pub k_max: usize,
    pub m_max: usize,
    pub n_max: usize,
    pub stage_bound: usize,
    pub dim_bound: usize,
    pub field: FieldSpec,
    pub search_budget: usize,
}

/// Budgets as given on the command line; unset entries take the command's default.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetOverrides {
    pub k_max: Option<usize>,
    pub m_max: Option<usize>,
    pub n_max: Option<usize>,
    pub stage_bound: Option<usize>,
    pub dim_bound: Option<usize>,
    pub field: Option<FieldSpec>,
    pub search_budget: Option<usize>,
}

impl BudgetOverrides {
    pub fn resolve(&self, command: Command) -> CliResult<Budgets> {
        let (k, stage, dim) = match command {
            Command::Subdivide => (1, 1, 1),
            Command::Ex => (1, 1, 1),
            Command::FreeInjective => (4, 6, 1),
            Command::CheckPureMono => (4, 6, 3),
            _ => (4, 6, 1),
        };
        let b = Budgets {
            k_max: self.k_max.unwrap_or(k),
            m_max: self.m_max.unwrap_or(0),
            n_max: self.n_max.unwrap_or(0),
            stage_bound: self.stage_bound.unwrap_or(stage),
            dim_bound: self.dim_bound.unwrap_or(dim),
            field: self.field.unwrap_or(FieldSpec::Prime(2)),
            search_budget: self.search_budget.unwrap_or(1 << 22),
        };
        b.validate()?;
        Ok(b)
    }
}

impl Budgets {
    pub fn validate(&self) -> CliResult<()> {
        if self.stage_bound == 0 || self.search_budget == 0 {
            return Err(CliError::Parse("stage bound and search budget must be positive".into()));
        }
        if self.k_max > 12 || self.dim_bound > weqtk_core::simplicial::DIM_LIMIT {
            return Err(CliError::Parse("k_max or dim_bound is beyond what can be materialized".into()));
        }
        if let FieldSpec::Prime(p) = self.field {
            weqtk_core::chain::PrimeField::new(p).map_err(|e| CliError::Parse(e.to_string()))?;
        }
        Ok(())
    }
}

/// The contents of an `--input` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub format: String,
    pub payload: Payload,
    /// The map lifted against, for `check-rlp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub against: Option<Payload>,
}

impl InputDoc {
    pub fn new(payload: Payload) -> Self {
        InputDoc {
            format: FORMAT.to_string(),
            payload,
            against: None,
        }
    }

    pub fn against(mut self, j: Payload) -> Self {
        self.against = Some(j);
        self
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: InputDoc = serde_json::from_str(text)?;
        if doc.format != FORMAT {
            return Err(CliError::VersionMismatch {
                found: doc.format,
                expected: FORMAT.into(),
            });
        }
        Ok(doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input: InputDoc,
    pub budgets: Budgets,
    /// Seeds generated probe corpora.
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command, input: InputDoc) -> CliResult<Self> {
        Ok(JobSpec {
            command,
            input,
            budgets: BudgetOverrides::default().resolve(command)?,
            seed: 0,
            output: None,
        })
    }

    pub fn with_budgets(mut self, o: &BudgetOverrides) -> CliResult<Self> {
        self.budgets = o.resolve(self.command)?;
        Ok(self)
    }
}
