//! Batch front end: reads objects and morphisms as JSON, runs the checks of
//! `weqtk-core`, and emits certificates whose witnesses can be replayed.

pub mod error;
pub mod job;
pub mod payload;
pub mod run;
pub mod wire;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use weqtk_core::lifting::Status;

pub use error::{CliError, CliResult};
pub use job::{BudgetOverrides, Budgets, Command, FieldSpec, InputDoc, JobSpec};
pub use payload::Payload;
pub use run::NamedVerdict;

pub const FORMAT: &str = "weqtk/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub tool_version: String,
    pub command: Command,
    pub budgets: Budgets,
    pub seed: u64,
    /// SHA-256 of the command, budgets, seed and input.
    pub input_fingerprint: String,
    pub input: InputDoc,
    pub status: Status,
    pub verdicts: Vec<NamedVerdict>,
    pub witness: Value,
}

impl Certificate {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.status)
    }

    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn job(&self) -> JobSpec {
        JobSpec {
            command: self.command,
            input: self.input.clone(),
            budgets: self.budgets.clone(),
            seed: self.seed,
            output: None,
        }
    }
}

pub fn exit_code(s: Status) -> i32 {
    match s {
        Status::Verified => 0,
        Status::RefutedExhaustive => 1,
        Status::UnknownAtBound => 2,
    }
}

pub fn fingerprint(command: Command, budgets: &Budgets, seed: u64, input: &InputDoc) -> CliResult<String> {
    let bytes = serde_json::to_vec(&(command, budgets, seed, input))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Runs the job and writes the certificate when an output path is set.
pub fn run(job: &JobSpec) -> CliResult<Certificate> {
    job.budgets.validate()?;
    let out = run::execute(job)?;
    let cert = Certificate {
        format: FORMAT.into(),
        tool_version: TOOL_VERSION.into(),
        command: job.command,
        budgets: job.budgets.clone(),
        seed: job.seed,
        input_fingerprint: fingerprint(job.command, &job.budgets, job.seed, &job.input)?,
        input: job.input.clone(),
        status: out.status,
        verdicts: out.verdicts,
        witness: out.witness,
    };
    if let Some(path) = &job.output {
        std::fs::write(path, cert.to_json()?)?;
    }
    Ok(cert)
}

/// [`run`] on a dedicated pool of `threads` workers.
pub fn run_with_threads(job: &JobSpec, threads: usize) -> CliResult<Certificate> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Parse(format!("thread pool: {e}")))?;
    pool.install(|| run(job))
}

/// True iff the witnesses recompose and a fresh run reproduces the
/// certificate exactly.
pub fn replay(cert: &Certificate) -> CliResult<bool> {
    if cert.format != FORMAT {
        return Err(CliError::VersionMismatch {
            found: cert.format.clone(),
            expected: FORMAT.into(),
        });
    }
    if fingerprint(cert.command, &cert.budgets, cert.seed, &cert.input)? != cert.input_fingerprint {
        return Ok(false);
    }
    let job = cert.job();
    let recomposes = match run::check_witness(&job, &cert.witness) {
        Ok(b) => b,
        Err(CliError::Parse(_)) | Err(CliError::Core(weqtk_core::Error::Invalid(_))) => false,
        Err(CliError::Core(weqtk_core::Error::NotComposable(_))) => false,
        Err(e) => return Err(e),
    };
    Ok(recomposes && run(&job)? == *cert)
}

/// [`replay`] on certificate text; text that is not a certificate replays false.
pub fn replay_text(text: &str) -> CliResult<bool> {
    let Ok(v) = serde_json::from_str::<Value>(text) else {
        return Ok(false);
    };
    match v.get("format").and_then(Value::as_str) {
        Some(FORMAT) => {}
        other => {
            return Err(CliError::VersionMismatch {
                found: other.unwrap_or("<missing>").into(),
                expected: FORMAT.into(),
            })
        }
    }
    match serde_json::from_value::<Certificate>(v) {
        Ok(cert) => replay(&cert),
        Err(_) => Ok(false),
    }
}
