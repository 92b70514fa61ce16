//! Plain-text run reports.

use std::fmt;
use std::time::{SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Internal,
    Usage,
    Hypothesis,
    CheckerViolation,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Internal => 1,
            Status::Usage => 2,
            Status::Hypothesis => 3,
            Status::CheckerViolation => 4,
            Status::Inconclusive => 5,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Internal => "internal-error",
            Status::Usage => "usage-error",
            Status::Hypothesis => "hypothesis-failure",
            Status::CheckerViolation => "checker-violation",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    /// `(label, sha256 hex)` per input.
    pub inputs: Vec<(String, String)>,
    pub lines: Vec<String>,
    /// `(check, passed)`.
    pub checks: Vec<(String, bool)>,
    pub assumptions: usize,
    pub status: Status,
    pub error: Option<String>,
    pub timestamp: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: impl Into<String>, timestamp: bool) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            lines: Vec::new(),
            checks: Vec::new(),
            assumptions: 0,
            status: Status::Ok,
            error: None,
            timestamp: timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())),
        }
    }

    pub fn input(&mut self, label: impl Into<String>, bytes: &[u8]) {
        self.inputs.push((label.into(), sha256_hex(bytes)));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push((name.into(), passed));
    }

    /// Records a failure. The first failure decides the status.
    pub fn fail(&mut self, status: Status, message: impl Into<String>) -> &mut Self {
        if self.status == Status::Ok {
            self.status = status;
            self.error = Some(message.into());
        }
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.code()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        for (label, digest) in &self.inputs {
            writeln!(f, "input: {label} sha256={digest}")?;
        }
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        for (name, ok) in &self.checks {
            writeln!(f, "check: {name} {}", if *ok { "pass" } else { "FAIL" })?;
        }
        if let Some(e) = &self.error {
            writeln!(f, "error: {e}")?;
        }
        writeln!(f, "assumptions: {}", self.assumptions)?;
        writeln!(f, "status: {} (exit {})", self.status.name(), self.status.code())?;
        if let Some(t) = self.timestamp {
            writeln!(f, "timestamp: {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_wins() {
        let mut r = RunReport::new("x", false);
        r.fail(Status::Hypothesis, "a").fail(Status::Usage, "b");
        assert_eq!(r.exit_code(), 3);
        let text = r.to_string();
        assert!(text.contains("error: a\n"));
        assert!(!text.contains("timestamp"));
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
