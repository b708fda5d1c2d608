use std::fmt;

use phonon_sobol::Error;

/// Why a command stopped, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// The computation itself failed (no gap, zero variance, ...). Exit 1.
    Numerical(String),
    /// Bad flags, unreadable or malformed input, unwritable output. Exit 2.
    Config(String),
}

pub type CmdResult<T> = Result<T, Failure>;

impl Failure {
    pub fn config(msg: impl Into<String>) -> Self {
        Failure::Config(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Numerical(_) => 1,
            Failure::Config(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Numerical(m) | Failure::Config(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::NoGap { .. } | Error::ZeroVariance | Error::RankDeficient { .. } => {
                Failure::Numerical(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}
