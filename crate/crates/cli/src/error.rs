use thiserror::Error;

/// Failures surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid or inconsistent configuration; `field` is a dotted path.
    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: peerdisc::Error,
    },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn core(context: impl Into<String>, source: peerdisc::Error) -> Self {
        Self::Core {
            context: context.into(),
            source,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit status: 2 for configuration or usage problems, 3 for
    /// numerical failures, 4 for regime mismatches, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        use peerdisc::Error as E;
        match self {
            Self::Config { .. } | Self::Usage(_) => 2,
            Self::Io { .. } => 1,
            Self::Core { source, .. } => match source {
                E::Domain { .. } | E::Config(_) => 2,
                E::Bracket { .. } | E::Convergence { .. } | E::Integration { .. } => 3,
                E::Regime(_) | E::Capability(_) => 4,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::config("a.b", "x").exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        let regime = CliError::core("analyze", peerdisc::Error::Regime("r".into()));
        assert_eq!(regime.exit_code(), 4);
        let numeric = CliError::core(
            "analyze",
            peerdisc::Error::Integration {
                subdivisions: 1,
                estimate: 0.0,
                error_estimate: 1.0,
            },
        );
        assert_eq!(numeric.exit_code(), 3);
    }
}
