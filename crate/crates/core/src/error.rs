use thiserror::Error;

/// Errors raised by the numerics, analysis, design and simulation layers.
///
/// Values are reported as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The root bracket does not contain a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    /// An iterative method ran out of iterations.
    #[error("no convergence after {iterations} iterations (best x = {best}, residual = {residual})")]
    Convergence {
        iterations: usize,
        best: f64,
        residual: f64,
    },
    /// Adaptive quadrature hit its subdivision cap before reaching tolerance.
    #[error(
        "integration did not converge after {subdivisions} subdivisions \
         (estimate = {estimate}, error estimate = {error_estimate})"
    )]
    Integration {
        subdivisions: usize,
        estimate: f64,
        error_estimate: f64,
    },
    /// The requested expression does not hold for this channel regime.
    #[error("regime error: {0}")]
    Regime(String),
    /// The input is valid but exceeds what the implementation supports.
    #[error("capability error: {0}")]
    Capability(String),
    /// A simulation configuration violates its invariants.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain { name, value, reason }
}
