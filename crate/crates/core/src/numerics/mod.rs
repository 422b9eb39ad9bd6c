//! Special functions, quadrature and root finding with no domain knowledge.

mod quadrature;
mod roots;
mod special;

pub use quadrature::{integrate, integrate_semiinf, integrate_semiinf_with, Integral, QuadOptions};
pub use roots::{find_root, find_root_capped, Interval, RootResult, DEFAULT_MAX_ITER};
pub use special::{erfc, erfcx, gamma, ln_gamma, pochhammer_falling};

pub(crate) use special::{erfcx_nonneg, ln_gamma_positive};
