//! Numerical evaluation of Dirichlet L-functions and the analytic
//! identities built on them: the coprimality Euler factor, digamma, the
//! Perron contour integral, and two-sided verification of the explicit
//! formula for sums over L-function zeros.

pub mod explicit;
pub mod hurwitz;
pub mod lfunction;
pub mod perron;

pub use explicit::{verify_explicit_formula, verify_explicit_formula_both, verify_explicit_formula_capped, ExplicitFormulaReport};
pub use hurwitz::{digamma, digamma_complex, digamma_real_part, hurwitz_zeta, hurwitz_zeta_regularized, Certified};
pub use lfunction::{eval_l, eval_l_d, eval_l_hurwitz, l_d_log_ratio, LMethod, LValueRequest};
pub use perron::{perron_integral, perron_mertens_ap, perron_mertens_ap_batch, PerronAssembly, PerronResult};
