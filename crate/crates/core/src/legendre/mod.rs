//! The Legendre family `phi_T = T - (T + Delta) tau + Delta tau^2`.

pub mod coeffs;
pub mod index;
pub mod logexp;
pub mod period;

pub use coeffs::{an, bn, legendre_ss_by_pn, legendre_ss_with, pn, Mode, PeriodCoefficient};
pub use index::{shadow_stats, IndexSet};
pub use logexp::{a_delta_series, log_exp_coeffs, LogExpCoeffs};
pub use period::{period_partial, period_residual, KummerElem, PeriodPartial};
