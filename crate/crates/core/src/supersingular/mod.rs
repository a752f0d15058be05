//! Supersingular j-invariants: shadowed partitions, closed forms for the
//! exponential and logarithm coefficients, and the universal polynomials.

pub mod closed;
pub mod oracle;
pub mod partitions;

pub use closed::{eisenstein_closed, mu_and_gamma, mu_gamma, JKind, JPoly};
pub use oracle::{
    prime_report, ss_oracle, universal_check, universal_check_with, PrimeReport, SsOracle,
};
pub use partitions::{enum_p2, product_quotients, weight_products, ShadowedPair, MAX_PARTITION_N};
