//! Exact hyper-Catalan and Geode series, their closed forms, and checkers
//! for the summation identities and WZ pairs that govern them.
//!
//! - [`mpoly`]: truncated multivariate series over big integers
//! - [`hypercat`]: the series root `S` and the hyper-Catalan closed form
//! - [`geode`]: the Geode series `G = (S - 1) / (t_1 + ... + t_r)` and its formulas
//! - [`identities`]: bounded-part partition sums and constant-term extraction
//! - [`wz`]: exact grid verification of WZ pairs and certificates
//! - [`verify`]: named verification suites and their JSON report

pub mod combinat;
pub mod geode;
pub mod hypercat;
pub mod identities;
pub mod mpoly;
pub mod verify;
pub mod wz;

pub use geode::{geode_series, GeodeTable};
pub use hypercat::{hyper_catalan, solve_s};
pub use mpoly::{ExpVec, SeriesError, TruncatedSeries, UnivariateSeries};
pub use verify::{run_suite, Bounds, Suite, VerifyReport};
