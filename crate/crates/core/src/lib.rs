//! Statistical randomness testing for binary sequences.
//!
//! The crate bundles three things:
//!
//! * a battery of fifteen statistical tests in the NIST SP 800-22
//!   tradition, each mapping a bit sequence to one or more P-values
//!   ([`suite`]);
//! * reference pseudorandom generators to exercise the battery against
//!   (two linear congruential generators and Blum-Blum-Shub,
//!   [`generators`]);
//! * a campaign layer that runs the battery over many sequences and
//!   judges the generator by the proportion of passing P-values and by
//!   the uniformity of the P-value distribution ([`campaign`]).
//!
//! The `rand-sts` binary exposes all of it on the command line.

pub mod bits;
pub mod campaign;
pub mod error;
pub mod generators;
pub mod result;
pub mod special;
pub mod suite;

pub use bits::BitSequence;
pub use error::{Error, Result};
pub use result::{TestId, TestResult};
pub use special::Probability;
