//! pidkit constructs, executes, verifies, and certifies private information
//! delivery schemes over prime fields.
//!
//! A set of servers, each replicating `M` of `K` messages, pushes one message
//! to a user without revealing *which* one. The toolkit covers both sides of
//! that problem:
//!
//! - **Achievability** — three builders emit concrete linear schemes (storage
//!   design, decoder `G`, randomness precoder `H`, per-message precoders
//!   `F[k]`) as a single verified [`Scheme`] shape, for any feasible
//!   `(K, M, N)`.
//! - **Optimality** — closed-form capacity bounds ([`capacity`]), plus an
//!   independent converse search ([`converse`]) that enumerates replication
//!   designs and solves exact fractional-covering programs to certify rate
//!   upper bounds.
//! - **Execution and checking** — a seeded simulator ([`sim`]) runs the
//!   deliver/decode protocol end to end, and the verifier ([`verify`])
//!   certifies correctness, privacy (algebraically, and by exhaustive
//!   distribution enumeration when the state space is small), and
//!   randomness accounting.
//!
//! All rates and bounds are exact rationals; nothing in the bounds path
//! touches floating point. See the `examples/` directory for one runnable
//! walkthrough per capability, and the `pidkit` binary for the command-line
//! front end.

pub mod build;
pub mod capacity;
pub mod converse;
pub mod error;
pub mod field;
mod lp;
pub mod matrix;
pub mod ratio;
pub mod reference;
pub mod scheme;
pub mod sim;
pub mod storage;
pub mod verify;

pub use build::{build_basic, build_full_rate, build_intermediate};
pub use capacity::{best_lower_bound, capacity_report, intermediate_length, threshold_n, CapacityReport};
pub use converse::{converse_rate, min_download, has_exclusive_messages, ConverseCertificate};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use matrix::MatrixFp;
pub use ratio::Frac;
pub use scheme::{Scheme, SchemeDoc};
pub use sim::{run_delivery, Transcript};
pub use storage::{AvailabilitySet, StorageDesign};
pub use verify::{verify_scheme, VerificationReport};
