//! Exact arithmetic, root certification and Diophantine sieving for the
//! reduced cuboid characteristic polynomial `Q_pq(t)`.
//!
//! Layout:
//!
//! * [`exact`]: big integers and rationals, the quadratic ring `Q(√2)`,
//!   dense integer polynomials with Sturm-sequence root isolation, and sparse
//!   trivariate polynomials used for symbolic substitution.
//! * [`charpoly`]: the degree-12 characteristic polynomial, `Q_pq` and its
//!   structural identities.
//! * [`asymptotics`]: asymptotic root intervals, shifted equations and the
//!   integer-point predicates.
//! * [`rootcert`]: certified isolation of the five roots in the upper half
//!   plane and the forward/reverse root correspondence.
//! * [`filter`]: region classification, admissibility and cuboid
//!   reconstruction.
//! * [`search`]: the checkpointed row-ordered sieve.

pub mod asymptotics;
pub mod charpoly;
pub mod error;
pub mod exact;
pub mod filter;
pub mod rootcert;
pub mod search;

pub use asymptotics::{AsymptoticInterval, Axis, RootLabel, ShiftedEquation, Target};
pub use charpoly::{Branch, CharParams, CuboidPolynomial, SeedPair};
pub use error::{Error, Result};
pub use exact::{IntPolynomial, Integer, IsolatingInterval, QuadRational, Rational, TriPolynomial};
pub use filter::{CuboidCandidate, CuboidReconstruction, RegionClass};
pub use rootcert::{IsolatedRoot, Precision};
pub use search::{Checkpoint, SearchConfig, SearchReportRecord};
