//! Exact arithmetic for cycles of the doubling map that avoid an open
//! interval.
//!
//! The crate is organized around four layers:
//!
//! * [`words`] — combinatorics on binary words: balance, extremal
//!   rotations, standard words from continued fractions, the extremal pair
//!   `s(r)`/`t(r)` and Farey / Stern-Brocot navigation;
//! * [`exact`] — arbitrary-precision rationals, canonical binary
//!   expansions, the doubling map, and lexicographic word order;
//! * [`cycles`] — prime cycles enumerated as aperiodic binary necklaces,
//!   hole avoidance, bad-period sets and growth estimates;
//! * [`regions`] — classification of holes against the closed corner-table
//!   region and the open Devil's-staircase region, staircase functions,
//!   constructive avoiding cycles and the boundary-distance experiment.
//!
//! Every computation is exact; floating point appears only in the final
//! rendering of growth rates and distances.

// Error variants keep their exact rational context; they are cold paths,
// so the large-enum lint is not worth losing the payloads over.
#![allow(clippy::result_large_err)]

pub mod cycles;
pub mod exact;
pub mod regions;
pub mod words;

pub use cycles::{Cycle, CycleError, Hole};
pub use exact::{EventuallyPeriodicWord, ExactError, Rational};
pub use regions::{Plateau, RegionClass, RegionError, StretchCase};
pub use words::{RotationNumber, SturmianPair, Word, WordError};
