//! Square paths, preference functions and their `q,t`-enumerators.
//!
//! A preference function `f: [n] -> [n]` places cars in columns; its
//! statistics (`area`, `dinv`, `deviation`, the diagonal word) give the
//! `q,t`-weights summed by [`census::Census`] and predicted by the
//! schedule formulas in [`schedules`]. [`symfunc`] holds the
//! symmetric-function side.

pub mod census;
pub mod checks;
pub mod error;
pub mod parallel;
pub mod paths;
pub mod perm;
pub mod qt;
pub mod quasisym;
pub mod schedules;
pub mod subset;
pub mod symfunc;

/// Largest number of cars any routine accepts.
pub const MAX_CARS: usize = 16;

pub use census::Census;
pub use error::{Error, Result};
pub use paths::{place, stats, DinvParts, Placement, PrefFunc, StatRecord};
pub use perm::Perm;
pub use qt::{QTPoly, QTRatio, Rational, ZPoly};
pub use quasisym::QSymF;
pub use schedules::{RunDecomposition, ScheduleData};
pub use subset::Subset;
pub use symfunc::{PExpansion, Partition};
