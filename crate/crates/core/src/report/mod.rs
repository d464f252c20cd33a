//! Check records, report assembly and sweeps.

mod checks;
mod record;
mod run;
mod sweep;

pub use checks::{cone_checks, identity_checks, lattice_checks};
pub use record::{Anchor, CheckRecord, Status};
pub use run::{run_all, Counts, RunOptions, VerificationReport};
pub use sweep::{
    canonical_s, smallest_valid_q, sweep, SweepRow, SweepSpec, SweepSummary, Q_SEARCH_LIMIT,
};
