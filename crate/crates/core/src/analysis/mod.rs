//! Checks that compare a local solution `L` against a global one `G`.

mod certify;
mod coarsen;
mod deletion;
mod isolation;

pub use certify::{certify_ufl, CertifierReport, RegionRecord, VERIFY_BUDGET};
pub use coarsen::{balanced_coarsen, Coarsening};
pub use deletion::{delete_centers, three_color, DeletionResult, Verdict};
pub use isolation::{detect_isolation, IsolatedRegion, IsolationReport, InequalityCheck, REASSIGN_EPS1};
