//! Pre-injectivity and surjectivity scans with replayable witnesses, and the
//! Garden of Eden cross-check.
//!
//! Both properties quantify over infinite objects, so a scan either refutes
//! with a witness or reports the scale it examined. Nothing here is a proof of
//! pre-injectivity or surjectivity.

mod goe;
mod scans;
mod verdict;

pub use goe::{goe_crosscheck, random_lca, GoeInstance, GoeRecord, GoeReport, GoeVerdicts, InstanceDims, OracleVerdict};
pub use scans::{preinjectivity_scan, self_map_check, surjectivity_scan, surjunctivity_check, Scales, SelfMap, SurjunctivityReport};
pub use verdict::{replay_witness, GapDims, PatternRecord, Scale, Verdict, Witness};
