//! Preprocessing for problems parameterized by twin-cover (and the trivial
//! Triangle Partition kernel under vertex cover).

mod collapse;
pub mod nt;
mod tp;
mod turing;

pub use collapse::{is_tc_kernel, oct_tc_collapse, vc_tc_kernel, TcKernel};
pub use tp::{
    tip_claim_holds, tp_tc_compress, tp_tc_prepare, tp_tc_raw_instance, tp_vc_trivial_kernel,
    TpCompression, TpTcState, MAX_AUGMENTED_COVER,
};
pub use turing::{clique_tc_turing, TuringQuery, TuringTranscript};

use serde::{Deserialize, Serialize};

/// Result of a kernel or compression: a reduced instance, or a decision that
/// the input is a no-instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome<T> {
    Reduced(T),
    ImmediateNo { reason: String },
}

impl<T> Outcome<T> {
    pub(crate) fn no(reason: impl Into<String>) -> Self {
        Outcome::ImmediateNo {
            reason: reason.into(),
        }
    }

    pub fn reduced(&self) -> Option<&T> {
        match self {
            Outcome::Reduced(t) => Some(t),
            Outcome::ImmediateNo { .. } => None,
        }
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Outcome::ImmediateNo { .. })
    }
}

#[cfg(test)]
mod tests;
