//! Parametric lower-bound families and the spike-box reduction.
//!
//! Generators that advertise a witness-disjointness property re-check it
//! with the visibility module before returning, so an instance that comes
//! back `Ok` carries a machine-checked certificate.

mod comb;
mod ring;
mod spikebox;
mod staircase;
mod teeth;

use serde_json::{json, Value};

use crate::geom::{point_to_json, GeomError, Point, Polygon};

pub use comb::{gen_monotone_comb, COMB_EPS_DEN};
pub use ring::{gen_edge_lb_ring, gen_point_lb_ring, GadgetRingParams};
pub use spikebox::{gen_spike_box, mlcp_brute_force, Line, LineSet, SpikeBox};
pub use staircase::gen_staircase;
pub use teeth::{gen_teeth_comb, TeethComb};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("CONSTRAINT_UNSATISFIED: {0}")]
    ConstraintUnsatisfied(String),
    #[error("INVALID_LINESET: {0}")]
    InvalidLineSet(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

impl GenError {
    pub fn code(&self) -> &'static str {
        match self {
            GenError::ConstraintUnsatisfied(_) => "CONSTRAINT_UNSATISFIED",
            GenError::InvalidLineSet(_) => "INVALID_LINESET",
            GenError::InvalidParam(_) => "INVALID_PARAM",
            GenError::Geom(_) => "INVALID_POLYGON",
        }
    }
}

/// A generated polygon with its designated witnesses and certificates.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: &'static str,
    pub polygon: Polygon,
    pub witnesses: Vec<Point>,
    pub certificates: Vec<Value>,
}

impl Instance {
    /// The witness sidecar written next to the polygon by the CLI.
    pub fn sidecar_json(&self) -> Value {
        json!({
            "family": self.family,
            "witnesses": self.witnesses.iter().map(point_to_json).collect::<Vec<_>>(),
            "certificates": self.certificates,
        })
    }
}
