//! Gauss diagrams of long virtual knots, parity labellings, the θ and
//! labelled Conway invariants, and exact ranks of the labelled lattice
//! groups.

pub mod conway;
pub mod diagram;
pub mod error;
pub mod generators;
pub mod gf2;
pub mod lattice;
pub mod moves;
pub mod parity;
pub mod sum;
pub mod theta;
pub mod verification;

pub use diagram::{
    from_json, parse_gauss_code, serialize, to_json, Arrow, ArrowId, End, GaussDiagram, Host, Label, Sign,
};
pub use error::{Error, Result};
pub use parity::{lambda_m, Bound, LabelledDiagram};
pub use sum::DiagramSum;
