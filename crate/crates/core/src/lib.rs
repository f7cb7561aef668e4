//! Alexander-biquandle coloring invariants of handlebody-knot diagrams.
//!
//! Diagrams carry `Z_m`-flows; each flowed diagram gets a linear system over
//! a finite field whose solution space dimension is an invariant. Comparing
//! these dimensions across flows gives lower bounds for the unknotting number
//! and Gordian distance.

pub mod algebra;
pub mod bounds;
pub mod coloring;
pub mod diagram;
pub mod flow;
pub mod moves;
pub mod snf;

pub use algebra::{AlexanderBiquandle, Field, FieldElement, FieldError};
pub use diagram::{parse_diagram, serialize_diagram, Diagram, DiagramError};
pub use flow::{Flow, FlowError, FlowSpace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("search exceeded its budget of {0} steps")]
    TooLarge(u64),
    #[error("no flow of the second diagram has gcd {0}")]
    EmptyGcdClass(u64),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("bad move site: {0}")]
    BadMove(String),
}
