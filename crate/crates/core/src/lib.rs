//! Order-equivalent compression of objective functions on integer boxes.
//!
//! Given an objective `f` on the box `[-N, N]^n` (linear, separable,
//! separable quadratic or quadratic), the crate computes a function `g` of the
//! same class that orders every pair of box points exactly like `f` does
//! (ties included) while having a small gap `max g - min g`.
//!
//! Two reduction routes are provided:
//!
//! * [`reducelp::reduce_via_lp`] builds a scalable linear program whose
//!   integer points are exactly the equivalent functions, solves it exactly
//!   and scales the optimal vertex to an integer solution.
//! * [`liftings::reduce_via_ft`] lifts the function to a linear one in more
//!   variables and compresses the weight vector with a simultaneous
//!   Diophantine approximation loop ([`franktardos`]).
//!
//! Every result comes with a [`model::Certificate`] checked by the brute-force
//! [`oracle`].

pub mod bounds;
pub mod cli;
pub mod document;
pub mod error;
pub mod franktardos;
pub mod instances;
pub mod liftings;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod reducelp;

pub use error::{Error, Result};
pub use model::{
    BoxDomain, Certificate, ClassKind, FunctionClass, FunctionSpec, Int, Limits, Method, Point,
    Rat, Shape,
};
