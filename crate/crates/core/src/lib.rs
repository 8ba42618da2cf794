//! Exact computer algebra for invariant algebras.
//!
//! An invariant algebra `(A, q)` is the subalgebra `{x : qxq = qx}` of an
//! associative algebra `A` with an idempotent `q`. This crate works with
//!
//! * the free invariant algebra on finitely many generators ([`words`]),
//! * the Lie bracket `[x,y]_{6,k}` and Leibniz bracket `<x,y>_{4,k}` defined
//!   on any invariant algebra ([`structures`]),
//! * bounded-degree presentations of the enveloping algebras of Lie and
//!   Leibniz algebras together with an exact certificate that the expected
//!   normal monomials form a basis ([`envelope`]),
//! * the comultiplication, counit, `sigma` and antipode-like maps on those
//!   envelopes and the diagrams they are expected to satisfy ([`coalgebra`]),
//! * matrix models `End_W(V)` and representation checks ([`linrep`]).
//!
//! All arithmetic is over exact rationals. Nothing is ever rounded.
//!
//! The `invk` binary ([`cli`]) reads algebra definitions from JSON files and
//! emits JSON reports.

pub mod cli;
pub mod coalgebra;
pub mod context;
pub mod envelope;
pub mod error;
pub mod file;
pub mod linalg;
pub mod linrep;
pub mod matrix;
pub mod parser;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod words;

pub use context::{FreeContext, InvariantContext};
pub use envelope::{build_reducer, build_uncertified_quotient, EnvElem, Reducer};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use structures::{BracketKind, StructureConstants, Variant};
pub use words::{FreeElem, Letter, Word};
