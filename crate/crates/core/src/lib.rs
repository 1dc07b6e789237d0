//! Exact Thurston norm and L²-Alexander torsion for Seifert fibered spaces
//! and graph manifolds.
//!
//! Everything is computed from combinatorial data with exact integer and
//! rational arithmetic:
//!
//! - [`algebra`]: Smith normal form and finitely presented abelian groups.
//! - [`seifert`]: Seifert invariants, the abelianized fundamental group and
//!   the orbifold Euler characteristic of the base.
//! - [`torsion`]: the group of torsion classes `max{1,t^c}^m` modulo `t^r`.
//! - [`norm`]: fiber evaluation `k_φ`, the Thurston norm and the torsion of a
//!   single Seifert piece.
//! - [`s1cw`]: S¹-CW-complexes with finite isotropy.
//! - [`graph`]: plumbing graphs, their homology, norm and torsion.

pub mod algebra;
pub mod error;
pub mod graph;
pub mod norm;
pub mod rational;
pub mod s1cw;
pub mod seifert;
pub mod torsion;

pub use algebra::{AbelianPresentation, CokernelStructure, IntMatrix, Order, SmithForm};
pub use error::{Error, Result};
pub use graph::{AssembledManifold, CutSide, Edge, GluingMatrix, GraphNorm, KleinCutReport, PlumbingGraph, Slot};
pub use norm::{CohomologyClass, FiberHypothesis, NormResult};
pub use rational::Rat;
pub use s1cw::{OrbitCell, S1CWComplex};
pub use seifert::{ExceptionalFiber, Exclusion, FiberedManifoldReport, SeifertInvariants};
pub use torsion::TorsionFunction;
