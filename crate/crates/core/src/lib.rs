//! Sortable simplicial complexes, interval complexes, and the toric rings
//! `K[x_F t : F ∈ Γ]` of the complexes they generate.

pub mod arith;
pub mod complex;
pub mod cone;
pub mod divisor;
pub mod error;
pub mod groebner;
pub mod interval;
pub mod snf;
pub mod sorting;
pub mod vd;

pub use complex::{Face, SimplicialComplex};
pub use cone::{ConeDescription, DecomposeMode, LatticePoint, SupportForm};
pub use divisor::{AInvariant, ClassGroup, ConjectureVerdict, DivisorReport, FacetClassification, GorensteinVerdict, RadicalVerdict};
pub use error::{Error, Result};
pub use groebner::{FiberVerdict, LExchangeVerdict, SortingBinomial, StandardCount};
pub use interval::{IntervalComplexSpec, IntervalPart, RecognitionVerdict, RecognitionWitness};
pub use sorting::{Monomial, SortabilityVerdict, SortedPair};
pub use vd::{CmStatus, SheddingReplay, SheddingTree};
