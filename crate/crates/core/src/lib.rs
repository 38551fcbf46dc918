//! Exact computations in Iwahori-Hecke algebras of finite Coxeter groups:
//! Kazhdan-Lusztig bases, the dual module and its isomorphism with `H`,
//! Grothendieck-group coordinates of the transfer functors, central elements
//! built from traces of irreducible representations, and the stratified
//! Grothendieck ring of `PGL_2`.

pub mod coxeter;
pub mod dual;
pub mod grfunctor;
pub mod hecke;
pub mod heckerep;
pub mod klbasis;
pub mod laurent;
pub mod matrix;
pub mod pgl2ring;

pub use coxeter::{CoxeterElement, CoxeterError, CoxeterGroup, CoxeterType};
pub use dual::{DualElt, DualModule};
pub use grfunctor::{GammaTable, GrElt, GrError, GrFunctor, MultTable, Side};
pub use hecke::{HeckeAlgebra, HeckeElt, HeckeError};
pub use heckerep::{HeckeRep, RepError};
pub use klbasis::KlTable;
pub use laurent::{FracLaurent, LaurentError, LaurentPoly, SpecializeMode};
pub use pgl2ring::{CharIndex, RingElt, StratumClass};
