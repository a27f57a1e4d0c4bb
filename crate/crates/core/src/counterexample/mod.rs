//! The Artinian ring with relations `V², Z², XY, VX+αXZ, VY+YZ, VX+Y², VY−X²`,
//! its doubly infinite acyclic complex, the modules `M_s`, and the checks
//! run against them.

mod objects;
mod verify;

pub use objects::*;
pub use verify::*;
