pub mod algebra;
pub mod chebyshev;
pub mod freegroup;
pub mod harness;
pub mod linkfamilies;
pub mod repvariety;
pub mod twisted;

pub use algebra::{
    AlgebraError, ComplexPoly, IntMat2, IntPoly, LaurentMat2, LaurentPoly, Mat2, Root,
};
pub use freegroup::{GroupRingElement, Presentation, Word};
pub use linkfamilies::{FamilyKind, FamilySpec, GroundTruth, Orientation};
