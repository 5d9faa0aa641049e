//! Words in generators and their inverses, elements of the algebra and of
//! its tensor powers, and the cyclic space A/[A,A].

mod poly;
mod word;

pub use poly::{cyclic_project, CyclicPoly, CyclicWord, MultiTensor, NCPoly, TensorAction, TensorPoly};
pub use word::{AlgebraSignature, EnumerationMode, Letter, Word};

pub(crate) use poly::add_into;
