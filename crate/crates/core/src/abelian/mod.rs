//! Integer matrix algebra and finitely generated abelian groups.

mod character;
mod group;
mod matrix;
mod snf;

pub use character::{character_group, DualCharacter};
pub use group::{cokernel, hom_kernel, AbHom, Cokernel, FinGenAbGroup, Kernel};
pub use matrix::IntMatrix;
pub use snf::{
    column_span_basis, integer_kernel, smith_normal_form, solve_integer, solve_with,
    SnfDecomposition,
};
