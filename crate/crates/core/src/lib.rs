//! Exact computations around the characters `Char V_{4mρ}` of a reductive
//! group's dual: root data and Weyl groups, integer lattice algebra, Galois
//! coinvariants of cocharacter lattices, and the equi-distribution of weight
//! multiplicities over the finite group `H = ker(X_Γ → π_1(G)_Γ)`.
//!
//! All lattices are concrete `Z^n`. A single lattice `X` plays the character
//! lattice of the dual torus and the cocharacter lattice of the torus at the
//! same time; the root lattice `Λ` (span of the simple roots of the dual
//! datum) is therefore also the coroot lattice of `G`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod charring;
pub mod equidist;
mod error;
pub mod galois;
pub mod rootdatum;

pub use error::{Error, Result};

pub use abelian::{
    character_group, cokernel, hom_kernel, smith_normal_form, AbHom, Cokernel, DualCharacter,
    FinGenAbGroup, IntMatrix, Kernel, SnfDecomposition,
};
pub use charring::{
    char_mu_m, char_mul, coset_sums, dualize, freudenthal, geometric_factor, CharElement, CosetSums,
};
pub use equidist::{
    build_stability_operator, char_ratio, char_sum, equidist_row, nontrivial_characters,
    run_equidist, s_values, stable_average_simulation, transfer_parity, ConvergenceRecord,
    ConvergenceStep, EquidistReport, EquidistRow, ParityResult, SValues, StabilityOperator,
};
pub use galois::{coinvariants, compute_h, is_elliptic, pi1, GaloisAction, HgData};
pub use rootdatum::{
    build_root_datum, mu_m, positive_roots, weyl_dim, weyl_group_elements, CartanType,
    LatticeChoice, RootDatum, Series, Weight, WeylElement,
};
