//! Exact rational homotopy computations for operadic coalgebra data:
//! free graded Lie algebras, L∞-algebras and Maurer-Cartan twisting,
//! finite group invariants, tensor models `A ⊗ L`, and the Browder
//! cooperation of an `n`-fold suspension.

pub mod browder;
pub mod equivariant;
pub mod error;
pub mod forms_oracle;
pub mod freelie;
pub mod linfty;
pub mod mapmodel;
pub mod qlinalg;

pub use browder::{CoalgebraDatum, ObstructionReport};
pub use equivariant::{FiniteGroup, GroupAction, LieGroupAction};
pub use error::{Error, Result};
pub use freelie::{FreeGradedLie, Lie, LieElement, LieExpr, Monomial};
pub use linfty::{HomotopyTable, LInftyAlgebra};
pub use mapmodel::{Cdga, GCdga, TensorElement, TensorModel};
pub use qlinalg::{ChainComplex, GradedVectorSpace, QMatrix, SparseVec, Q};
