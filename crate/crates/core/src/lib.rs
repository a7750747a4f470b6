//! Mod-p Langlands parameters for `GL_2` over a p-adic field with residue
//! field `F_q`: semisimple Galois representations and the scheme `X(q)`,
//! the Satake scheme `S(q)` and the morphism `L` between them, supersingular
//! Hecke parameters, Serre-weight digit conditions, and explicit Lubin-Tate
//! `(phi, Gamma)`-modules over truncated Laurent series.

pub mod arith;
pub mod characters;
pub mod context;
pub mod error;
pub mod heckegk;
pub mod lmorphism;
pub mod phigamma;
pub mod satake;
pub mod types_weights;
pub mod xscheme;

pub use characters::{det_rep, is_q_primitive, iso_equal, restrict_to_inertia, twist, GaloisCharacter, SemisimpleRep};
pub use context::Ctx;
pub use error::{Error, Result};
pub use types_weights::{InertialType, Weight};
