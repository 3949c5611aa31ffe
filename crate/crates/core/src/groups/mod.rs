//! Finite congruence quotients of `SL_n(Z)`, their characters, and the
//! dimension bounds for their representations.

pub mod bounds;
pub mod chartable;
pub mod classes;
pub mod group;
pub mod projective;
pub mod rep;
pub mod ring;

pub use chartable::{character_table, sl_character_table, Character, CharacterTable, ClassInfo, Spectrum};
pub use classes::ConjugacyClasses;
pub use group::{
    crt_split, enumerate_group, normal_closure, predicted_order, CrtSplit, FiniteMatrixGroup, GroupVariant,
    DEFAULT_GROUP_CAP,
};
pub use projective::{projective_space_rep, ProjectiveReps, ProjectiveSpace};
pub use rep::FiniteRep;
pub use ring::MatrixRing;
