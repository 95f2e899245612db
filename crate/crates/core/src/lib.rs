//! Freely representable finite groups: Cayley-table group theory, norm
//! relations in rational group algebras, and exact free representations.

pub mod algebra;
pub mod arith;
pub mod classify;
pub mod constructors;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod quaternion;
pub mod repr;
pub mod sl2;

pub use error::{Error, Result};
pub use group::{build_group, Budget, Group, Homomorphism, Subgroup};
