pub mod classify;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod word;
pub mod families;
pub mod hyperbolic;
pub mod verify;
