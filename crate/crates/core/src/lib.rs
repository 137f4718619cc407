pub mod algebra;
pub mod hochschild;
pub mod lie;
pub mod linalg;
pub mod suite;
