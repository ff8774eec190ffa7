pub mod certify;
pub mod cli;
pub mod error;
pub mod exact;
pub mod shift;
pub mod solver;
pub mod verify;
