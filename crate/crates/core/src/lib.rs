pub mod specfun;
pub mod geometry;
pub mod capacity;
pub mod energy;
pub mod verify;
pub mod cli;
