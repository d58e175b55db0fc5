pub mod algebra;
pub mod cli;
pub mod herbrand;
pub mod morphisms;
pub mod repro;
pub mod saturation;
pub mod semantics;
pub mod syntax;
