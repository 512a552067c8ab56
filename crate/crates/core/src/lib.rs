//! Reactive synthesis toolchain.

pub mod bdd;
pub mod aig;
pub mod smv;
pub mod automata;
pub mod transforms;
pub mod symbolic;
pub mod game;
pub mod mc;
pub mod pipeline;
