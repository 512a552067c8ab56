//! And-inverter graphs, the AIGER exchange format, and compilation of
//! flattened models and monitors into game circuits.

mod aiger;
mod compile;
mod graph;

pub use aiger::{
    read_aiger, write_aiger, AigerDoc, AigerError, Format, Input, Justice, Latch, Signal,
    CONTROLLABLE_PREFIX,
};
pub use compile::{compile, CompileError, JUST_NAME};
pub use graph::{lit_value, Aig, Lit, Node};
