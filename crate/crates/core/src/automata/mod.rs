//! Büchi automata over propositional labels: GOAL (GFF) input, validation
//! for the guarantee and assumption roles, and compilation to monitors.

mod gff;
mod label;
mod monitor;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use gff::parse_gff;
pub use label::Label;
pub use monitor::Monitor;
pub use validate::{complete, validate_for_role, Role};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("malformed automaton: {0}")]
    Structure(String),
    #[error("expected exactly one initial state, found {0}")]
    InitialStates(usize),
    #[error("unsupported acceptance condition `{0}`; only Büchi is supported")]
    UnsupportedAcceptance(String),
    #[error("cannot parse label `{text}`: {msg}")]
    Label { text: String, msg: String },
    #[error("state {state}: transitions labelled `{a}` and `{b}` overlap but lead to different states; determinize the automaton first")]
    Nondeterministic { state: String, a: String, b: String },
    #[error("assumption automaton is not a safety automaton: {0}")]
    NotSafety(String),
    #[error("cannot negate: {0}")]
    Negation(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub src: usize,
    pub label: Label,
    pub dst: usize,
}

/// Büchi automaton. States are indexed in document order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    pub name: String,
    pub props: Vec<String>,
    /// State ids as written in the source; a completion trap is named `trap`.
    pub states: Vec<String>,
    pub initial: usize,
    pub transitions: Vec<Transition>,
    pub accepting: BTreeSet<usize>,
}

impl BuchiAutomaton {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting.contains(&s)
    }

    pub fn outgoing(&self, s: usize) -> impl Iterator<Item = &Transition> {
        self.transitions.iter().filter(move |t| t.src == s)
    }

    /// Successor sets ignoring labels.
    pub fn successors(&self) -> Vec<BTreeSet<usize>> {
        let mut succ = vec![BTreeSet::new(); self.num_states()];
        for t in &self.transitions {
            succ[t.src].insert(t.dst);
        }
        succ
    }

    pub fn reachable(&self) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &d in &succ[s] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// Non-accepting state whose only behavior is staying put. Assumes the
    /// automaton is complete.
    pub fn is_trap(&self, s: usize) -> bool {
        !self.is_accepting(s) && self.outgoing(s).all(|t| t.dst == s) && self.outgoing(s).next().is_some()
    }

    /// Destinations of the transitions enabled under `val`.
    pub fn enabled(&self, s: usize, val: &dyn Fn(&str) -> bool) -> BTreeSet<usize> {
        self.outgoing(s)
            .filter(|t| t.label.holds(val))
            .map(|t| t.dst)
            .collect()
    }
}

impl fmt::Display for BuchiAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "automaton {} over {{{}}}", self.name, self.props.join(", "))?;
        for (i, s) in self.states.iter().enumerate() {
            let init = if i == self.initial { "->" } else { "  " };
            let acc = if self.is_accepting(i) { "*" } else { " " };
            writeln!(f, "{init}{acc}{s}")?;
            for t in self.outgoing(i) {
                writeln!(f, "     --{}--> {}", t.label, self.states[t.dst])?;
            }
        }
        Ok(())
    }
}
