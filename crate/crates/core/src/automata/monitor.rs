use super::{BuchiAutomaton, Label};

/// Deterministic, complete automaton ready to be wired into a circuit.
/// State `i` has code `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monitor {
    pub name: String,
    pub props: Vec<String>,
    pub states: Vec<String>,
    pub init: usize,
    pub transitions: Vec<Vec<(Label, usize)>>,
    pub fair: Vec<bool>,
    /// Non-accepting states that only loop on themselves.
    pub bad: Vec<bool>,
}

impl Monitor {
    /// Expects a validated (complete, deterministic) automaton.
    pub fn from_automaton(a: &BuchiAutomaton) -> Monitor {
        let n = a.num_states();
        let mut transitions = vec![Vec::new(); n];
        for t in &a.transitions {
            transitions[t.src].push((t.label.clone(), t.dst));
        }
        Monitor {
            name: a.name.clone(),
            props: a.props.clone(),
            states: a.states.clone(),
            init: a.initial,
            transitions,
            fair: (0..n).map(|s| a.is_accepting(s)).collect(),
            bad: (0..n).map(|s| a.is_trap(s)).collect(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_bits(&self) -> usize {
        let n = self.num_states() as u64;
        if n <= 1 {
            0
        } else {
            (64 - (n - 1).leading_zeros()) as usize
        }
    }

    pub fn step(&self, s: usize, val: &dyn Fn(&str) -> bool) -> usize {
        self.transitions[s]
            .iter()
            .find(|(l, _)| l.holds(val))
            .map(|(_, d)| *d)
            .unwrap_or_else(|| panic!("monitor {} is incomplete in state {}", self.name, self.states[s]))
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.init] = true;
        let mut stack = vec![self.init];
        while let Some(s) = stack.pop() {
            for (_, d) in &self.transitions[s] {
                if !seen[*d] {
                    seen[*d] = true;
                    stack.push(*d);
                }
            }
        }
        seen
    }

    /// Every reachable state that is not bad is accepting, so fair carries
    /// no liveness obligation.
    pub fn fair_is_trivial(&self) -> bool {
        let live = self.reachable();
        (0..self.num_states()).all(|s| !live[s] || self.bad[s] || self.fair[s])
    }

    pub fn bad_is_reachable(&self) -> bool {
        let live = self.reachable();
        (0..self.num_states()).any(|s| live[s] && self.bad[s])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{validate_for_role, Role, Transition};

    fn build(props: &[&str], n: usize, acc: &[usize], trans: &[(usize, &str, usize)]) -> Monitor {
        let props: Vec<String> = props.iter().map(|p| p.to_string()).collect();
        let a = BuchiAutomaton {
            name: "m".into(),
            states: (0..n).map(|i| format!("s{i}")).collect(),
            initial: 0,
            transitions: trans
                .iter()
                .map(|(s, l, d)| Transition {
                    src: *s,
                    label: Label::parse(l, &props).unwrap(),
                    dst: *d,
                })
                .collect(),
            accepting: acc.iter().copied().collect(),
            props,
        };
        Monitor::from_automaton(&validate_for_role(&a, Role::Guarantee, false).unwrap())
    }

    #[test]
    fn universal_automaton() {
        let m = build(&[], 1, &[0], &[(0, "True", 0)]);
        assert_eq!(m.state_bits(), 0);
        assert_eq!(m.fair, [true]);
        assert_eq!(m.bad, [false]);
        assert!(m.fair_is_trivial());
    }

    #[test]
    fn gf_done_run() {
        let m = build(&["done"], 2, &[1], &[(0, "~done", 0), (0, "done", 1), (1, "True", 0)]);
        assert_eq!(m.state_bits(), 1);
        assert!(!m.fair_is_trivial());
        assert!(!m.bad_is_reachable());
        let mut s = m.init;
        let mut seq = vec![s];
        for d in [true, false, false, true] {
            s = m.step(s, &|_| d);
            seq.push(s);
        }
        // direct run: 0 -done-> 1 -any-> 0 -~done-> 0 -done-> 1
        assert_eq!(seq, [0, 1, 0, 0, 1]);
    }

    #[test]
    fn safety_trap_is_absorbing() {
        let m = build(&["e"], 1, &[0], &[(0, "~e", 0)]);
        assert_eq!(m.bad, [false, true]);
        assert!(m.fair_is_trivial());
        let trap = m.step(0, &|_| true);
        assert!(m.bad[trap]);
        assert_eq!(m.step(trap, &|_| false), trap);
    }
}
