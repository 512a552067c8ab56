use super::label::complement;
use super::{AutomatonError, BuchiAutomaton, Label, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Guarantee,
    Assumption,
}

/// Adds a non-accepting `True`-looping trap receiving every letter a state
/// has no transition for. The trap is dropped again if nothing enters it.
pub fn complete(a: &BuchiAutomaton) -> BuchiAutomaton {
    let mut out = a.clone();
    let trap = out.states.len();
    let mut name = String::from("trap");
    let mut n = 0;
    while out.states.contains(&name) {
        n += 1;
        name = format!("trap_{n}");
    }
    out.states.push(name);
    for s in 0..a.num_states() {
        let labels: Vec<&Label> = a.outgoing(s).map(|t| &t.label).collect();
        for cube in complement(&labels, &a.props) {
            out.transitions.push(Transition {
                src: s,
                label: cube,
                dst: trap,
            });
        }
    }
    if out.transitions.iter().all(|t| t.dst != trap) {
        out.states.pop();
    } else {
        out.transitions.push(Transition {
            src: trap,
            label: Label::truth(),
            dst: trap,
        });
    }
    out
}

/// `reach[s][t]`: t is reachable from s in one or more steps.
fn reach_matrix(a: &BuchiAutomaton) -> Vec<Vec<bool>> {
    let succ = a.successors();
    (0..a.num_states())
        .map(|s| {
            let mut seen = vec![false; a.num_states()];
            let mut stack: Vec<usize> = succ[s].iter().copied().collect();
            while let Some(x) = stack.pop() {
                if !seen[x] {
                    seen[x] = true;
                    stack.extend(succ[x].iter().copied());
                }
            }
            seen
        })
        .collect()
}

fn check_deterministic(a: &BuchiAutomaton) -> Result<(), AutomatonError> {
    for s in 0..a.num_states() {
        let out: Vec<&Transition> = a.outgoing(s).collect();
        for (i, t) in out.iter().enumerate() {
            for u in &out[i + 1..] {
                if t.dst != u.dst && t.label.overlaps(&u.label) {
                    return Err(AutomatonError::Nondeterministic {
                        state: a.states[s].clone(),
                        a: t.label.to_string(),
                        b: u.label.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Swapping acceptance complements a complete deterministic automaton only
/// if every cycle stays within accepting or within rejecting states.
fn check_weak(a: &BuchiAutomaton) -> Result<(), AutomatonError> {
    let reach = reach_matrix(a);
    let live = a.reachable();
    for s in (0..a.num_states()).filter(|&s| live[s]) {
        for t in (0..a.num_states()).filter(|&t| live[t]) {
            if reach[s][t] && reach[t][s] && a.is_accepting(s) != a.is_accepting(t) {
                return Err(AutomatonError::Negation(format!(
                    "states {} and {} lie on a common cycle but differ in acceptance, so swapping \
                     the accepting set does not complement the language",
                    a.states[s], a.states[t]
                )));
            }
        }
    }
    Ok(())
}

fn check_safety(a: &BuchiAutomaton) -> Result<(), AutomatonError> {
    let reach = reach_matrix(a);
    let live = a.reachable();
    for s in (0..a.num_states()).filter(|&s| live[s]) {
        if a.is_accepting(s) {
            if let Some(t) = a
                .outgoing(s)
                .find(|t| !a.is_accepting(t.dst) && !a.is_trap(t.dst))
            {
                return Err(AutomatonError::NotSafety(format!(
                    "accepting state {} moves on `{}` to state {}, which is neither accepting nor a trap",
                    a.states[s], t.label, a.states[t.dst]
                )));
            }
        } else if !a.is_trap(s) && reach[s][s] {
            return Err(AutomatonError::NotSafety(format!(
                "rejecting state {} lies on a cycle",
                a.states[s]
            )));
        }
    }
    Ok(())
}

/// Completes `a`, checks determinism, applies the optional negation and
/// checks the role restriction on the result.
pub fn validate_for_role(
    a: &BuchiAutomaton,
    role: Role,
    negated: bool,
) -> Result<BuchiAutomaton, AutomatonError> {
    let mut c = complete(a);
    check_deterministic(&c)?;
    if negated {
        check_weak(&c)?;
        c.accepting = (0..c.num_states()).filter(|s| !c.is_accepting(*s)).collect();
    }
    if role == Role::Assumption {
        check_safety(&c)?;
    }
    Ok(c)
}
