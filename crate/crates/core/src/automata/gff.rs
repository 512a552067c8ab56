use std::collections::BTreeSet;

use roxmltree::{Document, Node};

use super::{AutomatonError, BuchiAutomaton, Label, Transition};

fn children<'a, 'i>(n: Node<'a, 'i>, tag: &'a str) -> impl Iterator<Item = Node<'a, 'i>> + 'a {
    n.children().filter(move |c| c.has_tag_name(tag))
}

fn child<'a, 'i>(n: Node<'a, 'i>, tag: &'a str) -> Option<Node<'a, 'i>> {
    children(n, tag).next()
}

fn text<'a>(n: Node<'a, '_>) -> &'a str {
    n.text().unwrap_or("").trim()
}

/// Parses a GOAL automaton file. Only propositional, transition-labelled
/// Büchi automata are accepted.
pub fn parse_gff(xml: &str) -> Result<BuchiAutomaton, AutomatonError> {
    let doc = Document::parse(xml).map_err(|e| AutomatonError::Xml(e.to_string()))?;
    let root = doc.root_element();
    if !root.has_tag_name("structure") {
        return Err(AutomatonError::Structure(format!(
            "root element is <{}>, expected <structure>",
            root.tag_name().name()
        )));
    }
    const KNOWN: [&str; 6] = [
        "alphabet",
        "stateSet",
        "initialStateSet",
        "transitionSet",
        "acc",
        "description",
    ];
    for c in root.children().filter(Node::is_element) {
        if !KNOWN.contains(&c.tag_name().name()) {
            log::warn!("ignoring unknown GFF element <{}>", c.tag_name().name());
        }
    }

    let props: Vec<String> = child(root, "alphabet")
        .map(|a| children(a, "prop").map(|p| text(p).to_string()).collect())
        .unwrap_or_default();

    let state_set = child(root, "stateSet")
        .ok_or_else(|| AutomatonError::Structure("missing <stateSet>".into()))?;
    let mut states: Vec<String> = Vec::new();
    for s in children(state_set, "state") {
        let sid = s
            .attribute("sid")
            .ok_or_else(|| AutomatonError::Structure("<state> without sid".into()))?;
        if states.iter().any(|x| x == sid) {
            return Err(AutomatonError::Structure(format!("duplicate state id {sid}")));
        }
        states.push(sid.to_string());
    }
    if states.is_empty() {
        return Err(AutomatonError::Structure("no states".into()));
    }
    let index = |sid: &str| {
        states
            .iter()
            .position(|s| s == sid)
            .ok_or_else(|| AutomatonError::Structure(format!("unknown state id `{sid}`")))
    };

    let initial: Vec<usize> = match child(root, "initialStateSet") {
        Some(n) => children(n, "stateID")
            .map(|s| index(text(s)))
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    if initial.len() != 1 {
        return Err(AutomatonError::InitialStates(initial.len()));
    }

    let mut transitions = Vec::new();
    if let Some(ts) = child(root, "transitionSet") {
        for t in children(ts, "transition") {
            let field = |tag: &'static str| {
                child(t, tag)
                    .map(text)
                    .ok_or_else(|| AutomatonError::Structure(format!("<transition> without <{tag}>")))
            };
            let src = index(field("from")?)?;
            let dst = index(field("to")?)?;
            let label_text = child(t, "read")
                .or_else(|| child(t, "label"))
                .map(text)
                .ok_or_else(|| AutomatonError::Structure("<transition> without <read>".into()))?;
            let label = Label::parse(label_text, &props)?;
            transitions.push(Transition { src, label, dst });
        }
    }

    let acc = child(root, "acc").ok_or_else(|| AutomatonError::Structure("missing <acc>".into()))?;
    let kind = acc.attribute("type").unwrap_or("");
    if !kind.eq_ignore_ascii_case("buchi") {
        return Err(AutomatonError::UnsupportedAcceptance(kind.to_string()));
    }
    let accepting: BTreeSet<usize> = children(acc, "stateID")
        .map(|s| index(text(s)))
        .collect::<Result<_, _>>()?;

    Ok(BuchiAutomaton {
        name: String::new(),
        props,
        states,
        initial: initial[0],
        transitions,
        accepting,
    })
}
