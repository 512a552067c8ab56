use std::fmt;

use super::AutomatonError;

/// Conjunction of literals; the empty conjunction is `True`. Literals are
/// kept sorted by proposition and never contradict each other.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Label {
    lits: Vec<(String, bool)>,
}

impl Label {
    pub fn truth() -> Label {
        Label::default()
    }

    /// Builds a label from literals; `None` if they contradict.
    pub fn from_literals(lits: impl IntoIterator<Item = (String, bool)>) -> Option<Label> {
        let mut out: Vec<(String, bool)> = Vec::new();
        for (p, pos) in lits {
            match out.iter().find(|(q, _)| *q == p) {
                Some((_, v)) if *v != pos => return None,
                Some(_) => {}
                None => out.push((p, pos)),
            }
        }
        out.sort();
        Some(Label { lits: out })
    }

    /// Parses GFF label text: `True`, or space-separated `p` / `~p`.
    pub fn parse(text: &str, props: &[String]) -> Result<Label, AutomatonError> {
        let err = |msg: String| AutomatonError::Label {
            text: text.to_string(),
            msg,
        };
        let t = text.trim();
        if t == "True" || t == "true" {
            return Ok(Label::truth());
        }
        if t.is_empty() {
            return Err(err("empty label".into()));
        }
        let mut lits = Vec::new();
        for tok in t.split_whitespace() {
            let (p, pos) = match tok.strip_prefix('~') {
                Some(p) => (p, false),
                None => (tok, true),
            };
            if !props.iter().any(|q| q == p) {
                return Err(err(format!("`{p}` is not in the alphabet")));
            }
            lits.push((p.to_string(), pos));
        }
        Label::from_literals(lits).ok_or_else(|| err("contradictory literals".into()))
    }

    pub fn literals(&self) -> &[(String, bool)] {
        &self.lits
    }

    pub fn is_true(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn holds(&self, val: &dyn Fn(&str) -> bool) -> bool {
        self.lits.iter().all(|(p, pos)| val(p) == *pos)
    }

    /// Whether some letter satisfies both labels.
    pub fn overlaps(&self, other: &Label) -> bool {
        self.lits
            .iter()
            .all(|(p, v)| other.lits.iter().all(|(q, w)| p != q || v == w))
    }

    pub fn props(&self) -> impl Iterator<Item = &str> {
        self.lits.iter().map(|(p, _)| p.as_str())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "True");
        }
        let parts: Vec<String> = self
            .lits
            .iter()
            .map(|(p, pos)| if *pos { p.clone() } else { format!("~{p}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Disjoint cubes covering exactly the letters that satisfy none of `labels`.
pub(crate) fn complement(labels: &[&Label], props: &[String]) -> Vec<Label> {
    fn go(labels: Vec<Label>, props: &[String], prefix: &mut Vec<(String, bool)>, out: &mut Vec<Label>) {
        if labels.iter().any(Label::is_true) {
            return;
        }
        if labels.is_empty() {
            out.push(Label::from_literals(prefix.clone()).expect("prefix is consistent"));
            return;
        }
        let p = props
            .iter()
            .find(|p| labels.iter().any(|l| l.props().any(|q| q == p.as_str())))
            .expect("non-true labels mention a proposition")
            .clone();
        for value in [false, true] {
            // cofactor each label by p = value
            let rest: Vec<Label> = labels
                .iter()
                .filter(|l| l.lits.iter().all(|(q, v)| *q != p || *v == value))
                .map(|l| Label {
                    lits: l.lits.iter().filter(|(q, _)| *q != p).cloned().collect(),
                })
                .collect();
            prefix.push((p.clone(), value));
            go(rest, props, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(labels.iter().map(|l| (*l).clone()).collect(), props, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn props() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn parse_forms() {
        assert!(Label::parse("True", &props()).unwrap().is_true());
        assert!(Label::parse("true", &props()).unwrap().is_true());
        let l = Label::parse("~b a", &props()).unwrap();
        assert_eq!(l.to_string(), "a ~b");
        assert!(Label::parse("a ~a", &props()).is_err());
        assert!(Label::parse("z", &props()).is_err());
    }

    #[test]
    fn complement_covers_missing_letters() {
        let ps = props();
        let ls = [
            Label::parse("a b", &ps).unwrap(),
            Label::parse("~a c", &ps).unwrap(),
        ];
        let refs: Vec<&Label> = ls.iter().collect();
        let comp = complement(&refs, &ps);
        for bits in 0..8u32 {
            let val = |p: &str| bits >> ps.iter().position(|q| q == p).unwrap() & 1 == 1;
            let covered = ls.iter().any(|l| l.holds(&val));
            let n = comp.iter().filter(|l| l.holds(&val)).count();
            assert_eq!(n, usize::from(!covered), "letter {bits:03b}");
        }
    }
}
