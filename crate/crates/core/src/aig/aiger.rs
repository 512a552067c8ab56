//! ASCII AIGER documents in the old (`aag M I L O A`) and new
//! (`aag M I L O A B C J F`) formats.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::graph::{lit_value, Aig, Lit, Node};

/// Name prefix marking inputs driven by the system.
pub const CONTROLLABLE_PREFIX: &str = "controllable_";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Old,
    New,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub lit: Lit,
    pub name: Option<String>,
}

impl Input {
    pub fn is_controllable(&self) -> bool {
        self.name
            .as_deref()
            .is_some_and(|n| n.starts_with(CONTROLLABLE_PREFIX))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Latch {
    pub lit: Lit,
    pub next: Lit,
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signal {
    pub lit: Lit,
    pub name: Option<String>,
}

impl Signal {
    pub fn new(lit: Lit, name: Option<&str>) -> Self {
        Signal {
            lit,
            name: name.map(str::to_owned),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Justice {
    pub lits: Vec<Lit>,
    pub name: Option<String>,
}

/// A circuit plus its AIGER sectioning. Every latch resets to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AigerDoc {
    pub aig: Aig,
    pub format: Format,
    pub inputs: Vec<Input>,
    pub latches: Vec<Latch>,
    pub outputs: Vec<Signal>,
    pub bad: Vec<Signal>,
    pub constraints: Vec<Signal>,
    pub justice: Vec<Justice>,
    pub comments: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AigerError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: literal {lit} out of range (maximum variable {max})")]
    LiteralOutOfRange { line: usize, lit: u32, max: u32 },
    #[error("line {line}: AND gate {lhs} uses operand {operand} that is not defined before it")]
    NonTopological { line: usize, lhs: u32, operand: u32 },
    #[error("line {line}: unsupported: {msg}")]
    Unsupported { line: usize, msg: String },
    #[error("old-format documents cannot carry bad, constraint or justice sections")]
    OldFormatWithExtendedSections,
    #[error("node {0} is used but is neither a listed input, a listed latch nor a gate")]
    Unlisted(u32),
}

impl AigerDoc {
    pub fn new(format: Format) -> Self {
        AigerDoc {
            aig: Aig::new(),
            format,
            inputs: Vec::new(),
            latches: Vec::new(),
            outputs: Vec::new(),
            bad: Vec::new(),
            constraints: Vec::new(),
            justice: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> Lit {
        let lit = self.aig.new_input();
        self.inputs.push(Input {
            lit,
            name: Some(name.into()),
        });
        lit
    }

    /// Adds a latch whose next-state function is FALSE until set.
    pub fn add_latch(&mut self, name: impl Into<String>) -> Lit {
        let lit = self.aig.new_latch();
        self.latches.push(Latch {
            lit,
            next: Lit::FALSE,
            name: Some(name.into()),
        });
        lit
    }

    pub fn set_next(&mut self, latch: Lit, next: Lit) {
        let l = self
            .latches
            .iter_mut()
            .find(|l| l.lit == latch)
            .expect("not a latch of this document");
        l.next = next;
    }

    pub fn controllable_inputs(&self) -> impl Iterator<Item = &Input> {
        self.inputs.iter().filter(|i| i.is_controllable())
    }

    pub fn uncontrollable_inputs(&self) -> impl Iterator<Item = &Input> {
        self.inputs.iter().filter(|i| !i.is_controllable())
    }

    pub fn has_extended_sections(&self) -> bool {
        !self.bad.is_empty() || !self.constraints.is_empty() || !self.justice.is_empty()
    }

    /// All literals the document refers to, besides the leaves themselves.
    pub fn roots(&self) -> Vec<Lit> {
        let mut roots: Vec<Lit> = self.latches.iter().map(|l| l.next).collect();
        roots.extend(self.outputs.iter().map(|s| s.lit));
        roots.extend(self.bad.iter().map(|s| s.lit));
        roots.extend(self.constraints.iter().map(|s| s.lit));
        for j in &self.justice {
            roots.extend(j.lits.iter().copied());
        }
        roots
    }

    /// Names a fresh signal, appending `_<n>` if `base` is already taken by
    /// an input or latch.
    pub fn fresh_name(&self, base: &str) -> String {
        let taken = |n: &str| {
            self.inputs.iter().any(|i| i.name.as_deref() == Some(n))
                || self.latches.iter().any(|l| l.name.as_deref() == Some(n))
        };
        if !taken(base) {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|n| !taken(n))
            .unwrap()
    }

    /// Node values for one step; `inputs` and `latches` follow document order.
    pub fn eval(&self, inputs: &[bool], latches: &[bool]) -> Vec<bool> {
        let mut leaf = vec![false; self.aig.num_nodes()];
        for (i, v) in self.inputs.iter().zip(inputs) {
            leaf[i.lit.var() as usize] = *v;
        }
        for (l, v) in self.latches.iter().zip(latches) {
            leaf[l.lit.var() as usize] = *v;
        }
        self.aig.eval_vars(|v| leaf[v as usize])
    }

    /// Latch values after a step whose node values are `values`.
    pub fn next_latches(&self, values: &[bool]) -> Vec<bool> {
        self.latches.iter().map(|l| lit_value(values, l.next)).collect()
    }

    /// Number of AND gates that `write_aiger` would emit.
    pub fn num_live_ands(&self) -> usize {
        self.live_ands().len()
    }

    fn live_ands(&self) -> Vec<u32> {
        let mut marked = vec![false; self.aig.num_nodes()];
        let mut stack: Vec<u32> = self.roots().iter().map(|l| l.var()).collect();
        while let Some(v) = stack.pop() {
            if marked[v as usize] {
                continue;
            }
            marked[v as usize] = true;
            if let Node::And(a, b) = self.aig.node(v) {
                stack.push(a.var());
                stack.push(b.var());
            }
        }
        (0..self.aig.num_nodes() as u32)
            .filter(|&v| marked[v as usize] && matches!(self.aig.node(v), Node::And(..)))
            .collect()
    }
}

/// Serializes a document. Inputs, latches and live AND gates are renumbered
/// in that order, so the output only depends on the document's structure.
pub fn write_aiger(doc: &AigerDoc) -> Result<String, AigerError> {
    if doc.format == Format::Old && doc.has_extended_sections() {
        return Err(AigerError::OldFormatWithExtendedSections);
    }
    let ands = doc.live_ands();
    let mut map: FxHashMap<u32, u32> = FxHashMap::default();
    map.insert(0, 0);
    let mut next_var = 1;
    for l in doc
        .inputs
        .iter()
        .map(|i| i.lit)
        .chain(doc.latches.iter().map(|l| l.lit))
    {
        map.insert(l.var(), next_var);
        next_var += 1;
    }
    for &v in &ands {
        map.insert(v, next_var);
        next_var += 1;
    }
    let tr = |l: Lit| -> Result<Lit, AigerError> {
        let v = *map.get(&l.var()).ok_or(AigerError::Unlisted(l.var()))?;
        Ok(Lit::new(v, l.is_negated()))
    };

    let max_var = next_var - 1;
    let mut out = String::new();
    match doc.format {
        Format::Old => writeln!(
            out,
            "aag {} {} {} {} {}",
            max_var,
            doc.inputs.len(),
            doc.latches.len(),
            doc.outputs.len(),
            ands.len()
        ),
        Format::New => writeln!(
            out,
            "aag {} {} {} {} {} {} {} {} 0",
            max_var,
            doc.inputs.len(),
            doc.latches.len(),
            doc.outputs.len(),
            ands.len(),
            doc.bad.len(),
            doc.constraints.len(),
            doc.justice.len()
        ),
    }
    .unwrap();
    for i in &doc.inputs {
        writeln!(out, "{}", tr(i.lit)?).unwrap();
    }
    for l in &doc.latches {
        writeln!(out, "{} {}", tr(l.lit)?, tr(l.next)?).unwrap();
    }
    for s in doc.outputs.iter().chain(&doc.bad).chain(&doc.constraints) {
        writeln!(out, "{}", tr(s.lit)?).unwrap();
    }
    for j in &doc.justice {
        writeln!(out, "{}", j.lits.len()).unwrap();
    }
    for j in &doc.justice {
        for &l in &j.lits {
            writeln!(out, "{}", tr(l)?).unwrap();
        }
    }
    for &v in &ands {
        let Node::And(a, b) = doc.aig.node(v) else {
            unreachable!()
        };
        let (a, b) = (tr(a)?, tr(b)?);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        writeln!(out, "{} {} {}", map[&v] * 2, hi, lo).unwrap();
    }
    let named = |out: &mut String, tag: char, names: &mut dyn Iterator<Item = Option<&String>>| {
        for (k, name) in names.enumerate() {
            if let Some(name) = name {
                writeln!(out, "{tag}{k} {name}").unwrap();
            }
        }
    };
    named(&mut out, 'i', &mut doc.inputs.iter().map(|i| i.name.as_ref()));
    named(&mut out, 'l', &mut doc.latches.iter().map(|l| l.name.as_ref()));
    named(&mut out, 'o', &mut doc.outputs.iter().map(|s| s.name.as_ref()));
    named(&mut out, 'b', &mut doc.bad.iter().map(|s| s.name.as_ref()));
    named(&mut out, 'c', &mut doc.constraints.iter().map(|s| s.name.as_ref()));
    named(&mut out, 'j', &mut doc.justice.iter().map(|j| j.name.as_ref()));
    if !doc.comments.is_empty() {
        out.push_str("c\n");
        for c in &doc.comments {
            out.push_str(c);
            out.push('\n');
        }
    }
    Ok(out)
}

struct Lines<'a> {
    iter: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), AigerError> {
        match self.iter.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l))
            }
            None => Err(AigerError::Syntax {
                line: self.last + 1,
                msg: format!("unexpected end of file, expected {what}"),
            }),
        }
    }

    fn numbers<const N: usize>(&mut self, what: &str) -> Result<(usize, [u32; N]), AigerError> {
        let (line, text) = self.next(what)?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != N {
            return Err(AigerError::Syntax {
                line,
                msg: format!("expected {N} number(s) for {what}, found `{text}`"),
            });
        }
        let mut out = [0u32; N];
        for (o, f) in out.iter_mut().zip(&fields) {
            *o = f.parse().map_err(|_| AigerError::Syntax {
                line,
                msg: format!("`{f}` is not an unsigned integer"),
            })?;
        }
        Ok((line, out))
    }
}

/// Parses an ASCII AIGER file in the old or new format.
pub fn read_aiger(text: &str) -> Result<AigerDoc, AigerError> {
    let mut lines = Lines {
        iter: text.lines().enumerate().peekable(),
        last: 0,
    };
    let (_, header) = lines.next("header")?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let header_err = |msg: String| AigerError::Header { line: 1, msg };
    if fields.first() != Some(&"aag") {
        return Err(header_err("expected `aag`".into()));
    }
    let nums: Vec<u32> = fields[1..]
        .iter()
        .map(|f| f.parse().map_err(|_| header_err(format!("`{f}` is not a number"))))
        .collect::<Result<_, _>>()?;
    if !(5..=9).contains(&nums.len()) {
        return Err(header_err(format!("expected 5 to 9 numbers, found {}", nums.len())));
    }
    let get = |i: usize| nums.get(i).copied().unwrap_or(0);
    let (m, ni, nl, no, na) = (get(0), get(1), get(2), get(3), get(4));
    let (nb, nc, nj, nf) = (get(5), get(6), get(7), get(8));
    let format = if nums.len() == 5 { Format::Old } else { Format::New };
    if (ni as u64 + nl as u64 + na as u64) > m as u64 {
        return Err(header_err(format!("M = {m} is smaller than I + L + A = {}", ni + nl + na)));
    }
    if nf > 0 {
        return Err(AigerError::Unsupported {
            line: 1,
            msg: "fairness sections".into(),
        });
    }

    let check_lit = |line: usize, raw: u32| -> Result<(), AigerError> {
        if raw >> 1 > m {
            Err(AigerError::LiteralOutOfRange { line, lit: raw, max: m })
        } else {
            Ok(())
        }
    };
    let mut doc = AigerDoc::new(format);
    // file variable -> internal literal
    let mut defined: FxHashMap<u32, Lit> = FxHashMap::default();
    defined.insert(0, Lit::FALSE);
    let define = |line: usize, raw: u32, lit: Lit, defined: &mut FxHashMap<u32, Lit>| {
        if raw & 1 == 1 || raw < 2 {
            return Err(AigerError::Syntax {
                line,
                msg: format!("{raw} cannot be defined (negated or constant)"),
            });
        }
        if defined.insert(raw >> 1, lit).is_some() {
            return Err(AigerError::Syntax {
                line,
                msg: format!("variable {} defined twice", raw >> 1),
            });
        }
        Ok(())
    };

    for _ in 0..ni {
        let (line, [raw]) = lines.numbers::<1>("input")?;
        check_lit(line, raw)?;
        let lit = doc.aig.new_input();
        define(line, raw, lit, &mut defined)?;
        doc.inputs.push(Input { lit, name: None });
    }
    let mut latch_next = Vec::new();
    for _ in 0..nl {
        let (line, text) = lines.next("latch")?;
        let f: Vec<u32> = text
            .split_whitespace()
            .map(|x| x.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| AigerError::Syntax {
                line,
                msg: format!("malformed latch line `{text}`"),
            })?;
        match f.as_slice() {
            [_, _] => {}
            [_, _, 0] => {}
            [cur, _, reset] if reset == cur => {
                return Err(AigerError::Unsupported {
                    line,
                    msg: "uninitialized latches".into(),
                })
            }
            [_, _, _] => {
                return Err(AigerError::Unsupported {
                    line,
                    msg: "latches with non-zero reset".into(),
                })
            }
            _ => {
                return Err(AigerError::Syntax {
                    line,
                    msg: format!("malformed latch line `{text}`"),
                })
            }
        }
        check_lit(line, f[0])?;
        check_lit(line, f[1])?;
        let lit = doc.aig.new_latch();
        define(line, f[0], lit, &mut defined)?;
        latch_next.push((line, f[1]));
        doc.latches.push(Latch {
            lit,
            next: Lit::FALSE,
            name: None,
        });
    }
    let read_lits = |lines: &mut Lines, count: u32, what: &str| {
        (0..count)
            .map(|_| {
                let (line, [raw]) = lines.numbers::<1>(what)?;
                check_lit(line, raw)?;
                Ok((line, raw))
            })
            .collect::<Result<Vec<(usize, u32)>, AigerError>>()
    };
    let outputs = read_lits(&mut lines, no, "output")?;
    let bads = read_lits(&mut lines, nb, "bad")?;
    let constraints = read_lits(&mut lines, nc, "constraint")?;
    let mut sizes = Vec::new();
    for _ in 0..nj {
        let (_, [n]) = lines.numbers::<1>("justice size")?;
        sizes.push(n);
    }
    let mut justice = Vec::new();
    for &n in &sizes {
        justice.push(read_lits(&mut lines, n, "justice literal")?);
    }

    let mut gates = Vec::new();
    for _ in 0..na {
        let (line, [lhs, a, b]) = lines.numbers::<3>("AND gate")?;
        for raw in [lhs, a, b] {
            check_lit(line, raw)?;
        }
        gates.push((line, lhs, a, b));
    }
    gates.sort_by_key(|g| g.1);
    for (line, lhs, a, b) in gates {
        let resolve = |raw: u32| -> Result<Lit, AigerError> {
            match defined.get(&(raw >> 1)) {
                Some(l) if (raw >> 1) < (lhs >> 1) || raw < 2 => Ok(l.negate_if(raw & 1 == 1)),
                _ => Err(AigerError::NonTopological {
                    line,
                    lhs,
                    operand: raw,
                }),
            }
        };
        let (la, lb) = (resolve(a)?, resolve(b)?);
        let lit = doc.aig.and_raw(la, lb);
        define(line, lhs, lit, &mut defined)?;
    }
    let resolve = |line: usize, raw: u32| -> Result<Lit, AigerError> {
        defined
            .get(&(raw >> 1))
            .map(|l| l.negate_if(raw & 1 == 1))
            .ok_or(AigerError::Syntax {
                line,
                msg: format!("literal {raw} refers to an undefined variable"),
            })
    };
    for (latch, (line, raw)) in doc.latches.iter_mut().zip(latch_next) {
        latch.next = resolve(line, raw)?;
    }
    let to_signals = |lits: Vec<(usize, u32)>| -> Result<Vec<Signal>, AigerError> {
        lits.into_iter()
            .map(|(line, raw)| Ok(Signal::new(resolve(line, raw)?, None)))
            .collect()
    };
    doc.outputs = to_signals(outputs)?;
    doc.bad = to_signals(bads)?;
    doc.constraints = to_signals(constraints)?;
    for group in justice {
        let lits = group
            .into_iter()
            .map(|(line, raw)| resolve(line, raw))
            .collect::<Result<_, _>>()?;
        doc.justice.push(Justice { lits, name: None });
    }

    // symbol table, then an optional comment section
    while let Some(&(i, text)) = lines.iter.peek() {
        let line = i + 1;
        lines.iter.next();
        if text == "c" {
            doc.comments = lines.iter.by_ref().map(|(_, l)| l.to_string()).collect();
            break;
        }
        let (tag, rest) = text.split_at(text.chars().next().map_or(0, char::len_utf8));
        let (idx, name) = rest.split_once(' ').ok_or_else(|| AigerError::Syntax {
            line,
            msg: format!("malformed symbol line `{text}`"),
        })?;
        let idx: usize = idx.parse().map_err(|_| AigerError::Syntax {
            line,
            msg: format!("malformed symbol index in `{text}`"),
        })?;
        let slot = match tag {
            "i" => doc.inputs.get_mut(idx).map(|x| &mut x.name),
            "l" => doc.latches.get_mut(idx).map(|x| &mut x.name),
            "o" => doc.outputs.get_mut(idx).map(|x| &mut x.name),
            "b" => doc.bad.get_mut(idx).map(|x| &mut x.name),
            "c" => doc.constraints.get_mut(idx).map(|x| &mut x.name),
            "j" => doc.justice.get_mut(idx).map(|x| &mut x.name),
            _ => {
                return Err(AigerError::Syntax {
                    line,
                    msg: format!("unknown symbol kind in `{text}`"),
                })
            }
        };
        let slot = slot.ok_or_else(|| AigerError::Syntax {
            line,
            msg: format!("symbol index out of range in `{text}`"),
        })?;
        *slot = Some(name.to_string());
    }
    Ok(doc)
}
