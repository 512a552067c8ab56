use std::fmt;
use std::ops::Not;

use rustc_hash::FxHashMap;

/// A literal: `2 * var + negated`. Variable 0 is the constant FALSE.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub const FALSE: Lit = Lit(0);
    pub const TRUE: Lit = Lit(1);

    pub fn new(var: u32, negated: bool) -> Lit {
        Lit(var << 1 | negated as u32)
    }

    pub fn from_raw(raw: u32) -> Lit {
        Lit(raw)
    }

    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_const(self) -> bool {
        self.0 < 2
    }

    /// The same variable with positive polarity.
    pub fn positive(self) -> Lit {
        Lit(self.0 & !1)
    }

    pub fn negate_if(self, cond: bool) -> Lit {
        Lit(self.0 ^ cond as u32)
    }

    pub fn constant(value: bool) -> Lit {
        if value {
            Lit::TRUE
        } else {
            Lit::FALSE
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    False,
    Input,
    Latch,
    And(Lit, Lit),
}

/// And-inverter graph with structural hashing.
///
/// Nodes are stored in creation order, which is topological: an AND node
/// only refers to nodes created before it. Gates built through [`Aig::and`]
/// are constant-folded and hash-consed on their (larger, smaller) operand
/// pair.
#[derive(Clone, Debug)]
pub struct Aig {
    nodes: Vec<Node>,
    strash: FxHashMap<(Lit, Lit), Lit>,
}

impl Default for Aig {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialEq for Aig {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

impl Eq for Aig {}

impl Aig {
    pub fn new() -> Self {
        Aig {
            nodes: vec![Node::False],
            strash: FxHashMap::default(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_ands(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::And(..)))
            .count()
    }

    pub fn node(&self, var: u32) -> Node {
        self.nodes[var as usize]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    fn push(&mut self, node: Node) -> Lit {
        let var = self.nodes.len() as u32;
        self.nodes.push(node);
        Lit::new(var, false)
    }

    pub fn new_input(&mut self) -> Lit {
        self.push(Node::Input)
    }

    pub fn new_latch(&mut self) -> Lit {
        self.push(Node::Latch)
    }

    fn check(&self, l: Lit) {
        debug_assert!((l.var() as usize) < self.nodes.len(), "literal {l} out of range");
    }

    pub fn and(&mut self, a: Lit, b: Lit) -> Lit {
        self.check(a);
        self.check(b);
        if a == Lit::FALSE || b == Lit::FALSE || a == !b {
            return Lit::FALSE;
        }
        if a == Lit::TRUE || a == b {
            return b;
        }
        if b == Lit::TRUE {
            return a;
        }
        let key = if a > b { (a, b) } else { (b, a) };
        if let Some(&l) = self.strash.get(&key) {
            return l;
        }
        let l = self.push(Node::And(key.0, key.1));
        self.strash.insert(key, l);
        l
    }

    /// Adds a gate exactly as given, without folding or hashing. Used when
    /// reading files so that gate structure survives a round trip.
    pub(crate) fn and_raw(&mut self, a: Lit, b: Lit) -> Lit {
        let l = self.push(Node::And(a, b));
        let key = if a > b { (a, b) } else { (b, a) };
        self.strash.entry(key).or_insert(l);
        l
    }

    pub fn or(&mut self, a: Lit, b: Lit) -> Lit {
        let n = self.and(!a, !b);
        !n
    }

    pub fn xor(&mut self, a: Lit, b: Lit) -> Lit {
        let both = self.and(a, b);
        let neither = self.and(!a, !b);
        let eq = self.or(both, neither);
        !eq
    }

    pub fn iff(&mut self, a: Lit, b: Lit) -> Lit {
        let x = self.xor(a, b);
        !x
    }

    pub fn ite(&mut self, c: Lit, t: Lit, e: Lit) -> Lit {
        if t == e {
            return t;
        }
        if c == Lit::TRUE {
            return t;
        }
        if c == Lit::FALSE {
            return e;
        }
        let on = self.and(c, t);
        let off = self.and(!c, e);
        self.or(on, off)
    }

    pub fn and_all(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let mut acc = Lit::TRUE;
        for l in lits {
            acc = self.and(acc, l);
        }
        acc
    }

    pub fn or_all(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let mut acc = Lit::FALSE;
        for l in lits {
            acc = self.or(acc, l);
        }
        acc
    }

    /// Evaluates every node given values for the leaves. Index by variable.
    pub fn eval_vars(&self, mut leaf: impl FnMut(u32) -> bool) -> Vec<bool> {
        let mut values = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let v = match *node {
                Node::False => false,
                Node::Input | Node::Latch => leaf(i as u32),
                Node::And(a, b) => lit_value(&values, a) && lit_value(&values, b),
            };
            values.push(v);
        }
        values
    }
}

/// Reads a literal's value out of a table produced by [`Aig::eval_vars`].
pub fn lit_value(values: &[bool], l: Lit) -> bool {
    values[l.var() as usize] ^ l.is_negated()
}
