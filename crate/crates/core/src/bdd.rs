//! Reduced ordered binary decision diagrams.
//!
//! The manager uses a fixed variable order equal to the order in which
//! variables are created. Nodes are hash-consed in a unique table, there
//! are no complement edges and nothing is ever collected: the manager only
//! grows. Operation results are memoized in unbounded caches keyed by the
//! operand handles.

use rustc_hash::FxHashMap;

/// Handle to a node owned by a [`BddManager`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bdd(u32);

impl Bdd {
    pub const FALSE: Bdd = Bdd(0);
    pub const TRUE: Bdd = Bdd(1);

    pub fn is_false(self) -> bool {
        self == Bdd::FALSE
    }

    pub fn is_true(self) -> bool {
        self == Bdd::TRUE
    }

    pub fn is_const(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A decision variable. Its id is also its level in the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

const TERMINAL_VAR: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    var: u32,
    low: Bdd,
    high: Bdd,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum QuantOp {
    Exists,
    Forall,
}

/// Interned set of variables for quantification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarSet(u32);

pub struct BddManager {
    nodes: Vec<Node>,
    unique: FxHashMap<(u32, Bdd, Bdd), Bdd>,
    ite_cache: FxHashMap<(Bdd, Bdd, Bdd), Bdd>,
    quant_cache: FxHashMap<(QuantOp, Bdd, VarSet), Bdd>,
    set_ids: FxHashMap<Vec<u32>, VarSet>,
    // membership mask and largest member per interned set
    sets: Vec<(Vec<bool>, u32)>,
    num_vars: u32,
}

impl Default for BddManager {
    fn default() -> Self {
        Self::new()
    }
}

impl BddManager {
    pub fn new() -> Self {
        let terminal = |b| Node {
            var: TERMINAL_VAR,
            low: b,
            high: b,
        };
        BddManager {
            nodes: vec![terminal(Bdd::FALSE), terminal(Bdd::TRUE)],
            unique: FxHashMap::default(),
            ite_cache: FxHashMap::default(),
            quant_cache: FxHashMap::default(),
            set_ids: FxHashMap::default(),
            sets: Vec::new(),
            num_vars: 0,
        }
    }

    /// Creates a variable placed after every existing one in the order.
    pub fn new_var(&mut self) -> Var {
        let v = Var(self.num_vars);
        self.num_vars += 1;
        v
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Total number of nodes ever created, terminals included.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn constant(&self, value: bool) -> Bdd {
        if value {
            Bdd::TRUE
        } else {
            Bdd::FALSE
        }
    }

    pub fn var(&mut self, v: Var) -> Bdd {
        assert!(v.0 < self.num_vars, "variable {} not allocated", v.0);
        self.mk(v.0, Bdd::FALSE, Bdd::TRUE)
    }

    pub fn literal(&mut self, v: Var, positive: bool) -> Bdd {
        if positive {
            self.mk(v.0, Bdd::FALSE, Bdd::TRUE)
        } else {
            self.mk(v.0, Bdd::TRUE, Bdd::FALSE)
        }
    }

    /// Top variable of a non-terminal node.
    pub fn top_var(&self, f: Bdd) -> Option<Var> {
        let n = self.nodes[f.index()];
        (n.var != TERMINAL_VAR).then_some(Var(n.var))
    }

    pub fn low(&self, f: Bdd) -> Bdd {
        self.nodes[f.index()].low
    }

    pub fn high(&self, f: Bdd) -> Bdd {
        self.nodes[f.index()].high
    }

    fn level(&self, f: Bdd) -> u32 {
        self.nodes[f.index()].var
    }

    fn mk(&mut self, var: u32, low: Bdd, high: Bdd) -> Bdd {
        if low == high {
            return low;
        }
        debug_assert!(var < self.level(low) && var < self.level(high));
        if let Some(&b) = self.unique.get(&(var, low, high)) {
            return b;
        }
        let b = Bdd(self.nodes.len() as u32);
        self.nodes.push(Node { var, low, high });
        self.unique.insert((var, low, high), b);
        b
    }

    fn cofactors(&self, f: Bdd, var: u32) -> (Bdd, Bdd) {
        let n = self.nodes[f.index()];
        if n.var == var {
            (n.low, n.high)
        } else {
            (f, f)
        }
    }

    pub fn ite(&mut self, f: Bdd, g: Bdd, h: Bdd) -> Bdd {
        if f.is_true() {
            return g;
        }
        if f.is_false() {
            return h;
        }
        let g = if g == f { Bdd::TRUE } else { g };
        let h = if h == f { Bdd::FALSE } else { h };
        if g == h {
            return g;
        }
        if g.is_true() && h.is_false() {
            return f;
        }
        if let Some(&r) = self.ite_cache.get(&(f, g, h)) {
            return r;
        }
        let top = self.level(f).min(self.level(g)).min(self.level(h));
        let (f0, f1) = self.cofactors(f, top);
        let (g0, g1) = self.cofactors(g, top);
        let (h0, h1) = self.cofactors(h, top);
        let low = self.ite(f0, g0, h0);
        let high = self.ite(f1, g1, h1);
        let r = self.mk(top, low, high);
        self.ite_cache.insert((f, g, h), r);
        r
    }

    pub fn not(&mut self, f: Bdd) -> Bdd {
        self.ite(f, Bdd::FALSE, Bdd::TRUE)
    }

    pub fn and(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.ite(f, g, Bdd::FALSE)
    }

    pub fn or(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.ite(f, Bdd::TRUE, g)
    }

    pub fn xor(&mut self, f: Bdd, g: Bdd) -> Bdd {
        let ng = self.not(g);
        self.ite(f, ng, g)
    }

    pub fn iff(&mut self, f: Bdd, g: Bdd) -> Bdd {
        let ng = self.not(g);
        self.ite(f, g, ng)
    }

    pub fn implies(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.ite(f, g, Bdd::TRUE)
    }

    pub fn and_all(&mut self, fs: impl IntoIterator<Item = Bdd>) -> Bdd {
        let mut acc = Bdd::TRUE;
        for f in fs {
            acc = self.and(acc, f);
            if acc.is_false() {
                break;
            }
        }
        acc
    }

    pub fn or_all(&mut self, fs: impl IntoIterator<Item = Bdd>) -> Bdd {
        let mut acc = Bdd::FALSE;
        for f in fs {
            acc = self.or(acc, f);
            if acc.is_true() {
                break;
            }
        }
        acc
    }

    /// Interns a set of variables for use with [`exists`](Self::exists)
    /// and [`forall`](Self::forall).
    pub fn var_set(&mut self, vars: &[Var]) -> VarSet {
        let mut ids: Vec<u32> = vars.iter().map(|v| v.0).collect();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&s) = self.set_ids.get(&ids) {
            return s;
        }
        let max = ids.last().copied().unwrap_or(0);
        let mut mask = vec![false; max as usize + 1];
        for &i in &ids {
            mask[i as usize] = true;
        }
        let s = VarSet(self.sets.len() as u32);
        self.sets.push((mask, if ids.is_empty() { 0 } else { max + 1 }));
        self.set_ids.insert(ids, s);
        s
    }

    pub fn exists(&mut self, f: Bdd, vars: VarSet) -> Bdd {
        self.quantify(f, vars, QuantOp::Exists)
    }

    pub fn forall(&mut self, f: Bdd, vars: VarSet) -> Bdd {
        self.quantify(f, vars, QuantOp::Forall)
    }

    fn quantify(&mut self, f: Bdd, vars: VarSet, op: QuantOp) -> Bdd {
        let level = self.level(f);
        let bound = self.sets[vars.0 as usize].1;
        if f.is_const() || level >= bound {
            return f;
        }
        if let Some(&r) = self.quant_cache.get(&(op, f, vars)) {
            return r;
        }
        let n = self.nodes[f.index()];
        let low = self.quantify(n.low, vars, op);
        let high = self.quantify(n.high, vars, op);
        let r = if self.sets[vars.0 as usize].0[level as usize] {
            match op {
                QuantOp::Exists => self.or(low, high),
                QuantOp::Forall => self.and(low, high),
            }
        } else {
            self.mk(level, low, high)
        };
        self.quant_cache.insert((op, f, vars), r);
        r
    }

    /// Simultaneous composition: every variable `v` with `map[v] = Some(g)`
    /// is replaced by `g`.
    pub fn substitute(&mut self, f: Bdd, map: &[Option<Bdd>]) -> Bdd {
        let mut memo = FxHashMap::default();
        self.substitute_rec(f, map, &mut memo)
    }

    fn substitute_rec(
        &mut self,
        f: Bdd,
        map: &[Option<Bdd>],
        memo: &mut FxHashMap<Bdd, Bdd>,
    ) -> Bdd {
        if f.is_const() {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let n = self.nodes[f.index()];
        let low = self.substitute_rec(n.low, map, memo);
        let high = self.substitute_rec(n.high, map, memo);
        let g = match map.get(n.var as usize).copied().flatten() {
            Some(g) => g,
            None => self.mk(n.var, Bdd::FALSE, Bdd::TRUE),
        };
        let r = self.ite(g, high, low);
        memo.insert(f, r);
        r
    }

    /// Cofactor of `f` with `v` fixed to `value`.
    pub fn restrict(&mut self, f: Bdd, v: Var, value: bool) -> Bdd {
        let mut map = vec![None; v.0 as usize + 1];
        map[v.0 as usize] = Some(self.constant(value));
        self.substitute(f, &map)
    }

    /// Evaluates `f` under a total assignment.
    pub fn eval(&self, f: Bdd, assignment: impl Fn(Var) -> bool) -> bool {
        let mut cur = f;
        while !cur.is_const() {
            let n = self.nodes[cur.index()];
            cur = if assignment(Var(n.var)) { n.high } else { n.low };
        }
        cur.is_true()
    }

    /// One satisfying path of `f`, preferring the low branch. Variables not
    /// on the path are free.
    pub fn pick_path(&self, f: Bdd) -> Option<Vec<(Var, bool)>> {
        if f.is_false() {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = f;
        while !cur.is_const() {
            let n = self.nodes[cur.index()];
            if n.low.is_false() {
                path.push((Var(n.var), true));
                cur = n.high;
            } else {
                path.push((Var(n.var), false));
                cur = n.low;
            }
        }
        Some(path)
    }

    pub fn support(&self, f: Bdd) -> Vec<Var> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut vars = std::collections::BTreeSet::new();
        let mut stack = vec![f];
        while let Some(g) = stack.pop() {
            if g.is_const() || !seen.insert(g) {
                continue;
            }
            let n = self.nodes[g.index()];
            vars.insert(n.var);
            stack.push(n.low);
            stack.push(n.high);
        }
        vars.into_iter().map(Var).collect()
    }

    /// Number of internal nodes reachable from `f`.
    pub fn node_count(&self, f: Bdd) -> usize {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![f];
        while let Some(g) = stack.pop() {
            if g.is_const() || !seen.insert(g) {
                continue;
            }
            let n = self.nodes[g.index()];
            stack.push(n.low);
            stack.push(n.high);
        }
        seen.len()
    }

    /// Builds the conjunction of literals described by `cube`.
    pub fn cube(&mut self, cube: &[(Var, bool)]) -> Bdd {
        let mut sorted = cube.to_vec();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let mut acc = Bdd::TRUE;
        for (v, pos) in sorted {
            acc = if pos {
                self.mk(v.0, Bdd::FALSE, acc)
            } else {
                self.mk(v.0, acc, Bdd::FALSE)
            };
        }
        acc
    }
}
