//! Gate-level netlists and their text format.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateOp {
    Xor,
    And,
    Or,
    Nand,
}

impl GateOp {
    pub const ALL: [GateOp; 4] = [GateOp::Xor, GateOp::And, GateOp::Or, GateOp::Nand];

    pub fn name(self) -> &'static str {
        match self {
            GateOp::Xor => "XOR",
            GateOp::And => "AND",
            GateOp::Or => "OR",
            GateOp::Nand => "NAND",
        }
    }

    #[inline]
    pub fn apply(self, a: u64, b: u64) -> u64 {
        match self {
            GateOp::Xor => a ^ b,
            GateOp::And => a & b,
            GateOp::Or => a | b,
            GateOp::Nand => !(a & b),
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateOp::ALL
            .iter()
            .copied()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown gate {s:?}")))
    }
}

/// A wire: a primary input (0-based) or the output of a gate (index into
/// the gate list).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    Input(usize),
    Gate(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    pub op: GateOp,
    pub a: Signal,
    pub b: Signal,
}

/// Per-operation gate tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCount {
    pub xor: usize,
    pub and: usize,
    pub or: usize,
    pub nand: usize,
    pub total: usize,
}

impl GateCount {
    fn add(&mut self, op: GateOp) {
        match op {
            GateOp::Xor => self.xor += 1,
            GateOp::And => self.and += 1,
            GateOp::Or => self.or += 1,
            GateOp::Nand => self.nand += 1,
        }
        self.total += 1;
    }

    pub fn get(&self, op: GateOp) -> usize {
        match op {
            GateOp::Xor => self.xor,
            GateOp::And => self.and,
            GateOp::Or => self.or,
            GateOp::Nand => self.nand,
        }
    }
}

impl std::ops::Sub for GateCount {
    type Output = GateCount;

    fn sub(self, rhs: GateCount) -> GateCount {
        GateCount {
            xor: self.xor - rhs.xor,
            and: self.and - rhs.and,
            or: self.or - rhs.or,
            nand: self.nand - rhs.nand,
            total: self.total - rhs.total,
        }
    }
}

impl fmt::Display for GateCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xor = {}\nand = {}\nor = {}\nnand = {}\ntotal = {}", self.xor, self.and, self.or, self.nand, self.total)
    }
}

/// A single-output circuit of 2-input gates in topological order, with no
/// gate that fails to reach the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    inputs: usize,
    gates: Vec<Gate>,
    output: Signal,
}

impl Netlist {
    /// Checks topological order, input ranges and reachability.
    pub fn new(inputs: usize, gates: Vec<Gate>, output: Signal) -> Result<Self> {
        if inputs == 0 {
            return Err(Error::InvalidParams("a netlist needs at least one input".into()));
        }
        let check = |s: Signal, before: usize| match s {
            Signal::Input(i) if i < inputs => Ok(()),
            Signal::Gate(g) if g < before => Ok(()),
            other => Err(Error::InvalidParams(format!("reference {other:?} is undefined at this point"))),
        };
        for (i, g) in gates.iter().enumerate() {
            check(g.a, i)?;
            check(g.b, i)?;
        }
        check(output, gates.len())?;
        let nl = Self { inputs, gates, output };
        let live = nl.live_gates();
        if let Some(dead) = live.iter().position(|&l| !l) {
            return Err(Error::InvalidParams(format!("gate g{} does not reach the output", dead + 1)));
        }
        Ok(nl)
    }

    fn live_gates(&self) -> Vec<bool> {
        let mut live = vec![false; self.gates.len()];
        if let Signal::Gate(g) = self.output {
            live[g] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if live[i] {
                for s in [self.gates[i].a, self.gates[i].b] {
                    if let Signal::Gate(j) = s {
                        live[j] = true;
                    }
                }
            }
        }
        live
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> Signal {
        self.output
    }

    pub fn count_gates(&self) -> GateCount {
        let mut c = GateCount::default();
        for g in &self.gates {
            c.add(g.op);
        }
        c
    }

    /// Parses the text format; errors name the offending line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut inputs: Option<HashMap<String, usize>> = None;
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut gates = Vec::new();
        let mut output = None;
        let parse_err = |line: usize, msg: String| Error::Parse { line, msg };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if output.is_some() {
                return Err(parse_err(line_no, "content after .output".into()));
            }
            let resolve = |r: &str, inputs: &HashMap<String, usize>, names: &HashMap<String, usize>| {
                inputs
                    .get(r)
                    .map(|&i| Signal::Input(i))
                    .or_else(|| names.get(r).map(|&g| Signal::Gate(g)))
                    .ok_or_else(|| parse_err(line_no, format!("undefined reference {r:?}")))
            };
            if let Some(rest) = line.strip_prefix(".inputs") {
                if inputs.is_some() {
                    return Err(parse_err(line_no, "duplicate .inputs".into()));
                }
                let list: Vec<&str> = rest.split_whitespace().collect();
                let mut map = HashMap::new();
                for (i, name) in list.iter().enumerate() {
                    if *name != format!("x{}", i + 1) {
                        return Err(parse_err(line_no, format!("inputs must be x1..xn in order, found {name:?}")));
                    }
                    map.insert(name.to_string(), i);
                }
                if map.is_empty() {
                    return Err(parse_err(line_no, "no inputs declared".into()));
                }
                inputs = Some(map);
                continue;
            }
            let Some(ins) = inputs.as_ref() else {
                return Err(parse_err(line_no, "expected .inputs first".into()));
            };
            if let Some(rest) = line.strip_prefix(".output") {
                let r = rest.trim();
                if r.is_empty() || r.contains(char::is_whitespace) {
                    return Err(parse_err(line_no, "expected exactly one output reference".into()));
                }
                output = Some(resolve(r, ins, &names)?);
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| parse_err(line_no, format!("expected `g<id> = OP ref ref`, got {line:?}")))?;
            let lhs = lhs.trim();
            if !lhs.strip_prefix('g').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit())) {
                return Err(parse_err(line_no, format!("gate names look like g<id>, got {lhs:?}")));
            }
            if names.contains_key(lhs) {
                return Err(parse_err(line_no, format!("gate {lhs} defined twice")));
            }
            let parts: Vec<&str> = rhs.split_whitespace().collect();
            let [op, a, b] = parts[..] else {
                return Err(parse_err(line_no, "expected an operation and two references".into()));
            };
            let op: GateOp = op.parse().map_err(|e: Error| parse_err(line_no, e.to_string()))?;
            let gate = Gate { op, a: resolve(a, ins, &names)?, b: resolve(b, ins, &names)? };
            names.insert(lhs.to_string(), gates.len());
            gates.push(gate);
        }
        let last = text.lines().count().max(1);
        let inputs = inputs.ok_or_else(|| parse_err(last, "missing .inputs".into()))?.len();
        let output = output.ok_or_else(|| parse_err(last, "missing .output".into()))?;
        Self::new(inputs, gates, output)
    }

    fn name(s: Signal) -> String {
        match s {
            Signal::Input(i) => format!("x{}", i + 1),
            Signal::Gate(g) => format!("g{}", g + 1),
        }
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ".inputs")?;
        for i in 0..self.inputs {
            write!(f, " x{}", i + 1)?;
        }
        writeln!(f)?;
        for (i, g) in self.gates.iter().enumerate() {
            writeln!(f, "g{} = {} {} {}", i + 1, g.op, Self::name(g.a), Self::name(g.b))?;
        }
        writeln!(f, ".output {}", Self::name(self.output))
    }
}

impl FromStr for Netlist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A wire or a constant, during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lit {
    Const(bool),
    Sig(Signal),
}

/// Incremental netlist construction with constant folding and structural
/// hashing: requesting an existing gate again returns the same wire.
pub struct NetlistBuilder {
    inputs: usize,
    gates: Vec<Gate>,
    table: HashMap<Gate, Signal>,
}

impl NetlistBuilder {
    pub fn new(inputs: usize) -> Self {
        Self { inputs, gates: Vec::new(), table: HashMap::new() }
    }

    pub fn input(&self, i: usize) -> Lit {
        assert!(i < self.inputs, "input {i} out of range");
        Lit::Sig(Signal::Input(i))
    }

    pub fn inputs(&self) -> Vec<Lit> {
        (0..self.inputs).map(|i| self.input(i)).collect()
    }

    /// Gates created so far, including ones that may later be pruned.
    pub fn count_gates(&self) -> GateCount {
        let mut c = GateCount::default();
        for g in &self.gates {
            c.add(g.op);
        }
        c
    }

    fn gate(&mut self, op: GateOp, a: Signal, b: Signal) -> Lit {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let gate = Gate { op, a, b };
        if let Some(&s) = self.table.get(&gate) {
            return Lit::Sig(s);
        }
        let s = Signal::Gate(self.gates.len());
        self.gates.push(gate);
        self.table.insert(gate, s);
        Lit::Sig(s)
    }

    pub fn not(&mut self, a: Lit) -> Lit {
        match a {
            Lit::Const(v) => Lit::Const(!v),
            Lit::Sig(s) => {
                if let Signal::Gate(g) = s {
                    let gate = self.gates[g];
                    if gate.op == GateOp::Nand && gate.a == gate.b {
                        return Lit::Sig(gate.a);
                    }
                }
                self.gate(GateOp::Nand, s, s)
            }
        }
    }

    pub fn xor(&mut self, a: Lit, b: Lit) -> Lit {
        match (a, b) {
            (Lit::Const(x), Lit::Const(y)) => Lit::Const(x ^ y),
            (Lit::Const(false), s) | (s, Lit::Const(false)) => s,
            (Lit::Const(true), s) | (s, Lit::Const(true)) => self.not(s),
            (Lit::Sig(x), Lit::Sig(y)) if x == y => Lit::Const(false),
            (Lit::Sig(x), Lit::Sig(y)) => self.gate(GateOp::Xor, x, y),
        }
    }

    pub fn and(&mut self, a: Lit, b: Lit) -> Lit {
        match (a, b) {
            (Lit::Const(x), Lit::Const(y)) => Lit::Const(x & y),
            (Lit::Const(false), _) | (_, Lit::Const(false)) => Lit::Const(false),
            (Lit::Const(true), s) | (s, Lit::Const(true)) => s,
            (Lit::Sig(x), Lit::Sig(y)) if x == y => a,
            (Lit::Sig(x), Lit::Sig(y)) => self.gate(GateOp::And, x, y),
        }
    }

    pub fn or(&mut self, a: Lit, b: Lit) -> Lit {
        match (a, b) {
            (Lit::Const(x), Lit::Const(y)) => Lit::Const(x | y),
            (Lit::Const(true), _) | (_, Lit::Const(true)) => Lit::Const(true),
            (Lit::Const(false), s) | (s, Lit::Const(false)) => s,
            (Lit::Sig(x), Lit::Sig(y)) if x == y => a,
            (Lit::Sig(x), Lit::Sig(y)) => self.gate(GateOp::Or, x, y),
        }
    }

    pub fn nand(&mut self, a: Lit, b: Lit) -> Lit {
        match (a, b) {
            (Lit::Sig(x), Lit::Sig(y)) => self.gate(GateOp::Nand, x, y),
            _ => {
                let t = self.and(a, b);
                self.not(t)
            }
        }
    }

    /// XOR of all literals (a chain of `len - 1` gates).
    pub fn xor_all(&mut self, lits: &[Lit]) -> Lit {
        lits.iter().fold(Lit::Const(false), |acc, &l| self.xor(acc, l))
    }

    /// `sel ? h : g` as `g + sel (g + h)`.
    pub fn mux(&mut self, sel: Lit, g: Lit, h: Lit) -> Lit {
        let d = self.xor(g, h);
        let t = self.and(sel, d);
        self.xor(g, t)
    }

    /// Drops gates that do not reach `output`, renumbering the rest.
    pub fn finish(self, output: Lit) -> Result<Netlist> {
        let Lit::Sig(out) = output else {
            return Err(Error::InvalidParams("the function is constant; a netlist needs a wire output".into()));
        };
        let mut live = vec![false; self.gates.len()];
        if let Signal::Gate(g) = out {
            live[g] = true;
        }
        for i in (0..self.gates.len()).rev() {
            if live[i] {
                for s in [self.gates[i].a, self.gates[i].b] {
                    if let Signal::Gate(j) = s {
                        live[j] = true;
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        let map = |s: Signal, remap: &[usize]| match s {
            Signal::Gate(g) => Signal::Gate(remap[g]),
            input => input,
        };
        for (i, g) in self.gates.iter().enumerate() {
            if live[i] {
                remap[i] = gates.len();
                gates.push(Gate { op: g.op, a: map(g.a, &remap), b: map(g.b, &remap) });
            }
        }
        Netlist::new(self.inputs, gates, map(out, &remap))
    }
}
