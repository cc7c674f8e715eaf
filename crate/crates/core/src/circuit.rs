//! Gate-level circuit IR.
//!
//! A [`Circuit`] is a fixed number of wires, a [`RegisterMap`] that names
//! groups of those wires, and an append-only gate list. Registers are
//! little-endian: position 0 of a register is its least-significant bit.

use std::fmt;

use arrayvec::ArrayVec;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a wire (qubit) in a circuit.
pub type Wire = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    H,
    T,
    Tdg,
    S,
    Sdg,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::Not,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::H,
        GateKind::T,
        GateKind::Tdg,
        GateKind::S,
        GateKind::Sdg,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::Toffoli => 3,
            _ => 1,
        }
    }

    /// Name used in the JSON netlist.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::H => "H",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
        }
    }

    /// True for the kinds that permute basis states ({NOT, CNOT, Toffoli}).
    pub fn is_classical(self) -> bool {
        matches!(self, GateKind::Not | GateKind::Cnot | GateKind::Toffoli)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One gate of the Clifford+T family plus Toffoli.
///
/// Controls come first, the target last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Not(Wire),
    Cnot(Wire, Wire),
    Toffoli(Wire, Wire, Wire),
    H(Wire),
    T(Wire),
    Tdg(Wire),
    S(Wire),
    Sdg(Wire),
}

impl Gate {
    /// Builds a gate from a kind and an operand list, checking arity only.
    pub fn from_parts(kind: GateKind, operands: &[Wire]) -> Result<Gate> {
        if operands.len() != kind.arity() {
            return Err(Error::Parse(format!(
                "{kind} takes {} operand(s), got {}",
                kind.arity(),
                operands.len()
            )));
        }
        let o = operands;
        Ok(match kind {
            GateKind::Not => Gate::Not(o[0]),
            GateKind::Cnot => Gate::Cnot(o[0], o[1]),
            GateKind::Toffoli => Gate::Toffoli(o[0], o[1], o[2]),
            GateKind::H => Gate::H(o[0]),
            GateKind::T => Gate::T(o[0]),
            GateKind::Tdg => Gate::Tdg(o[0]),
            GateKind::S => Gate::S(o[0]),
            GateKind::Sdg => Gate::Sdg(o[0]),
        })
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Not(_) => GateKind::Not,
            Gate::Cnot(..) => GateKind::Cnot,
            Gate::Toffoli(..) => GateKind::Toffoli,
            Gate::H(_) => GateKind::H,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
        }
    }

    pub fn operands(&self) -> ArrayVec<Wire, 3> {
        let mut out = ArrayVec::new();
        match *self {
            Gate::Not(q) | Gate::H(q) | Gate::T(q) | Gate::Tdg(q) | Gate::S(q) | Gate::Sdg(q) => {
                out.push(q)
            }
            Gate::Cnot(c, t) => {
                out.push(c);
                out.push(t);
            }
            Gate::Toffoli(c1, c2, t) => {
                out.push(c1);
                out.push(c2);
                out.push(t);
            }
        }
        out
    }

    /// Checks operand distinctness and, when `width` is given, range.
    pub fn validate(&self, width: Option<usize>) -> Result<()> {
        let ops = self.operands();
        for (i, &q) in ops.iter().enumerate() {
            if let Some(width) = width {
                if q >= width {
                    return Err(Error::OperandOutOfRange {
                        gate: self.to_string(),
                        index: q,
                        width,
                    });
                }
            }
            if ops[..i].contains(&q) {
                return Err(Error::DuplicateOperand {
                    gate: self.to_string(),
                    index: q,
                });
            }
        }
        Ok(())
    }

    /// The Hermitian adjoint.
    pub fn dagger(&self) -> Gate {
        match *self {
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    /// Applies `f` to every operand.
    pub fn map_wires(&self, mut f: impl FnMut(Wire) -> Wire) -> Gate {
        match *self {
            Gate::Not(q) => Gate::Not(f(q)),
            Gate::Cnot(c, t) => Gate::Cnot(f(c), f(t)),
            Gate::Toffoli(a, b, t) => Gate::Toffoli(f(a), f(b), f(t)),
            Gate::H(q) => Gate::H(f(q)),
            Gate::T(q) => Gate::T(f(q)),
            Gate::Tdg(q) => Gate::Tdg(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind())?;
        for (i, q) in self.operands().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str(")")
    }
}

/// Named, ordered wire groups. Iteration follows insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegisterMap {
    entries: IndexMap<String, Vec<Wire>>,
}

impl RegisterMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a register. Names must be unique and wires within the register
    /// distinct; cross-register checks happen in [`Circuit::new`].
    pub fn insert(&mut self, name: impl Into<String>, wires: Vec<Wire>) -> Result<()> {
        let name = name.into();
        if self.entries.contains_key(&name) {
            return Err(Error::InvalidRelabeling(format!(
                "register `{name}` declared twice"
            )));
        }
        for (i, &w) in wires.iter().enumerate() {
            if wires[..i].contains(&w) {
                return Err(Error::RegisterRepeatsWire { name, index: w });
            }
        }
        self.entries.insert(name, wires);
        Ok(())
    }

    /// Builder-style [`insert`](Self::insert).
    pub fn with(mut self, name: impl Into<String>, wires: Vec<Wire>) -> Result<Self> {
        self.insert(name, wires)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&[Wire]> {
        self.entries.get(name).map(Vec::as_slice)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[Wire])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks the map against a circuit width: indices in range, registers
    /// pairwise disjoint, and every wire in exactly one register.
    pub fn validate(&self, width: usize) -> Result<()> {
        let mut owner: Vec<Option<&str>> = vec![None; width];
        for (name, wires) in self.iter() {
            for (i, &w) in wires.iter().enumerate() {
                if w >= width {
                    return Err(Error::RegisterOutOfRange {
                        name: name.to_string(),
                        index: w,
                        width,
                    });
                }
                if wires[..i].contains(&w) {
                    return Err(Error::RegisterRepeatsWire {
                        name: name.to_string(),
                        index: w,
                    });
                }
                if let Some(other) = owner[w] {
                    return Err(Error::RegisterOverlap {
                        name: name.to_string(),
                        other: other.to_string(),
                        index: w,
                    });
                }
                owner[w] = Some(name);
            }
        }
        match owner.iter().position(Option::is_none) {
            Some(index) => Err(Error::UncoveredWire { index }),
            None => Ok(()),
        }
    }
}

/// An ordered gate sequence over a fixed number of wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    registers: RegisterMap,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize, registers: RegisterMap) -> Result<Self> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        registers.validate(width)?;
        Ok(Circuit {
            width,
            registers,
            gates: Vec::new(),
        })
    }

    /// A circuit whose wires all belong to one register `q`.
    pub fn anonymous(width: usize) -> Result<Self> {
        let regs = RegisterMap::new().with("q", (0..width).collect())?;
        Circuit::new(width, regs)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn registers(&self) -> &RegisterMap {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Result<&[Wire]> {
        self.registers
            .get(name)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(Some(self.width))?;
        self.gates.push(gate);
        Ok(())
    }

    /// Consuming form of [`push`](Self::push).
    pub fn append(mut self, gate: Gate) -> Result<Self> {
        self.push(gate)?;
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    /// Number of T and T† gates.
    pub fn t_count(&self) -> usize {
        self.count(GateKind::T) + self.count(GateKind::Tdg)
    }

    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(|g| g.kind().is_classical())
    }

    /// The logical reverse: gates in reverse order, each replaced by its dagger.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::dagger).collect(),
        }
    }

    /// `self` followed by `second`. Both must have the same width and
    /// register map.
    pub fn compose(&self, second: &Circuit) -> Result<Circuit> {
        if self.width != second.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: second.width,
            });
        }
        if self.registers != second.registers {
            return Err(Error::RegisterMismatch);
        }
        let mut out = self.clone();
        out.gates.extend_from_slice(&second.gates);
        Ok(out)
    }

    /// `self` followed by `second`, where wire `w` of `second` is placed on
    /// wire `relabel[w]` of `self`. The result keeps `self`'s registers.
    pub fn compose_relabeled(&self, second: &Circuit, relabel: &[Wire]) -> Result<Circuit> {
        let mut out = self.clone();
        out.append_relabeled(second, relabel)?;
        Ok(out)
    }

    /// In-place form of [`compose_relabeled`](Self::compose_relabeled).
    pub fn append_relabeled(&mut self, second: &Circuit, relabel: &[Wire]) -> Result<()> {
        if relabel.len() != second.width {
            return Err(Error::InvalidRelabeling(format!(
                "map has {} entries, circuit has {} wires",
                relabel.len(),
                second.width
            )));
        }
        let mut seen = vec![false; self.width];
        for &w in relabel {
            if w >= self.width {
                return Err(Error::InvalidRelabeling(format!(
                    "target wire {w} out of range for width {}",
                    self.width
                )));
            }
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::InvalidRelabeling(format!(
                    "wire {w} is targeted twice"
                )));
            }
        }
        self.gates
            .extend(second.gates.iter().map(|g| g.map_wires(|q| relabel[q])));
        Ok(())
    }

    /// Same gates over a wider wire set with a replaced register map.
    pub(crate) fn widened(&self, width: usize, registers: RegisterMap) -> Result<Circuit> {
        let mut out = Circuit::new(width, registers)?;
        out.extend(self.gates.iter().copied())?;
        Ok(out)
    }

    /// Replaces each gate by the output of `f`, keeping wires and registers.
    pub fn flat_map_gates<I, F>(&self, mut f: F) -> Circuit
    where
        F: FnMut(&Gate) -> I,
        I: IntoIterator<Item = Gate>,
    {
        Circuit {
            width: self.width,
            registers: self.registers.clone(),
            gates: self.gates.iter().flat_map(&mut f).collect(),
        }
    }
}
