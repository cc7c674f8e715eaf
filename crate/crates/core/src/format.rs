//! Text formats: a JSON netlist and an OpenQASM 2.0 listing.
//!
//! JSON schema: `{"width": W, "registers": {name: [wires]}, "gates": [{"kind": K, "operands": [..]}]}`
//! with kinds `NOT CNOT TOFFOLI H T TDG S SDG`. The QASM dialect declares a
//! single register `q[W]` and allows `ccx`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind, RegisterMap, Wire};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Qasm,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "qasm" => Ok(Format::Qasm),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GateRecord {
    kind: GateKind,
    operands: Vec<Wire>,
}

#[derive(Serialize, Deserialize)]
struct Netlist {
    width: usize,
    registers: RegisterMap,
    gates: Vec<GateRecord>,
}

pub fn serialize(circuit: &Circuit, format: Format) -> String {
    match format {
        Format::Json => to_json(circuit),
        Format::Qasm => to_qasm(circuit),
    }
}

/// Parses either format, choosing by the first non-blank character.
pub fn parse(text: &str) -> Result<Circuit> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_qasm(text)
    }
}

pub fn to_json(circuit: &Circuit) -> String {
    let netlist = Netlist {
        width: circuit.width(),
        registers: circuit.registers().clone(),
        gates: circuit
            .gates()
            .iter()
            .map(|g| GateRecord {
                kind: g.kind(),
                operands: g.operands().to_vec(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&netlist).expect("netlist is always serializable");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<Circuit> {
    let netlist: Netlist = serde_json::from_str(text)?;
    let mut circuit = Circuit::new(netlist.width, netlist.registers)?;
    for rec in netlist.gates {
        circuit.push(Gate::from_parts(rec.kind, &rec.operands)?)?;
    }
    Ok(circuit)
}

fn qasm_name(kind: GateKind) -> &'static str {
    match kind {
        GateKind::Not => "x",
        GateKind::Cnot => "cx",
        GateKind::Toffoli => "ccx",
        GateKind::H => "h",
        GateKind::T => "t",
        GateKind::Tdg => "tdg",
        GateKind::S => "s",
        GateKind::Sdg => "sdg",
    }
}

pub fn to_qasm(circuit: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.width()).unwrap();
    for g in circuit.gates() {
        out.push_str(qasm_name(g.kind()));
        for (i, q) in g.operands().iter().enumerate() {
            out.push_str(if i == 0 { " " } else { "," });
            write!(out, "q[{q}]").unwrap();
        }
        out.push_str(";\n");
    }
    out
}

/// Reads the dialect written by [`to_qasm`]. Register names are not
/// recoverable, so the result uses a single register `q`.
pub fn from_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}: `{raw}`", lineno + 1));
        let stmt = line.strip_suffix(';').ok_or_else(|| err("missing `;`"))?;
        let (head, args) = stmt
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("expected `<op> <args>`"))?;
        if head == "qreg" {
            if circuit.is_some() {
                return Err(err("only one qreg is supported"));
            }
            let width = parse_wire(args.trim(), "q").ok_or_else(|| err("bad qreg"))?;
            circuit = Some(Circuit::anonymous(width)?);
            continue;
        }
        let kind = GateKind::ALL
            .into_iter()
            .find(|k| qasm_name(*k) == head)
            .ok_or_else(|| err("unknown gate"))?;
        let operands = args
            .split(',')
            .map(|a| parse_wire(a.trim(), "q"))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err("bad operand"))?;
        let c = circuit.as_mut().ok_or_else(|| err("gate before qreg"))?;
        c.push(Gate::from_parts(kind, &operands)?)?;
    }
    circuit.ok_or_else(|| Error::Parse("no qreg declaration".into()))
}

fn parse_wire(s: &str, reg: &str) -> Option<usize> {
    s.strip_prefix(reg)?
        .strip_prefix('[')?
        .strip_suffix(']')?
        .parse()
        .ok()
}
