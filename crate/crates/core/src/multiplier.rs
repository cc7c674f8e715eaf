//! Shift-and-add multiplier built from one Toffoli array and `n − 1`
//! conditional adders.
//!
//! Layout: `b` on wires `0..n`, `a` on `n..2n`, product `p` on `2n..=4n`.
//! With `p` prepared at 0 the circuit leaves `a·b` on `p_0..p_{2n-1}`,
//! `p_{2n} = 0`, and `a`, `b` unchanged.

use crate::circuit::{Circuit, Gate, RegisterMap, Wire};
use crate::ctrl_add::{build_ctrl_add, check_width};
use crate::error::{Error, Result};
use crate::simulate::{run_state, BasisState};
use crate::synthesis::{BlockRecorder, Synthesis};
use crate::verify::Mismatch;

/// Largest operand width the arithmetic oracle accepts.
pub const ORACLE_MAX_WIDTH: usize = 64;

#[derive(Debug, Clone, Copy)]
struct Layout {
    n: usize,
}

impl Layout {
    fn b(self, i: usize) -> Wire {
        i
    }
    fn a(self, i: usize) -> Wire {
        self.n + i
    }
    fn p(self, i: usize) -> Wire {
        2 * self.n + i
    }
    fn width(self) -> usize {
        4 * self.n + 1
    }
    fn registers(self) -> RegisterMap {
        let n = self.n;
        RegisterMap::new()
            .with("b", (0..n).map(|i| self.b(i)).collect())
            .and_then(|r| r.with("a", (0..n).map(|i| self.a(i)).collect()))
            .and_then(|r| r.with("p", (0..=2 * n).map(|i| self.p(i)).collect()))
            .expect("multiplier registers are well formed")
    }
}

pub fn build_multiplier(n: usize) -> Result<Synthesis> {
    check_width(n)?;
    let l = Layout { n };
    let mut c = Circuit::new(l.width(), l.registers())?;
    let mut rec = BlockRecorder::new();

    // partial product a·b_0 straight into p_0..p_{n-1}
    for i in 0..n {
        c.push(Gate::Toffoli(l.b(0), l.a(i), l.p(i)))?;
    }
    rec.close("toffoli-array", &c);

    let adder = build_ctrl_add(n)?.circuit;
    let reg = |name: &str| adder.register(name).expect("adder register");
    let (a_ctrl, a_a, a_b, a_anc) = (reg("ctrl"), reg("a"), reg("b"), reg("anc"));

    for j in 1..n {
        let mut relabel = vec![0; adder.width()];
        relabel[a_ctrl[0]] = l.b(j);
        for i in 0..n {
            relabel[a_a[i]] = l.a(i);
            relabel[a_b[i]] = l.p(j + i);
        }
        relabel[a_anc[0]] = l.p(n + j);
        relabel[a_anc[1]] = l.p(n + j + 1);
        c.append_relabeled(&adder, &relabel)?;
        rec.close(format!("ctrl-add-{j}"), &c);
    }

    Ok(Synthesis {
        circuit: c,
        zeroed: vec!["p".into()],
        result: "p".into(),
        blocks: rec.blocks,
    })
}

/// Closed-form T-count of the expanded multiplier: `21n² − 14`.
pub fn multiplier_tcount(n: usize) -> Result<u64> {
    check_width(n)?;
    let n = n as u64;
    Ok(21 * n * n - 14)
}

/// Total wires: `4n + 1`.
pub fn multiplier_qubits(n: usize) -> Result<u64> {
    check_width(n)?;
    Ok(4 * n as u64 + 1)
}

/// Zero-prepared wires: `2n + 1`.
pub fn multiplier_ancillae(n: usize) -> Result<u64> {
    check_width(n)?;
    Ok(2 * n as u64 + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultOracle {
    pub n: usize,
    pub a: u128,
    pub b: u128,
    pub p: u128,
}

impl MultOracle {
    pub fn new(n: usize, a: u128, b: u128) -> Result<Self> {
        check_width(n)?;
        if n > ORACLE_MAX_WIDTH {
            return Err(Error::Domain(format!("oracle supports n <= {ORACLE_MAX_WIDTH}")));
        }
        if a >> n != 0 || b >> n != 0 {
            return Err(Error::Domain(format!("operands must fit in {n} bits")));
        }
        Ok(MultOracle { n, a, b, p: a * b })
    }

    /// Bit `i` of the product.
    pub fn p_bit(&self, i: usize) -> bool {
        i < 128 && self.p >> i & 1 == 1
    }

    pub fn expected_state(&self) -> BasisState {
        let l = Layout { n: self.n };
        let mut s = BasisState::zeros(l.width());
        let b: Vec<_> = (0..self.n).map(|i| l.b(i)).collect();
        let a: Vec<_> = (0..self.n).map(|i| l.a(i)).collect();
        let p: Vec<_> = (0..=2 * self.n).map(|i| l.p(i)).collect();
        s.write(&b, self.b);
        s.write(&a, self.a);
        s.write(&p, self.p);
        s
    }
}

/// The input state for `(a, b)` with `p` at 0.
pub fn input_state(n: usize, a: u128, b: u128) -> BasisState {
    let l = Layout { n };
    let mut s = BasisState::zeros(l.width());
    for i in 0..n {
        s.set(l.b(i), b >> i & 1 == 1);
        s.set(l.a(i), a >> i & 1 == 1);
    }
    s
}

pub fn check_case(circuit: &Circuit, n: usize, a: u128, b: u128) -> Result<Option<Mismatch>> {
    let oracle = MultOracle::new(n, a, b)?;
    let input = input_state(n, a, b);
    let out = run_state(circuit, &input)?;
    let expected = oracle.expected_state();
    Ok((out != expected).then(|| Mismatch {
        input: format!("a={a} b={b}"),
        expected: expected.to_bit_string(),
        actual: out.to_bit_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::clifford_t::expand_toffolis;
    use crate::simulate::run_reversible;

    #[test]
    fn rejects_narrow_widths() {
        assert!(matches!(
            build_multiplier(1),
            Err(Error::UnsupportedWidth { n: 1, .. })
        ));
        assert!(multiplier_tcount(1).is_err());
        assert!(multiplier_qubits(0).is_err());
    }

    #[test]
    fn four_bit_structure() {
        let s = build_multiplier(4).unwrap();
        let labels: Vec<&str> = s.blocks.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(
            labels,
            ["toffoli-array", "ctrl-add-1", "ctrl-add-2", "ctrl-add-3"]
        );
        assert_eq!(s.blocks[0].gates, 0..4);
        let adder_len = build_ctrl_add(4).unwrap().circuit.len();
        for w in s.blocks.windows(2) {
            assert_eq!(w[0].gates.end, w[1].gates.start);
        }
        for b in &s.blocks[1..] {
            assert_eq!(b.gates.len(), adder_len);
        }
        assert_eq!(s.blocks.last().unwrap().gates.end, s.circuit.len());
        assert_eq!(s.circuit.width(), 17);
        assert_eq!(s.ancilla_count(), 9);
        assert_eq!(s.circuit.count(GateKind::Toffoli), 46);
    }

    #[test]
    fn four_bit_examples() {
        let c = build_multiplier(4).unwrap().circuit;
        let p = c.register("p").unwrap();
        let out = run_reversible(&c, &input_state(4, 3, 5)).unwrap();
        assert_eq!(out.read(p), 15);
        assert_eq!(out.read(c.register("a").unwrap()), 3);
        assert_eq!(out.read(c.register("b").unwrap()), 5);

        for a in 0..16 {
            let out = run_reversible(&c, &input_state(4, a, 0)).unwrap();
            assert_eq!(out.read(p), 0);
        }
        let out = run_reversible(&c, &input_state(4, 11, 13)).unwrap();
        assert_eq!(out.read(p), 143);
    }

    #[test]
    fn exhaustive_three_bit() {
        let c = build_multiplier(3).unwrap().circuit;
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(check_case(&c, 3, a, b).unwrap(), None);
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(multiplier_tcount(4).unwrap(), 322);
        assert_eq!(multiplier_tcount(8).unwrap(), 1330);
        assert_eq!(multiplier_tcount(1024).unwrap(), 22020082);
        assert_eq!(multiplier_qubits(4).unwrap(), 17);
        assert_eq!(multiplier_qubits(128).unwrap(), 513);
        assert_eq!(multiplier_ancillae(4).unwrap(), 9);
        for n in 2..40u64 {
            assert_eq!(
                multiplier_tcount(n as usize).unwrap(),
                7 * n + (n - 1) * (21 * n + 14)
            );
        }
        let s = build_multiplier(8).unwrap();
        assert_eq!(expand_toffolis(&s.circuit).t_count(), 1330);
    }
}
