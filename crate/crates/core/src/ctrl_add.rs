//! Garbageless conditional adder with no input carry.
//!
//! For `ctrl = 1` the circuit maps `b ← a + b` (low `n` bits on the `b`
//! register, carry-out on `anc[0]`); for `ctrl = 0` it leaves every wire
//! alone. Both ancillae must start at 0. The circuit uses `3n + 2` Toffolis
//! and `4n − 6` CNOTs on `2n + 3` wires.
//!
//! Wire layout: `ctrl` on wire 0, then `b_i` and `a_i` interleaved
//! (`b_i = 2i + 1`, `a_i = 2i + 2`), then the two ancillae.

use crate::circuit::{Circuit, Gate, RegisterMap, Wire};
use crate::error::{Error, Result};
use crate::simulate::{run_state, BasisState};
use crate::synthesis::{BlockRecorder, Synthesis};
use crate::verify::Mismatch;

pub const MIN_WIDTH: usize = 2;

/// Largest operand width the arithmetic oracle accepts.
pub const ORACLE_MAX_WIDTH: usize = 127;

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n < MIN_WIDTH {
        return Err(Error::UnsupportedWidth { n, min: MIN_WIDTH });
    }
    Ok(())
}

/// Wire positions of an `n`-bit adder.
#[derive(Debug, Clone, Copy)]
struct Layout {
    n: usize,
}

impl Layout {
    const CTRL: Wire = 0;

    fn b(self, i: usize) -> Wire {
        2 * i + 1
    }

    /// `a_0..a_{n-1}` are the addend; `a_n` and `a_{n+1}` are the two
    /// ancillae, which the construction treats as an extension of `a`.
    fn a(self, i: usize) -> Wire {
        debug_assert!(i <= self.n + 1);
        if i < self.n {
            2 * i + 2
        } else {
            2 * self.n + 1 + (i - self.n)
        }
    }

    fn width(self) -> usize {
        2 * self.n + 3
    }

    fn registers(self) -> RegisterMap {
        let n = self.n;
        RegisterMap::new()
            .with("ctrl", vec![Self::CTRL])
            .and_then(|r| r.with("b", (0..n).map(|i| self.b(i)).collect()))
            .and_then(|r| r.with("a", (0..n).map(|i| self.a(i)).collect()))
            .and_then(|r| r.with("anc", vec![self.a(n), self.a(n + 1)]))
            .expect("adder registers are well formed")
    }
}

/// Builds the `n`-bit conditional adder, step by step.
pub fn build_ctrl_add(n: usize) -> Result<Synthesis> {
    check_width(n)?;
    let l = Layout { n };
    let ctrl = Layout::CTRL;
    let mut c = Circuit::new(l.width(), l.registers())?;
    let mut rec = BlockRecorder::new();

    // 1: b_i ^= a_i
    for i in 1..n {
        c.push(Gate::Cnot(l.a(i), l.b(i)))?;
    }
    rec.close("step1", &c);

    // 2: seed the carry-out with ctrl·a_{n-1}, then chain a_{i+1} ^= a_i
    c.push(Gate::Toffoli(ctrl, l.a(n - 1), l.a(n)))?;
    for i in (1..=n - 2).rev() {
        c.push(Gate::Cnot(l.a(i), l.a(i + 1)))?;
    }
    rec.close("step2", &c);

    // 3: ripple the carries up the a register
    for i in 0..=n - 2 {
        c.push(Gate::Toffoli(l.b(i), l.a(i), l.a(i + 1)))?;
    }
    rec.close("step3", &c);

    // 4: finish the carry-out through the second ancilla and fix b_{n-1}
    c.push(Gate::Toffoli(l.b(n - 1), l.a(n - 1), l.a(n + 1)))?;
    c.push(Gate::Toffoli(ctrl, l.a(n + 1), l.a(n)))?;
    c.push(Gate::Toffoli(l.b(n - 1), l.a(n - 1), l.a(n + 1)))?;
    c.push(Gate::Toffoli(ctrl, l.a(n - 1), l.b(n - 1)))?;
    rec.close("step4", &c);

    // 5: uncompute carries from the top while writing conditional sums
    for i in (0..=n - 2).rev() {
        c.push(Gate::Toffoli(l.b(i), l.a(i), l.a(i + 1)))?;
        c.push(Gate::Toffoli(ctrl, l.a(i), l.b(i)))?;
    }
    rec.close("step5", &c);

    // 6: undo the a-chain of step 2
    for i in 1..=n - 2 {
        c.push(Gate::Cnot(l.a(i), l.a(i + 1)))?;
    }
    rec.close("step6", &c);

    // 7: undo step 1
    for i in 1..n {
        c.push(Gate::Cnot(l.a(i), l.b(i)))?;
    }
    rec.close("step7", &c);

    Ok(Synthesis {
        circuit: c,
        zeroed: vec!["anc".into()],
        result: "b".into(),
        blocks: rec.blocks,
    })
}

/// Closed-form T-count of the expanded adder: `21n + 14`.
pub fn ctrl_add_tcount(n: usize) -> Result<u64> {
    check_width(n)?;
    Ok(21 * n as u64 + 14)
}

/// Reference arithmetic for the conditional adder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtrlAddOracle {
    pub n: usize,
    pub ctrl: bool,
    pub a: u128,
    pub b: u128,
    /// `c_0..c_n`
    pub carries: Vec<bool>,
    /// `s_0..s_n`
    pub sums: Vec<bool>,
}

impl CtrlAddOracle {
    pub fn new(n: usize, ctrl: bool, a: u128, b: u128) -> Result<Self> {
        check_width(n)?;
        if n > ORACLE_MAX_WIDTH {
            return Err(Error::Domain(format!("oracle supports n <= {ORACLE_MAX_WIDTH}")));
        }
        let mask = (1u128 << n) - 1;
        if a & !mask != 0 || b & !mask != 0 {
            return Err(Error::Domain(format!("operands must fit in {n} bits")));
        }
        let bit = |x: u128, i: usize| x >> i & 1 == 1;
        let mut carries = vec![false; n + 1];
        for i in 1..=n {
            let (ai, bi, ci) = (bit(a, i - 1), bit(b, i - 1), carries[i - 1]);
            carries[i] = (ai & bi) ^ (bi & ci) ^ (ai & ci);
        }
        let mut sums: Vec<bool> = (0..n)
            .map(|i| {
                if ctrl {
                    bit(a, i) ^ bit(b, i) ^ carries[i]
                } else {
                    bit(b, i)
                }
            })
            .collect();
        sums.push(ctrl && carries[n]);
        Ok(CtrlAddOracle {
            n,
            ctrl,
            a,
            b,
            carries,
            sums,
        })
    }

    /// `s` read as an `(n + 1)`-bit integer.
    pub fn sum_value(&self) -> u128 {
        self.sums
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &s)| acc | (s as u128) << i)
    }

    pub fn carry_out(&self) -> bool {
        self.sums[self.n]
    }

    /// The full expected output state of a circuit with the standard layout.
    pub fn expected_state(&self) -> BasisState {
        let l = Layout { n: self.n };
        let mut s = BasisState::zeros(l.width());
        s.set(Layout::CTRL, self.ctrl);
        for i in 0..self.n {
            s.set(l.b(i), self.sums[i]);
            s.set(l.a(i), self.a >> i & 1 == 1);
        }
        s.set(l.a(self.n), self.carry_out());
        s
    }
}

/// The input state for `(ctrl, a, b)` with both ancillae at 0.
pub fn input_state(n: usize, ctrl: bool, a: u128, b: u128) -> BasisState {
    let l = Layout { n };
    let mut s = BasisState::zeros(l.width());
    s.set(Layout::CTRL, ctrl);
    for i in 0..n {
        s.set(l.b(i), b >> i & 1 == 1);
        s.set(l.a(i), a >> i & 1 == 1);
    }
    s
}

/// Runs `circuit` (an `n`-bit adder layout) on one input and compares the
/// whole output state with the oracle.
pub fn check_case(circuit: &Circuit, n: usize, ctrl: bool, a: u128, b: u128) -> Result<Option<Mismatch>> {
    let oracle = CtrlAddOracle::new(n, ctrl, a, b)?;
    let input = input_state(n, ctrl, a, b);
    let out = run_state(circuit, &input)?;
    let expected = oracle.expected_state();
    Ok((out != expected).then(|| Mismatch {
        input: format!("ctrl={} a={a} b={b}", ctrl as u8),
        expected: expected.to_bit_string(),
        actual: out.to_bit_string(),
    }))
}
