//! Compute, copy, uncompute.
//!
//! [`bennett_wrap`] runs a circuit, copies one register onto fresh wires
//! with CNOTs, then runs the inverse circuit. Every original wire returns to
//! its input value and the fresh register keeps the result.

use crate::circuit::{Circuit, Gate, RegisterMap, Wire};
use crate::error::{Error, Result};

/// What a wrap will do, before any gates are emitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BennettPlan<'a> {
    pub source: &'a Circuit,
    pub result_register: String,
    pub copy_register: String,
    /// Fresh wires, index-aligned with the result register.
    pub copy_wires: Vec<Wire>,
}

impl<'a> BennettPlan<'a> {
    pub fn new(source: &'a Circuit, result_register: &str) -> Result<Self> {
        let len = source.register(result_register)?.len();
        let copy_register = fresh_name(source.registers(), "y");
        let start = source.width();
        Ok(BennettPlan {
            source,
            result_register: result_register.to_string(),
            copy_register,
            copy_wires: (start..start + len).collect(),
        })
    }

    pub fn build(&self) -> Result<Circuit> {
        let result = self.source.register(&self.result_register)?;
        let mut registers = self.source.registers().clone();
        registers.insert(self.copy_register.clone(), self.copy_wires.clone())?;
        let width = self.source.width() + self.copy_wires.len();

        let mut out = self.source.widened(width, registers)?;
        for (&from, &to) in result.iter().zip(&self.copy_wires) {
            out.push(Gate::Cnot(from, to))?;
        }
        out.extend(self.source.inverse().gates().iter().copied())?;
        Ok(out)
    }
}

fn fresh_name(registers: &RegisterMap, base: &str) -> String {
    if !registers.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|name| !registers.contains(name))
        .expect("some suffix is free")
}

/// Wraps `source`, copying `result_register` onto a new register (named `y`
/// unless taken) appended above the existing wires.
pub fn bennett_wrap(source: &Circuit, result_register: &str) -> Result<Circuit> {
    BennettPlan::new(source, result_register)?.build()
}

/// Closed-form T-count of the depth-optimized multiplier after its garbage
/// is removed with a compute/copy/uncompute wrap: `42n² − 48n + 48`.
pub fn babu_garbageless_tcount(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let n = n as u64;
    Ok(42 * n * n - 48 * n + 48)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford_t::expand_toffolis;
    use crate::multiplier::{build_multiplier, input_state};
    use crate::simulate::{run_reversible, BasisState};

    #[test]
    fn wrap_of_empty_is_one_copy() {
        let src = Circuit::anonymous(1).unwrap();
        let w = bennett_wrap(&src, "q").unwrap();
        assert_eq!(w.width(), 2);
        assert_eq!(w.gates(), &[Gate::Cnot(0, 1)]);
        assert_eq!(w.register("y").unwrap(), &[1]);
        for bit in ["00", "10"] {
            let out = run_reversible(&w, &BasisState::from_bit_string(bit).unwrap()).unwrap();
            assert_eq!(out.get(1), out.get(0));
        }
    }

    #[test]
    fn unknown_register() {
        let src = Circuit::anonymous(1).unwrap();
        assert_eq!(
            bennett_wrap(&src, "p").unwrap_err(),
            Error::UnknownRegister("p".into())
        );
    }

    #[test]
    fn copy_name_avoids_collisions() {
        let regs = RegisterMap::new()
            .with("y", vec![0])
            .unwrap()
            .with("y1", vec![1])
            .unwrap();
        let src = Circuit::new(2, regs).unwrap();
        let plan = BennettPlan::new(&src, "y").unwrap();
        assert_eq!(plan.copy_register, "y2");
        assert_eq!(plan.copy_wires, vec![2]);
    }

    #[test]
    fn wrapped_two_bit_multiplier() {
        let m = build_multiplier(2).unwrap().circuit;
        let w = bennett_wrap(&m, "p").unwrap();
        assert_eq!(w.width(), m.width() + 5);
        assert_eq!(expand_toffolis(&w).t_count(), 140);
        let y = w.register("y").unwrap().to_vec();
        for a in 0..4 {
            for b in 0..4 {
                let mut input = BasisState::zeros(w.width());
                let base = input_state(2, a, b);
                for k in 0..m.width() {
                    input.set(k, base.get(k));
                }
                let out = run_reversible(&w, &input).unwrap();
                for k in 0..m.width() {
                    assert_eq!(out.get(k), input.get(k));
                }
                assert_eq!(out.read(&y), a * b);
            }
        }
    }

    #[test]
    fn garbageless_closed_form() {
        assert_eq!(babu_garbageless_tcount(4).unwrap(), 528);
        assert_eq!(babu_garbageless_tcount(16).unwrap(), 10032);
        assert_eq!(babu_garbageless_tcount(2048).unwrap(), 176062512);
        assert!(babu_garbageless_tcount(1).is_err());
    }
}
