//! Toffoli expansion into Clifford+T.
//!
//! The template is the 7-T, 16-gate realization that uses only H, T, T† and
//! CNOT. It implements the Toffoli unitary exactly (no global phase).

use crate::circuit::{Circuit, Gate, Wire};
use crate::error::{Error, Result};
use crate::simulate::{max_deviation, SimConfig};

/// A gate list over three abstract wires: 0 = first control,
/// 1 = second control, 2 = target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTemplate {
    gates: Vec<Gate>,
}

const C1: Wire = 0;
const C2: Wire = 1;
const TGT: Wire = 2;

impl DecompositionTemplate {
    /// The 7-T Toffoli, column by column.
    pub fn toffoli() -> Self {
        DecompositionTemplate {
            gates: vec![
                Gate::H(TGT),
                Gate::T(C1),
                Gate::T(C2),
                Gate::T(TGT),
                Gate::Cnot(C2, C1),
                Gate::Cnot(TGT, C2),
                Gate::Cnot(C1, TGT),
                Gate::Tdg(C2),
                Gate::Cnot(C1, C2),
                Gate::Tdg(C1),
                Gate::Tdg(C2),
                Gate::T(TGT),
                Gate::Cnot(TGT, C2),
                Gate::Cnot(C1, TGT),
                Gate::Cnot(C2, C1),
                Gate::H(TGT),
            ],
        }
    }

    /// A template from an arbitrary gate list over wires 0..3.
    pub fn from_gates(gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(Some(3))?;
        }
        Ok(DecompositionTemplate { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn t_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::T(_) | Gate::Tdg(_)))
            .count()
    }

    /// The template placed on concrete wires.
    pub fn instantiate(&self, c1: Wire, c2: Wire, target: Wire) -> impl Iterator<Item = Gate> + '_ {
        let wires = [c1, c2, target];
        self.gates.iter().map(move |g| g.map_wires(|q| wires[q]))
    }

    /// The template as a standalone 3-wire circuit.
    pub fn to_circuit(&self) -> Circuit {
        let mut c = Circuit::anonymous(3).expect("width 3 is valid");
        c.extend(self.gates.iter().copied())
            .expect("template gates were validated");
        c
    }
}

/// Replaces every Toffoli, in place, with the 7-T template on its operands.
pub fn expand_toffolis(circuit: &Circuit) -> Circuit {
    expand_with(circuit, &DecompositionTemplate::toffoli())
}

pub fn expand_with(circuit: &Circuit, template: &DecompositionTemplate) -> Circuit {
    circuit.flat_map_gates(|g| match *g {
        Gate::Toffoli(c1, c2, t) => template.instantiate(c1, c2, t).collect::<Vec<_>>(),
        other => vec![other],
    })
}

/// True iff the template's 8×8 unitary is within `tol` (max entrywise
/// modulus) of the Toffoli unitary.
pub fn toffoli_unitary_check(template: &DecompositionTemplate, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let reference = Circuit::anonymous(3)?.append(Gate::Toffoli(C1, C2, TGT))?;
    let dev = max_deviation(&template.to_circuit(), &reference, false, &SimConfig::default())?;
    Ok(dev <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    /// Independent oracle: build the 8×8 matrix of a 3-wire gate list by
    /// explicit matrix products and compare against the Toffoli permutation.
    fn dense_unitary(gates: &[Gate]) -> [[Complex64; 8]; 8] {
        let zero = Complex64::new(0.0, 0.0);
        let mut u = [[zero; 8]; 8];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = Complex64::new(1.0, 0.0);
        }
        for g in gates {
            let mut m = [[zero; 8]; 8];
            for col in 0..8usize {
                let bit = |q: Wire| col >> q & 1;
                let w = std::f64::consts::FRAC_PI_4;
                match *g {
                    Gate::Cnot(c, t) => m[col ^ (bit(c) << t)][col] = Complex64::new(1.0, 0.0),
                    Gate::H(q) => {
                        let s = std::f64::consts::FRAC_1_SQRT_2;
                        m[col & !(1 << q)][col] += Complex64::new(s, 0.0);
                        let sign = if bit(q) == 1 { -s } else { s };
                        m[col | (1 << q)][col] += Complex64::new(sign, 0.0);
                    }
                    Gate::T(q) => m[col][col] = Complex64::from_polar(1.0, w * bit(q) as f64),
                    Gate::Tdg(q) => m[col][col] = Complex64::from_polar(1.0, -w * bit(q) as f64),
                    _ => unreachable!(),
                }
            }
            let mut next = [[zero; 8]; 8];
            for r in 0..8 {
                for c in 0..8 {
                    next[r][c] = (0..8).map(|k| m[r][k] * u[k][c]).sum();
                }
            }
            u = next;
        }
        u
    }

    fn toffoli_deviation(gates: &[Gate]) -> f64 {
        let u = dense_unitary(gates);
        let mut dev: f64 = 0.0;
        for col in 0..8usize {
            let image = if col & 0b011 == 0b011 { col ^ 0b100 } else { col };
            for row in 0..8 {
                let expect = if row == image { 1.0 } else { 0.0 };
                dev = dev.max((u[row][col] - Complex64::new(expect, 0.0)).norm());
            }
        }
        dev
    }

    #[test]
    fn template_matches_toffoli_by_matrix_products() {
        let t = DecompositionTemplate::toffoli();
        assert_eq!(t.t_count(), 7);
        assert!(toffoli_deviation(t.gates()) < 1e-12);
        assert!(toffoli_unitary_check(&t, 1e-10).unwrap());
    }

    #[test]
    fn single_mutation_is_detected() {
        let t = DecompositionTemplate::toffoli();
        for (i, g) in t.gates().iter().enumerate() {
            if let Gate::T(q) = *g {
                let mut gates = t.gates().to_vec();
                gates[i] = Gate::Tdg(q);
                let bad = DecompositionTemplate::from_gates(gates).unwrap();
                assert!(toffoli_deviation(bad.gates()) > 1e-3);
                assert!(!toffoli_unitary_check(&bad, 1e-10).unwrap(), "mutation at {i}");
                // Entries are bounded by 1, so tolerance 4 accepts anything.
                assert!(toffoli_unitary_check(&bad, 4.0).unwrap());
            }
        }
    }

    #[test]
    fn expansion_counts() {
        let c = Circuit::anonymous(4)
            .unwrap()
            .append(Gate::Toffoli(3, 0, 1))
            .unwrap();
        let e = expand_toffolis(&c);
        assert_eq!(e.count(crate::circuit::GateKind::Toffoli), 0);
        assert_eq!(e.t_count(), 7);
        assert_eq!(e.len(), 16);

        let plain = Circuit::anonymous(2)
            .unwrap()
            .append(Gate::Cnot(0, 1))
            .unwrap()
            .append(Gate::T(1))
            .unwrap();
        assert_eq!(expand_toffolis(&plain), plain);
        assert_eq!(expand_toffolis(&e), e);
    }

    #[test]
    fn nonpositive_tolerance_is_rejected() {
        assert!(toffoli_unitary_check(&DecompositionTemplate::toffoli(), 0.0).is_err());
    }
}
