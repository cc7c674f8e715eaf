use qarith::clifford_t::expand_toffolis;
use qarith::ctrl_add::{self, CtrlAddOracle};
use qarith::format::{from_json, serialize, to_json, Format};
use qarith::simulate::{run_reversible, run_reversible_index, truth_table, SimConfig};
use qarith::verify::{verify_exhaustive, verify_sampled, Target};
use qarith::{build_ctrl_add, build_multiplier, Circuit, GateKind};

#[test]
fn adder_gate_census_up_to_64() {
    for n in 2..=64 {
        let c = build_ctrl_add(n).unwrap().circuit;
        assert_eq!(c.width(), 2 * n + 3);
        assert_eq!(c.count(GateKind::Toffoli), 3 * n + 2);
        assert_eq!(c.count(GateKind::Cnot), 4 * n - 6);
        assert_eq!(c.len(), 7 * n - 4);
    }
}

#[test]
fn adder_is_bijective_including_dirty_ancillae() {
    let cfg = SimConfig::default();
    for n in 2..=5 {
        let c = build_ctrl_add(n).unwrap().circuit;
        assert_eq!(truth_table(&c, &cfg).unwrap().len(), 1 << (2 * n + 3));
    }
}

/// The first ancilla is only ever a target, so a dirty start z simply
/// XORs through: it ends as z ⊕ ctrl·c_n.
#[test]
fn carry_wire_with_dirty_first_ancilla() {
    let n = 3;
    let c = build_ctrl_add(n).unwrap().circuit;
    let anc = c.register("anc").unwrap().to_vec();
    for g in c.gates() {
        let ops = g.operands();
        assert!(!ops[..ops.len() - 1].contains(&anc[0]), "{g}");
    }
    for ctrl in [false, true] {
        for a in 0..8u128 {
            for b in 0..8u128 {
                let oracle = CtrlAddOracle::new(n, ctrl, a, b).unwrap();
                let cn = oracle.carries[n];
                let mut input = ctrl_add::input_state(n, ctrl, a, b);
                input.set(anc[0], true);
                let out = run_reversible(&c, &input).unwrap();
                let z = true;
                assert_eq!(out.get(anc[0]), z ^ (ctrl & cn));
                assert!(!out.get(anc[1]));
                assert_eq!(out.read(c.register("b").unwrap()), oracle.sum_value() & 7);
            }
        }
    }
}

#[test]
fn adder_verification_sweep() {
    for n in 2..=6 {
        let r = verify_exhaustive(Target::Adder, n).unwrap();
        assert!(r.all_passed(), "n = {n}: {:?}", r.first_failure);
        assert_eq!(r.checked, 1 << (2 * n + 1));
    }
    for n in [16, 40, 64, 100] {
        assert!(verify_sampled(Target::Adder, n, 200, n as u64).unwrap().all_passed());
    }
}

#[test]
fn multiplier_sampled_widths() {
    for n in [5, 8, 16, 33, 64] {
        let r = verify_sampled(Target::Multiplier, n, 100, 7).unwrap();
        assert!(r.all_passed(), "n = {n}: {:?}", r.first_failure);
    }
}

#[test]
fn multiplier_is_toffoli_array_then_relabeled_adders() {
    let n = 4;
    let s = build_multiplier(n).unwrap();
    let adder = build_ctrl_add(n).unwrap().circuit;
    let mut expected = Circuit::new(s.circuit.width(), s.circuit.registers().clone()).unwrap();
    expected
        .extend(s.circuit.gates()[..n].iter().copied())
        .unwrap();
    for j in 1..n {
        let mut map = vec![0; adder.width()];
        map[0] = j;
        for i in 0..n {
            map[2 * i + 1] = 2 * n + j + i;
            map[2 * i + 2] = n + i;
        }
        map[2 * n + 1] = 3 * n + j;
        map[2 * n + 2] = 3 * n + j + 1;
        expected = expected.compose_relabeled(&adder, &map).unwrap();
    }
    assert_eq!(expected, s.circuit);
}

#[test]
fn multiplier_width_and_tcount_up_to_64() {
    for n in 2..=64 {
        let s = build_multiplier(n).unwrap();
        assert_eq!(s.circuit.width(), 4 * n + 1);
        assert_eq!(s.ancilla_count(), 2 * n + 1);
        let t = expand_toffolis(&s.circuit).t_count() as u64;
        let n = n as u64;
        assert_eq!(t, 21 * n * n - 14);
        assert_eq!(t, 7 * n + (n - 1) * (21 * n + 14));
    }
}

#[test]
fn multiplier_json_roundtrip() {
    let c = build_multiplier(4).unwrap().circuit;
    let text = to_json(&c);
    assert_eq!(from_json(&text).unwrap(), c);
    assert_eq!(serialize(&c, Format::Json), text);
    let qasm = serialize(&c, Format::Qasm);
    assert!(qasm.contains("qreg q[17];"));
    assert_eq!(qasm.lines().filter(|l| l.starts_with("ccx ")).count(), 46);
}

#[test]
fn multiplier_eleven_by_thirteen_via_index_runner() {
    let s = build_multiplier(4).unwrap();
    let c = &s.circuit;
    let mut input = qarith::multiplier::input_state(4, 11, 13);
    let x = input.to_index().unwrap();
    let out = run_reversible_index(c, x).unwrap();
    input = qarith::simulate::BasisState::from_index(c.width(), out);
    assert_eq!(input.read(c.register("p").unwrap()), 143);
}
