//! Execution backends.
//!
//! Wire `k` is bit `k` of a basis index, so wire 0 is the least-significant
//! bit. The reversible backend handles {NOT, CNOT, Toffoli} circuits of any
//! width; the statevector backend handles every gate kind up to a width cap.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, Wire};
use crate::error::{Error, Result};

/// Environment variable that overrides both simulator width caps.
pub const WIDTH_CAP_ENV: &str = "QARITH_WIDTH_CAP";

/// Truth tables store outputs as `u32`.
const TRUTH_TABLE_HARD_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub statevector_cap: usize,
    pub truth_table_cap: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            statevector_cap: 16,
            truth_table_cap: 24,
        }
    }
}

impl SimConfig {
    /// Defaults, with both caps replaced by `QARITH_WIDTH_CAP` when it is set
    /// to an integer.
    pub fn from_env() -> Self {
        let mut cfg = SimConfig::default();
        if let Some(cap) = std::env::var(WIDTH_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            cfg.statevector_cap = cap;
            cfg.truth_table_cap = cap;
        }
        cfg
    }
}

/// A computational basis state as a packed bit vector, index-aligned with
/// circuit wires.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    width: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        BasisState {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    /// From a basis index (wire `k` = bit `k`). Bits above `width` are dropped.
    pub fn from_index(width: usize, index: u64) -> Self {
        let mut s = Self::zeros(width);
        if let Some(w) = s.words.first_mut() {
            *w = if width >= 64 { index } else { index & ((1 << width) - 1) };
        }
        s
    }

    /// Parses a string of `0`/`1` with wire 0 leftmost. `_` is ignored.
    pub fn from_bit_string(bits: &str) -> Result<Self> {
        let bits: Vec<char> = bits.chars().filter(|c| *c != '_').collect();
        let mut s = Self::zeros(bits.len());
        for (k, c) in bits.iter().enumerate() {
            match c {
                '0' => {}
                '1' => s.set(k, true),
                other => return Err(Error::Parse(format!("invalid bit `{other}`"))),
            }
        }
        Ok(s)
    }

    /// Wire 0 leftmost.
    pub fn to_bit_string(&self) -> String {
        (0..self.width)
            .map(|k| if self.get(k) { '1' } else { '0' })
            .collect()
    }

    /// The basis index, when the width fits in 64 bits.
    pub fn to_index(&self) -> Option<u64> {
        (self.width <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, wire: Wire) -> bool {
        assert!(wire < self.width, "wire {wire} out of range");
        self.words[wire / 64] >> (wire % 64) & 1 == 1
    }

    pub fn set(&mut self, wire: Wire, value: bool) {
        assert!(wire < self.width, "wire {wire} out of range");
        let mask = 1u64 << (wire % 64);
        if value {
            self.words[wire / 64] |= mask;
        } else {
            self.words[wire / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, wire: Wire) {
        assert!(wire < self.width, "wire {wire} out of range");
        self.words[wire / 64] ^= 1u64 << (wire % 64);
    }

    /// Little-endian integer read from the given wires (at most 128).
    pub fn read(&self, wires: &[Wire]) -> u128 {
        assert!(wires.len() <= 128, "register wider than 128 bits");
        wires
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &w)| acc | (self.get(w) as u128) << i)
    }

    /// Writes the low `wires.len()` bits of `value`, little-endian.
    pub fn write(&mut self, wires: &[Wire], value: u128) {
        for (i, &w) in wires.iter().enumerate() {
            self.set(w, i < 128 && value >> i & 1 == 1);
        }
    }

    fn apply(&mut self, gate: &Gate) {
        match *gate {
            Gate::Not(t) => self.flip(t),
            Gate::Cnot(c, t) => {
                if self.get(c) {
                    self.flip(t)
                }
            }
            Gate::Toffoli(c1, c2, t) => {
                if self.get(c1) && self.get(c2) {
                    self.flip(t)
                }
            }
            _ => unreachable!("checked by ensure_classical"),
        }
    }
}

fn ensure_classical(circuit: &Circuit) -> Result<()> {
    match circuit.gates().iter().find(|g| !g.kind().is_classical()) {
        Some(g) => Err(Error::BackendMismatch {
            gate: g.to_string(),
        }),
        None => Ok(()),
    }
}

/// Runs a {NOT, CNOT, Toffoli} circuit on a basis state.
pub fn run_reversible(circuit: &Circuit, input: &BasisState) -> Result<BasisState> {
    ensure_classical(circuit)?;
    if input.width() != circuit.width() {
        return Err(Error::WidthMismatch {
            left: circuit.width(),
            right: input.width(),
        });
    }
    let mut state = input.clone();
    for g in circuit.gates() {
        state.apply(g);
    }
    Ok(state)
}

/// [`run_reversible`], taking the packed `u64` path when the width allows.
pub(crate) fn run_state(circuit: &Circuit, input: &BasisState) -> Result<BasisState> {
    match input.to_index() {
        Some(x) if input.width() == circuit.width() => {
            let out = run_reversible_index(circuit, x)?;
            Ok(BasisState::from_index(circuit.width(), out))
        }
        _ => run_reversible(circuit, input),
    }
}

#[inline]
fn permute_index(gates: &[Gate], mut x: u64) -> u64 {
    for g in gates {
        match *g {
            Gate::Not(t) => x ^= 1 << t,
            Gate::Cnot(c, t) => x ^= (x >> c & 1) << t,
            Gate::Toffoli(c1, c2, t) => x ^= (x >> c1 & x >> c2 & 1) << t,
            _ => unreachable!("checked by ensure_classical"),
        }
    }
    x
}

/// Fast path of [`run_reversible`] for circuits of width at most 64.
pub fn run_reversible_index(circuit: &Circuit, input: u64) -> Result<u64> {
    ensure_classical(circuit)?;
    if circuit.width() > 64 {
        return Err(Error::WidthOverCap {
            width: circuit.width(),
            cap: 64,
        });
    }
    Ok(permute_index(circuit.gates(), input))
}

/// The input-to-output map of a reversible circuit over all basis states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, input: u64) -> u64 {
        self.image[input as usize] as u64
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &o)| i as u32 == o)
    }
}

/// Evaluates the circuit on every basis state and checks the result is a
/// bijection.
pub fn truth_table(circuit: &Circuit, cfg: &SimConfig) -> Result<Permutation> {
    ensure_classical(circuit)?;
    let cap = cfg.truth_table_cap.min(TRUTH_TABLE_HARD_LIMIT);
    if circuit.width() > cap {
        return Err(Error::WidthOverCap {
            width: circuit.width(),
            cap,
        });
    }
    let size = 1usize << circuit.width();
    let gates = circuit.gates();
    let image: Vec<u32> = (0..size as u64)
        .into_par_iter()
        .map(|x| permute_index(gates, x) as u32)
        .collect();

    let mut seen = vec![false; size];
    for (input, &out) in image.iter().enumerate() {
        if std::mem::replace(&mut seen[out as usize], true) {
            return Err(Error::Invariant(format!(
                "truth table is not a bijection: output {out} reached again from input {input}"
            )));
        }
    }
    Ok(Permutation { image })
}

/// Dense amplitudes over `2^width` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(width: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << width];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { width, amplitudes }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply(&mut self, gate: &Gate) {
        let amps = &mut self.amplitudes;
        match *gate {
            Gate::Not(t) => swap_where(amps, 0, 1 << t),
            Gate::Cnot(c, t) => swap_where(amps, 1 << c, 1 << t),
            Gate::Toffoli(c1, c2, t) => swap_where(amps, 1 << c1 | 1 << c2, 1 << t),
            Gate::H(q) => {
                let bit = 1 << q;
                for i in 0..amps.len() {
                    if i & bit == 0 {
                        let (a, b) = (amps[i], amps[i | bit]);
                        amps[i] = (a + b) * FRAC_1_SQRT_2;
                        amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::T(q) => phase_where(amps, 1 << q, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
            Gate::Tdg(q) => phase_where(amps, 1 << q, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)),
            Gate::S(q) => phase_where(amps, 1 << q, Complex64::i()),
            Gate::Sdg(q) => phase_where(amps, 1 << q, -Complex64::i()),
        }
    }
}

/// Swaps amplitude pairs (i, i ^ target) for every i with all `controls`
/// set and the target bit clear.
fn swap_where(amps: &mut [Complex64], controls: usize, target: usize) {
    for i in 0..amps.len() {
        if i & controls == controls && i & target == 0 {
            amps.swap(i, i | target);
        }
    }
}

fn phase_where(amps: &mut [Complex64], bit: usize, phase: Complex64) {
    for (i, a) in amps.iter_mut().enumerate() {
        if i & bit != 0 {
            *a *= phase;
        }
    }
}

fn check_statevector_cap(width: usize, cfg: &SimConfig) -> Result<()> {
    if width > cfg.statevector_cap {
        return Err(Error::WidthOverCap {
            width,
            cap: cfg.statevector_cap,
        });
    }
    Ok(())
}

pub fn run_statevector(circuit: &Circuit, input: &BasisState, cfg: &SimConfig) -> Result<StateVector> {
    check_statevector_cap(circuit.width(), cfg)?;
    if input.width() != circuit.width() {
        return Err(Error::WidthMismatch {
            left: circuit.width(),
            right: input.width(),
        });
    }
    let index = input.to_index().expect("width is under the cap") as usize;
    Ok(evolve(circuit, index))
}

fn evolve(circuit: &Circuit, index: usize) -> StateVector {
    let mut state = StateVector::basis(circuit.width(), index);
    for g in circuit.gates() {
        state.apply(g);
    }
    state
}

/// Largest entrywise modulus of `U1 - U2` (or of `U1 - e^{iφ} U2`, with φ
/// taken from the largest-modulus entry of the first column of `U1`).
pub fn max_deviation(c1: &Circuit, c2: &Circuit, up_to_global_phase: bool, cfg: &SimConfig) -> Result<f64> {
    if c1.width() != c2.width() {
        return Err(Error::WidthMismatch {
            left: c1.width(),
            right: c2.width(),
        });
    }
    check_statevector_cap(c1.width(), cfg)?;

    let phase = if up_to_global_phase {
        let (u1, u2) = (evolve(c1, 0), evolve(c2, 0));
        let k = (0..u1.amplitudes.len())
            .max_by(|&i, &j| u1.amplitudes[i].norm().total_cmp(&u1.amplitudes[j].norm()))
            .unwrap_or(0);
        let ratio = u1.amplitudes[k] / u2.amplitudes[k];
        if ratio.is_finite() && ratio.norm() > 0.0 {
            ratio / ratio.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    } else {
        Complex64::new(1.0, 0.0)
    };

    let columns = 1usize << c1.width();
    Ok((0..columns)
        .into_par_iter()
        .map(|x| {
            let (u1, u2) = (evolve(c1, x), evolve(c2, x));
            u1.amplitudes
                .iter()
                .zip(&u2.amplitudes)
                .map(|(a, b)| (a - phase * b).norm())
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

/// Column-by-column unitary comparison at tolerance `tol`.
pub fn unitary_equiv(
    c1: &Circuit,
    c2: &Circuit,
    tol: f64,
    up_to_global_phase: bool,
    cfg: &SimConfig,
) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(max_deviation(c1, c2, up_to_global_phase, cfg)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_reversible_run() {
        let c = Circuit::anonymous(3).unwrap();
        let s = BasisState::from_bit_string("101").unwrap();
        assert_eq!(run_reversible(&c, &s).unwrap(), s);
    }

    #[test]
    fn toffoli_fires_on_110() {
        let c = Circuit::anonymous(3)
            .unwrap()
            .append(Gate::Toffoli(0, 1, 2))
            .unwrap();
        let out = run_reversible(&c, &BasisState::from_bit_string("110").unwrap()).unwrap();
        assert_eq!(out.to_bit_string(), "111");
        assert_eq!(run_reversible_index(&c, 0b011).unwrap(), 0b111);
    }

    #[test]
    fn reversible_backend_rejects_phases() {
        let c = Circuit::anonymous(1).unwrap().append(Gate::T(0)).unwrap();
        assert!(matches!(
            run_reversible(&c, &BasisState::zeros(1)),
            Err(Error::BackendMismatch { .. })
        ));
        assert!(matches!(
            truth_table(&c, &SimConfig::default()),
            Err(Error::BackendMismatch { .. })
        ));
    }

    #[test]
    fn basis_state_registers() {
        let mut s = BasisState::zeros(70);
        s.write(&[65, 2, 69], 0b101);
        assert!(s.get(65) && !s.get(2) && s.get(69));
        assert_eq!(s.read(&[65, 2, 69]), 5);
        assert_eq!(s.to_index(), None);
        assert_eq!(BasisState::from_index(3, 0b110).to_bit_string(), "011");
        assert!(BasisState::from_bit_string("012").is_err());
    }

    #[test]
    fn small_truth_tables() {
        let cfg = SimConfig::default();
        let id = truth_table(&Circuit::anonymous(2).unwrap(), &cfg).unwrap();
        assert_eq!(id.as_slice(), &[0, 1, 2, 3]);
        let not = Circuit::anonymous(1).unwrap().append(Gate::Not(0)).unwrap();
        assert_eq!(truth_table(&not, &cfg).unwrap().as_slice(), &[1, 0]);
        let wide = Circuit::anonymous(25).unwrap();
        assert!(matches!(
            truth_table(&wide, &cfg),
            Err(Error::WidthOverCap { width: 25, cap: 24 })
        ));
    }

    #[test]
    fn statevector_basics() {
        let cfg = SimConfig::default();
        let empty = Circuit::anonymous(2).unwrap();
        let sv = run_statevector(&empty, &BasisState::zeros(2), &cfg).unwrap();
        assert_eq!(sv.amplitudes()[0], Complex64::new(1.0, 0.0));

        let h = Circuit::anonymous(1).unwrap().append(Gate::H(0)).unwrap();
        let sv = run_statevector(&h, &BasisState::zeros(1), &cfg).unwrap();
        for a in sv.amplitudes() {
            assert!((a - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }

        let tt = Circuit::anonymous(1)
            .unwrap()
            .append(Gate::T(0))
            .unwrap()
            .append(Gate::Tdg(0))
            .unwrap();
        for x in 0..2 {
            let sv = run_statevector(&tt, &BasisState::from_index(1, x), &cfg).unwrap();
            assert!((sv.amplitudes()[x as usize] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }

        let wide = Circuit::anonymous(17).unwrap();
        assert!(matches!(
            run_statevector(&wide, &BasisState::zeros(17), &cfg),
            Err(Error::WidthOverCap { width: 17, cap: 16 })
        ));
    }

    #[test]
    fn s_squared_is_z_and_t_squared_is_s() {
        let cfg = SimConfig::default();
        let tt = Circuit::anonymous(1)
            .unwrap()
            .append(Gate::T(0))
            .unwrap()
            .append(Gate::T(0))
            .unwrap();
        let s = Circuit::anonymous(1).unwrap().append(Gate::S(0)).unwrap();
        assert!(unitary_equiv(&tt, &s, 1e-12, false, &cfg).unwrap());
        assert!(!unitary_equiv(&s, &s.inverse(), 1e-12, false, &cfg).unwrap());
    }

    #[test]
    fn global_phase_mode() {
        let cfg = SimConfig::default();
        // X·Z·X·Z = -I, differing from the empty circuit by a phase of π.
        let mut c = Circuit::anonymous(1).unwrap();
        for _ in 0..2 {
            c.extend([Gate::Not(0), Gate::S(0), Gate::S(0)]).unwrap();
        }
        let empty = Circuit::anonymous(1).unwrap();
        assert!(!unitary_equiv(&c, &empty, 1e-12, false, &cfg).unwrap());
        assert!(unitary_equiv(&c, &empty, 1e-12, true, &cfg).unwrap());
        assert!(unitary_equiv(&c, &empty, 0.0, true, &cfg).is_err());
        assert!(matches!(
            unitary_equiv(&c, &Circuit::anonymous(2).unwrap(), 1e-9, false, &cfg),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn env_override() {
        // Only read here; other tests use SimConfig::default().
        std::env::set_var(WIDTH_CAP_ENV, "9");
        let cfg = SimConfig::from_env();
        std::env::remove_var(WIDTH_CAP_ENV);
        assert_eq!(cfg.statevector_cap, 9);
        assert_eq!(cfg.truth_table_cap, 9);
    }
}
