//! Oracle comparison over exhaustive or seeded-random input sets.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::Circuit;
use crate::ctrl_add::{self, build_ctrl_add};
use crate::error::{Error, Result};
use crate::multiplier::{self, build_multiplier};
use crate::synthesis::Synthesis;

/// Exhaustive runs are limited to 2^20 inputs.
pub const EXHAUSTIVE_MAX_INPUT_BITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Adder,
    Multiplier,
}

impl Target {
    pub fn build(self, n: usize) -> Result<Synthesis> {
        match self {
            Target::Adder => build_ctrl_add(n),
            Target::Multiplier => build_multiplier(n),
        }
    }

    /// Free input bits: `ctrl, a, b` for the adder, `a, b` for the multiplier.
    pub fn input_bits(self, n: usize) -> usize {
        match self {
            Target::Adder => 2 * n + 1,
            Target::Multiplier => 2 * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::Adder => "adder",
            Target::Multiplier => "mult",
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adder" => Ok(Target::Adder),
            "mult" | "multiplier" => Ok(Target::Multiplier),
            other => Err(Error::Parse(format!("unknown target `{other}`"))),
        }
    }
}

/// A single input on which circuit and oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    /// Full output state, wire 0 leftmost.
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {} got {}",
            self.input, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: u64,
    pub passed: u64,
    /// The earliest failing input in enumeration order.
    pub first_failure: Option<Mismatch>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.checked && self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, Copy)]
struct Case {
    ctrl: bool,
    a: u128,
    b: u128,
}

fn check(target: Target, circuit: &Circuit, n: usize, case: Case) -> Result<Option<Mismatch>> {
    match target {
        Target::Adder => ctrl_add::check_case(circuit, n, case.ctrl, case.a, case.b),
        Target::Multiplier => multiplier::check_case(circuit, n, case.a, case.b),
    }
}

fn run_cases(target: Target, circuit: &Circuit, n: usize, cases: Vec<Case>) -> Result<VerifyReport> {
    let results: Vec<Option<Mismatch>> = cases
        .into_par_iter()
        .map(|case| check(target, circuit, n, case))
        .collect::<Result<_>>()?;
    let checked = results.len() as u64;
    let failures = results.iter().filter(|r| r.is_some()).count() as u64;
    Ok(VerifyReport {
        checked,
        passed: checked - failures,
        first_failure: results.into_iter().flatten().next(),
    })
}

/// Checks `circuit` (laid out as `target` of width `n`) on every input.
pub fn verify_circuit_exhaustive(target: Target, circuit: &Circuit, n: usize) -> Result<VerifyReport> {
    let bits = target.input_bits(n);
    if bits > EXHAUSTIVE_MAX_INPUT_BITS {
        return Err(Error::Domain(format!(
            "exhaustive verification needs 2^{bits} inputs; the limit is 2^{EXHAUSTIVE_MAX_INPUT_BITS}"
        )));
    }
    let mask = (1u128 << n) - 1;
    let cases = (0..1u128 << bits)
        .map(|x| match target {
            Target::Adder => Case {
                ctrl: x & 1 == 1,
                a: x >> 1 & mask,
                b: x >> (n + 1),
            },
            Target::Multiplier => Case {
                ctrl: true,
                a: x & mask,
                b: x >> n,
            },
        })
        .collect();
    run_cases(target, circuit, n, cases)
}

pub fn verify_exhaustive(target: Target, n: usize) -> Result<VerifyReport> {
    let synthesis = target.build(n)?;
    verify_circuit_exhaustive(target, &synthesis.circuit, n)
}

/// Checks `samples` inputs drawn uniformly with a ChaCha8 stream seeded by
/// `seed`.
pub fn verify_circuit_sampled(
    target: Target,
    circuit: &Circuit,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<VerifyReport> {
    if samples == 0 {
        return Err(Error::Domain("sample mode needs at least one sample".into()));
    }
    let limit = match target {
        Target::Adder => ctrl_add::ORACLE_MAX_WIDTH,
        Target::Multiplier => multiplier::ORACLE_MAX_WIDTH,
    };
    if n > limit {
        return Err(Error::Domain(format!("sampling supports n <= {limit}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1u128 << n;
    let cases = (0..samples)
        .map(|_| Case {
            ctrl: match target {
                Target::Adder => rng.gen(),
                Target::Multiplier => true,
            },
            a: rng.gen_range(0..bound),
            b: rng.gen_range(0..bound),
        })
        .collect();
    run_cases(target, circuit, n, cases)
}

pub fn verify_sampled(target: Target, n: usize, samples: u64, seed: u64) -> Result<VerifyReport> {
    let synthesis = target.build(n)?;
    verify_circuit_sampled(target, &synthesis.circuit, n, samples, seed)
}
