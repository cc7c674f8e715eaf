//! Gate census, closed-form cost models and the comparison tables.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::Serialize;

use crate::bennett::babu_garbageless_tcount;
use crate::circuit::{Circuit, GateKind};
use crate::clifford_t::expand_toffolis;
use crate::ctrl_add::{build_ctrl_add, check_width};
use crate::error::{Error, Result};
use crate::multiplier::build_multiplier;
use crate::synthesis::Synthesis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub width: usize,
    pub t_count: usize,
    /// Gate counts keyed by JSON kind name, in a fixed order.
    pub counts: IndexMap<&'static str, usize>,
    pub toffoli_count_pre_expansion: usize,
    pub ancillae: usize,
    pub garbage: usize,
}

/// Literal census of `circuit` as given.
pub fn report(circuit: &Circuit) -> ResourceReport {
    let counts: IndexMap<_, _> = GateKind::ALL
        .iter()
        .map(|&k| (k.name(), circuit.count(k)))
        .collect();
    ResourceReport {
        width: circuit.width(),
        t_count: circuit.t_count(),
        toffoli_count_pre_expansion: circuit.count(GateKind::Toffoli),
        counts,
        ancillae: 0,
        garbage: 0,
    }
}

/// Census of the Clifford+T expansion of `circuit`; the Toffoli count of the
/// input is kept in `toffoli_count_pre_expansion`.
pub fn report_expanded(circuit: &Circuit) -> ResourceReport {
    let mut r = report(&expand_toffolis(circuit));
    r.toffoli_count_pre_expansion = circuit.count(GateKind::Toffoli);
    r
}

/// [`report_expanded`] with the builder's ancilla tally.
pub fn report_synthesis(synthesis: &Synthesis) -> ResourceReport {
    let mut r = report_expanded(&synthesis.circuit);
    r.ancillae = synthesis.ancilla_count();
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Design {
    ProposedAdder,
    LinAdder,
    JayashreeAdder,
    ProposedMult,
    LinMult,
    JayashreeMult,
    /// Depth-optimized multiplier made garbageless by a compute/copy/uncompute wrap.
    BabuGarbagelessMult,
}

impl Design {
    pub fn id(self) -> &'static str {
        match self {
            Design::ProposedAdder => "proposed-adder",
            Design::LinAdder => "lin-adder",
            Design::JayashreeAdder => "jayashree-adder",
            Design::ProposedMult => "proposed-mult",
            Design::LinMult => "lin-mult",
            Design::JayashreeMult => "jayashree-mult",
            Design::BabuGarbagelessMult => "babu-garbageless-mult",
        }
    }

    pub fn t_count(self, n: usize) -> Result<u64> {
        check_width(n)?;
        let n = n as u64;
        Ok(match self {
            Design::ProposedAdder => 21 * n + 14,
            Design::LinAdder => 56 * n,
            Design::JayashreeAdder => 28 * n + 7,
            Design::ProposedMult => 21 * n * n - 14,
            Design::LinMult => 56 * n * n,
            Design::JayashreeMult => 28 * n * n + 7 * n,
            Design::BabuGarbagelessMult => return babu_garbageless_tcount(n as usize),
        })
    }

    /// Total qubits; `None` where no closed form exists.
    pub fn qubits(self, n: usize) -> Result<Option<u64>> {
        check_width(n)?;
        let n = n as u64;
        Ok(match self {
            Design::ProposedAdder | Design::LinAdder | Design::JayashreeAdder => Some(2 * n + 1),
            Design::LinMult => Some(5 * n + 1),
            Design::JayashreeMult | Design::ProposedMult => Some(4 * n + 1),
            Design::BabuGarbagelessMult => None,
        })
    }

    pub fn ancillae(self, n: usize) -> Result<Option<u64>> {
        check_width(n)?;
        let n = n as u64;
        Ok(match self {
            Design::ProposedAdder | Design::LinAdder | Design::JayashreeAdder => Some(2),
            Design::LinMult => Some(3 * n + 1),
            Design::JayashreeMult | Design::ProposedMult => Some(2 * n + 1),
            Design::BabuGarbagelessMult => None,
        })
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Design::ProposedAdder,
            Design::LinAdder,
            Design::JayashreeAdder,
            Design::ProposedMult,
            Design::LinMult,
            Design::JayashreeMult,
            Design::BabuGarbagelessMult,
        ]
        .into_iter()
        .find(|d| d.id() == s)
        .ok_or_else(|| Error::Parse(format!("unknown design `{s}`")))
    }
}

/// `100 · (baseline − proposed) / baseline`.
pub fn improvement_pct(baseline: i64, proposed: i64) -> Result<f64> {
    if baseline <= 0 {
        return Err(Error::Domain(format!("baseline must be positive, got {baseline}")));
    }
    Ok(100.0 * (baseline - proposed) as f64 / baseline as f64)
}

/// A percentage held as an integer number of hundredths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(pub i64);

impl Percent {
    /// Exact half-up rounding of `100 · (baseline − proposed) / baseline`.
    pub fn improvement(baseline: u64, proposed: u64) -> Result<Percent> {
        if baseline == 0 {
            return Err(Error::Domain("baseline must be positive, got 0".into()));
        }
        let num = 10_000 * (baseline as i128 - proposed as i128);
        let den = baseline as i128;
        Ok(Percent((2 * num + den).div_euclid(2 * den) as i64))
    }

    /// Half-up rounding of a real percentage to two decimals.
    pub fn from_f64(value: f64) -> Percent {
        Percent((value * 100.0 + 0.5).floor() as i64)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    II,
    V,
    VI,
    VII,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::II, TableId::V, TableId::VI, TableId::VII];

    pub fn name(self) -> &'static str {
        match self {
            TableId::II => "II",
            TableId::V => "V",
            TableId::VI => "VI",
            TableId::VII => "VII",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "II" | "2" => Ok(TableId::II),
            "V" | "5" => Ok(TableId::V),
            "VI" | "6" => Ok(TableId::VI),
            "VII" | "7" => Ok(TableId::VII),
            _ => Err(Error::UnknownTable(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(u64),
    Pct(Percent),
    Label(&'static str),
    Empty,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Pct(p) => write!(f, "{p}"),
            Cell::Label(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub id: TableId,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub average: Vec<Cell>,
}

impl Table {
    /// The data row whose first column is `n`.
    pub fn row(&self, n: u64) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| r.first() == Some(&Cell::Int(n)))
            .map(Vec::as_slice)
    }

    /// Header, data rows, then the average row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in self.rows.iter().chain(std::iter::once(&self.average)) {
            w.write_record(row.iter().map(Cell::to_string))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Operand widths listed in the T-count tables.
pub const TCOUNT_TABLE_WIDTHS: [u64; 10] = [4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048];

/// Garbageless depth-optimized multiplier: (n, ancillae). No closed form is
/// known, so these are reference measurements.
pub const BABU_GARBAGELESS_ANCILLAE: [(u64, u64); 6] =
    [(4, 18), (8, 57), (16, 178), (32, 608), (64, 2210), (128, 8368)];

/// Garbageless depth-optimized multiplier: (n, total qubits).
pub const BABU_GARBAGELESS_QUBITS: [(u64, u64); 6] =
    [(4, 42), (8, 90), (16, 243), (32, 737), (64, 2467), (128, 8881)];

/// `(n, baseline values, proposed value)`
type RawRow = (u64, Vec<u64>, u64);

/// Builds one table. Each row is `n`, the baseline and proposed values, and
/// improvement percentages; the average row holds the mean of the unrounded
/// improvements.
pub fn reproduce_table(id: TableId) -> Table {
    let (columns, rows): (Vec<&'static str>, Vec<RawRow>) = match id {
        TableId::II => (
            vec!["n", "lin", "jayashree", "proposed", "impr_vs_lin", "impr_vs_jayashree"],
            tcount_rows(&[Design::LinAdder, Design::JayashreeAdder], Design::ProposedAdder),
        ),
        TableId::V => (
            vec![
                "n",
                "lin",
                "jayashree",
                "babu_garbageless",
                "proposed",
                "impr_vs_lin",
                "impr_vs_jayashree",
                "impr_vs_babu_garbageless",
            ],
            tcount_rows(
                &[Design::LinMult, Design::JayashreeMult, Design::BabuGarbagelessMult],
                Design::ProposedMult,
            ),
        ),
        TableId::VI => (
            vec!["n", "babu_garbageless", "proposed", "impr_vs_babu_garbageless"],
            BABU_GARBAGELESS_ANCILLAE
                .iter()
                .map(|&(n, babu)| (n, vec![babu], 2 * n + 1))
                .collect(),
        ),
        TableId::VII => (
            vec!["n", "babu_garbageless", "proposed", "impr_vs_babu_garbageless"],
            BABU_GARBAGELESS_QUBITS
                .iter()
                .map(|&(n, babu)| (n, vec![babu], 4 * n + 1))
                .collect(),
        ),
    };

    let baselines = rows[0].1.len();
    let mut sums = vec![0.0; baselines];
    let rows = rows
        .into_iter()
        .map(|(n, base, proposed)| {
            let mut row = vec![Cell::Int(n)];
            row.extend(base.iter().map(|&b| Cell::Int(b)));
            row.push(Cell::Int(proposed));
            for (k, &b) in base.iter().enumerate() {
                sums[k] += improvement_pct(b as i64, proposed as i64).expect("positive baseline");
                row.push(Cell::Pct(
                    Percent::improvement(b, proposed).expect("positive baseline"),
                ));
            }
            row
        })
        .collect::<Vec<_>>();

    let count = rows.len() as f64;
    let mut average = vec![Cell::Label("average")];
    average.extend((0..=baselines).map(|_| Cell::Empty));
    average.extend(sums.iter().map(|s| Cell::Pct(Percent::from_f64(s / count))));

    Table {
        id,
        columns,
        rows,
        average,
    }
}

fn tcount_rows(baselines: &[Design], proposed: Design) -> Vec<RawRow> {
    TCOUNT_TABLE_WIDTHS
        .iter()
        .map(|&n| {
            let t = |d: Design| d.t_count(n as usize).expect("table widths are valid");
            (n, baselines.iter().map(|&d| t(d)).collect(), t(proposed))
        })
        .collect()
}

/// Widths up to which table entries are also counted on built circuits.
pub const CROSS_CHECK_MAX_N: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    pub n: u64,
    pub table_value: u64,
    pub counted: u64,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.table_value == self.counted
    }
}

/// Compares the proposed column of `table` with the corresponding quantity
/// counted on generated circuits, for every row with `n <= 64`.
pub fn cross_check(table: &Table) -> Result<Vec<CrossCheck>> {
    let proposed_col = table
        .columns
        .iter()
        .position(|c| *c == "proposed")
        .expect("every table has a proposed column");
    let mut out = Vec::new();
    for row in &table.rows {
        let (Cell::Int(n), Cell::Int(value)) = (&row[0], &row[proposed_col]) else {
            return Err(Error::Invariant("malformed table row".into()));
        };
        if *n > CROSS_CHECK_MAX_N {
            continue;
        }
        let width = *n as usize;
        let counted = match table.id {
            TableId::II => expand_toffolis(&build_ctrl_add(width)?.circuit).t_count(),
            TableId::V => expand_toffolis(&build_multiplier(width)?.circuit).t_count(),
            TableId::VI => build_multiplier(width)?.ancilla_count(),
            TableId::VII => build_multiplier(width)?.circuit.width(),
        } as u64;
        out.push(CrossCheck {
            n: *n,
            table_value: *value,
            counted,
        });
    }
    Ok(out)
}
