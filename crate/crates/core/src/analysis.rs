//! Exhaustive enumeration over turn states and chain bitstrings, plus the
//! check of the computed encodings against the printed reference values.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::ops::Range;

use num_traits::One;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::chain::decode_state;
use crate::encoder::{coefficients, encode, qubit_budget, TurnEncoding};
use crate::error::{Error, Result};
use crate::lattice::{degrees_of_freedom, Builtin};
use crate::linalg::{self, DenseMatrix};
use crate::multilinear::basis_matrix;
use crate::published::published;
use crate::scalar::format_vector;
use crate::{Coord, Polynomial, Rational};

/// Largest turn width [`census_turns`] will enumerate.
pub const MAX_TURN_BITS: usize = 24;
/// Largest chain bit count [`census_chains`] will enumerate.
pub const MAX_CHAIN_BITS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnCensus {
    pub total_states: u64,
    pub valid_states: u64,
    pub distinct_displacements: usize,
    pub multiplicity: BTreeMap<Coord, u64>,
}

impl Serialize for TurnCensus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            displacement: &'a Coord,
            count: u64,
        }
        let entries: Vec<Entry> = self
            .multiplicity
            .iter()
            .map(|(d, &count)| Entry { displacement: d, count })
            .collect();
        let mut st = s.serialize_struct("TurnCensus", 4)?;
        st.serialize_field("total_states", &self.total_states)?;
        st.serialize_field("valid_states", &self.valid_states)?;
        st.serialize_field("distinct_displacements", &self.distinct_displacements)?;
        st.serialize_field("multiplicity", &entries)?;
        st.end()
    }
}

pub fn census_turns(enc: &TurnEncoding) -> Result<TurnCensus> {
    if enc.width() > MAX_TURN_BITS {
        return Err(Error::ResourceLimit {
            what: "turn census bits",
            requested: enc.width(),
            limit: MAX_TURN_BITS,
        });
    }
    let mut multiplicity = BTreeMap::new();
    let mut valid_states = 0;
    for state in 0..enc.total_states() {
        if let Ok(d) = decode_state(enc, state).displacement {
            valid_states += 1;
            *multiplicity.entry(d).or_insert(0) += 1;
        }
    }
    Ok(TurnCensus {
        total_states: enc.total_states(),
        valid_states,
        distinct_displacements: multiplicity.len(),
        multiplicity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCensus {
    pub beads: usize,
    pub total_bitstrings: u64,
    pub valid: u64,
    pub self_avoiding: u64,
    pub distinct_conformations: u64,
}

/// Counts over a slice of the bitstring range; merging is associative and
/// commutative.
#[derive(Debug, Default)]
struct Partial {
    total: u64,
    valid: u64,
    self_avoiding: u64,
    conformations: HashSet<Vec<Coord>>,
}

impl Partial {
    fn merge(mut self, mut other: Partial) -> Partial {
        if self.conformations.len() < other.conformations.len() {
            std::mem::swap(&mut self.conformations, &mut other.conformations);
        }
        self.conformations.extend(other.conformations);
        Partial {
            total: self.total + other.total,
            valid: self.valid + other.valid,
            self_avoiding: self.self_avoiding + other.self_avoiding,
            conformations: self.conformations,
        }
    }
}

/// Pre-decoded turn states, indexed by field state.
struct TurnTable {
    width: usize,
    turns: usize,
    steps: Vec<Option<Coord>>,
}

impl TurnTable {
    fn new(enc: &TurnEncoding, beads: usize) -> Result<Self> {
        if beads < 2 {
            return Err(Error::InvalidArgument(format!(
                "a chain needs at least 2 beads, got {beads}"
            )));
        }
        let turns = beads - 1;
        let bits = enc.width().saturating_mul(turns);
        if bits > MAX_CHAIN_BITS {
            return Err(Error::ResourceLimit {
                what: "chain census bits",
                requested: bits,
                limit: MAX_CHAIN_BITS,
            });
        }
        let steps = (0..enc.total_states())
            .map(|s| decode_state(enc, s).displacement.ok())
            .collect();
        Ok(Self {
            width: enc.width(),
            turns,
            steps,
        })
    }

    fn total(&self) -> u64 {
        1 << (self.width * self.turns)
    }

    fn count(&self, range: Range<u64>) -> Partial {
        let mask = (1u64 << self.width) - 1;
        let mut out = Partial::default();
        let mut beads = Vec::with_capacity(self.turns + 1);
        'chains: for index in range {
            out.total += 1;
            beads.clear();
            beads.push(Coord::origin());
            for t in 0..self.turns {
                let state = (index >> (self.width * (self.turns - 1 - t))) & mask;
                let Some(step) = &self.steps[state as usize] else {
                    continue 'chains;
                };
                let next = beads.last().expect("origin") + step;
                beads.push(next);
            }
            out.valid += 1;
            let distinct: HashSet<&Coord> = beads.iter().collect();
            if distinct.len() == beads.len() {
                out.self_avoiding += 1;
            }
            if !out.conformations.contains(&beads) {
                out.conformations.insert(beads.clone());
            }
        }
        out
    }
}

fn finish(beads: usize, p: Partial) -> ChainCensus {
    ChainCensus {
        beads,
        total_bitstrings: p.total,
        valid: p.valid,
        self_avoiding: p.self_avoiding,
        distinct_conformations: p.conformations.len() as u64,
    }
}

/// Enumerate every chain of `beads` beads, split across `parts` ranges that
/// run on the rayon pool.
pub fn census_chains_partitioned(enc: &TurnEncoding, beads: usize, parts: u64) -> Result<ChainCensus> {
    let table = TurnTable::new(enc, beads)?;
    let total = table.total();
    let parts = parts.clamp(1, total);
    let chunk = total.div_ceil(parts);
    let partial = (0..parts)
        .into_par_iter()
        .map(|i| table.count(i * chunk..((i + 1) * chunk).min(total)))
        .reduce(Partial::default, Partial::merge);
    Ok(finish(beads, partial))
}

pub fn census_chains(enc: &TurnEncoding, beads: usize) -> Result<ChainCensus> {
    census_chains_partitioned(enc, beads, 64)
}

pub fn census_chains_serial(enc: &TurnEncoding, beads: usize) -> Result<ChainCensus> {
    let table = TurnTable::new(enc, beads)?;
    let partial = table.count(0..table.total());
    Ok(finish(beads, partial))
}

/// Which FCC sublattice a point sits on, in units of half the bond scale:
/// cube vertices have no odd coordinate, face centres have two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sublattice {
    Vertex,
    FaceCentre,
}

pub fn sublattice(point: &Coord, half_bond: &Rational) -> Option<Sublattice> {
    let mut odd = 0;
    for c in point.components() {
        let scaled = c / half_bond;
        if !scaled.is_integer() {
            return None;
        }
        if scaled.to_integer().bit(0) {
            odd += 1;
        }
    }
    match odd {
        0 => Some(Sublattice::Vertex),
        2 => Some(Sublattice::FaceCentre),
        _ => None,
    }
}

/// How many valid chains alternate between classes from bead to bead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternationCensus {
    pub beads: usize,
    pub valid_chains: u64,
    /// Chains whose doubled-coordinate sums alternate even/odd.
    pub sum_parity_alternating: u64,
    /// Chains whose beads alternate vertex / face-centre.
    pub sublattice_alternating: u64,
}

/// Check, by enumerating every valid chain, whether consecutive beads of an
/// FCC-type lattice alternate between the vertex and face-centre sublattices.
///
/// Coordinates are measured in units of `half_bond` (d/2 for the built-in).
pub fn census_alternation(enc: &TurnEncoding, beads: usize, half_bond: &Rational) -> Result<AlternationCensus> {
    let table = TurnTable::new(enc, beads)?;
    let mask = (1u64 << table.width) - 1;
    let mut out = AlternationCensus {
        beads,
        valid_chains: 0,
        sum_parity_alternating: 0,
        sublattice_alternating: 0,
    };
    'chains: for index in 0..table.total() {
        let mut points = vec![Coord::origin()];
        for t in 0..table.turns {
            let state = (index >> (table.width * (table.turns - 1 - t))) & mask;
            let Some(step) = &table.steps[state as usize] else {
                continue 'chains;
            };
            let next = points.last().expect("origin") + step;
            points.push(next);
        }
        out.valid_chains += 1;
        let parity = |p: &Coord| {
            let sum = (&p.x + &p.y + &p.z) / half_bond;
            sum.is_integer().then(|| sum.to_integer().bit(0))
        };
        let parities: Vec<Option<bool>> = points.iter().map(parity).collect();
        if parities.windows(2).all(|w| matches!(w, [Some(a), Some(b)] if a != b)) {
            out.sum_parity_alternating += 1;
        }
        let classes: Vec<Option<Sublattice>> = points.iter().map(|p| sublattice(p, half_bond)).collect();
        if classes.windows(2).all(|w| matches!(w, [Some(a), Some(b)] if a != b)) {
            out.sublattice_alternating += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Match,
    Mismatch,
    /// Known, explained disagreement between two printed values.
    DocumentedDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationItem {
    pub item: String,
    pub status: ItemStatus,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub lattice: String,
    pub passed: bool,
    pub items: Vec<VerificationItem>,
}

impl VerificationReport {
    pub fn item(&self, name: &str) -> Option<&VerificationItem> {
        self.items.iter().find(|i| i.item == name)
    }
}

fn show_rows(rows: &[Vec<u8>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u8::to_string).collect::<String>())
        .collect::<Vec<_>>()
        .join("/")
}

struct Checker<'a> {
    known: &'a [&'a str],
    items: Vec<VerificationItem>,
}

impl Checker<'_> {
    fn check(&mut self, item: &str, expected: String, computed: String, note: Option<String>) {
        let status = if expected == computed {
            ItemStatus::Match
        } else if self.known.contains(&item) {
            ItemStatus::DocumentedDiscrepancy
        } else {
            ItemStatus::Mismatch
        };
        self.items.push(VerificationItem {
            item: item.to_string(),
            status,
            expected,
            computed,
            note: if status == ItemStatus::Match { None } else { note },
        });
    }
}

/// Compare the encoder's output for a built-in at `d = 1` with the printed
/// reference values.
///
/// Coefficient vectors are checked twice: once through the encoder and once
/// by a direct solve against the printed basis matrix and value tables. The
/// printed `Δa`/`Δb` polynomials are compared with the polynomials their
/// printed coefficient vectors define; the cubic pair carries mislabelled
/// pair terms and comes back as [`ItemStatus::DocumentedDiscrepancy`].
pub fn verify_published(builtin: Builtin) -> Result<VerificationReport> {
    let reference = published(builtin);
    let spec = builtin.unit();
    let n = match builtin {
        Builtin::CubicDiag => 3,
        Builtin::Fcc => 2,
    };
    let mut c = Checker {
        known: reference.known_discrepancies,
        items: Vec::new(),
    };

    c.check(
        &format!("basis matrix B{n}"),
        show_rows(&reference.basis),
        show_rows(&basis_matrix(n)?.to_rows()),
        None,
    );

    let computed = coefficients(&spec)?;
    c.check(
        "c_da",
        format_vector(&reference.c_da),
        format_vector(&computed.c_da),
        None,
    );
    c.check(
        "c_db",
        format_vector(&reference.c_db),
        format_vector(&computed.c_db),
        None,
    );

    let printed_basis = DenseMatrix::from_fn(1 << n, 1 << n, |r, col| {
        if reference.basis[r][col] == 1 {
            Rational::one()
        } else {
            Rational::from_integer(0.into())
        }
    });
    c.check(
        "c_da by direct solve",
        format_vector(&reference.c_da),
        format_vector(&linalg::solve(&printed_basis, &reference.delta_a)?),
        None,
    );
    c.check(
        "c_db by direct solve",
        format_vector(&reference.c_db),
        format_vector(&linalg::solve(&printed_basis, &reference.delta_b)?),
        None,
    );

    c.check(
        "per-turn qubits",
        reference.per_turn_qubits.to_string(),
        qubit_budget(&spec, 2)?.per_turn.to_string(),
        None,
    );
    c.check(
        "degrees of freedom",
        reference.degrees_of_freedom.to_string(),
        degrees_of_freedom(&spec)?.to_string(),
        None,
    );

    let printed = [&reference.printed_da, &reference.printed_db];
    let implied = [&reference.c_da, &reference.c_db].map(|v| Polynomial::from_coefficients(n, v));
    let show = |p: [&Polynomial; 2]| format!("da = {}; db = {}", p[0], p[1]);
    let diffs: Vec<String> = ["da", "db"]
        .iter()
        .zip(printed.iter().zip(&implied))
        .filter(|(_, (p, i))| **p != *i)
        .map(|(name, (p, i))| format!("{name} by {}", *p - i))
        .collect();
    let note = (!diffs.is_empty()).then(|| {
        format!(
            "printed forms differ from their coefficient vectors ({}); the coefficient vectors are confirmed by the direct solve",
            diffs.join(", ")
        )
    });
    c.check(
        "printed polynomials",
        show(printed),
        show([&implied[0], &implied[1]]),
        note,
    );

    let passed = c.items.iter().all(|i| i.status != ItemStatus::Mismatch);
    Ok(VerificationReport {
        lattice: builtin.name().to_string(),
        passed,
        items: c.items,
    })
}

pub fn verify_all() -> Result<Vec<VerificationReport>> {
    Builtin::ALL.into_iter().map(verify_published).collect()
}

/// Plain-text table of reports.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{} [{}]", r.lattice, if r.passed { "PASS" } else { "FAIL" });
        for i in &r.items {
            let status = match i.status {
                ItemStatus::Match => "match",
                ItemStatus::Mismatch => "MISMATCH",
                ItemStatus::DocumentedDiscrepancy => "documented discrepancy",
            };
            let _ = writeln!(out, "  {:<24} {:<22} {}", i.item, status, i.computed);
            if let Some(note) = &i.note {
                let _ = writeln!(out, "  {:<24} expected: {}", "", i.expected);
                let _ = writeln!(out, "  {:<24} note: {}", "", note);
            }
        }
    }
    let overall = reports.iter().all(|r| r.passed);
    let _ = writeln!(out, "overall: {}", if overall { "PASS" } else { "FAIL" });
    out
}

/// Turn census for the encoding of `spec`.
pub fn census_spec(spec: &crate::lattice::LatticeSpec) -> Result<TurnCensus> {
    census_turns(&encode(spec)?)
}
