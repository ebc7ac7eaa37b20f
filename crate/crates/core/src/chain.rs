//! Decoding chain bitstrings into bead coordinates.
//!
//! A chain of `m` beads is `m - 1` turn fields laid out left to right. Each
//! field holds the direction bits followed by the plane bits, `q1` leftmost.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::encoder::{describe_state, TurnEncoding};
use crate::error::{Error, Result};
use crate::lattice::Plane;
use crate::multilinear::row_mask;
use crate::{Coord, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvalidTurn {
    /// Plane bits `00`.
    PlaneUnselected,
    /// Direction index past the lattice's direction count.
    PaddedDirection,
}

impl fmt::Display for InvalidTurn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidTurn::PlaneUnselected => "plane-unselected",
            InvalidTurn::PaddedDirection => "padded-direction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedTurn {
    /// Field state with the first bit most significant.
    pub state: u64,
    pub width: usize,
    pub plane: Option<Plane>,
    pub displacement: std::result::Result<Coord, InvalidTurn>,
}

impl DecodedTurn {
    pub fn is_valid(&self) -> bool {
        self.displacement.is_ok()
    }

    pub fn bits(&self) -> String {
        format_bits(self.state, self.width)
    }
}

fn format_bits(state: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if (state >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Decode a field given as a state number (first bit most significant).
pub fn decode_state(enc: &TurnEncoding, state: u64) -> DecodedTurn {
    let width = enc.width();
    assert!(state < 1 << width, "state {state} does not fit in {width} bits");
    let (direction, plane) = describe_state(enc, state);
    let layout = enc.layout();
    let displacement = if layout.plane_bits > 0 && plane.is_none() {
        Err(InvalidTurn::PlaneUnselected)
    } else if layout.invalid_direction_states.contains(&direction) {
        Err(InvalidTurn::PaddedDirection)
    } else {
        let mask = row_mask(width, state);
        Ok(Coord::new(
            enc.dx().evaluate_mask(mask),
            enc.dy().evaluate_mask(mask),
            enc.dz().evaluate_mask(mask),
        ))
    };
    DecodedTurn {
        state,
        width,
        plane,
        displacement,
    }
}

/// Decode one turn field given as bits (`field[0]` is `q1`).
pub fn decode_turn(enc: &TurnEncoding, field: &[bool]) -> Result<DecodedTurn> {
    if field.len() != enc.width() {
        return Err(Error::Format {
            field: None,
            message: format!("turn field has {} bits, expected {}", field.len(), enc.width()),
        });
    }
    let state = field.iter().fold(0u64, |acc, &b| acc << 1 | u64::from(b));
    Ok(decode_state(enc, state))
}

/// A bitstring split into fixed-width turn fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainBitstring {
    bits: Vec<bool>,
    width: usize,
}

impl ChainBitstring {
    /// Parse a `0`/`1` string holding `turns` fields of `width` bits each.
    pub fn parse(text: &str, width: usize, turns: usize) -> Result<Self> {
        let expected = width * turns;
        let got = text.chars().count();
        if got != expected {
            return Err(Error::Format {
                field: None,
                message: format!("expected {expected} bits ({turns} turns of {width}), got {got}"),
            });
        }
        let bits = text
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format {
                    field: Some(i / width.max(1)),
                    message: format!("character {other:?} at position {i} is not 0 or 1"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits, width })
    }

    /// Chain whose bits are `value` written in `width * turns` binary digits.
    pub fn from_index(value: u64, width: usize, turns: usize) -> Self {
        let total = width * turns;
        assert!(total <= 64);
        let bits = (0..total).rev().map(|i| (value >> i) & 1 == 1).collect();
        Self { bits, width }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn turn_count(&self) -> usize {
        self.bits.len().checked_div(self.width).unwrap_or(0)
    }

    pub fn field(&self, i: usize) -> &[bool] {
        &self.bits[i * self.width..(i + 1) * self.width]
    }

    pub fn fields(&self) -> impl Iterator<Item = &[bool]> {
        (0..self.turn_count()).map(move |i| self.field(i))
    }

    /// The first `turns` fields.
    pub fn prefix(&self, turns: usize) -> Self {
        Self {
            bits: self.bits[..turns * self.width].to_vec(),
            width: self.width,
        }
    }
}

impl fmt::Display for ChainBitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conformation {
    pub beads: Vec<Coord>,
    pub turns: Vec<DecodedTurn>,
    pub valid: bool,
    /// `None` when the chain has an invalid turn.
    pub self_avoiding: Option<bool>,
}

impl Conformation {
    pub fn bead_count(&self) -> usize {
        self.beads.len()
    }
}

fn all_distinct(beads: &[Coord]) -> bool {
    let mut seen = HashSet::with_capacity(beads.len());
    beads.iter().all(|b| seen.insert(b))
}

/// Build a conformation from already decoded turns. Invalid turns contribute
/// a zero displacement.
pub fn assemble(turns: Vec<DecodedTurn>, origin: Coord) -> Conformation {
    let mut beads = Vec::with_capacity(turns.len() + 1);
    beads.push(origin);
    for t in &turns {
        let last = beads.last().expect("origin is present");
        let next = match &t.displacement {
            Ok(d) => last + d,
            Err(_) => last.clone(),
        };
        beads.push(next);
    }
    let valid = turns.iter().all(DecodedTurn::is_valid);
    let self_avoiding = valid.then(|| all_distinct(&beads));
    Conformation {
        beads,
        turns,
        valid,
        self_avoiding,
    }
}

pub fn decode_chain(enc: &TurnEncoding, bits: &ChainBitstring, origin: Coord) -> Result<Conformation> {
    if bits.width() != enc.width() {
        return Err(Error::Format {
            field: None,
            message: format!(
                "bitstring uses {}-bit fields, encoding needs {}",
                bits.width(),
                enc.width()
            ),
        });
    }
    let turns = bits.fields().map(|f| decode_turn(enc, f)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(turns, origin))
}

/// Whether all beads are pairwise distinct. Only defined for valid chains.
pub fn self_avoiding(c: &Conformation) -> Result<bool> {
    if !c.valid {
        return Err(Error::Contract(
            "self-avoidance is undefined for an invalid conformation".into(),
        ));
    }
    Ok(all_distinct(&c.beads))
}

/// Decimal text for an exact value: exact when the denominator divides 10⁶,
/// otherwise six fractional digits rounded half to even.
pub fn format_decimal(value: &Rational) -> String {
    let million = BigInt::from(1_000_000u32);
    let (numer, denom) = (value.numer(), value.denom());
    let (scaled, exact) = if (&million % denom).is_zero() {
        (numer * (&million / denom), true)
    } else {
        let (q, r) = (numer * &million).div_mod_floor(denom);
        let twice = &r * 2u32;
        let up = match twice.cmp(denom) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => q.is_odd(),
        };
        (if up { q + BigInt::one() } else { q }, false)
    };
    let sign = if scaled.is_negative() { "-" } else { "" };
    let magnitude = scaled.abs();
    let (int_part, frac) = magnitude.div_rem(&million);
    let mut frac = format!("{:06}", frac);
    if exact {
        while frac.ends_with('0') {
            frac.pop();
        }
    }
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

pub fn export_xyz(c: &Conformation) -> Result<String> {
    export_xyz_with_comment(c, &format!("lattice chain, {} beads", c.bead_count()))
}

/// XYZ text: bead count, a comment line, then `C x y z` per bead.
pub fn export_xyz_with_comment(c: &Conformation, comment: &str) -> Result<String> {
    if !c.valid {
        return Err(Error::Contract("cannot export an invalid conformation as XYZ".into()));
    }
    let mut out = format!("{}\n{}\n", c.bead_count(), comment.replace('\n', " "));
    for b in &c.beads {
        out.push_str(&format!(
            "C {} {} {}\n",
            format_decimal(&b.x),
            format_decimal(&b.y),
            format_decimal(&b.z)
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct TurnJson<'a> {
    bits: String,
    plane: Option<Plane>,
    displacement: Option<&'a Coord>,
}

#[derive(Serialize)]
struct ConformationJson<'a> {
    beads: &'a [Coord],
    valid: bool,
    self_avoiding: bool,
    turns: Vec<TurnJson<'a>>,
}

impl Serialize for Conformation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConformationJson {
            beads: &self.beads,
            valid: self.valid,
            self_avoiding: self.self_avoiding.unwrap_or(false),
            turns: self
                .turns
                .iter()
                .map(|t| TurnJson {
                    bits: t.bits(),
                    plane: t.plane,
                    displacement: t.displacement.as_ref().ok(),
                })
                .collect(),
        }
        .serialize(s)
    }
}
