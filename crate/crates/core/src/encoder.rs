//! Compile a lattice spec into per-axis displacement polynomials over the
//! qubits of one turn.
//!
//! Planar lattices use `k = ⌈log₂K⌉` direction qubits `q1..qk` followed by two
//! plane qubits `p = q_{k+1}`, `r = q_{k+2}` with selectors
//!
//! ```text
//! S_yz = (1 - p) r    S_zx = p (1 - r)    S_xy = p r
//! dx = S_xy Δa + S_zx Δb
//! dy = S_yz Δa + S_xy Δb
//! dz = S_zx Δa + S_yz Δb
//! ```
//!
//! Direct lattices use `⌈log₂N⌉` qubits and one polynomial per axis.
//! Direction states past `K` (or `N`) and the plane code `00` are invalid;
//! the polynomials evaluate to zero there and the layout records them.

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{DirectLatticeSpec, LatticeSpec, PlanarLatticeSpec, Plane};
use crate::multilinear::{solve_coefficients, Monomial, MAX_SOLVE_QUBITS};
use crate::scalar::{format_rational, format_vector, serde_rational};
use crate::{Polynomial, Rational};

pub const BIT_ORDER: &str = "direction_then_plane";

/// Number of qubits needed to index `count ≥ 1` states.
pub fn ceil_log2(count: usize) -> usize {
    assert!(count >= 1);
    (usize::BITS - (count - 1).leading_zeros()) as usize
}

/// How a turn's bit field is split and which states are unused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub direction_bits: usize,
    pub plane_bits: usize,
    pub bit_order: &'static str,
    pub invalid_direction_states: Vec<u64>,
    pub invalid_plane_states: Vec<u64>,
}

impl Layout {
    pub fn width(&self) -> usize {
        self.direction_bits + self.plane_bits
    }

    /// Split a field state (first bit most significant) into
    /// `(direction index, plane code)`.
    pub fn split(&self, state: u64) -> (u64, u64) {
        let plane_mask = (1u64 << self.plane_bits) - 1;
        (state >> self.plane_bits, state & plane_mask)
    }

    pub fn is_valid_state(&self, state: u64) -> bool {
        let (dir, plane) = self.split(state);
        !self.invalid_direction_states.contains(&dir)
            && (self.plane_bits == 0 || !self.invalid_plane_states.contains(&plane))
    }
}

/// Compiled displacement polynomials for one turn.
#[derive(Debug, Clone, PartialEq)]
pub struct TurnEncoding {
    lattice: LatticeSpec,
    direction_count: usize,
    layout: Layout,
    in_plane: Option<(Polynomial, Polynomial)>,
    dx: Polynomial,
    dy: Polynomial,
    dz: Polynomial,
    coefficients: Coefficients,
    valid_state_count: usize,
}

impl TurnEncoding {
    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// `K` for planar lattices, `N` for direct ones.
    pub fn direction_count(&self) -> usize {
        self.direction_count
    }

    pub fn direction_qubits(&self) -> usize {
        self.layout.direction_bits
    }

    pub fn plane_qubits(&self) -> usize {
        self.layout.plane_bits
    }

    /// Bits per turn.
    pub fn width(&self) -> usize {
        self.layout.width()
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dx(&self) -> &Polynomial {
        &self.dx
    }

    pub fn dy(&self) -> &Polynomial {
        &self.dy
    }

    pub fn dz(&self) -> &Polynomial {
        &self.dz
    }

    /// The in-plane `(Δa, Δb)` polynomials over the direction qubits; `None`
    /// for direct encodings.
    pub fn in_plane(&self) -> Option<(&Polynomial, &Polynomial)> {
        self.in_plane.as_ref().map(|(a, b)| (a, b))
    }

    pub fn valid_state_count(&self) -> usize {
        self.valid_state_count
    }

    pub fn total_states(&self) -> u64 {
        1 << self.width()
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    /// `name = value` lines: in-plane polynomials and their coefficient
    /// vectors for planar lattices, then the three axis polynomials.
    pub fn summary_lines(&self) -> Vec<String> {
        let c = &self.coefficients;
        let mut lines = Vec::new();
        match (&self.in_plane, &c.c_dc) {
            (Some((da, db)), _) => {
                lines.push(format!("da = {da}"));
                lines.push(format!("db = {db}"));
                lines.push(format!("c_da = {}", format_vector(&c.c_da)));
                lines.push(format!("c_db = {}", format_vector(&c.c_db)));
            }
            (None, Some(c_dc)) => {
                lines.push(format!("c_dx = {}", format_vector(&c.c_da)));
                lines.push(format!("c_dy = {}", format_vector(&c.c_db)));
                lines.push(format!("c_dz = {}", format_vector(c_dc)));
            }
            (None, None) => {}
        }
        lines.push(format!("dx = {}", self.dx));
        lines.push(format!("dy = {}", self.dy));
        lines.push(format!("dz = {}", self.dz));
        lines
    }
}

impl Serialize for TurnEncoding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Polynomials {
            #[serde(skip_serializing_if = "Option::is_none")]
            da: Option<String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            db: Option<String>,
            dx: String,
            dy: String,
            dz: String,
        }
        #[derive(Serialize)]
        struct Vectors<'a> {
            #[serde(with = "serde_rational::vec")]
            c_da: &'a [Rational],
            #[serde(with = "serde_rational::vec")]
            c_db: &'a [Rational],
            #[serde(skip_serializing_if = "Option::is_none")]
            c_dc: Option<Vec<String>>,
        }

        let c = &self.coefficients;
        let mut st = s.serialize_struct("TurnEncoding", 9)?;
        st.serialize_field("lattice", self.lattice.name())?;
        st.serialize_field(
            "kind",
            match self.lattice {
                LatticeSpec::Planar(_) => "planar",
                LatticeSpec::Direct(_) => "direct",
            },
        )?;
        st.serialize_field("direction_count", &self.direction_count)?;
        st.serialize_field("layout", &self.layout)?;
        st.serialize_field("valid_states", &self.valid_state_count)?;
        st.serialize_field("total_states", &self.total_states())?;
        st.serialize_field(
            "polynomials",
            &Polynomials {
                da: self.in_plane.as_ref().map(|(a, _)| a.to_string()),
                db: self.in_plane.as_ref().map(|(_, b)| b.to_string()),
                dx: self.dx.to_string(),
                dy: self.dy.to_string(),
                dz: self.dz.to_string(),
            },
        )?;
        st.serialize_field(
            "coefficients",
            &Vectors {
                c_da: &c.c_da,
                c_db: &c.c_db,
                c_dc: c.c_dc.as_ref().map(|v| v.iter().map(format_rational).collect()),
            },
        )?;
        st.serialize_field("summary", &self.summary_lines())?;
        st.end()
    }
}

/// Coefficient vectors in basis column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients {
    pub c_da: Vec<Rational>,
    pub c_db: Vec<Rational>,
    /// Only for direct lattices, where `(c_da, c_db, c_dc)` are the x, y and
    /// z components.
    pub c_dc: Option<Vec<Rational>>,
}

fn padded(values: &[Rational], len: usize) -> Vec<Rational> {
    let mut v = values.to_vec();
    v.resize(len, Rational::zero());
    v
}

fn direction_qubits_for(count: usize) -> Result<usize> {
    let k = ceil_log2(count);
    if k > MAX_SOLVE_QUBITS {
        return Err(Error::ResourceLimit {
            what: "direction qubits",
            requested: k,
            limit: MAX_SOLVE_QUBITS,
        });
    }
    Ok(k)
}

pub fn coefficients(spec: &LatticeSpec) -> Result<Coefficients> {
    spec.ensure_valid()?;
    match spec {
        LatticeSpec::Planar(p) => {
            let k = direction_qubits_for(p.direction_count())?;
            Ok(Coefficients {
                c_da: solve_coefficients(k, &padded(&p.delta_a, 1 << k))?,
                c_db: solve_coefficients(k, &padded(&p.delta_b, 1 << k))?,
                c_dc: None,
            })
        }
        LatticeSpec::Direct(d) => {
            let k = direction_qubits_for(d.directions.len())?;
            let axis = |f: fn(&crate::Coord) -> &Rational| {
                let values: Vec<Rational> = d.directions.iter().map(|v| f(v).clone()).collect();
                solve_coefficients(k, &padded(&values, 1 << k))
            };
            Ok(Coefficients {
                c_da: axis(|v| &v.x)?,
                c_db: axis(|v| &v.y)?,
                c_dc: Some(axis(|v| &v.z)?),
            })
        }
    }
}

pub fn encode_planar(spec: &PlanarLatticeSpec) -> Result<TurnEncoding> {
    let lattice = LatticeSpec::Planar(spec.clone());
    let coeffs = coefficients(&lattice)?;
    let count = spec.direction_count();
    let k = ceil_log2(count);
    let n = k + 2;

    let da = Polynomial::from_coefficients(k, &coeffs.c_da);
    let db = Polynomial::from_coefficients(k, &coeffs.c_db);
    let (a, b) = (da.with_variable_count(n), db.with_variable_count(n));

    let one = Polynomial::constant(n, Rational::one());
    let p = Polynomial::var(n, k + 1);
    let r = Polynomial::var(n, k + 2);
    let s_yz = &(&one - &p) * &r;
    let s_zx = &p * &(&one - &r);
    let s_xy = &p * &r;

    let dx = &(&s_xy * &a) + &(&s_zx * &b);
    let dy = &(&s_yz * &a) + &(&s_xy * &b);
    let dz = &(&s_zx * &a) + &(&s_yz * &b);

    Ok(TurnEncoding {
        lattice,
        direction_count: count,
        layout: Layout {
            direction_bits: k,
            plane_bits: 2,
            bit_order: BIT_ORDER,
            invalid_direction_states: (count as u64..1 << k).collect(),
            invalid_plane_states: vec![0],
        },
        in_plane: Some((da, db)),
        dx,
        dy,
        dz,
        coefficients: coeffs,
        valid_state_count: count * Plane::ALL.len(),
    })
}

pub fn encode_direct(spec: &DirectLatticeSpec) -> Result<TurnEncoding> {
    let lattice = LatticeSpec::Direct(spec.clone());
    let coeffs = coefficients(&lattice)?;
    let count = spec.directions.len();
    let k = ceil_log2(count);
    let c_dc = coeffs.c_dc.clone().expect("direct lattices have a z component");
    Ok(TurnEncoding {
        lattice,
        direction_count: count,
        layout: Layout {
            direction_bits: k,
            plane_bits: 0,
            bit_order: BIT_ORDER,
            invalid_direction_states: (count as u64..1 << k).collect(),
            invalid_plane_states: vec![],
        },
        in_plane: None,
        dx: Polynomial::from_coefficients(k, &coeffs.c_da),
        dy: Polynomial::from_coefficients(k, &coeffs.c_db),
        dz: Polynomial::from_coefficients(k, &c_dc),
        coefficients: coeffs,
        valid_state_count: count,
    })
}

pub fn encode(spec: &LatticeSpec) -> Result<TurnEncoding> {
    match spec {
        LatticeSpec::Planar(p) => encode_planar(p),
        LatticeSpec::Direct(d) => encode_direct(d),
    }
}

/// Qubits needed for a chain of `beads` beads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QubitBudget {
    pub per_turn: usize,
    pub beads: usize,
}

impl QubitBudget {
    pub fn turns(&self) -> usize {
        self.beads - 1
    }

    pub fn total(&self) -> usize {
        self.per_turn * self.turns()
    }
}

pub fn qubit_budget(spec: &LatticeSpec, beads: usize) -> Result<QubitBudget> {
    if beads < 2 {
        return Err(Error::InvalidArgument(format!(
            "a chain needs at least 2 beads, got {beads}"
        )));
    }
    spec.ensure_valid()?;
    let per_turn = match spec {
        LatticeSpec::Planar(p) => ceil_log2(p.direction_count()) + 2,
        LatticeSpec::Direct(d) => ceil_log2(d.directions.len()),
    };
    Ok(QubitBudget { per_turn, beads })
}

/// The in-plane index `k` and plane the state selects, if any. Unused plane
/// code and padding states give `None`.
pub fn describe_state(enc: &TurnEncoding, state: u64) -> (u64, Option<Plane>) {
    let (dir, plane) = enc.layout.split(state);
    let plane = if enc.layout.plane_bits == 2 {
        Plane::from_code(plane)
    } else {
        None
    };
    (dir, plane)
}

/// Monomials used by any of the three axis polynomials.
pub fn support(enc: &TurnEncoding) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = [enc.dx(), enc.dy(), enc.dz()]
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect();
    all.sort();
    all.dedup();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{builtin_cubic_diag, builtin_fcc, Builtin};
    use crate::multilinear::row_mask;
    use crate::scalar::rational;
    use crate::Coord;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x, 1)).collect()
    }

    fn eval(enc: &TurnEncoding, state: u64) -> Coord {
        let mask = row_mask(enc.width(), state);
        Coord::new(
            enc.dx().evaluate_mask(mask),
            enc.dy().evaluate_mask(mask),
            enc.dz().evaluate_mask(mask),
        )
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(12), 4);
        assert_eq!(ceil_log2(18), 5);
    }

    #[test]
    fn cubic_coefficients() {
        let c = coefficients(&Builtin::CubicDiag.unit()).unwrap();
        assert_eq!(c.c_da, ints(&[1, -2, -1, 0, 2, 0, -1, 2]));
        assert_eq!(c.c_db, ints(&[0, 0, 1, 1, -2, -2, -1, 2]));
        assert_eq!(c.c_dc, None);
    }

    #[test]
    fn fcc_coefficients_scale_with_d() {
        let c1 = coefficients(&Builtin::Fcc.unit()).unwrap();
        assert_eq!(
            c1.c_da,
            vec![rational(1, 2), rational(-1, 1), rational(-1, 1), rational(2, 1)]
        );
        assert_eq!(
            c1.c_db,
            vec![rational(1, 2), rational(-1, 1), rational(0, 1), rational(0, 1)]
        );
        let c2 = coefficients(&Builtin::Fcc.spec(&rational(2, 1)).unwrap()).unwrap();
        for (a, b) in c1.c_da.iter().zip(&c2.c_da).chain(c1.c_db.iter().zip(&c2.c_db)) {
            assert_eq!(a * rational(2, 1), *b);
        }
    }

    #[test]
    fn planar_examples() {
        let cubic = encode_planar(&builtin_cubic_diag(&rational(1, 1)).unwrap()).unwrap();
        assert_eq!(cubic.width(), 5);
        assert_eq!(
            eval(&cubic, 0b00001),
            Coord::new(rational(0, 1), rational(1, 1), rational(0, 1))
        );

        let fcc = encode_planar(&builtin_fcc(&rational(1, 1)).unwrap()).unwrap();
        assert_eq!(fcc.width(), 4);
        assert_eq!(
            eval(&fcc, 0b00_11),
            Coord::new(rational(1, 2), rational(1, 2), rational(0, 1))
        );

        for enc in [&cubic, &fcc] {
            for dir in 0..1u64 << enc.direction_qubits() {
                assert!(eval(enc, dir << 2).is_zero());
                assert!(!enc.layout().is_valid_state(dir << 2));
            }
        }
        assert_eq!(cubic.valid_state_count(), 24);
        assert_eq!(fcc.valid_state_count(), 12);
        assert_eq!(fcc.in_plane().unwrap().1.to_string(), "1/2 - q1");
    }

    #[test]
    fn direct_examples() {
        let c = |x, y, z| Coord::new(rational(x, 1), rational(y, 1), rational(z, 1));
        let spec = DirectLatticeSpec {
            name: "four".into(),
            directions: vec![c(1, 0, 0), c(0, 1, 0), c(0, 0, 1), c(-1, 0, 0)],
        };
        let enc = encode_direct(&spec).unwrap();
        assert_eq!(enc.width(), 2);
        assert_eq!(enc.plane_qubits(), 0);
        assert_eq!(eval(&enc, 0), c(1, 0, 0));
        assert_eq!(eval(&enc, 3), c(-1, 0, 0));

        let two = DirectLatticeSpec {
            name: "two".into(),
            directions: vec![c(1, 0, 0), c(-1, 0, 0)],
        };
        let enc = encode_direct(&two).unwrap();
        assert_eq!(enc.width(), 1);
        assert!(enc.layout().invalid_direction_states.is_empty());
        assert!(enc.layout().is_valid_state(0) && enc.layout().is_valid_state(1));
    }

    #[test]
    fn fcc_as_direct_pads_to_sixteen() {
        let direct = builtin_fcc(&rational(1, 1)).unwrap().to_direct();
        let enc = encode_direct(&direct).unwrap();
        assert_eq!(enc.width(), 4);
        assert_eq!(enc.layout().invalid_direction_states, vec![12, 13, 14, 15]);
        for s in 12..16 {
            assert!(eval(&enc, s).is_zero());
        }
    }

    #[test]
    fn budgets() {
        let cubic = Builtin::CubicDiag.unit();
        assert_eq!(qubit_budget(&cubic, 2).unwrap().per_turn, 5);
        assert_eq!(qubit_budget(&Builtin::Fcc.unit(), 2).unwrap().per_turn, 4);
        assert_eq!(qubit_budget(&cubic, 4).unwrap().total(), 15);
        assert!(matches!(qubit_budget(&cubic, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let bad = PlanarLatticeSpec {
            name: "bad".into(),
            bond_scale: rational(1, 1),
            delta_a: ints(&[1, 1]),
            delta_b: ints(&[0, 0]),
        };
        assert!(matches!(encode_planar(&bad), Err(Error::InvalidSpec(_))));
    }
}
