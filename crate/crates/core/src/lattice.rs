//! Lattice geometries described by the displacements a single turn may take.
//!
//! A planar lattice lists `K` in-plane pairs `(Δa_k, Δb_k)` that are placed
//! into each of the three orthogonal planes:
//!
//! | plane | Δx   | Δy   | Δz   |
//! |-------|------|------|------|
//! | y-z   | 0    | Δa_k | Δb_k |
//! | z-x   | Δb_k | 0    | Δa_k |
//! | x-y   | Δa_k | Δb_k | 0    |
//!
//! A direct lattice simply lists its 3D directions.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rational};
use crate::{Coord, Rational};

/// Plane of a planar turn, with its two-bit selector code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Yz,
    Zx,
    Xy,
}

impl Plane {
    pub const ALL: [Plane; 3] = [Plane::Yz, Plane::Zx, Plane::Xy];

    /// Selector bits `q_{k+1} q_{k+2}` read as a two-bit number.
    pub fn code(self) -> u64 {
        match self {
            Plane::Yz => 0b01,
            Plane::Zx => 0b10,
            Plane::Xy => 0b11,
        }
    }

    /// `None` for the unused code `00`.
    pub fn from_code(code: u64) -> Option<Plane> {
        match code {
            0b01 => Some(Plane::Yz),
            0b10 => Some(Plane::Zx),
            0b11 => Some(Plane::Xy),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Plane::Yz => "yz",
            Plane::Zx => "zx",
            Plane::Xy => "xy",
        }
    }

    /// The 3D displacement of the in-plane pair `(a, b)` in this plane.
    pub fn place(self, a: &Rational, b: &Rational) -> Coord {
        let zero = Rational::zero();
        match self {
            Plane::Yz => Coord::new(zero, a.clone(), b.clone()),
            Plane::Zx => Coord::new(b.clone(), zero, a.clone()),
            Plane::Xy => Coord::new(a.clone(), b.clone(), zero),
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// In-plane displacement pairs shared by the three orthogonal planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarLatticeSpec {
    pub name: String,
    pub bond_scale: Rational,
    pub delta_a: Vec<Rational>,
    pub delta_b: Vec<Rational>,
}

impl PlanarLatticeSpec {
    pub fn direction_count(&self) -> usize {
        self.delta_a.len().min(self.delta_b.len())
    }

    /// Every `(plane, k, displacement)` placement, plane-major.
    pub fn placements(&self) -> Vec<(Plane, usize, Coord)> {
        Plane::ALL
            .iter()
            .flat_map(|&plane| {
                (0..self.direction_count()).map(move |k| (plane, k, plane.place(&self.delta_a[k], &self.delta_b[k])))
            })
            .collect()
    }

    /// Equivalent direct spec over the deduplicated placed displacements.
    pub fn to_direct(&self) -> DirectLatticeSpec {
        DirectLatticeSpec {
            name: format!("{}-direct", self.name),
            directions: dedup(self.placements().into_iter().map(|(_, _, d)| d)),
        }
    }
}

/// An explicit list of 3D turn directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectLatticeSpec {
    pub name: String,
    pub directions: Vec<Coord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    Planar(PlanarLatticeSpec),
    Direct(DirectLatticeSpec),
}

impl From<PlanarLatticeSpec> for LatticeSpec {
    fn from(spec: PlanarLatticeSpec) -> Self {
        LatticeSpec::Planar(spec)
    }
}

impl From<DirectLatticeSpec> for LatticeSpec {
    fn from(spec: DirectLatticeSpec) -> Self {
        LatticeSpec::Direct(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonPositiveBondScale(String),
    LengthMismatch { delta_a: usize, delta_b: usize },
    TooFewDirections(usize),
    ZeroDirection(usize),
    DuplicateDirection { first: usize, second: usize, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveBondScale(d) => write!(f, "bond scale d = {d} is not positive"),
            Violation::LengthMismatch { delta_a, delta_b } => {
                write!(f, "delta_a has {delta_a} entries but delta_b has {delta_b}")
            }
            Violation::TooFewDirections(n) => write!(f, "{n} directions given, at least 2 required"),
            Violation::ZeroDirection(i) => write!(f, "direction {i} is the zero displacement"),
            Violation::DuplicateDirection { first, second, value } => {
                write!(f, "directions {first} and {second} are both {value}")
            }
        }
    }
}

fn dedup(items: impl IntoIterator<Item = Coord>) -> Vec<Coord> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|d| seen.insert(d.clone())).collect()
}

fn duplicates<K: Eq + std::hash::Hash + Clone>(keys: &[K], show: impl Fn(&K) -> String) -> Vec<Violation> {
    let mut first_seen = std::collections::HashMap::new();
    let mut out = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        if let Some(&first) = first_seen.get(k) {
            out.push(Violation::DuplicateDirection {
                first,
                second: i,
                value: show(k),
            });
        } else {
            first_seen.insert(k.clone(), i);
        }
    }
    out
}

impl LatticeSpec {
    pub fn name(&self) -> &str {
        match self {
            LatticeSpec::Planar(p) => &p.name,
            LatticeSpec::Direct(d) => &d.name,
        }
    }

    /// Every invariant violation; empty when the spec is usable.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        match self {
            LatticeSpec::Planar(p) => {
                if !p.bond_scale.is_positive() {
                    out.push(Violation::NonPositiveBondScale(format_rational(&p.bond_scale)));
                }
                if p.delta_a.len() != p.delta_b.len() {
                    out.push(Violation::LengthMismatch {
                        delta_a: p.delta_a.len(),
                        delta_b: p.delta_b.len(),
                    });
                }
                let k = p.direction_count();
                if k < 2 {
                    out.push(Violation::TooFewDirections(k));
                }
                let pairs: Vec<(Rational, Rational)> =
                    (0..k).map(|i| (p.delta_a[i].clone(), p.delta_b[i].clone())).collect();
                out.extend(
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(_, (a, b))| a.is_zero() && b.is_zero())
                        .map(|(i, _)| Violation::ZeroDirection(i)),
                );
                out.extend(duplicates(&pairs, |(a, b)| {
                    format!("({}, {})", format_rational(a), format_rational(b))
                }));
            }
            LatticeSpec::Direct(d) => {
                if d.directions.len() < 2 {
                    out.push(Violation::TooFewDirections(d.directions.len()));
                }
                out.extend(
                    d.directions
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.is_zero())
                        .map(|(i, _)| Violation::ZeroDirection(i)),
                );
                out.extend(duplicates(&d.directions, |v| v.to_string()));
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSpec(violations))
        }
    }

    /// The distinct 3D displacements a turn can produce, in first-listed
    /// order.
    pub fn direction_set(&self) -> Vec<Coord> {
        match self {
            LatticeSpec::Planar(p) => p.to_direct().directions,
            LatticeSpec::Direct(d) => d.directions.clone(),
        }
    }
}

/// `Ok(())` or every violation found.
pub fn validate(spec: &LatticeSpec) -> std::result::Result<(), Vec<Violation>> {
    let v = spec.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Number of distinct 3D displacements reachable in one turn.
pub fn degrees_of_freedom(spec: &LatticeSpec) -> Result<usize> {
    spec.ensure_valid()?;
    Ok(spec.direction_set().len())
}

fn check_bond_scale(d: &Rational) -> Result<()> {
    if d.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(vec![Violation::NonPositiveBondScale(
            format_rational(d),
        )]))
    }
}

fn scaled(unit: &[i64], denom: i64, d: &Rational) -> Vec<Rational> {
    unit.iter().map(|&v| rational(v, denom) * d).collect()
}

/// Face-centred cubic: four in-plane moves of `±d/2` per plane, twelve in all.
pub fn builtin_fcc(d: &Rational) -> Result<PlanarLatticeSpec> {
    check_bond_scale(d)?;
    Ok(PlanarLatticeSpec {
        name: "fcc".to_string(),
        bond_scale: d.clone(),
        delta_a: scaled(&[1, -1, -1, 1], 2, d),
        delta_b: scaled(&[1, 1, -1, -1], 2, d),
    })
}

/// Cubic lattice with planar diagonals: eight in-plane moves counter-clockwise
/// from `(d, 0)`.
pub fn builtin_cubic_diag(d: &Rational) -> Result<PlanarLatticeSpec> {
    check_bond_scale(d)?;
    Ok(PlanarLatticeSpec {
        name: "cubic-diag".to_string(),
        bond_scale: d.clone(),
        delta_a: scaled(&[1, 1, 0, -1, -1, -1, 0, 1], 1, d),
        delta_b: scaled(&[0, 1, 1, 1, 0, -1, -1, -1], 1, d),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Fcc,
    CubicDiag,
}

impl Builtin {
    pub const ALL: [Builtin; 2] = [Builtin::CubicDiag, Builtin::Fcc];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Fcc => "fcc",
            Builtin::CubicDiag => "cubic-diag",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn planar(self, d: &Rational) -> Result<PlanarLatticeSpec> {
        match self {
            Builtin::Fcc => builtin_fcc(d),
            Builtin::CubicDiag => builtin_cubic_diag(d),
        }
    }

    pub fn spec(self, d: &Rational) -> Result<LatticeSpec> {
        self.planar(d).map(LatticeSpec::Planar)
    }

    /// The built-in at unit bond scale.
    pub fn unit(self) -> LatticeSpec {
        self.spec(&Rational::one()).expect("unit bond scale is positive")
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
enum SpecKind {
    Planar,
    Direct,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    name: String,
    kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta_a: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta_b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    directions: Option<Vec<[String; 3]>>,
}

fn parse_all(texts: &[String]) -> Result<Vec<Rational>> {
    texts.iter().map(|t| parse_rational(t).map_err(Error::Parse)).collect()
}

impl LatticeSpec {
    /// Parse a JSON spec file. Listed values are in units of `d`, which
    /// defaults to 1; `bond_scale` replaces the file's `d` when given.
    pub fn from_json_str(text: &str, bond_scale: Option<&Rational>) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let d = match (bond_scale, &file.d) {
            (Some(d), _) => d.clone(),
            (None, Some(text)) => parse_rational(text).map_err(Error::Parse)?,
            (None, None) => Rational::one(),
        };
        check_bond_scale(&d)?;
        match file.kind {
            SpecKind::Planar => {
                if file.directions.is_some() {
                    return Err(Error::Parse("planar spec must not list \"directions\"".into()));
                }
                let (Some(a), Some(b)) = (&file.delta_a, &file.delta_b) else {
                    return Err(Error::Parse("planar spec needs \"delta_a\" and \"delta_b\"".into()));
                };
                Ok(LatticeSpec::Planar(PlanarLatticeSpec {
                    name: file.name,
                    delta_a: parse_all(a)?.into_iter().map(|v| v * &d).collect(),
                    delta_b: parse_all(b)?.into_iter().map(|v| v * &d).collect(),
                    bond_scale: d,
                }))
            }
            SpecKind::Direct => {
                if file.delta_a.is_some() || file.delta_b.is_some() {
                    return Err(Error::Parse("direct spec must not list \"delta_a\"/\"delta_b\"".into()));
                }
                let Some(dirs) = &file.directions else {
                    return Err(Error::Parse("direct spec needs \"directions\"".into()));
                };
                let directions = dirs
                    .iter()
                    .map(|[x, y, z]| {
                        let v = parse_all(&[x.clone(), y.clone(), z.clone()])?;
                        Ok(Coord::new(v[0].clone() * &d, v[1].clone() * &d, v[2].clone() * &d))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(LatticeSpec::Direct(DirectLatticeSpec {
                    name: file.name,
                    directions,
                }))
            }
        }
    }

    /// JSON spec text that [`LatticeSpec::from_json_str`] reads back to `self`.
    pub fn to_json_string(&self) -> String {
        let file = match self {
            LatticeSpec::Planar(p) => {
                let unit = |v: &Vec<Rational>| v.iter().map(|x| format_rational(&(x / &p.bond_scale))).collect();
                SpecFile {
                    name: p.name.clone(),
                    kind: SpecKind::Planar,
                    d: Some(format_rational(&p.bond_scale)),
                    delta_a: Some(unit(&p.delta_a)),
                    delta_b: Some(unit(&p.delta_b)),
                    directions: None,
                }
            }
            LatticeSpec::Direct(d) => SpecFile {
                name: d.name.clone(),
                kind: SpecKind::Direct,
                d: None,
                delta_a: None,
                delta_b: None,
                directions: Some(
                    d.directions
                        .iter()
                        .map(|v| v.components().map(format_rational))
                        .collect(),
                ),
            },
        };
        serde_json::to_string_pretty(&file).expect("spec serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    fn c(x: i64, y: i64, z: i64) -> Coord {
        Coord::new(r(x, 1), r(y, 1), r(z, 1))
    }

    #[test]
    fn fcc_values() {
        let fcc = builtin_fcc(&r(1, 1)).unwrap();
        assert_eq!(fcc.delta_a, vec![r(1, 2), r(-1, 2), r(-1, 2), r(1, 2)]);
        assert_eq!(fcc.delta_b, vec![r(1, 2), r(1, 2), r(-1, 2), r(-1, 2)]);
        let fcc2 = builtin_fcc(&r(2, 1)).unwrap();
        assert_eq!(fcc2.delta_a, vec![r(1, 1), r(-1, 1), r(-1, 1), r(1, 1)]);
        assert!(matches!(builtin_fcc(&r(0, 1)), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn cubic_values() {
        let cubic = builtin_cubic_diag(&r(1, 1)).unwrap();
        assert_eq!((cubic.delta_a[0].clone(), cubic.delta_b[0].clone()), (r(1, 1), r(0, 1)));
        let cubic3 = builtin_cubic_diag(&r(3, 1)).unwrap();
        for k in 0..8 {
            assert_eq!(cubic3.delta_a[k], &cubic.delta_a[k] * r(3, 1));
            assert_eq!(cubic3.delta_b[k], &cubic.delta_b[k] * r(3, 1));
        }
        assert!(builtin_cubic_diag(&r(-1, 1)).is_err());
    }

    #[test]
    fn validation() {
        assert!(validate(&Builtin::Fcc.unit()).is_ok());
        assert!(validate(&Builtin::CubicDiag.unit()).is_ok());

        let dup = LatticeSpec::Planar(PlanarLatticeSpec {
            name: "dup".into(),
            bond_scale: r(1, 1),
            delta_a: vec![r(1, 1), r(1, 1)],
            delta_b: vec![r(0, 1), r(0, 1)],
        });
        assert_eq!(
            validate(&dup).unwrap_err(),
            vec![Violation::DuplicateDirection {
                first: 0,
                second: 1,
                value: "(1, 0)".into()
            }]
        );

        let zero = LatticeSpec::Direct(DirectLatticeSpec {
            name: "z".into(),
            directions: vec![c(1, 0, 0), c(0, 0, 0)],
        });
        assert_eq!(validate(&zero).unwrap_err(), vec![Violation::ZeroDirection(1)]);

        let short = LatticeSpec::Planar(PlanarLatticeSpec {
            name: "s".into(),
            bond_scale: r(1, 1),
            delta_a: vec![r(1, 1), r(0, 1), r(2, 1)],
            delta_b: vec![r(0, 1), r(1, 1)],
        });
        assert_eq!(
            validate(&short).unwrap_err(),
            vec![Violation::LengthMismatch { delta_a: 3, delta_b: 2 }]
        );
    }

    #[test]
    fn dof_counts() {
        assert_eq!(degrees_of_freedom(&Builtin::Fcc.unit()).unwrap(), 12);
        assert_eq!(degrees_of_freedom(&Builtin::CubicDiag.unit()).unwrap(), 18);
        let axes = LatticeSpec::Direct(DirectLatticeSpec {
            name: "axes".into(),
            directions: vec![
                c(1, 0, 0),
                c(-1, 0, 0),
                c(0, 1, 0),
                c(0, -1, 0),
                c(0, 0, 1),
                c(0, 0, -1),
            ],
        });
        assert_eq!(degrees_of_freedom(&axes).unwrap(), 6);
    }

    #[test]
    fn fcc_bond_lengths() {
        for d in [r(1, 1), r(2, 1), r(3, 7)] {
            let spec = builtin_fcc(&d).unwrap();
            let half_d2 = &d * &d / r(2, 1);
            for (_, _, v) in spec.placements() {
                assert_eq!(v.norm_squared(), half_d2);
            }
        }
    }

    #[test]
    fn cubic_has_six_cross_plane_duplicates() {
        for d in [r(1, 1), r(5, 2)] {
            let spec = builtin_cubic_diag(&d).unwrap();
            let placed = spec.placements();
            assert_eq!(placed.len(), 24);
            let set: HashSet<_> = placed.iter().map(|(_, _, v)| v.clone()).collect();
            assert_eq!(placed.len() - set.len(), 6);
            assert_eq!(degrees_of_freedom(&LatticeSpec::Planar(spec)).unwrap(), 18);
        }
    }

    #[test]
    fn json_round_trip_and_scaling() {
        let text =
            r#"{"name":"sq","kind":"planar","d":"2","delta_a":["1","0","-1","0"],"delta_b":["0","1","0","-1/2"]}"#;
        let spec = LatticeSpec::from_json_str(text, None).unwrap();
        let LatticeSpec::Planar(p) = &spec else { panic!() };
        assert_eq!(p.delta_a[0], r(2, 1));
        assert_eq!(p.delta_b[3], r(-1, 1));
        let again = LatticeSpec::from_json_str(&spec.to_json_string(), None).unwrap();
        assert_eq!(again, spec);

        let over = LatticeSpec::from_json_str(text, Some(&r(1, 1))).unwrap();
        let LatticeSpec::Planar(p) = &over else { panic!() };
        assert_eq!(p.delta_a[0], r(1, 1));

        let direct = r#"{"name":"t","kind":"direct","directions":[["1","0","0"],["0","1/2","0"]]}"#;
        let spec = LatticeSpec::from_json_str(direct, None).unwrap();
        assert_eq!(spec.direction_set()[1], Coord::new(r(0, 1), r(1, 2), r(0, 1)));
        assert_eq!(LatticeSpec::from_json_str(&spec.to_json_string(), None).unwrap(), spec);
    }

    #[test]
    fn json_rejects_unknown_keys_and_bad_values() {
        let unknown = r#"{"name":"x","kind":"direct","directions":[],"colour":"red"}"#;
        assert!(matches!(
            LatticeSpec::from_json_str(unknown, None),
            Err(Error::Parse(_))
        ));
        let bad = r#"{"name":"x","kind":"planar","delta_a":["1/0"],"delta_b":["1"]}"#;
        assert!(matches!(LatticeSpec::from_json_str(bad, None), Err(Error::Parse(_))));
        let mixed = r#"{"name":"x","kind":"planar","delta_a":["1"],"delta_b":["1"],"directions":[]}"#;
        assert!(matches!(LatticeSpec::from_json_str(mixed, None), Err(Error::Parse(_))));
        let neg = r#"{"name":"x","kind":"planar","d":"-1","delta_a":["1"],"delta_b":["1"]}"#;
        assert!(matches!(
            LatticeSpec::from_json_str(neg, None),
            Err(Error::InvalidSpec(_))
        ));
    }
}
