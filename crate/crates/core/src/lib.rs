//! Encode lattice turn geometries as multilinear polynomials over qubit
//! computational basis states, and decode chain bitstrings back into exact
//! bead coordinates.
//!
//! The algebra layer ([`multilinear`], [`linalg`], [`geometry`]) is generic
//! over the scalar type; lattice compilation and decoding run on exact
//! [`Rational`]s.
//!
//! ```
//! use turnenc::{chain, encoder, lattice::Builtin, Coord};
//!
//! let enc = encoder::encode(&Builtin::Fcc.unit()).unwrap();
//! assert_eq!(enc.dx().to_string(), "1/2*q3 - q1*q3 - q2*q3*q4 + 2*q1*q2*q3*q4");
//! let bits = chain::ChainBitstring::parse("0001", enc.width(), 1).unwrap();
//! let conf = chain::decode_chain(&enc, &bits, Coord::origin()).unwrap();
//! assert!(conf.valid);
//! ```

pub mod analysis;
pub mod chain;
pub mod encoder;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod linalg;
pub mod multilinear;
pub mod published;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::Coordinate3;
pub use multilinear::{Monomial, MultilinearPolynomial};
pub use scalar::{Field, Scalar};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Exact-coefficient multilinear polynomial.
pub type Polynomial = MultilinearPolynomial<Rational>;
/// Floating-point multilinear polynomial.
pub type PolynomialF64 = MultilinearPolynomial<f64>;
pub type PolynomialF32 = MultilinearPolynomial<f32>;
/// Exact 3D coordinate or displacement.
pub type Coord = Coordinate3<Rational>;
pub type CoordF64 = Coordinate3<f64>;
