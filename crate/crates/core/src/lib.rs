//! Exact calculus for surgery descriptions of small Seifert fibered spaces.
//!
//! The crate has three layers:
//!
//! * exact arithmetic: extended rationals (one point at infinity), integer
//!   matrices with Smith normal form, finitely generated abelian groups;
//! * diagram calculus: plumbing forests of framed unknots, the local moves
//!   that preserve the surgered manifold, Seifert invariants and their
//!   normal form, plus a verified two-star family indexed by `n`;
//! * covering counts: boundary and genus bookkeeping for cyclic branched
//!   covers of the disk and the sphere, including an explicit polygon
//!   identification model of the covering surface.
//!
//! Everything arithmetic is generic over [`Scalar`]; the aliases at the
//! crate root fix the arbitrary precision instantiation used by the CLI.

pub mod abelian;
pub mod cover;
pub mod diagram;
pub mod error;
pub mod family;
pub mod matrix;
pub mod polygon;
pub mod rational;
pub mod seifert;

pub use error::{Error, Result};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::fmt;
use std::hash::Hash;

/// Scalars the exact layers are generic over: signed integers with
/// Euclidean division. `From<i64>` injects literals, `ToPrimitive` feeds
/// the JSON boundary. Implemented by `i64`, `i128` and `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + From<i64> + ToPrimitive + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Hash + fmt::Debug + fmt::Display + From<i64> + ToPrimitive + 'static
{
}

/// Arbitrary precision scalar used by the command line tool.
pub type Int = num_bigint::BigInt;

pub type Rational = rational::ExtendedRational<Int>;
pub type Matrix = matrix::IntegerMatrix<Int>;
pub type Group = abelian::AbelianGroupStructure<Int>;
pub type Seifert = seifert::SeifertInvariants<Int>;
pub type NormalForm = seifert::SeifertNormalForm<Int>;
pub type Diagram = diagram::PlumbingForest<Int>;
