//! Seifert invariants of fibered spaces over the 2-sphere.
//!
//! A space is recorded as an ordered list of fiber pairs `(p, q)` with
//! `p != 0`, meaning surgery coefficients `p_i/q_i` on a chain of fibers
//! around a 0-framed central curve. The list is kept exactly as given;
//! only [`SeifertInvariants::normalize`] passes to the classifying data.

use crate::abelian::AbelianGroupStructure;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::rational::ExtendedRational;
use crate::Scalar;
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Ordered, unnormalized fiber data over `S^2`. The empty list is the
/// fiberwise-trivial space (`S^1 x S^2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertInvariants<T> {
    fibers: Vec<(T, T)>,
}

impl<T: Scalar> SeifertInvariants<T> {
    pub fn new(fibers: Vec<(T, T)>) -> Result<Self> {
        if fibers.iter().any(|(p, _)| p.is_zero()) {
            return Err(Error::ZeroFiberMultiplicity);
        }
        Ok(SeifertInvariants { fibers })
    }

    /// Literal convenience; panics on a zero multiplicity.
    pub fn of(fibers: &[(i64, i64)]) -> Self {
        Self::new(fibers.iter().map(|&(p, q)| (T::from(p), T::from(q))).collect())
            .expect("zero fiber multiplicity")
    }

    pub fn fibers(&self) -> &[(T, T)] {
        &self.fibers
    }

    pub fn fiber_count(&self) -> usize {
        self.fibers.len()
    }

    /// The Euler number `sum q_i / p_i`.
    pub fn euler_number(&self) -> ExtendedRational<T> {
        self.fibers.iter().fold(ExtendedRational::zero(), |acc, (p, q)| {
            acc + ExtendedRational::new(q.clone(), p.clone()).expect("p nonzero")
        })
    }

    /// Mirror image: every fiber `(p, q)` becomes `(p, -q)`.
    pub fn reverse_orientation(&self) -> Self {
        SeifertInvariants {
            fibers: self.fibers.iter().map(|(p, q)| (p.clone(), -q.clone())).collect(),
        }
    }

    /// Classifying data: the Euler number together with the multiset of
    /// fractional parts `q_i/p_i mod 1` that are nonzero. Fibers with
    /// `p = ±1` contribute nothing beyond their Euler share.
    pub fn normalize(&self) -> SeifertNormalForm<T> {
        let mut parts: Vec<ExtendedRational<T>> = self
            .fibers
            .iter()
            .filter_map(|(p, q)| {
                let f = ExtendedRational::new(q.clone(), p.clone())
                    .expect("p nonzero")
                    .fract_mod1()
                    .expect("finite");
                (!f.is_zero()).then_some(f)
            })
            .collect();
        parts.sort();
        SeifertNormalForm { euler: self.euler_number(), parts }
    }

    /// Same space up to fiber-preserving homeomorphism: equal normal
    /// forms. Orientation matters; compare against
    /// [`Self::reverse_orientation`] for the mirror.
    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.normalize() == other.normalize()
    }

    /// Whether a two-fiber space is the 3-sphere: `|p1 q2 + p2 q1| = 1`.
    /// Only two-fiber data is accepted; anything else is an error, not a
    /// `false`.
    pub fn recognize_s3(&self) -> Result<bool> {
        let [(p1, q1), (p2, q2)] = self.fibers.as_slice() else {
            return Err(Error::TwoFiberRecognitionOnly);
        };
        let pairing = p1.clone() * q2.clone() + p2.clone() * q1.clone();
        Ok(pairing.abs().is_one())
    }

    /// Relation matrix of the first homology: generators are the central
    /// curve `h` and one meridian per fiber; relations are the central
    /// framing row `[0, 1, .., 1]` and one row `q_i h + p_i x_i` per
    /// fiber.
    pub fn presentation_matrix(&self) -> IntegerMatrix<T> {
        let k = self.fibers.len();
        let mut m = IntegerMatrix::zeros(k + 1, k + 1);
        for j in 1..=k {
            m.set(0, j, T::one());
        }
        for (i, (p, q)) in self.fibers.iter().enumerate() {
            m.set(i + 1, 0, q.clone());
            m.set(i + 1, i + 1, p.clone());
        }
        m
    }

    pub fn first_homology(&self) -> AbelianGroupStructure<T> {
        self.presentation_matrix().cokernel()
    }
}

impl<T: Scalar> fmt::Debug for SeifertInvariants<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> =
            self.fibers.iter().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "(S2; {})", fibers.join(", "))
    }
}

/// Homology of a connected sum of fibered pieces.
pub fn connected_sum_homology<T: Scalar>(
    summands: &[SeifertInvariants<T>],
) -> AbelianGroupStructure<T> {
    summands
        .iter()
        .fold(AbelianGroupStructure::trivial(), |acc, s| acc.direct_sum(&s.first_homology()))
}

/// The fiber ratio `q/p` a partial fiber list is missing to reach the
/// prescribed Euler number. Zero means no extra fiber is needed.
pub fn solve_fiber_by_euler<T: Scalar>(
    partial: &SeifertInvariants<T>,
    target: &ExtendedRational<T>,
) -> Result<ExtendedRational<T>> {
    if target.is_infinite() {
        return Err(Error::NotFinite);
    }
    Ok(target.clone() - partial.euler_number())
}

/// Reads a fiber pair `(p, q)` off a ratio `q/p`, `None` for zero.
pub fn fiber_from_ratio<T: Scalar>(value: &ExtendedRational<T>) -> Result<Option<(T, T)>> {
    if value.is_infinite() {
        return Err(Error::ZeroFiberMultiplicity);
    }
    if value.is_zero() {
        return Ok(None);
    }
    Ok(Some((value.denominator().clone(), value.numerator().clone())))
}

/// Orientation-sensitive classifying data: Euler number plus the sorted
/// nonzero fractional parts of the fiber ratios.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertNormalForm<T> {
    euler: ExtendedRational<T>,
    parts: Vec<ExtendedRational<T>>,
}

impl<T: Scalar> SeifertNormalForm<T> {
    pub fn euler(&self) -> &ExtendedRational<T> {
        &self.euler
    }

    pub fn parts(&self) -> &[ExtendedRational<T>] {
        &self.parts
    }
}

impl<T: Scalar> fmt::Debug for SeifertNormalForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "e={} parts=[{}]", self.euler, parts.join(", "))
    }
}

impl<T: Scalar> Serialize for SeifertNormalForm<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SeifertNormalForm", 2)?;
        s.serialize_field("euler", &self.euler)?;
        s.serialize_field("parts", &self.parts)?;
        s.end()
    }
}

impl<T: Scalar> Serialize for SeifertInvariants<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fibers: Option<Vec<(i64, i64)>> =
            self.fibers.iter().map(|(p, q)| Some((p.to_i64()?, q.to_i64()?))).collect();
        let fibers =
            fibers.ok_or_else(|| S::Error::custom("fiber coefficient exceeds i64 range"))?;
        let mut s = serializer.serialize_struct("SeifertInvariants", 2)?;
        s.serialize_field("base", "S2")?;
        s.serialize_field("fibers", &fibers)?;
        s.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for SeifertInvariants<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            base: String,
            fibers: Vec<(i64, i64)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.base != "S2" {
            return Err(D::Error::custom(format!("unsupported base `{}`", raw.base)));
        }
        SeifertInvariants::new(
            raw.fibers.into_iter().map(|(p, q)| (T::from(p), T::from(q))).collect(),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, Rational, Seifert};

    fn q(a: i64, b: i64) -> Rational {
        Rational::of(a, b)
    }

    #[test]
    fn euler_numbers_frozen() {
        assert_eq!(Seifert::of(&[(-2, 1), (7, 1), (14, 5)]).euler_number(), q(0, 1));
        assert_eq!(Seifert::of(&[(-14, 5), (-6, 1), (21, 11)]).euler_number(), q(0, 1));
        assert_eq!(
            Seifert::of(&[(-2, 1), (7, 1), (-6, 1), (21, 11)]).euler_number(),
            q(0, 1)
        );
        assert_eq!(Seifert::of(&[(2, 1), (3, 1), (5, 1)]).euler_number(), q(31, 30));
        assert_eq!(Seifert::of(&[]).euler_number(), q(0, 1));
    }

    #[test]
    fn normal_form_sorts_fractional_parts() {
        let y = Seifert::of(&[(-2, 1), (7, 1), (14, 5)]);
        let nf = y.normalize();
        assert_eq!(nf.euler(), &q(0, 1));
        assert_eq!(nf.parts(), &[q(1, 7), q(5, 14), q(1, 2)]);
        // integer fibers carry no fractional part
        let with_int = Seifert::of(&[(1, 3), (2, 1)]);
        assert_eq!(with_int.normalize().parts(), &[q(1, 2)]);
        assert_eq!(with_int.normalize().euler(), &q(7, 2));
    }

    #[test]
    fn equivalence_ignores_order_and_euler_shifts() {
        let a = Seifert::of(&[(2, 1), (3, 1)]);
        let b = Seifert::of(&[(3, -2), (2, 3)]);
        assert!(a.is_equivalent(&b));
        assert!(!a.is_equivalent(&Seifert::of(&[(2, 1), (3, 1), (7, 1)])));
        assert!(!a.is_equivalent(&Seifert::of(&[(2, 1), (3, 4)])));
        let y = Seifert::of(&[(-2, 1), (7, 1), (14, 5)]);
        let perm = Seifert::of(&[(14, 5), (-2, 1), (7, 1)]);
        assert!(y.is_equivalent(&perm));
    }

    #[test]
    fn mirror_matches_negated_family_member() {
        let y = Seifert::of(&[(-2, 1), (7, 1), (14, 5)]);
        let a = Seifert::of(&[(-2, 1), (-7, 1), (14, 9)]);
        assert!(a.is_equivalent(&y.reverse_orientation()));
        assert!(!a.is_equivalent(&y));
        assert_eq!(
            y.reverse_orientation().normalize().parts(),
            &[q(1, 2), q(9, 14), q(6, 7)]
        );
    }

    #[test]
    fn sphere_recognition_two_fibers_only() {
        assert!(Seifert::of(&[(7, 1), (-6, 1)]).recognize_s3().unwrap());
        assert!(Seifert::of(&[(2, 1), (-7, 4)]).recognize_s3().unwrap());
        assert!(Seifert::of(&[(2, 1), (-7, 3)]).recognize_s3().unwrap());
        // swapping the roles of the two coefficients breaks the pairing
        assert!(!Seifert::of(&[(2, 1), (-4, 7)]).recognize_s3().unwrap());
        assert_eq!(
            Seifert::of(&[(2, 1), (3, 1), (5, 1)]).recognize_s3(),
            Err(Error::TwoFiberRecognitionOnly)
        );
        assert_eq!(Seifert::of(&[]).recognize_s3(), Err(Error::TwoFiberRecognitionOnly));
    }

    #[test]
    fn homology_frozen_cases() {
        assert_eq!(Seifert::of(&[(-2, 1), (7, 1), (14, 5)]).first_homology().to_string(), "Z");
        assert_eq!(Seifert::of(&[(2, 1), (3, 1), (5, 1)]).first_homology().to_string(), "Z/31");
        assert_eq!(Seifert::of(&[(2, 1), (3, 1), (5, -4)]).first_homology().to_string(), "0");
        // no exceptional fibers: one 0-framed unknot
        assert_eq!(Seifert::of(&[]).first_homology().to_string(), "Z");
        let sum = connected_sum_homology(&[
            Seifert::of(&[(-2, 1), (7, 1), (14, 5)]),
            Seifert::of(&[(-14, 5), (-6, 1), (21, 11)]),
        ]);
        assert_eq!(sum.to_string(), "Z^2");
    }

    #[test]
    fn euler_solving_recovers_missing_fiber() {
        let partial = Seifert::of(&[(-2, 1), (7, 1)]);
        let v = solve_fiber_by_euler(&partial, &q(0, 1)).unwrap();
        assert_eq!(v, q(5, 14));
        assert_eq!(fiber_from_ratio(&v).unwrap(), Some((Int::from(14), Int::from(5))));

        let partial = Seifert::of(&[(-6, 1), (21, 11)]);
        let v = solve_fiber_by_euler(&partial, &q(0, 1)).unwrap();
        assert_eq!(v, q(-5, 14));
        assert_eq!(fiber_from_ratio(&v).unwrap(), Some((Int::from(14), Int::from(-5))));

        // already on target: no fiber needed
        let done = Seifert::of(&[(2, 1), (2, -1)]);
        let v = solve_fiber_by_euler(&done, &q(0, 1)).unwrap();
        assert_eq!(fiber_from_ratio(&v).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let y = Seifert::of(&[(-2, 1), (7, 1), (14, 5)]);
        let s = serde_json::to_string(&y).unwrap();
        assert_eq!(s, r#"{"base":"S2","fibers":[[-2,1],[7,1],[14,5]]}"#);
        let back: Seifert = serde_json::from_str(&s).unwrap();
        assert_eq!(back, y);
        assert!(serde_json::from_str::<Seifert>(r#"{"base":"T2","fibers":[]}"#).is_err());
        assert!(serde_json::from_str::<Seifert>(r#"{"base":"S2","fibers":[[0,1]]}"#).is_err());

        let nf = serde_json::to_string(&y.normalize()).unwrap();
        assert_eq!(nf, r#"{"euler":"0/1","parts":["1/7","5/14","1/2"]}"#);
    }
}
