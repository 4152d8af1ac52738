//! Finitely generated abelian groups in invariant-factor form.

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::Scalar;
use serde::de::Error as _;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `2 <= t_1 | t_2 | ... | t_k`.
/// The invariant factor decomposition is unique, so derived equality is
/// isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure<T> {
    free_rank: usize,
    torsion: Vec<T>,
}

impl<T: Scalar> AbelianGroupStructure<T> {
    /// Validates the divisor chain: every entry at least 2, each dividing
    /// the next.
    pub fn new(free_rank: usize, torsion: Vec<T>) -> Result<Self> {
        for (i, t) in torsion.iter().enumerate() {
            if *t < T::from(2) {
                return Err(Error::Invalid(format!("torsion coefficient {t} below 2")));
            }
            if i + 1 < torsion.len() && !(torsion[i + 1].clone() % t.clone()).is_zero() {
                return Err(Error::Invalid(format!(
                    "torsion coefficients {t}, {} break the divisor chain",
                    torsion[i + 1]
                )));
            }
        }
        Ok(AbelianGroupStructure { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroupStructure { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: T) -> Result<Self> {
        if order.is_zero() {
            return Ok(Self::free(1));
        }
        let order = order.abs();
        if order.is_one() {
            Ok(Self::trivial())
        } else {
            Self::new(0, vec![order])
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalized into a single divisor chain (the chains
    /// of the two summands interleave, so this runs one small Smith
    /// reduction on the combined diagonal).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let combined: Vec<T> =
            self.torsion.iter().chain(other.torsion.iter()).cloned().collect();
        let k = combined.len();
        let mut m = IntegerMatrix::zeros(k, k);
        for (i, t) in combined.into_iter().enumerate() {
            m.set(i, i, t);
        }
        let merged = m.cokernel();
        AbelianGroupStructure {
            free_rank: self.free_rank + other.free_rank,
            torsion: merged.torsion,
        }
    }
}

impl<T: Scalar> fmt::Display for AbelianGroupStructure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl<T: Scalar> fmt::Debug for AbelianGroupStructure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> Serialize for AbelianGroupStructure<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion: Option<Vec<i64>> = self.torsion.iter().map(|t| t.to_i64()).collect();
        let torsion =
            torsion.ok_or_else(|| S::Error::custom("torsion coefficient exceeds i64 range"))?;
        let mut s = serializer.serialize_struct("AbelianGroupStructure", 2)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for AbelianGroupStructure<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            free_rank: usize,
            torsion: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        AbelianGroupStructure::new(raw.free_rank, raw.torsion.into_iter().map(T::from).collect())
            .map_err(D::Error::custom)
    }
}
