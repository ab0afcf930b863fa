use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::Error;

/// Rational vector indexed by string labels. Iteration follows insertion order;
/// absent labels read as zero.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct RatVector {
    entries: IndexMap<String, Rational>,
}

impl RatVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros<S: AsRef<str>>(labels: &[S]) -> Self {
        labels
            .iter()
            .map(|l| (l.as_ref().to_string(), Rational::zero()))
            .collect()
    }

    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, Rational)>,
    ) -> Result<Self, Error> {
        let mut v = RatVector::new();
        for (label, value) in pairs {
            let label = label.into();
            if v.entries.contains_key(&label) {
                return Err(Error::IndexMismatch(format!("duplicate label {label:?}")));
            }
            v.entries.insert(label, value);
        }
        Ok(v)
    }

    /// Dense values in `labels` order.
    pub fn from_values<S: AsRef<str>>(labels: &[S], values: Vec<Rational>) -> Self {
        assert_eq!(labels.len(), values.len(), "label/value count mismatch");
        labels
            .iter()
            .map(|l| l.as_ref().to_string())
            .zip(values)
            .collect()
    }

    pub fn get(&self, label: &str) -> Rational {
        self.entries.get(label).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, label: impl Into<String>, value: Rational) {
        self.entries.insert(label.into(), value);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Rational::is_zero)
    }

    /// Labels with nonzero entries, in iteration order.
    pub fn support(&self) -> Vec<&str> {
        self.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn sum(&self) -> Rational {
        self.entries.values().sum()
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        self.iter().map(|(k, v)| v * &other.get(k)).sum()
    }

    /// Values read in `labels` order.
    pub fn aligned<S: AsRef<str>>(&self, labels: &[S]) -> Vec<Rational> {
        labels.iter().map(|l| self.get(l.as_ref())).collect()
    }

    /// Errors when a nonzero entry carries a label outside `labels`.
    pub fn check_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<(), Error> {
        for (k, v) in self.iter() {
            if !v.is_zero() && !labels.iter().any(|l| l.as_ref() == k) {
                return Err(Error::UnknownComponent(k.to_string()));
            }
        }
        Ok(())
    }
}

impl FromIterator<(String, Rational)> for RatVector {
    fn from_iter<T: IntoIterator<Item = (String, Rational)>>(iter: T) -> Self {
        RatVector {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(_, v)| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.len()))?;
        for (k, v) in self.iter() {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = IndexMap::<String, Rational>::deserialize(deserializer)?;
        Ok(RatVector { entries })
    }
}

/// Integer vector indexed by component labels (tropical weights, σ_v).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct IntVector {
    entries: IndexMap<String, BigInt>,
}

impl IntVector {
    pub fn zeros<S: AsRef<str>>(labels: &[S]) -> Self {
        IntVector {
            entries: labels
                .iter()
                .map(|l| (l.as_ref().to_string(), BigInt::zero()))
                .collect(),
        }
    }

    pub fn from_i64<S: AsRef<str>>(labels: &[S], values: &[i64]) -> Self {
        assert_eq!(labels.len(), values.len(), "label/value count mismatch");
        IntVector {
            entries: labels
                .iter()
                .zip(values)
                .map(|(l, v)| (l.as_ref().to_string(), BigInt::from(*v)))
                .collect(),
        }
    }

    pub fn get(&self, label: &str) -> BigInt {
        self.entries.get(label).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, label: impl Into<String>, value: BigInt) {
        self.entries.insert(label.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigInt)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<&str> {
        self.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn sum(&self) -> BigInt {
        self.entries.values().sum()
    }

    pub fn neg(&self) -> IntVector {
        IntVector {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Componentwise sum; labels of `other` missing here are appended.
    pub fn add_assign(&mut self, other: &IntVector) {
        for (k, v) in other.iter() {
            *self.entries.entry(k.to_string()).or_default() += v;
        }
    }

    /// Re-keys onto exactly `labels` in that order; missing entries become 0.
    pub fn aligned<S: AsRef<str>>(&self, labels: &[S]) -> IntVector {
        IntVector {
            entries: labels
                .iter()
                .map(|l| (l.as_ref().to_string(), self.get(l.as_ref())))
                .collect(),
        }
    }

    pub fn to_rational(&self) -> RatVector {
        self.iter()
            .map(|(k, v)| (k.to_string(), Rational::from(v)))
            .collect()
    }

    pub fn check_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<(), Error> {
        for (k, v) in self.iter() {
            if !v.is_zero() && !labels.iter().any(|l| l.as_ref() == k) {
                return Err(Error::UnknownComponent(k.to_string()));
            }
        }
        Ok(())
    }
}

impl FromIterator<(String, BigInt)> for IntVector {
    fn from_iter<T: IntoIterator<Item = (String, BigInt)>>(iter: T) -> Self {
        IntVector {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(_, v)| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (k, v) in self.iter() {
            match v.to_i64() {
                Some(n) => map.serialize_entry(k, &n)?,
                None => map.serialize_entry(k, &v.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Entry(BigInt);

        impl<'de> Deserialize<'de> for Entry {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                struct EntryVisitor;
                impl Visitor<'_> for EntryVisitor {
                    type Value = Entry;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        f.write_str("an integer")
                    }
                    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Entry, E> {
                        Ok(Entry(v.into()))
                    }
                    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Entry, E> {
                        Ok(Entry(v.into()))
                    }
                    fn visit_str<E: de::Error>(self, v: &str) -> Result<Entry, E> {
                        let r = super::rat_parse(v).map_err(E::custom)?;
                        r.to_integer()
                            .map(Entry)
                            .ok_or_else(|| E::custom(format!("{v:?} is not an integer")))
                    }
                }
                deserializer.deserialize_any(EntryVisitor)
            }
        }

        let raw = IndexMap::<String, Entry>::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|(k, Entry(v))| (k, v)).collect())
    }
}
