//! Extensional sets of model classes over a finite, enumerated universe.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest universe a [`ModelSet`] can index.
pub const MAX_UNIVERSE: usize = 64;

/// A set of model-class indices `0..universe`.
///
/// Ordered canonically: lexicographic on the membership vector, index 0 first,
/// absent < present. Sets over different universes order by universe size first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelSet {
    bits: u64,
    universe: u8,
}

impl ModelSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_UNIVERSE, "universe of {universe} models");
        ModelSet {
            bits: 0,
            universe: universe as u8,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits = Self::mask(universe);
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::InvalidModel(format!(
                    "model index {i} outside a universe of {universe}"
                )));
            }
            s.bits |= 1 << i;
        }
        Ok(s)
    }

    pub(crate) fn from_bits(universe: usize, bits: u64) -> Self {
        let mut s = Self::empty(universe);
        s.bits = bits & Self::mask(universe);
        s
    }

    fn mask(universe: usize) -> u64 {
        if universe == 64 {
            u64::MAX
        } else {
            (1u64 << universe) - 1
        }
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == Self::mask(self.universe())
    }

    pub fn contains(&self, model: usize) -> bool {
        model < self.universe() && self.bits & (1 << model) != 0
    }

    pub fn insert(&mut self, model: usize) {
        assert!(model < self.universe());
        self.bits |= 1 << model;
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe()).filter(move |&i| self.bits & (1 << i) != 0)
    }

    pub fn check_universe(&self, other: &ModelSet) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                expected: self.universe(),
                found: other.universe(),
            });
        }
        Ok(())
    }

    // Set algebra assumes matching universes; callers validate at the API boundary.
    pub fn union(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.universe, other.universe);
        ModelSet {
            bits: self.bits | other.bits,
            universe: self.universe,
        }
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.universe, other.universe);
        ModelSet {
            bits: self.bits & other.bits,
            universe: self.universe,
        }
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.universe, other.universe);
        ModelSet {
            bits: self.bits & !other.bits,
            universe: self.universe,
        }
    }

    pub fn complement(&self) -> ModelSet {
        ModelSet {
            bits: !self.bits & Self::mask(self.universe()),
            universe: self.universe,
        }
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.universe == other.universe && self.bits & !other.bits == 0
    }

    pub fn is_strict_subset(&self, other: &ModelSet) -> bool {
        self.is_subset(other) && self.bits != other.bits
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Every subset of the universe, in increasing bit-pattern order.
    pub fn all_subsets(universe: usize) -> Result<impl Iterator<Item = ModelSet>> {
        const ENUM_BOUND: usize = 20;
        if universe > ENUM_BOUND {
            return Err(Error::BoundExceeded {
                what: "universe size for subset enumeration",
                size: universe,
                bound: ENUM_BOUND,
            });
        }
        Ok((0..1u64 << universe).map(move |bits| ModelSet::from_bits(universe, bits)))
    }

    /// Membership vector, index 0 first.
    pub fn membership(&self) -> Vec<bool> {
        (0..self.universe()).map(|i| self.contains(i)).collect()
    }

    /// Render with per-model labels, e.g. `{tt,tf}`.
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        let items: Vec<String> = self.iter().map(label).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl Ord for ModelSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.bits.reverse_bits().cmp(&other.bits.reverse_bits()))
    }
}

impl PartialOrd for ModelSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|i| i.to_string()))
    }
}

impl Serialize for ModelSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ModelSet", 2)?;
        st.serialize_field("universe", &self.universe())?;
        st.serialize_field("members", &self.iter().collect::<Vec<_>>())?;
        st.end()
    }
}

/// Keep only the ⊆-maximal sets of a family, sorted canonically.
pub fn maximal_elements(family: &[ModelSet]) -> Vec<ModelSet> {
    let mut out: Vec<ModelSet> = family
        .iter()
        .filter(|s| !family.iter().any(|t| s.is_strict_subset(t)))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Keep only the ⊆-minimal sets of a family, sorted canonically.
pub fn minimal_elements(family: &[ModelSet]) -> Vec<ModelSet> {
    let mut out: Vec<ModelSet> = family
        .iter()
        .filter(|s| !family.iter().any(|t| t.is_strict_subset(s)))
        .copied()
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(u: usize, idx: &[usize]) -> ModelSet {
        ModelSet::from_indices(u, idx.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_order_is_lexicographic_on_membership() {
        // {1} = [0,1,0] < {0} = [1,0,0] < {0,2} = [1,0,1]
        let a = set(3, &[1]);
        let b = set(3, &[0]);
        let c = set(3, &[0, 2]);
        assert!(a < b && b < c);
        assert!(ModelSet::empty(3) < a);
        assert_eq!(ModelSet::full(3).cmp(&set(3, &[0, 1, 2])), Ordering::Equal);
    }

    #[test]
    fn out_of_range_index_rejected() {
        assert!(ModelSet::from_indices(2, [2]).is_err());
    }

    #[test]
    fn maximal_and_minimal() {
        let fam = [set(3, &[0]), set(3, &[0, 1]), set(3, &[2])];
        assert_eq!(maximal_elements(&fam), vec![set(3, &[2]), set(3, &[0, 1])]);
        assert_eq!(minimal_elements(&fam), vec![set(3, &[2]), set(3, &[0])]);
    }

    proptest! {
        #[test]
        fn order_matches_membership_vectors(a in 0u64..256, b in 0u64..256) {
            let x = ModelSet::from_bits(8, a);
            let y = ModelSet::from_bits(8, b);
            prop_assert_eq!(x.cmp(&y), x.membership().cmp(&y.membership()));
        }

        #[test]
        fn complement_partitions(a in 0u64..(1 << 12)) {
            let x = ModelSet::from_bits(12, a);
            prop_assert!(x.is_disjoint(&x.complement()));
            prop_assert!(x.union(&x.complement()).is_full());
        }
    }
}
