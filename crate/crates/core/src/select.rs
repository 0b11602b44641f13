use crate::modelset::ModelSet;

/// Deterministic selection function over non-empty candidate families.
///
/// The choice depends only on the family (as a set), so the induced
/// maxichoice operators are uniform.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum SelectionPolicy {
    /// Least set in the canonical membership-vector order.
    #[default]
    LexMin,
    /// Greatest set in the canonical membership-vector order.
    LexMax,
    /// First set of the ranking that occurs in the family; lex-min if none does.
    Ranking(Vec<ModelSet>),
}

impl SelectionPolicy {
    pub fn select(&self, family: &[ModelSet]) -> Option<ModelSet> {
        match self {
            SelectionPolicy::LexMin => family.iter().min().copied(),
            SelectionPolicy::LexMax => family.iter().max().copied(),
            SelectionPolicy::Ranking(order) => order
                .iter()
                .find(|s| family.contains(s))
                .copied()
                .or_else(|| family.iter().min().copied()),
        }
    }

    /// Pick from an arbitrary totally ordered family (used by symbolic systems
    /// whose candidates are not `ModelSet`s). Rankings fall back to lex-min.
    pub fn select_ordered<'a, T: Ord>(&self, family: &'a [T]) -> Option<&'a T> {
        match self {
            SelectionPolicy::LexMax => family.iter().max(),
            _ => family.iter().min(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(idx: &[usize]) -> ModelSet {
        ModelSet::from_indices(4, idx.iter().copied()).unwrap()
    }

    #[test]
    fn selects_member_of_family() {
        let fam = vec![s(&[1]), s(&[2])];
        assert_eq!(SelectionPolicy::LexMin.select(&fam), Some(s(&[2])));
        assert_eq!(SelectionPolicy::LexMax.select(&fam), Some(s(&[1])));
        assert_eq!(SelectionPolicy::LexMin.select(&[]), None);
    }

    #[test]
    fn ranking_prefers_listed_then_falls_back() {
        let fam = vec![s(&[1]), s(&[2])];
        let rank = SelectionPolicy::Ranking(vec![s(&[0]), s(&[1])]);
        assert_eq!(rank.select(&fam), Some(s(&[1])));
        let rank = SelectionPolicy::Ranking(vec![s(&[3])]);
        assert_eq!(rank.select(&fam), Some(s(&[2])));
    }

    #[test]
    fn family_order_does_not_matter() {
        let a = vec![s(&[0, 1]), s(&[2]), s(&[3])];
        let mut b = a.clone();
        b.reverse();
        for p in [SelectionPolicy::LexMin, SelectionPolicy::LexMax] {
            assert_eq!(p.select(&a), p.select(&b));
        }
    }
}
