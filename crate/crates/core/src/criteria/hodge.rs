//! The Hodge dichotomy on CM-type multiplicities.
//!
//! A space of Weil classes either consists entirely of Hodge classes or
//! contains no non-zero Hodge class at all, and the first case holds
//! exactly when the multiplicity of every embedding equals that of its
//! complex conjugate.

/// Outcome of the multiplicity test, with the first failing embedding
/// index as witness in the negative case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HodgeVerdict {
    AllHodge,
    OnlyZeroHodge { witness: usize },
}

impl HodgeVerdict {
    pub fn is_all_hodge(&self) -> bool {
        matches!(self, HodgeVerdict::AllHodge)
    }
}

/// Tests n_sigma = n_sigma' for every conjugate pair of embeddings of F,
/// given multiplicities and the conjugation involution in the canonical
/// embedding order.
pub fn hodge_test(multiplicities: &[u64], conj: &[usize]) -> HodgeVerdict {
    for (s, &n) in multiplicities.iter().enumerate() {
        if n != multiplicities[conj[s]] {
            return HodgeVerdict::OnlyZeroHodge { witness: s };
        }
    }
    HodgeVerdict::AllHodge
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_pairs_are_hodge() {
        assert_eq!(hodge_test(&[2, 2], &[1, 0]), HodgeVerdict::AllHodge);
        assert_eq!(hodge_test(&[1, 1], &[0, 1]), HodgeVerdict::AllHodge);
        assert_eq!(
            hodge_test(&[1, 2, 1, 2], &[2, 3, 0, 1]),
            HodgeVerdict::AllHodge
        );
    }

    #[test]
    fn first_unbalanced_embedding_is_witnessed() {
        assert_eq!(
            hodge_test(&[3, 1], &[1, 0]),
            HodgeVerdict::OnlyZeroHodge { witness: 0 }
        );
        assert_eq!(
            hodge_test(&[1, 1, 2, 0], &[1, 0, 3, 2]),
            HodgeVerdict::OnlyZeroHodge { witness: 2 }
        );
    }

    #[test]
    fn empty_multiplicities_are_vacuously_hodge() {
        assert_eq!(hodge_test(&[], &[]), HodgeVerdict::AllHodge);
    }
}
