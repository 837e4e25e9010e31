//! Pattern containment in sequences and rooted forests, tight forests and
//! quasi-perfect orderings.

mod forest;
mod qpo;
mod verify;

use std::collections::BTreeSet;
use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use forest::{enumerate_tf, tf_polynomial, RootedLabeledForest, TfEnumeration};
pub use qpo::{candidate_paths, is_qpo, QpoCheck, MAX_QPO_VERTICES};
pub use verify::{
    long_cycle_chord_check, tf_integer_roots_classification, tight_permutation_count,
    tight_counts_follow_recurrence, verify_tf_theorems, MAX_ROOTS_VERTICES, MAX_TIGHT_LENGTH,
};

/// A permutation of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Pattern(Vec<u32>);

impl Pattern {
    pub fn new(perm: Vec<u32>) -> Result<Self> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted.iter().zip(1u32..).any(|(&a, b)| a != b) {
            return Err(invalid(format!("pattern {perm:?} is not a permutation of 1..={}", perm.len())));
        }
        Ok(Self(perm))
    }

    /// Parses digit strings such as `"231"`.
    pub fn parse(s: &str) -> Result<Self> {
        let digits: Option<Vec<u32>> = s.chars().map(|c| c.to_digit(10)).collect();
        Self::new(digits.ok_or_else(|| invalid(format!("pattern {s:?} is not a digit string")))?)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<u32>> for Pattern {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Pattern> for Vec<u32> {
    fn from(p: Pattern) -> Self {
        p.0
    }
}

impl Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&x| x > 9) { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// The patterns 231, 312 and 321.
pub fn tight_patterns() -> Vec<Pattern> {
    ["231", "312", "321"]
        .iter()
        .map(|s| Pattern::parse(s).expect("valid pattern"))
        .collect()
}

fn check_distinct(seq: &[u32]) -> Result<()> {
    let set: BTreeSet<u32> = seq.iter().copied().collect();
    if set.len() != seq.len() {
        return Err(invalid(format!("sequence {seq:?} has repeated entries")));
    }
    Ok(())
}

/// The permutation of `1..=len` order-isomorphic to `seq`.
pub fn standardize(seq: &[u32]) -> Vec<u32> {
    seq.iter()
        .map(|&x| 1 + seq.iter().filter(|&&y| y < x).count() as u32)
        .collect()
}

/// Whether some subsequence of `seq` is order-isomorphic to `pat`.
pub fn contains_pattern(seq: &[u32], pat: &Pattern) -> Result<bool> {
    check_distinct(seq)?;
    Ok(contains_unchecked(seq, pat.as_slice()))
}

fn contains_unchecked(seq: &[u32], pat: &[u32]) -> bool {
    let k = pat.len();
    if k == 0 {
        return true;
    }
    if k > seq.len() {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    search(seq, pat, 0, &mut chosen)
}

fn search(seq: &[u32], pat: &[u32], from: usize, chosen: &mut Vec<u32>) -> bool {
    let i = chosen.len();
    if i == pat.len() {
        return true;
    }
    for p in from..=seq.len() - (pat.len() - i) {
        let x = seq[p];
        // relative order with every earlier pick must match the pattern
        let fits = chosen
            .iter()
            .zip(pat)
            .all(|(&y, &q)| (y < x) == (q < pat[i]));
        if fits {
            chosen.push(x);
            if search(seq, pat, p + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Avoids every pattern of `set`.
pub fn avoids_set(seq: &[u32], set: &[Pattern]) -> Result<bool> {
    check_distinct(seq)?;
    Ok(set.iter().all(|p| !contains_unchecked(seq, p.as_slice())))
}

/// Avoids 231, 312 and 321.
pub fn is_tight_sequence(seq: &[u32]) -> Result<bool> {
    check_distinct(seq)?;
    Ok(tight_by_patterns(seq))
}

pub(crate) fn tight_by_patterns(seq: &[u32]) -> bool {
    ["231", "312", "321"].iter().all(|p| {
        let pat: Vec<u32> = p.chars().map(|c| c.to_digit(10).expect("digit")).collect();
        !contains_unchecked(seq, &pat)
    })
}

/// Standardization is an involution whose 2-cycles swap neighbours.
pub fn is_tight_by_involution(seq: &[u32]) -> Result<bool> {
    check_distinct(seq)?;
    Ok(tight_by_involution(seq))
}

pub(crate) fn tight_by_involution(seq: &[u32]) -> bool {
    let pi = standardize(seq);
    pi.iter().enumerate().all(|(i, &v)| {
        let i1 = i as u32 + 1;
        v.abs_diff(i1) <= 1 && pi[v as usize - 1] == i1
    })
}

/// Both tests, which must agree.
pub(crate) fn tight_checked(seq: &[u32]) -> Result<bool> {
    let a = tight_by_patterns(seq);
    if a != tight_by_involution(seq) {
        return Err(Error::Disagreement(format!("tightness tests disagree on {seq:?}")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Pattern {
        Pattern::parse(s).unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(contains_pattern(&[6, 8, 9, 2], &p("231")).unwrap());
        assert!(!contains_pattern(&[6, 8, 9, 2], &p("321")).unwrap());
        assert!(contains_pattern(&[6, 8, 9, 2], &p("2341")).unwrap());
        assert!(!contains_pattern(&[4, 7], &p("123")).unwrap());
        assert!(contains_pattern(&[7, 4], &p("21")).unwrap());
        assert!(contains_pattern(&[1, 2], &p("1")).unwrap());
        assert!(contains_pattern(&[1, 1], &p("1")).is_err());
        assert_eq!(standardize(&[6, 8, 9, 2]), vec![2, 3, 4, 1]);
    }

    #[test]
    fn pattern_validation() {
        assert!(Pattern::new(vec![1, 3]).is_err());
        assert!(Pattern::parse("12a").is_err());
        assert_eq!(p("231").to_string(), "231");
        let js = serde_json::to_value(p("312")).unwrap();
        assert_eq!(js, serde_json::json!([3, 1, 2]));
        assert!(serde_json::from_value::<Pattern>(serde_json::json!([2, 2])).is_err());
    }

    #[test]
    fn tight_sequences() {
        assert!(is_tight_sequence(&[1, 3, 2]).unwrap());
        assert!(is_tight_sequence(&[2, 1, 4, 3]).unwrap());
        assert!(!is_tight_sequence(&[2, 3, 1]).unwrap());
        assert!(!is_tight_sequence(&[1, 4, 3, 2]).unwrap());
        assert!(is_tight_by_involution(&[5, 9]).unwrap());
        let tight: Vec<Vec<u32>> = permutations(3).into_iter().filter(|s| tight_by_patterns(s)).collect();
        assert_eq!(tight, vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3]]);
    }

    fn permutations(k: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn characterizations_agree_on_all_short_permutations() {
        for k in 0..=7 {
            for s in permutations(k) {
                assert_eq!(tight_by_patterns(&s), tight_by_involution(&s), "{s:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn characterizations_agree_on_sequences(seq in proptest::sample::subsequence((1u32..40).collect::<Vec<_>>(), 0..=8).prop_shuffle()) {
            prop_assert_eq!(tight_by_patterns(&seq), tight_by_involution(&seq));
        }

        #[test]
        fn containment_is_invariant_under_standardization(seq in proptest::sample::subsequence((1u32..30).collect::<Vec<_>>(), 0..=7).prop_shuffle()) {
            let std = standardize(&seq);
            for pat in tight_patterns() {
                prop_assert_eq!(contains_pattern(&seq, &pat).unwrap(), contains_pattern(&std, &pat).unwrap());
            }
        }
    }
}
