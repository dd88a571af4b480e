//! Combinatorial enumeration: compositions, index subsets, binomials.
//!
//! The orders fixed here (descending-lex for compositions, colex for
//! subsets) are used everywhere basis vectors are indexed, so transition
//! matrices have a reproducible row/column layout.

use crate::error::{KrawError, Result};

/// A strictly increasing sequence of indices in [0, n].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset {
    members: Vec<usize>,
}

impl IndexSubset {
    /// Build from a member list, checking strict monotonicity.
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(KrawError::Dimension(format!(
                "index subset must be strictly increasing, got {members:?}"
            )));
        }
        Ok(Self { members })
    }

    pub fn empty() -> Self {
        Self { members: vec![] }
    }

    /// The contiguous subset {0, 1, ..., d-1}.
    pub fn leading(d: usize) -> Self {
        Self {
            members: (0..d).collect(),
        }
    }

    /// Decode the set bits of a mask, ascending.
    pub fn from_mask(mask: u32) -> Self {
        let members = (0..32).filter(|b| mask >> b & 1 == 1).collect();
        Self { members }
    }

    pub fn to_mask(&self) -> u32 {
        self.members.iter().fold(0u32, |m, &b| m | 1 << b)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Ascending complement within [0, n_plus_1).
    pub fn complement(&self, n_plus_1: usize) -> Self {
        Self {
            members: (0..n_plus_1).filter(|i| !self.contains(*i)).collect(),
        }
    }

    /// Render as a sorted index list, e.g. "{0 2 3}".
    pub fn display(&self) -> String {
        let inner: Vec<String> = self.members.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", inner.join(" "))
    }
}

/// Exact binomial coefficient. Intermediate products stay divisible, so the
/// stepwise division is exact.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 1..=k {
        r = r * (n - k + i) as u64 / i as u64;
    }
    r
}

/// k! as a float. Exact for k ≤ 20.
pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// α! = Π αᵢ! over an exponent vector.
pub fn multi_factorial(alpha: &[u32]) -> f64 {
    alpha.iter().map(|&a| factorial(a as usize)).product()
}

/// All vectors in ℕ^parts summing to `total`, in descending lexicographic
/// order: the first coordinate decreases fastest.
///
/// Count is C(total + parts − 1, parts − 1).
pub fn enumerate_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    assert!(parts >= 1, "compositions need at least one part");
    let mut out = Vec::with_capacity(binomial(total as usize + parts - 1, parts - 1) as usize);
    let mut current = vec![0u32; parts];
    fill_compositions(total, 0, &mut current, &mut out);
    out
}

fn fill_compositions(remaining: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill_compositions(remaining - a, pos + 1, current, out);
    }
}

/// All size-d subsets of [0, n] in colex order (ascending bitmask value).
///
/// Count is C(n+1, d); `d > n+1` yields the empty sequence, matching the
/// vanishing of the corresponding wedge component.
pub fn enumerate_subsets(n_plus_1: usize, d: usize) -> Vec<IndexSubset> {
    assert!(n_plus_1 <= 32, "subset enumeration limited to 32 indices");
    if d > n_plus_1 {
        return vec![];
    }
    if d == 0 {
        return vec![IndexSubset::empty()];
    }
    // Ascending bitmask order is exactly colex: the highest differing
    // element decides.
    let mut out = Vec::with_capacity(binomial(n_plus_1, d) as usize);
    let mut mask: u32 = (1u32 << d) - 1;
    let limit: u64 = 1u64 << n_plus_1;
    while (mask as u64) < limit {
        out.push(IndexSubset::from_mask(mask));
        // Gosper's hack: next mask with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        if r == 0 {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_of_two_in_two_parts() {
        let got = enumerate_compositions(2, 2);
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn compositions_of_zero() {
        assert_eq!(enumerate_compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn composition_count_matches_binomial() {
        // Oracle: C(total + parts - 1, parts - 1).
        for total in 0..=8u32 {
            for parts in 1..=6usize {
                let got = enumerate_compositions(total, parts);
                assert_eq!(got.len() as u64, binomial(total as usize + parts - 1, parts - 1));
                // All entries genuinely sum to total, no duplicates.
                for c in &got {
                    assert_eq!(c.iter().sum::<u32>(), total);
                }
                let mut sorted = got.clone();
                sorted.dedup();
                assert_eq!(sorted.len(), got.len());
            }
        }
    }

    #[test]
    fn subsets_of_pair() {
        let got = enumerate_subsets(2, 1);
        assert_eq!(got[0].members(), &[0]);
        assert_eq!(got[1].members(), &[1]);
    }

    #[test]
    fn empty_subset_cases() {
        assert_eq!(enumerate_subsets(3, 0), vec![IndexSubset::empty()]);
        assert!(enumerate_subsets(2, 3).is_empty());
    }

    #[test]
    fn subset_count_matches_binomial() {
        for n_plus_1 in 0..=8usize {
            for d in 0..=8usize {
                let got = enumerate_subsets(n_plus_1, d);
                assert_eq!(got.len() as u64, binomial(n_plus_1, d), "({n_plus_1},{d})");
            }
        }
    }

    #[test]
    fn subsets_are_colex_ordered() {
        let got = enumerate_subsets(4, 2);
        let masks: Vec<u32> = got.iter().map(|s| s.to_mask()).collect();
        assert_eq!(masks, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    #[test]
    fn subset_rejects_unsorted() {
        assert!(IndexSubset::new(vec![2, 1]).is_err());
        assert!(IndexSubset::new(vec![1, 1]).is_err());
    }

    #[test]
    fn mask_round_trip() {
        let s = IndexSubset::new(vec![0, 3, 5]).unwrap();
        assert_eq!(IndexSubset::from_mask(s.to_mask()), s);
        assert_eq!(s.complement(6).members(), &[1, 2, 4]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(multi_factorial(&[2, 1, 3]), 2.0 * 6.0);
    }
}
