//! Periodic palindromes clusters.
//!
//! A cluster is a maximal run `D[start..=end]` of its minimal period, stored
//! with the residues (mod period) of its palindromic prefix and suffix
//! lengths. Those two residues determine every palindrome the run represents:
//! palindromic prefix lengths form the arithmetic progression
//! `{k*p + r_p} ∩ [1, mpp]` and are contiguous up to the largest lattice value
//! that fits in the run, and symmetrically for suffixes. All interval
//! arithmetic here is O(1); anything that needs the current text (probing,
//! verification) lives in the index.

/// One periodic palindromes cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cluster {
    pub start: usize,
    pub end: usize,
    /// Minimal period of the run; `len() >= 2 * period`.
    pub period: usize,
    /// Palindromic-prefix length residue, in `[0, period)`.
    pub r_p: usize,
    /// Palindromic-suffix length residue, in `[0, period)`.
    pub r_s: usize,
}

/// Largest value `<= cap` in the progression `{k*p + r : k >= 0} \ {0}`, or 0
/// when none fits.
pub fn lattice_top(r: usize, p: usize, cap: usize) -> usize {
    let first = if r == 0 { p } else { r };
    if first > cap {
        0
    } else {
        first + ((cap - first) / p) * p
    }
}

/// Given a run of length `len` and minimal period `p` with a palindromic
/// prefix of length `have` on the prefix lattice, the length of a palindromic
/// suffix (equivalently: swap prefix/suffix). Derived by growing `have` up its
/// lattice, then sliding the grown palindrome one period right and extending
/// it symmetrically to the right boundary.
pub fn other_side_len(len: usize, p: usize, have: usize) -> usize {
    debug_assert!(len >= 2 * p && have >= 1 && have <= len);
    let top = have + ((len - have) / p) * p;
    let gap = len - top;
    if gap == 0 {
        len
    } else {
        top - p + 2 * gap
    }
}

impl Cluster {
    /// Run length; at least `2 * period` by the storage invariant.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    /// Length of the maximal palindromic prefix.
    pub fn mpp(&self) -> usize {
        lattice_top(self.r_p, self.period, self.len())
    }

    /// Length of the maximal palindromic suffix.
    pub fn mps(&self) -> usize {
        lattice_top(self.r_s, self.period, self.len())
    }

    /// Length of the longest represented palindrome; the cluster is classed
    /// by this.
    pub fn repr_len(&self) -> usize {
        self.mpp().max(self.mps())
    }

    /// Start of the longest represented palindrome, smallest on ties.
    pub fn repr_start(&self) -> usize {
        let (mpp, mps) = (self.mpp(), self.mps());
        if mpp >= mps {
            self.start
        } else {
            self.end + 1 - mps
        }
    }

    /// Does this cluster represent the interval `[s..=e]` as a palindromic
    /// prefix or suffix on its period lattice?
    pub fn represents(&self, s: usize, e: usize) -> bool {
        let len = e - s + 1;
        if s == self.start && len % self.period == self.r_p % self.period && len <= self.mpp() {
            return true;
        }
        e == self.end && len % self.period == self.r_s % self.period && len <= self.mps()
    }

    /// Prefix-lattice lengths in `[lo, hi]`.
    pub fn prefix_lens(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        let first = if self.r_p == 0 { self.period } else { self.r_p };
        let start = if lo <= first {
            first
        } else {
            first + (lo - first).div_ceil(self.period) * self.period
        };
        (start..=hi.min(self.len())).step_by(self.period)
    }

    /// Suffix-lattice lengths in `[lo, hi]`.
    pub fn suffix_lens(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        let first = if self.r_s == 0 { self.period } else { self.r_s };
        let start = if lo <= first {
            first
        } else {
            first + (lo - first).div_ceil(self.period) * self.period
        };
        (start..=hi.min(self.len())).step_by(self.period)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_tops() {
        assert_eq!(lattice_top(1, 2, 7), 7);
        assert_eq!(lattice_top(1, 2, 6), 5);
        assert_eq!(lattice_top(0, 3, 7), 6);
        assert_eq!(lattice_top(0, 1, 4), 4);
        assert_eq!(lattice_top(2, 3, 1), 0);
    }

    #[test]
    fn unary_run_represents_everything() {
        // C = "aaaa": p = 1, both residues 0
        let c = Cluster { start: 1, end: 4, period: 1, r_p: 0, r_s: 0 };
        assert_eq!(c.mpp(), 4);
        assert_eq!(c.mps(), 4);
        for len in 1..=4 {
            assert!(c.represents(1, len));
            assert!(c.represents(4 - len + 1, 4));
        }
        assert!(!c.represents(2, 3));
    }

    #[test]
    fn alternating_run_lattice() {
        // C = "abababa": p = 2, remainders 1
        let c = Cluster { start: 1, end: 7, period: 2, r_p: 1, r_s: 1 };
        assert_eq!(c.mpp(), 7);
        let pref: Vec<usize> = c.prefix_lens(1, 7).collect();
        assert_eq!(pref, vec![1, 3, 5, 7]);
        assert!(c.represents(1, 5));
        assert!(c.represents(3, 7));
        assert!(!c.represents(1, 4));
        assert!(!c.represents(2, 5));
        // k*p + r_p == |C| boundary value is allowed
        assert!(c.represents(1, 7));
    }

    #[test]
    fn other_side_examples() {
        // "abababa": prefix 7 known, whole run is a palindrome
        assert_eq!(other_side_len(7, 2, 7), 7);
        // run "aabaabaa" (p=3): prefix lattice residue 2, top 8; suffix must be 8
        assert_eq!(other_side_len(8, 3, 2), 8);
        // run "aabaabaab" (p=3): prefix top 8, gap 1 -> suffix 5 + 2 = ...
        // top = 8, gap = 1 -> 8 - 3 + 2 = 7? actual suffix pals of
        // "aabaabaab": "b"? no: "baab" (4), "baabaab" (7). yes: 7.
        assert_eq!(other_side_len(9, 3, 2), 7);
        // "ababab": prefix "ababa" = 5, suffix "babab" = 5
        assert_eq!(other_side_len(6, 2, 5), 5);
    }
}
