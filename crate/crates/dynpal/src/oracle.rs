//! Brute-force reference implementations.
//!
//! Everything here is exact and independent of the hashed/query machinery; the
//! index is tested wholesale against these functions. Expansion around each of
//! the 2n - 1 centers is the normative enumeration; the Manacher-based variant
//! is a fast path for large baselines and is itself tested against expansion.
//!
//! Positions are 1-based, intervals closed, matching the rest of the crate.

use std::collections::BTreeSet;

use crate::lce::Center;

/// Exact snapshot of a text's maximal palindromes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// One interval per center whose maximal palindrome is non-empty.
    pub palindromes: BTreeSet<(usize, usize)>,
    /// `(start, length)` of the longest, smallest start on ties.
    pub longest: Option<(usize, usize)>,
}

impl OracleReport {
    fn from_intervals(intervals: BTreeSet<(usize, usize)>) -> OracleReport {
        let mut longest = None;
        for &(s, e) in &intervals {
            let len = e - s + 1;
            let better = match longest {
                None => true,
                Some((bs, bl)) => len > bl || (len == bl && s < bs),
            };
            if better {
                longest = Some((s, len));
            }
        }
        OracleReport { palindromes: intervals, longest }
    }
}

/// Maximal palindrome radius at `center` by direct character comparison.
pub fn naive_radius(s: &[u8], center: Center) -> usize {
    let n = s.len();
    match center {
        Center::Odd(c) => {
            let mut r = 0;
            while c > r + 1 && c + r < n && s[c - r - 2] == s[c + r] {
                r += 1;
            }
            r
        }
        Center::Even(c) => {
            let mut r = 0;
            while c > r && c + r < n && s[c - r - 1] == s[c + r] {
                r += 1;
            }
            r
        }
    }
}

/// All maximal palindromes by expansion around every center. O(n^2) worst
/// case; this is the normative oracle.
pub fn all_maximal_palindromes(s: &[u8]) -> OracleReport {
    let n = s.len();
    let mut set = BTreeSet::new();
    for c in 1..=n {
        let r = naive_radius(s, Center::Odd(c));
        set.insert((c - r, c + r));
    }
    for c in 1..n {
        let r = naive_radius(s, Center::Even(c));
        if r > 0 {
            set.insert((c - r + 1, c + r));
        }
    }
    OracleReport::from_intervals(set)
}

/// Maximal palindrome lengths for all 2n + 1 cut points, via Manacher's
/// algorithm. `radii[k]` is the maximal palindrome length centered at cut
/// `k/2` (odd lengths at integer k, even lengths at odd k).
pub fn manacher(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut a = vec![0usize; 2 * n + 1];
    let mut i = 1;
    let mut j = 0;
    while i <= 2 * n {
        j += (i + j) % 2;
        while j < i && i + j < 2 * n && s[(i - j) / 2 - 1] == s[(i + j) / 2] {
            j += 2;
        }
        a[i] = j;
        if j == 0 {
            i += 1;
            continue;
        }
        let mut k = 1;
        while k <= i && k + a[i - k] < j {
            a[i + k] = a[i - k];
            k += 1;
        }
        i += k;
        j -= k;
    }
    a
}

/// Same result as [`all_maximal_palindromes`], via Manacher. O(n).
pub fn all_maximal_palindromes_fast(s: &[u8]) -> OracleReport {
    let a = manacher(s);
    let mut set = BTreeSet::new();
    for (k, &len) in a.iter().enumerate() {
        if len == 0 {
            continue;
        }
        // palindrome of length `len` centered at cut k/2 spans
        // [ (k - len)/2 + 1 ..= (k + len)/2 ]
        let start = (k - len) / 2 + 1;
        let end = (k + len) / 2;
        set.insert((start, end));
    }
    OracleReport::from_intervals(set)
}

/// `(start, length)` of the longest palindromic substring in O(n), smallest
/// start on ties.
pub fn longest_palindrome_linear(s: &[u8]) -> Option<(usize, usize)> {
    let a = manacher(s);
    let mut best: Option<(usize, usize)> = None;
    for (k, &len) in a.iter().enumerate() {
        if len == 0 {
            continue;
        }
        let start = (k - len) / 2 + 1;
        let better = match best {
            None => true,
            Some((bs, bl)) => len > bl || (len == bl && start < bs),
        };
        if better {
            best = Some((start, len));
        }
    }
    best
}

/// Longest common prefix of suffixes at `i` and `j`, by character scan.
pub fn naive_lcp(s: &[u8], i: usize, j: usize) -> usize {
    let n = s.len();
    let mut l = 0;
    while i + l <= n && j + l <= n && s[i + l - 1] == s[j + l - 1] {
        l += 1;
    }
    l
}

/// Longest common suffix of prefixes ending at `i` and `j`.
pub fn naive_lcs_back(s: &[u8], i: usize, j: usize) -> usize {
    let mut l = 0;
    while i > l && j > l && s[i - l - 1] == s[j - l - 1] {
        l += 1;
    }
    l
}

/// Minimal period of `s`: the smallest p with `s[i] == s[i+p]` for all valid
/// i. Computed from the longest border, which scans each character once.
pub fn minimal_period(s: &[u8]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut border = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = border[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    n - border[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn empty_and_tiny() {
        let r = all_maximal_palindromes(b"");
        assert!(r.palindromes.is_empty());
        assert_eq!(r.longest, None);
        let r = all_maximal_palindromes(b"a");
        assert_eq!(r.palindromes.iter().copied().collect::<Vec<_>>(), vec![(1, 1)]);
        assert_eq!(r.longest, Some((1, 1)));
    }

    #[test]
    fn aba_set() {
        // centers: 1 -> [1..1], 2 -> [1..3], 3 -> [3..3]; even centers empty
        let r = all_maximal_palindromes(b"aba");
        let want: BTreeSet<_> = [(1, 1), (1, 3), (3, 3)].into_iter().collect();
        assert_eq!(r.palindromes, want);
        assert_eq!(r.longest, Some((1, 3)));
    }

    #[test]
    fn aaa_set_has_one_interval_per_center() {
        let r = all_maximal_palindromes(b"aaa");
        let want: BTreeSet<_> = [(1, 1), (1, 3), (3, 3), (1, 2), (2, 3)].into_iter().collect();
        assert_eq!(r.palindromes, want);
    }

    #[test]
    fn period_examples() {
        assert_eq!(minimal_period(b"abab"), 2);
        assert_eq!(minimal_period(b"aaaa"), 1);
        assert_eq!(minimal_period(b"abcab"), 3);
        assert_eq!(minimal_period(b"abacaba"), 4);
    }

    #[test]
    fn longest_is_self_consistent() {
        let mut rng = StdRng::seed_from_u64(404);
        for _ in 0..200 {
            let n = rng.gen_range(0..=120usize);
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..3)).collect();
            let r = all_maximal_palindromes(&s);
            match r.longest {
                None => assert!(r.palindromes.is_empty()),
                Some((start, len)) => {
                    assert!(r.palindromes.contains(&(start, start + len - 1)));
                    assert!(r.palindromes.iter().all(|&(s2, e2)| e2 - s2 < len));
                }
            }
        }
    }

    #[test]
    fn manacher_matches_expansion() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(0..=400usize);
            let sigma = [2, 3, 26][rng.gen_range(0..3)];
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            assert_eq!(all_maximal_palindromes_fast(&s), all_maximal_palindromes(&s));
        }
        // adversarial shapes, up to length 2000
        let mut shapes: Vec<Vec<u8>> = vec![
            vec![b'a'; 2000],
            (0..2000).map(|i| if i % 2 == 0 { b'a' } else { b'b' }).collect(),
        ];
        let mut fib: Vec<Vec<u8>> = vec![b"b".to_vec(), b"a".to_vec()];
        while fib.last().unwrap().len() < 2000 {
            let mut next = fib[fib.len() - 1].clone();
            next.extend_from_slice(&fib[fib.len() - 2]);
            fib.push(next);
        }
        shapes.push(fib.pop().unwrap());
        let mut abna = vec![b'a'];
        abna.extend(vec![b'b'; 1998]);
        abna.push(b'a');
        shapes.push(abna);
        for s in shapes {
            assert_eq!(all_maximal_palindromes_fast(&s), all_maximal_palindromes(&s));
            assert_eq!(longest_palindrome_linear(&s), all_maximal_palindromes(&s).longest);
        }
    }
}
