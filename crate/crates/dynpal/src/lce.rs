//! Dynamic longest-common-extension queries over a [`DynamicText`].
//!
//! All three queries binary-search on fingerprint equality, so each costs
//! O(log n) fingerprint comparisons. The palindromic extension compares a
//! forward fingerprint right of the center against a reverse fingerprint left
//! of it; no concatenated T$T^R text is ever materialized, which is what lets
//! the same structure serve both directions under point updates.

use crate::error::{Error, Result};
use crate::hashed_text::DynamicText;

/// A palindrome center: either a character position (odd lengths) or the gap
/// between two adjacent positions (even lengths). A text of length n has
/// 2n - 1 centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Center {
    /// Palindromes `D[c-r ..= c+r]`.
    Odd(usize),
    /// Gap between `c` and `c+1`: palindromes `D[c-r+1 ..= c+r]`.
    Even(usize),
}

impl Center {
    /// Encodes a center as `start + end` of any interval centered on it:
    /// `Odd(c)` maps to `2c`, `Even(c)` to `2c + 1`.
    pub fn id(self) -> usize {
        match self {
            Center::Odd(c) => 2 * c,
            Center::Even(c) => 2 * c + 1,
        }
    }

    pub fn from_id(id: usize) -> Center {
        if id.is_multiple_of(2) {
            Center::Odd(id / 2)
        } else {
            Center::Even(id / 2)
        }
    }

    /// The center of the closed interval `[s ..= e]`.
    pub fn of_interval(s: usize, e: usize) -> Center {
        Center::from_id(s + e)
    }
}

fn binary_search_max(mut lo: usize, mut hi: usize, ok: impl Fn(usize) -> bool) -> usize {
    // invariant: ok(lo) holds; find the largest value in [lo, hi] that holds
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Longest common prefix of the suffixes starting at `i` and `j`.
pub fn lcp(t: &DynamicText, i: usize, j: usize) -> Result<usize> {
    let n = t.len();
    if i == 0 || i > n {
        return Err(Error::OutOfRange { pos: i, len: n });
    }
    if j == 0 || j > n {
        return Err(Error::OutOfRange { pos: j, len: n });
    }
    let hi = n + 1 - i.max(j);
    Ok(binary_search_max(0, hi, |len| t.eq_fwd(i, j, len)))
}

/// Longest common suffix of the prefixes ending at `i` and `j`.
pub fn lcs_back(t: &DynamicText, i: usize, j: usize) -> Result<usize> {
    let n = t.len();
    if i == 0 || i > n {
        return Err(Error::OutOfRange { pos: i, len: n });
    }
    if j == 0 || j > n {
        return Err(Error::OutOfRange { pos: j, len: n });
    }
    let hi = i.min(j);
    Ok(binary_search_max(0, hi, |len| {
        t.eq_fwd(i - len + 1, j - len + 1, len)
    }))
}

/// Maximal palindromic radius around `center`. Text boundaries act as
/// sentinels that match nothing, so the returned interval is locally maximal.
pub fn palindrome_radius(t: &DynamicText, center: Center) -> Result<usize> {
    let n = t.len();
    match center {
        Center::Odd(c) => {
            if c == 0 || c > n {
                return Err(Error::OutOfRange { pos: c, len: n });
            }
            let hi = (c - 1).min(n - c);
            Ok(binary_search_max(0, hi, |r| t.eq_fwd_rev(c + 1, c - r, r)))
        }
        Center::Even(c) => {
            if c == 0 || c + 1 > n {
                return Err(Error::OutOfRange { pos: c, len: n });
            }
            let hi = c.min(n - c);
            Ok(binary_search_max(0, hi, |r| t.eq_fwd_rev(c + 1, c - r + 1, r)))
        }
    }
}

/// The maximal palindrome at `center` as a closed interval, or `None` for an
/// empty even palindrome.
pub fn max_palindrome(t: &DynamicText, center: Center) -> Result<Option<(usize, usize)>> {
    let r = palindrome_radius(t, center)?;
    Ok(match center {
        Center::Odd(c) => Some((c - r, c + r)),
        Center::Even(c) => {
            if r == 0 {
                None
            } else {
                Some((c - r + 1, c + r))
            }
        }
    })
}
