//! Mutable byte text with forward and reverse rolling-hash fingerprints.
//!
//! Characters live in a plain vector; their position-weighted hash
//! contributions live in Fenwick trees, one per hash layer and direction, so a
//! point substitution and an interval fingerprint both cost O(log n). Every
//! equality decision is double-hashed: two independent bases over the Mersenne
//! prime 2^61 - 1. The two layers must agree; a disagreement is a detected
//! collision and is counted rather than trusted.
//!
//! Positions are 1-based and intervals are closed, matching the rest of the
//! crate.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Modulus shared by both hash layers: the Mersenne prime 2^61 - 1.
const MOD: u64 = (1 << 61) - 1;

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let folded = (t & MOD as u128) as u64 + (t >> 61) as u64;
    if folded >= MOD {
        folded - MOD
    } else {
        folded
    }
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MOD - b
    }
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// splitmix64. Pinned locally so that a given seed produces the same hash
/// bases in every build; CLI output must be byte-identical across runs.
fn split_mix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Fenwick tree over modular contributions, 1-based.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn add(&mut self, mut i: usize, delta: u64) {
        while i < self.tree.len() {
            self.tree[i] = add_mod(self.tree[i], delta);
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> u64 {
        let mut acc = 0;
        while i > 0 {
            acc = add_mod(acc, self.tree[i]);
            i -= i & i.wrapping_neg();
        }
        acc
    }
}

/// Interval fingerprint: one value per hash layer plus the interval length.
/// Two fingerprints compare equal only for equal lengths and equal values in
/// both layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fingerprint {
    pub h: [u64; 2],
    pub len: usize,
}

impl Fingerprint {
    pub const EMPTY: Fingerprint = Fingerprint { h: [0, 0], len: 0 };
}

/// The mutable text. `fwd` hashes the character sequence as written, `rev`
/// hashes the reversed sequence, so palindromic comparisons never need the
/// T$T^R concatenation.
pub struct DynamicText {
    chars: Vec<u8>,
    pw: [Vec<u64>; 2],
    ipw: [Vec<u64>; 2],
    fwd: [Fenwick; 2],
    rev: [Fenwick; 2],
    verify: bool,
    cmp_count: Cell<u64>,
    collision_count: Cell<u64>,
}

impl DynamicText {
    /// Builds the structure over `input`. The two hash bases are derived from
    /// `seed`, so equal seeds give equal fingerprints.
    pub fn new(input: &[u8], seed: u64) -> Self {
        let n = input.len();
        let mut state = seed ^ 0x5851_f42d_4c95_7f2d;
        let mut bases = [0u64; 2];
        for b in bases.iter_mut() {
            *b = 256 + split_mix(&mut state) % (MOD - 512);
        }

        let mut pw = [vec![0u64; n + 2], vec![0u64; n + 2]];
        let mut ipw = [vec![0u64; n + 2], vec![0u64; n + 2]];
        for layer in 0..2 {
            let inv = pow_mod(bases[layer], MOD - 2);
            pw[layer][0] = 1;
            ipw[layer][0] = 1;
            for k in 1..n + 2 {
                pw[layer][k] = mul_mod(pw[layer][k - 1], bases[layer]);
                ipw[layer][k] = mul_mod(ipw[layer][k - 1], inv);
            }
        }

        let mut fwd = [Fenwick::new(n), Fenwick::new(n)];
        let mut rev = [Fenwick::new(n), Fenwick::new(n)];
        for layer in 0..2 {
            for (k, &c) in input.iter().enumerate() {
                let i = k + 1;
                fwd[layer].add(i, mul_mod(c as u64 + 1, pw[layer][i]));
                let u = n - k;
                rev[layer].add(u, mul_mod(c as u64 + 1, pw[layer][u]));
            }
        }

        DynamicText {
            chars: input.to_vec(),
            pw,
            ipw,
            fwd,
            rev,
            verify: false,
            cmp_count: Cell::new(0),
            collision_count: Cell::new(0),
        }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.chars
    }

    /// When enabled, every fingerprint equality decision is re-derived
    /// character by character; a hash/char disagreement is recorded as a
    /// collision and the character truth wins.
    pub fn set_verify(&mut self, on: bool) {
        self.verify = on;
    }

    /// Number of fingerprint equality decisions made so far.
    pub fn cmp_count(&self) -> u64 {
        self.cmp_count.get()
    }

    /// Number of detected hash collisions (layer disagreements, or verify-mode
    /// char/hash disagreements).
    pub fn collision_count(&self) -> u64 {
        self.collision_count.get()
    }

    pub fn reset_cmp_count(&self) {
        self.cmp_count.set(0);
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.chars.len() {
            return Err(Error::OutOfRange { pos, len: self.chars.len() });
        }
        Ok(())
    }

    pub fn char_at(&self, pos: usize) -> Result<u8> {
        self.check_pos(pos)?;
        Ok(self.chars[pos - 1])
    }

    /// True when both positions are in range and hold equal characters.
    /// Out-of-range flanks act as sentinels that match nothing.
    pub fn flank_eq(&self, a: usize, b: usize) -> bool {
        let n = self.chars.len();
        a >= 1 && a <= n && b >= 1 && b <= n && self.chars[a - 1] == self.chars[b - 1]
    }

    /// Writes `c` at `pos`, updating both hash layers in both directions.
    pub fn substitute_char(&mut self, pos: usize, c: u8) -> Result<()> {
        self.check_pos(pos)?;
        let old = self.chars[pos - 1];
        if old == c {
            return Ok(());
        }
        self.chars[pos - 1] = c;
        let n = self.chars.len();
        let u = n + 1 - pos;
        for layer in 0..2 {
            let delta = sub_mod(c as u64 + 1, old as u64 + 1);
            self.fwd[layer].add(pos, mul_mod(delta, self.pw[layer][pos]));
            self.rev[layer].add(u, mul_mod(delta, self.pw[layer][u]));
        }
        Ok(())
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        let n = self.chars.len();
        if i == 0 || i > n {
            return Err(Error::OutOfRange { pos: i, len: n });
        }
        if j == 0 || j > n {
            return Err(Error::OutOfRange { pos: j, len: n });
        }
        Ok(())
    }

    /// Fingerprint of `chars[i..=j]` read forward. `j < i` yields the
    /// canonical empty fingerprint.
    pub fn fingerprint_fwd(&self, i: usize, j: usize) -> Result<Fingerprint> {
        if j < i {
            return Ok(Fingerprint::EMPTY);
        }
        self.check_range(i, j)?;
        let h = std::array::from_fn(|layer| {
            let diff = sub_mod(self.fwd[layer].prefix(j), self.fwd[layer].prefix(i - 1));
            mul_mod(diff, self.ipw[layer][i])
        });
        Ok(Fingerprint { h, len: j - i + 1 })
    }

    /// Fingerprint of `chars[i..=j]` read backward, i.e. the forward
    /// fingerprint the reversed text would give for the mirrored interval.
    pub fn fingerprint_rev(&self, i: usize, j: usize) -> Result<Fingerprint> {
        if j < i {
            return Ok(Fingerprint::EMPTY);
        }
        self.check_range(i, j)?;
        let n = self.chars.len();
        let (ri, rj) = (n + 1 - j, n + 1 - i);
        let h = std::array::from_fn(|layer| {
            let diff = sub_mod(self.rev[layer].prefix(rj), self.rev[layer].prefix(ri - 1));
            mul_mod(diff, self.ipw[layer][ri])
        });
        Ok(Fingerprint { h, len: j - i + 1 })
    }

    fn decide(&self, a: Fingerprint, b: Fingerprint, char_truth: impl Fn() -> bool) -> bool {
        self.cmp_count.set(self.cmp_count.get() + 1);
        let eq0 = a.h[0] == b.h[0] && a.len == b.len;
        let eq1 = a.h[1] == b.h[1] && a.len == b.len;
        if eq0 != eq1 {
            self.collision_count.set(self.collision_count.get() + 1);
        }
        let verdict = eq0 && eq1;
        if self.verify {
            let truth = char_truth();
            if truth != verdict {
                self.collision_count.set(self.collision_count.get() + 1);
                return truth;
            }
        }
        verdict
    }

    /// Are `chars[i1..i1+len-1]` and `chars[i2..i2+len-1]` equal?
    pub(crate) fn eq_fwd(&self, i1: usize, i2: usize, len: usize) -> bool {
        if len == 0 {
            return true;
        }
        let a = self.fingerprint_fwd(i1, i1 + len - 1).expect("caller checks range");
        let b = self.fingerprint_fwd(i2, i2 + len - 1).expect("caller checks range");
        self.decide(a, b, || {
            self.chars[i1 - 1..i1 - 1 + len] == self.chars[i2 - 1..i2 - 1 + len]
        })
    }

    /// Is `chars[fs..fs+len-1]` equal to the reverse of `chars[rs..rs+len-1]`?
    pub(crate) fn eq_fwd_rev(&self, fs: usize, rs: usize, len: usize) -> bool {
        if len == 0 {
            return true;
        }
        let a = self.fingerprint_fwd(fs, fs + len - 1).expect("caller checks range");
        let b = self.fingerprint_rev(rs, rs + len - 1).expect("caller checks range");
        self.decide(a, b, || {
            self.chars[fs - 1..fs - 1 + len]
                .iter()
                .eq(self.chars[rs - 1..rs - 1 + len].iter().rev())
        })
    }

    /// Is `chars[i..=j]` a palindrome? One fingerprint comparison.
    pub(crate) fn is_palindrome(&self, i: usize, j: usize) -> bool {
        if j < i {
            return true;
        }
        let a = self.fingerprint_fwd(i, j).expect("caller checks range");
        let b = self.fingerprint_rev(i, j).expect("caller checks range");
        self.decide(a, b, || {
            self.chars[i - 1..j].iter().eq(self.chars[i - 1..j].iter().rev())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn empty_text() {
        let t = DynamicText::new(b"", 1);
        assert_eq!(t.len(), 0);
        assert_eq!(t.fingerprint_fwd(1, 0).unwrap(), Fingerprint::EMPTY);
        assert!(t.char_at(1).is_err());
    }

    #[test]
    fn readback() {
        let t = DynamicText::new(b"abba", 7);
        assert_eq!(t.len(), 4);
        assert_eq!(t.char_at(1).unwrap(), b'a');
        assert_eq!(t.char_at(4).unwrap(), b'a');
        assert!(t.char_at(5).is_err());
    }

    #[test]
    fn deterministic_under_seed() {
        let t1 = DynamicText::new(b"abba", 42);
        let t2 = DynamicText::new(b"abba", 42);
        assert_eq!(t1.fingerprint_fwd(1, 4).unwrap(), t2.fingerprint_fwd(1, 4).unwrap());
        let t3 = DynamicText::new(b"abba", 43);
        // different seed, different bases; values should differ
        assert_ne!(t1.fingerprint_fwd(1, 4).unwrap().h, t3.fingerprint_fwd(1, 4).unwrap().h);
    }

    #[test]
    fn substitute_updates_both_layers() {
        let mut t = DynamicText::new(b"abba", 5);
        t.substitute_char(2, b'x').unwrap();
        assert_eq!(t.as_bytes(), b"axba");
        let fresh = DynamicText::new(b"axba", 5);
        assert_eq!(t.fingerprint_fwd(1, 4).unwrap(), fresh.fingerprint_fwd(1, 4).unwrap());
        assert_eq!(t.fingerprint_rev(1, 4).unwrap(), fresh.fingerprint_rev(1, 4).unwrap());
    }

    #[test]
    fn substitute_same_symbol_is_idempotent() {
        let mut t = DynamicText::new(b"a", 9);
        let before = t.fingerprint_fwd(1, 1).unwrap();
        t.substitute_char(1, b'a').unwrap();
        assert_eq!(t.fingerprint_fwd(1, 1).unwrap(), before);
    }

    #[test]
    fn substitute_out_of_range() {
        let mut t = DynamicText::new(b"abba", 5);
        assert_eq!(t.substitute_char(5, b'x'), Err(Error::OutOfRange { pos: 5, len: 4 }));
        assert_eq!(t.substitute_char(0, b'x'), Err(Error::OutOfRange { pos: 0, len: 4 }));
    }

    #[test]
    fn equal_substrings_equal_fingerprints() {
        let t = DynamicText::new(b"abab", 3);
        assert_eq!(t.fingerprint_fwd(1, 2).unwrap(), t.fingerprint_fwd(3, 4).unwrap());
        let t2 = DynamicText::new(b"abc", 3);
        assert_ne!(t2.fingerprint_fwd(1, 1).unwrap(), t2.fingerprint_fwd(2, 2).unwrap());
    }

    #[test]
    fn palindrome_matches_reverse_fingerprint() {
        let t = DynamicText::new(b"aba", 11);
        assert_eq!(t.fingerprint_fwd(1, 3).unwrap(), t.fingerprint_rev(1, 3).unwrap());
        let t2 = DynamicText::new(b"abc", 11);
        assert_ne!(t2.fingerprint_fwd(1, 3).unwrap(), t2.fingerprint_rev(1, 3).unwrap());
    }

    #[test]
    fn mirror_law() {
        let s = b"abacabadxy";
        let rev: Vec<u8> = s.iter().rev().copied().collect();
        let t = DynamicText::new(s, 77);
        let tr = DynamicText::new(&rev, 77);
        let n = s.len();
        for i in 1..=n {
            for j in i..=n {
                assert_eq!(
                    t.fingerprint_rev(i, j).unwrap(),
                    tr.fingerprint_fwd(n + 1 - j, n + 1 - i).unwrap()
                );
            }
        }
    }

    #[test]
    fn randomized_soundness() {
        let mut rng = StdRng::seed_from_u64(0xfeed);
        let mut trials = 0u64;
        while trials < 100_000 {
            let n = rng.gen_range(1..=2000usize);
            let sigma = [2u8, 3, 26][rng.gen_range(0..3)];
            let mut s: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            // plant a duplicated block so equal pairs actually occur
            if n >= 8 {
                let len = rng.gen_range(1..=n / 4);
                let src = rng.gen_range(0..=n - len);
                let dst = rng.gen_range(0..=n - len);
                let block: Vec<u8> = s[src..src + len].to_vec();
                s[dst..dst + len].copy_from_slice(&block);
            }
            let t = DynamicText::new(&s, rng.gen());
            for _ in 0..200 {
                let len = rng.gen_range(0..=n.min(64));
                let i = rng.gen_range(1..=n - len + 1);
                let j = rng.gen_range(1..=n - len + 1);
                let hash_eq =
                    t.fingerprint_fwd(i, i + len - 1).unwrap() == t.fingerprint_fwd(j, j + len - 1).unwrap();
                let real_eq = s[i - 1..i - 1 + len] == s[j - 1..j - 1 + len];
                assert_eq!(hash_eq, real_eq, "i={i} j={j} len={len}");
                trials += 1;
            }
        }
        // length-0 edge: canonical empty fingerprint compares equal
        let t = DynamicText::new(b"xy", 0);
        assert_eq!(t.fingerprint_fwd(2, 1).unwrap(), Fingerprint::EMPTY);
    }
}
