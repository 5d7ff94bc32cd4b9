//! Property tests: the hashed text, the LCE queries, and the index itself are
//! each pinned to their character-level oracles under arbitrary inputs.

use dynpal::{lce, oracle, Center, DynamicText, PalindromeIndex};
use proptest::collection::vec;
use proptest::prelude::*;

fn small_text() -> impl Strategy<Value = Vec<u8>> {
    vec(prop_oneof![Just(b'a'), Just(b'b'), Just(b'c')], 1..80)
}

proptest! {
    #[test]
    fn fingerprint_equality_matches_substring_equality(
        s in small_text(),
        seed in any::<u64>(),
        picks in vec((any::<usize>(), any::<usize>(), any::<usize>()), 1..40),
    ) {
        let n = s.len();
        let t = DynamicText::new(&s, seed);
        for (a, b, l) in picks {
            let len = l % (n + 1);
            if len == 0 || len > n { continue; }
            let i = 1 + a % (n - len + 1);
            let j = 1 + b % (n - len + 1);
            let hash_eq = t.fingerprint_fwd(i, i + len - 1).unwrap()
                == t.fingerprint_fwd(j, j + len - 1).unwrap();
            prop_assert_eq!(hash_eq, s[i - 1..i - 1 + len] == s[j - 1..j - 1 + len]);
        }
    }

    #[test]
    fn mirror_law_holds(s in small_text(), seed in any::<u64>()) {
        let n = s.len();
        let rev: Vec<u8> = s.iter().rev().copied().collect();
        let t = DynamicText::new(&s, seed);
        let tr = DynamicText::new(&rev, seed);
        for i in 1..=n {
            for j in i..=n {
                prop_assert_eq!(
                    t.fingerprint_rev(i, j).unwrap(),
                    tr.fingerprint_fwd(n + 1 - j, n + 1 - i).unwrap()
                );
            }
        }
    }

    #[test]
    fn lce_queries_match_naive(
        s in small_text(),
        seed in any::<u64>(),
        edits in vec((any::<usize>(), prop_oneof![Just(b'a'), Just(b'b')]), 0..6),
    ) {
        let n = s.len();
        let mut s = s;
        let mut t = DynamicText::new(&s, seed);
        for (pos_raw, c) in edits {
            let pos = 1 + pos_raw % n;
            s[pos - 1] = c;
            t.substitute_char(pos, c).unwrap();
        }
        for i in 1..=n {
            for j in 1..=n {
                prop_assert_eq!(lce::lcp(&t, i, j).unwrap(), oracle::naive_lcp(&s, i, j));
                prop_assert_eq!(lce::lcs_back(&t, i, j).unwrap(), oracle::naive_lcs_back(&s, i, j));
            }
        }
        for c in 1..=n {
            prop_assert_eq!(
                lce::palindrome_radius(&t, Center::Odd(c)).unwrap(),
                oracle::naive_radius(&s, Center::Odd(c))
            );
        }
        for c in 1..n {
            prop_assert_eq!(
                lce::palindrome_radius(&t, Center::Even(c)).unwrap(),
                oracle::naive_radius(&s, Center::Even(c))
            );
        }
    }

    #[test]
    fn index_tracks_oracle_under_edits(
        s in vec(prop_oneof![3 => Just(b'a'), 2 => Just(b'b'), 1 => Just(b'c')], 1..50),
        seed in any::<u64>(),
        edits in vec((any::<usize>(), prop_oneof![Just(b'a'), Just(b'b'), Just(b'c')]), 0..25),
    ) {
        let n = s.len();
        let mut s = s;
        let mut idx = PalindromeIndex::build(&s, seed);
        let check = |idx: &PalindromeIndex, s: &[u8]| {
            let report = oracle::all_maximal_palindromes(s);
            prop_assert_eq!(idx.all_maximal_palindromes(), report.palindromes);
            prop_assert_eq!(idx.longest(), report.longest);
            Ok(())
        };
        check(&idx, &s)?;
        for (pos_raw, c) in edits {
            let pos = 1 + pos_raw % n;
            s[pos - 1] = c;
            idx.substitute(pos, c).unwrap();
            check(&idx, &s)?;
        }
        idx.validate().unwrap();
    }
}
