//! Bitstring helpers: length-lexicographic order and enumeration.

use std::cmp::Ordering;

/// Shorter words first, then dictionary order with `0 < 1`.
pub fn llex_cmp(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn is_bitstring(s: &str) -> bool {
    s.bytes().all(|b| b == b'0' || b == b'1')
}

/// All words of length exactly `n`, in dictionary order.
pub fn words_of_len(n: usize) -> impl Iterator<Item = String> {
    let count: u64 = if n >= 64 { u64::MAX } else { 1u64 << n };
    (0..count).map(move |i| {
        (0..n)
            .map(|j| if (i >> (n - 1 - j)) & 1 == 1 { '1' } else { '0' })
            .collect()
    })
}

/// All words of length at most `max_len`, in llex order.
pub fn words_up_to(max_len: usize) -> impl Iterator<Item = String> {
    (0..=max_len).flat_map(words_of_len)
}

/// Number of words of length at most `max_len`.
pub fn count_up_to(max_len: usize) -> u64 {
    (1u64 << (max_len + 1)) - 1
}

/// The word at position `i` of the llex enumeration.
pub fn nth_word(i: u64) -> String {
    // position i <-> binary expansion of i+1 without its leading 1
    let v = i + 1;
    let width = 63 - v.leading_zeros();
    (0..width)
        .rev()
        .map(|j| if (v >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumeration_is_llex() {
        let w: Vec<String> = words_up_to(2).collect();
        assert_eq!(w, ["", "0", "1", "00", "01", "10", "11"]);
        assert_eq!(count_up_to(2), 7);
    }

    #[test]
    fn nth_word_matches_enumeration() {
        for (i, w) in words_up_to(6).enumerate() {
            assert_eq!(nth_word(i as u64), w);
        }
    }

    proptest! {
        #[test]
        fn llex_agrees_with_enumeration_index(i in 0u64..5000, j in 0u64..5000) {
            prop_assert_eq!(llex_cmp(&nth_word(i), &nth_word(j)), i.cmp(&j));
        }
    }
}
