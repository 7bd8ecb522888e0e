//! String distances and phonetic keys.
//!
//! Distances are computed over Unicode scalar values. [`edit_distance`] is the
//! unrestricted Damerau-Levenshtein distance (insertions, deletions,
//! substitutions and adjacent transpositions, each costing one), which is a
//! true metric. The phonetic keys are deliberately small reductions: only
//! stable "sounds-like" classes matter to the suggester.

use std::fmt;

use crate::error::{Error, Result};

/// Reduced consonant-class encoding of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhoneticKey(String);

impl PhoneticKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PhoneticKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Damerau-Levenshtein distance between `a` and `b`.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    damerau_levenshtein(&a, &b)
}

/// Like [`edit_distance`], but returns `None` as soon as the distance is
/// known to exceed `max`.
pub fn edit_distance_within(a: &str, b: &str, max: usize) -> Option<usize> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.len().abs_diff(b.len()) > max {
        return None;
    }
    let d = damerau_levenshtein(&a, &b);
    (d <= max).then_some(d)
}

/// `1 / (edit_distance(e, s) + 1)`, in `(0, 1]`.
pub fn normalized_edit_distance(e: &str, s: &str) -> f64 {
    1.0 / (edit_distance(e, s) as f64 + 1.0)
}

// Lowrance-Wagner formulation. `last_row` remembers, per symbol, the last row
// of `a` in which it occurred; alphabets per call are tiny so a linear scan
// beats hashing.
fn damerau_levenshtein(a: &[char], b: &[char]) -> usize {
    let (n, m) = (a.len(), b.len());
    if n == 0 {
        return m;
    }
    if m == 0 {
        return n;
    }
    let inf = n + m;
    let w = m + 2;
    let mut d = vec![0usize; (n + 2) * w];
    d[0] = inf;
    for i in 0..=n {
        d[(i + 1) * w] = inf;
        d[(i + 1) * w + 1] = i;
    }
    for j in 0..=m {
        d[j + 1] = inf;
        d[w + j + 1] = j;
    }
    let mut last_row: Vec<(char, usize)> = Vec::new();
    for i in 1..=n {
        let mut last_match_col = 0;
        for j in 1..=m {
            let i1 = last_row.iter().find(|(c, _)| *c == b[j - 1]).map_or(0, |&(_, r)| r);
            let j1 = last_match_col;
            let cost = if a[i - 1] == b[j - 1] {
                last_match_col = j;
                0
            } else {
                1
            };
            let substitute = d[i * w + j] + cost;
            let insert = d[(i + 1) * w + j] + 1;
            let delete = d[i * w + j + 1] + 1;
            let transpose = d[i1 * w + j1] + (i - i1 - 1) + 1 + (j - j1 - 1);
            d[(i + 1) * w + j + 1] = substitute.min(insert).min(delete).min(transpose);
        }
        match last_row.iter_mut().find(|(c, _)| *c == a[i - 1]) {
            Some(entry) => entry.1 = i,
            None => last_row.push((a[i - 1], i)),
        }
    }
    d[(n + 1) * w + m + 1]
}

fn letters(w: &str) -> Result<Vec<char>> {
    let letters: Vec<char> = w.chars().filter(|c| c.is_alphabetic()).flat_map(char::to_lowercase).collect();
    if letters.is_empty() {
        return Err(Error::NoPhoneticContent(w.to_string()));
    }
    Ok(letters)
}

fn soundex_digit(c: char) -> char {
    match c {
        'b' | 'f' | 'p' | 'v' => '1',
        'c' | 'g' | 'j' | 'k' | 'q' | 's' | 'x' | 'z' => '2',
        'd' | 't' => '3',
        'l' => '4',
        'm' | 'n' => '5',
        'r' => '6',
        _ => '0',
    }
}

/// Unpadded SOUNDEX: first letter, then the class digits of the remaining
/// letters with zeros removed and adjacent repeats collapsed
/// (`wear -> w006 -> w6`).
pub fn soundex_key(w: &str) -> Result<PhoneticKey> {
    let letters = letters(w)?;
    let mut key = String::new();
    key.push(letters[0]);
    let mut prev = None;
    for digit in letters[1..].iter().map(|&c| soundex_digit(c)) {
        if digit == '0' || prev == Some(digit) {
            continue;
        }
        key.push(digit);
        prev = Some(digit);
    }
    Ok(PhoneticKey(key))
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Simplified Metaphone reduction used by the base suggester.
pub fn phonetic_key(w: &str) -> Result<PhoneticKey> {
    let letters = letters(w)?;
    let mut out: Vec<char> = Vec::with_capacity(letters.len() + 1);
    let mut i = 0;
    while i < letters.len() {
        let c = letters[i];
        let next = letters.get(i + 1).copied();
        let digraph = match (c, next) {
            ('p', Some('h')) => Some("F"),
            ('t', Some('h')) => Some("0"),
            ('s', Some('h')) | ('c', Some('h')) => Some("X"),
            ('c', Some('k')) | ('g', Some('h')) => Some("K"),
            _ => None,
        };
        if let Some(code) = digraph {
            out.extend(code.chars());
            i += 2;
            continue;
        }
        let code = match c {
            _ if is_vowel(c) => {
                if i == 0 {
                    "A"
                } else {
                    ""
                }
            }
            'b' => "B",
            'c' | 'k' | 'q' => "K",
            'd' | 't' => "T",
            'g' | 'j' => "J",
            'f' | 'v' => "F",
            's' | 'z' => "S",
            'x' => "KS",
            'm' | 'n' => "N",
            'l' => "L",
            'r' => "R",
            'p' => "P",
            'w' if i == 0 => "W",
            'h' if i == 0 => "H",
            'y' if i == 0 => "Y",
            _ => "",
        };
        out.extend(code.chars());
        i += 1;
    }
    out.dedup();
    Ok(PhoneticKey(out.into_iter().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wear_to_beard() {
        assert_eq!(edit_distance("wear", "beard"), 2);
        assert!((normalized_edit_distance("wear", "beard") - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn transposition_counts_once() {
        assert_eq!(edit_distance("cta", "cat"), 1);
        assert_eq!(normalized_edit_distance("cta", "cat"), 0.5);
        // Unrestricted variant: edits may touch a transposed pair again.
        assert_eq!(edit_distance("ca", "abc"), 2);
    }

    #[test]
    fn empty_and_identity() {
        assert_eq!(edit_distance("", ""), 0);
        assert_eq!(edit_distance("", "abc"), 3);
        assert_eq!(edit_distance("abc", ""), 3);
        assert_eq!(edit_distance("chage", "chage"), 0);
        assert_eq!(normalized_edit_distance("x", "x"), 1.0);
    }

    #[test]
    fn counts_scalars_not_bytes() {
        assert_eq!(edit_distance("café", "cafe"), 1);
        assert_eq!(edit_distance("über", "uber"), 1);
    }

    #[test]
    fn within_bound() {
        assert_eq!(edit_distance_within("cta", "cat", 2), Some(1));
        assert_eq!(edit_distance_within("a", "abcd", 2), None);
        assert_eq!(edit_distance_within("abcd", "dcba", 2), None);
    }

    #[test]
    fn soundex_examples() {
        assert_eq!(soundex_key("wear").unwrap().as_str(), "w6");
        assert_eq!(soundex_key("ware").unwrap().as_str(), "w6");
        assert_eq!(soundex_key("a").unwrap().as_str(), "a");
        assert_eq!(soundex_key("Pepper").unwrap().as_str(), "p16");
        assert!(matches!(soundex_key("123"), Err(Error::NoPhoneticContent(_))));
        assert!(soundex_key("").is_err());
    }

    #[test]
    fn phonetic_examples() {
        assert_eq!(phonetic_key("cat").unwrap().as_str(), "KT");
        assert_eq!(phonetic_key("cta").unwrap().as_str(), "KT");
        assert_eq!(phonetic_key("phone").unwrap().as_str(), "FN");
        assert_eq!(phonetic_key("order").unwrap().as_str(), "ARTR");
        assert_eq!(phonetic_key("that").unwrap().as_str(), "0T");
        assert_eq!(phonetic_key("box").unwrap().as_str(), "BKS");
        assert_eq!(phonetic_key("hat").unwrap().as_str(), "HT");
        assert!(phonetic_key("").is_err());
    }

    #[test]
    fn keys_ignore_case() {
        for w in ["Wear", "PHONE", "Cheung", "Jones"] {
            assert_eq!(phonetic_key(w).unwrap(), phonetic_key(&w.to_lowercase()).unwrap());
            assert_eq!(soundex_key(w).unwrap(), soundex_key(&w.to_uppercase()).unwrap());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn metric_laws(a in "[a-d]{0,7}", b in "[a-d]{0,7}", c in "[a-d]{0,7}") {
                let (ab, bc, ac) = (edit_distance(&a, &b), edit_distance(&b, &c), edit_distance(&a, &c));
                prop_assert_eq!(ab, edit_distance(&b, &a));
                prop_assert!(ac <= ab + bc);
                prop_assert_eq!(ab == 0, a == b);
            }

            #[test]
            fn ned_range_and_order(a in "[a-d]{0,7}", b in "[a-d]{0,7}", c in "[a-d]{0,7}") {
                let (nb, nc) = (normalized_edit_distance(&a, &b), normalized_edit_distance(&a, &c));
                prop_assert!(nb > 0.0 && nb <= 1.0);
                if edit_distance(&a, &b) < edit_distance(&a, &c) {
                    prop_assert!(nb > nc);
                }
            }

            #[test]
            fn adjacent_swap_costs_at_most_one(w in "[a-z]{2,10}", k in 0usize..9) {
                let mut chars: Vec<char> = w.chars().collect();
                let k = k % (chars.len() - 1);
                chars.swap(k, k + 1);
                let swapped: String = chars.into_iter().collect();
                prop_assert!(edit_distance(&w, &swapped) <= 1);
            }

            #[test]
            fn bounded_agrees_with_full(a in "[a-c]{0,6}", b in "[a-c]{0,6}", max in 0usize..4) {
                let d = edit_distance(&a, &b);
                prop_assert_eq!(edit_distance_within(&a, &b, max), (d <= max).then_some(d));
            }

            #[test]
            fn keys_are_case_insensitive(w in "[a-zA-Z]{1,12}") {
                prop_assert_eq!(phonetic_key(&w).unwrap(), phonetic_key(&w.to_uppercase()).unwrap());
                prop_assert_eq!(soundex_key(&w).unwrap(), soundex_key(&w.to_lowercase()).unwrap());
            }
        }
    }
}
