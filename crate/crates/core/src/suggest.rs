//! Error detection and construction of the ranked suggestion list.

use serde::Serialize;

use crate::lexicon::WordDict;
use crate::strdist::{edit_distance, edit_distance_within, phonetic_key};

pub const DEFAULT_SUGGESTION_LIMIT: usize = 20;

/// Maximum edit distance for both word and key near-misses.
const MAX_DISTANCE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuggestionSource {
    Context,
    Abbreviation,
    Base,
    Identity,
}

/// An error word with its immediate word neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorSite {
    pub error: String,
    pub left: Option<String>,
    pub right: Option<String>,
    pub sentence: usize,
    /// Token position within the sentence.
    pub position: usize,
}

impl ErrorSite {
    pub fn new(error: impl Into<String>, left: Option<&str>, right: Option<&str>) -> Self {
        Self {
            error: error.into(),
            left: left.map(str::to_string),
            right: right.map(str::to_string),
            sentence: 0,
            position: 0,
        }
    }

    pub fn left(&self) -> Option<&str> {
        self.left.as_deref()
    }

    pub fn right(&self) -> Option<&str> {
        self.right.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suggestion {
    pub word: String,
    /// 1-based position in the final list (j).
    pub element_index: usize,
    /// Confidence tier (i); every augmentation shares rank 1.
    pub rank: usize,
    pub source: SuggestionSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuggestionList {
    pub site: ErrorSite,
    pub items: Vec<Suggestion>,
    /// Number of base suggestions.
    pub n: usize,
    /// Number of abbreviation expansions.
    pub m: usize,
}

impl SuggestionList {
    pub fn words(&self) -> Vec<&str> {
        self.items.iter().map(|s| s.word.as_str()).collect()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.items.iter().any(|s| s.word == word)
    }
}

struct KeyedEntry {
    surface: String,
    lower: String,
    key: Option<String>,
    freq: u64,
}

/// Near-miss candidate generator over a word dictionary. Phonetic keys are
/// computed once at construction.
pub struct BaseSuggester {
    entries: Vec<KeyedEntry>,
    limit: usize,
}

impl BaseSuggester {
    pub fn new(dict: &WordDict, limit: usize) -> Self {
        let entries = dict
            .iter()
            .map(|e| KeyedEntry {
                lower: e.surface.to_lowercase(),
                key: phonetic_key(&e.surface).ok().map(|k| k.as_str().to_string()),
                surface: e.surface.clone(),
                freq: e.freq,
            })
            .collect();
        Self { entries, limit }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Dictionary words whose phonetic key is within two edits of the key
    /// of `e`, plus words within two edits of `e` itself, ordered by word
    /// distance, key distance, frequency (descending) and spelling.
    pub fn suggest(&self, e: &str) -> Vec<String> {
        if e.is_empty() {
            return Vec::new();
        }
        let lower = e.to_lowercase();
        let e_key = phonetic_key(e).ok().map(|k| k.as_str().to_string());
        let mut found: Vec<(usize, usize, u64, &str)> = Vec::new();
        for entry in &self.entries {
            let key_distance = match (&e_key, &entry.key) {
                (Some(a), Some(b)) => edit_distance_within(a, b, MAX_DISTANCE),
                _ => None,
            };
            let word_distance = edit_distance_within(&lower, &entry.lower, MAX_DISTANCE);
            if key_distance.is_none() && word_distance.is_none() {
                continue;
            }
            let word_distance = word_distance.unwrap_or_else(|| edit_distance(&lower, &entry.lower));
            found.push((word_distance, key_distance.unwrap_or(usize::MAX), entry.freq, &entry.surface));
        }
        found.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)).then(a.3.cmp(b.3)));
        found.into_iter().take(self.limit).map(|f| f.3.to_string()).collect()
    }
}

/// One-off form of [`BaseSuggester::suggest`].
pub fn base_suggestions(e: &str, dict: &WordDict, limit: usize) -> Vec<String> {
    BaseSuggester::new(dict, limit).suggest(e)
}

/// Context-based detector for misspellings that are themselves words.
pub trait RealWordChecker {
    fn is_real_word_error(&self, site: &ErrorSite) -> bool;
}

/// Never flags anything.
pub struct NoContext;

impl RealWordChecker for NoContext {
    fn is_real_word_error(&self, _site: &ErrorSite) -> bool {
        false
    }
}

/// Either detector suffices: the dictionary rejects `t`, or the context
/// checker considers it improbable between its neighbours.
pub fn is_error(t: &str, dict: &WordDict, site: &ErrorSite, checker: &dyn RealWordChecker) -> bool {
    !dict.accepts(t) || checker.is_real_word_error(site)
}

/// Assembles the final list: the context suggestion, then the expansions,
/// all at rank 1; then base suggestions at ranks 1..=n; then the error
/// itself at rank n+1.
pub fn augment(base: &[String], site: ErrorSite, expansions: &[String], context: Option<&str>) -> SuggestionList {
    let n = base.len();
    let m = expansions.len();
    let mut items = Vec::with_capacity(n + m + 2);
    let mut push = |word: &str, rank: usize, source: SuggestionSource| {
        items.push(Suggestion { word: word.to_string(), element_index: items.len() + 1, rank, source });
    };
    if let Some(c) = context {
        push(c, 1, SuggestionSource::Context);
    }
    for x in expansions {
        push(x, 1, SuggestionSource::Abbreviation);
    }
    for (i, b) in base.iter().enumerate() {
        push(b, i + 1, SuggestionSource::Base);
    }
    push(&site.error, n + 1, SuggestionSource::Identity);
    SuggestionList { site, items, n, m }
}

/// Carries a leading capital from `original` onto an all-lowercase
/// candidate; otherwise the candidate is returned unchanged.
pub fn match_case(original: &str, candidate: &str) -> String {
    let starts_upper = original.chars().next().is_some_and(char::is_uppercase);
    if starts_upper && !candidate.chars().any(char::is_uppercase) {
        let mut chars = candidate.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    } else {
        candidate.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dict(words: &[(&str, u64)]) -> WordDict {
        let mut d = WordDict::new();
        for (w, f) in words {
            d.insert(w, *f, w.chars().next().unwrap().is_uppercase());
        }
        d
    }

    fn site(e: &str) -> ErrorSite {
        ErrorSite::new(e, None, None)
    }

    #[test]
    fn cta_prefers_anagrams_over_car() {
        // "car" ties "tac" on both distances, so frequency decides.
        let d = dict(&[("cat", 5), ("act", 5), ("tac", 5), ("car", 1)]);
        let s = base_suggestions("cta", &d, 20);
        let pos = |w: &str| s.iter().position(|x| x == w).unwrap();
        assert!(pos("cat") < pos("car"));
        assert!(pos("act") < pos("car"));
        assert!(pos("tac") < pos("car"));
    }

    #[test]
    fn known_word_is_first() {
        let d = dict(&[("order", 3), ("older", 9), ("border", 4)]);
        assert_eq!(base_suggestions("order", &d, 20)[0], "order");
    }

    #[test]
    fn canonical_surface_is_suggested() {
        let d = dict(&[("Jones", 3), ("bones", 9)]);
        assert_eq!(base_suggestions("jones", &d, 20)[0], "Jones");
    }

    #[test]
    fn nothing_near() {
        let d = dict(&[("elephant", 1), ("strawberry", 1), ("mountain", 1)]);
        let got = base_suggestions("qqqq", &d, 20);
        // Exhaustive oracle: no word is within two edits and no key is
        // within two edits of the key of "qqqq".
        let qk = phonetic_key("qqqq").unwrap();
        for w in ["elephant", "strawberry", "mountain"] {
            assert!(edit_distance("qqqq", w) > 2);
            assert!(edit_distance(qk.as_str(), phonetic_key(w).unwrap().as_str()) > 2);
        }
        assert!(got.is_empty());
    }

    #[test]
    fn limit_truncates() {
        let d = dict(&[("cat", 1), ("bat", 1), ("hat", 1), ("mat", 1), ("rat", 1)]);
        assert_eq!(base_suggestions("zat", &d, 3).len(), 3);
        assert!(base_suggestions("", &d, 3).is_empty());
    }

    struct Flags(&'static str);
    impl RealWordChecker for Flags {
        fn is_real_word_error(&self, site: &ErrorSite) -> bool {
            site.error == self.0
        }
    }

    #[test]
    fn detection() {
        let d = dict(&[("change", 1), ("hat", 1), ("they", 1), ("Jones", 1)]);
        assert!(is_error("chage", &d, &site("chage"), &NoContext));
        assert!(!is_error("change", &d, &site("change"), &NoContext));
        let hat = ErrorSite::new("hat", Some("suret"), Some("they"));
        assert!(is_error("hat", &d, &hat, &Flags("hat")));
        assert!(!is_error("hat", &d, &hat, &NoContext));
        assert!(is_error("jones", &d, &site("jones"), &NoContext));
        assert!(!is_error("Jones", &d, &site("Jones"), &NoContext));
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn augment_full() {
        let list = augment(&strings(&["b1", "b2"]), site("e"), &strings(&["x"]), Some("c"));
        let got: Vec<(&str, usize, usize)> =
            list.items.iter().map(|s| (s.word.as_str(), s.rank, s.element_index)).collect();
        assert_eq!(got, vec![("c", 1, 1), ("x", 1, 2), ("b1", 1, 3), ("b2", 2, 4), ("e", 3, 5)]);
        assert_eq!((list.n, list.m), (2, 1));
    }

    #[test]
    fn augment_identity_only() {
        let list = augment(&[], site("e"), &[], None);
        assert_eq!(list.items.len(), 1);
        assert_eq!(list.items[0].rank, 1);
        assert_eq!(list.items[0].source, SuggestionSource::Identity);
    }

    #[test]
    fn augment_two_expansions() {
        let list = augment(&strings(&["b"]), site("e"), &strings(&["x", "y"]), None);
        let ranks: Vec<usize> = list.items.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![1, 1, 1, 2]);
        assert_eq!(list.items.last().unwrap().word, "e");
    }

    #[test]
    fn case_matching() {
        assert_eq!(match_case("Thx", "thanks"), "Thanks");
        assert_eq!(match_case("thx", "thanks"), "thanks");
        assert_eq!(match_case("Az", "Arizona"), "Arizona");
        assert_eq!(match_case("Hp", "Hewlett-Packard"), "Hewlett-Packard");
        assert_eq!(match_case("Pls", ""), "");
    }

    proptest! {
        #[test]
        fn ordering_is_deterministic_and_contains_known(words in prop::collection::btree_set("[a-e]{1,5}", 1..30), pick in 0usize..30) {
            let words: Vec<String> = words.into_iter().collect();
            let mut d = WordDict::new();
            for (i, w) in words.iter().enumerate() {
                d.insert(w, (i % 7) as u64, false);
            }
            let target = &words[pick % words.len()];
            let a = base_suggestions(target, &d, 1000);
            let b = BaseSuggester::new(&d.clone(), 1000).suggest(target);
            prop_assert_eq!(&a, &b);
            prop_assert!(a.contains(target));
        }

        #[test]
        fn list_shape(n in 0usize..5, m in 0usize..5, ctx in any::<bool>()) {
            let base: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
            let exp: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
            let list = augment(&base, site("e"), &exp, ctx.then_some("c"));
            let last = list.items.last().unwrap();
            prop_assert_eq!(last.rank, n + 1);
            prop_assert_eq!(last.source, SuggestionSource::Identity);
            for (k, w) in list.items.windows(2).enumerate() {
                prop_assert!(w[0].rank <= w[1].rank, "at {}", k);
                prop_assert_eq!(w[0].element_index + 1, w[1].element_index);
            }
            prop_assert_eq!(list.items[0].element_index, 1);
        }
    }
}
