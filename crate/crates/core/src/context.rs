//! Corpus statistics and the context-aware suggester.
//!
//! A [`CorpusIndex`] holds unigram and adjacent-bigram counts plus their
//! document frequencies for one collection. The domain index backs the
//! domain-significance weight, the general index backs general significance,
//! the context suggester and real-word error detection.
//!
//! Bigrams are adjacent word tokens within a sentence; punctuation and
//! placeholders are skipped, so `ok , thanks` contributes `(ok, thanks)`.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strdist::edit_distance_within;
use crate::textprep::{extract_entities, parse_placeholder, split_sentences, tokenize, EmoticonInventory};

const INDEX_MAGIC: &str = "#cleantext-corpus-index";
const INDEX_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusRole {
    Domain,
    General,
}

impl CorpusRole {
    pub fn as_str(self) -> &'static str {
        match self {
            CorpusRole::Domain => "domain",
            CorpusRole::General => "general",
        }
    }
}

impl std::str::FromStr for CorpusRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "domain" => Ok(CorpusRole::Domain),
            "general" => Ok(CorpusRole::General),
            other => Err(Error::Config(format!("unknown corpus role {other:?}"))),
        }
    }
}

/// The five queries the scorer needs from a collection. [`CorpusIndex`] is
/// the local implementation; a live search backend could provide the same.
pub trait CollectionStats {
    /// Number of documents, N.
    fn doc_count(&self) -> u64;
    /// Total occurrences of `w`.
    fn freq(&self, w: &str) -> u64;
    /// Occurrences of `a` immediately followed by `b`.
    fn pair_freq(&self, a: &str, b: &str) -> u64;
    /// Documents containing `w`.
    fn doc_freq(&self, w: &str) -> u64;
    /// Documents containing `a` immediately followed by `b`.
    fn pair_doc_freq(&self, a: &str, b: &str) -> u64;
}

fn lower(w: &str) -> Cow<'_, str> {
    if w.chars().any(char::is_uppercase) {
        Cow::Owned(w.to_lowercase())
    } else {
        Cow::Borrowed(w)
    }
}

#[derive(Debug, Clone)]
pub struct CorpusIndex {
    role: CorpusRole,
    docs: u64,
    words: Vec<String>,
    ids: HashMap<String, u32>,
    freq: Vec<u64>,
    df: Vec<u64>,
    pair_freq: HashMap<(u32, u32), u64>,
    pair_df: HashMap<(u32, u32), u64>,
    // Word ids bucketed by character length, for near-miss search.
    by_len: Vec<Vec<u32>>,
}

impl PartialEq for CorpusIndex {
    fn eq(&self, other: &Self) -> bool {
        self.to_tsv() == other.to_tsv()
    }
}

impl CorpusIndex {
    pub fn empty(role: CorpusRole) -> Self {
        IndexBuilder::new(role).finish()
    }

    pub fn role(&self) -> CorpusRole {
        self.role
    }

    pub fn vocabulary_size(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs == 0
    }

    fn id(&self, w: &str) -> Option<u32> {
        self.ids.get(lower(w).as_ref()).copied()
    }

    fn pair_count(&self, map: &HashMap<(u32, u32), u64>, a: &str, b: &str) -> u64 {
        match (self.id(a), self.id(b)) {
            (Some(x), Some(y)) => map.get(&(x, y)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    fn pair_by_id(&self, a: Option<u32>, b: Option<u32>) -> u64 {
        match (a, b) {
            (Some(x), Some(y)) => self.pair_freq.get(&(x, y)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Vocabulary words (other than `w` itself) within `max` edits of `w`,
    /// with their distances.
    fn near(&self, w: &str, max: usize) -> Vec<(u32, usize)> {
        let w = lower(w);
        let len = w.chars().count();
        let lo = len.saturating_sub(max);
        let hi = (len + max).min(self.by_len.len().saturating_sub(1));
        let mut out = Vec::new();
        for bucket in self.by_len.iter().take(hi + 1).skip(lo) {
            for &id in bucket {
                let cand = &self.words[id as usize];
                // Punctuation is indexed for bigrams but is never a candidate.
                if cand.as_str() == w.as_ref() || !cand.chars().any(char::is_alphabetic) {
                    continue;
                }
                if let Some(d) = edit_distance_within(&w, cand, max) {
                    out.push((id, d));
                }
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{INDEX_MAGIC}\t{INDEX_VERSION}");
        let _ = writeln!(out, "role\t{}", self.role.as_str());
        let _ = writeln!(out, "documents\t{}", self.docs);
        let mut order: Vec<u32> = (0..self.words.len() as u32).collect();
        order.sort_by(|a, b| self.words[*a as usize].cmp(&self.words[*b as usize]));
        for &id in &order {
            let i = id as usize;
            let _ = writeln!(out, "u\t{}\t{}\t{}", self.words[i], self.freq[i], self.df[i]);
        }
        let mut pairs: Vec<(&str, &str, u64, u64)> = self
            .pair_freq
            .iter()
            .map(|(&(a, b), &f)| {
                let d = self.pair_df.get(&(a, b)).copied().unwrap_or(0);
                (self.words[a as usize].as_str(), self.words[b as usize].as_str(), f, d)
            })
            .collect();
        pairs.sort_unstable();
        for (a, b, f, d) in pairs {
            let _ = writeln!(out, "b\t{a}\t{b}\t{f}\t{d}");
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let bad = |line: usize, msg: &str| Error::parse(origin, line, msg.to_string());

        let (_, header) = lines.next().ok_or_else(|| bad(1, "empty index file"))?;
        let version = header
            .strip_prefix(INDEX_MAGIC)
            .and_then(|v| v.trim().parse::<u32>().ok())
            .ok_or_else(|| bad(1, "missing index header"))?;
        if version != INDEX_VERSION {
            return Err(bad(1, &format!("unsupported index version {version}")));
        }
        let (n, role_line) = lines.next().ok_or_else(|| bad(2, "missing role"))?;
        let role: CorpusRole = role_line
            .strip_prefix("role\t")
            .ok_or_else(|| bad(n, "expected role line"))?
            .parse()
            .map_err(|_| bad(n, "unknown role"))?;
        let (n, docs_line) = lines.next().ok_or_else(|| bad(3, "missing document count"))?;
        let docs: u64 = docs_line
            .strip_prefix("documents\t")
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad(n, "expected documents line"))?;

        let mut builder = IndexBuilder::new(role);
        builder.docs = docs;
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let num = |s: &str| s.parse::<u64>().map_err(|_| bad(n, "bad count"));
            match fields.as_slice() {
                ["u", w, f, d] => {
                    let id = builder.intern(w);
                    builder.freq[id as usize] = num(f)?;
                    builder.df[id as usize] = num(d)?;
                }
                ["b", a, b, f, d] => {
                    let (x, y) = (builder.intern(a), builder.intern(b));
                    builder.pair_freq.insert((x, y), num(f)?);
                    builder.pair_df.insert((x, y), num(d)?);
                }
                _ => return Err(bad(n, "unrecognised record")),
            }
        }
        Ok(builder.finish())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }
}

impl CollectionStats for CorpusIndex {
    fn doc_count(&self) -> u64 {
        self.docs
    }

    fn freq(&self, w: &str) -> u64 {
        self.id(w).map_or(0, |id| self.freq[id as usize])
    }

    fn pair_freq(&self, a: &str, b: &str) -> u64 {
        self.pair_count(&self.pair_freq, a, b)
    }

    fn doc_freq(&self, w: &str) -> u64 {
        self.id(w).map_or(0, |id| self.df[id as usize])
    }

    fn pair_doc_freq(&self, a: &str, b: &str) -> u64 {
        self.pair_count(&self.pair_df, a, b)
    }
}

/// Accumulates documents into a [`CorpusIndex`].
#[derive(Debug)]
pub struct IndexBuilder {
    role: CorpusRole,
    docs: u64,
    words: Vec<String>,
    ids: HashMap<String, u32>,
    freq: Vec<u64>,
    df: Vec<u64>,
    pair_freq: HashMap<(u32, u32), u64>,
    pair_df: HashMap<(u32, u32), u64>,
    emoticons: EmoticonInventory,
}

impl IndexBuilder {
    pub fn new(role: CorpusRole) -> Self {
        Self {
            role,
            docs: 0,
            words: Vec::new(),
            ids: HashMap::new(),
            freq: Vec::new(),
            df: Vec::new(),
            pair_freq: HashMap::new(),
            pair_df: HashMap::new(),
            emoticons: EmoticonInventory::default(),
        }
    }

    fn intern(&mut self, w: &str) -> u32 {
        if let Some(&id) = self.ids.get(w) {
            return id;
        }
        let id = self.words.len() as u32;
        self.words.push(w.to_string());
        self.ids.insert(w.to_string(), id);
        self.freq.push(0);
        self.df.push(0);
        id
    }

    /// Adds one document of plain text, segmented and tokenized with the
    /// same rules the cleaner uses.
    pub fn add_document(&mut self, text: &str) {
        let masked = extract_entities(text, &self.emoticons);
        let sentences: Vec<Vec<String>> = split_sentences(&masked.text, "")
            .iter()
            .map(|s| tokenize(&s.text).into_iter().filter(|t| t.is_word()).map(|t| t.text).collect())
            .collect();
        self.add_sentences(sentences);
    }

    /// Adds one document given as sentences of tokens. Punctuation and
    /// entity placeholders are skipped, as they are when cleaning.
    pub fn add_sentences<I, S, W>(&mut self, sentences: I)
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = W>,
        W: AsRef<str>,
    {
        self.docs += 1;
        let mut seen: HashSet<u32> = HashSet::new();
        let mut seen_pairs: HashSet<(u32, u32)> = HashSet::new();
        for sentence in sentences {
            let mut prev: Option<u32> = None;
            for w in sentence {
                let w = w.as_ref();
                if parse_placeholder(w).is_some() || !w.chars().any(char::is_alphanumeric) {
                    continue;
                }
                let w = w.to_lowercase();
                let id = self.intern(&w);
                self.freq[id as usize] += 1;
                if seen.insert(id) {
                    self.df[id as usize] += 1;
                }
                if let Some(p) = prev {
                    *self.pair_freq.entry((p, id)).or_default() += 1;
                    if seen_pairs.insert((p, id)) {
                        *self.pair_df.entry((p, id)).or_default() += 1;
                    }
                }
                prev = Some(id);
            }
        }
    }

    pub fn finish(self) -> CorpusIndex {
        let max_len = self.words.iter().map(|w| w.chars().count()).max().unwrap_or(0);
        let mut by_len = vec![Vec::new(); max_len + 1];
        let mut sorted: Vec<u32> = (0..self.words.len() as u32).collect();
        sorted.sort_by(|a, b| self.words[*a as usize].cmp(&self.words[*b as usize]));
        for id in sorted {
            by_len[self.words[id as usize].chars().count()].push(id);
        }
        CorpusIndex {
            role: self.role,
            docs: self.docs,
            words: self.words,
            ids: self.ids,
            freq: self.freq,
            df: self.df,
            pair_freq: self.pair_freq,
            pair_df: self.pair_df,
            by_len,
        }
    }
}

/// Builds an index where each string is one document.
pub fn build_index<S: AsRef<str>>(corpus: &[S], role: CorpusRole) -> CorpusIndex {
    let mut builder = IndexBuilder::new(role);
    for doc in corpus {
        builder.add_document(doc.as_ref());
    }
    builder.finish()
}

/// `ln(1 + N/df(s)) / ln(1 + N)`, or 0 when `s` is unseen. In `[0, 1]`.
pub fn idf_norm<S: CollectionStats + ?Sized>(s: &str, idx: &S) -> f64 {
    let n = idx.doc_count();
    let df = idx.doc_freq(s);
    if n == 0 || df == 0 {
        return 0.0;
    }
    let n = n as f64;
    ((1.0 + n / df as f64).ln() / (1.0 + n).ln()).clamp(0.0, 1.0)
}

/// `f(s) + f(l,s) + f(s,r)`; absent neighbours contribute nothing.
pub fn raw_domain_count<S: CollectionStats + ?Sized>(l: Option<&str>, s: &str, r: Option<&str>, idx: &S) -> u64 {
    idx.freq(s) + l.map_or(0, |l| idx.pair_freq(l, s)) + r.map_or(0, |r| idx.pair_freq(s, r))
}

/// Domain significance of `s` among `all_suggestions` (which includes `s`).
pub fn domain_significance<S: CollectionStats + ?Sized>(
    l: Option<&str>,
    s: &str,
    r: Option<&str>,
    all_suggestions: &[&str],
    idx: &S,
) -> f64 {
    let total: u64 = all_suggestions.iter().map(|k| raw_domain_count(l, k, r, idx)).sum();
    domain_significance_with_total(l, s, r, total, idx)
}

pub(crate) fn domain_significance_with_total<S: CollectionStats + ?Sized>(
    l: Option<&str>,
    s: &str,
    r: Option<&str>,
    total: u64,
    idx: &S,
) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let ratio = raw_domain_count(l, s, r, idx) as f64 / total as f64;
    (ratio * idf_norm(s, idx)).clamp(0.0, 1.0)
}

/// General significance: share of documents containing `s` that also
/// contain it next to its neighbours, offset by [`idf_norm`].
pub fn general_significance<S: CollectionStats + ?Sized>(l: Option<&str>, s: &str, r: Option<&str>, idx: &S) -> f64 {
    let df = idx.doc_freq(s);
    if df == 0 {
        return 0.0;
    }
    let with_neighbours = l.map_or(0, |l| idx.pair_doc_freq(l, s)) + r.map_or(0, |r| idx.pair_doc_freq(s, r));
    let raw = with_neighbours as f64 / (2.0 * df as f64);
    (raw.min(1.0) * idf_norm(s, idx)).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContextThresholds {
    /// Minimum bigram support for a context suggestion (θ_abs).
    pub min_support: u64,
    /// Required support relative to the original word's support + 1 (θ_ratio).
    pub min_ratio: f64,
    /// Factor by which a suggestion must out-support an in-dictionary word
    /// before that word is treated as a real-word error (θ_real).
    pub real_word_factor: f64,
}

impl Default for ContextThresholds {
    fn default() -> Self {
        Self { min_support: 2, min_ratio: 10.0, real_word_factor: 50.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContextSuggestion {
    pub suggestion: String,
    pub left_repair: Option<String>,
    pub right_repair: Option<String>,
    /// Bigram support of the suggestion, under the repairs when present.
    pub support: u64,
}

/// `f(l,w) + f(w,r)` in `idx`.
pub fn support(l: Option<&str>, w: &str, r: Option<&str>, idx: &CorpusIndex) -> u64 {
    l.map_or(0, |l| idx.pair_freq(l, w)) + r.map_or(0, |r| idx.pair_freq(w, r))
}

struct Scored {
    id: u32,
    support: u64,
    distance: usize,
    left: Option<u32>,
    right: Option<u32>,
}

fn better(idx: &CorpusIndex, a: &Scored, b: &Scored) -> bool {
    let fa = idx.freq[a.id as usize];
    let fb = idx.freq[b.id as usize];
    (b.support, a.distance, fb, &idx.words[a.id as usize]) < (a.support, b.distance, fa, &idx.words[b.id as usize])
}

/// Neighbour replacements worth trying: only neighbours the collection has
/// (almost) never seen are repaired.
fn neighbour_variants(idx: &CorpusIndex, neighbour: Option<&str>, th: &ContextThresholds) -> Vec<u32> {
    match neighbour {
        Some(n) if idx.freq(n) < th.min_support => idx.near(n, 2).into_iter().map(|(id, _)| id).collect(),
        _ => Vec::new(),
    }
}

/// Corpus-backed suggestion for `e` given its neighbours, in the manner of a
/// web spell checker: the vocabulary word within two edits whose bigram
/// support with `l` and `r` is highest, provided it clears the absolute and
/// relative thresholds. Neighbours unknown to the collection may be
/// replaced by their own best near-miss when that strictly raises support;
/// such repairs are returned alongside the suggestion.
pub fn context_suggest(
    l: Option<&str>,
    e: &str,
    r: Option<&str>,
    idx: &CorpusIndex,
    th: &ContextThresholds,
) -> Option<ContextSuggestion> {
    let candidates = idx.near(e, 2);
    if candidates.is_empty() {
        return None;
    }
    let l_id = l.and_then(|w| idx.id(w));
    let r_id = r.and_then(|w| idx.id(w));
    let left_variants = neighbour_variants(idx, l, th);
    let right_variants = neighbour_variants(idx, r, th);

    let mut plain: Option<Scored> = None;
    let mut repaired: Option<Scored> = None;
    for &(c, distance) in &candidates {
        let base_left = idx.pair_by_id(l_id, Some(c));
        let base_right = idx.pair_by_id(Some(c), r_id);
        let unrepaired = Scored { id: c, support: base_left + base_right, distance, left: None, right: None };

        let mut left = (base_left, None);
        for &v in &left_variants {
            let f = idx.pair_by_id(Some(v), Some(c));
            if f > left.0 {
                left = (f, Some(v));
            }
        }
        let mut right = (base_right, None);
        for &v in &right_variants {
            let f = idx.pair_by_id(Some(c), Some(v));
            if f > right.0 {
                right = (f, Some(v));
            }
        }
        let with_repairs = Scored { id: c, support: left.0 + right.0, distance, left: left.1, right: right.1 };

        if plain.as_ref().is_none_or(|p| better(idx, &unrepaired, p)) {
            plain = Some(unrepaired);
        }
        if repaired.as_ref().is_none_or(|p| better(idx, &with_repairs, p)) {
            repaired = Some(with_repairs);
        }
    }

    let plain = plain?;
    let chosen = match repaired {
        Some(rep) if rep.support > plain.support => rep,
        _ => plain,
    };
    // The word itself gets the same neighbour repairs its rivals did.
    let own_id = idx.id(e);
    let best_left =
        left_variants.iter().map(|&v| idx.pair_by_id(Some(v), own_id)).fold(idx.pair_by_id(l_id, own_id), u64::max);
    let best_right =
        right_variants.iter().map(|&v| idx.pair_by_id(own_id, Some(v))).fold(idx.pair_by_id(own_id, r_id), u64::max);
    let own_support = best_left + best_right;
    if chosen.support < th.min_support || (chosen.support as f64) < th.min_ratio * (own_support as f64 + 1.0) {
        return None;
    }
    let word = |id: u32| idx.words[id as usize].clone();
    Some(ContextSuggestion {
        suggestion: word(chosen.id),
        left_repair: chosen.left.map(word),
        right_repair: chosen.right.map(word),
        support: chosen.support,
    })
}

/// Whether `hit` (the context suggestion for `t`) is strong enough evidence
/// that the dictionary word `t` is a real-word error.
pub fn confirms_real_word_error(
    hit: &ContextSuggestion,
    l: Option<&str>,
    t: &str,
    r: Option<&str>,
    idx: &CorpusIndex,
    th: &ContextThresholds,
) -> bool {
    hit.suggestion != lower(t).as_ref() && hit.support as f64 >= th.real_word_factor * support(l, t, r, idx) as f64
}

/// Flags an in-dictionary word that its neighbours make statistically
/// improbable.
pub fn is_real_word_error(
    l: Option<&str>,
    t: &str,
    r: Option<&str>,
    idx: &CorpusIndex,
    th: &ContextThresholds,
) -> bool {
    context_suggest(l, t, r, idx, th).is_some_and(|hit| confirms_real_word_error(&hit, l, t, r, idx, th))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn index(docs: &[&str], role: CorpusRole) -> CorpusIndex {
        build_index(docs, role)
    }

    #[test]
    fn counts_by_hand() {
        let idx = index(&["a b", "a c"], CorpusRole::Domain);
        assert_eq!(idx.doc_count(), 2);
        assert_eq!(idx.freq("a"), 2);
        assert_eq!(idx.pair_freq("a", "b"), 1);
        assert_eq!(idx.doc_freq("a"), 2);
        assert_eq!(idx.pair_doc_freq("a", "c"), 1);
        assert_eq!(idx.pair_freq("b", "a"), 0);
    }

    #[test]
    fn empty_corpus() {
        let idx = index(&[], CorpusRole::General);
        assert_eq!(idx.doc_count(), 0);
        assert_eq!(idf_norm("a", &idx), 0.0);
        assert_eq!(general_significance(Some("x"), "a", None, &idx), 0.0);
        assert!(context_suggest(Some("sure"), "tha", Some("they"), &idx, &ContextThresholds::default()).is_none());
    }

    #[test]
    fn word_competes_under_the_same_repairs() {
        let mut docs = vec!["i did not"; 30];
        docs.extend(["it did"; 40]);
        let idx = index(&docs, CorpusRole::General);
        let th = ContextThresholds::default();
        // Repairing "dix" to "did" favours "i" just as much as "it".
        assert!(context_suggest(None, "i", Some("dix"), &idx, &th).is_none());
        assert_eq!(context_suggest(None, "ix", Some("dix"), &idx, &th).unwrap().suggestion, "it");
    }

    #[test]
    fn token_input_skips_punctuation() {
        let mut b = IndexBuilder::new(CorpusRole::General);
        b.add_sentences([["Hello", ",", "world", "⟦URL:0⟧", "!"]]);
        let idx = b.finish();
        assert_eq!(idx.vocabulary_size(), 2);
        assert_eq!(idx.pair_freq("hello", "world"), 1);
    }

    #[test]
    fn duplicate_documents_count_twice() {
        let idx = index(&["the order number", "the order number"], CorpusRole::Domain);
        assert_eq!(idx.doc_count(), 2);
        assert_eq!(idx.freq("order"), 2);
        assert_eq!(idx.doc_freq("order"), 2);
        assert_eq!(idx.pair_doc_freq("the", "order"), 2);
    }

    #[test]
    fn punctuation_is_skipped_in_bigrams() {
        let idx = index(&["ok, thanks. Bye now"], CorpusRole::Domain);
        assert_eq!(idx.pair_freq("ok", "thanks"), 1);
        // Sentence boundary breaks the chain.
        assert_eq!(idx.pair_freq("thanks", "bye"), 0);
        assert_eq!(idx.freq("Bye"), 1);
    }

    #[test]
    fn ds_single_suggestion_is_one() {
        let idx = index(&["order"], CorpusRole::Domain);
        let ds = domain_significance(None, "order", None, &["order"], &idx);
        assert!((ds - 1.0).abs() < 1e-12);
        assert_eq!(domain_significance(None, "ghost", None, &["ghost", "order"], &idx), 0.0);
    }

    #[test]
    fn ds_prefers_the_word_the_domain_uses() {
        let idx = index(&["the order number", "the order form"], CorpusRole::Domain);
        let all = ["order", "parader"];
        let order = domain_significance(Some("The"), "order", Some("number"), &all, &idx);
        let parader = domain_significance(Some("The"), "parader", Some("number"), &all, &idx);
        assert_eq!(parader, 0.0);
        assert!(order > parader);
        // raw(order) = 2 + 2 + 1 = 5, the only positive raw count: ratio 1,
        // df = N = 2 so idf_norm = ln 2 / ln 3.
        assert!((order - 2f64.ln() / 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gs_ceiling_and_comparison() {
        let idx = index(&["x s y", "unrelated words"], CorpusRole::General);
        let gs = general_significance(Some("x"), "s", Some("y"), &idx);
        assert!((gs - idf_norm("s", &idx)).abs() < 1e-12);
        assert!((idf_norm("s", &idx) - 3f64.ln() / 3f64.ln()).abs() < 1e-12);

        let general = index(
            &["we cannot change an order", "you cannot change an address", "a charge was made", "the charge is due"],
            CorpusRole::General,
        );
        let change = general_significance(Some("cannot"), "change", Some("an"), &general);
        let charge = general_significance(Some("cannot"), "charge", Some("an"), &general);
        // change: df 2, both pairs in both docs -> raw 1, idf ln3/ln5.
        assert!((change - 3f64.ln() / 5f64.ln()).abs() < 1e-12);
        assert_eq!(charge, 0.0);
        assert!(change > charge);
    }

    fn chat_index() -> CorpusIndex {
        let mut docs = Vec::new();
        for _ in 0..20 {
            docs.push("I am sure that they received it.");
            docs.push("The order number is on the receipt.");
        }
        docs.push("What they said was fine.");
        docs.push("The hat was red.");
        index(&docs, CorpusRole::General)
    }

    #[test]
    fn suggests_with_right_repair() {
        let idx = chat_index();
        let th = ContextThresholds::default();
        let hit = context_suggest(Some("sure"), "tha", Some("tthey"), &idx, &th).unwrap();
        assert_eq!(hit.suggestion, "that");
        assert_eq!(hit.left_repair, None);
        assert_eq!(hit.right_repair.as_deref(), Some("they"));
        assert_eq!(hit.support, 40);
    }

    #[test]
    fn suggests_order() {
        let idx = chat_index();
        let hit = context_suggest(Some("The"), "prder", Some("number"), &idx, &ContextThresholds::default()).unwrap();
        assert_eq!(hit.suggestion, "order");
        assert_eq!((hit.left_repair, hit.right_repair), (None, None));
    }

    #[test]
    fn no_support_no_suggestion() {
        let idx = chat_index();
        let th = ContextThresholds::default();
        assert!(context_suggest(Some("purple"), "zzqx", Some("monkey"), &idx, &th).is_none());
        assert!(context_suggest(None, "tha", None, &idx, &th).is_none());
    }

    #[test]
    fn real_word_errors() {
        let idx = chat_index();
        let th = ContextThresholds::default();
        assert!(is_real_word_error(Some("suret"), "hat", Some("they"), &idx, &th));
        let hit = context_suggest(Some("suret"), "hat", Some("they"), &idx, &th).unwrap();
        assert_eq!(hit.suggestion, "that");
        assert_eq!(hit.left_repair.as_deref(), Some("sure"));
        assert!(!is_real_word_error(Some("sure"), "that", Some("they"), &idx, &th));
        assert!(!is_real_word_error(None, "hat", None, &idx, &th));
    }

    #[test]
    fn save_load_round_trip() {
        let idx = chat_index();
        let text = idx.to_tsv();
        assert!(text.starts_with("#cleantext-corpus-index\t1\nrole\tgeneral\ndocuments\t42\n"));
        let back = CorpusIndex::parse(&text, Path::new("<mem>")).unwrap();
        assert_eq!(back.to_tsv(), text);
        assert_eq!(back.freq("that"), idx.freq("that"));
        assert!(CorpusIndex::parse("garbage", Path::new("<mem>")).is_err());
        assert!(CorpusIndex::parse("#cleantext-corpus-index\t9\n", Path::new("<mem>")).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const VOCAB: &[&str] = &["the", "order", "older", "number", "form", "is"];

        fn docs() -> impl Strategy<Value = Vec<String>> {
            let doc = prop::collection::vec(prop::sample::select(VOCAB), 1..8).prop_map(|w| w.join(" "));
            prop::collection::vec(doc, 0..10)
        }

        fn site() -> impl Strategy<Value = (Option<&'static str>, Option<&'static str>)> {
            (prop::option::of(prop::sample::select(VOCAB)), prop::option::of(prop::sample::select(VOCAB)))
        }

        /// Counts that can be bumped one at a time.
        #[derive(Debug, Clone, Default)]
        struct Counts {
            docs: u64,
            freq: HashMap<String, u64>,
            df: HashMap<String, u64>,
            pairs: HashMap<(String, String), u64>,
            pair_df: HashMap<(String, String), u64>,
        }

        impl CollectionStats for Counts {
            fn doc_count(&self) -> u64 {
                self.docs
            }
            fn freq(&self, w: &str) -> u64 {
                self.freq.get(w).copied().unwrap_or(0)
            }
            fn pair_freq(&self, a: &str, b: &str) -> u64 {
                self.pairs.get(&(a.into(), b.into())).copied().unwrap_or(0)
            }
            fn doc_freq(&self, w: &str) -> u64 {
                self.df.get(w).copied().unwrap_or(0)
            }
            fn pair_doc_freq(&self, a: &str, b: &str) -> u64 {
                self.pair_df.get(&(a.into(), b.into())).copied().unwrap_or(0)
            }
        }

        fn counts() -> impl Strategy<Value = Counts> {
            let word = prop::sample::select(VOCAB).prop_map(String::from);
            (
                1u64..20,
                prop::collection::hash_map(word.clone(), (1u64..30, 1u64..20), 0..6),
                prop::collection::hash_map((word.clone(), word), 0u64..10, 0..10),
            )
                .prop_map(|(docs, unigrams, pairs)| {
                    let mut c = Counts { docs, ..Counts::default() };
                    for (w, (f, df)) in unigrams {
                        c.freq.insert(w.clone(), f);
                        c.df.insert(w, df.min(docs));
                    }
                    for (p, f) in pairs {
                        c.pair_df.insert(p.clone(), f.min(docs));
                        c.pairs.insert(p, f);
                    }
                    c
                })
        }

        proptest! {
            #[test]
            fn significance_in_unit_range(d in docs(), (l, r) in site()) {
                let idx = build_index(&d, CorpusRole::Domain);
                let total: u64 = VOCAB.iter().map(|s| raw_domain_count(l, s, r, &idx)).sum();
                let mut ratio_sum = 0.0;
                for s in VOCAB {
                    let ds = domain_significance(l, s, r, VOCAB, &idx);
                    let gs = general_significance(l, s, r, &idx);
                    prop_assert!((0.0..=1.0).contains(&ds) && (0.0..=1.0).contains(&gs));
                    if total > 0 {
                        ratio_sum += raw_domain_count(l, s, r, &idx) as f64 / total as f64;
                    }
                }
                if total > 0 {
                    prop_assert!((ratio_sum - 1.0).abs() < 1e-12);
                }
            }

            #[test]
            fn significance_grows_with_neighbour_counts(c in counts(), (l, r) in site(), s in prop::sample::select(VOCAB)) {
                let (ds0, gs0) = (domain_significance(l, s, r, VOCAB, &c), general_significance(l, s, r, &c));
                let mut bumped = c.clone();
                if let Some(l) = l {
                    *bumped.pairs.entry((l.into(), s.into())).or_default() += 1;
                    let df2 = bumped.pair_df.entry((l.into(), s.into())).or_default();
                    *df2 = (*df2 + 1).min(c.docs);
                }
                if let Some(r) = r {
                    *bumped.pairs.entry((s.into(), r.into())).or_default() += 1;
                }
                prop_assert!(domain_significance(l, s, r, VOCAB, &bumped) >= ds0);
                prop_assert!(general_significance(l, s, r, &bumped) >= gs0);
            }

            #[test]
            fn duplicating_the_corpus_keeps_the_ratios(d in docs(), (l, r) in site()) {
                // The ratios and ln(1 + N/df) are scale free; the ln(1 + N)
                // normaliser is not, so whole significances are compared
                // with the offset divided out.
                let once = build_index(&d, CorpusRole::General);
                let twice = build_index(&[d.clone(), d].concat(), CorpusRole::General);
                let idf_raw = |s: &str, idx: &CorpusIndex| {
                    let df = idx.doc_freq(s);
                    (df > 0).then(|| (1.0 + idx.doc_count() as f64 / df as f64).ln())
                };
                for s in VOCAB {
                    prop_assert_eq!(idf_raw(s, &once), idf_raw(s, &twice));
                    let (n1, n2) = (idf_norm(s, &once), idf_norm(s, &twice));
                    if n1 == 0.0 {
                        prop_assert_eq!(n2, 0.0);
                        continue;
                    }
                    let (a, b) = (domain_significance(l, s, r, VOCAB, &once) / n1, domain_significance(l, s, r, VOCAB, &twice) / n2);
                    prop_assert!((a - b).abs() < 1e-12);
                    let (a, b) = (general_significance(l, s, r, &once) / n1, general_significance(l, s, r, &twice) / n2);
                    prop_assert!((a - b).abs() < 1e-12);
                }
            }

            #[test]
            fn context_suggest_is_deterministic(d in docs(), (l, r) in site(), e in "[a-z]{1,6}") {
                let idx = build_index(&d, CorpusRole::General);
                let th = ContextThresholds::default();
                prop_assert_eq!(context_suggest(l, &e, r, &idx, &th), context_suggest(l, &e, r, &build_index(&d, CorpusRole::General), &th));
            }
        }
    }
}
