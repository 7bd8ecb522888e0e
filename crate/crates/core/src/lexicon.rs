//! Word, abbreviation and spelling dictionaries plus the legacy history list.
//!
//! Every dictionary is a UTF-8 tab-separated file. Keys are case-insensitive
//! and stored lowercased; saving writes keys in sorted order so that
//! save-then-load-then-save is byte-identical.
//!
//! | dictionary   | line format                                   |
//! |--------------|-----------------------------------------------|
//! | words        | `word<TAB>freq[<TAB>P]` (`P` = proper noun)   |
//! | abbreviations| `abbrev<TAB>expansion1\|expansion2\|...`      |
//! | spelling     | `error<TAB>suggestion<TAB>auto\|user`         |
//! | history      | `error<TAB>replacement`                       |
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

fn key(word: &str) -> String {
    word.to_lowercase()
}

fn read_lines(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| Error::parse(path, 0, format!("not valid UTF-8: {e}")))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordEntry {
    /// Canonical surface form used for case restoration.
    pub surface: String,
    pub freq: u64,
    pub proper: bool,
}

/// Known words with corpus frequencies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordDict {
    entries: BTreeMap<String, WordEntry>,
}

impl WordDict {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `word`. Re-inserting a key sums frequencies; a common-noun
    /// entry wins over a proper-noun entry for the same key.
    pub fn insert(&mut self, word: &str, freq: u64, proper: bool) {
        let k = key(word);
        if k.is_empty() {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(entry) => {
                entry.freq = entry.freq.saturating_add(freq);
                if entry.proper && !proper {
                    entry.proper = false;
                    entry.surface = k;
                }
            }
            None => {
                let surface = if proper { word.to_string() } else { k.clone() };
                self.entries.insert(k, WordEntry { surface, freq, proper });
            }
        }
    }

    pub fn get(&self, word: &str) -> Option<&WordEntry> {
        self.entries.get(&key(word))
    }

    /// Case-insensitive membership.
    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(&key(word))
    }

    /// Whether the spell checker accepts `token` as written. Common words
    /// match in any case; proper nouns must appear in their canonical form
    /// (or fully upper-cased), so `jones` is rejected when only `Jones` is
    /// known.
    pub fn accepts(&self, token: &str) -> bool {
        match self.get(token) {
            None => false,
            Some(entry) if !entry.proper => true,
            Some(entry) => {
                token == entry.surface || (token.chars().any(char::is_uppercase) && token == token.to_uppercase())
            }
        }
    }

    pub fn canonical(&self, word: &str) -> Option<&str> {
        self.get(word).map(|e| e.surface.as_str())
    }

    pub fn freq(&self, word: &str) -> u64 {
        self.get(word).map_or(0, |e| e.freq)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in key order.
    pub fn iter(&self) -> impl Iterator<Item = &WordEntry> {
        self.entries.values()
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut dict = Self::new();
        for (line_no, line) in data_lines(text) {
            let mut fields = line.split('\t');
            let word = fields.next().unwrap_or_default().trim();
            if word.is_empty() {
                return Err(Error::parse(origin, line_no, "empty word"));
            }
            let freq = match fields.next().map(str::trim) {
                None | Some("") => 1,
                Some(f) => {
                    f.parse::<u64>().map_err(|_| Error::parse(origin, line_no, format!("bad frequency {f:?}")))?
                }
            };
            let proper = match fields.next().map(str::trim) {
                None | Some("") => false,
                Some("P") => true,
                Some(other) => {
                    return Err(Error::parse(origin, line_no, format!("unknown flag {other:?}")));
                }
            };
            dict.insert(word, freq, proper);
        }
        Ok(dict)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_lines(path)?, path)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for entry in self.entries.values() {
            let _ = write!(out, "{}\t{}", entry.surface, entry.freq);
            if entry.proper {
                out.push_str("\tP");
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_tsv())
    }
}

/// Source of abbreviation expansions. Only the local dictionary implements
/// it; a remote lookup service would plug in here.
pub trait AbbreviationSource {
    fn expansions(&self, abbreviation: &str) -> Vec<String>;
}

/// Abbreviation → ordered, duplicate-free expansions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbbreviationDict {
    entries: BTreeMap<String, Vec<String>>,
}

impl AbbreviationDict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, abbreviation: &str, expansion: &str) {
        let expansion = expansion.trim();
        let k = key(abbreviation.trim());
        if k.is_empty() || expansion.is_empty() {
            return;
        }
        let list = self.entries.entry(k).or_default();
        if !list.iter().any(|e| e == expansion) {
            list.push(expansion.to_string());
        }
    }

    pub fn lookup(&self, abbreviation: &str) -> &[String] {
        self.entries.get(&key(abbreviation)).map_or(&[], Vec::as_slice)
    }

    pub fn contains_key(&self, word: &str) -> bool {
        self.entries.contains_key(&key(word))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut dict = Self::new();
        for (line_no, line) in data_lines(text) {
            let Some((abbrev, expansions)) = line.split_once('\t') else {
                return Err(Error::parse(origin, line_no, "expected abbrev<TAB>expansions"));
            };
            let before = dict.lookup(abbrev).len();
            for expansion in expansions.split('|') {
                dict.insert(abbrev, expansion);
            }
            if dict.lookup(abbrev).len() == before && before == 0 {
                return Err(Error::parse(origin, line_no, "no expansions"));
            }
        }
        Ok(dict)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_lines(path)?, path)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (abbrev, expansions) in &self.entries {
            let _ = writeln!(out, "{abbrev}\t{}", expansions.join("|"));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_tsv())
    }
}

impl AbbreviationSource for AbbreviationDict {
    fn expansions(&self, abbreviation: &str) -> Vec<String> {
        self.lookup(abbreviation).to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntrySource {
    Auto,
    User,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpellingEntry {
    pub suggestion: String,
    pub source: EntrySource,
}

/// Error word → the single suggestion backed by the context suggester
/// (`auto`) or entered by a user (`user`). User entries are never replaced by
/// auto entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpellingDict {
    entries: BTreeMap<String, SpellingEntry>,
}

impl SpellingDict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup(&self, error: &str) -> Option<&str> {
        self.entries.get(&key(error)).map(|e| e.suggestion.as_str())
    }

    pub fn entry(&self, error: &str) -> Option<&SpellingEntry> {
        self.entries.get(&key(error))
    }

    /// Stores `error → suggestion` as an auto entry unless a user entry
    /// exists. Returns whether the dictionary changed.
    pub fn record_auto(&mut self, error: &str, suggestion: &str) -> bool {
        if suggestion.is_empty() {
            return false;
        }
        let k = key(error);
        match self.entries.get(&k) {
            Some(e) if e.source == EntrySource::User => false,
            Some(e) if e.suggestion == suggestion => false,
            _ => {
                self.entries.insert(k, SpellingEntry { suggestion: suggestion.to_string(), source: EntrySource::Auto });
                true
            }
        }
    }

    /// Stores a user entry, replacing whatever was there.
    pub fn set_user(&mut self, error: &str, suggestion: &str) {
        if suggestion.is_empty() {
            return;
        }
        self.entries
            .insert(key(error), SpellingEntry { suggestion: suggestion.to_string(), source: EntrySource::User });
    }

    /// Whether `error` maps to `suggestion` (case-insensitive on both sides).
    pub fn maps(&self, error: &str, suggestion: &str) -> bool {
        self.lookup(error).is_some_and(|s| s.to_lowercase() == suggestion.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut dict = Self::new();
        for (line_no, line) in data_lines(text) {
            let fields: Vec<&str> = line.split('\t').collect();
            let [error, suggestion, source] = fields.as_slice() else {
                return Err(Error::parse(origin, line_no, "expected error<TAB>suggestion<TAB>auto|user"));
            };
            if suggestion.is_empty() {
                return Err(Error::parse(origin, line_no, "empty suggestion"));
            }
            match source.trim() {
                "auto" => {
                    dict.record_auto(error, suggestion);
                }
                "user" => dict.set_user(error, suggestion),
                other => return Err(Error::parse(origin, line_no, format!("unknown source {other:?}"))),
            }
        }
        Ok(dict)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_lines(path)?, path)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (error, entry) in &self.entries {
            let source = match entry.source {
                EntrySource::Auto => "auto",
                EntrySource::User => "user",
            };
            let _ = writeln!(out, "{error}\t{}\t{source}", entry.suggestion);
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_tsv())
    }
}

/// Previously chosen replacements; consulted only by the basic scorer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrectionHistory {
    entries: BTreeMap<String, String>,
}

impl CorrectionHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, error: &str, replacement: &str) {
        self.entries.insert(key(error), replacement.to_string());
    }

    pub fn get(&self, error: &str) -> Option<&str> {
        self.entries.get(&key(error)).map(String::as_str)
    }

    /// 1 iff `error` was previously corrected with `suggestion` (compared
    /// case-insensitively).
    pub fn reuse(&self, error: &str, suggestion: &str) -> u8 {
        u8::from(self.get(error).is_some_and(|r| key(r) == key(suggestion)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut history = Self::new();
        for (line_no, line) in data_lines(text) {
            let Some((error, replacement)) = line.split_once('\t') else {
                return Err(Error::parse(origin, line_no, "expected error<TAB>replacement"));
            };
            history.record(error, replacement);
        }
        Ok(history)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_lines(path)?, path)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (error, replacement) in &self.entries {
            let _ = writeln!(out, "{error}\t{replacement}");
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, &self.to_tsv())
    }
}

/// All dictionaries used during a cleaning run.
#[derive(Debug, Clone, Default)]
pub struct Lexicons {
    pub words: WordDict,
    pub abbreviations: AbbreviationDict,
    pub spelling: SpellingDict,
    pub history: CorrectionHistory,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn origin() -> &'static Path {
        Path::new("<test>")
    }

    fn sample_abbrevs() -> AbbreviationDict {
        AbbreviationDict::parse("az\tArizona\nhp\tHewlett-Packard\nasap\tas soon as possible\n", origin()).unwrap()
    }

    #[test]
    fn abbreviation_lookup() {
        let d = sample_abbrevs();
        assert_eq!(d.lookup("az"), ["Arizona"]);
        assert_eq!(d.lookup("AZ"), ["Arizona"]);
        assert_eq!(d.lookup("hp"), ["Hewlett-Packard"]);
        assert!(d.lookup("xyzzy").is_empty());
        assert!(!d.contains_key("Arizona"));
    }

    #[test]
    fn abbreviation_expansions_keep_order_without_duplicates() {
        let d = AbbreviationDict::parse(
            "pc\tpersonal computer|politically correct\nPC\tpersonal computer|police constable\n",
            origin(),
        )
        .unwrap();
        assert_eq!(d.lookup("pc"), ["personal computer", "politically correct", "police constable"]);
    }

    #[test]
    fn spelling_auto_and_user() {
        let mut d = SpellingDict::new();
        assert_eq!(d.lookup("prder"), None);
        assert!(d.record_auto("prder", "order"));
        assert_eq!(d.lookup("prder"), Some("order"));
        assert!(d.record_auto("tha", "that"));
        assert_eq!(d.len(), 2);
        assert!(!d.record_auto("tha", "that"));
        assert_eq!(d.len(), 2);

        d.set_user("teh", "the");
        assert!(!d.record_auto("teh", "ten"));
        assert_eq!(d.lookup("teh"), Some("the"));
        assert_eq!(d.entry("teh").unwrap().source, EntrySource::User);
    }

    #[test]
    fn record_auto_on_empty_dict() {
        let mut d = SpellingDict::new();
        d.record_auto("tha", "that");
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn history_reuse() {
        let mut h = CorrectionHistory::new();
        assert_eq!(h.reuse("chage", "change"), 0);
        h.record("chage", "charge");
        assert_eq!(h.reuse("chage", "charge"), 1);
        assert_eq!(h.reuse("chage", "change"), 0);
    }

    #[test]
    fn word_dict_proper_nouns() {
        let d = WordDict::parse("Jones\t12\tP\nchange\t40\nthe\nNATO\t3\tP\n", origin()).unwrap();
        assert_eq!(d.freq("the"), 1);
        assert!(d.accepts("Jones"));
        assert!(d.accepts("JONES"));
        assert!(!d.accepts("jones"));
        assert!(d.accepts("Change"));
        assert!(d.accepts("NATO"));
        assert!(!d.accepts("nato"));
        assert_eq!(d.canonical("jones"), Some("Jones"));
        assert!(!d.accepts("chage"));
    }

    #[test]
    fn common_entry_wins_over_proper() {
        let mut d = WordDict::new();
        d.insert("Polish", 2, true);
        d.insert("polish", 3, false);
        assert!(d.accepts("polish"));
        assert_eq!(d.get("POLISH").unwrap().freq, 5);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = WordDict::parse("ok\t1\nbad\tx\n", origin()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(SpellingDict::parse("a\tb\tmaybe\n", origin()).is_err());
        assert!(AbbreviationDict::parse("noexp\n", origin()).is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = WordDict::load(Path::new("/definitely/not/here.tsv")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    fn word() -> impl Strategy<Value = String> {
        "[a-zA-Z]{1,8}"
    }

    proptest! {
        #[test]
        fn word_dict_save_load_is_stable(entries in prop::collection::vec((word(), 0u64..1000, any::<bool>()), 0..30)) {
            let mut d = WordDict::new();
            for (w, f, p) in &entries {
                d.insert(w, *f, *p);
            }
            let first = d.to_tsv();
            let reloaded = WordDict::parse(&first, origin()).unwrap();
            prop_assert_eq!(reloaded.to_tsv(), first);
            prop_assert_eq!(reloaded, d);
        }

        #[test]
        fn spelling_save_load_is_stable(ops in prop::collection::vec((word(), word(), any::<bool>()), 0..30)) {
            let mut d = SpellingDict::new();
            for (e, s, user) in &ops {
                if *user { d.set_user(e, s) } else { d.record_auto(e, s); }
            }
            let first = d.to_tsv();
            let reloaded = SpellingDict::parse(&first, origin()).unwrap();
            prop_assert_eq!(reloaded.to_tsv(), first);
        }

        #[test]
        fn abbreviation_save_load_is_stable(entries in prop::collection::vec((word(), "[a-z ]{1,12}"), 0..30)) {
            let mut d = AbbreviationDict::new();
            for (a, e) in &entries {
                d.insert(a, e);
            }
            let first = d.to_tsv();
            let reloaded = AbbreviationDict::parse(&first, origin()).unwrap();
            prop_assert_eq!(reloaded.to_tsv(), first);
        }

        #[test]
        fn user_entries_survive_any_interleaving(ops in prop::collection::vec((0usize..3, word(), any::<bool>()), 1..40)) {
            let errors = ["prder", "tha", "chage"];
            let mut d = SpellingDict::new();
            let mut user: BTreeMap<&str, String> = BTreeMap::new();
            for (i, s, is_user) in &ops {
                if *is_user {
                    d.set_user(errors[*i], s);
                    user.insert(errors[*i], s.clone());
                } else {
                    d.record_auto(errors[*i], s);
                }
            }
            for (e, s) in &user {
                prop_assert_eq!(d.lookup(e), Some(s.as_str()));
            }
            prop_assert!(d.len() <= errors.len());
        }

        #[test]
        fn abbreviation_lookup_ignores_case(a in word()) {
            let d = sample_abbrevs();
            prop_assert_eq!(d.lookup(&a), d.lookup(&a.to_uppercase()));
        }
    }
}
