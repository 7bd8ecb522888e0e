//! Seeded error injection with gold alignment.

use std::collections::HashMap;
use std::ops::Range;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    Insertion,
    Deletion,
    Substitution,
    Transposition,
    Split,
    Merge,
    Case,
    Abbreviation,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 8] = [
        ErrorClass::Insertion,
        ErrorClass::Deletion,
        ErrorClass::Substitution,
        ErrorClass::Transposition,
        ErrorClass::Split,
        ErrorClass::Merge,
        ErrorClass::Case,
        ErrorClass::Abbreviation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorClass::Insertion => "insertion",
            ErrorClass::Deletion => "deletion",
            ErrorClass::Substitution => "substitution",
            ErrorClass::Transposition => "transposition",
            ErrorClass::Split => "split",
            ErrorClass::Merge => "merge",
            ErrorClass::Case => "case",
            ErrorClass::Abbreviation => "abbreviation",
        }
    }
}

/// Per-token injection probabilities. At most one error is injected per
/// token; the classes are tried as consecutive slices of one uniform draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErrorModel {
    pub insertion: f64,
    pub deletion: f64,
    pub substitution: f64,
    pub transposition: f64,
    /// Splitting a word in two or merging it with the next word.
    pub split_merge: f64,
    /// Lower-casing a proper noun.
    pub case: f64,
    /// Replacing a word or phrase with a known abbreviation.
    pub abbreviation: f64,
    pub seed: u64,
}

impl Default for ErrorModel {
    fn default() -> Self {
        Self {
            insertion: 0.02,
            deletion: 0.02,
            substitution: 0.03,
            transposition: 0.02,
            split_merge: 0.0,
            case: 0.05,
            abbreviation: 0.03,
            seed: 7,
        }
    }
}

impl ErrorModel {
    pub fn none(seed: u64) -> Self {
        Self {
            insertion: 0.0,
            deletion: 0.0,
            substitution: 0.0,
            transposition: 0.0,
            split_merge: 0.0,
            case: 0.0,
            abbreviation: 0.0,
            seed,
        }
    }

    fn rate(&self, class: ErrorClass) -> f64 {
        match class {
            ErrorClass::Insertion => self.insertion,
            ErrorClass::Deletion => self.deletion,
            ErrorClass::Substitution => self.substitution,
            ErrorClass::Transposition => self.transposition,
            ErrorClass::Split | ErrorClass::Merge => self.split_merge / 2.0,
            ErrorClass::Case => self.case,
            ErrorClass::Abbreviation => self.abbreviation,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let rates = ErrorClass::ALL.map(|c| self.rate(c));
        if rates.iter().any(|r| !(0.0..=1.0).contains(r)) || rates.iter().sum::<f64>() > 1.0 {
            return Err(crate::Error::Config("error rates must lie in [0, 1] and sum to at most 1".into()));
        }
        Ok(())
    }
}

/// One injected error. `tokens` indexes the dirty sentence; `original` is
/// the clean text those tokens replace (several words for a phrase
/// abbreviation or a merge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldError {
    pub session: usize,
    pub sentence: usize,
    pub tokens: Range<usize>,
    pub original: String,
    pub error: String,
    pub class: ErrorClass,
}

/// What the injector needs to know about the language.
pub struct InjectionLexicon {
    /// Expansion (one or more words) → abbreviations that stand for it.
    pub abbreviations: HashMap<String, Vec<String>>,
    pub proper_nouns: Vec<String>,
}

impl InjectionLexicon {
    pub fn new(abbreviations: &[(&str, &str)], proper_nouns: &[&str]) -> Self {
        let mut map: HashMap<String, Vec<String>> = HashMap::new();
        for (short, long) in abbreviations {
            map.entry(long.to_string()).or_default().push(short.to_string());
        }
        Self { abbreviations: map, proper_nouns: proper_nouns.iter().map(|s| s.to_string()).collect() }
    }

    fn longest_phrase(&self) -> usize {
        self.abbreviations.keys().map(|k| k.split(' ').count()).max().unwrap_or(1)
    }
}

const KEYBOARD: [&str; 3] = ["qwertyuiop", "asdfghjkl", "zxcvbnm"];

fn keyboard_neighbour<R: Rng>(c: char, rng: &mut R) -> char {
    let lower = c.to_ascii_lowercase();
    let mut near = Vec::new();
    for (r, row) in KEYBOARD.iter().enumerate() {
        if let Some(col) = row.find(lower) {
            for (dr, dc) in [(0i32, -1i32), (0, 1), (-1, 0), (-1, 1), (1, -1), (1, 0)] {
                let (nr, nc) = (r as i32 + dr, col as i32 + dc);
                if nr < 0 || nr >= KEYBOARD.len() as i32 || nc < 0 {
                    continue;
                }
                if let Some(k) = KEYBOARD[nr as usize].chars().nth(nc as usize) {
                    near.push(k);
                }
            }
        }
    }
    if near.is_empty() {
        return (b'a' + rng.gen_range(0..26)) as char;
    }
    near[rng.gen_range(0..near.len())]
}

fn is_plain_word(w: &str) -> bool {
    w.chars().count() >= 2 && w.chars().all(|c| c.is_ascii_alphabetic())
}

/// Applies one character-level error to `word`. The first letter keeps its
/// case. Returns `None` when the class does not apply or the result equals
/// the input.
pub fn corrupt<R: Rng>(word: &str, class: ErrorClass, rng: &mut R) -> Option<String> {
    if !is_plain_word(word) {
        return None;
    }
    let mut chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let first_upper = chars[0].is_uppercase();
    match class {
        ErrorClass::Insertion => {
            let at = rng.gen_range(1..=n);
            let c = keyboard_neighbour(chars[at - 1], rng);
            chars.insert(at, c);
        }
        ErrorClass::Deletion => {
            if n < 3 {
                return None;
            }
            chars.remove(rng.gen_range(0..n));
        }
        ErrorClass::Substitution => {
            let at = rng.gen_range(0..n);
            chars[at] = keyboard_neighbour(chars[at], rng);
        }
        ErrorClass::Transposition => {
            let at = rng.gen_range(0..n - 1);
            chars.swap(at, at + 1);
        }
        _ => return None,
    }
    if let Some(first) = chars.first_mut() {
        *first = if first_upper { first.to_ascii_uppercase() } else { first.to_ascii_lowercase() };
    }
    let out: String = chars.into_iter().collect();
    (out != word).then_some(out)
}

/// Injects errors into clean sessions. Returns the dirty sessions and the
/// gold records, ordered by position.
pub fn inject_errors(
    clean: &[Vec<Vec<String>>],
    model: &ErrorModel,
    lexicon: &InjectionLexicon,
) -> (Vec<Vec<Vec<String>>>, Vec<GoldError>) {
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    let longest = lexicon.longest_phrase();
    let mut dirty_sessions = Vec::with_capacity(clean.len());
    let mut gold = Vec::new();

    for (si, session) in clean.iter().enumerate() {
        let mut dirty_session = Vec::with_capacity(session.len());
        for (ti, sentence) in session.iter().enumerate() {
            let mut dirty: Vec<String> = Vec::with_capacity(sentence.len());
            let mut k = 0;
            while k < sentence.len() {
                let word = &sentence[k];
                let u: f64 = rng.gen();
                let mut cum = 0.0;
                let mut injected = false;
                for class in ErrorClass::ALL {
                    let rate = model.rate(class);
                    if rate <= 0.0 {
                        continue;
                    }
                    let lo = cum;
                    cum += rate;
                    if !(lo..cum).contains(&u) {
                        continue;
                    }
                    let start = dirty.len();
                    let mut record = |dirty: &mut Vec<String>,
                                      pieces: Vec<String>,
                                      original: String,
                                      consumed: usize| {
                        let error = pieces.join(" ");
                        let end = start + pieces.len();
                        dirty.extend(pieces);
                        gold.push(GoldError { session: si, sentence: ti, tokens: start..end, original, error, class });
                        consumed
                    };
                    let consumed = match class {
                        ErrorClass::Abbreviation => (1..=longest.min(sentence.len() - k)).rev().find_map(|len| {
                            let phrase = sentence[k..k + len].join(" ");
                            let shorts = lexicon.abbreviations.get(&phrase)?;
                            let short = shorts[rng.gen_range(0..shorts.len())].clone();
                            Some(record(&mut dirty, vec![short], phrase, len))
                        }),
                        ErrorClass::Case => (lexicon.proper_nouns.iter().any(|p| p == word)
                            && word.chars().any(char::is_uppercase))
                        .then(|| record(&mut dirty, vec![word.to_lowercase()], word.clone(), 1)),
                        ErrorClass::Split => (is_plain_word(word) && word.len() >= 4).then(|| {
                            let at = rng.gen_range(2..word.len() - 1);
                            let pieces = vec![word[..at].to_string(), word[at..].to_string()];
                            record(&mut dirty, pieces, word.clone(), 1)
                        }),
                        ErrorClass::Merge => {
                            sentence.get(k + 1).filter(|next| is_plain_word(word) && is_plain_word(next)).map(|next| {
                                let merged = format!("{word}{next}");
                                record(&mut dirty, vec![merged], format!("{word} {next}"), 2)
                            })
                        }
                        _ => corrupt(word, class, &mut rng).map(|bad| record(&mut dirty, vec![bad], word.clone(), 1)),
                    };
                    if let Some(consumed) = consumed {
                        k += consumed;
                        injected = true;
                    }
                    break;
                }
                if !injected {
                    dirty.push(word.clone());
                    k += 1;
                }
            }
            dirty_session.push(dirty);
        }
        dirty_sessions.push(dirty_session);
    }
    (dirty_sessions, gold)
}
