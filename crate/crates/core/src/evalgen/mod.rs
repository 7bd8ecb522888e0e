//! Synthetic evaluation: generate chats, inject errors with gold
//! alignment, clean them in each mode and score the result.
//!
//! Seeded collections come out of one chat grammar. The test chats are
//! corrupted by [`inject_errors`] and, dirty as they are, also serve as
//! the domain collection. More chats mixed with everyday prose stand in
//! for the general collection.

mod corpus;
mod inject;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::context::{CollectionStats, ContextThresholds, CorpusIndex, CorpusRole, IndexBuilder};
use crate::lexicon::{CorrectionHistory, Lexicons, SpellingDict};
use crate::pipeline::Cleaner;
use crate::scoring::Mode;
use crate::suggest::DEFAULT_SUGGESTION_LIMIT;

pub use corpus::{
    build_abbreviations, build_word_dict, generate_generic_document, generate_session, generate_sessions, Session,
};
pub use inject::{corrupt, inject_errors, ErrorClass, ErrorModel, GoldError, InjectionLexicon};

/// Sizes and seed of a synthetic suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub test_sessions: usize,
    /// Extra clean chats added to the domain collection.
    pub domain_sessions: usize,
    pub general_sessions: usize,
    pub general_prose_documents: usize,
    pub errors: ErrorModel,
    pub thresholds: ContextThresholds,
    pub limit: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::standard(7)
    }
}

impl SuiteConfig {
    /// The standard suite for `seed`.
    pub fn standard(seed: u64) -> Self {
        Self {
            seed,
            test_sessions: 150,
            domain_sessions: 0,
            general_sessions: 600,
            general_prose_documents: 600,
            errors: ErrorModel { seed, ..ErrorModel::default() },
            thresholds: ContextThresholds::default(),
            limit: DEFAULT_SUGGESTION_LIMIT,
        }
    }
}

/// Everything needed to evaluate: clean and dirty test sessions, gold
/// errors, dictionaries and both collections.
pub struct Suite {
    pub config: SuiteConfig,
    pub clean: Vec<Session>,
    pub dirty: Vec<Session>,
    pub gold: Vec<GoldError>,
    pub lexicons: Lexicons,
    pub domain: CorpusIndex,
    pub general: CorpusIndex,
}

fn stream(seed: u64, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(salt);
    rng
}

pub fn build_suite(config: SuiteConfig) -> crate::Result<Suite> {
    config.errors.validate()?;
    let clean = generate_sessions(&mut stream(config.seed, 1), config.test_sessions);

    let mut general = IndexBuilder::new(CorpusRole::General);
    for session in generate_sessions(&mut stream(config.seed, 3), config.general_sessions) {
        general.add_sentences(session);
    }
    let mut prose_rng = stream(config.seed, 4);
    for _ in 0..config.general_prose_documents {
        general.add_sentences(generate_generic_document(&mut prose_rng));
    }
    let general = general.finish();

    let lexicons = Lexicons {
        words: build_word_dict(&|w| general.freq(w)),
        abbreviations: build_abbreviations(),
        spelling: SpellingDict::new(),
        history: CorrectionHistory::new(),
    };
    let injection = InjectionLexicon::new(corpus::ABBREVIATIONS, &corpus::proper_nouns());
    let (dirty, gold) = inject_errors(&clean, &config.errors, &injection);

    // The chats being cleaned are themselves the domain collection,
    // optionally topped up with further chats from the same source.
    let mut domain = IndexBuilder::new(CorpusRole::Domain);
    for session in &dirty {
        domain.add_sentences(session);
    }
    for session in generate_sessions(&mut stream(config.seed, 2), config.domain_sessions) {
        domain.add_sentences(session);
    }
    let domain = domain.finish();
    Ok(Suite { config, clean, dirty, gold, lexicons, domain, general })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CauseCounts {
    /// The gold word was never offered (including errors not flagged).
    pub absent_from_suggestions: usize,
    /// Offered, but a neighbouring word also carried an error.
    pub bad_neighbours: usize,
    pub other: usize,
}

impl CauseCounts {
    pub fn total(&self) -> usize {
        self.absent_from_suggestions + self.bad_neighbours + self.other
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeResult {
    pub mode: Mode,
    pub gold_errors: usize,
    pub correct: usize,
    pub wrong: usize,
    /// correct / gold errors.
    pub accuracy: f64,
    pub flagged: usize,
    pub flagged_correct: usize,
    /// Flagged tokens whose output matches the clean text, over all
    /// flagged tokens.
    pub flagged_accuracy: f64,
    pub causes: CauseCounts,
    pub by_class: BTreeMap<ErrorClass, (usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    pub seed: u64,
    pub sessions: usize,
    pub sentences: usize,
    pub tokens: usize,
    pub gold_errors: usize,
    pub modes: Vec<ModeResult>,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        1.0
    } else {
        a as f64 / b as f64
    }
}

fn word_positions(tokens: &[String]) -> Vec<usize> {
    (0..tokens.len()).filter(|&p| tokens[p].chars().any(char::is_alphanumeric)).collect()
}

/// Cleans the dirty suite in `mode` with fresh spelling dictionary and
/// history, and scores every gold error.
pub fn evaluate(suite: &Suite, mode: Mode) -> ModeResult {
    let cleaner = Cleaner::new(mode, suite.lexicons.clone(), Some(suite.domain.clone()), Some(suite.general.clone()))
        .with_thresholds(suite.config.thresholds)
        .with_limit(suite.config.limit);

    let mut by_sentence: BTreeMap<(usize, usize), Vec<&GoldError>> = BTreeMap::new();
    for g in &suite.gold {
        by_sentence.entry((g.session, g.sentence)).or_default().push(g);
    }

    let mut result = ModeResult {
        mode,
        gold_errors: suite.gold.len(),
        correct: 0,
        wrong: 0,
        accuracy: 0.0,
        flagged: 0,
        flagged_correct: 0,
        flagged_accuracy: 0.0,
        causes: CauseCounts::default(),
        by_class: BTreeMap::new(),
    };

    for (si, session) in suite.dirty.iter().enumerate() {
        for (ti, dirty) in session.iter().enumerate() {
            let outcome = cleaner.clean_tokens(dirty, ti);
            let golds = by_sentence.get(&(si, ti)).map(Vec::as_slice).unwrap_or(&[]);
            let positions = word_positions(dirty);

            for c in &outcome.corrections {
                result.flagged += 1;
                let expected = match golds.iter().find(|g| g.tokens.start == c.position) {
                    Some(g) => g.original.clone(),
                    None => {
                        // Map the dirty position back to the clean token.
                        let shift: isize = golds
                            .iter()
                            .filter(|g| g.tokens.end <= c.position)
                            .map(|g| g.original.split(' ').count() as isize - g.tokens.len() as isize)
                            .sum();
                        let clean_pos = (c.position as isize + shift) as usize;
                        suite.clean[si][ti].get(clean_pos).cloned().unwrap_or_default()
                    }
                };
                if outcome.tokens[c.position] == expected {
                    result.flagged_correct += 1;
                }
            }

            for g in golds {
                let output = outcome.tokens[g.tokens.clone()].join(" ");
                let entry = result.by_class.entry(g.class).or_insert((0, 0));
                entry.1 += 1;
                if output == g.original {
                    result.correct += 1;
                    entry.0 += 1;
                    continue;
                }
                result.wrong += 1;
                let offered = outcome
                    .corrections
                    .iter()
                    .find(|c| c.position == g.tokens.start)
                    .is_some_and(|c| c.suggests(&g.original));
                let k = positions.iter().position(|&p| p == g.tokens.start);
                let adjacent = |p: Option<usize>| p.is_some_and(|p| golds.iter().any(|o| o.tokens.contains(&p)));
                let left = k.and_then(|k| k.checked_sub(1)).map(|k| positions[k]);
                let right = positions.iter().find(|&&p| p >= g.tokens.end).copied();
                if !offered {
                    result.causes.absent_from_suggestions += 1;
                } else if adjacent(left) || adjacent(right) {
                    result.causes.bad_neighbours += 1;
                } else {
                    result.causes.other += 1;
                }
            }
        }
    }
    result.accuracy = ratio(result.correct, result.gold_errors);
    result.flagged_accuracy = ratio(result.flagged_correct, result.flagged);
    result
}

/// Runs all three modes.
pub fn run(config: SuiteConfig) -> crate::Result<EvalResult> {
    let suite = build_suite(config)?;
    Ok(run_suite(&suite))
}

pub fn run_suite(suite: &Suite) -> EvalResult {
    EvalResult {
        seed: suite.config.seed,
        sessions: suite.dirty.len(),
        sentences: suite.dirty.iter().map(Vec::len).sum(),
        tokens: suite.dirty.iter().flatten().map(|s| word_positions(s).len()).sum(),
        gold_errors: suite.gold.len(),
        modes: Mode::ALL.iter().map(|&m| evaluate(suite, m)).collect(),
    }
}

impl EvalResult {
    pub fn mode(&self, mode: Mode) -> Option<&ModeResult> {
        self.modes.iter().find(|m| m.mode == mode)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serialises")
    }

    /// Plain-text tables: accuracy per mode, causes of wrong replacements
    /// and accuracy per error class.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed {}  sessions {}  sentences {}  word tokens {}  gold errors {}",
            self.seed, self.sessions, self.sentences, self.tokens, self.gold_errors
        );
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<10} {:>8} {:>8} {:>10} {:>8} {:>10}",
            "mode", "correct", "wrong", "accuracy", "flagged", "flag-acc"
        );
        for m in &self.modes {
            let _ = writeln!(
                out,
                "{:<10} {:>8} {:>8} {:>9.2}% {:>8} {:>9.2}%",
                m.mode.as_str(),
                m.correct,
                m.wrong,
                100.0 * m.accuracy,
                m.flagged,
                100.0 * m.flagged_accuracy
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<10} {:>8} {:>14} {:>8}", "mode", "absent", "bad-neighbours", "other");
        for m in &self.modes {
            let c = &m.causes;
            let _ = writeln!(
                out,
                "{:<10} {:>8} {:>14} {:>8}",
                m.mode.as_str(),
                c.absent_from_suggestions,
                c.bad_neighbours,
                c.other
            );
        }
        let _ = writeln!(out);
        let _ = write!(out, "{:<14}", "class");
        for m in &self.modes {
            let _ = write!(out, " {:>12}", m.mode.as_str());
        }
        let _ = writeln!(out);
        for class in ErrorClass::ALL {
            let Some(total) = self.modes.first().and_then(|m| m.by_class.get(&class)).map(|e| e.1) else {
                continue;
            };
            let _ = write!(out, "{:<14}", class.as_str());
            for m in &self.modes {
                let (ok, _) = m.by_class.get(&class).copied().unwrap_or((0, 0));
                let _ = write!(out, " {:>12}", format!("{ok}/{total}"));
            }
            let _ = writeln!(out);
        }
        out
    }
}
