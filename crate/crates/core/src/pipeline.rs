//! End-to-end document cleaning.
//!
//! Markup is stripped, URLs, e-mail addresses, emoticons and tables are set
//! aside, and the remaining prose is split into sentences. Each sentence is
//! walked left to right: flagged words get a suggestion list, every entry
//! is scored, and the winner replaces the word in place.

use std::path::{Path, PathBuf};
use std::sync::{PoisonError, RwLock};

use serde::{Deserialize, Serialize};

use crate::context::{confirms_real_word_error, context_suggest, CollectionStats, ContextThresholds, CorpusIndex};
use crate::error::{Error, Result};
use crate::lexicon::{AbbreviationDict, CorrectionHistory, Lexicons, SpellingDict, WordDict};
use crate::scoring::{score_list, select_replacement, Mode, ScoreBreakdown, ScoringContext};
use crate::suggest::{augment, match_case, BaseSuggester, ErrorSite, SuggestionSource, DEFAULT_SUGGESTION_LIMIT};
use crate::textprep::{
    extract_entities, parse_placeholder, restore_entities, split_sentences, strip_markup, EmoticonInventory,
    RawDocument, SourceFormat,
};

/// Settings for a [`Cleaner`]; every field can come from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CleanConfig {
    pub mode: Mode,
    pub words: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub spelling: Option<PathBuf>,
    pub history: Option<PathBuf>,
    pub domain_index: Option<PathBuf>,
    pub general_index: Option<PathBuf>,
    pub emoticons: Option<PathBuf>,
    pub thresholds: ContextThresholds,
    pub limit: usize,
    pub format: Option<SourceFormat>,
}

impl Default for CleanConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Enhanced,
            words: None,
            abbreviations: None,
            spelling: None,
            history: None,
            domain_index: None,
            general_index: None,
            emoticons: None,
            thresholds: ContextThresholds::default(),
            limit: DEFAULT_SUGGESTION_LIMIT,
            format: None,
        }
    }
}

impl CleanConfig {
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("{}: {e}", origin.display())))
    }

    /// Reads a TOML file. Relative paths inside it are taken from the
    /// file's own directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text, path)?;
        if let Some(base) = path.parent() {
            for slot in [
                &mut cfg.words,
                &mut cfg.abbreviations,
                &mut cfg.spelling,
                &mut cfg.history,
                &mut cfg.domain_index,
                &mut cfg.general_index,
                &mut cfg.emoticons,
            ] {
                if let Some(p) = slot.as_mut().filter(|p| p.is_relative()) {
                    *p = base.join(&*p);
                }
            }
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Detection {
    /// Rejected by the word dictionary.
    Dictionary,
    /// A dictionary word the general corpus considers out of place.
    Context,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredSuggestion {
    pub word: String,
    pub rank: usize,
    pub element_index: usize,
    pub source: SuggestionSource,
    /// Absent in baseline mode, which does not score.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<ScoreBreakdown>,
}

/// One flagged word and what became of it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correction {
    pub sentence: usize,
    pub position: usize,
    pub original: String,
    /// The word as checked, after upper-case input was lowered.
    pub error: String,
    pub left: Option<String>,
    pub right: Option<String>,
    pub detected_by: Detection,
    pub suggestions: Vec<ScoredSuggestion>,
    pub chosen: String,
    pub changed: bool,
    pub near_ties: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_repair: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_repair: Option<String>,
}

impl Correction {
    pub fn suggests(&self, word: &str) -> bool {
        self.suggestions.iter().any(|s| s.word == word)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub tokens: usize,
    pub errors_flagged: usize,
    pub corrections_applied: usize,
    pub identity_kept: usize,
}

impl Counters {
    fn add(&mut self, other: &Counters) {
        self.tokens += other.tokens;
        self.errors_flagged += other.errors_flagged;
        self.corrections_applied += other.corrections_applied;
        self.identity_kept += other.identity_kept;
    }
}

/// Result of cleaning one sentence given as tokens.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceOutcome {
    pub tokens: Vec<String>,
    pub corrections: Vec<Correction>,
    pub counters: Counters,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DocumentReport {
    pub id: String,
    pub counters: Counters,
    pub corrections: Vec<Correction>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CleanReport {
    pub mode: Option<Mode>,
    pub totals: Counters,
    pub warnings: Vec<String>,
    pub documents: Vec<DocumentReport>,
}

impl CleanReport {
    pub fn push(&mut self, doc: DocumentReport) {
        self.totals.add(&doc.counters);
        self.documents.push(doc);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn is_word(token: &str) -> bool {
    parse_placeholder(token).is_none() && token.chars().any(char::is_alphanumeric)
}

fn is_all_upper(token: &str) -> bool {
    let mut letters = token.chars().filter(|c| c.is_alphabetic());
    let first_two = (letters.next(), letters.next());
    matches!(first_two, (Some(_), Some(_))) && token.chars().all(|c| !c.is_lowercase())
}

/// Cleans documents against a fixed set of dictionaries and indices.
///
/// The spelling dictionary and correction history grow as documents are
/// cleaned; both sit behind locks so one `Cleaner` can serve several
/// threads.
pub struct Cleaner {
    mode: Mode,
    thresholds: ContextThresholds,
    words: WordDict,
    abbreviations: AbbreviationDict,
    spelling: RwLock<SpellingDict>,
    history: RwLock<CorrectionHistory>,
    domain: Option<CorpusIndex>,
    general: Option<CorpusIndex>,
    suggester: BaseSuggester,
    emoticons: EmoticonInventory,
    format: Option<SourceFormat>,
    warnings: Vec<String>,
}

impl Cleaner {
    pub fn new(mode: Mode, lexicons: Lexicons, domain: Option<CorpusIndex>, general: Option<CorpusIndex>) -> Self {
        let mut warnings = Vec::new();
        if mode == Mode::Enhanced && general.is_none() {
            warnings.push(
                "enhanced mode without a general index: context suggestions disabled, general significance is 0"
                    .to_string(),
            );
        } else if mode == Mode::Basic && general.is_none() {
            warnings.push("no general index: general significance is 0".to_string());
        }
        if mode != Mode::Baseline && domain.is_none() {
            warnings.push("no domain index: domain significance is 0".to_string());
        }
        Self {
            mode,
            thresholds: ContextThresholds::default(),
            suggester: BaseSuggester::new(&lexicons.words, DEFAULT_SUGGESTION_LIMIT),
            words: lexicons.words,
            abbreviations: lexicons.abbreviations,
            spelling: RwLock::new(lexicons.spelling),
            history: RwLock::new(lexicons.history),
            domain,
            general,
            emoticons: EmoticonInventory::default(),
            format: None,
            warnings,
        }
    }

    /// Loads every file named in `cfg`. A word dictionary is required.
    pub fn from_config(cfg: &CleanConfig) -> Result<Self> {
        let words_path = cfg.words.as_deref().ok_or_else(|| Error::Config("a word dictionary is required".into()))?;
        let lexicons = Lexicons {
            words: WordDict::load(words_path)?,
            abbreviations: cfg.abbreviations.as_deref().map(AbbreviationDict::load).transpose()?.unwrap_or_default(),
            spelling: cfg.spelling.as_deref().map(SpellingDict::load).transpose()?.unwrap_or_default(),
            history: cfg.history.as_deref().map(CorrectionHistory::load).transpose()?.unwrap_or_default(),
        };
        let domain = cfg.domain_index.as_deref().map(CorpusIndex::load).transpose()?;
        let general = cfg.general_index.as_deref().map(CorpusIndex::load).transpose()?;
        let mut cleaner =
            Self::new(cfg.mode, lexicons, domain, general).with_thresholds(cfg.thresholds).with_limit(cfg.limit);
        if let Some(path) = &cfg.emoticons {
            cleaner.emoticons = EmoticonInventory::load(path)?;
        }
        cleaner.format = cfg.format;
        Ok(cleaner)
    }

    pub fn with_thresholds(mut self, thresholds: ContextThresholds) -> Self {
        self.thresholds = thresholds;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        if limit != self.suggester.limit() {
            self.suggester = BaseSuggester::new(&self.words, limit);
        }
        self
    }

    pub fn with_emoticons(mut self, emoticons: EmoticonInventory) -> Self {
        self.emoticons = emoticons;
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Snapshot of the spelling dictionary, including auto-recorded entries.
    pub fn spelling_dict(&self) -> SpellingDict {
        self.spelling.read().unwrap_or_else(PoisonError::into_inner).clone()
    }

    pub fn history(&self) -> CorrectionHistory {
        self.history.read().unwrap_or_else(PoisonError::into_inner).clone()
    }

    pub fn new_report(&self) -> CleanReport {
        CleanReport { mode: Some(self.mode), warnings: self.warnings.clone(), ..CleanReport::default() }
    }

    pub fn clean_text(&self, id: &str, text: &str) -> (String, DocumentReport) {
        self.clean_document(&RawDocument::new(id, text, SourceFormat::Plain))
    }

    pub fn clean_document(&self, doc: &RawDocument) -> (String, DocumentReport) {
        let doc = match self.format {
            Some(format) if format != doc.format => &RawDocument::new(doc.id.clone(), doc.body.clone(), format),
            _ => doc,
        };
        let stripped = strip_markup(doc);
        let masked = extract_entities(&stripped, &self.emoticons);
        let mut chars: Vec<char> = masked.text.chars().collect();
        let mut report = DocumentReport { id: doc.id.clone(), counters: Counters::default(), corrections: Vec::new() };
        // Edits are applied back to front so earlier offsets stay valid.
        let mut edits: Vec<(std::ops::Range<usize>, String)> = Vec::new();
        for sentence in split_sentences(&masked.text, &doc.id) {
            let tokens = sentence.tokens();
            let texts: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
            let outcome = self.clean_tokens(&texts, sentence.index);
            for (token, new) in tokens.iter().zip(&outcome.tokens) {
                if *new != token.text {
                    let start = sentence.span.start + token.char_span.start;
                    edits.push((start..sentence.span.start + token.char_span.end, new.clone()));
                }
            }
            report.counters.add(&outcome.counters);
            report.corrections.extend(outcome.corrections);
        }
        for (range, new) in edits.into_iter().rev() {
            chars.splice(range, new.chars());
        }
        let rebuilt: String = chars.into_iter().collect();
        (restore_entities(&rebuilt, &masked.entities), report)
    }

    /// Cleans one sentence. Non-word tokens (punctuation, placeholders)
    /// pass through and are invisible as neighbours.
    pub fn clean_tokens<S: AsRef<str>>(&self, tokens: &[S], sentence: usize) -> SentenceOutcome {
        let mut current: Vec<String> = tokens.iter().map(|t| t.as_ref().to_string()).collect();
        let word_positions: Vec<usize> = (0..current.len()).filter(|&p| is_word(&current[p])).collect();
        let mut corrections = Vec::new();
        let mut counters = Counters::default();

        for (k, &p) in word_positions.iter().enumerate() {
            counters.tokens += 1;
            let original = current[p].clone();
            if !original.chars().any(char::is_alphabetic) {
                continue;
            }
            let error = if is_all_upper(&original) { original.to_lowercase() } else { original.clone() };
            let left_pos = k.checked_sub(1).map(|i| word_positions[i]);
            let right_pos = word_positions.get(k + 1).copied();
            let left = left_pos.map(|i| current[i].clone());
            let right = right_pos.map(|i| current[i].clone());

            let Some(mut correction) = self.correct_word(&original, &error, left, right) else {
                continue;
            };
            correction.sentence = sentence;
            correction.position = p;
            counters.errors_flagged += 1;
            if correction.changed {
                counters.corrections_applied += 1;
                current[p] = correction.chosen.clone();
            } else {
                counters.identity_kept += 1;
            }
            if let (Some(i), Some(repair)) = (left_pos, &correction.left_repair) {
                current[i] = match_case(&current[i], repair);
            }
            if let (Some(i), Some(repair)) = (right_pos, &correction.right_repair) {
                current[i] = match_case(&current[i], repair);
            }
            corrections.push(correction);
        }
        SentenceOutcome { tokens: current, corrections, counters }
    }

    fn correct_word(
        &self,
        original: &str,
        error: &str,
        left: Option<String>,
        right: Option<String>,
    ) -> Option<Correction> {
        let in_dict = self.words.accepts(error);
        // Every scoring mode weighs general significance; only enhanced mode
        // asks the general collection for suggestions.
        let general = match self.mode {
            Mode::Enhanced => self.general.as_ref(),
            _ => None,
        };
        let hit = general.and_then(|g| context_suggest(left.as_deref(), error, right.as_deref(), g, &self.thresholds));
        let detected_by = if !in_dict {
            Detection::Dictionary
        } else if hit.as_ref().is_some_and(|h| {
            confirms_real_word_error(
                h,
                left.as_deref(),
                error,
                right.as_deref(),
                general.expect("hit implies index"),
                &self.thresholds,
            )
        }) {
            Detection::Context
        } else {
            return None;
        };

        let base: Vec<String> = self.suggester.suggest(error).iter().map(|b| match_case(error, b)).collect();
        let mut correction = Correction {
            sentence: 0,
            position: 0,
            original: original.to_string(),
            error: error.to_string(),
            left: left.clone(),
            right: right.clone(),
            detected_by,
            suggestions: Vec::new(),
            chosen: original.to_string(),
            changed: false,
            near_ties: 1,
            left_repair: None,
            right_repair: None,
        };

        if self.mode == Mode::Baseline {
            let list = augment(&base, ErrorSite::new(error, left.as_deref(), right.as_deref()), &[], None);
            correction.suggestions = list
                .items
                .into_iter()
                .map(|s| ScoredSuggestion {
                    word: s.word,
                    rank: s.rank,
                    element_index: s.element_index,
                    source: s.source,
                    score: None,
                })
                .collect();
            if let Some(first) = base.first() {
                correction.chosen = first.clone();
            }
            correction.changed = correction.chosen != original;
            return Some(correction);
        }

        let expansions: Vec<String> = self.abbreviations.lookup(error).iter().map(|x| match_case(error, x)).collect();

        let mut site_left = left;
        let mut site_right = right;
        if let Some(h) = &hit {
            self.spelling.write().unwrap_or_else(PoisonError::into_inner).record_auto(error, &h.suggestion);
            if h.left_repair.is_some() {
                site_left.clone_from(&h.left_repair);
            }
            if h.right_repair.is_some() {
                site_right.clone_from(&h.right_repair);
            }
        }
        let front = match self.mode {
            Mode::Enhanced => {
                self.spelling.read().unwrap_or_else(PoisonError::into_inner).lookup(error).map(|s| match_case(error, s))
            }
            _ => None,
        };

        let site = ErrorSite::new(error, site_left.as_deref(), site_right.as_deref());
        let list = augment(&base, site, &expansions, front.as_deref());
        let scored = {
            let spelling = self.spelling.read().unwrap_or_else(PoisonError::into_inner);
            let history = self.history.read().unwrap_or_else(PoisonError::into_inner);
            let ctx = ScoringContext {
                mode: self.mode,
                spelling: &spelling,
                history: &history,
                abbreviations: &self.abbreviations,
                domain: self.domain.as_ref().map(|d| d as &dyn CollectionStats),
                general: self.general.as_ref().map(|g| g as &dyn CollectionStats),
            };
            score_list(&list, &ctx)
        };
        let replacement = select_replacement(error, scored).expect("identity is always present");
        let winner_source = replacement
            .all_scored
            .iter()
            .find(|(s, b)| s.word == replacement.chosen && b == &replacement.breakdown)
            .map(|(s, _)| s.source);

        correction.suggestions = replacement
            .all_scored
            .iter()
            .map(|(s, b)| ScoredSuggestion {
                word: s.word.clone(),
                rank: s.rank,
                element_index: s.element_index,
                source: s.source,
                score: Some(*b),
            })
            .collect();
        correction.near_ties = replacement.near_ties;
        correction.chosen = if winner_source == Some(SuggestionSource::Identity) {
            original.to_string()
        } else {
            replacement.chosen.clone()
        };
        correction.changed = correction.chosen != original;

        if let Some(h) = hit {
            if correction.chosen.to_lowercase() == h.suggestion {
                correction.left_repair = h.left_repair;
                correction.right_repair = h.right_repair;
            }
        }
        if correction.changed {
            self.history.write().unwrap_or_else(PoisonError::into_inner).record(error, &correction.chosen);
        }
        Some(correction)
    }
}
