//! Six-term suggestion scoring and replacement selection.

use serde::{Deserialize, Serialize};

use crate::context::{domain_significance_with_total, general_significance, raw_domain_count, CollectionStats};
use crate::lexicon::{AbbreviationSource, CorrectionHistory, SpellingDict};
use crate::strdist::normalized_edit_distance;
use crate::suggest::{ErrorSite, Suggestion, SuggestionList};

/// Scores closer than this are treated as equal by [`select_replacement`].
pub const TIE_EPSILON: f64 = 1e-9;
/// Window used to count near-equal candidates in a report.
pub const NEAR_TIE_WINDOW: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// First dictionary suggestion, no scoring.
    Baseline,
    /// Six-term scoring with the correction history as reuse source.
    Basic,
    /// Adds context suggestions, real-word detection and the spelling
    /// dictionary as reuse source.
    Enhanced,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Baseline, Mode::Basic, Mode::Enhanced];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::Basic => "basic",
            Mode::Enhanced => "enhanced",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    pub rank_inv: f64,
    pub ned: f64,
    pub rf: u8,
    pub af: u8,
    pub ds: f64,
    pub gs: f64,
    pub total: f64,
}

impl ScoreBreakdown {
    pub fn new(rank_inv: f64, ned: f64, rf: u8, af: u8, ds: f64, gs: f64) -> Self {
        let total = rank_inv + ned + f64::from(rf) + f64::from(af) + ds + gs;
        Self { rank_inv, ned, rf, af, ds, gs, total }
    }
}

/// 1 when the reuse source for `mode` already maps `e` to `s`.
pub fn reuse_factor(e: &str, s: &str, spelling: &SpellingDict, history: &CorrectionHistory, mode: Mode) -> u8 {
    match mode {
        Mode::Baseline => 0,
        Mode::Basic => history.reuse(e, s),
        Mode::Enhanced => u8::from(spelling.maps(e, s)),
    }
}

/// 1 when `s` is itself a known abbreviation.
pub fn abbreviation_factor(s: &str, abbreviations: &dyn AbbreviationSource) -> u8 {
    u8::from(!abbreviations.expansions(s).is_empty())
}

/// Everything a score depends on besides the suggestion list.
#[derive(Clone, Copy)]
pub struct ScoringContext<'a> {
    pub mode: Mode,
    pub spelling: &'a SpellingDict,
    pub history: &'a CorrectionHistory,
    pub abbreviations: &'a dyn AbbreviationSource,
    pub domain: Option<&'a dyn CollectionStats>,
    pub general: Option<&'a dyn CollectionStats>,
}

/// Scores one suggestion. `all_suggestions` is every word in the list,
/// which normalises domain significance.
pub fn ns_score(
    sugg: &Suggestion,
    site: &ErrorSite,
    ctx: &ScoringContext<'_>,
    all_suggestions: &[&str],
) -> ScoreBreakdown {
    let total = ctx
        .domain
        .map_or(0, |d| all_suggestions.iter().map(|s| raw_domain_count(site.left(), s, site.right(), d)).sum());
    score_with_total(sugg, site, ctx, total)
}

fn score_with_total(sugg: &Suggestion, site: &ErrorSite, ctx: &ScoringContext<'_>, ds_total: u64) -> ScoreBreakdown {
    let (l, s, r) = (site.left(), sugg.word.as_str(), site.right());
    ScoreBreakdown::new(
        1.0 / sugg.rank as f64,
        normalized_edit_distance(&site.error, s),
        reuse_factor(&site.error, s, ctx.spelling, ctx.history, ctx.mode),
        abbreviation_factor(s, ctx.abbreviations),
        ctx.domain.map_or(0.0, |d| domain_significance_with_total(l, s, r, ds_total, d)),
        ctx.general.map_or(0.0, |g| general_significance(l, s, r, g)),
    )
}

/// Scores every suggestion of `list`.
pub fn score_list(list: &SuggestionList, ctx: &ScoringContext<'_>) -> Vec<(Suggestion, ScoreBreakdown)> {
    let words = list.words();
    let total = ctx
        .domain
        .map_or(0, |d| words.iter().map(|s| raw_domain_count(list.site.left(), s, list.site.right(), d)).sum());
    list.items.iter().map(|s| (s.clone(), score_with_total(s, &list.site, ctx, total))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Replacement {
    pub original: String,
    pub chosen: String,
    pub breakdown: ScoreBreakdown,
    pub all_scored: Vec<(Suggestion, ScoreBreakdown)>,
    pub changed: bool,
    /// Candidates scoring within [`NEAR_TIE_WINDOW`] of the winner,
    /// the winner included.
    pub near_ties: usize,
}

/// Highest total wins; ties go to the lower rank, then the earlier
/// element. Returns `None` only for an empty list.
pub fn select_replacement(original: &str, scored: Vec<(Suggestion, ScoreBreakdown)>) -> Option<Replacement> {
    let mut best: Option<usize> = None;
    for (k, (s, b)) in scored.iter().enumerate() {
        let wins = match best {
            None => true,
            Some(w) => {
                let (ws, wb) = &scored[w];
                if b.total > wb.total + TIE_EPSILON {
                    true
                } else if (b.total - wb.total).abs() <= TIE_EPSILON {
                    (s.rank, s.element_index) < (ws.rank, ws.element_index)
                } else {
                    false
                }
            }
        };
        if wins {
            best = Some(k);
        }
    }
    let (winner, breakdown) = scored[best?].clone();
    let near_ties = scored.iter().filter(|(_, b)| breakdown.total - b.total <= NEAR_TIE_WINDOW).count();
    Some(Replacement {
        original: original.to_string(),
        changed: winner.word != original,
        chosen: winner.word,
        breakdown,
        all_scored: scored,
        near_ties,
    })
}
