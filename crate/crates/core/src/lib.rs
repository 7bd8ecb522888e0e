//! Cleaning of noisy chat and e-mail text: spelling correction,
//! abbreviation expansion and case restoration driven by a six-term
//! suggestion score.
//!
//! ```
//! use cleantext::{Cleaner, Lexicons, Mode};
//!
//! let mut lex = Lexicons::default();
//! for w in ["the", "order", "number"] {
//!     lex.words.insert(w, 1, false);
//! }
//! let cleaner = Cleaner::new(Mode::Basic, lex, None, None);
//! let (text, _) = cleaner.clean_text("doc", "the ordr number");
//! assert_eq!(text, "the order number");
//! ```

pub mod cli;
pub mod context;
pub mod error;
pub mod evalgen;
pub mod lexicon;
pub mod pipeline;
pub mod scoring;
pub mod strdist;
pub mod suggest;
pub mod textprep;

pub use context::{CollectionStats, ContextThresholds, CorpusIndex, CorpusRole, IndexBuilder};
pub use error::{Error, Result};
pub use lexicon::{AbbreviationDict, CorrectionHistory, Lexicons, SpellingDict, WordDict};
pub use pipeline::{CleanConfig, CleanReport, Cleaner, Correction, DocumentReport};
pub use scoring::{Mode, ScoreBreakdown};
