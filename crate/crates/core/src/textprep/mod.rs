//! Turning raw documents into masked, segmented, tokenized text.
//!
//! The flow is [`strip_markup`] → [`extract_entities`] → [`split_sentences`]
//! → [`tokenize`]. URLs, emails, emoticons and tables are replaced by opaque
//! `⟦KIND:n⟧` placeholders that later stages never touch, and
//! [`restore_entities`] puts them back verbatim.

mod entities;
mod markup;
mod sentences;
mod tokenize;

pub use entities::{
    detect_tables, extract_entities, parse_placeholder, placeholder, restore_entities, EmoticonInventory, EntityKind,
    ExtractedEntity, MaskedText,
};
pub use markup::{decode_entities, strip_markup, strip_tags};
pub use sentences::{split_sentences, Sentence};
pub use tokenize::{tokenize, Token};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    #[default]
    Plain,
    Html,
    Xml,
}

impl SourceFormat {
    /// Guesses the format from a file extension, defaulting to plain text.
    pub fn from_extension(ext: &str) -> Self {
        match ext.to_ascii_lowercase().as_str() {
            "html" | "htm" | "xhtml" => SourceFormat::Html,
            "xml" => SourceFormat::Xml,
            _ => SourceFormat::Plain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub body: String,
    pub format: SourceFormat,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, body: impl Into<String>, format: SourceFormat) -> Self {
        Self { id: id.into(), body: body.into(), format }
    }

    /// Decodes `bytes` as UTF-8, substituting U+FFFD for invalid sequences.
    /// The second value is a warning when any substitution happened.
    pub fn from_bytes(id: impl Into<String>, bytes: &[u8], format: SourceFormat) -> (Self, Option<String>) {
        let id = id.into();
        match String::from_utf8_lossy(bytes) {
            std::borrow::Cow::Borrowed(s) => (Self::new(id, s, format), None),
            std::borrow::Cow::Owned(s) => {
                let warning = format!("{id}: undecodable bytes replaced with U+FFFD");
                (Self::new(id, s, format), Some(warning))
            }
        }
    }
}
