use std::ops::Range;

use serde::Serialize;

use super::tokenize::{tokenize, Token};

/// Abbreviations whose final period never ends a sentence.
const NON_TERMINAL_ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "etc", "vs", "e.g", "i.e", "inc", "ltd", "co", "corp", "jan",
    "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec", "mt", "approx", "dept", "est", "fig",
    "gen", "gov", "hon", "lt", "col", "capt", "sgt", "rev", "ave", "blvd", "rd",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    pub text: String,
    pub doc_id: String,
    pub index: usize,
    /// Half-open character offsets into the masked document text.
    pub span: Range<usize>,
}

impl Sentence {
    pub fn tokens(&self) -> Vec<Token> {
        tokenize(&self.text)
    }
}

fn is_closer(c: char) -> bool {
    matches!(c, ')' | ']' | '"' | '\'' | '’' | '”')
}

fn word_before(chars: &[char], period: usize) -> String {
    let start = chars[..period].iter().rposition(|c| c.is_whitespace() || *c == '(').map_or(0, |p| p + 1);
    chars[start..period].iter().collect::<String>().to_lowercase()
}

fn is_abbreviation_period(chars: &[char], period: usize) -> bool {
    let word = word_before(chars, period);
    let bare = word.trim_start_matches(|c: char| !c.is_alphanumeric());
    if NON_TERMINAL_ABBREVIATIONS.contains(&bare) {
        return true;
    }
    // Single-letter initials such as "J. Smith".
    let mut letters = bare.chars();
    matches!((letters.next(), letters.next()), (Some(c), None) if c.is_alphabetic())
}

/// Splits masked text into sentences. A sentence ends at `.`, `!` or `?`
/// (plus any closing quotes or brackets) followed by whitespace and an
/// uppercase letter, or by the end of the text; periods after known
/// abbreviations do not count. Every line break also ends a sentence.
pub fn split_sentences(text: &str, doc_id: &str) -> Vec<Sentence> {
    let chars: Vec<char> = text.chars().collect();
    let mut bounds: Vec<Range<usize>> = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            bounds.push(start..i);
            start = i + 1;
            i += 1;
            continue;
        }
        if matches!(c, '.' | '!' | '?') {
            let mut end = i + 1;
            while end < chars.len() && matches!(chars[end], '.' | '!' | '?') {
                end += 1;
            }
            while end < chars.len() && is_closer(chars[end]) {
                end += 1;
            }
            let single_period = c == '.' && end == i + 1;
            let boundary = if end == chars.len() {
                true
            } else if chars[end].is_whitespace() && chars[end] != '\n' {
                let next = chars[end..].iter().find(|c| !c.is_whitespace() || **c == '\n');
                match next {
                    None | Some('\n') => true,
                    Some(n) => n.is_uppercase(),
                }
            } else {
                false
            };
            if boundary && !(single_period && is_abbreviation_period(&chars, i)) {
                bounds.push(start..end);
                start = end;
            }
            i = end;
            continue;
        }
        i += 1;
    }
    bounds.push(start..chars.len());

    let mut sentences = Vec::new();
    for r in bounds {
        let mut s = r.start;
        let mut e = r.end;
        while s < e && chars[s].is_whitespace() {
            s += 1;
        }
        while e > s && chars[e - 1].is_whitespace() {
            e -= 1;
        }
        if s == e {
            continue;
        }
        sentences.push(Sentence {
            text: chars[s..e].iter().collect(),
            doc_id: doc_id.to_string(),
            index: sentences.len(),
            span: s..e,
        });
    }
    sentences
}
