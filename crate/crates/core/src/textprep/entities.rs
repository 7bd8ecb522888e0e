use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Url,
    Email,
    Emoticon,
    Table,
}

impl EntityKind {
    fn tag(self) -> &'static str {
        match self {
            EntityKind::Url => "URL",
            EntityKind::Email => "EMAIL",
            EntityKind::Emoticon => "EMOTICON",
            EntityKind::Table => "TABLE",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "URL" => EntityKind::Url,
            "EMAIL" => EntityKind::Email,
            "EMOTICON" => EntityKind::Emoticon,
            "TABLE" => EntityKind::Table,
            _ => return None,
        })
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A span of non-prose text set aside before correction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtractedEntity {
    pub kind: EntityKind,
    /// Half-open character offsets into the unmasked text.
    pub span: Range<usize>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskedText {
    pub text: String,
    /// Ordered by span start; placeholder `n` refers to `entities[n]`.
    pub entities: Vec<ExtractedEntity>,
}

pub fn placeholder(kind: EntityKind, n: usize) -> String {
    format!("⟦{}:{n}⟧", kind.tag())
}

/// Parses a whole-token placeholder such as `⟦URL:0⟧`.
pub fn parse_placeholder(token: &str) -> Option<(EntityKind, usize)> {
    let inner = token.strip_prefix('⟦')?.strip_suffix('⟧')?;
    let (tag, n) = inner.split_once(':')?;
    Some((EntityKind::from_tag(tag)?, n.parse().ok()?))
}

const DEFAULT_EMOTICONS: &str = include_str!("../../data/emoticons.txt");

/// Emoticons recognised by [`extract_entities`], longest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmoticonInventory {
    items: Vec<String>,
}

impl Default for EmoticonInventory {
    fn default() -> Self {
        Self::from_lines(DEFAULT_EMOTICONS)
    }
}

impl EmoticonInventory {
    /// One emoticon per line; blank lines are skipped.
    pub fn from_lines(text: &str) -> Self {
        let mut items: Vec<String> =
            text.lines().map(str::trim).filter(|l| !l.is_empty()).map(str::to_string).collect();
        items.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then_with(|| a.cmp(b)));
        items.dedup();
        Self { items }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_lines(&text))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn match_at(&self, chars: &[char], at: usize) -> Option<usize> {
        let prev = at.checked_sub(1).map(|p| chars[p]);
        self.items.iter().find_map(|item| {
            let pat: Vec<char> = item.chars().collect();
            let end = at + pat.len();
            if end > chars.len() || chars[at..end] != pat[..] {
                return None;
            }
            let before_ok = match prev {
                None => true,
                Some(p) if p.is_whitespace() => true,
                Some(p) => p.is_alphanumeric() && !pat[0].is_alphanumeric(),
            };
            let after_ok = chars.get(end).is_none_or(|&n| n.is_whitespace() || matches!(n, '.' | ',' | '!' | '?'));
            (before_ok && after_ok).then_some(end)
        })
    }
}

fn url_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r#"(?i)\b(?:https?://|ftp://|www\.)[^\s<>"⟦⟧]+"#).unwrap())
}

fn email_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}").unwrap())
}

fn gap_starts(line: &str) -> Option<Vec<usize>> {
    let chars: Vec<char> = line.chars().collect();
    let first = chars.iter().position(|c| !c.is_whitespace())?;
    let last = chars.iter().rposition(|c| !c.is_whitespace())?;
    let mut starts = Vec::new();
    let mut i = first;
    while i < last {
        if chars[i] == ' ' {
            let run_end = (i..=last).find(|&k| chars[k] != ' ').unwrap_or(last);
            if run_end - i >= 2 {
                starts.push(run_end);
            }
            i = run_end;
        } else {
            i += 1;
        }
    }
    (starts.len() >= 2).then_some(starts)
}

fn aligned(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.abs_diff(*y) <= 1)
}

/// Finds maximal runs of at least two consecutive lines that each contain
/// two or more internal gaps of two or more spaces, with gap start columns
/// agreeing between neighbouring lines to within one column. Returns
/// half-open line ranges.
pub fn detect_tables(lines: &[&str]) -> Vec<Range<usize>> {
    let gaps: Vec<Option<Vec<usize>>> = lines.iter().map(|l| gap_starts(l)).collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let Some(first) = &gaps[i] else {
            i += 1;
            continue;
        };
        let mut prev = first;
        let mut j = i + 1;
        while let Some(Some(next)) = gaps.get(j) {
            if !aligned(prev, next) {
                break;
            }
            prev = next;
            j += 1;
        }
        if j - i >= 2 {
            spans.push(i..j);
        }
        i = j;
    }
    spans
}

fn overlaps(taken: &[(Range<usize>, EntityKind)], r: &Range<usize>) -> bool {
    taken.iter().any(|(t, _)| t.start < r.end && r.start < t.end)
}

/// Replaces tables, URLs, emails and emoticons with placeholders.
pub fn extract_entities(text: &str, emoticons: &EmoticonInventory) -> MaskedText {
    // Byte ranges while searching; converted to char offsets at the end.
    let mut found: Vec<(Range<usize>, EntityKind)> = Vec::new();

    let mut line_ranges = Vec::new();
    let mut start = 0;
    for line in text.split('\n') {
        line_ranges.push(start..start + line.len());
        start += line.len() + 1;
    }
    let lines: Vec<&str> = line_ranges.iter().map(|r| text[r.clone()].trim_end_matches('\r')).collect();
    for span in detect_tables(&lines) {
        let first = &line_ranges[span.start];
        let last = &line_ranges[span.end - 1];
        let end = last.end - usize::from(text[..last.end].ends_with('\r'));
        found.push((first.start..end, EntityKind::Table));
    }

    for m in url_regex().find_iter(text) {
        let trimmed = m.as_str().trim_end_matches(['.', ',', ';', ':', '!', '?', ')', ']', '}', '\'', '"']);
        let r = m.start()..m.start() + trimmed.len();
        if !r.is_empty() && !overlaps(&found, &r) {
            found.push((r, EntityKind::Url));
        }
    }
    for m in email_regex().find_iter(text) {
        let r = m.range();
        if !overlaps(&found, &r) {
            found.push((r, EntityKind::Email));
        }
    }

    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let plain: Vec<char> = chars.iter().map(|&(_, c)| c).collect();
    let byte_at = |ci: usize| chars.get(ci).map_or(text.len(), |&(b, _)| b);
    let mut ci = 0;
    while ci < plain.len() {
        if let Some(end) = emoticons.match_at(&plain, ci) {
            let r = byte_at(ci)..byte_at(end);
            if !overlaps(&found, &r) {
                found.push((r, EntityKind::Emoticon));
                ci = end;
                continue;
            }
        }
        ci += 1;
    }

    found.sort_by_key(|(r, _)| r.start);

    let char_offset = |b: usize| text[..b].chars().count();
    let mut masked = String::with_capacity(text.len());
    let mut entities = Vec::with_capacity(found.len());
    let mut cursor = 0;
    for (n, (r, kind)) in found.into_iter().enumerate() {
        masked.push_str(&text[cursor..r.start]);
        masked.push_str(&placeholder(kind, n));
        entities.push(ExtractedEntity {
            kind,
            span: char_offset(r.start)..char_offset(r.end),
            text: text[r.clone()].to_string(),
        });
        cursor = r.end;
    }
    masked.push_str(&text[cursor..]);
    MaskedText { text: masked, entities }
}

/// Substitutes every placeholder in `masked` with its entity text.
pub fn restore_entities(masked: &str, entities: &[ExtractedEntity]) -> String {
    let mut out = String::with_capacity(masked.len());
    let mut rest = masked;
    while let Some(open) = rest.find('⟦') {
        out.push_str(&rest[..open]);
        let tail = &rest[open..];
        let restored = tail.find('⟧').and_then(|close| {
            let ph = &tail[..close + '⟧'.len_utf8()];
            let (_, n) = parse_placeholder(ph)?;
            Some((entities.get(n)?.text.as_str(), ph.len()))
        });
        match restored {
            Some((text, len)) => {
                out.push_str(text);
                rest = &tail[len..];
            }
            None => {
                out.push('⟦');
                rest = &tail['⟦'.len_utf8()..];
            }
        }
    }
    out.push_str(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn extract(text: &str) -> MaskedText {
        extract_entities(text, &EmoticonInventory::default())
    }

    #[test]
    fn url_is_masked() {
        let m = extract("visit http://a.b/c now");
        assert_eq!(m.text, "visit ⟦URL:0⟧ now");
        assert_eq!(m.entities.len(), 1);
        assert_eq!(m.entities[0].kind, EntityKind::Url);
        assert_eq!(m.entities[0].text, "http://a.b/c");
        assert_eq!(m.entities[0].span, 6..18);
    }

    #[test]
    fn email_and_emoticon() {
        let m = extract("mail me@x.com :)");
        let kinds: Vec<_> = m.entities.iter().map(|e| e.kind).collect();
        assert_eq!(kinds, [EntityKind::Email, EntityKind::Emoticon]);
        assert_eq!(m.text, "mail ⟦EMAIL:0⟧ ⟦EMOTICON:1⟧");
    }

    #[test]
    fn nothing_to_extract() {
        let m = extract("just plain words here.");
        assert_eq!(m.text, "just plain words here.");
        assert!(m.entities.is_empty());
    }

    #[test]
    fn trailing_punctuation_not_part_of_url() {
        let m = extract("see www.example.com/page. Thanks");
        assert_eq!(m.entities[0].text, "www.example.com/page");
        assert_eq!(m.text, "see ⟦URL:0⟧. Thanks");
    }

    #[test]
    fn emoticon_boundaries() {
        assert_eq!(extract("thanks:)").text, "thanks⟦EMOTICON:0⟧");
        assert_eq!(extract("great :D!").text, "great ⟦EMOTICON:0⟧!");
        assert!(extract("at 10:30 today").entities.is_empty());
        assert!(extract("boxD").entities.is_empty());
        assert!(extract("(a:b)").entities.is_empty());
    }

    #[test]
    fn tables() {
        let lines = ["a   b   c", "1   2   3"];
        assert_eq!(detect_tables(&lines), vec![0..2]);
        assert!(detect_tables(&["a plain prose line with single spaces", "and another one"]).is_empty());
        assert!(detect_tables(&["a   b   c"]).is_empty());
        let ragged = ["name   qty   colour", "kiwi    10    green", "apple   3    red", "not a table"];
        assert_eq!(detect_tables(&ragged), vec![0..3]);
        let misaligned = ["a   b   c", "1         2   3"];
        assert!(detect_tables(&misaligned).is_empty());
    }

    #[test]
    fn table_is_masked_as_one_entity() {
        let text = "Here it is:\nitem   qty   price\npen    2     1.50\nThat is all.";
        let m = extract(text);
        assert_eq!(m.entities.len(), 1);
        assert_eq!(m.entities[0].kind, EntityKind::Table);
        assert_eq!(m.text, "Here it is:\n⟦TABLE:0⟧\nThat is all.");
        assert_eq!(restore_entities(&m.text, &m.entities), text);
    }

    #[test]
    fn placeholder_parsing() {
        assert_eq!(parse_placeholder("⟦URL:3⟧"), Some((EntityKind::Url, 3)));
        assert_eq!(parse_placeholder("⟦FOO:3⟧"), None);
        assert_eq!(parse_placeholder("URL:3"), None);
    }

    fn fragment() -> impl Strategy<Value = String> {
        prop_oneof![
            "[a-z]{1,7}",
            Just(" ".to_string()),
            Just("\n".to_string()),
            Just("http://x.org/p".to_string()),
            Just("www.site.com".to_string()),
            Just("bob@mail.net".to_string()),
            Just(":)".to_string()),
            Just(";-)".to_string()),
            Just("<3".to_string()),
            Just(".".to_string()),
            Just("x   y   z\n1   2   3\n".to_string()),
            Just("ünï".to_string()),
        ]
    }

    proptest! {
        #[test]
        fn masking_round_trips(parts in prop::collection::vec(fragment(), 0..25)) {
            let text = parts.join(" ");
            let m = extract(&text);
            prop_assert_eq!(restore_entities(&m.text, &m.entities), text.clone());
            let chars: Vec<char> = text.chars().collect();
            let mut prev_end = 0;
            for e in &m.entities {
                prop_assert!(e.span.end > e.span.start);
                prop_assert!(e.span.start >= prev_end);
                prev_end = e.span.end;
                let slice: String = chars[e.span.clone()].iter().collect();
                prop_assert_eq!(&slice, &e.text);
            }
        }

        #[test]
        fn table_spans_sorted_and_disjoint(lines in prop::collection::vec(prop_oneof![
            Just("a   b   c"), Just("1   2   3"), Just("prose line"), Just("xx  yy  zz"), Just("")
        ], 0..12)) {
            let spans = detect_tables(&lines);
            for w in spans.windows(2) {
                prop_assert!(w[0].end <= w[1].start);
            }
            for s in &spans {
                prop_assert!(s.end - s.start >= 2);
            }
        }
    }
}
