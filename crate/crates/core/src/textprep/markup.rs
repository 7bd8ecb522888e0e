use super::{RawDocument, SourceFormat};

const BLOCK_TAGS: &[&str] = &[
    "address",
    "article",
    "aside",
    "blockquote",
    "body",
    "br",
    "dd",
    "div",
    "dl",
    "dt",
    "fieldset",
    "figcaption",
    "figure",
    "footer",
    "form",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "head",
    "header",
    "hr",
    "html",
    "li",
    "main",
    "nav",
    "ol",
    "p",
    "pre",
    "section",
    "table",
    "tbody",
    "td",
    "tfoot",
    "th",
    "thead",
    "title",
    "tr",
    "ul",
];

const NAMED_ENTITIES: &[(&str, char)] = &[
    ("amp", '&'),
    ("lt", '<'),
    ("gt", '>'),
    ("quot", '"'),
    ("apos", '\''),
    ("nbsp", '\u{a0}'),
    ("copy", '©'),
    ("reg", '®'),
    ("trade", '™'),
    ("hellip", '…'),
    ("mdash", '—'),
    ("ndash", '–'),
    ("lsquo", '‘'),
    ("rsquo", '’'),
    ("ldquo", '“'),
    ("rdquo", '”'),
    ("euro", '€'),
    ("pound", '£'),
];

/// Plain text of a document. Plain documents pass through untouched.
pub fn strip_markup(doc: &RawDocument) -> String {
    strip_tags(&doc.body, doc.format)
}

/// Removes tags, comments and script/style bodies and decodes character
/// references. Block-level tags (and, for XML, every tag) act as word
/// separators. Malformed markup is kept as text rather than rejected.
pub fn strip_tags(body: &str, format: SourceFormat) -> String {
    if format == SourceFormat::Plain {
        return body.to_string();
    }
    let chars: Vec<char> = body.chars().collect();
    let mut out = String::with_capacity(body.len());
    let mut pending_separator = false;
    let mut i = 0;

    let emit = |out: &mut String, pending: &mut bool, c: char| {
        if c.is_whitespace() {
            *pending = false;
        } else if *pending {
            if !out.is_empty() && !out.ends_with(char::is_whitespace) {
                out.push(' ');
            }
            *pending = false;
        }
        out.push(c);
    };

    while i < chars.len() {
        let c = chars[i];
        if c == '<' {
            if starts_with(&chars, i, "<!--") {
                i = find(&chars, i + 4, "-->").map_or(chars.len(), |end| end + 3);
                continue;
            }
            if starts_with(&chars, i, "<![CDATA[") {
                let end = find(&chars, i + 9, "]]>").unwrap_or(chars.len());
                for &ch in &chars[i + 9..end] {
                    emit(&mut out, &mut pending_separator, ch);
                }
                i = (end + 3).min(chars.len());
                continue;
            }
            let opens_tag =
                chars.get(i + 1).is_some_and(|&n| n.is_ascii_alphabetic() || n == '/' || n == '!' || n == '?');
            let close = if opens_tag { chars[i..].iter().position(|&ch| ch == '>') } else { None };
            let Some(rel_end) = close else {
                emit(&mut out, &mut pending_separator, c);
                i += 1;
                continue;
            };
            let end = i + rel_end;
            let inner: String = chars[i + 1..end].iter().collect();
            let closing = inner.starts_with('/');
            let name: String = inner
                .trim_start_matches('/')
                .chars()
                .take_while(|ch| ch.is_ascii_alphanumeric() || *ch == ':' || *ch == '-' || *ch == '_')
                .collect::<String>()
                .to_ascii_lowercase();
            i = end + 1;
            if !closing && (name == "script" || name == "style") {
                let terminator = format!("</{name}");
                i = find_ci(&chars, i, &terminator)
                    .and_then(|t| chars[t..].iter().position(|&ch| ch == '>').map(|p| t + p + 1))
                    .unwrap_or(chars.len());
            }
            if format == SourceFormat::Xml || BLOCK_TAGS.contains(&name.as_str()) {
                pending_separator = true;
            }
            continue;
        }
        if c == '&' {
            if let Some((decoded, consumed)) = decode_at(&chars, i) {
                emit(&mut out, &mut pending_separator, decoded);
                i += consumed;
                continue;
            }
        }
        emit(&mut out, &mut pending_separator, c);
        i += 1;
    }
    out
}

/// Decodes named and numeric character references in `text`; unknown
/// references are left as written.
pub fn decode_entities(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '&' {
            if let Some((decoded, consumed)) = decode_at(&chars, i) {
                out.push(decoded);
                i += consumed;
                continue;
            }
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

fn decode_at(chars: &[char], start: usize) -> Option<(char, usize)> {
    let semi = chars[start..].iter().take(12).position(|&c| c == ';')?;
    let name: String = chars[start + 1..start + semi].iter().collect();
    let decoded = if let Some(num) = name.strip_prefix('#') {
        let code = match num.strip_prefix(['x', 'X']) {
            Some(hex) => u32::from_str_radix(hex, 16).ok()?,
            None => num.parse::<u32>().ok()?,
        };
        char::from_u32(code)?
    } else {
        NAMED_ENTITIES.iter().find(|(n, _)| *n == name).map(|&(_, c)| c)?
    };
    Some((decoded, semi + 1))
}

fn starts_with(chars: &[char], at: usize, pat: &str) -> bool {
    pat.chars().enumerate().all(|(k, p)| chars.get(at + k) == Some(&p))
}

fn find(chars: &[char], from: usize, pat: &str) -> Option<usize> {
    (from..chars.len()).find(|&k| starts_with(chars, k, pat))
}

fn find_ci(chars: &[char], from: usize, pat: &str) -> Option<usize> {
    let pat: Vec<char> = pat.chars().collect();
    (from..chars.len())
        .find(|&k| pat.iter().enumerate().all(|(o, p)| chars.get(k + o).is_some_and(|c| c.eq_ignore_ascii_case(p))))
}
