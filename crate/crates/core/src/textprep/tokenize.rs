use std::ops::Range;

use serde::Serialize;

use super::entities::parse_placeholder;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub position: usize,
    /// Half-open character offsets into the sentence text.
    pub char_span: Range<usize>,
}

impl Token {
    pub fn is_placeholder(&self) -> bool {
        parse_placeholder(&self.text).is_some()
    }

    /// Contains a letter or digit and is not a placeholder.
    pub fn is_word(&self) -> bool {
        !self.is_placeholder() && self.text.chars().any(char::is_alphanumeric)
    }
}

/// Whitespace tokenizer that peels leading and trailing punctuation off
/// into one-character tokens. Internal apostrophes, hyphens and other
/// marks stay inside the word; placeholders are never split.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut push = |range: Range<usize>| {
        tokens.push(Token { text: chars[range.clone()].iter().collect(), position: tokens.len(), char_span: range });
    };

    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let chunk_end = (i..chars.len()).find(|&k| chars[k].is_whitespace()).unwrap_or(chars.len());
        let mut k = i;
        let mut piece_start = i;
        while k < chunk_end {
            if chars[k] == '⟦' {
                if let Some(close) = (k..chunk_end).find(|&c| chars[c] == '⟧') {
                    let candidate: String = chars[k..=close].iter().collect();
                    if parse_placeholder(&candidate).is_some() {
                        split_piece(piece_start..k, &chars, &mut push);
                        push(k..close + 1);
                        k = close + 1;
                        piece_start = k;
                        continue;
                    }
                }
            }
            k += 1;
        }
        split_piece(piece_start..chunk_end, &chars, &mut push);
        i = chunk_end;
    }
    tokens
}

fn split_piece(range: Range<usize>, chars: &[char], push: &mut impl FnMut(Range<usize>)) {
    if range.is_empty() {
        return;
    }
    let slice = &chars[range.clone()];
    let Some(first) = slice.iter().position(|c| c.is_alphanumeric()) else {
        for k in range {
            push(k..k + 1);
        }
        return;
    };
    let last = slice.iter().rposition(|c| c.is_alphanumeric()).unwrap_or(first);
    let (core_start, core_end) = (range.start + first, range.start + last + 1);
    for k in range.start..core_start {
        push(k..k + 1);
    }
    push(core_start..core_end);
    for k in core_end..range.end {
        push(k..k + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn words(s: &str) -> Vec<String> {
        tokenize(s).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(words("cannot chage an"), ["cannot", "chage", "an"]);
        assert_eq!(words("Janice cheung <"), ["Janice", "cheung", "<"]);
        assert!(words("").is_empty());
    }

    #[test]
    fn punctuation_is_split_off() {
        assert_eq!(words("Hello, world!"), ["Hello", ",", "world", "!"]);
        assert_eq!(words("(see: this)"), ["(", "see", ":", "this", ")"]);
        assert_eq!(words("don't e-mail"), ["don't", "e-mail"]);
        assert_eq!(words("'quoted'"), ["'", "quoted", "'"]);
        assert_eq!(words("..."), [".", ".", "."]);
    }

    #[test]
    fn placeholders_stay_whole() {
        assert_eq!(words("visit ⟦URL:0⟧. now"), ["visit", "⟦URL:0⟧", ".", "now"]);
        assert_eq!(words("thanks⟦EMOTICON:2⟧"), ["thanks", "⟦EMOTICON:2⟧"]);
        let t = tokenize("go ⟦EMAIL:1⟧");
        assert!(t[1].is_placeholder());
        assert!(!t[1].is_word());
        assert!(t[0].is_word());
    }

    #[test]
    fn positions_and_spans() {
        let text = "Ok, ünïcode  words";
        let chars: Vec<char> = text.chars().collect();
        for (k, t) in tokenize(text).iter().enumerate() {
            assert_eq!(t.position, k);
            assert_eq!(chars[t.char_span.clone()].iter().collect::<String>(), t.text);
        }
    }

    proptest! {
        #[test]
        fn tokens_reassemble_to_the_sentence(s in "[a-zA-Z'.,!?()\\- ]{0,40}") {
            let tokens = tokenize(&s);
            let joined: String = tokens.iter().map(|t| t.text.as_str()).collect();
            let squeezed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, squeezed);
            for w in tokens.windows(2) {
                prop_assert!(w[0].char_span.end <= w[1].char_span.start);
            }
            prop_assert!(tokens.iter().all(|t| !t.text.is_empty()));
        }
    }
}
