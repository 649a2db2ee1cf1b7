//! Tokenization and the quote/pair types shared by every other module.
//!
//! Tokens are lowercased for lexical modeling while the original surface
//! form is kept for the tagger. Contractions are split Penn-Treebank style
//! (`it's` → `it` `'s`, `don't` → `do` `n't`), so each clitic counts as a
//! word. Punctuation stays in the token stream but never counts as a word.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};

/// Whether a token counts towards a quote's length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Punct,
}

/// One token: lowercased text plus the original surface form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    text: String,
    surface: String,
    kind: TokenKind,
}

impl Token {
    fn from_chars(chars: &[char], kind: TokenKind) -> Self {
        let surface: String = chars.iter().collect();
        Token {
            text: surface.to_lowercase(),
            surface,
            kind,
        }
    }

    /// Lowercased form, used by every lexical model.
    pub fn text(&self) -> &str {
        &self.text
    }

    /// Form as written in the source, used by the tagger.
    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn kind(&self) -> TokenKind {
        self.kind
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

const CLITICS: [&str; 6] = ["s", "re", "ll", "ve", "d", "m"];

// Words after which a period does not end a sentence.
const ABBREVIATIONS: [&str; 19] = [
    "mr", "mrs", "ms", "dr", "st", "jr", "sr", "vs", "mt", "prof", "gen", "col", "lt", "sgt",
    "capt", "rev", "gov", "sen", "rep",
];

fn normalize_char(c: char) -> char {
    match c {
        '\u{2019}' | '\u{2018}' | '\u{02BC}' => '\'',
        c => c,
    }
}

fn lower(chars: &[char]) -> String {
    chars.iter().collect::<String>().to_lowercase()
}

/// Splits `text` into lowercased word, clitic and punctuation tokens.
///
/// Whitespace separates chunks; inside a chunk, apostrophes and hyphens
/// between letters and `.`/`,` between digits stay inside a word. Runs of a
/// repeated punctuation character (`...`, `--`, `!!`) form one token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = Vec::new();
    for chunk in text.split_whitespace() {
        chars.clear();
        chars.extend(chunk.chars().map(normalize_char));
        tokenize_chunk(&chars, &mut out);
    }
    out
}

fn tokenize_chunk(chars: &[char], out: &mut Vec<Token>) {
    let n = chars.len();
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if c.is_alphanumeric() {
            let start = i;
            i += 1;
            while i < n {
                let c = chars[i];
                if c.is_alphanumeric() {
                    i += 1;
                    continue;
                }
                let next_alnum = i + 1 < n && chars[i + 1].is_alphanumeric();
                let joins = match c {
                    '\'' | '-' => next_alnum,
                    '.' | ',' => {
                        next_alnum && chars[i - 1].is_ascii_digit() && chars[i + 1].is_ascii_digit()
                    }
                    _ => false,
                };
                if !joins {
                    break;
                }
                i += 1;
            }
            push_word(&chars[start..i], out);
        } else if c == '\'' {
            // A detached clitic, e.g. the second chunk of "it 's".
            let mut j = i + 1;
            while j < n && chars[j].is_alphabetic() {
                j += 1;
            }
            let ends_clean = j == n || !chars[j].is_alphanumeric();
            if j > i + 1 && ends_clean && CLITICS.contains(&lower(&chars[i + 1..j]).as_str()) {
                out.push(Token::from_chars(&chars[i..j], TokenKind::Word));
                i = j;
            } else {
                out.push(Token::from_chars(&chars[i..i + 1], TokenKind::Punct));
                i += 1;
            }
        } else {
            let start = i;
            while i < n && chars[i] == c {
                i += 1;
            }
            out.push(Token::from_chars(&chars[start..i], TokenKind::Punct));
        }
    }
}

fn push_word(chars: &[char], out: &mut Vec<Token>) {
    let n = chars.len();
    if n >= 3 && lower(&chars[n - 3..]) == "n't" {
        if n > 3 {
            push_word(&chars[..n - 3], out);
        }
        out.push(Token::from_chars(&chars[n - 3..], TokenKind::Word));
        return;
    }
    if let Some(pos) = chars.iter().rposition(|&c| c == '\'') {
        if pos > 0 && CLITICS.contains(&lower(&chars[pos + 1..]).as_str()) {
            push_word(&chars[..pos], out);
            out.push(Token::from_chars(&chars[pos..], TokenKind::Word));
            return;
        }
    }
    out.push(Token::from_chars(chars, TokenKind::Word));
}

/// Number of word tokens (clitics included, punctuation excluded).
pub fn count_words(tokens: &[Token]) -> usize {
    tokens.iter().filter(|t| t.is_word()).count()
}

/// Number of words in a quote.
pub fn word_count(quote: &Quote) -> usize {
    count_words(quote.tokens())
}

fn is_terminal(tok: &Token) -> bool {
    if tok.is_word() {
        return false;
    }
    let s = tok.text();
    // An ellipsis trails off mid-sentence as often as it ends one.
    if s.chars().all(|c| c == '.') && s.len() > 1 || s == "\u{2026}" {
        return false;
    }
    s.contains(['.', '!', '?'])
}

/// Splits a token sequence into sentences at `.`, `!` and `?`.
///
/// Trailing punctuation (closing quotes, repeated marks) stays with the
/// sentence it closes; a period after a common title abbreviation
/// (`Mr.`, `Dr.`) is not a boundary.
pub fn split_sentences(tokens: &[Token]) -> Vec<&[Token]> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < tokens.len() {
        let after_abbrev = i > 0
            && tokens[i].text() == "."
            && tokens[i - 1].is_word()
            && ABBREVIATIONS.contains(&tokens[i - 1].text());
        if is_terminal(&tokens[i]) && !after_abbrev {
            i += 1;
            while i < tokens.len() && !tokens[i].is_word() {
                i += 1;
            }
            out.push(&tokens[start..i]);
            start = i;
        } else {
            i += 1;
        }
    }
    if start < tokens.len() {
        out.push(&tokens[start..]);
    }
    out
}

/// True when the tokens hold at most one sentence containing words: no
/// sentence-final punctuation is followed by further words.
pub fn is_single_sentence(tokens: &[Token]) -> bool {
    split_sentences(tokens)
        .iter()
        .filter(|s| s.iter().any(Token::is_word))
        .count()
        <= 1
}

/// One script line (or any other short text) with its tokens.
///
/// The tokens are always `tokenize(text)`; they are computed on
/// construction and on deserialization, never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "QuoteRecord", into = "QuoteRecord")]
pub struct Quote {
    movie_id: String,
    line_index: u32,
    speaker: String,
    text: String,
    tokens: Vec<Token>,
    is_memorable: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct QuoteRecord {
    movie_id: String,
    line_index: u32,
    speaker: String,
    text: String,
    #[serde(default)]
    is_memorable: bool,
}

impl From<QuoteRecord> for Quote {
    fn from(r: QuoteRecord) -> Self {
        Quote::new(r.movie_id, r.line_index, r.speaker, r.text, r.is_memorable)
    }
}

impl From<Quote> for QuoteRecord {
    fn from(q: Quote) -> Self {
        QuoteRecord {
            movie_id: q.movie_id,
            line_index: q.line_index,
            speaker: q.speaker,
            text: q.text,
            is_memorable: q.is_memorable,
        }
    }
}

impl Quote {
    pub fn new(
        movie_id: impl Into<String>,
        line_index: u32,
        speaker: impl Into<String>,
        text: impl Into<String>,
        is_memorable: bool,
    ) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        Quote {
            movie_id: movie_id.into(),
            line_index,
            speaker: speaker.into(),
            text,
            tokens,
            is_memorable,
        }
    }

    /// A quote with no script provenance (slogans, newswire sentences).
    pub fn bare(text: impl Into<String>) -> Self {
        Quote::new("", 0, "", text, false)
    }

    pub fn movie_id(&self) -> &str {
        &self.movie_id
    }

    pub fn line_index(&self) -> u32 {
        self.line_index
    }

    pub fn speaker(&self) -> &str {
        &self.speaker
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_memorable(&self) -> bool {
        self.is_memorable
    }

    pub fn word_count(&self) -> usize {
        count_words(&self.tokens)
    }

    /// Stable identifier `movie_id:line_index`, the key of search-count files.
    pub fn id(&self) -> String {
        format!("{}:{}", self.movie_id, self.line_index)
    }

    /// Lowercased tokens for a lexical model, optionally without punctuation.
    pub fn lexical_tokens(&self, include_punct: bool) -> Vec<&str> {
        self.tokens
            .iter()
            .filter(|t| include_punct || t.is_word())
            .map(Token::text)
            .collect()
    }
}

/// A memorable quote and its non-memorable foil: same movie, same speaker,
/// same number of words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairRecord", into = "PairRecord")]
pub struct QuotePair {
    memorable: Quote,
    nonmemorable: Quote,
    line_distance: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PairRecord {
    memorable: Quote,
    nonmemorable: Quote,
    line_distance: u32,
}

impl TryFrom<PairRecord> for QuotePair {
    type Error = Error;

    fn try_from(r: PairRecord) -> Result<Self> {
        QuotePair::new(r.memorable, r.nonmemorable, r.line_distance)
    }
}

impl From<QuotePair> for PairRecord {
    fn from(p: QuotePair) -> Self {
        PairRecord {
            memorable: p.memorable,
            nonmemorable: p.nonmemorable,
            line_distance: p.line_distance,
        }
    }
}

impl QuotePair {
    /// Builds a pair, checking every pair invariant.
    pub fn new(memorable: Quote, nonmemorable: Quote, line_distance: u32) -> Result<Self> {
        if memorable.movie_id != nonmemorable.movie_id {
            return Err(invariant("pair quotes come from different movies"));
        }
        if memorable.speaker != nonmemorable.speaker {
            return Err(invariant("pair quotes have different speakers"));
        }
        if memorable.word_count() != nonmemorable.word_count() {
            return Err(invariant(format!(
                "pair word counts differ ({} vs {})",
                memorable.word_count(),
                nonmemorable.word_count()
            )));
        }
        if !memorable.is_memorable || nonmemorable.is_memorable {
            return Err(invariant("pair memorability labels are wrong"));
        }
        if line_distance == 0 {
            return Err(invariant("line distance must be positive"));
        }
        Ok(QuotePair {
            memorable,
            nonmemorable,
            line_distance,
        })
    }

    pub fn memorable(&self) -> &Quote {
        &self.memorable
    }

    pub fn nonmemorable(&self) -> &Quote {
        &self.nonmemorable
    }

    /// Separation counted in lines by the same speaker.
    pub fn line_distance(&self) -> u32 {
        self.line_distance
    }
}
