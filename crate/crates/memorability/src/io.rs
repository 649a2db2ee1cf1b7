//! File formats: JSON-lines scripts, memorable lists and pairs, count TSVs,
//! `token_TAG` tagged text and plain sentence files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use memorability_core::corpus::{MemorableList, Script, ScriptLine};
use memorability_core::tagger::{TaggedQuote, TaggedSentence};
use memorability_core::QuotePair;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| AppError::io(path, e))
}

/// Non-blank lines with their 1-based line numbers.
fn lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| AppError::io(path, e))?;
        if !line.trim().is_empty() {
            out.push((i + 1, line));
        }
    }
    Ok(out)
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    lines(path)?
        .into_iter()
        .map(|(n, l)| serde_json::from_str(&l).map_err(|e| AppError::parse(path, n, e.to_string())))
        .collect()
}

pub fn to_jsonl<T: Serialize>(items: &[T]) -> Vec<u8> {
    let mut out = Vec::new();
    for it in items {
        serde_json::to_writer(&mut out, it).expect("serializable");
        out.push(b'\n');
    }
    out
}

#[derive(Deserialize)]
struct ScriptRecord {
    movie_id: String,
    line_index: u32,
    speaker: String,
    text: String,
}

/// Scripts keyed by movie id. Lines may arrive in any order; duplicate line
/// indices within a movie are an error.
pub fn read_scripts(path: &Path) -> Result<BTreeMap<String, Script>> {
    let records: Vec<ScriptRecord> = read_jsonl(path)?;
    let mut by_movie: BTreeMap<String, Vec<ScriptLine>> = BTreeMap::new();
    for r in records {
        by_movie.entry(r.movie_id).or_default().push(ScriptLine {
            line_index: r.line_index,
            speaker: r.speaker,
            text: r.text,
        });
    }
    by_movie
        .into_iter()
        .map(|(id, mut lines)| {
            lines.sort_by_key(|l| l.line_index);
            let script = Script::new(id.clone(), lines).map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?;
            Ok((id, script))
        })
        .collect()
}

#[derive(Deserialize)]
struct MemorableRecord {
    movie_id: String,
    entry_text: String,
}

pub fn read_memorable(path: &Path) -> Result<BTreeMap<String, MemorableList>> {
    let records: Vec<MemorableRecord> = read_jsonl(path)?;
    let mut out: BTreeMap<String, MemorableList> = BTreeMap::new();
    for r in records {
        let list = out.entry(r.movie_id.clone()).or_insert_with(|| MemorableList {
            movie_id: r.movie_id,
            entries: Vec::new(),
        });
        list.entries.push(r.entry_text);
    }
    Ok(out)
}

/// `quote_id<TAB>count` lines; a header line is allowed.
pub fn read_counts(path: &Path) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for (n, line) in lines(path)? {
        let mut cols = line.split('\t');
        let (Some(id), Some(count), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(AppError::parse(path, n, "expected quote_id<TAB>count"));
        };
        match count.trim().parse::<u64>() {
            Ok(c) => {
                out.insert(id.trim().to_string(), c);
            }
            Err(_) if n == 1 => continue,
            Err(e) => return Err(AppError::parse(path, n, format!("bad count {count:?}: {e}"))),
        }
    }
    Ok(out)
}

pub fn read_pairs(path: &Path) -> Result<Vec<QuotePair>> {
    read_jsonl(path)
}

/// Splits `token_TAG` at the last underscore.
fn split_token(tok: &str) -> Option<(&str, &str)> {
    let i = tok.rfind('_')?;
    let (w, t) = (&tok[..i], &tok[i + 1..]);
    (!w.is_empty() && !t.is_empty()).then_some((w, t))
}

fn tagged_lines(path: &Path) -> Result<Vec<Vec<(String, String)>>> {
    lines(path)?
        .into_iter()
        .map(|(n, line)| {
            line.split(' ')
                .filter(|t| !t.is_empty())
                .map(|tok| {
                    split_token(tok)
                        .map(|(w, t)| (w.to_string(), t.to_string()))
                        .ok_or_else(|| AppError::parse(path, n, format!("malformed token {tok:?}")))
                })
                .collect()
        })
        .collect()
}

/// Tagger training data: one `token_TAG` sentence per line.
pub fn read_tagged_sentences(path: &Path) -> Result<Vec<TaggedSentence>> {
    Ok(tagged_lines(path)?
        .into_iter()
        .map(|s| {
            let (tokens, tags) = s.into_iter().unzip();
            TaggedSentence { tokens, tags }
        })
        .collect())
}

/// Pre-tagged quotes, bypassing the built-in tagger.
pub fn ingest_pretagged(path: &Path) -> Result<Vec<TaggedQuote>> {
    Ok(tagged_lines(path)?.iter().map(|s| TaggedQuote::from_pretagged(s)).collect())
}

/// One sentence per non-blank line.
pub fn read_sentences(path: &Path) -> Result<Vec<String>> {
    Ok(lines(path)?.into_iter().map(|(_, l)| l.trim().to_string()).collect())
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| AppError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| AppError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| AppError::io(path, e))?;
    tmp.persist(path).map_err(|e| AppError::io(path, e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable");
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_reader(open(path)?).map_err(|e| AppError::parse(path, e.line(), e.to_string()))
}
