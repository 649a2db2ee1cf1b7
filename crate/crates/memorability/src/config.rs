//! Run configuration: a TOML file whose relative paths resolve against the
//! file's own directory, with command-line overrides applied on top.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{AppError, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TextFormat {
    /// One plain sentence per line, tagged by the built-in tagger.
    #[default]
    Plain,
    /// `token_TAG` lines; their tags are used as given.
    Tagged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Script lines, JSON-lines.
    pub scripts: Option<PathBuf>,
    /// Memorable-quote entries, JSON-lines.
    pub memorable: Option<PathBuf>,
    /// Search counts, TSV.
    pub counts: Option<PathBuf>,
    /// Pair dataset read by `analyze` and `predict`.
    pub pairs: Option<PathBuf>,
    /// Common-language text.
    pub newswire: Option<PathBuf>,
    pub newswire_format: TextFormat,
    pub slogans: Option<PathBuf>,
    pub slogans_format: TextFormat,
    /// A saved tagger model; trained from `tagger_corpus` when absent.
    pub tagger: Option<PathBuf>,
    pub tagger_corpus: Option<PathBuf>,
    pub tagger_iterations: usize,
    /// Extra curse words, one per line, added to the built-in list.
    pub curse_words: Option<PathBuf>,
    pub alpha: f64,
    pub align_threshold: f64,
    pub reuse_foils: bool,
    /// Keep punctuation tokens in language-model sequences.
    pub lm_punctuation: bool,
    pub include_possessive: bool,
    pub seed: u64,
    pub folds: usize,
    pub svm_c: f64,
    pub bow_min_count: u64,
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scripts: None,
            memorable: None,
            counts: None,
            pairs: None,
            newswire: None,
            newswire_format: TextFormat::Plain,
            slogans: None,
            slogans_format: TextFormat::Plain,
            tagger: None,
            tagger_corpus: None,
            tagger_iterations: 5,
            curse_words: None,
            alpha: 0.2,
            align_threshold: 0.2,
            reuse_foils: false,
            lm_punctuation: true,
            include_possessive: true,
            seed: 0,
            folds: 10,
            svm_c: 1.0,
            bow_min_count: 10,
            output: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| {
            let line = unknown_key_line(&text, e.message())
                .or_else(|| e.span().map(|s| text[..s.start].lines().count().max(1)))
                .unwrap_or(0);
            AppError::parse(path, line, e.message().to_string())
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve_against(base);
        Ok(cfg)
    }

    fn resolve_against(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.scripts,
            &mut self.memorable,
            &mut self.counts,
            &mut self.pairs,
            &mut self.newswire,
            &mut self.slogans,
            &mut self.tagger,
            &mut self.tagger_corpus,
            &mut self.curse_words,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        fix(&mut self.output);
    }

    /// The configured inputs among `keys` must exist and numeric settings
    /// must be sane.
    pub fn validate(&self, keys: &[&str]) -> Result<()> {
        for (key, p) in self.inputs() {
            if keys.contains(&key) && !p.exists() {
                return Err(AppError::Input(format!("{key}: {} does not exist", p.display())));
            }
        }
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(AppError::Input("alpha must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.align_threshold) {
            return Err(AppError::Input("align_threshold must lie in [0, 1]".into()));
        }
        if self.folds < 2 {
            return Err(AppError::Input("folds must be at least 2".into()));
        }
        if self.svm_c.is_nan() || self.svm_c <= 0.0 {
            return Err(AppError::Input("svm_c must be positive".into()));
        }
        if self.tagger_iterations == 0 {
            return Err(AppError::Input("tagger_iterations must be positive".into()));
        }
        Ok(())
    }

    fn inputs(&self) -> Vec<(&'static str, &Path)> {
        [
            ("scripts", &self.scripts),
            ("memorable", &self.memorable),
            ("counts", &self.counts),
            ("pairs", &self.pairs),
            ("newswire", &self.newswire),
            ("slogans", &self.slogans),
            ("tagger", &self.tagger),
            ("tagger_corpus", &self.tagger_corpus),
            ("curse_words", &self.curse_words),
        ]
        .into_iter()
        .filter_map(|(k, p)| p.as_deref().map(|p| (k, p)))
        .collect()
    }

    /// The path under `key`, or a bad-input error naming it.
    pub fn need<'a>(&self, key: &str, value: &'a Option<PathBuf>) -> Result<&'a Path> {
        value
            .as_deref()
            .ok_or_else(|| AppError::Input(format!("missing input: set `{key}` in the config or on the command line")))
    }
}

/// serde reports unknown keys against the whole table; find the key's line.
fn unknown_key_line(text: &str, message: &str) -> Option<usize> {
    let key = message.strip_prefix("unknown field `")?.split('`').next()?;
    text.lines().position(|l| {
        l.trim_start()
            .strip_prefix(key)
            .is_some_and(|rest| rest.trim_start().starts_with('='))
    })
    .map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_paths_follow_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "pairs = \"p.jsonl\"\nseed = 7\n").unwrap();
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.pairs.as_deref(), Some(dir.path().join("p.jsonl").as_path()));
        assert_eq!(cfg.output, dir.path().join("out"));
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.folds, 10);
        assert!(cfg.validate(&["pairs"]).is_err());
        assert!(cfg.validate(&["scripts"]).is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "seed = 1\nsede = 2\n").unwrap();
        let err = RunConfig::from_file(&path).unwrap_err();
        assert!(matches!(err, AppError::Parse { line: 2, .. }), "{err}");
    }
}
