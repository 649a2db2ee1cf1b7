use std::collections::{BTreeMap, BTreeSet};
use std::time::{SystemTime, UNIX_EPOCH};

use memorability_core::stats::binomial_test;
use memorability_core::QuotePair;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::log::{Event, EventLog};
use crate::error::AppError;

pub const DEFAULT_SESSION_LENGTH: usize = 12;

/// Order in which a pair was shown: memorable first (`MN`) or second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    MN,
    NM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    First,
    Second,
}

impl Order {
    fn is_correct(self, choice: Choice) -> bool {
        matches!((self, choice), (Order::MN, Choice::First) | (Order::NM, Choice::Second))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum QuizError {
    #[error("unknown pair {0}")]
    UnknownPair(String),
    #[error("pair {0} was not served to this subject")]
    NotServed(String),
    #[error("pair {0} was already judged by this subject")]
    Duplicate(String),
    #[error("subject id must not be empty")]
    EmptySubject,
    #[error(transparent)]
    Storage(#[from] AppError),
}

/// What the subject sees: an opaque id and two texts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairPayload {
    Pair {
        pair_id: String,
        quote_a: String,
        quote_b: String,
    },
    Done {
        done: bool,
        score: Score,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub matches: u64,
    pub total: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ack {
    pub accepted: bool,
    pub judged: usize,
    pub session_length: usize,
    /// Revealed once the session is over.
    pub score: Option<Score>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubjectStats {
    pub subject_id: String,
    pub matches: u64,
    pub total: u64,
    pub percent: f64,
    /// One-sided binomial test against guessing.
    pub p_value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pooled {
    pub matches: u64,
    pub total: u64,
    pub p_value: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub subjects: Vec<SubjectStats>,
    /// All judgments pooled into one binomial test.
    pub pooled: Option<Pooled>,
    /// Subjects scoring above one half, tested against a fair coin per
    /// subject.
    pub subjects_above_chance: Option<Pooled>,
    pub macro_average_percent: Option<f64>,
}

#[derive(Debug, Default)]
struct Subject {
    served: BTreeMap<usize, Order>,
    pending: Option<usize>,
    judged: BTreeMap<usize, bool>,
}

impl Subject {
    fn score(&self) -> Score {
        Score {
            matches: self.judged.values().filter(|&&c| c).count() as u64,
            total: self.judged.len() as u64,
        }
    }
}

/// Quiz state rebuilt from the event log on startup.
#[derive(Debug)]
pub struct Quiz {
    pairs: Vec<QuotePair>,
    session_length: usize,
    subjects: BTreeMap<String, Subject>,
    log: EventLog,
    rng: StdRng,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

impl Quiz {
    pub fn new(pairs: Vec<QuotePair>, log: EventLog, history: Vec<Event>, session_length: usize, seed: u64) -> Result<Self, QuizError> {
        let mut quiz = Quiz {
            pairs,
            session_length,
            subjects: BTreeMap::new(),
            log,
            rng: StdRng::seed_from_u64(seed),
        };
        for ev in history {
            match ev {
                Event::Served {
                    subject_id,
                    pair_id,
                    presented_order,
                    ..
                } => {
                    let i = quiz.pair_index(&pair_id)?;
                    let s = quiz.subjects.entry(subject_id).or_default();
                    s.served.insert(i, presented_order);
                    if !s.judged.contains_key(&i) {
                        s.pending = Some(i);
                    }
                }
                Event::Judgment {
                    subject_id,
                    pair_id,
                    correct,
                    ..
                } => {
                    let i = quiz.pair_index(&pair_id)?;
                    let s = quiz.subjects.entry(subject_id).or_default();
                    s.judged.insert(i, correct);
                    if s.pending == Some(i) {
                        s.pending = None;
                    }
                }
            }
        }
        Ok(quiz)
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn session_length(&self) -> usize {
        self.session_length
    }

    fn pair_index(&self, id: &str) -> Result<usize, QuizError> {
        id.strip_prefix('p')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&i| i < self.pairs.len() && id == format!("p{i}"))
            .ok_or_else(|| QuizError::UnknownPair(id.to_string()))
    }

    fn payload(&self, i: usize, order: Order) -> PairPayload {
        let p = &self.pairs[i];
        let (a, b) = match order {
            Order::MN => (p.memorable(), p.nonmemorable()),
            Order::NM => (p.nonmemorable(), p.memorable()),
        };
        PairPayload::Pair {
            pair_id: format!("p{i}"),
            quote_a: a.text().to_string(),
            quote_b: b.text().to_string(),
        }
    }

    /// The subject's next pair: an unanswered one again if there is one,
    /// otherwise a fresh random pair, until the session is full.
    pub fn next_pair(&mut self, subject_id: &str) -> Result<PairPayload, QuizError> {
        if subject_id.trim().is_empty() {
            return Err(QuizError::EmptySubject);
        }
        let subject = self.subjects.entry(subject_id.to_string()).or_default();
        if let Some(i) = subject.pending {
            let order = subject.served[&i];
            return Ok(self.payload(i, order));
        }
        let fresh: Vec<usize> = (0..self.pairs.len()).filter(|i| !subject.served.contains_key(i)).collect();
        if subject.judged.len() >= self.session_length || fresh.is_empty() {
            return Ok(PairPayload::Done {
                done: true,
                score: subject.score(),
            });
        }
        let i = fresh[self.rng.random_range(0..fresh.len())];
        let order = if self.rng.random_bool(0.5) { Order::MN } else { Order::NM };
        self.log.append(&Event::Served {
            subject_id: subject_id.to_string(),
            pair_id: format!("p{i}"),
            presented_order: order,
            timestamp: now(),
        })?;
        let subject = self.subjects.get_mut(subject_id).expect("inserted above");
        subject.served.insert(i, order);
        subject.pending = Some(i);
        Ok(self.payload(i, order))
    }

    /// Records a judgment; it is on disk before this returns.
    pub fn judge(&mut self, subject_id: &str, pair_id: &str, choice: Choice) -> Result<Ack, QuizError> {
        let i = self.pair_index(pair_id)?;
        let subject = self
            .subjects
            .get(subject_id)
            .ok_or_else(|| QuizError::NotServed(pair_id.to_string()))?;
        if subject.judged.contains_key(&i) {
            return Err(QuizError::Duplicate(pair_id.to_string()));
        }
        let order = *subject
            .served
            .get(&i)
            .ok_or_else(|| QuizError::NotServed(pair_id.to_string()))?;
        let correct = order.is_correct(choice);
        self.log.append(&Event::Judgment {
            subject_id: subject_id.to_string(),
            pair_id: pair_id.to_string(),
            chosen_position: choice,
            presented_order: order,
            correct,
            timestamp: now(),
        })?;
        let subject = self.subjects.get_mut(subject_id).expect("checked above");
        subject.judged.insert(i, correct);
        if subject.pending == Some(i) {
            subject.pending = None;
        }
        let judged = subject.judged.len();
        let served_all = subject.served.len() == self.pairs.len();
        let complete = judged >= self.session_length || served_all;
        Ok(Ack {
            accepted: true,
            judged,
            session_length: self.session_length,
            score: complete.then(|| subject.score()),
        })
    }

    pub fn stats(&self) -> Stats {
        let subjects: Vec<SubjectStats> = self
            .subjects
            .iter()
            .filter(|(_, s)| !s.judged.is_empty())
            .map(|(id, s)| {
                let Score { matches, total } = s.score();
                SubjectStats {
                    subject_id: id.clone(),
                    matches,
                    total,
                    percent: 100.0 * matches as f64 / total as f64,
                    p_value: binomial_test(matches, total, 0.5).expect("matches <= total").p_value,
                }
            })
            .collect();
        if subjects.is_empty() {
            return Stats::default();
        }
        let matches = subjects.iter().map(|s| s.matches).sum();
        let total = subjects.iter().map(|s| s.total).sum();
        let above: BTreeSet<&str> = subjects
            .iter()
            .filter(|s| 2 * s.matches > s.total)
            .map(|s| s.subject_id.as_str())
            .collect();
        let n = subjects.len() as u64;
        Stats {
            pooled: Some(Pooled {
                matches,
                total,
                p_value: binomial_test(matches, total, 0.5).expect("matches <= total").p_value,
            }),
            subjects_above_chance: Some(Pooled {
                matches: above.len() as u64,
                total: n,
                p_value: binomial_test(above.len() as u64, n, 0.5).expect("count <= n").p_value,
            }),
            macro_average_percent: Some(subjects.iter().map(|s| s.percent).sum::<f64>() / n as f64),
            subjects,
        }
    }
}
