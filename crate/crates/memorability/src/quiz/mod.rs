//! The human quiz: serves randomized quote pairs to self-declared
//! subjects, records their judgments in an append-only log and reports how
//! often they agree with the memorable labels.

mod http;
mod log;
mod service;

pub use http::{router, serve};
pub use log::{Event, EventLog};
pub use service::{
    Ack, Choice, Order, PairPayload, Pooled, Quiz, QuizError, Score, Stats, SubjectStats, DEFAULT_SESSION_LENGTH,
};
