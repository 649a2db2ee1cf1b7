use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::service::{Choice, Order};
use crate::error::{AppError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum Event {
    Served {
        subject_id: String,
        pair_id: String,
        presented_order: Order,
        timestamp: u64,
    },
    Judgment {
        subject_id: String,
        pair_id: String,
        chosen_position: Choice,
        presented_order: Order,
        correct: bool,
        timestamp: u64,
    },
}

/// Append-only JSON-lines file. Every append is flushed to disk before it
/// returns.
#[derive(Debug)]
pub struct EventLog {
    path: PathBuf,
    file: File,
}

impl EventLog {
    /// Opens (creating if needed) and replays the log. A final line cut off
    /// by a crash is dropped; damage anywhere else is an error.
    pub fn open(path: &Path) -> Result<(Self, Vec<Event>)> {
        let mut events = Vec::new();
        let mut valid_len = 0u64;
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(|e| AppError::io(path, e))?);
            let lines: Vec<String> = reader
                .split(b'\n')
                .map(|l| l.map(|b| String::from_utf8_lossy(&b).into_owned()))
                .collect::<std::io::Result<_>>()
                .map_err(|e| AppError::io(path, e))?;
            let n = lines.len();
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    valid_len += line.len() as u64 + 1;
                    continue;
                }
                match serde_json::from_str(line) {
                    Ok(ev) => {
                        events.push(ev);
                        valid_len += line.len() as u64 + 1;
                    }
                    Err(_) if i + 1 == n => break,
                    Err(e) => return Err(AppError::parse(path, i + 1, e.to_string())),
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| AppError::io(path, e))?;
        let len = file.metadata().map_err(|e| AppError::io(path, e))?.len();
        if valid_len < len {
            file.set_len(valid_len).map_err(|e| AppError::io(path, e))?;
        }
        Ok((
            EventLog {
                path: path.to_path_buf(),
                file,
            },
            events,
        ))
    }

    pub fn append(&mut self, event: &Event) -> Result<()> {
        let mut line = serde_json::to_vec(event).expect("serializable");
        line.push(b'\n');
        self.file.write_all(&line).map_err(|e| AppError::io(&self.path, e))?;
        self.file.sync_data().map_err(|e| AppError::io(&self.path, e))
    }
}
