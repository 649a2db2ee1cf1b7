//! Helpers for the live-server and CLI tests.
#![allow(dead_code)]

use std::io::{BufRead, BufReader};
use std::path::Path;
use std::process::{Child, Command, Stdio};

use memorability_core::{Quote, QuotePair};

pub const BIN: &str = env!("CARGO_BIN_EXE_memorability");

/// `n` valid pairs with distinct texts; the memorable side says "zebra".
pub fn quiz_pairs(n: usize) -> Vec<QuotePair> {
    (0..n)
        .map(|i| {
            let m = Quote::new(format!("mv{i}"), 0, "ANN", format!("zebra number {i} speaks."), true);
            let q = Quote::new(format!("mv{i}"), 1, "ANN", format!("plain number {i} speaks."), false);
            QuotePair::new(m, q, 1).unwrap()
        })
        .collect()
}

pub fn write_pairs(path: &Path, pairs: &[QuotePair]) {
    std::fs::write(path, memorability::io::to_jsonl(pairs)).unwrap();
}

/// A running `serve` subprocess, killed on drop.
pub struct Server {
    pub child: Child,
    pub url: String,
}

impl Server {
    pub fn start(pairs: &Path, log: &Path, extra: &[&str]) -> Server {
        let mut child = Command::new(BIN)
            .arg("serve")
            .arg("--pairs")
            .arg(pairs)
            .arg("--log")
            .arg(log)
            .args(["--port", "0"])
            .args(extra)
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .unwrap();
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
        let url = line
            .trim()
            .strip_prefix("listening on ")
            .unwrap_or_else(|| panic!("unexpected banner {line:?}"))
            .to_string();
        Server { child, url }
    }

    pub fn get(&self, path: &str) -> reqwest::blocking::Response {
        reqwest::blocking::get(format!("{}{path}", self.url)).unwrap()
    }

    pub fn post(&self, path: &str, body: serde_json::Value) -> reqwest::blocking::Response {
        reqwest::blocking::Client::new()
            .post(format!("{}{path}", self.url))
            .json(&body)
            .send()
            .unwrap()
    }

    /// SIGKILL, no chance to clean up.
    pub fn kill(mut self) {
        self.child.kill().unwrap();
        self.child.wait().unwrap();
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// A small movie corpus written as the pipeline's input files. Every movie
/// yields exactly one pair: memorable line 4, foil line 2, distance 1.
/// Even-numbered movies get search counts that pass the filter.
pub fn write_movie_corpus(dir: &Path, movies: usize) {
    let mut scripts = String::new();
    let mut memorable = String::new();
    let mut counts = String::from("quote_id\tcount\n");
    let words = ["river", "lamp", "coin", "storm", "ghost", "apple", "train", "wolf"];
    for k in 0..movies {
        let w = words[k % words.len()];
        let lines = [
            ("ANN", "Where are you going?".to_string()),
            ("BOB", "Home.".to_string()),
            ("ANN", format!("the {w} car {k} moved.")),
            ("BOB", "Why would you say that?".to_string()),
            ("ANN", format!("zebra {k} {w} never lies.")),
            ("BOB", "Okay then, I guess we should go now.".to_string()),
        ];
        for (i, (speaker, text)) in lines.iter().enumerate() {
            scripts.push_str(
                &serde_json::json!({"movie_id": format!("m{k}"), "line_index": i, "speaker": speaker, "text": text})
                    .to_string(),
            );
            scripts.push('\n');
        }
        memorable.push_str(&serde_json::json!({"movie_id": format!("m{k}"), "entry_text": lines[4].1}).to_string());
        memorable.push('\n');
        if k % 2 == 0 {
            counts.push_str(&format!("m{k}:4\t12\nm{k}:2\t3\n"));
        }
    }
    std::fs::write(dir.join("scripts.jsonl"), scripts).unwrap();
    std::fs::write(dir.join("memorable.jsonl"), memorable).unwrap();
    std::fs::write(dir.join("counts.tsv"), counts).unwrap();
    std::fs::write(
        dir.join("newswire.txt"),
        "The company said profits rose in the third quarter.\n\
         Officials met on Tuesday to discuss the budget.\n\
         He said the plan was approved by the board.\n\
         Shares fell sharply after the report.\n",
    )
    .unwrap();
    std::fs::write(
        dir.join("slogans.txt"),
        "Just do it.\nThink different.\nA diamond is forever.\nYou deserve a break today.\n",
    )
    .unwrap();
}
