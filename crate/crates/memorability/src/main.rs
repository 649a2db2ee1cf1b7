use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use memorability::config::RunConfig;
use memorability::error::{AppError, Result};
use memorability::quiz::{EventLog, Quiz, DEFAULT_SESSION_LENGTH};
use memorability::{io, pipeline};

#[derive(Parser)]
#[command(name = "memorability", version, about = "Memorable-quote pair building, analysis and prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by the data commands. Flags override the config file.
#[derive(Args, Clone, Default)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scripts: Option<PathBuf>,
    #[arg(long)]
    memorable: Option<PathBuf>,
    #[arg(long)]
    counts: Option<PathBuf>,
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long)]
    newswire: Option<PathBuf>,
    #[arg(long)]
    slogans: Option<PathBuf>,
    #[arg(long)]
    tagger: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    folds: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Align memorable quotes to scripts and build matched pairs.
    BuildPairs(Common),
    /// Distinctiveness, generality and auxiliary comparisons.
    Analyze(Common),
    /// Cross-validated pairwise prediction for every feature set.
    Predict(Common),
    /// Train the part-of-speech tagger on a token_TAG corpus.
    TrainTagger {
        /// Defaults to the bundled corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the quiz HTTP service.
    Serve {
        #[arg(long)]
        pairs: PathBuf,
        /// Event log; created if missing and replayed if present.
        #[arg(long)]
        log: PathBuf,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// 0 picks a free port.
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = DEFAULT_SESSION_LENGTH)]
        session_length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Common {
    fn resolve(self, inputs: &[&str]) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        let set = |slot: &mut Option<PathBuf>, v: Option<PathBuf>| {
            if v.is_some() {
                *slot = v;
            }
        };
        set(&mut cfg.scripts, self.scripts);
        set(&mut cfg.memorable, self.memorable);
        set(&mut cfg.counts, self.counts);
        set(&mut cfg.pairs, self.pairs);
        set(&mut cfg.newswire, self.newswire);
        set(&mut cfg.slogans, self.slogans);
        set(&mut cfg.tagger, self.tagger);
        if let Some(o) = self.output {
            cfg.output = o;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(f) = self.folds {
            cfg.folds = f;
        }
        cfg.validate(inputs)?;
        Ok(cfg)
    }
}

const BUILD_INPUTS: &[&str] = &["scripts", "memorable", "counts"];
const ANALYSIS_INPUTS: &[&str] = &["pairs", "newswire", "slogans", "tagger", "tagger_corpus", "curse_words"];

fn json_line<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::BuildPairs(c) => json_line(&pipeline::cmd_build_pairs(&c.resolve(BUILD_INPUTS)?)?),
        Command::Analyze(c) => {
            let cfg = c.resolve(ANALYSIS_INPUTS)?;
            pipeline::cmd_analyze(&cfg)?;
            eprintln!("tables written to {}", cfg.output.display());
        }
        Command::Predict(c) => {
            let cfg = c.resolve(ANALYSIS_INPUTS)?;
            let p = pipeline::cmd_predict(&cfg)?;
            for f in &p.folds {
                println!("{}\t{}\t{:.2}", f.featureset.name(), f.feature_count, 100.0 * f.mean_accuracy);
            }
        }
        Command::TrainTagger {
            corpus,
            out,
            iterations,
            seed,
        } => {
            let corpus = corpus.unwrap_or_else(pipeline::bundled_tagger_corpus);
            let acc = pipeline::cmd_train_tagger(&corpus, &out, iterations, seed)?;
            println!("training accuracy {:.4}", acc);
        }
        Command::Serve {
            pairs,
            log,
            host,
            port,
            session_length,
            seed,
        } => {
            let pairs = io::read_pairs(&pairs)?;
            if pairs.is_empty() {
                return Err(AppError::Input("the pair file is empty".into()));
            }
            if session_length == 0 {
                return Err(AppError::Input("session length must be positive".into()));
            }
            let (log, history) = EventLog::open(&log)?;
            let quiz = Quiz::new(pairs, log, history, session_length, seed).map_err(|e| AppError::Input(e.to_string()))?;
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .map_err(|e| AppError::Input(format!("bad address: {e}")))?;
            let rt = tokio::runtime::Runtime::new().map_err(|e| AppError::io("tokio runtime", e))?;
            rt.block_on(async {
                let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| AppError::io(addr.to_string(), e))?;
                let local = listener.local_addr().map_err(|e| AppError::io(addr.to_string(), e))?;
                println!("listening on http://{local}");
                use std::io::Write;
                let _ = std::io::stdout().flush();
                memorability::quiz::serve(listener, quiz)
                    .await
                    .map_err(|e| AppError::io(local.to_string(), e))
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
