//! Driver for an external NARS engine speaking a line protocol on stdin and
//! stdout (OpenNARS for Applications' `NAR shell` is the reference).
//!
//! One program per process: judgments, a cycle count, the question, a
//! second cycle count, then end of input. Answer lines look like
//!
//! ```text
//! Answer: <{a} --> p>. creationTime=2 Truth: frequency=1.000000, confidence=0.900000
//! Answer: None.
//! ```

use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc;
use std::sync::OnceLock;
use std::thread;
use std::time::{Duration, Instant};

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::narsese::Program;
use crate::Label;

/// Environment variable overriding the engine executable.
pub const ENGINE_PATH_ENV: &str = "NARS_ENGINE_PATH";

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    pub executable_path: PathBuf,
    pub args: Vec<String>,
    pub pre_query_cycles: u32,
    pub post_query_cycles: u32,
    pub timeout: Duration,
    pub true_threshold: f64,
    pub false_threshold: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            executable_path: PathBuf::from("NAR"),
            args: vec!["shell".to_string()],
            pre_query_cycles: 20,
            post_query_cycles: 20,
            timeout: Duration::from_millis(10_000),
            true_threshold: 0.50,
            false_threshold: 0.05,
        }
    }
}

impl EngineConfig {
    /// Defaults, with the executable taken from `NARS_ENGINE_PATH` if set.
    pub fn from_env() -> Self {
        let mut cfg = EngineConfig::default();
        if let Some(path) = std::env::var_os(ENGINE_PATH_ENV) {
            cfg.executable_path = PathBuf::from(path);
        }
        cfg
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let in_unit = |f: f64| (0.0..=1.0).contains(&f);
        if !in_unit(self.true_threshold) || !in_unit(self.false_threshold) {
            return Err(EngineError::Config("thresholds must lie in [0, 1]".into()));
        }
        if self.false_threshold >= self.true_threshold {
            return Err(EngineError::Config(
                "false threshold must be below the true threshold".into(),
            ));
        }
        if self.timeout.is_zero() {
            return Err(EngineError::Config("timeout must be positive".into()));
        }
        if self.pre_query_cycles == 0 || self.post_query_cycles == 0 {
            return Err(EngineError::Config("cycle counts must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineVerdict {
    pub answered: bool,
    pub frequency: Option<f64>,
    pub confidence: Option<f64>,
    /// Statement text of the selected answer.
    pub answer: Option<String>,
    pub raw_lines: Vec<String>,
    pub wall_time_ms: u64,
    pub timed_out: bool,
}

impl EngineVerdict {
    fn silent(raw_lines: Vec<String>, wall_time_ms: u64, timed_out: bool) -> Self {
        EngineVerdict {
            answered: false,
            frequency: None,
            confidence: None,
            answer: None,
            raw_lines,
            wall_time_ms,
            timed_out,
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("failed to start engine `{path}`: {reason}")]
    Spawn { path: String, reason: String },
    #[error("unparseable engine answer `{line}`: {reason}")]
    Protocol { line: String, reason: &'static str },
    #[error("engine I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid engine configuration: {0}")]
    Config(String),
    #[error("engine session is {0:?}")]
    SessionState(SessionState),
}

/// One recognized `Answer:` line.
#[derive(Clone, Debug, PartialEq)]
pub enum Answer {
    None,
    Truth {
        statement: String,
        frequency: f64,
        confidence: f64,
    },
}

fn truth_regexes() -> &'static (Regex, Regex) {
    static RE: OnceLock<(Regex, Regex)> = OnceLock::new();
    RE.get_or_init(|| {
        (
            Regex::new(r"frequency\s*=\s*([^\s,;]+)").expect("valid regex"),
            Regex::new(r"confidence\s*=\s*([^\s,;]+)").expect("valid regex"),
        )
    })
}

/// `Ok(None)` for lines that are not answers.
pub fn parse_answer_line(line: &str) -> Result<Option<Answer>, EngineError> {
    let Some(rest) = line.trim().strip_prefix("Answer:") else {
        return Ok(None);
    };
    let rest = rest.trim();
    if rest.starts_with("None") {
        return Ok(Some(Answer::None));
    }
    let protocol = |reason| EngineError::Protocol {
        line: line.to_string(),
        reason,
    };
    let (freq_re, conf_re) = truth_regexes();
    let number = |re: &Regex, missing: &'static str| -> Result<f64, EngineError> {
        let caps = re.captures(rest).ok_or_else(|| protocol(missing))?;
        let v: f64 = caps[1]
            .parse()
            .map_err(|_| protocol("truth value is not a number"))?;
        if !(0.0..=1.0).contains(&v) {
            return Err(protocol("truth value outside [0, 1]"));
        }
        Ok(v)
    };
    let frequency = number(freq_re, "missing frequency")?;
    let confidence = number(conf_re, "missing confidence")?;
    let cut = ["creationTime=", "Truth:", "frequency"]
        .iter()
        .filter_map(|m| rest.find(m))
        .min()
        .unwrap_or(rest.len());
    Ok(Some(Answer::Truth {
        statement: rest[..cut].trim().to_string(),
        frequency,
        confidence,
    }))
}

/// Builds a verdict from an engine transcript. Among answers carrying a
/// truth value the highest confidence wins, ties going to the later line.
pub fn verdict_from_transcript(
    lines: Vec<String>,
    wall_time_ms: u64,
    timed_out: bool,
) -> Result<EngineVerdict, EngineError> {
    if timed_out {
        return Ok(EngineVerdict::silent(lines, wall_time_ms, true));
    }
    let mut best: Option<(String, f64, f64)> = None;
    for line in &lines {
        if let Some(Answer::Truth {
            statement,
            frequency,
            confidence,
        }) = parse_answer_line(line)?
        {
            if best.as_ref().is_none_or(|(_, _, c)| confidence >= *c) {
                best = Some((statement, frequency, confidence));
            }
        }
    }
    Ok(match best {
        Some((statement, f, c)) => EngineVerdict {
            answered: true,
            frequency: Some(f),
            confidence: Some(c),
            answer: Some(statement),
            raw_lines: lines,
            wall_time_ms,
            timed_out: false,
        },
        None => EngineVerdict::silent(lines, wall_time_ms, false),
    })
}

/// Input lines for one program: judgments, pre-query cycles, question,
/// post-query cycles.
pub fn program_commands(program: &Program, cfg: &EngineConfig) -> Vec<String> {
    let mut lines = program.lines();
    let query = lines.pop().expect("program has a query");
    lines.push(cfg.pre_query_cycles.to_string());
    lines.push(query);
    lines.push(cfg.post_query_cycles.to_string());
    lines
}

/// Frequency to label: at least `true_threshold` is True, at most
/// `false_threshold` is False, anything between (or no answer) Uncertain.
pub fn map_label(v: &EngineVerdict, cfg: &EngineConfig) -> Label {
    match v.frequency {
        Some(f) if v.answered => {
            if f >= cfg.true_threshold {
                Label::True
            } else if f <= cfg.false_threshold {
                Label::False
            } else {
                Label::Uncertain
            }
        }
        _ => Label::Uncertain,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionState {
    Idle,
    Running,
    Closed,
}

/// A live engine process. Each session runs exactly one program, so no
/// memory carries over between instances.
pub struct EngineSession {
    child: Child,
    stdin: Option<ChildStdin>,
    lines_sent: usize,
    state: SessionState,
    timeout: Duration,
}

impl EngineSession {
    pub fn spawn(cfg: &EngineConfig) -> Result<Self, EngineError> {
        cfg.validate()?;
        let mut child = Command::new(&cfg.executable_path)
            .args(&cfg.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| EngineError::Spawn {
                path: cfg.executable_path.display().to_string(),
                reason: e.to_string(),
            })?;
        let stdin = child.stdin.take();
        Ok(EngineSession {
            child,
            stdin,
            lines_sent: 0,
            state: SessionState::Idle,
            timeout: cfg.timeout,
        })
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn lines_sent(&self) -> usize {
        self.lines_sent
    }

    /// Sends `commands`, closes the engine's input and collects output until
    /// the engine exits or the timeout elapses. A timed-out run kills the
    /// process and yields an unanswered verdict.
    pub fn run(mut self, commands: Vec<String>) -> Result<EngineVerdict, EngineError> {
        if self.state != SessionState::Idle {
            return Err(EngineError::SessionState(self.state));
        }
        self.state = SessionState::Running;
        let start = Instant::now();
        let deadline = start + self.timeout;

        let stdout = self.child.stdout.take().expect("stdout is piped");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });

        let mut stdin = self.stdin.take().expect("stdin is piped");
        self.lines_sent = commands.len();
        // A separate writer keeps a stalled engine from blocking us past the
        // deadline. Broken pipes just mean the engine stopped reading.
        thread::spawn(move || {
            for c in commands {
                if writeln!(stdin, "{c}").is_err() {
                    return;
                }
            }
            let _ = stdin.flush();
        });

        let mut lines = Vec::new();
        let mut timed_out = false;
        loop {
            let now = Instant::now();
            if now >= deadline {
                timed_out = true;
                break;
            }
            match rx.recv_timeout(deadline - now) {
                Ok(Ok(line)) => lines.push(line),
                Ok(Err(e)) => {
                    self.close();
                    return Err(e.into());
                }
                Err(mpsc::RecvTimeoutError::Timeout) => {
                    timed_out = true;
                    break;
                }
                Err(mpsc::RecvTimeoutError::Disconnected) => break,
            }
        }
        if timed_out {
            let _ = self.child.kill();
        }
        self.close();
        let elapsed = start.elapsed().as_millis() as u64;
        verdict_from_transcript(lines, elapsed, timed_out)
    }

    fn close(&mut self) {
        let _ = self.child.wait();
        self.state = SessionState::Closed;
    }
}

impl Drop for EngineSession {
    fn drop(&mut self) {
        if self.state != SessionState::Closed {
            let _ = self.child.kill();
            let _ = self.child.wait();
        }
    }
}

/// Runs `program` in a fresh engine process.
pub fn execute(program: &Program, cfg: &EngineConfig) -> Result<EngineVerdict, EngineError> {
    EngineSession::spawn(cfg)?.run(program_commands(program, cfg))
}

/// Same answer extraction as [`execute`], fed from a scripted transcript
/// instead of a process. The program is not inspected; the script stands in
/// for whatever the engine would have printed for it.
pub fn execute_with_mock(
    _program: &Program,
    script: &[&str],
) -> Result<EngineVerdict, EngineError> {
    let lines = script.iter().map(|s| s.to_string()).collect();
    verdict_from_transcript(lines, 0, false)
}
