//! Client for an external diacritization service.
//!
//! Wire format: `POST` with body `{"lines": [...]}`, answered by
//! `{"lines": [...]}` with the same number of lines. An optional bearer
//! token is read from `PHONIKUD_DIACRITIZER_TOKEN`.

use std::time::Duration;

use nikud_core::apply_defaults;
use nikud_core::text::{normalize, validate_line, Letter};
use serde::{Deserialize, Serialize};

pub const URL_ENV: &str = "PHONIKUD_DIACRITIZER_URL";
pub const TOKEN_ENV: &str = "PHONIKUD_DIACRITIZER_TOKEN";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemoteConfig {
    pub url: String,
    pub timeout: Duration,
    /// Lines per request.
    pub batch_lines: usize,
    /// Requests allowed in flight at once.
    pub in_flight: usize,
    pub token: Option<String>,
}

impl RemoteConfig {
    pub fn new(url: impl Into<String>) -> Self {
        RemoteConfig {
            url: url.into(),
            timeout: Duration::from_millis(5000),
            batch_lines: 64,
            in_flight: 4,
            token: std::env::var(TOKEN_ENV).ok().filter(|t| !t.is_empty()),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.timeout.is_zero() {
            return Err("diacritizer timeout must be positive".into());
        }
        if self.batch_lines == 0 || self.in_flight == 0 {
            return Err("diacritizer batch size and in-flight limit must be at least 1".into());
        }
        if !(self.url.starts_with("http://") || self.url.starts_with("https://")) {
            return Err(format!(
                "diacritizer URL {:?} is not an http(s) URL",
                self.url
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RemoteError {
    #[error("batch {batch}: request timed out")]
    Timeout { batch: usize },
    #[error("batch {batch}: HTTP status {code}")]
    HttpStatus { batch: usize, code: u16 },
    #[error("batch {batch}: protocol error: {reason}")]
    ProtocolError { batch: usize, reason: String },
}

impl RemoteError {
    pub fn batch(&self) -> usize {
        match self {
            RemoteError::Timeout { batch }
            | RemoteError::HttpStatus { batch, .. }
            | RemoteError::ProtocolError { batch, .. } => *batch,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Lines {
    lines: Vec<String>,
}

pub struct RemoteClient {
    client: reqwest::blocking::Client,
    config: RemoteConfig,
}

impl RemoteClient {
    pub fn new(config: RemoteConfig) -> Result<Self, String> {
        config.validate()?;
        let client = reqwest::blocking::Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| e.to_string())?;
        Ok(RemoteClient { client, config })
    }

    pub fn config(&self) -> &RemoteConfig {
        &self.config
    }

    /// One request. The answer must have as many lines as the request.
    pub fn request(&self, batch: usize, lines: &[String]) -> Result<Vec<String>, RemoteError> {
        let mut req = self.client.post(&self.config.url).json(&Lines {
            lines: lines.to_vec(),
        });
        if let Some(token) = &self.config.token {
            req = req.bearer_auth(token);
        }
        let classify = |e: reqwest::Error| {
            if e.is_timeout() {
                RemoteError::Timeout { batch }
            } else {
                RemoteError::ProtocolError {
                    batch,
                    reason: e.to_string(),
                }
            }
        };
        let resp = req.send().map_err(classify)?;
        let status = resp.status();
        if !status.is_success() {
            return Err(RemoteError::HttpStatus {
                batch,
                code: status.as_u16(),
            });
        }
        let body = resp.bytes().map_err(classify)?;
        let parsed: Lines =
            serde_json::from_slice(&body).map_err(|e| RemoteError::ProtocolError {
                batch,
                reason: format!("bad response body: {e}"),
            })?;
        if parsed.lines.len() != lines.len() {
            return Err(RemoteError::ProtocolError {
                batch,
                reason: format!(
                    "sent {} lines, received {}",
                    lines.len(),
                    parsed.lines.len()
                ),
            });
        }
        Ok(parsed.lines)
    }
}

/// A problem with one input line, by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diacritized {
    pub lines: Vec<String>,
    pub diagnostics: Vec<LineDiagnostic>,
    pub batch_errors: Vec<RemoteError>,
}

fn letters(s: &str) -> Vec<char> {
    s.chars()
        .filter(|c| Letter::from_char(*c).is_some())
        .collect()
}

/// Checks one returned line against its input.
pub fn check_returned_line(input: &str, returned: &str) -> Result<String, String> {
    let out = normalize(returned);
    validate_line(&out).map_err(|(span, e)| format!("bytes {}..{}: {e}", span.start, span.end))?;
    if letters(&out) != letters(input) {
        return Err("letters differ from the input".into());
    }
    Ok(out)
}

fn finish_batch(
    out: &mut Diacritized,
    batch: usize,
    first: usize,
    chunk: &[String],
    result: Result<Vec<String>, RemoteError>,
) {
    match result {
        Ok(returned) => {
            for (i, (input, got)) in chunk.iter().zip(&returned).enumerate() {
                match check_returned_line(input, got) {
                    Ok(line) => out.lines.push(line),
                    Err(reason) => {
                        out.diagnostics.push(LineDiagnostic {
                            line: first + i,
                            message: format!(
                                "{}; using defaults",
                                RemoteError::ProtocolError { batch, reason }
                            ),
                        });
                        out.lines.push(apply_defaults(input));
                    }
                }
            }
        }
        Err(e) => {
            for (i, input) in chunk.iter().enumerate() {
                out.diagnostics.push(LineDiagnostic {
                    line: first + i,
                    message: format!("{e}; using defaults"),
                });
                out.lines.push(apply_defaults(input));
            }
            out.batch_errors.push(e);
        }
    }
}

/// Diacritizes `lines` in batches, with at most `in_flight` requests open.
/// Failed batches and invalid lines fall back to the defaults provider; the
/// result always has one line per input, in input order.
pub fn diacritize_remote(client: &RemoteClient, lines: &[String]) -> Diacritized {
    let mut out = Diacritized::default();
    let size = client.config.batch_lines.max(1);
    let batches: Vec<&[String]> = lines.chunks(size).collect();
    for (wave_index, wave) in batches.chunks(client.config.in_flight.max(1)).enumerate() {
        let base = wave_index * client.config.in_flight.max(1);
        let results: Vec<Result<Vec<String>, RemoteError>> = std::thread::scope(|s| {
            let handles: Vec<_> = wave
                .iter()
                .enumerate()
                .map(|(k, chunk)| s.spawn(move || client.request(base + k, chunk)))
                .collect();
            handles
                .into_iter()
                .enumerate()
                .map(|(k, h)| {
                    h.join().unwrap_or_else(|_| {
                        Err(RemoteError::ProtocolError {
                            batch: base + k,
                            reason: "request thread panicked".into(),
                        })
                    })
                })
                .collect()
        });
        for (k, (chunk, result)) in wave.iter().zip(results).enumerate() {
            let batch = base + k;
            finish_batch(&mut out, batch, batch * size, chunk, result);
        }
    }
    out
}
