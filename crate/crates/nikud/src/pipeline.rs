//! Line pipeline: diacritize, then phonemize. The CLI and [`Session`] both
//! go through [`Pipeline::process`], so their output is the same.

use std::sync::{Arc, RwLock};

use nikud_core::diacritize::diacritize_local;
use nikud_core::{normalize, phonemize_text, Convention, Lexicon, ProviderKind};
use rayon::prelude::*;

use crate::remote::{diacritize_remote, RemoteClient, RemoteConfig};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub convention: Convention,
    pub provider: ProviderKind,
    /// Required when `provider` is remote.
    pub remote: Option<RemoteConfig>,
    pub lexicon: Lexicon,
    /// Worker threads; 0 lets the thread pool decide.
    pub jobs: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            convention: Convention::BROAD_SYLLABLE,
            provider: ProviderKind::Passthrough,
            remote: None,
            lexicon: Lexicon::builtin(),
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("session is closed")]
    ClosedSession,
}

/// Result for one input line.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineOutput {
    /// The line after diacritization.
    pub enhanced: String,
    pub ipa: String,
    pub diagnostics: Vec<String>,
}

pub struct Pipeline {
    convention: Convention,
    provider: ProviderKind,
    lexicon: Lexicon,
    client: Option<RemoteClient>,
    pool: rayon::ThreadPool,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        let client = match (config.provider, config.remote) {
            (ProviderKind::Remote, Some(remote)) => {
                Some(RemoteClient::new(remote).map_err(PipelineError::Config)?)
            }
            (ProviderKind::Remote, None) => {
                return Err(PipelineError::Config(
                    "the remote provider needs a diacritizer URL".into(),
                ))
            }
            _ => None,
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| PipelineError::Config(e.to_string()))?;
        Ok(Pipeline {
            convention: config.convention,
            provider: config.provider,
            lexicon: config.lexicon,
            client,
            pool,
        })
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Runs the provider over `lines`. Returns the enhanced lines and
    /// per-line provider diagnostics.
    pub fn diacritize(&self, lines: &[String]) -> (Vec<String>, Vec<Vec<String>>) {
        let mut diagnostics = vec![Vec::new(); lines.len()];
        let enhanced = match &self.client {
            Some(client) => {
                let d = diacritize_remote(client, lines);
                for diag in d.diagnostics {
                    diagnostics[diag.line].push(diag.message);
                }
                d.lines
            }
            None => self.pool.install(|| {
                lines
                    .par_iter()
                    .map(|l| diacritize_local(self.provider, &normalize(l)))
                    .collect()
            }),
        };
        (enhanced, diagnostics)
    }

    /// Diacritizes and phonemizes `lines`; one output per line, in order.
    pub fn process(&self, lines: &[String]) -> Vec<LineOutput> {
        let (enhanced, provider_diags) = self.diacritize(lines);
        self.pool.install(|| {
            enhanced
                .into_par_iter()
                .zip(provider_diags)
                .map(|(enhanced, mut diagnostics)| {
                    let p = phonemize_text(&enhanced, self.convention, &self.lexicon);
                    diagnostics.extend(p.diagnostics.iter().map(|d| d.to_string()));
                    LineOutput {
                        enhanced,
                        ipa: p.ipa,
                        diagnostics,
                    }
                })
                .collect()
        })
    }
}

/// Long-lived handle for library callers: build once, phonemize many times.
/// Shareable across threads; `close` waits for calls in progress.
#[derive(Clone)]
pub struct Session {
    inner: Arc<RwLock<Option<Pipeline>>>,
}

impl Session {
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        Ok(Session {
            inner: Arc::new(RwLock::new(Some(Pipeline::new(config)?))),
        })
    }

    fn with<T>(&self, f: impl FnOnce(&Pipeline) -> T) -> Result<T, PipelineError> {
        let guard = self.inner.read().unwrap_or_else(|e| e.into_inner());
        guard.as_ref().map(f).ok_or(PipelineError::ClosedSession)
    }

    /// Same bytes as `nikud phonemize` on the same text, minus the final
    /// newline.
    pub fn phonemize(&self, text: &str) -> Result<String, PipelineError> {
        self.with(|p| {
            let lines: Vec<String> = text.lines().map(str::to_string).collect();
            let out: Vec<String> = p.process(&lines).into_iter().map(|o| o.ipa).collect();
            out.join("\n")
        })
    }

    pub fn normalize(&self, text: &str) -> Result<String, PipelineError> {
        self.with(|_| normalize(text))
    }

    pub fn apply_defaults(&self, text: &str) -> Result<String, PipelineError> {
        self.with(|_| nikud_core::apply_defaults(text))
    }

    pub fn close(&self) {
        *self.inner.write().unwrap_or_else(|e| e.into_inner()) = None;
    }

    pub fn is_closed(&self) -> bool {
        self.inner.read().map_or(true, |g| g.is_none())
    }
}
