//! Blocking chat-completions client.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ErrorKind;

pub const DEFAULT_API_KEY_ENV: &str = "MCDA_LLM_API_KEY";

pub const DISCLAIMER: &str =
    "Machine-generated response, stored verbatim. It may be inaccurate and must be verified before use.";

#[derive(Debug, Error)]
pub enum ChatError {
    #[error("invalid chat configuration: {0}")]
    InvalidConfig(String),
    #[error("API key missing: environment variable {0} is unset or empty")]
    MissingKey(String),
    #[error("request failed after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("endpoint returned HTTP {status} after {attempts} attempt(s): {body}")]
    Status { status: u16, attempts: u32, body: String },
    #[error("malformed chat response: {0}")]
    MalformedResponse(String),
}

impl ChatError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            ChatError::InvalidConfig(_) | ChatError::MissingKey(_) => ErrorKind::Usage,
            ChatError::Transport { .. } | ChatError::Status { .. } => ErrorKind::Network,
            ChatError::MalformedResponse(_) => ErrorKind::Data,
        }
    }
}

/// Retries with exponential backoff: the wait before attempt `i + 1` is
/// `base_delay * 2^(i-1)`, capped at `max_delay`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetryConfig {
    /// Total attempts, including the first.
    pub max_attempts: u32,
    #[serde(with = "secs")]
    pub base_delay: Duration,
    #[serde(with = "secs")]
    pub max_delay: Duration,
}

impl Default for RetryConfig {
    fn default() -> Self {
        RetryConfig {
            max_attempts: 3,
            base_delay: Duration::from_millis(500),
            max_delay: Duration::from_secs(8),
        }
    }
}

impl RetryConfig {
    fn delay(&self, attempt: u32) -> Duration {
        let factor = 2u32.saturating_pow(attempt.saturating_sub(1));
        self.base_delay.saturating_mul(factor).min(self.max_delay)
    }
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatConfig {
    pub endpoint_url: String,
    pub model_name: String,
    /// Name of the environment variable holding the API key.
    pub api_key_env: String,
    pub temperature: f64,
    #[serde(with = "secs")]
    pub timeout: Duration,
    #[serde(default)]
    pub retry: RetryConfig,
}

impl ChatConfig {
    pub fn new(endpoint_url: impl Into<String>, model_name: impl Into<String>) -> Self {
        ChatConfig {
            endpoint_url: endpoint_url.into(),
            model_name: model_name.into(),
            api_key_env: DEFAULT_API_KEY_ENV.to_string(),
            temperature: 0.0,
            timeout: Duration::from_secs(60),
            retry: RetryConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<(), ChatError> {
        let bad = |m: &str| Err(ChatError::InvalidConfig(m.to_string()));
        if self.endpoint_url.trim().is_empty() {
            return bad("endpoint_url is empty");
        }
        if self.model_name.trim().is_empty() {
            return bad("model_name is empty");
        }
        if self.api_key_env.trim().is_empty() {
            return bad("api_key_env is empty");
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return bad("temperature must be a finite number >= 0");
        }
        if self.timeout.is_zero() {
            return bad("timeout must be > 0");
        }
        if self.retry.max_attempts == 0 {
            return bad("retry.max_attempts must be >= 1");
        }
        Ok(())
    }

    pub fn snapshot(&self) -> ConfigSnapshot {
        ConfigSnapshot {
            endpoint_url: self.endpoint_url.clone(),
            model_name: self.model_name.clone(),
            api_key_env: self.api_key_env.clone(),
            temperature: self.temperature,
            timeout_secs: self.timeout.as_secs_f64(),
        }
    }
}

/// Configuration as recorded in a transcript. Only the name of the key
/// variable is kept, never the key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSnapshot {
    pub endpoint_url: String,
    pub model_name: String,
    pub api_key_env: String,
    pub temperature: f64,
    pub timeout_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub prompt: String,
    pub response: String,
    /// RFC 3339 UTC timestamp of the response.
    pub timestamp: String,
    pub config: ConfigSnapshot,
    pub disclaimer: String,
}

#[derive(Serialize)]
struct Message<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Serialize)]
struct Request<'a> {
    model: &'a str,
    messages: [Message<'a>; 1],
    temperature: f64,
}

#[derive(Deserialize)]
struct Response {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: ResponseMessage,
}

#[derive(Deserialize)]
struct ResponseMessage {
    content: Option<String>,
}

/// Reads the key from `config.api_key_env` and sends `prompt`. A missing
/// key fails before any network activity.
pub fn ask(config: &ChatConfig, prompt: &str) -> Result<Transcript, ChatError> {
    config.validate()?;
    let key = std::env::var(&config.api_key_env)
        .ok()
        .filter(|k| !k.trim().is_empty())
        .ok_or_else(|| ChatError::MissingKey(config.api_key_env.clone()))?;
    ask_with_key(config, &key, prompt)
}

enum Attempt {
    Done(String),
    Retry(ChatError),
    Fail(ChatError),
}

fn attempt(client: &reqwest::blocking::Client, config: &ChatConfig, key: &str, body: &Request<'_>, n: u32) -> Attempt {
    let resp = match client.post(&config.endpoint_url).bearer_auth(key).json(body).send() {
        Ok(r) => r,
        Err(e) => {
            let err = ChatError::Transport {
                attempts: n,
                // reqwest errors never contain request headers
                message: e.to_string(),
            };
            return if e.is_connect() || e.is_timeout() || e.is_request() {
                Attempt::Retry(err)
            } else {
                Attempt::Fail(err)
            };
        }
    };
    let status = resp.status();
    let text = match resp.text() {
        Ok(t) => t,
        Err(e) => {
            return Attempt::Retry(ChatError::Transport {
                attempts: n,
                message: e.to_string(),
            })
        }
    };
    if !status.is_success() {
        let err = ChatError::Status {
            status: status.as_u16(),
            attempts: n,
            body: text.chars().take(500).collect(),
        };
        return if status.is_server_error() || status.as_u16() == 429 {
            Attempt::Retry(err)
        } else {
            Attempt::Fail(err)
        };
    }
    let parsed: Response = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => return Attempt::Fail(ChatError::MalformedResponse(e.to_string())),
    };
    match parsed.choices.into_iter().next().and_then(|c| c.message.content) {
        Some(content) => Attempt::Done(content),
        None => Attempt::Fail(ChatError::MalformedResponse("no choices[0].message.content".into())),
    }
}

/// Sends one user message with an explicit key. Connection failures,
/// timeouts, HTTP 5xx and 429 are retried per `config.retry`.
pub fn ask_with_key(config: &ChatConfig, key: &str, prompt: &str) -> Result<Transcript, ChatError> {
    config.validate()?;
    if prompt.trim().is_empty() {
        return Err(ChatError::InvalidConfig("prompt is empty".into()));
    }
    let client = reqwest::blocking::Client::builder()
        .timeout(config.timeout)
        .build()
        .map_err(|e| ChatError::InvalidConfig(e.to_string()))?;
    let body = Request {
        model: &config.model_name,
        messages: [Message {
            role: "user",
            content: prompt,
        }],
        temperature: config.temperature,
    };
    let mut n = 1;
    loop {
        match attempt(&client, config, key, &body, n) {
            Attempt::Done(response) => {
                return Ok(Transcript {
                    prompt: prompt.to_string(),
                    response,
                    timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
                    config: config.snapshot(),
                    disclaimer: DISCLAIMER.to_string(),
                })
            }
            Attempt::Fail(e) => return Err(e),
            Attempt::Retry(e) if n >= config.retry.max_attempts => return Err(e),
            Attempt::Retry(_) => {
                std::thread::sleep(config.retry.delay(n));
                n += 1;
            }
        }
    }
}
