mod common;

use std::time::Duration;

use common::{completion, serve};
use mcda::llm::{ask, ask_with_key, ChatConfig, ChatError, RetryConfig, Transcript};
use mcda::ErrorKind;

fn config(url: &str) -> ChatConfig {
    let mut c = ChatConfig::new(url, "test-model");
    c.retry = RetryConfig {
        max_attempts: 3,
        base_delay: Duration::from_millis(5),
        max_delay: Duration::from_millis(20),
    };
    c.timeout = Duration::from_secs(5);
    c
}

#[test]
fn echo_ok() {
    let server = serve(vec![(200, completion("OK"))]);
    let t = ask_with_key(&config(&server.url), "sk-1", "Which methods agree?").unwrap();
    assert_eq!(t.response, "OK");
    assert_eq!(t.prompt, "Which methods agree?");
    assert_eq!(t.config.model_name, "test-model");

    let req = &server.requests.lock().unwrap()[0];
    assert!(req.head.starts_with("POST /v1/chat/completions"));
    let body: serde_json::Value = serde_json::from_str(&req.body).unwrap();
    assert_eq!(body["model"], "test-model");
    assert_eq!(body["messages"].as_array().unwrap().len(), 1);
    assert_eq!(body["messages"][0]["role"], "user");
    assert_eq!(body["messages"][0]["content"], "Which methods agree?");
    assert_eq!(body["temperature"], 0.0);
}

#[test]
fn transcript_never_holds_the_key() {
    let server = serve(vec![(200, completion("fine"))]);
    let t = ask_with_key(&config(&server.url), "sk-very-secret", "q").unwrap();
    let json = serde_json::to_string(&t).unwrap();
    assert!(!json.contains("sk-very-secret"));
    let back: Transcript = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
}

#[test]
fn server_errors_are_retried_then_reported() {
    let server = serve(vec![(500, "down".into())]);
    let err = ask_with_key(&config(&server.url), "k", "q").unwrap_err();
    match &err {
        ChatError::Status { status, attempts, .. } => {
            assert_eq!(*status, 500);
            assert_eq!(*attempts, 3);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(err.kind(), ErrorKind::Network);
    assert_eq!(server.requests.lock().unwrap().len(), 3);
}

#[test]
fn transient_failure_then_success() {
    let server = serve(vec![(503, "busy".into()), (429, "slow down".into()), (200, completion("third time"))]);
    let t = ask_with_key(&config(&server.url), "k", "q").unwrap();
    assert_eq!(t.response, "third time");
    assert_eq!(server.requests.lock().unwrap().len(), 3);
}

#[test]
fn client_errors_are_not_retried() {
    let server = serve(vec![(401, "bad key".into())]);
    let err = ask_with_key(&config(&server.url), "k", "q").unwrap_err();
    assert!(matches!(err, ChatError::Status { status: 401, attempts: 1, .. }), "{err:?}");
    assert_eq!(server.requests.lock().unwrap().len(), 1);
}

#[test]
fn malformed_body_is_a_data_error() {
    let server = serve(vec![(200, "{\"choices\": []}".into())]);
    let err = ask_with_key(&config(&server.url), "k", "q").unwrap_err();
    assert!(matches!(err, ChatError::MalformedResponse(_)));
    assert_eq!(err.kind(), ErrorKind::Data);

    let server = serve(vec![(200, "not json".into())]);
    assert!(matches!(ask_with_key(&config(&server.url), "k", "q"), Err(ChatError::MalformedResponse(_))));
}

#[test]
fn connection_refused_is_a_network_error() {
    // bind then drop to get a port nobody listens on
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let err = ask_with_key(&config(&format!("http://127.0.0.1:{port}/v1")), "k", "q").unwrap_err();
    assert!(matches!(err, ChatError::Transport { attempts: 3, .. }), "{err:?}");
    assert_eq!(err.kind(), ErrorKind::Network);
}

#[test]
fn missing_key_fails_fast() {
    let server = serve(vec![(200, completion("OK"))]);
    let mut c = config(&server.url);
    c.api_key_env = "MCDA_TEST_DEFINITELY_UNSET".into();
    std::env::remove_var(&c.api_key_env);
    let err = ask(&c, "q").unwrap_err();
    assert!(matches!(err, ChatError::MissingKey(ref v) if v == "MCDA_TEST_DEFINITELY_UNSET"));
    assert_eq!(err.kind(), ErrorKind::Usage);
    assert!(server.requests.lock().unwrap().is_empty());
}
