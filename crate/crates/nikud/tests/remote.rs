mod common;

use std::net::TcpListener;
use std::time::Duration;

use common::{spawn, Behavior};
use nikud::remote::{
    check_returned_line, diacritize_remote, RemoteClient, RemoteConfig, RemoteError,
};
use nikud_core::{apply_defaults, normalize};

fn config(url: &str, batch_lines: usize) -> RemoteConfig {
    RemoteConfig {
        url: url.to_string(),
        timeout: Duration::from_millis(2000),
        batch_lines,
        in_flight: 2,
        token: None,
    }
}

fn lines(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn echo_passes_valid_lines_through() {
    let server = spawn(Behavior::Echo);
    let input = lines(&["בּוֹ\u{5AB}קֶר טוֹב", "שָׁלוֹם", "", "בְּ\u{5BD}לוֹ\u{5AB}נְדוֹן"]);
    let mut c = config(&server.url, 1);
    c.token = Some("secret".into());
    let out = diacritize_remote(&RemoteClient::new(c).unwrap(), &input);
    assert_eq!(
        out.lines,
        input.iter().map(|l| normalize(l)).collect::<Vec<_>>()
    );
    assert!(out.diagnostics.is_empty() && out.batch_errors.is_empty());
    let requests = server.requests();
    assert_eq!(requests.len(), 4);
    assert!(requests
        .iter()
        .all(|r| r.authorization.as_deref() == Some("Bearer secret")));
}

#[test]
fn server_error_falls_back_per_batch() {
    let server = spawn(Behavior::Status(500));
    let input = lines(&["בּוֹקֶר טוֹב", "שָׁלוֹם", "כָּתְבוּ"]);
    let out = diacritize_remote(&RemoteClient::new(config(&server.url, 2)).unwrap(), &input);
    assert_eq!(
        out.batch_errors,
        [
            RemoteError::HttpStatus {
                batch: 0,
                code: 500
            },
            RemoteError::HttpStatus {
                batch: 1,
                code: 500
            }
        ]
    );
    assert_eq!(
        out.lines,
        input.iter().map(|l| apply_defaults(l)).collect::<Vec<_>>()
    );
    assert_eq!(
        out.diagnostics.iter().map(|d| d.line).collect::<Vec<_>>(),
        [0, 1, 2]
    );
    assert!(out.diagnostics[2]
        .message
        .contains("batch 1: HTTP status 500"));
}

#[test]
fn slow_server_times_out() {
    let server = spawn(Behavior::Delay(Duration::from_millis(1500)));
    let mut c = config(&server.url, 8);
    c.timeout = Duration::from_millis(100);
    let input = lines(&["טוֹב"]);
    let out = diacritize_remote(&RemoteClient::new(c).unwrap(), &input);
    assert_eq!(out.batch_errors, [RemoteError::Timeout { batch: 0 }]);
    assert_eq!(out.lines, [apply_defaults("טוֹב")]);
}

#[test]
fn bad_bodies_are_protocol_errors() {
    for body in ["not json", "{\"lines\": [\"a\", \"b\"]}", "{\"text\": 1}"] {
        let server = spawn(Behavior::Raw(body));
        let input = lines(&["טוֹב"]);
        let out = diacritize_remote(&RemoteClient::new(config(&server.url, 4)).unwrap(), &input);
        assert!(
            matches!(
                out.batch_errors[..],
                [RemoteError::ProtocolError { batch: 0, .. }]
            ),
            "{body}: {:?}",
            out.batch_errors
        );
        assert_eq!(out.lines.len(), 1);
    }
}

#[test]
fn unreachable_server_is_a_protocol_error() {
    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let url = format!("http://127.0.0.1:{port}/");
    let out = diacritize_remote(
        &RemoteClient::new(config(&url, 4)).unwrap(),
        &lines(&["טוֹב"]),
    );
    assert!(matches!(
        out.batch_errors[..],
        [RemoteError::ProtocolError { batch: 0, .. }]
    ));
    assert_eq!(out.lines, [apply_defaults("טוֹב")]);
}

#[test]
fn malformed_line_falls_back_alone() {
    // Two vowels on one letter, and a line whose letters changed.
    fn reply(line: &str) -> String {
        match line {
            "בָּא" => "בָּ\u{5B7}א".to_string(),
            "טוֹב" => "שָׁלוֹם".to_string(),
            other => other.to_string(),
        }
    }
    let server = spawn(Behavior::Map(reply));
    let input = lines(&["בָּא", "שָׁלוֹם", "טוֹב"]);
    let out = diacritize_remote(&RemoteClient::new(config(&server.url, 8)).unwrap(), &input);
    assert!(out.batch_errors.is_empty());
    assert_eq!(
        out.lines,
        [
            apply_defaults("בָּא"),
            normalize("שָׁלוֹם"),
            apply_defaults("טוֹב")
        ]
    );
    assert_eq!(
        out.diagnostics.iter().map(|d| d.line).collect::<Vec<_>>(),
        [0, 2]
    );
    assert!(out
        .diagnostics
        .iter()
        .all(|d| d.message.contains("protocol error")));
}

#[test]
fn returned_lines_are_checked() {
    assert!(check_returned_line("בָּא", "בָּ\u{5B7}א").is_err());
    assert!(check_returned_line("בָּא", "גָּא").is_err());
    assert_eq!(check_returned_line("בא", "בָּא").unwrap(), normalize("בָּא"));
}

#[test]
fn config_is_validated() {
    let mut c = config("http://x/", 1);
    assert!(c.validate().is_ok());
    c.batch_lines = 0;
    assert!(c.validate().is_err());
    let mut c = config("ftp://x/", 1);
    assert!(c.validate().is_err());
    c.url = "http://x/".into();
    c.timeout = Duration::ZERO;
    assert!(RemoteClient::new(c).is_err());
}
