//! A tiny HTTP/1.1 server standing in for the diacritizer service.
#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use serde_json::{json, Value};

#[derive(Clone)]
pub enum Behavior {
    /// Returns the request lines unchanged.
    Echo,
    /// Returns each line through the function.
    Map(fn(&str) -> String),
    Status(u16),
    /// Sleeps before echoing.
    Delay(Duration),
    /// Returns this body verbatim with status 200.
    Raw(&'static str),
}

#[derive(Debug, Clone)]
pub struct Received {
    pub lines: Vec<String>,
    pub authorization: Option<String>,
}

pub struct MockServer {
    pub url: String,
    pub received: Arc<Mutex<Vec<Received>>>,
}

impl MockServer {
    pub fn requests(&self) -> Vec<Received> {
        self.received.lock().unwrap().clone()
    }
}

pub fn spawn(behavior: Behavior) -> MockServer {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/diacritize", listener.local_addr().unwrap());
    let received = Arc::new(Mutex::new(Vec::new()));
    let log = Arc::clone(&received);
    thread::spawn(move || {
        for stream in listener.incoming().flatten() {
            let behavior = behavior.clone();
            let log = Arc::clone(&log);
            thread::spawn(move || {
                let _ = serve(stream, &behavior, &log);
            });
        }
    });
    MockServer { url, received }
}

fn serve(
    stream: TcpStream,
    behavior: &Behavior,
    log: &Mutex<Vec<Received>>,
) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut length = 0usize;
    let mut authorization = None;
    loop {
        let mut header = String::new();
        if reader.read_line(&mut header)? == 0 || header == "\r\n" {
            break;
        }
        if let Some((name, value)) = header.split_once(':') {
            let value = value.trim().to_string();
            match name.to_ascii_lowercase().as_str() {
                "content-length" => length = value.parse().unwrap_or(0),
                "authorization" => authorization = Some(value),
                _ => {}
            }
        }
    }
    let mut body = vec![0; length];
    reader.read_exact(&mut body)?;
    let request: Value = serde_json::from_slice(&body).unwrap_or(Value::Null);
    let lines: Vec<String> = request["lines"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter_map(|v| v.as_str().map(str::to_string))
                .collect()
        })
        .unwrap_or_default();
    log.lock().unwrap().push(Received {
        lines: lines.clone(),
        authorization,
    });

    let (status, body) = match behavior {
        Behavior::Echo => (200, json!({ "lines": lines }).to_string()),
        Behavior::Map(f) => (
            200,
            json!({ "lines": lines.iter().map(|l| f(l)).collect::<Vec<_>>() }).to_string(),
        ),
        Behavior::Status(code) => (*code, "{\"error\":\"boom\"}".to_string()),
        Behavior::Delay(d) => {
            thread::sleep(*d);
            (200, json!({ "lines": lines }).to_string())
        }
        Behavior::Raw(body) => (200, body.to_string()),
    };
    let mut stream = stream;
    write!(
        stream,
        "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    stream.flush()
}
