//! Helpers shared by the binary-level tests: running `mentor`, a served
//! instance, and a minimal HTTP/1.1 client.

#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::path::Path;
use std::process::{Child, Command, Output, Stdio};
use std::time::Duration;

pub const BIN: &str = env!("CARGO_BIN_EXE_mentor");

pub fn mentor(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run mentor")
}

pub fn mentor_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("run mentor");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

/// A `mentor serve` process, killed when dropped.
pub struct Server {
    child: Child,
    pub addr: SocketAddr,
}

impl Server {
    pub fn start(data: &Path) -> Server {
        let mut child = Command::new(BIN)
            .args(["serve", "--port", "0", "--data"])
            .arg(data)
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .expect("start server");
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
        let addr = line
            .trim()
            .strip_prefix("listening on http://")
            .unwrap_or_else(|| panic!("unexpected banner {line:?}"))
            .parse::<SocketAddr>()
            .unwrap();
        let addr = SocketAddr::from(([127, 0, 0, 1], addr.port()));
        Server { child, addr }
    }

    /// Kills the process without letting it shut down.
    pub fn kill(mut self) {
        self.child.kill().unwrap();
        self.child.wait().unwrap();
    }

    pub fn request(&self, method: &str, path: &str, body: Option<&str>) -> (u16, String) {
        request(self.addr, method, path, body)
    }

    pub fn say(&self, id: &str, text: &str) -> serde_json::Value {
        let body = serde_json::json!({ "text": text }).to_string();
        let (status, reply) = self.request("POST", &format!("/api/sessions/{id}/messages"), Some(&body));
        assert_eq!(status, 200, "{reply}");
        serde_json::from_str(&reply).unwrap()
    }

    pub fn create(&self) -> String {
        let (status, body) = self.request("POST", "/api/sessions", Some("{}"));
        assert_eq!(status, 201, "{body}");
        let body: serde_json::Value = serde_json::from_str(&body).unwrap();
        body["session_id"].as_str().unwrap().to_owned()
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn decode_chunked(mut body: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    loop {
        let end = body.windows(2).position(|w| w == b"\r\n").expect("chunk size line");
        let size = usize::from_str_radix(std::str::from_utf8(&body[..end]).unwrap().trim(), 16).unwrap();
        body = &body[end + 2..];
        if size == 0 {
            return out;
        }
        out.extend_from_slice(&body[..size]);
        body = &body[size + 2..];
    }
}

/// One request on a fresh connection; returns the status and body.
pub fn request(addr: SocketAddr, method: &str, path: &str, body: Option<&str>) -> (u16, String) {
    let mut stream = TcpStream::connect(addr).expect("connect");
    stream.set_read_timeout(Some(Duration::from_secs(30))).unwrap();
    let body = body.unwrap_or("");
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw).unwrap();
    let split = raw.windows(4).position(|w| w == b"\r\n\r\n").expect("header end");
    let head = String::from_utf8_lossy(&raw[..split]).to_lowercase();
    let status = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    let payload = &raw[split + 4..];
    let payload =
        if head.contains("transfer-encoding: chunked") { decode_chunked(payload) } else { payload.to_vec() };
    (status, String::from_utf8(payload).unwrap())
}

pub fn uber_script() -> Vec<String> {
    mentor_core::dialogue::parse_script(mentor_core::dialogue::UBER_SCRIPT).unwrap()
}

pub const GOLDEN_MAP: &str = include_str!("../../../core/tests/golden/uber_map.json");
pub const GOLDEN_DOT: &str = include_str!("../../../core/tests/golden/uber.dot");
pub const GOLDEN_HYPOTHESES: &str = include_str!("../../../core/tests/golden/uber_hypotheses.tsv");
