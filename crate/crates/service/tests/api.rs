use std::path::Path;
use std::sync::Arc;

use axum::body::{to_bytes, Body};
use axum::http::{header, Request, StatusCode};
use axum::Router;
use mentor_core::dialogue::{parse_script, UBER_SCRIPT};
use mentor_core::{Engine, EngineConfig};
use mentor_service::{app, SessionStore};
use serde_json::Value;
use tower::ServiceExt;

const GOLDEN_MAP: &str = include_str!("../../core/tests/golden/uber_map.json");
const GOLDEN_DOT: &str = include_str!("../../core/tests/golden/uber.dot");
const GOLDEN_REPORT: &str = include_str!("../../core/tests/golden/uber_report.md");

fn store(dir: &Path) -> Arc<SessionStore> {
    Arc::new(SessionStore::new(dir, Engine::seeded(), EngineConfig::default()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, String) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_owned())))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = to_bytes(response.into_body(), usize::MAX).await.unwrap();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

async fn create(app: &Router) -> String {
    let (status, body) = call(app, "POST", "/api/sessions", Some("{}")).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    json(&body)["session_id"].as_str().unwrap().to_owned()
}

async fn say(app: &Router, id: &str, text: &str) -> Value {
    let body = serde_json::json!({ "text": text }).to_string();
    let (status, reply) = call(app, "POST", &format!("/api/sessions/{id}/messages"), Some(&body)).await;
    assert_eq!(status, StatusCode::OK, "{reply}");
    json(&reply)
}

fn script() -> Vec<String> {
    parse_script(UBER_SCRIPT).unwrap()
}

fn error_code(body: &str) -> String {
    json(body)["error"]["code"].as_str().unwrap().to_owned()
}

#[tokio::test]
async fn create_session() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    let (status, body) = call(&app, "POST", "/api/sessions", Some("{}")).await;
    assert_eq!(status, StatusCode::CREATED);
    let body = json(&body);
    assert_eq!(body["state"], "ask_product");
    assert!(body["replies"][1].as_str().unwrap().contains("product name"));
    assert_eq!(body["map"], json("{\"product\":null,\"nodes\":[],\"edges\":[]}"));
    let other = create(&app).await;
    assert_ne!(body["session_id"].as_str().unwrap(), other);
    // the body is optional
    let (status, _) = call(&app, "POST", "/api/sessions", None).await;
    assert_eq!(status, StatusCode::CREATED);
}

#[tokio::test]
async fn unwritable_store() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("not-a-dir");
    std::fs::write(&file, "").unwrap();
    let app = app(store(&file), None);
    let (status, body) = call(&app, "POST", "/api/sessions", Some("{}")).await;
    assert_eq!(status, StatusCode::INTERNAL_SERVER_ERROR);
    assert_eq!(error_code(&body), "storage_error");
}

#[tokio::test]
async fn full_interview() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    let id = create(&app).await;

    let (_, hypotheses) = call(&app, "GET", &format!("/api/sessions/{id}/hypotheses"), None).await;
    assert_eq!(json(&hypotheses), json("[]"));

    let first = say(&app, &id, "Uber").await;
    assert_eq!(first["map"]["nodes"][0]["clause_text"], "Uber");
    assert_eq!(first["map"]["nodes"][0]["kind"], "product");
    assert_eq!(first["state"], "ask_customer");
    assert!(first.get("hypotheses").is_none());

    let mut last = first;
    for text in &script()[1..] {
        last = say(&app, &id, text).await;
    }
    assert_eq!(last["done"], true);
    assert_eq!(last["state"], "done");
    assert_eq!(last["hypotheses"].as_array().unwrap().len(), 6);

    let (_, body) = call(&app, "GET", &format!("/api/sessions/{id}/hypotheses"), None).await;
    let listed = json(&body);
    assert_eq!(listed.as_array().unwrap().len(), 6);
    assert!(listed.as_array().unwrap().iter().any(|h| h["statement"] == "Riders has difficulty to find a cab in some places."));

    let (_, map) = call(&app, "GET", &format!("/api/sessions/{id}/map"), None).await;
    assert_eq!(map, GOLDEN_MAP);
    let (_, dot) = call(&app, "GET", &format!("/api/sessions/{id}/export?format=dot"), None).await;
    assert_eq!(dot, GOLDEN_DOT);
    let (_, exported) = call(&app, "GET", &format!("/api/sessions/{id}/export?format=json"), None).await;
    assert_eq!(exported, GOLDEN_MAP);
    let (_, report) = call(&app, "GET", &format!("/api/sessions/{id}/export?format=markdown"), None).await;
    assert_eq!(report, GOLDEN_REPORT);
    assert!(report.contains("## Problem hypotheses"));

    let (status, body) = call(&app, "POST", &format!("/api/sessions/{id}/messages"), Some("{\"text\":\"hi\"}")).await;
    assert_eq!(status, StatusCode::GONE);
    assert_eq!(error_code(&body), "session_done");

    let (_, snapshot) = call(&app, "GET", &format!("/api/sessions/{id}"), None).await;
    let snapshot = json(&snapshot);
    assert_eq!(snapshot["state"], "done");
    // greeting, first question, then one user line and one bot line per turn
    assert_eq!(snapshot["transcript"].as_array().unwrap().len(), 2 + 2 * 19);
}

#[tokio::test]
async fn bad_requests() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    let id = create(&app).await;
    let messages = format!("/api/sessions/{id}/messages");
    for (body, code) in [("{\"text\":\"   \"}", "empty_text"), ("not json", "invalid_body"), ("{\"txt\":\"a\"}", "invalid_body")] {
        let (status, reply) = call(&app, "POST", &messages, Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
        assert_eq!(error_code(&reply), code);
    }
    for format in ["xml", ""] {
        let (status, reply) = call(&app, "GET", &format!("/api/sessions/{id}/export?format={format}"), None).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert_eq!(error_code(&reply), "unknown_format");
    }
    let (status, _) = call(&app, "GET", &format!("/api/sessions/{id}/export"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn unknown_sessions() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    for uri in [
        "/api/sessions/missing",
        "/api/sessions/missing/map",
        "/api/sessions/missing/hypotheses",
        "/api/sessions/missing/export?format=json",
    ] {
        let (status, body) = call(&app, "GET", uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert_eq!(error_code(&body), "not_found");
    }
    let (status, _) = call(&app, "POST", "/api/sessions/missing/messages", Some("{\"text\":\"a\"}")).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn concurrent_turns_conflict() {
    let tmp = tempfile::tempdir().unwrap();
    let store = store(tmp.path());
    let app = app(store.clone(), None);
    let id = create(&app).await;
    let held = store.try_begin(&id).unwrap();
    let (status, body) = call(&app, "POST", &format!("/api/sessions/{id}/messages"), Some("{\"text\":\"Uber\"}")).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(error_code(&body), "turn_in_progress");
    drop(held);
    say(&app, &id, "Uber").await;
}

#[tokio::test]
async fn simultaneous_posts() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    let id = create(&app).await;
    let uri = format!("/api/sessions/{id}/messages");
    let tasks: Vec<_> = (0..8)
        .map(|_| {
            let (app, uri) = (app.clone(), uri.clone());
            tokio::spawn(async move { call(&app, "POST", &uri, Some("{\"text\":\"Uber\"}")).await.0 })
        })
        .collect();
    let mut statuses = Vec::new();
    for t in tasks {
        statuses.push(t.await.unwrap());
    }
    // every post either ran as its own turn or was turned away
    assert!(statuses.iter().all(|s| *s == StatusCode::OK || *s == StatusCode::CONFLICT));
    let ok = statuses.iter().filter(|s| **s == StatusCode::OK).count();
    let (_, snapshot) = call(&app, "GET", &format!("/api/sessions/{id}"), None).await;
    let users = json(&snapshot)["transcript"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["speaker"] == "user")
        .count();
    assert_eq!(users, ok);
}

#[tokio::test]
async fn restart_restores_sessions() {
    let tmp = tempfile::tempdir().unwrap();
    let turns = script();
    let mut app = self::app(store(tmp.path()), None);
    let id = create(&app).await;
    let mut done = 0;
    for checkpoint in [5, 11, 16] {
        for text in &turns[done..checkpoint] {
            say(&app, &id, text).await;
        }
        done = checkpoint;
        let uri = format!("/api/sessions/{id}");
        let (_, before) = call(&app, "GET", &uri, None).await;
        // a new store on the same directory stands in for a restarted process
        app = self::app(store(tmp.path()), None);
        let (status, after) = call(&app, "GET", &uri, None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(json(&after), json(&before), "checkpoint {checkpoint}");
    }
    for text in &turns[done..] {
        say(&app, &id, text).await;
    }
    let (_, map) = call(&app, "GET", &format!("/api/sessions/{id}/export?format=json"), None).await;
    assert_eq!(map, GOLDEN_MAP);
    let (_, dot) = call(&app, "GET", &format!("/api/sessions/{id}/export?format=dot"), None).await;
    assert_eq!(dot, GOLDEN_DOT);
}

/// Every message response along the golden transcript has the documented
/// shape.
#[tokio::test]
async fn response_shapes() {
    let tmp = tempfile::tempdir().unwrap();
    let app = app(store(tmp.path()), None);
    let id = create(&app).await;
    for text in script() {
        let r = say(&app, &id, &text).await;
        assert_eq!(r["session_id"], id.as_str());
        assert!(r["replies"].as_array().is_some_and(|a| !a.is_empty() && a.iter().all(Value::is_string)));
        assert!(r["state"].is_string());
        assert_eq!(r["state_detail"]["name"], r["state"]);
        assert!(r["map"]["nodes"].is_array() && r["map"]["edges"].is_array());
        assert!(r["map"]["product"].is_string());
        assert!(r["done"].is_boolean());
        assert_eq!(r["done"], r["state"] == "done");
        assert_eq!(r["hypotheses"].is_array(), r["done"] == true);
        assert!(r["parse"]["intent"].is_string());
        assert!(r["parse"]["confidence"].is_number());
    }
}

#[tokio::test]
async fn cors_and_static_ui() {
    let tmp = tempfile::tempdir().unwrap();
    let ui = tmp.path().join("ui");
    std::fs::create_dir(&ui).unwrap();
    std::fs::write(ui.join("index.html"), "<h1>mentor</h1>").unwrap();
    let app = app(store(&tmp.path().join("data")), Some(ui));
    let (status, body) = call(&app, "GET", "/", None).await;
    assert_eq!((status, body.as_str()), (StatusCode::OK, "<h1>mentor</h1>"));

    let request = Request::builder()
        .method("OPTIONS")
        .uri("/api/sessions")
        .header(header::ORIGIN, "http://localhost:5173")
        .header(header::ACCESS_CONTROL_REQUEST_METHOD, "POST")
        .body(Body::empty())
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    assert!(response.headers().contains_key(header::ACCESS_CONTROL_ALLOW_ORIGIN));
}
