//! Sessions on disk: one append-only JSON Lines log per session. The first
//! line records how the session was opened, every further line one founder
//! turn with the engine state it led to. Loading a session replays the
//! turns and checks each state against its checkpoint.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use mentor_core::dialogue::now_millis;
use mentor_core::{DialogueSession, DialogueState, Engine, EngineConfig, TurnResult};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tokio::sync::{Mutex as TurnLock, OwnedMutexGuard};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("no session with id {0}")]
    NotFound(String),
    #[error("another message for session {0} is still being processed")]
    Busy(String),
    #[error("session {0} has finished")]
    Finished(String),
    #[error("message text must not be empty")]
    EmptyText,
    #[error("session storage failed: {0}")]
    Io(#[from] io::Error),
    #[error("session log {path} is damaged at line {line}: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum Event {
    Opened { session_id: String, config: EngineConfig, timestamp: u64, replies: Vec<String> },
    Turn { text: String, timestamp: u64, replies: Vec<String>, state: DialogueState },
}

type Slot = Arc<TurnLock<DialogueSession>>;

pub struct SessionStore {
    dir: PathBuf,
    engine: Engine,
    config: EngineConfig,
    sessions: Mutex<HashMap<String, Slot>>,
}

/// Exclusive access to one session for the duration of a turn.
pub struct SessionGuard {
    session: OwnedMutexGuard<DialogueSession>,
}

impl SessionGuard {
    pub fn session(&self) -> &DialogueSession {
        &self.session
    }
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-')
}

impl SessionStore {
    /// Store rooted at `dir`; the directory is created on first write.
    pub fn new(dir: impl Into<PathBuf>, engine: Engine, config: EngineConfig) -> Self {
        Self { dir: dir.into(), engine, config, sessions: Mutex::new(HashMap::new()) }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    fn log_path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.jsonl"))
    }

    fn append(&self, id: &str, event: &Event, create: bool) -> Result<(), StoreError> {
        let mut line = serde_json::to_string(event).expect("events serialize");
        line.push('\n');
        let mut options = OpenOptions::new();
        if create {
            fs::create_dir_all(&self.dir)?;
            options.create_new(true);
        }
        let mut file = options.append(true).open(self.log_path(id))?;
        file.write_all(line.as_bytes())?;
        Ok(())
    }

    pub fn create(&self) -> Result<DialogueSession, StoreError> {
        let session = self.engine.new_session(self.config);
        let opening = session.opening_replies();
        let event = Event::Opened {
            session_id: session.id().to_owned(),
            config: self.config,
            timestamp: session.transcript()[0].timestamp,
            replies: opening,
        };
        self.append(session.id(), &event, true)?;
        let slot = Arc::new(TurnLock::new(session.clone()));
        self.sessions.lock().expect("session table").insert(session.id().to_owned(), slot);
        Ok(session)
    }

    fn slot(&self, id: &str) -> Result<Slot, StoreError> {
        if !valid_id(id) {
            return Err(StoreError::NotFound(id.to_owned()));
        }
        if let Some(slot) = self.sessions.lock().expect("session table").get(id) {
            return Ok(slot.clone());
        }
        let session = self.load(id)?;
        let mut table = self.sessions.lock().expect("session table");
        // another request may have loaded it meanwhile
        let slot = table.entry(id.to_owned()).or_insert_with(|| Arc::new(TurnLock::new(session)));
        Ok(slot.clone())
    }

    /// Rebuilds a session from its log, bypassing the in-memory table.
    pub fn load(&self, id: &str) -> Result<DialogueSession, StoreError> {
        if !valid_id(id) {
            return Err(StoreError::NotFound(id.to_owned()));
        }
        let path = self.log_path(id);
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(StoreError::NotFound(id.to_owned())),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |line: usize, message: String| StoreError::Corrupt { path: path.clone(), line, message };
        let mut session: Option<DialogueSession> = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let event: Event = serde_json::from_str(&line).map_err(|e| corrupt(i + 1, e.to_string()))?;
            match (event, session.as_mut()) {
                (Event::Opened { session_id, config, timestamp, .. }, None) => {
                    session = Some(DialogueSession::new(session_id, config, timestamp));
                }
                (Event::Turn { text, timestamp, state, .. }, Some(s)) => {
                    self.engine
                        .handle_at(s, &text, timestamp)
                        .map_err(|e| corrupt(i + 1, e.to_string()))?;
                    if *s.state() != state {
                        return Err(corrupt(
                            i + 1,
                            format!("replay reached {} but the log says {}", s.state().name(), state.name()),
                        ));
                    }
                }
                (Event::Opened { .. }, Some(_)) => return Err(corrupt(i + 1, "session opened twice".into())),
                (Event::Turn { .. }, None) => return Err(corrupt(i + 1, "turn before the session was opened".into())),
            }
        }
        session.ok_or_else(|| corrupt(1, "empty log".into()))
    }

    /// Current state of a session.
    pub async fn get(&self, id: &str) -> Result<DialogueSession, StoreError> {
        let slot = self.slot(id)?;
        let session = slot.lock().await;
        Ok(session.clone())
    }

    /// Claims the session for one turn, failing at once if a turn is in
    /// flight.
    pub fn try_begin(&self, id: &str) -> Result<SessionGuard, StoreError> {
        let slot = self.slot(id)?;
        let session = slot.try_lock_owned().map_err(|_| StoreError::Busy(id.to_owned()))?;
        Ok(SessionGuard { session })
    }

    /// Runs one founder turn and logs it before it becomes visible.
    pub fn turn(&self, guard: &mut SessionGuard, text: &str) -> Result<TurnResult, StoreError> {
        let id = guard.session.id().to_owned();
        if guard.session.is_done() {
            return Err(StoreError::Finished(id));
        }
        if text.trim().is_empty() {
            return Err(StoreError::EmptyText);
        }
        let mut next = guard.session.clone();
        let timestamp = now_millis();
        let result = self
            .engine
            .handle_at(&mut next, text, timestamp)
            .map_err(|_| StoreError::Finished(id.clone()))?;
        let event = Event::Turn {
            text: text.to_owned(),
            timestamp,
            replies: result.replies.clone(),
            state: result.state.clone(),
        };
        self.append(&id, &event, false)?;
        *guard.session = next;
        Ok(result)
    }

    /// Drops every cached session so the next access replays from disk.
    pub fn forget_all(&self) {
        self.sessions.lock().expect("session table").clear();
    }
}
