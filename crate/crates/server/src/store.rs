use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use mbrg_core::session::{Session, SessionDocument};
use parking_lot::{Mutex, RwLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("session directory {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("session file {path}: {message}")]
    Document { path: PathBuf, message: String },
}

pub type SharedSession = Arc<Mutex<Session>>;

/// Live sessions, each behind its own lock, optionally mirrored to one
/// JSON document per session in a directory.
#[derive(Default)]
pub struct Store {
    sessions: RwLock<HashMap<String, SharedSession>>,
    dir: Option<PathBuf>,
}

impl Store {
    pub fn in_memory() -> Self {
        Store::default()
    }

    /// Loads every `*.json` session document under `dir`, creating it if needed.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        let io = |source| StoreError::Io {
            path: dir.to_path_buf(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(dir).map_err(io)? {
            let path = entry.map_err(io)?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let bad = |message: String| StoreError::Document {
                path: path.clone(),
                message,
            };
            let text = fs::read_to_string(&path).map_err(|e| bad(e.to_string()))?;
            let doc: SessionDocument =
                serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
            let session = Session::from_document(doc).map_err(|e| bad(e.to_string()))?;
            sessions.insert(session.id().to_string(), Arc::new(Mutex::new(session)));
        }
        Ok(Store {
            sessions: RwLock::new(sessions),
            dir: Some(dir.to_path_buf()),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: &str) -> Option<SharedSession> {
        self.sessions.read().get(id).cloned()
    }

    pub fn insert(&self, session: Session) -> Result<SharedSession, StoreError> {
        self.persist(&session)?;
        let id = session.id().to_string();
        let shared = Arc::new(Mutex::new(session));
        self.sessions.write().insert(id, shared.clone());
        Ok(shared)
    }

    /// Writes the session document when a directory is configured.
    pub fn persist(&self, session: &Session) -> Result<(), StoreError> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        let path = dir.join(format!("{}.json", session.id()));
        let tmp = dir.join(format!(".{}.json.tmp", session.id()));
        let io = |source| StoreError::Io {
            path: path.clone(),
            source,
        };
        let text = serde_json::to_string_pretty(&session.document()).expect("documents serialize");
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }
}
