//! In-memory working copies of a corpus file, one lock per dialogue.

use std::collections::HashMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use dda_core::io::{parse_corpus, serialize_corpus, Corpus, FormatError};
use dda_core::{Diagnostic, Dialogue, EdgeLabel, GraphError, Thread, ThreadIndex, UnitId};
use tempfile::NamedTempFile;
use thiserror::Error;

/// Completeness mode used for every diagnostic the service reports.
pub const COMPLETENESS: bool = true;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("no dialogue `{0}`")]
    NoSuchDialogue(String),
    #[error("revision conflict: expected {expected}, current {current}")]
    RevisionConflict { expected: u64, current: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("dialogue `{id}` has {errors} error diagnostic(s) and cannot be saved")]
    Unsavable { id: String, errors: usize },
    #[error("cannot read corpus {path}: {source}")]
    Load { path: PathBuf, source: io::Error },
    #[error("cannot parse corpus {path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("write failed: {0}")]
    Storage(#[source] io::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Replaces a file's contents so that readers see either the old bytes or
/// the new bytes, never a mix.
pub trait Storage: Send + Sync {
    fn replace(&self, path: &Path, bytes: &[u8]) -> io::Result<()>;
}

/// Writes a temporary file next to the target, syncs it, then renames it
/// over the target.
#[derive(Debug, Clone, Copy, Default)]
pub struct AtomicFileStorage;

impl Storage for AtomicFileStorage {
    fn replace(&self, path: &Path, bytes: &[u8]) -> io::Result<()> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

/// A consistent view of one dialogue at one revision.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub dialogue: Dialogue,
    pub revision: u64,
    pub threads: Vec<Thread>,
}

impl Snapshot {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        self.dialogue.validate(COMPLETENESS)
    }
}

struct WorkingCopy {
    dialogue: Dialogue,
    revision: u64,
    index: ThreadIndex,
    // Cached so reads never need the index's `&mut` path compression.
    threads: Vec<Thread>,
}

impl WorkingCopy {
    fn new(dialogue: Dialogue) -> Self {
        let mut index = ThreadIndex::new(&dialogue);
        let threads = index.threads();
        WorkingCopy {
            dialogue,
            revision: 0,
            index,
            threads,
        }
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            dialogue: self.dialogue.clone(),
            revision: self.revision,
            threads: self.threads.clone(),
        }
    }

    fn check(&self, expected: u64) -> Result<(), ServiceError> {
        if expected != self.revision {
            return Err(ServiceError::RevisionConflict {
                expected,
                current: self.revision,
            });
        }
        Ok(())
    }

    fn commit(&mut self, dialogue: Dialogue, index: ThreadIndex) {
        self.dialogue = dialogue;
        self.index = index;
        self.threads = self.index.threads();
        self.revision += 1;
    }
}

/// Listing entry for one dialogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialogueInfo {
    pub id: String,
    pub unit_count: usize,
    pub edge_count: usize,
    pub revision: u64,
}

/// One corpus file served for annotation.
///
/// Mutations to a dialogue are serialized by its write lock and checked
/// against the caller's expected revision. Saves write the whole file with
/// the saved dialogue replaced in the last persisted state.
pub struct Session {
    path: PathBuf,
    storage: Arc<dyn Storage>,
    order: Vec<String>,
    dialogues: HashMap<String, RwLock<WorkingCopy>>,
    persisted: Mutex<Corpus>,
}

impl Session {
    /// Loads `path`. A missing file opens an empty corpus that will be
    /// created on first save.
    pub fn open(path: impl Into<PathBuf>, storage: Arc<dyn Storage>) -> Result<Session, ServiceError> {
        let path = path.into();
        let corpus = match std::fs::read(&path) {
            Ok(bytes) => parse_corpus(&bytes).map_err(|source| ServiceError::Format {
                path: path.clone(),
                source,
            })?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Corpus::new(),
            Err(source) => return Err(ServiceError::Load { path, source }),
        };
        Ok(Session::from_corpus(path, corpus, storage))
    }

    pub fn from_corpus(path: impl Into<PathBuf>, corpus: Corpus, storage: Arc<dyn Storage>) -> Session {
        let order = corpus.dialogues().iter().map(|d| d.id().to_string()).collect();
        let dialogues = corpus
            .dialogues()
            .iter()
            .map(|d| (d.id().to_string(), RwLock::new(WorkingCopy::new(d.clone()))))
            .collect();
        Session {
            path: path.into(),
            storage,
            order,
            dialogues,
            persisted: Mutex::new(corpus),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn slot(&self, id: &str) -> Result<&RwLock<WorkingCopy>, ServiceError> {
        self.dialogues
            .get(id)
            .ok_or_else(|| ServiceError::NoSuchDialogue(id.to_string()))
    }

    /// Dialogues in file order.
    pub fn list(&self) -> Vec<DialogueInfo> {
        self.order
            .iter()
            .map(|id| {
                let copy = self.dialogues[id].read().expect("lock poisoned");
                DialogueInfo {
                    id: id.clone(),
                    unit_count: copy.dialogue.units().len(),
                    edge_count: copy.dialogue.edge_count(),
                    revision: copy.revision,
                }
            })
            .collect()
    }

    pub fn snapshot(&self, id: &str) -> Result<Snapshot, ServiceError> {
        Ok(self.slot(id)?.read().expect("lock poisoned").snapshot())
    }

    /// Adds labels on `source -> target`. Threads are updated in place:
    /// an added edge can only merge components.
    pub fn add_edge(
        &self,
        id: &str,
        source: UnitId,
        target: UnitId,
        labels: Vec<EdgeLabel>,
        expected_revision: u64,
    ) -> Result<Snapshot, ServiceError> {
        let mut copy = self.slot(id)?.write().expect("lock poisoned");
        copy.check(expected_revision)?;
        let next = copy.dialogue.add_edge(source, target, labels)?;
        let mut index = copy.index.clone();
        index.link(source, target);
        copy.commit(next, index);
        Ok(copy.snapshot())
    }

    /// Removes one label, or the whole edge when `label` is `None`. Threads
    /// are rebuilt: a removal can split a component.
    pub fn remove_edge(
        &self,
        id: &str,
        source: UnitId,
        target: UnitId,
        label: Option<&EdgeLabel>,
        expected_revision: u64,
    ) -> Result<Snapshot, ServiceError> {
        let mut copy = self.slot(id)?.write().expect("lock poisoned");
        copy.check(expected_revision)?;
        let next = copy.dialogue.remove_edge(source, target, label)?;
        let index = ThreadIndex::new(&next);
        copy.commit(next, index);
        Ok(copy.snapshot())
    }

    /// Persists the current working copy of `id`. On failure the file and
    /// the persisted state are unchanged.
    pub fn save(&self, id: &str) -> Result<u64, ServiceError> {
        let snapshot = self.snapshot(id)?;
        let errors = snapshot.diagnostics().iter().filter(|d| d.is_error()).count();
        if errors > 0 {
            return Err(ServiceError::Unsavable {
                id: id.to_string(),
                errors,
            });
        }
        let mut persisted = self.persisted.lock().expect("lock poisoned");
        let mut next = persisted.clone();
        next.upsert(snapshot.dialogue);
        self.storage
            .replace(&self.path, &serialize_corpus(&next))
            .map_err(ServiceError::Storage)?;
        *persisted = next;
        Ok(snapshot.revision)
    }
}
