//! Projection between DDA edge-level dialog acts and SWBD-DAMSL unit tags.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::graph::{Dialogue, UnitId};
use crate::taxonomy::{fold, DialogAct, EdgeLabel};

const BUNDLED: &str = include_str!("../../data/swbd_damsl.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwbdError {
    #[error("SWBD-DAMSL tag `{0}` has no DDA mapping")]
    UnmappedSwbdTag(String),
    #[error("mapping table line {line}: {message}")]
    BadTable { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwbdGroup {
    Kept,
    Answer,
    Question,
    Merged,
    Dropped,
    Split,
}

impl SwbdGroup {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "kept" => SwbdGroup::Kept,
            "answer" => SwbdGroup::Answer,
            "question" => SwbdGroup::Question,
            "merged" => SwbdGroup::Merged,
            "dropped" => SwbdGroup::Dropped,
            "split" => SwbdGroup::Split,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwbdEntry {
    pub code: String,
    pub name: String,
    pub group: SwbdGroup,
    /// `None` for dropped classes.
    pub dda: Option<DialogAct>,
}

/// A SWBD-DAMSL to DDA mapping table.
#[derive(Debug, Clone)]
pub struct SwbdMap {
    entries: Vec<SwbdEntry>,
}

impl SwbdMap {
    /// The table shipped with the crate.
    pub fn bundled() -> &'static SwbdMap {
        static MAP: OnceLock<SwbdMap> = OnceLock::new();
        MAP.get_or_init(|| SwbdMap::from_tsv(BUNDLED).expect("bundled SWBD table is valid"))
    }

    /// Reads `code<TAB>name<TAB>group<TAB>dda-tag` rows; `#` starts a
    /// comment line.
    pub fn from_tsv(text: &str) -> Result<SwbdMap, SwbdError> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| SwbdError::BadTable { line: n + 1, message };
            let cols: Vec<&str> = line.split('\t').collect();
            let [code, name, group, dda] = cols.as_slice() else {
                return Err(bad(format!("expected 4 columns, found {}", cols.len())));
            };
            let group = SwbdGroup::parse(group).ok_or_else(|| bad(format!("unknown group `{group}`")))?;
            let dda = match (*dda, group) {
                ("-", SwbdGroup::Dropped) => None,
                ("-", _) => return Err(bad("only dropped classes may omit the DDA tag".into())),
                (_, SwbdGroup::Dropped) => return Err(bad("dropped classes take no DDA tag".into())),
                (tag, _) => Some(
                    tag.parse::<DialogAct>()
                        .map_err(|_| bad(format!("`{tag}` is not a DDA dialog act")))?,
                ),
            };
            entries.push(SwbdEntry {
                code: code.to_string(),
                name: name.to_string(),
                group,
                dda,
            });
        }
        Ok(SwbdMap { entries })
    }

    pub fn entries(&self) -> &[SwbdEntry] {
        &self.entries
    }

    pub fn in_group(&self, group: SwbdGroup) -> impl Iterator<Item = &SwbdEntry> {
        self.entries.iter().filter(move |e| e.group == group)
    }

    /// Looks up by tag code (`qy^d`) or class name (`Yes answers`),
    /// ignoring case and separator style.
    pub fn map(&self, swbd: &str) -> Result<DialogAct, SwbdError> {
        let trimmed = swbd.trim();
        let key = fold(trimmed);
        self.entries
            .iter()
            .find(|e| e.code.eq_ignore_ascii_case(trimmed) || (!key.is_empty() && fold(&e.name) == key))
            .and_then(|e| e.dda)
            .ok_or_else(|| SwbdError::UnmappedSwbdTag(swbd.to_string()))
    }
}

/// Maps a SWBD-DAMSL tag with the bundled table.
pub fn map_swbd_tag(swbd: &str) -> Result<DialogAct, SwbdError> {
    SwbdMap::bundled().map(swbd)
}

/// Per-unit dialog acts read off each unit's outgoing edges. Rhetorical and
/// continuation labels are dropped. Every unit gets an entry; the multiset
/// is sorted.
pub fn project_unit_tags(dialogue: &Dialogue) -> BTreeMap<UnitId, Vec<DialogAct>> {
    let mut out: BTreeMap<UnitId, Vec<DialogAct>> =
        dialogue.units().iter().map(|u| (u.id, Vec::new())).collect();
    for edge in dialogue.edges() {
        let acts = out.entry(edge.source).or_default();
        acts.extend(edge.labels.iter().filter_map(|l| match l {
            EdgeLabel::DialogAct(a) => Some(*a),
            _ => None,
        }));
    }
    for acts in out.values_mut() {
        acts.sort();
    }
    out
}
