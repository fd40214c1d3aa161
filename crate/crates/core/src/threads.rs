//! Thread disentanglement: threads are the connected components of the
//! undirected view of the response-dependency graph.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::disjoint::UnionFind;
use crate::graph::{Dialogue, GraphError, UnitId};

/// A connected component of the annotation graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thread {
    /// Position in root order.
    pub id: usize,
    /// Smallest unit id in the thread.
    pub root: UnitId,
    /// Member ids, ascending.
    pub unit_ids: Vec<UnitId>,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.unit_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unit_ids.is_empty()
    }

    pub fn contains(&self, unit: UnitId) -> bool {
        self.unit_ids.binary_search(&unit).is_ok()
    }
}

/// Incrementally maintained thread partition.
///
/// Adding links only ever merges components, so additions are applied in
/// place. Removals can split a component; rebuild from the dialogue then.
#[derive(Debug, Clone, Default)]
pub struct ThreadIndex {
    ids: Vec<UnitId>,
    slots: HashMap<UnitId, usize>,
    sets: UnionFind,
}

impl ThreadIndex {
    pub fn new(dialogue: &Dialogue) -> Self {
        let ids: Vec<UnitId> = dialogue.units().iter().map(|u| u.id).collect();
        let slots = ids.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let mut index = ThreadIndex {
            sets: UnionFind::new(ids.len()),
            ids,
            slots,
        };
        for (source, target) in dialogue.pairs() {
            index.link(source, target);
        }
        index
    }

    /// Joins the threads of two units. Self links and unknown ids are
    /// ignored. Returns true if two threads merged.
    pub fn link(&mut self, a: UnitId, b: UnitId) -> bool {
        if a == b {
            return false;
        }
        match (self.slots.get(&a), self.slots.get(&b)) {
            (Some(&x), Some(&y)) => self.sets.union(x, y),
            _ => false,
        }
    }

    pub fn same_thread(&mut self, a: UnitId, b: UnitId) -> bool {
        match (self.slots.get(&a), self.slots.get(&b)) {
            (Some(&x), Some(&y)) => self.sets.connected(x, y),
            _ => false,
        }
    }

    /// Current partition ordered by root.
    pub fn threads(&mut self) -> Vec<Thread> {
        let mut groups: BTreeMap<usize, Vec<UnitId>> = BTreeMap::new();
        for slot in 0..self.ids.len() {
            let root = self.sets.find(slot);
            groups.entry(root).or_default().push(self.ids[slot]);
        }
        let mut members: Vec<Vec<UnitId>> = groups
            .into_values()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        members.sort_by_key(|v| v[0]);
        members
            .into_iter()
            .enumerate()
            .map(|(id, unit_ids)| Thread {
                id,
                root: unit_ids[0],
                unit_ids,
            })
            .collect()
    }
}

/// Partitions a dialogue into threads ordered by root. Self edges do not
/// connect anything; units without edges are singleton threads.
pub fn extract_threads(dialogue: &Dialogue) -> Vec<Thread> {
    ThreadIndex::new(dialogue).threads()
}

pub fn thread_of(dialogue: &Dialogue, unit: UnitId) -> Result<Thread, GraphError> {
    if !dialogue.contains_unit(unit) {
        return Err(GraphError::NoSuchUnit(unit));
    }
    Ok(extract_threads(dialogue)
        .into_iter()
        .find(|t| t.contains(unit))
        .expect("threads partition every unit"))
}
