//! Oracles and generators shared by the integration tests. The oracles use
//! none of the library's graph algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use dda_core::{DialogAct, Dialogue, EdgeLabel, ResponseDependency, RhetoricalRelation, SlashUnit};
use proptest::prelude::*;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn corpus_fixtures() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for dir in [fixture(""), fixture("irc")] {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            if name.ends_with(".json") && name != "forward_edge.json" {
                out.push(path);
            }
        }
    }
    out.sort();
    out
}

/// Components of the undirected graph on `nodes` by breadth-first search,
/// as sorted member lists ordered by their smallest member.
pub fn bfs_partition(nodes: &[u32], pairs: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut adjacent: BTreeMap<u32, Vec<u32>> = nodes.iter().map(|&n| (n, Vec::new())).collect();
    for &(a, b) in pairs {
        if a != b {
            adjacent.get_mut(&a).unwrap().push(b);
            adjacent.get_mut(&b).unwrap().push(a);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adjacent.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            for &m in &adjacent[&n] {
                if seen.insert(m) {
                    members.push(m);
                    queue.push_back(m);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out.sort();
    out
}

pub fn dialogue_partition(d: &Dialogue) -> Vec<Vec<u32>> {
    let nodes: Vec<u32> = d.units().iter().map(|u| u.id).collect();
    let pairs: Vec<(u32, u32)> = d.pairs().collect();
    bfs_partition(&nodes, &pairs)
}

/// Shannon entropy of `counts` over `ln(counts.len())`, from the definition.
pub fn entropy_oracle(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.ln();
        }
    }
    h / (counts.len() as f64).ln()
}

pub const SPEAKERS: [&str; 4] = ["ana", "ben", "cy", "dee"];

pub fn units(n: u32, speaker_of: impl Fn(u32) -> usize) -> Vec<SlashUnit> {
    (0..n)
        .map(|i| SlashUnit::new(i, SPEAKERS[speaker_of(i) % SPEAKERS.len()], format!("unit {i}")))
        .collect()
}

pub fn any_dialog_act() -> impl Strategy<Value = DialogAct> {
    prop::sample::select(DialogAct::ALL)
}

pub fn any_relation() -> impl Strategy<Value = RhetoricalRelation> {
    prop::sample::select(RhetoricalRelation::ALL)
}

pub fn any_label() -> impl Strategy<Value = EdgeLabel> {
    prop_oneof![
        any_dialog_act().prop_map(EdgeLabel::DialogAct),
        any_relation().prop_map(EdgeLabel::rhetorical),
        Just(EdgeLabel::Continuation),
    ]
}

/// A structurally valid dialogue of up to `max_units` units with random
/// backward and self edges.
pub fn valid_dialogue(max_units: u32) -> impl Strategy<Value = Dialogue> {
    (0..=max_units)
        .prop_flat_map(|n| {
            let proposals = if n == 0 {
                Just(Vec::new()).boxed()
            } else {
                prop::collection::vec((0..n, 0..n, prop::collection::vec(any_label(), 0..3)), 0..(2 * n as usize + 1)).boxed()
            };
            (Just(n), prop::collection::vec(0..SPEAKERS.len(), n as usize), proposals)
        })
        .prop_map(|(n, speakers, proposals)| {
            let edges = proposals
                .into_iter()
                .map(|(a, b, labels)| {
                    let (source, target) = (a.max(b), a.min(b));
                    let labels = labels
                        .into_iter()
                        .filter(|l| source != target || !l.is_rhetorical());
                    ResponseDependency::new(source, target, labels)
                })
                .collect();
            Dialogue::build("random", units(n, |i| speakers[i as usize]), edges).expect("generator yields valid dialogues")
        })
}
