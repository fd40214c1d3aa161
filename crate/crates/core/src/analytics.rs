//! Speaker connectivity metrics and the per-dialogue analytics report.
//!
//! The metrics here (interaction counts, degree engagement, normalized
//! entropy balance) are toolkit-defined descriptive statistics. They are not
//! a normative measure of power dynamics.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::graph::Dialogue;
use crate::threads::{extract_threads, Thread};

/// Speaker-by-speaker counts of non-self edges; rows are the responding
/// speaker, columns the speaker responded to. Speakers are ordered by
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteractionMatrix {
    pub counts: Vec<Vec<usize>>,
    pub speakers: Vec<String>,
}

impl InteractionMatrix {
    pub fn get(&self, from: &str, to: &str) -> Option<usize> {
        let r = self.speakers.iter().position(|s| s == from)?;
        let c = self.speakers.iter().position(|s| s == to)?;
        Some(self.counts[r][c])
    }

    pub fn row_sum(&self, speaker: &str) -> Option<usize> {
        let r = self.speakers.iter().position(|s| s == speaker)?;
        Some(self.counts[r].iter().sum())
    }
}

struct SpeakerLookup<'a> {
    names: Vec<&'a str>,
    by_unit: HashMap<u32, usize>,
}

impl<'a> SpeakerLookup<'a> {
    fn new(dialogue: &'a Dialogue) -> Self {
        let names = dialogue.speakers();
        let pos: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let by_unit = dialogue
            .units()
            .iter()
            .map(|u| (u.id, pos[u.speaker.as_str()]))
            .collect();
        SpeakerLookup { names, by_unit }
    }
}

pub fn speaker_interaction_matrix(dialogue: &Dialogue) -> InteractionMatrix {
    let lookup = SpeakerLookup::new(dialogue);
    let k = lookup.names.len();
    let mut counts = vec![vec![0; k]; k];
    for (source, target) in dialogue.pairs().filter(|(s, t)| s != t) {
        counts[lookup.by_unit[&source]][lookup.by_unit[&target]] += 1;
    }
    InteractionMatrix {
        counts,
        speakers: lookup.names.iter().map(|s| s.to_string()).collect(),
    }
}

/// Per-speaker degree counts. Unlike [`InteractionMatrix`], the degrees
/// and `interaction_row` include self edges (under the speaker's own
/// column), so the row always sums to `out_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpeakerStats {
    /// Non-self out-degree plus non-self in-degree.
    pub engagement: usize,
    pub in_degree: usize,
    pub interaction_row: BTreeMap<String, usize>,
    pub out_degree: usize,
    pub speaker: String,
}

pub fn speaker_stats(dialogue: &Dialogue) -> Vec<SpeakerStats> {
    let lookup = SpeakerLookup::new(dialogue);
    let mut stats: Vec<SpeakerStats> = lookup
        .names
        .iter()
        .map(|s| SpeakerStats {
            engagement: 0,
            in_degree: 0,
            interaction_row: BTreeMap::new(),
            out_degree: 0,
            speaker: s.to_string(),
        })
        .collect();
    for (source, target) in dialogue.pairs() {
        let (from, to) = (lookup.by_unit[&source], lookup.by_unit[&target]);
        stats[from].out_degree += 1;
        stats[to].in_degree += 1;
        *stats[from]
            .interaction_row
            .entry(lookup.names[to].to_string())
            .or_default() += 1;
        if source != target {
            stats[from].engagement += 1;
            stats[to].engagement += 1;
        }
    }
    stats
}

/// Entropy of a count vector divided by `log(len)`. `None` when fewer than
/// two bins or when all counts are zero.
pub fn normalized_entropy(counts: &[usize]) -> Option<f64> {
    let total: usize = counts.iter().sum();
    if counts.len() < 2 || total == 0 {
        return None;
    }
    let total = total as f64;
    let h: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum();
    Some((h / (counts.len() as f64).ln()).clamp(0.0, 1.0))
}

/// How evenly non-self incoming edges are spread across the dialogue's
/// speakers: 1.0 when uniform, 0.0 when one speaker receives everything.
/// `None` with fewer than two speakers or no non-self edges.
pub fn balance_index(dialogue: &Dialogue) -> Option<f64> {
    let matrix = speaker_interaction_matrix(dialogue);
    let k = matrix.speakers.len();
    let incoming: Vec<usize> = (0..k)
        .map(|c| matrix.counts.iter().map(|row| row[c]).sum())
        .collect();
    normalized_entropy(&incoming)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DialogueReport {
    pub balance_index: Option<f64>,
    pub edge_count: usize,
    pub id: String,
    pub interaction_matrix: InteractionMatrix,
    pub label_count: usize,
    pub labels_by_category: BTreeMap<String, usize>,
    pub labels_by_tag: BTreeMap<String, usize>,
    pub speakers: Vec<SpeakerStats>,
    pub thread_count: usize,
    pub thread_sizes: Vec<usize>,
    pub threads: Vec<Thread>,
    pub unit_count: usize,
}

impl DialogueReport {
    pub fn new(dialogue: &Dialogue) -> Self {
        let mut labels_by_tag = BTreeMap::new();
        let mut labels_by_category = BTreeMap::new();
        for edge in dialogue.edges() {
            for label in &edge.labels {
                let tag = label.tag_name().unwrap_or("continuation");
                *labels_by_tag.entry(tag.to_string()).or_default() += 1;
                *labels_by_category
                    .entry(label.group_name().to_string())
                    .or_default() += 1;
            }
        }
        let threads = extract_threads(dialogue);
        DialogueReport {
            balance_index: balance_index(dialogue),
            edge_count: dialogue.edge_count(),
            id: dialogue.id().to_string(),
            interaction_matrix: speaker_interaction_matrix(dialogue),
            label_count: dialogue.label_count(),
            labels_by_category,
            labels_by_tag,
            speakers: speaker_stats(dialogue),
            thread_count: threads.len(),
            thread_sizes: threads.iter().map(Thread::len).collect(),
            threads,
            unit_count: dialogue.units().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusReport {
    pub dialogues: Vec<DialogueReport>,
    pub version: &'static str,
}

impl CorpusReport {
    pub fn new<'a>(dialogues: impl IntoIterator<Item = &'a Dialogue>) -> Self {
        CorpusReport {
            dialogues: dialogues.into_iter().map(DialogueReport::new).collect(),
            version: crate::io::corpus::FORMAT_VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}
