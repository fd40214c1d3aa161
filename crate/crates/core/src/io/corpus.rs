//! Canonical corpus JSON.
//!
//! ```text
//! {"version":"1.0","metadata":{..},"dialogues":[{"id":str,
//!   "units":[{"id":int,"speaker":str,"text":str,"start_time":num?,"end_time":num?}],
//!   "edges":[{"source":int,"target":int,
//!     "labels":[{"kind":"dialog_act"|"rhetorical"|"continuation","tag":str?,"orientation":"arg1"|"arg2"?}]}]}]}
//! ```
//!
//! Serialization is canonical: object keys sorted, units by id, edges by
//! (source, target), labels by (kind, tag), two-space indent and a
//! trailing newline.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{validate_parts, Diagnostic, DiagnosticCode, Dialogue, GraphError, ResponseDependency, SlashUnit, UnitId};
use crate::taxonomy::{parse_tag, EdgeLabel, LabelKind, Orientation, RhetoricalLabel, TaxonomyError};

pub const FORMAT_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemaCause {
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Taxonomy(#[from] TaxonomyError),
    #[error("duplicate dialogue id `{0}`")]
    DuplicateDialogueId(String),
    #[error("unsupported format version `{0}`")]
    UnsupportedVersion(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("malformed input at line {line}, column {column}: {message}")]
    MalformedInput {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at `{path}`: {cause}")]
    SchemaViolation { path: String, cause: SchemaCause },
}

impl FormatError {
    fn schema(path: impl Into<String>, cause: impl Into<SchemaCause>) -> Self {
        FormatError::SchemaViolation {
            path: path.into(),
            cause: cause.into(),
        }
    }

    /// The core-graph error behind a schema violation, if any.
    pub fn graph_error(&self) -> Option<&GraphError> {
        match self {
            FormatError::SchemaViolation {
                cause: SchemaCause::Graph(e),
                ..
            } => Some(e),
            _ => None,
        }
    }
}

/// A set of dialogues with free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub version: String,
    pub metadata: BTreeMap<String, String>,
    dialogues: Vec<Dialogue>,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus::new()
    }
}

impl Corpus {
    pub fn new() -> Self {
        Corpus {
            version: FORMAT_VERSION.to_string(),
            metadata: BTreeMap::new(),
            dialogues: Vec::new(),
        }
    }

    pub fn from_dialogues(dialogues: impl IntoIterator<Item = Dialogue>) -> Result<Self, SchemaCause> {
        let mut corpus = Corpus::new();
        for d in dialogues {
            corpus.push(d)?;
        }
        Ok(corpus)
    }

    pub fn dialogues(&self) -> &[Dialogue] {
        &self.dialogues
    }

    pub fn into_dialogues(self) -> Vec<Dialogue> {
        self.dialogues
    }

    pub fn dialogue(&self, id: &str) -> Option<&Dialogue> {
        self.dialogues.iter().find(|d| d.id() == id)
    }

    pub fn push(&mut self, dialogue: Dialogue) -> Result<(), SchemaCause> {
        if self.dialogue(dialogue.id()).is_some() {
            return Err(SchemaCause::DuplicateDialogueId(dialogue.id().to_string()));
        }
        self.dialogues.push(dialogue);
        Ok(())
    }

    /// Replaces the dialogue with the same id, or appends it.
    pub fn upsert(&mut self, dialogue: Dialogue) {
        match self.dialogues.iter_mut().find(|d| d.id() == dialogue.id()) {
            Some(slot) => *slot = dialogue,
            None => self.dialogues.push(dialogue),
        }
    }
}

// Field order is alphabetical so derived serialization emits sorted keys.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusRecord {
    pub dialogues: Vec<DialogueRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DialogueRecord {
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
    pub id: String,
    pub units: Vec<UnitRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_time: Option<f64>,
    pub id: UnitId,
    pub speaker: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_time: Option<f64>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    #[serde(default)]
    pub labels: Vec<LabelRecord>,
    pub source: UnitId,
    pub target: UnitId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

impl LabelRecord {
    /// Decodes against the taxonomy. The `Taxonomy` cause carries
    /// `UnknownTag` for unrecognized tag strings; everything else is a
    /// shape problem.
    pub fn to_label(&self) -> Result<EdgeLabel, SchemaCause> {
        let kind: LabelKind = self.kind.parse().map_err(|_| {
            SchemaCause::Shape(format!("unknown label kind `{}`", self.kind))
        })?;
        if kind == LabelKind::Continuation {
            if self.tag.is_some() || self.orientation.is_some() {
                return Err(SchemaCause::Shape(
                    "continuation labels take no tag or orientation".into(),
                ));
            }
            return Ok(EdgeLabel::Continuation);
        }
        let tag = self
            .tag
            .as_deref()
            .ok_or_else(|| SchemaCause::Shape(format!("{} label needs a tag", kind.name())))?;
        let label = parse_tag(tag)?;
        if label.kind() != kind {
            return Err(SchemaCause::Shape(format!(
                "tag `{tag}` is a {}, not a {}",
                label.kind().name(),
                kind.name()
            )));
        }
        match (label, self.orientation.as_deref()) {
            (label, None) => Ok(label),
            (EdgeLabel::Rhetorical(r), Some(o)) => {
                let o: Orientation = o
                    .parse()
                    .map_err(|_| SchemaCause::Shape(format!("unknown orientation `{o}`")))?;
                Ok(RhetoricalLabel::with_orientation(r.relation(), o)?.into())
            }
            (_, Some(_)) => Err(SchemaCause::Shape(
                "orientation applies only to rhetorical labels".into(),
            )),
        }
    }

    pub fn from_label(label: &EdgeLabel) -> Self {
        LabelRecord {
            kind: label.kind().name().to_string(),
            orientation: label.orientation().map(|o| o.name().to_string()),
            tag: label.tag_name().map(str::to_string),
        }
    }
}

impl UnitRecord {
    pub fn to_unit(&self) -> SlashUnit {
        SlashUnit::new(self.id, self.speaker.clone(), self.text.clone())
            .with_times(self.start_time, self.end_time)
    }

    pub fn from_unit(unit: &SlashUnit) -> Self {
        UnitRecord {
            end_time: unit.end_time,
            id: unit.id,
            speaker: unit.speaker.clone(),
            start_time: unit.start_time,
            text: unit.text.clone(),
        }
    }
}

impl EdgeRecord {
    pub fn from_edge(edge: &ResponseDependency) -> Self {
        EdgeRecord {
            labels: edge.labels.iter().map(LabelRecord::from_label).collect(),
            source: edge.source,
            target: edge.target,
        }
    }
}

impl DialogueRecord {
    pub fn from_dialogue(d: &Dialogue) -> Self {
        DialogueRecord {
            edges: d.edges().map(|e| EdgeRecord::from_edge(&e)).collect(),
            id: d.id().to_string(),
            units: d.units().iter().map(UnitRecord::from_unit).collect(),
        }
    }

    /// Decodes labels, collecting (path, cause) for every label that fails.
    fn decode_edges(&self, path: &str) -> (Vec<ResponseDependency>, Vec<(String, SchemaCause)>) {
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut failures = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            let mut labels = BTreeSet::new();
            for (j, label) in edge.labels.iter().enumerate() {
                match label.to_label() {
                    Ok(l) => {
                        labels.insert(l);
                    }
                    Err(cause) => failures.push((format!("{path}.edges[{i}].labels[{j}]"), cause)),
                }
            }
            edges.push(ResponseDependency {
                source: edge.source,
                target: edge.target,
                labels,
            });
        }
        (edges, failures)
    }

    pub fn to_dialogue(&self, path: &str) -> Result<Dialogue, FormatError> {
        let (edges, failures) = self.decode_edges(path);
        if let Some((p, cause)) = failures.into_iter().next() {
            return Err(FormatError::schema(p, cause));
        }
        let units = self.units.iter().map(UnitRecord::to_unit).collect();
        Dialogue::build(self.id.clone(), units, edges).map_err(|e| {
            let at = edge_index(&self.edges, &e)
                .map(|i| format!("{path}.edges[{i}]"))
                .unwrap_or_else(|| format!("{path}.units"));
            FormatError::schema(at, e)
        })
    }
}

fn edge_index(edges: &[EdgeRecord], err: &GraphError) -> Option<usize> {
    let (s, t) = match *err {
        GraphError::DanglingEdgeEndpoint { from, to } | GraphError::ForwardEdge { from, to } => {
            (from, to)
        }
        GraphError::SelfEdgeWithRhetoricalLabel(u) => (u, u),
        _ => return None,
    };
    edges.iter().position(|e| e.source == s && e.target == t)
}

fn read_record(bytes: &[u8]) -> Result<CorpusRecord, FormatError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let record: CorpusRecord = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        classify(inner, path)
    })?;
    de.end().map_err(|e| classify(e, String::new()))?;
    if record.version != FORMAT_VERSION {
        return Err(FormatError::schema(
            "version",
            SchemaCause::UnsupportedVersion(record.version),
        ));
    }
    let mut ids = HashSet::new();
    for (i, d) in record.dialogues.iter().enumerate() {
        if !ids.insert(d.id.as_str()) {
            return Err(FormatError::schema(
                format!("dialogues[{i}].id"),
                SchemaCause::DuplicateDialogueId(d.id.clone()),
            ));
        }
    }
    Ok(record)
}

fn classify(err: serde_json::Error, path: String) -> FormatError {
    use serde_json::error::Category;
    match err.classify() {
        Category::Data => FormatError::schema(
            if path.is_empty() { ".".to_string() } else { path },
            SchemaCause::Shape(err.to_string()),
        ),
        _ => FormatError::MalformedInput {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        },
    }
}

/// Parses and fully validates a corpus file.
pub fn parse_corpus(bytes: &[u8]) -> Result<Corpus, FormatError> {
    let record = read_record(bytes)?;
    let mut dialogues = Vec::with_capacity(record.dialogues.len());
    for (i, d) in record.dialogues.iter().enumerate() {
        dialogues.push(d.to_dialogue(&format!("dialogues[{i}]"))?);
    }
    Ok(Corpus {
        version: record.version,
        metadata: record.metadata,
        dialogues,
    })
}

/// A validation finding tied to the dialogue it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentDiagnostic {
    pub dialogue: String,
    pub diagnostic: Diagnostic,
}

/// Validates a corpus file without building it, reporting every finding.
///
/// Syntax and shape problems abort with `Err`. Graph violations and unknown
/// tags come back as error diagnostics alongside all warnings.
pub fn validate_document(
    bytes: &[u8],
    completeness: bool,
) -> Result<Vec<DocumentDiagnostic>, FormatError> {
    let record = read_record(bytes)?;
    let mut out = Vec::new();
    for (i, d) in record.dialogues.iter().enumerate() {
        let path = format!("dialogues[{i}]");
        let (edges, failures) = d.decode_edges(&path);
        for (p, cause) in failures {
            match cause {
                SchemaCause::Taxonomy(TaxonomyError::UnknownTag(tag)) => {
                    out.push(DocumentDiagnostic {
                        dialogue: d.id.clone(),
                        diagnostic: Diagnostic::new(
                            DiagnosticCode::UnknownTag,
                            format!("unknown tag `{tag}` at {p}"),
                        ),
                    });
                }
                other => return Err(FormatError::schema(p, other)),
            }
        }
        // An edge that lost labels to UnknownTag is not also "unlabelled".
        let mut bad_edges = edges;
        for (edge, record) in bad_edges.iter_mut().zip(&d.edges) {
            if record.labels.len() != edge.labels.len() {
                edge.labels.insert(EdgeLabel::Continuation);
            }
        }
        let units: Vec<SlashUnit> = d.units.iter().map(UnitRecord::to_unit).collect();
        for diagnostic in validate_parts(&units, &bad_edges, completeness) {
            out.push(DocumentDiagnostic {
                dialogue: d.id.clone(),
                diagnostic,
            });
        }
    }
    Ok(out)
}

impl CorpusRecord {
    pub fn from_corpus(corpus: &Corpus) -> Self {
        CorpusRecord {
            dialogues: corpus.dialogues.iter().map(DialogueRecord::from_dialogue).collect(),
            metadata: corpus.metadata.clone(),
            version: corpus.version.clone(),
        }
    }
}

/// Canonical pretty JSON for any serializable record, with trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("records serialize");
    out.push('\n');
    out
}

/// Canonical, byte-deterministic serialization.
pub fn serialize_corpus(corpus: &Corpus) -> Vec<u8> {
    to_canonical_json(&CorpusRecord::from_corpus(corpus)).into_bytes()
}

/// `serialize_corpus(parse_corpus(bytes))`.
pub fn canonicalize(bytes: &[u8]) -> Result<Vec<u8>, FormatError> {
    parse_corpus(bytes).map(|c| serialize_corpus(&c))
}
