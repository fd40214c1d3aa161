//! Slash units, response dependencies and the annotation graph.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::taxonomy::EdgeLabel;

/// Position of a unit in dialogue order. Ids double as temporal indices.
pub type UnitId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate unit id {0}")]
    DuplicateUnitId(UnitId),
    #[error("edge {from}->{to} references a unit that does not exist")]
    DanglingEdgeEndpoint { from: UnitId, to: UnitId },
    #[error("edge {from}->{to} points forward; dependencies must point to earlier units")]
    ForwardEdge { from: UnitId, to: UnitId },
    #[error("self edge on unit {0} carries a rhetorical label")]
    SelfEdgeWithRhetoricalLabel(UnitId),
    #[error("unit {0} has empty text")]
    EmptyText(UnitId),
    #[error("unit {0} has a negative or non-finite timestamp")]
    InvalidTimestamp(UnitId),
    #[error("no edge {from}->{to}{}", label.as_ref().map(|l| format!(" labelled {l}")).unwrap_or_default())]
    NoSuchEdge {
        from: UnitId,
        to: UnitId,
        label: Option<String>,
    },
    #[error("no unit {0}")]
    NoSuchUnit(UnitId),
}

impl GraphError {
    pub fn code(&self) -> DiagnosticCode {
        match self {
            GraphError::DuplicateUnitId(_) => DiagnosticCode::DuplicateUnitId,
            GraphError::DanglingEdgeEndpoint { .. } => DiagnosticCode::DanglingEdgeEndpoint,
            GraphError::ForwardEdge { .. } => DiagnosticCode::ForwardEdge,
            GraphError::SelfEdgeWithRhetoricalLabel(_) => DiagnosticCode::SelfEdgeWithRhetoricalLabel,
            GraphError::EmptyText(_) => DiagnosticCode::EmptyText,
            GraphError::InvalidTimestamp(_) => DiagnosticCode::InvalidTimestamp,
            GraphError::NoSuchEdge { .. } => DiagnosticCode::NoSuchEdge,
            GraphError::NoSuchUnit(_) => DiagnosticCode::NoSuchUnit,
        }
    }
}

/// One annotatable dialogue segment.
#[derive(Debug, Clone, PartialEq)]
pub struct SlashUnit {
    pub id: UnitId,
    pub speaker: String,
    pub text: String,
    pub start_time: Option<f64>,
    pub end_time: Option<f64>,
}

impl SlashUnit {
    pub fn new(id: UnitId, speaker: impl Into<String>, text: impl Into<String>) -> Self {
        SlashUnit {
            id,
            speaker: speaker.into(),
            text: text.into(),
            start_time: None,
            end_time: None,
        }
    }

    pub fn with_times(mut self, start: Option<f64>, end: Option<f64>) -> Self {
        self.start_time = start;
        self.end_time = end;
        self
    }
}

/// A directed, multi-labelled edge from a responding unit back to the unit
/// it depends on. `source == target` marks the start of a thread.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResponseDependency {
    pub source: UnitId,
    pub target: UnitId,
    pub labels: BTreeSet<EdgeLabel>,
}

impl ResponseDependency {
    pub fn new(
        source: UnitId,
        target: UnitId,
        labels: impl IntoIterator<Item = EdgeLabel>,
    ) -> Self {
        ResponseDependency {
            source,
            target,
            labels: labels.into_iter().collect(),
        }
    }

    /// A bare edge: equivalent to a single continuation label.
    pub fn continuation(source: UnitId, target: UnitId) -> Self {
        Self::new(source, target, [EdgeLabel::Continuation])
    }

    pub fn is_self(&self) -> bool {
        self.source == self.target
    }

    pub fn is_forward(&self) -> bool {
        self.target > self.source
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

impl Severity {
    pub fn name(self) -> &'static str {
        match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
            Severity::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DiagnosticCode {
    // errors
    ForwardEdge,
    DanglingEdgeEndpoint,
    DuplicateUnitId,
    SelfEdgeWithRhetoricalLabel,
    UnknownTag,
    EmptyText,
    InvalidTimestamp,
    NoSuchEdge,
    NoSuchUnit,
    // warnings
    MissingContext,
    EmptyLabels,
    UnorderedTimestamps,
    // info
    SelfEdgeWithResponses,
}

impl DiagnosticCode {
    pub fn severity(self) -> Severity {
        use DiagnosticCode::*;
        match self {
            MissingContext | EmptyLabels | UnorderedTimestamps => Severity::Warning,
            SelfEdgeWithResponses => Severity::Info,
            _ => Severity::Error,
        }
    }

    pub fn name(self) -> &'static str {
        use DiagnosticCode::*;
        match self {
            ForwardEdge => "ForwardEdge",
            DanglingEdgeEndpoint => "DanglingEdgeEndpoint",
            DuplicateUnitId => "DuplicateUnitId",
            SelfEdgeWithRhetoricalLabel => "SelfEdgeWithRhetoricalLabel",
            UnknownTag => "UnknownTag",
            EmptyText => "EmptyText",
            InvalidTimestamp => "InvalidTimestamp",
            NoSuchEdge => "NoSuchEdge",
            NoSuchUnit => "NoSuchUnit",
            MissingContext => "MissingContext",
            EmptyLabels => "EmptyLabels",
            UnorderedTimestamps => "UnorderedTimestamps",
            SelfEdgeWithResponses => "SelfEdgeWithResponses",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validation finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<(UnitId, UnitId)>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: DiagnosticCode, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            unit: None,
            edge: None,
            message: message.into(),
        }
    }

    pub fn at_unit(mut self, unit: UnitId) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn at_edge(mut self, source: UnitId, target: UnitId) -> Self {
        self.unit = Some(source);
        self.edge = Some((source, target));
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl From<&GraphError> for Diagnostic {
    fn from(err: &GraphError) -> Self {
        let d = Diagnostic::new(err.code(), err.to_string());
        match *err {
            GraphError::DuplicateUnitId(u)
            | GraphError::SelfEdgeWithRhetoricalLabel(u)
            | GraphError::EmptyText(u)
            | GraphError::InvalidTimestamp(u)
            | GraphError::NoSuchUnit(u) => d.at_unit(u),
            GraphError::DanglingEdgeEndpoint { from, to }
            | GraphError::ForwardEdge { from, to }
            | GraphError::NoSuchEdge { from, to, .. } => d.at_edge(from, to),
        }
    }
}

fn check_edge_shape(
    source: UnitId,
    target: UnitId,
    labels: &BTreeSet<EdgeLabel>,
    known: impl Fn(UnitId) -> bool,
) -> Option<GraphError> {
    if !known(source) || !known(target) {
        return Some(GraphError::DanglingEdgeEndpoint { from: source, to: target });
    }
    if target > source {
        return Some(GraphError::ForwardEdge { from: source, to: target });
    }
    if source == target && labels.iter().any(EdgeLabel::is_rhetorical) {
        return Some(GraphError::SelfEdgeWithRhetoricalLabel(source));
    }
    None
}

fn structural_errors(units: &[SlashUnit], edges: &[ResponseDependency]) -> Vec<GraphError> {
    let mut errors = Vec::new();
    let mut seen = HashSet::new();
    for unit in units {
        if !seen.insert(unit.id) {
            errors.push(GraphError::DuplicateUnitId(unit.id));
        }
        if unit.text.trim().is_empty() {
            errors.push(GraphError::EmptyText(unit.id));
        }
        let bad_time = |t: Option<f64>| t.is_some_and(|t| !t.is_finite() || t < 0.0);
        if bad_time(unit.start_time) || bad_time(unit.end_time) {
            errors.push(GraphError::InvalidTimestamp(unit.id));
        }
    }
    for edge in edges {
        if let Some(err) = check_edge_shape(edge.source, edge.target, &edge.labels, |u| {
            seen.contains(&u)
        }) {
            errors.push(err);
        }
    }
    errors
}

fn warnings(
    units: &[SlashUnit],
    edges: &[ResponseDependency],
    completeness: bool,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for edge in edges.iter().filter(|e| e.labels.is_empty()) {
        out.push(
            Diagnostic::new(
                DiagnosticCode::EmptyLabels,
                "edge has no labels; read as a continuation",
            )
            .at_edge(edge.source, edge.target),
        );
    }

    let mut ordered: Vec<&SlashUnit> = units.iter().collect();
    ordered.sort_by_key(|u| u.id);
    let mut last_start: Option<(UnitId, f64)> = None;
    for unit in &ordered {
        if let (Some(s), Some(e)) = (unit.start_time, unit.end_time) {
            if s > e {
                out.push(
                    Diagnostic::new(
                        DiagnosticCode::UnorderedTimestamps,
                        format!("start time {s} is after end time {e}"),
                    )
                    .at_unit(unit.id),
                );
            }
        }
        if let Some(s) = unit.start_time {
            if let Some((prev, ps)) = last_start {
                if s < ps {
                    out.push(
                        Diagnostic::new(
                            DiagnosticCode::UnorderedTimestamps,
                            format!("starts at {s}, before unit {prev} at {ps}"),
                        )
                        .at_unit(unit.id),
                    );
                }
            }
            last_start = Some((unit.id, s));
        }
    }

    let mut has_self = HashSet::new();
    let mut has_backward = HashSet::new();
    for edge in edges {
        if edge.is_self() {
            has_self.insert(edge.source);
        } else {
            has_backward.insert(edge.source);
        }
    }
    for unit in &ordered {
        let (s, b) = (has_self.contains(&unit.id), has_backward.contains(&unit.id));
        if completeness && !s && !b {
            out.push(
                Diagnostic::new(
                    DiagnosticCode::MissingContext,
                    "unit has no response dependency (add a self edge to start a thread)",
                )
                .at_unit(unit.id),
            );
        }
        if s && b {
            out.push(
                Diagnostic::new(
                    DiagnosticCode::SelfEdgeWithResponses,
                    "unit starts a thread and also responds to earlier units",
                )
                .at_unit(unit.id),
            );
        }
    }
    out
}

/// Validates raw parts, before (or instead of) building a [`Dialogue`].
///
/// Structural violations come back as error diagnostics; completeness and
/// timing problems as warnings. With `completeness` set, every unit must
/// have at least one outgoing edge.
pub fn validate_parts(
    units: &[SlashUnit],
    edges: &[ResponseDependency],
    completeness: bool,
) -> Vec<Diagnostic> {
    structural_errors(units, edges)
        .iter()
        .map(Diagnostic::from)
        .chain(warnings(units, edges, completeness))
        .collect()
}

/// An annotated dialogue: ordered units and a multi-labelled edge set.
///
/// Values are immutable snapshots; mutating operations return a new
/// dialogue. Every stored edge satisfies `target <= source`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dialogue {
    id: String,
    units: Vec<SlashUnit>,
    index: HashMap<UnitId, usize>,
    edges: BTreeMap<(UnitId, UnitId), BTreeSet<EdgeLabel>>,
}

impl Dialogue {
    /// Builds a dialogue, reporting the first structural violation.
    ///
    /// Units are ordered by id. Edges on the same unit pair are merged, and
    /// an empty label set becomes a single continuation label.
    pub fn build(
        id: impl Into<String>,
        mut units: Vec<SlashUnit>,
        edges: Vec<ResponseDependency>,
    ) -> Result<Dialogue, GraphError> {
        if let Some(err) = structural_errors(&units, &edges).into_iter().next() {
            return Err(err);
        }
        units.sort_by_key(|u| u.id);
        let index = units.iter().enumerate().map(|(i, u)| (u.id, i)).collect();
        let mut dialogue = Dialogue {
            id: id.into(),
            units,
            index,
            edges: BTreeMap::new(),
        };
        for edge in edges {
            dialogue.insert(edge.source, edge.target, edge.labels);
        }
        Ok(dialogue)
    }

    /// A dialogue with no units.
    pub fn empty(id: impl Into<String>) -> Dialogue {
        Dialogue {
            id: id.into(),
            units: Vec::new(),
            index: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    fn insert(&mut self, source: UnitId, target: UnitId, labels: BTreeSet<EdgeLabel>) {
        let entry = self.edges.entry((source, target)).or_default();
        if labels.is_empty() {
            entry.insert(EdgeLabel::Continuation);
        } else {
            entry.extend(labels);
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn units(&self) -> &[SlashUnit] {
        &self.units
    }

    pub fn unit(&self, id: UnitId) -> Option<&SlashUnit> {
        self.index.get(&id).map(|&i| &self.units[i])
    }

    pub fn contains_unit(&self, id: UnitId) -> bool {
        self.index.contains_key(&id)
    }

    /// Number of distinct unit pairs carrying an edge.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label_count(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }

    /// Edges ordered by (source, target).
    pub fn edges(&self) -> impl Iterator<Item = ResponseDependency> + '_ {
        self.edges
            .iter()
            .map(|(&(source, target), labels)| ResponseDependency {
                source,
                target,
                labels: labels.clone(),
            })
    }

    pub fn labels_between(&self, source: UnitId, target: UnitId) -> Option<&BTreeSet<EdgeLabel>> {
        self.edges.get(&(source, target))
    }

    /// Unit pairs `(source, target)` with at least one label.
    pub fn pairs(&self) -> impl Iterator<Item = (UnitId, UnitId)> + '_ {
        self.edges.keys().copied()
    }

    /// Returns a copy with the edge added. Labels already present on the
    /// pair are merged silently.
    pub fn add_edge(
        &self,
        source: UnitId,
        target: UnitId,
        labels: impl IntoIterator<Item = EdgeLabel>,
    ) -> Result<Dialogue, GraphError> {
        let labels: BTreeSet<EdgeLabel> = labels.into_iter().collect();
        if let Some(err) = check_edge_shape(source, target, &labels, |u| self.contains_unit(u)) {
            return Err(err);
        }
        let mut next = self.clone();
        next.insert(source, target, labels);
        Ok(next)
    }

    /// Returns a copy without the given label, or without the whole edge
    /// when `label` is `None`. Removing the last label drops the edge.
    pub fn remove_edge(
        &self,
        source: UnitId,
        target: UnitId,
        label: Option<&EdgeLabel>,
    ) -> Result<Dialogue, GraphError> {
        let missing = || GraphError::NoSuchEdge {
            from: source,
            to: target,
            label: label.map(ToString::to_string),
        };
        let labels = self.edges.get(&(source, target)).ok_or_else(missing)?;
        let mut next = self.clone();
        match label {
            None => {
                next.edges.remove(&(source, target));
            }
            Some(label) => {
                if !labels.contains(label) {
                    return Err(missing());
                }
                let set = next.edges.get_mut(&(source, target)).expect("edge present");
                set.remove(label);
                if set.is_empty() {
                    next.edges.remove(&(source, target));
                }
            }
        }
        Ok(next)
    }

    /// Edges leaving `unit`, sorted by target.
    pub fn outgoing(&self, unit: UnitId) -> Result<Vec<ResponseDependency>, GraphError> {
        if !self.contains_unit(unit) {
            return Err(GraphError::NoSuchUnit(unit));
        }
        Ok(self
            .edges
            .range((unit, 0)..=(unit, UnitId::MAX))
            .map(|(&(source, target), labels)| ResponseDependency {
                source,
                target,
                labels: labels.clone(),
            })
            .collect())
    }

    /// Edges arriving at `unit` (self edge included), sorted by source.
    pub fn incoming(&self, unit: UnitId) -> Result<Vec<ResponseDependency>, GraphError> {
        if !self.contains_unit(unit) {
            return Err(GraphError::NoSuchUnit(unit));
        }
        Ok(self
            .edges()
            .filter(|e| e.target == unit)
            .collect())
    }

    pub fn validate(&self, completeness: bool) -> Vec<Diagnostic> {
        let edges: Vec<ResponseDependency> = self.edges().collect();
        validate_parts(&self.units, &edges, completeness)
    }

    /// Speakers in order of first appearance.
    pub fn speakers(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.units
            .iter()
            .map(|u| u.speaker.as_str())
            .filter(|s| seen.insert(*s))
            .collect()
    }
}
