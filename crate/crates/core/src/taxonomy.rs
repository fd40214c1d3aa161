//! The closed dialog-act and rhetorical-relation vocabularies.
//!
//! Both vocabularies are compiled in. Dialog acts are grouped into six
//! categories following the SWBD-DAMSL hierarchy; rhetorical relations are
//! grouped into the four PDTB classes. Asymmetric relations carry a dual so
//! that every edge can point backward without losing its reading.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaxonomyError {
    #[error("unknown tag `{0}`")]
    UnknownTag(String),
    #[error("tag `{0}` names both a dialog act and a rhetorical relation")]
    AmbiguousTag(String),
    #[error("unknown {vocabulary} `{name}`")]
    UnknownName {
        vocabulary: &'static str,
        name: String,
    },
    #[error("relation `{0}` is symmetric and takes no orientation")]
    OrientationOnSymmetric(RhetoricalRelation),
}

macro_rules! vocabulary {
    (
        $(#[$meta:meta])*
        pub enum $name:ident : $group:ident {
            $($variant:ident = $text:literal in $cat:ident),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            /// Every member in canonical order.
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Canonical (hyphenated) name used in corpus files.
            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn group(self) -> $group {
                match self {
                    $($name::$variant => $group::$cat),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

/// Top-level dialog act categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DialogActCategory {
    Statements,
    CommunicativeStatus,
    BackwardCommunicativeFunction,
    ForwardCommunicativeFunction,
    InformationLevel,
    Other,
}

impl DialogActCategory {
    pub const ALL: &'static [DialogActCategory] = &[
        DialogActCategory::Statements,
        DialogActCategory::CommunicativeStatus,
        DialogActCategory::BackwardCommunicativeFunction,
        DialogActCategory::ForwardCommunicativeFunction,
        DialogActCategory::InformationLevel,
        DialogActCategory::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DialogActCategory::Statements => "Statements",
            DialogActCategory::CommunicativeStatus => "CommunicativeStatus",
            DialogActCategory::BackwardCommunicativeFunction => "BackwardCommunicativeFunction",
            DialogActCategory::ForwardCommunicativeFunction => "ForwardCommunicativeFunction",
            DialogActCategory::InformationLevel => "InformationLevel",
            DialogActCategory::Other => "Other",
        }
    }
}

impl fmt::Display for DialogActCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rhetorical relation classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhetoricalClass {
    Temporal,
    Contingency,
    Comparison,
    Expansion,
}

impl RhetoricalClass {
    pub const ALL: &'static [RhetoricalClass] = &[
        RhetoricalClass::Temporal,
        RhetoricalClass::Contingency,
        RhetoricalClass::Comparison,
        RhetoricalClass::Expansion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RhetoricalClass::Temporal => "Temporal",
            RhetoricalClass::Contingency => "Contingency",
            RhetoricalClass::Comparison => "Comparison",
            RhetoricalClass::Expansion => "Expansion",
        }
    }
}

impl fmt::Display for RhetoricalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

vocabulary! {
    /// A dialog act. Attached to response edges, never to units.
    pub enum DialogAct: DialogActCategory {
        Statement = "Statement" in Statements,
        Opinion = "Opinion" in Statements,
        SelfTalk = "Self-talk" in CommunicativeStatus,
        Abandoned = "Abandoned" in CommunicativeStatus,
        Answer = "Answer" in BackwardCommunicativeFunction,
        Stalling = "Stalling" in BackwardCommunicativeFunction,
        Accept = "Accept" in BackwardCommunicativeFunction,
        Reject = "Reject" in BackwardCommunicativeFunction,
        CollaborativeCompletion = "Collaborative-Completion" in BackwardCommunicativeFunction,
        Appreciation = "Appreciation" in BackwardCommunicativeFunction,
        Downplayer = "Downplayer" in BackwardCommunicativeFunction,
        Sympathy = "Sympathy" in BackwardCommunicativeFunction,
        Acknowledge = "Acknowledge" in BackwardCommunicativeFunction,
        SignalNonUnderstanding = "Signal-non-understanding" in BackwardCommunicativeFunction,
        TaskManagement = "Task-Management" in ForwardCommunicativeFunction,
        Offer = "Offer" in ForwardCommunicativeFunction,
        ActionDirective = "Action-Directive" in ForwardCommunicativeFunction,
        Commit = "Commit" in ForwardCommunicativeFunction,
        QuestionInfoRequest = "Question/Info-request" in ForwardCommunicativeFunction,
        OpenQuestion = "Open-Question" in ForwardCommunicativeFunction,
        RhetoricalQuestion = "Rhetorical-Question" in ForwardCommunicativeFunction,
        Apology = "Apology" in ForwardCommunicativeFunction,
        Thanking = "Thanking" in ForwardCommunicativeFunction,
        Exclamation = "Exclamation" in ForwardCommunicativeFunction,
        ExplicitPerformative = "Explicit-performative" in ForwardCommunicativeFunction,
        Welcome = "Welcome" in ForwardCommunicativeFunction,
        Greeting = "Greeting" in InformationLevel,
        Correction = "Correction" in InformationLevel,
        ConventionalClosing = "Conventional-closing" in InformationLevel,
        Hedge = "Hedge" in Other,
        Joke = "Joke" in Other,
    }
}

#[cfg(not(feature = "list-relation"))]
vocabulary! {
    /// A rhetorical (discourse) relation between two distinct units.
    pub enum RhetoricalRelation: RhetoricalClass {
        Async = "Async" in Temporal,
        Sync = "Sync" in Temporal,
        Before = "Before" in Temporal,
        After = "After" in Temporal,
        Cause = "Cause" in Contingency,
        Justify = "Justify" in Contingency,
        Motivation = "Motivation" in Contingency,
        Condition = "Condition" in Contingency,
        NegCondition = "Neg-Condition" in Contingency,
        Purpose = "Purpose" in Contingency,
        Enablement = "Enablement" in Contingency,
        Reason = "Reason" in Contingency,
        Result = "Result" in Contingency,
        Evaluation = "Evaluation" in Contingency,
        Contrast = "Contrast" in Comparison,
        Similarity = "Similarity" in Comparison,
        Concession = "Concession" in Comparison,
        Expansion = "Expansion" in Expansion,
        Instantiation = "Instantiation" in Expansion,
        LevelOfDetails = "Level-of-details" in Expansion,
        Substitution = "Substitution" in Expansion,
        Restatement = "Restatement" in Expansion,
        Summary = "Summary" in Expansion,
        Disjunction = "Disjunction" in Expansion,
        Exception = "Exception" in Expansion,
        Conjunction = "Conjunction" in Expansion,
        Manner = "Manner" in Expansion,
        ProcessStep = "Process-step" in Expansion,
        ObjectAttribute = "Object-attribute" in Expansion,
    }
}

#[cfg(feature = "list-relation")]
vocabulary! {
    /// A rhetorical (discourse) relation between two distinct units.
    pub enum RhetoricalRelation: RhetoricalClass {
        Async = "Async" in Temporal,
        Sync = "Sync" in Temporal,
        Before = "Before" in Temporal,
        After = "After" in Temporal,
        Cause = "Cause" in Contingency,
        Justify = "Justify" in Contingency,
        Motivation = "Motivation" in Contingency,
        Condition = "Condition" in Contingency,
        NegCondition = "Neg-Condition" in Contingency,
        Purpose = "Purpose" in Contingency,
        Enablement = "Enablement" in Contingency,
        Reason = "Reason" in Contingency,
        Result = "Result" in Contingency,
        Evaluation = "Evaluation" in Contingency,
        Contrast = "Contrast" in Comparison,
        Similarity = "Similarity" in Comparison,
        Concession = "Concession" in Comparison,
        Expansion = "Expansion" in Expansion,
        Instantiation = "Instantiation" in Expansion,
        LevelOfDetails = "Level-of-details" in Expansion,
        Substitution = "Substitution" in Expansion,
        Restatement = "Restatement" in Expansion,
        Summary = "Summary" in Expansion,
        Disjunction = "Disjunction" in Expansion,
        Exception = "Exception" in Expansion,
        Conjunction = "Conjunction" in Expansion,
        Manner = "Manner" in Expansion,
        ProcessStep = "Process-step" in Expansion,
        ObjectAttribute = "Object-attribute" in Expansion,
        List = "List" in Expansion,
    }
}

impl DialogAct {
    pub fn category(self) -> DialogActCategory {
        self.group()
    }
}

impl FromStr for DialogAct {
    type Err = TaxonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_tag(s) {
            Ok(EdgeLabel::DialogAct(act)) => Ok(act),
            _ => Err(TaxonomyError::UnknownName {
                vocabulary: "dialog act",
                name: s.to_string(),
            }),
        }
    }
}

/// Whether a relation reads the same in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
}

impl RhetoricalRelation {
    pub fn class(self) -> RhetoricalClass {
        self.group()
    }

    pub fn symmetry(self) -> Symmetry {
        use RhetoricalRelation::*;
        match self {
            Async | Sync | Contrast | Similarity | Expansion | Restatement | Disjunction
            | Conjunction => Symmetry::Symmetric,
            #[cfg(feature = "list-relation")]
            List => Symmetry::Symmetric,
            _ => Symmetry::Asymmetric,
        }
    }

    pub fn is_symmetric(self) -> bool {
        self.symmetry() == Symmetry::Symmetric
    }

    /// The relation that expresses the same meaning with the arguments
    /// swapped.
    ///
    /// `Reason`/`Result` and `Before`/`After` are named pairs. Every other
    /// asymmetric relation is its own dual: the reading is carried by the
    /// label's [`Orientation`] instead. Symmetric relations have no dual.
    pub fn dual(self) -> Option<RhetoricalRelation> {
        use RhetoricalRelation::*;
        match self {
            Reason => Some(Result),
            Result => Some(Reason),
            Before => Some(After),
            After => Some(Before),
            r if r.is_symmetric() => None,
            r => Some(r),
        }
    }

    /// True when the dual is a differently named relation.
    pub fn has_named_dual(self) -> bool {
        self.dual().is_some_and(|d| d != self)
    }
}

impl FromStr for RhetoricalRelation {
    type Err = TaxonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_tag(s) {
            Ok(EdgeLabel::Rhetorical(label)) => Ok(label.relation()),
            _ => Err(TaxonomyError::UnknownName {
                vocabulary: "rhetorical relation",
                name: s.to_string(),
            }),
        }
    }
}

/// Which argument of an asymmetric relation the edge's source unit fills.
///
/// With `Arg1` the edge `s -> t` labelled `R` reads "s is R of t" (for
/// example "s is a Result of t"). With `Arg2` it reads "t is R of s".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Orientation {
    #[default]
    Arg1,
    Arg2,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Arg1 => Orientation::Arg2,
            Orientation::Arg2 => Orientation::Arg1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Arg1 => "arg1",
            Orientation::Arg2 => "arg2",
        }
    }
}

impl FromStr for Orientation {
    type Err = TaxonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arg1" => Ok(Orientation::Arg1),
            "arg2" => Ok(Orientation::Arg2),
            _ => Err(TaxonomyError::UnknownName {
                vocabulary: "orientation",
                name: s.to_string(),
            }),
        }
    }
}

/// A rhetorical relation as stored on an edge.
///
/// Asymmetric relations always carry an orientation; symmetric ones never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RhetoricalLabel {
    relation: RhetoricalRelation,
    orientation: Option<Orientation>,
}

impl RhetoricalLabel {
    /// Label with the default orientation (source as first argument).
    pub fn new(relation: RhetoricalRelation) -> Self {
        let orientation = (!relation.is_symmetric()).then_some(Orientation::Arg1);
        RhetoricalLabel {
            relation,
            orientation,
        }
    }

    pub fn with_orientation(
        relation: RhetoricalRelation,
        orientation: Orientation,
    ) -> Result<Self, TaxonomyError> {
        if relation.is_symmetric() {
            return Err(TaxonomyError::OrientationOnSymmetric(relation));
        }
        Ok(RhetoricalLabel {
            relation,
            orientation: Some(orientation),
        })
    }

    pub fn relation(&self) -> RhetoricalRelation {
        self.relation
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.orientation
    }

    pub(crate) fn reoriented(relation: RhetoricalRelation, orientation: Option<Orientation>) -> Self {
        RhetoricalLabel {
            relation,
            orientation: if relation.is_symmetric() {
                None
            } else {
                Some(orientation.unwrap_or_default())
            },
        }
    }
}

/// The kind of response dependency a label denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    DialogAct,
    Rhetorical,
    Continuation,
}

impl LabelKind {
    pub fn name(self) -> &'static str {
        match self {
            LabelKind::DialogAct => "dialog_act",
            LabelKind::Rhetorical => "rhetorical",
            LabelKind::Continuation => "continuation",
        }
    }
}

impl FromStr for LabelKind {
    type Err = TaxonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dialog_act" => Ok(LabelKind::DialogAct),
            "rhetorical" => Ok(LabelKind::Rhetorical),
            "continuation" => Ok(LabelKind::Continuation),
            _ => Err(TaxonomyError::UnknownName {
                vocabulary: "label kind",
                name: s.to_string(),
            }),
        }
    }
}

/// One label on a response dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeLabel {
    DialogAct(DialogAct),
    Rhetorical(RhetoricalLabel),
    /// Thread continuation with no explicit functional or rhetorical relation.
    Continuation,
}

impl EdgeLabel {
    pub fn rhetorical(relation: RhetoricalRelation) -> Self {
        EdgeLabel::Rhetorical(RhetoricalLabel::new(relation))
    }

    pub fn kind(&self) -> LabelKind {
        match self {
            EdgeLabel::DialogAct(_) => LabelKind::DialogAct,
            EdgeLabel::Rhetorical(_) => LabelKind::Rhetorical,
            EdgeLabel::Continuation => LabelKind::Continuation,
        }
    }

    /// Canonical tag name, absent for continuation labels.
    pub fn tag_name(&self) -> Option<&'static str> {
        match self {
            EdgeLabel::DialogAct(act) => Some(act.name()),
            EdgeLabel::Rhetorical(label) => Some(label.relation.name()),
            EdgeLabel::Continuation => None,
        }
    }

    /// Category (dialog acts) or class (rhetorical) name; `Continuation`
    /// for continuation labels.
    pub fn group_name(&self) -> &'static str {
        match self {
            EdgeLabel::DialogAct(act) => act.category().name(),
            EdgeLabel::Rhetorical(label) => label.relation.class().name(),
            EdgeLabel::Continuation => "Continuation",
        }
    }

    pub fn orientation(&self) -> Option<Orientation> {
        match self {
            EdgeLabel::Rhetorical(label) => label.orientation,
            _ => None,
        }
    }

    pub fn is_rhetorical(&self) -> bool {
        matches!(self, EdgeLabel::Rhetorical(_))
    }

    pub fn as_rhetorical(&self) -> Option<RhetoricalLabel> {
        match self {
            EdgeLabel::Rhetorical(label) => Some(*label),
            _ => None,
        }
    }
}

impl From<DialogAct> for EdgeLabel {
    fn from(act: DialogAct) -> Self {
        EdgeLabel::DialogAct(act)
    }
}

impl From<RhetoricalRelation> for EdgeLabel {
    fn from(relation: RhetoricalRelation) -> Self {
        EdgeLabel::rhetorical(relation)
    }
}

impl From<RhetoricalLabel> for EdgeLabel {
    fn from(label: RhetoricalLabel) -> Self {
        EdgeLabel::Rhetorical(label)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::DialogAct(act) => f.write_str(act.name()),
            EdgeLabel::Rhetorical(label) => match label.orientation {
                Some(o) => write!(f, "{}({})", label.relation.name(), o.name()),
                None => f.write_str(label.relation.name()),
            },
            EdgeLabel::Continuation => f.write_str("continuation"),
        }
    }
}

/// All 31 dialog acts, in category order then listing order.
pub fn all_dialog_acts() -> &'static [DialogAct] {
    DialogAct::ALL
}

/// All rhetorical relations, in class order then listing order.
pub fn all_rhetorical_relations() -> &'static [RhetoricalRelation] {
    RhetoricalRelation::ALL
}

pub fn dual_of(relation: RhetoricalRelation) -> Option<RhetoricalRelation> {
    relation.dual()
}

/// Owning category or class, by name.
pub trait Categorized {
    fn category_name(&self) -> &'static str;
}

impl Categorized for DialogAct {
    fn category_name(&self) -> &'static str {
        self.category().name()
    }
}

impl Categorized for RhetoricalRelation {
    fn category_name(&self) -> &'static str {
        self.class().name()
    }
}

pub fn category_of<T: Categorized>(tag: &T) -> &'static str {
    tag.category_name()
}

const ALIASES: &[(&str, &str)] = &[
    ("info-request", "Question/Info-request"),
    ("information-request", "Question/Info-request"),
    ("precedence", "Before"),
    ("succession", "After"),
    ("equivalence", "Restatement"),
    ("level-of-detail", "Level-of-details"),
    ("enabling", "Enablement"),
    ("enabled", "Enablement"),
    ("response", "continuation"),
];

/// Lookup key: lowercase, with spaces, slashes and underscores folded to
/// hyphens.
pub(crate) fn fold(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.trim().chars() {
        let c = match c {
            ' ' | '\t' | '/' | '_' => '-',
            c => c,
        };
        if c == '-' && (out.is_empty() || out.ends_with('-')) {
            continue;
        }
        out.extend(c.to_lowercase());
    }
    while out.ends_with('-') {
        out.pop();
    }
    out
}

#[derive(Clone, Copy)]
enum Entry {
    Label(EdgeLabel),
    Ambiguous,
}

fn lookup_table() -> &'static HashMap<String, Entry> {
    static TABLE: OnceLock<HashMap<String, Entry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: HashMap<String, Entry> = HashMap::new();
        let mut insert = |key: String, label: EdgeLabel| {
            table
                .entry(key)
                .and_modify(|e| {
                    if let Entry::Label(existing) = e {
                        if existing.kind() != label.kind() {
                            *e = Entry::Ambiguous;
                        }
                    }
                })
                .or_insert(Entry::Label(label));
        };
        for &act in DialogAct::ALL {
            insert(fold(act.name()), EdgeLabel::DialogAct(act));
        }
        for &rel in RhetoricalRelation::ALL {
            insert(fold(rel.name()), EdgeLabel::rhetorical(rel));
        }
        insert("continuation".to_string(), EdgeLabel::Continuation);
        let canonical: Vec<(String, EdgeLabel)> = ALIASES
            .iter()
            .filter_map(|(alias, target)| {
                let label = match table.get(&fold(target)) {
                    Some(Entry::Label(l)) => *l,
                    _ => return None,
                };
                Some((fold(alias), label))
            })
            .collect();
        for (alias, label) in canonical {
            table.entry(alias).or_insert(Entry::Label(label));
        }
        table
    })
}

/// Resolves a tag name (case-insensitive, aliases accepted) to a label.
///
/// Asymmetric rhetorical relations resolve with the default orientation.
pub fn parse_tag(text: &str) -> Result<EdgeLabel, TaxonomyError> {
    match lookup_table().get(&fold(text)) {
        Some(Entry::Label(label)) => Ok(*label),
        Some(Entry::Ambiguous) => Err(TaxonomyError::AmbiguousTag(text.to_string())),
        None => Err(TaxonomyError::UnknownTag(text.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DialogActEntry {
    pub category: &'static str,
    pub name: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhetoricalEntry {
    pub class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<&'static str>,
    pub name: &'static str,
    pub symmetric: bool,
}

/// Machine-readable vocabulary listing for UIs and external tools.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaxonomyDump {
    pub dialog_acts: Vec<DialogActEntry>,
    pub rhetorical: Vec<RhetoricalEntry>,
}

impl TaxonomyDump {
    pub fn new() -> Self {
        TaxonomyDump {
            dialog_acts: DialogAct::ALL
                .iter()
                .map(|a| DialogActEntry {
                    category: a.category().name(),
                    name: a.name(),
                })
                .collect(),
            rhetorical: RhetoricalRelation::ALL
                .iter()
                .map(|r| RhetoricalEntry {
                    class: r.class().name(),
                    dual: r.dual().map(|d| d.name()),
                    name: r.name(),
                    symmetric: r.is_symmetric(),
                })
                .collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("taxonomy dump serializes");
        out.push('\n');
        out
    }
}

impl Default for TaxonomyDump {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn dialog_act_inventory() {
        let acts = all_dialog_acts();
        assert_eq!(acts.len(), 31);
        assert_eq!(acts[0], DialogAct::Statement);
        assert_eq!(DialogAct::Joke.category(), DialogActCategory::Other);
        let cats: HashSet<_> = acts.iter().map(|a| a.category()).collect();
        assert_eq!(cats.len(), 6);
    }

    #[test]
    fn rhetorical_inventory() {
        let rels = all_rhetorical_relations();
        #[cfg(not(feature = "list-relation"))]
        assert_eq!(rels.len(), 29);
        assert_eq!(RhetoricalRelation::Before.class(), RhetoricalClass::Temporal);
        assert!(rels.contains(&RhetoricalRelation::ProcessStep));
        assert_eq!(RhetoricalRelation::ProcessStep.class(), RhetoricalClass::Expansion);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_tag("answer"), Ok(EdgeLabel::DialogAct(DialogAct::Answer)));
        assert_eq!(
            parse_tag("precedence"),
            Ok(EdgeLabel::rhetorical(RhetoricalRelation::Before))
        );
        assert_eq!(parse_tag("foo"), Err(TaxonomyError::UnknownTag("foo".into())));
    }

    #[test]
    fn parse_aliases_and_spelling_variants() {
        let q = EdgeLabel::DialogAct(DialogAct::QuestionInfoRequest);
        assert_eq!(parse_tag("info-request"), Ok(q));
        assert_eq!(parse_tag("question info request"), Ok(q));
        assert_eq!(parse_tag("QUESTION/INFO-REQUEST"), Ok(q));
        assert_eq!(
            parse_tag("collaborative completion"),
            Ok(EdgeLabel::DialogAct(DialogAct::CollaborativeCompletion))
        );
        assert_eq!(
            parse_tag("succession"),
            Ok(EdgeLabel::rhetorical(RhetoricalRelation::After))
        );
        assert_eq!(
            parse_tag("Equivalence"),
            Ok(EdgeLabel::rhetorical(RhetoricalRelation::Restatement))
        );
        assert_eq!(parse_tag("process_step"), Ok(RhetoricalRelation::ProcessStep.into()));
        assert_eq!(parse_tag("continuation"), Ok(EdgeLabel::Continuation));
        assert!(parse_tag("").is_err());
    }

    #[test]
    fn no_name_is_ambiguous() {
        for &act in DialogAct::ALL {
            assert!(parse_tag(act.name()).is_ok());
        }
        for &rel in RhetoricalRelation::ALL {
            assert!(parse_tag(rel.name()).is_ok());
        }
    }

    #[test]
    fn duals() {
        use RhetoricalRelation::*;
        assert_eq!(dual_of(Reason), Some(Result));
        assert_eq!(dual_of(Sync), None);
        assert_eq!(dual_of(Before), Some(After));
        assert_eq!(dual_of(Enablement), Some(Enablement));
        for &rel in RhetoricalRelation::ALL {
            match rel.dual() {
                Some(d) => {
                    assert!(!rel.is_symmetric());
                    assert_eq!(d.dual(), Some(rel));
                }
                None => assert!(rel.is_symmetric()),
            }
        }
    }

    #[test]
    fn categories() {
        assert_eq!(category_of(&DialogAct::Answer), "BackwardCommunicativeFunction");
        assert_eq!(category_of(&RhetoricalRelation::Concession), "Comparison");
        assert_eq!(category_of(&DialogAct::Statement), "Statements");
    }

    #[test]
    fn orientation_rules() {
        let sym = RhetoricalLabel::new(RhetoricalRelation::Contrast);
        assert_eq!(sym.orientation(), None);
        let asym = RhetoricalLabel::new(RhetoricalRelation::Reason);
        assert_eq!(asym.orientation(), Some(Orientation::Arg1));
        assert!(RhetoricalLabel::with_orientation(RhetoricalRelation::Sync, Orientation::Arg2).is_err());
    }

    #[test]
    fn dump_shape() {
        let dump = TaxonomyDump::new();
        assert_eq!(dump.dialog_acts.len(), 31);
        let json: serde_json::Value = serde_json::from_str(&dump.to_json()).unwrap();
        assert_eq!(json["dialog_acts"][0]["name"], "Statement");
        assert_eq!(json["rhetorical"][0]["name"], "Async");
        assert!(json["rhetorical"][0].get("dual").is_none());
        assert_eq!(json["rhetorical"][2]["dual"], "After");
    }
}
