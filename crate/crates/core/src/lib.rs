//! Dependency dialogue act (DDA) annotation graphs.
//!
//! A dialogue is a sequence of slash units. Each unit points backward to the
//! units it responds to through multi-labelled response dependencies, or to
//! itself when it opens a new thread. Labels are dialog acts, rhetorical
//! relations, or bare continuations.
//!
//! - [`taxonomy`]: the closed tag vocabularies and tag parsing.
//! - [`graph`]: units, edges, dialogues and validation.
//! - [`threads`], [`direction`], [`analytics`]: operations over graphs.
//! - [`io`]: the corpus JSON format and converters.

pub mod analytics;
pub mod direction;
pub mod disjoint;
pub mod graph;
pub mod io;
pub mod taxonomy;
pub mod threads;

pub use graph::{
    validate_parts, Diagnostic, DiagnosticCode, Dialogue, GraphError, ResponseDependency,
    Severity, SlashUnit, UnitId,
};
pub use taxonomy::{
    all_dialog_acts, all_rhetorical_relations, category_of, dual_of, parse_tag, DialogAct,
    DialogActCategory, EdgeLabel, LabelKind, Orientation, RhetoricalClass, RhetoricalLabel,
    RhetoricalRelation, TaxonomyDump, TaxonomyError,
};
pub use threads::{extract_threads, thread_of, Thread, ThreadIndex};
