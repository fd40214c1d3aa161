//! File formats and converters.

pub mod corpus;
pub mod reply;
pub mod swbd;
pub mod transcript;

pub use corpus::{
    canonicalize, parse_corpus, serialize_corpus, validate_document, Corpus, DocumentDiagnostic,
    FormatError, SchemaCause,
};
pub use reply::{
    export_reply_graph, import_reply_graph, parse_irc_transcript, parse_reply_lines,
    write_reply_lines, ReplyError, ReplyGraphRecord,
};
pub use swbd::{map_swbd_tag, project_unit_tags, SwbdError, SwbdMap};
pub use transcript::{import_transcript, parse_transcript, TranscriptError, TranscriptLine};
