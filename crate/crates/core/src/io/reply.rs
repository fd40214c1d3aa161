//! Unlabelled reply-structure graphs in the Ubuntu-IRC annotation style.
//!
//! Reply files hold one link per line, `<source-index> <target-index> -`,
//! where indices are 0-based transcript line numbers. Lines starting with
//! `#` and blank lines are ignored. This byte layout is an assumption of
//! this toolkit and lives only in [`parse_reply_lines`] and
//! [`write_reply_lines`].
//!
//! Export from a labelled dialogue is lossy: labels and self edges are
//! dropped.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::direction::normalize_direction;
use crate::graph::{Dialogue, GraphError, ResponseDependency, UnitId};
use crate::io::transcript::{units_from_lines, TranscriptLine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplyError {
    #[error("reply line {0}: expected `<source> <target> -`")]
    MalformedLine(usize),
    #[error("reply {from}->{to} references a line outside the transcript ({lines} lines)")]
    DanglingReplyEndpoint {
        from: UnitId,
        to: UnitId,
        lines: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Reply links for one dialogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplyGraphRecord {
    pub dialogue_id: String,
    pub pairs: Vec<(UnitId, UnitId)>,
}

impl ReplyGraphRecord {
    pub fn pair_set(&self) -> BTreeSet<(UnitId, UnitId)> {
        self.pairs.iter().copied().collect()
    }
}

pub fn parse_reply_lines(text: &str) -> Result<Vec<(UnitId, UnitId)>, ReplyError> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (s, t) = match fields.as_slice() {
            [s, t] | [s, t, "-"] => (s, t),
            _ => return Err(ReplyError::MalformedLine(n + 1)),
        };
        let parse = |f: &str| f.parse::<UnitId>().map_err(|_| ReplyError::MalformedLine(n + 1));
        pairs.push((parse(s)?, parse(t)?));
    }
    Ok(pairs)
}

pub fn write_reply_lines(record: &ReplyGraphRecord) -> String {
    record
        .pairs
        .iter()
        .map(|(s, t)| format!("{s} {t} -\n"))
        .collect()
}

/// Reads one line of an IRC log.
///
/// Accepts `speaker<TAB>text`, `[hh:mm] <nick> text`, `[hh:mm] * nick
/// action` and `=== system` lines. Anything else is kept whole under the
/// speaker `unknown`.
pub fn parse_irc_line(line: &str) -> TranscriptLine {
    let make = |speaker: &str, text: &str| TranscriptLine {
        speaker: speaker.to_string(),
        text: if text.trim().is_empty() {
            "(blank line)".to_string()
        } else {
            text.trim().to_string()
        },
    };
    if let Some((speaker, text)) = line.split_once('\t') {
        if !speaker.trim().is_empty() {
            return make(speaker.trim(), text);
        }
    }
    let mut rest = line.trim();
    if rest.starts_with('[') {
        if let Some(end) = rest.find(']') {
            rest = rest[end + 1..].trim_start();
        }
    }
    if let Some(body) = rest.strip_prefix('<') {
        if let Some(end) = body.find('>') {
            return make(&body[..end], &body[end + 1..]);
        }
    }
    if let Some(body) = rest.strip_prefix("* ") {
        let (nick, _) = body.split_once(' ').unwrap_or((body, ""));
        return make(nick, rest);
    }
    if rest.starts_with("===") {
        return make("system", rest);
    }
    make("unknown", line)
}

/// Every log line, blank ones included, so that line numbers stay aligned
/// with reply indices.
pub fn parse_irc_transcript(text: &str) -> Vec<TranscriptLine> {
    text.lines().map(parse_irc_line).collect()
}

/// Builds a dialogue from a transcript and its reply links.
///
/// Each line becomes a unit and each link an unlabelled (continuation)
/// dependency, pointed backward. A self link `(i, i)` becomes a self edge.
/// Lines that do not reply to anything get a self edge, marking a thread
/// start.
pub fn import_reply_graph(
    transcript: &[TranscriptLine],
    replies: &ReplyGraphRecord,
) -> Result<Dialogue, ReplyError> {
    let n = transcript.len();
    let mut edges: BTreeMap<(UnitId, UnitId), ResponseDependency> = BTreeMap::new();
    for &(source, target) in &replies.pairs {
        if source as usize >= n || target as usize >= n {
            return Err(ReplyError::DanglingReplyEndpoint {
                from: source,
                to: target,
                lines: n,
            });
        }
        let edge = normalize_direction(&ResponseDependency::continuation(source, target));
        edges.insert((edge.source, edge.target), edge);
    }
    let responding: BTreeSet<UnitId> = edges.keys().map(|&(s, _)| s).collect();
    for id in (0..n as UnitId).filter(|id| !responding.contains(id)) {
        edges.insert((id, id), ResponseDependency::continuation(id, id));
    }
    Ok(Dialogue::build(
        replies.dialogue_id.clone(),
        units_from_lines(transcript),
        edges.into_values().collect(),
    )?)
}

/// Distinct non-self `(source, target)` pairs, labels dropped.
pub fn export_reply_graph(dialogue: &Dialogue) -> ReplyGraphRecord {
    ReplyGraphRecord {
        dialogue_id: dialogue.id().to_string(),
        pairs: dialogue.pairs().filter(|(s, t)| s != t).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::{DialogAct, EdgeLabel, RhetoricalRelation};
    use crate::threads::extract_threads;

    fn lines(n: usize) -> Vec<TranscriptLine> {
        (0..n)
            .map(|i| TranscriptLine {
                speaker: format!("nick{}", i % 2),
                text: format!("message {i}"),
            })
            .collect()
    }

    fn record(pairs: &[(u32, u32)]) -> ReplyGraphRecord {
        ReplyGraphRecord {
            dialogue_id: "irc".into(),
            pairs: pairs.to_vec(),
        }
    }

    #[test]
    fn chain_is_one_thread() {
        let d = import_reply_graph(&lines(3), &record(&[(1, 0), (2, 1)])).unwrap();
        assert_eq!(extract_threads(&d).len(), 1);
        assert!(d.labels_between(0, 0).is_some());
        assert!(d.validate(true).is_empty());
    }

    #[test]
    fn two_threads() {
        let d = import_reply_graph(&lines(4), &record(&[(1, 0), (3, 2)])).unwrap();
        let members: Vec<_> = extract_threads(&d).into_iter().map(|t| t.unit_ids).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn dangling_endpoint() {
        assert!(matches!(
            import_reply_graph(&lines(3), &record(&[(0, 5)])),
            Err(ReplyError::DanglingReplyEndpoint { from: 0, to: 5, .. })
        ));
    }

    #[test]
    fn forward_links_are_normalized() {
        let d = import_reply_graph(&lines(3), &record(&[(0, 2)])).unwrap();
        assert!(d.labels_between(2, 0).is_some());
        assert_eq!(export_reply_graph(&d).pairs, vec![(2, 0)]);
    }

    #[test]
    fn export_drops_labels_and_self_edges() {
        let d = Dialogue::build(
            "d",
            crate::io::transcript::units_from_lines(&lines(3)),
            vec![
                ResponseDependency::continuation(0, 0),
                ResponseDependency::new(
                    2,
                    1,
                    [
                        EdgeLabel::DialogAct(DialogAct::Answer),
                        RhetoricalRelation::Restatement.into(),
                    ],
                ),
            ],
        )
        .unwrap();
        assert_eq!(export_reply_graph(&d).pairs, vec![(2, 1)]);

        let only_self = Dialogue::build(
            "s",
            crate::io::transcript::units_from_lines(&lines(2)),
            vec![ResponseDependency::continuation(0, 0), ResponseDependency::continuation(1, 1)],
        )
        .unwrap();
        assert!(export_reply_graph(&only_self).pairs.is_empty());
    }

    #[test]
    fn reply_line_format() {
        let text = "# comment\n1 0 -\n\n2 1\n";
        assert_eq!(parse_reply_lines(text).unwrap(), vec![(1, 0), (2, 1)]);
        assert_eq!(parse_reply_lines("1 x -").unwrap_err(), ReplyError::MalformedLine(1));
        assert_eq!(parse_reply_lines("1 0 + extra").unwrap_err(), ReplyError::MalformedLine(1));
        assert_eq!(write_reply_lines(&record(&[(1, 0), (3, 2)])), "1 0 -\n3 2 -\n");
    }

    #[test]
    fn irc_lines() {
        assert_eq!(parse_irc_line("[03:56] <ubotu> see !install").speaker, "ubotu");
        assert_eq!(parse_irc_line("[03:56] <ubotu> see !install").text, "see !install");
        assert_eq!(parse_irc_line("[04:01] * jdoe waves").speaker, "jdoe");
        assert_eq!(parse_irc_line("=== jdoe joined").speaker, "system");
        assert_eq!(parse_irc_line("alice\thello").speaker, "alice");
        assert_eq!(parse_irc_line("").text, "(blank line)");
    }
}
