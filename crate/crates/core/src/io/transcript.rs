//! Plain transcripts: one `speaker<TAB>utterance` per line.

use thiserror::Error;

use crate::graph::{Dialogue, GraphError, SlashUnit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("line {0}: expected `speaker<TAB>utterance`")]
    MalformedLine(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptLine {
    pub speaker: String,
    pub text: String,
}

/// Parses tab-separated lines. Blank lines are skipped; line numbers in
/// errors are 1-based.
pub fn parse_transcript(text: &str) -> Result<Vec<TranscriptLine>, TranscriptError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (speaker, utterance) = line
            .split_once('\t')
            .ok_or(TranscriptError::MalformedLine(n + 1))?;
        let (speaker, utterance) = (speaker.trim(), utterance.trim());
        if speaker.is_empty() || utterance.is_empty() {
            return Err(TranscriptError::MalformedLine(n + 1));
        }
        out.push(TranscriptLine {
            speaker: speaker.to_string(),
            text: utterance.to_string(),
        });
    }
    Ok(out)
}

pub fn units_from_lines(lines: &[TranscriptLine]) -> Vec<SlashUnit> {
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| SlashUnit::new(i as u32, l.speaker.clone(), l.text.clone()))
        .collect()
}

/// An unannotated dialogue: one unit per line, numbered from 0, no edges.
pub fn import_transcript(id: &str, text: &str) -> Result<Dialogue, TranscriptError> {
    let lines = parse_transcript(text)?;
    Ok(Dialogue::build(id, units_from_lines(&lines), Vec::new())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_lines() {
        let d = import_transcript("t", "alice\thi there\nbob\thello\n").unwrap();
        assert_eq!(d.units().len(), 2);
        assert_eq!(d.edge_count(), 0);
        assert_eq!(d.units()[1].speaker, "bob");
        assert_eq!(d.units()[1].id, 1);
    }

    #[test]
    fn malformed() {
        assert_eq!(
            import_transcript("t", "alice\thi\nno separator here\n").unwrap_err(),
            TranscriptError::MalformedLine(2)
        );
        assert_eq!(
            import_transcript("t", "\tnobody").unwrap_err(),
            TranscriptError::MalformedLine(1)
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(import_transcript("t", "").unwrap().units().len(), 0);
        assert_eq!(import_transcript("t", "\n\n").unwrap().units().len(), 0);
    }
}
