//! Direction normalization for asymmetric relations.
//!
//! Stored edges always point backward. A forward annotation `A -> B` (A
//! earlier) is rewritten as `B -> A` with the label adjusted so the relation
//! still holds between the same two units in the same roles: relations with
//! a named dual swap to it (`Reason` becomes `Result`), other asymmetric
//! relations keep their name and flip orientation.

use crate::graph::{ResponseDependency, UnitId};
use crate::taxonomy::{EdgeLabel, Orientation, RhetoricalLabel, RhetoricalRelation};

/// Rewrites one label for an edge whose endpoints are being swapped.
pub fn reverse_label(label: EdgeLabel) -> EdgeLabel {
    match label {
        EdgeLabel::Rhetorical(r) => {
            let relation = r.relation();
            if relation.is_symmetric() {
                return label;
            }
            let orientation = r.orientation().unwrap_or_default();
            let reversed = if relation.has_named_dual() {
                RhetoricalLabel::reoriented(
                    relation.dual().expect("named dual"),
                    Some(orientation),
                )
            } else {
                RhetoricalLabel::reoriented(relation, Some(orientation.flip()))
            };
            EdgeLabel::Rhetorical(reversed)
        }
        other => other,
    }
}

/// Returns a backward-pointing edge with the same meaning. Backward and
/// self edges are returned unchanged.
pub fn normalize_direction(edge: &ResponseDependency) -> ResponseDependency {
    if !edge.is_forward() {
        return edge.clone();
    }
    ResponseDependency {
        source: edge.target,
        target: edge.source,
        labels: edge.labels.iter().copied().map(reverse_label).collect(),
    }
}

/// What a rhetorical label asserts about two units, independent of how the
/// edge carrying it is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationReading {
    /// The relation holds between the two units in either order; stored
    /// with the smaller id first.
    Symmetric {
        relation: RhetoricalRelation,
        units: (UnitId, UnitId),
    },
    /// `first` is `relation` of `second`, read in the canonical member of
    /// a named dual pair (`Reason`, `Before`).
    Directed {
        relation: RhetoricalRelation,
        first: UnitId,
        second: UnitId,
    },
}

pub fn reading(source: UnitId, target: UnitId, label: &RhetoricalLabel) -> RelationReading {
    let relation = label.relation();
    if relation.is_symmetric() {
        return RelationReading::Symmetric {
            relation,
            units: (source.min(target), source.max(target)),
        };
    }
    let (first, second) = match label.orientation().unwrap_or_default() {
        Orientation::Arg1 => (source, target),
        Orientation::Arg2 => (target, source),
    };
    match relation.dual() {
        Some(dual) if dual < relation => RelationReading::Directed {
            relation: dual,
            first: second,
            second: first,
        },
        _ => RelationReading::Directed {
            relation,
            first,
            second,
        },
    }
}

/// Readings of every rhetorical label on an edge, sorted.
pub fn edge_readings(edge: &ResponseDependency) -> Vec<RelationReading> {
    let mut out: Vec<RelationReading> = edge
        .labels
        .iter()
        .filter_map(|l| match l {
            EdgeLabel::Rhetorical(r) => Some(reading(edge.source, edge.target, r)),
            _ => None,
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::DialogAct;

    fn label(rel: RhetoricalRelation, o: Orientation) -> EdgeLabel {
        EdgeLabel::Rhetorical(RhetoricalLabel::with_orientation(rel, o).unwrap())
    }

    #[test]
    fn reason_becomes_result() {
        // A = 1 is a reason for the later B = 4.
        let forward = ResponseDependency::new(1, 4, [RhetoricalRelation::Reason.into()]);
        let back = normalize_direction(&forward);
        assert_eq!(
            back,
            ResponseDependency::new(4, 1, [RhetoricalRelation::Result.into()])
        );
        assert_eq!(edge_readings(&forward), edge_readings(&back));
    }

    #[test]
    fn backward_edge_unchanged() {
        let e = ResponseDependency::new(5, 2, [DialogAct::Answer.into()]);
        assert_eq!(normalize_direction(&e), e);
        let s = ResponseDependency::continuation(3, 3);
        assert_eq!(normalize_direction(&s), s);
    }

    #[test]
    fn enablement_flips_orientation() {
        let forward = ResponseDependency::new(
            2,
            6,
            [label(RhetoricalRelation::Enablement, Orientation::Arg1)],
        );
        let back = normalize_direction(&forward);
        assert_eq!(
            back,
            ResponseDependency::new(6, 2, [label(RhetoricalRelation::Enablement, Orientation::Arg2)])
        );
        assert_eq!(
            edge_readings(&back),
            vec![RelationReading::Directed {
                relation: RhetoricalRelation::Enablement,
                first: 2,
                second: 6
            }]
        );
    }

    #[test]
    fn before_after_readings_agree() {
        let before = ResponseDependency::new(0, 3, [RhetoricalRelation::Before.into()]);
        let after = normalize_direction(&before);
        assert_eq!(after.labels.iter().next().unwrap().tag_name(), Some("After"));
        assert_eq!(edge_readings(&before), edge_readings(&after));
    }

    #[test]
    fn symmetric_and_dialog_act_labels_pass_through() {
        let forward = ResponseDependency::new(
            1,
            2,
            [
                RhetoricalRelation::Contrast.into(),
                DialogAct::Accept.into(),
                EdgeLabel::Continuation,
            ],
        );
        let back = normalize_direction(&forward);
        assert_eq!(back.labels, forward.labels);
        assert_eq!((back.source, back.target), (2, 1));
    }
}
