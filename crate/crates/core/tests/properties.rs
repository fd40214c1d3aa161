mod common;

use std::collections::BTreeSet;

use common::*;
use dda_core::analytics::{balance_index, normalized_entropy};
use dda_core::direction::{edge_readings, normalize_direction, reading, reverse_label};
use dda_core::io::{
    export_reply_graph, import_reply_graph, parse_corpus, serialize_corpus, map_swbd_tag, Corpus,
    ReplyGraphRecord, SwbdMap, TranscriptLine,
};
use dda_core::{
    all_dialog_acts, dual_of, extract_threads, parse_tag, Dialogue, EdgeLabel, GraphError,
    Orientation, ResponseDependency, RhetoricalLabel, RhetoricalRelation, SlashUnit,
};
use proptest::prelude::*;

fn partition(d: &Dialogue) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = extract_threads(d).into_iter().map(|t| t.unit_ids).collect();
    out.sort();
    out
}

/// `coarse` is a union of blocks of `fine`.
fn coarsens(fine: &[Vec<u32>], coarse: &[Vec<u32>]) -> bool {
    fine.iter().all(|block| {
        coarse
            .iter()
            .any(|c| block.iter().all(|u| c.binary_search(u).is_ok()))
    })
}

fn lines(n: usize) -> Vec<TranscriptLine> {
    (0..n)
        .map(|i| TranscriptLine {
            speaker: SPEAKERS[i % 3].to_string(),
            text: format!("line {i}"),
        })
        .collect()
}

/// A reply forest on `n` lines: each line replies to at most one earlier
/// line; some links are written forward.
fn reply_forest() -> impl Strategy<Value = (usize, Vec<(u32, u32)>)> {
    (1..=100usize).prop_flat_map(|n| {
        let parents = (0..n)
            .map(|i| {
                if i == 0 {
                    Just(None).boxed()
                } else {
                    prop::option::of((0..i as u32, any::<bool>())).boxed()
                }
            })
            .collect::<Vec<_>>();
        (Just(n), parents)
    })
    .prop_map(|(n, parents)| {
        let pairs = parents
            .into_iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|(t, forward)| if forward { (t, i as u32) } else { (i as u32, t) }))
            .collect();
        (n, pairs)
    })
}

fn asymmetric_relation() -> impl Strategy<Value = RhetoricalRelation> {
    prop::sample::select(
        RhetoricalRelation::ALL
            .iter()
            .copied()
            .filter(|r| !r.is_symmetric())
            .collect::<Vec<_>>(),
    )
}

fn any_orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Arg1), Just(Orientation::Arg2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn threads_match_bfs_oracle(d in valid_dialogue(200)) {
        prop_assert_eq!(partition(&d), dialogue_partition(&d));
        let threads = extract_threads(&d);
        for (i, t) in threads.iter().enumerate() {
            prop_assert_eq!(t.id, i);
            prop_assert_eq!(t.root, t.unit_ids[0]);
            prop_assert!(t.unit_ids.windows(2).all(|w| w[0] < w[1]));
        }
        prop_assert!(threads.windows(2).all(|w| w[0].root < w[1].root));
        prop_assert_eq!(threads.iter().map(|t| t.len()).sum::<usize>(), d.units().len());
    }

    #[test]
    fn backward_edges_only_coarsen(d in valid_dialogue(60), a in any::<u32>(), b in any::<u32>(), label in any_dialog_act()) {
        prop_assume!(!d.units().is_empty());
        let n = d.units().len() as u32;
        let (source, target) = ((a % n).max(b % n), (a % n).min(b % n));
        let before = partition(&d);
        let after = partition(&d.add_edge(source, target, [label.into()]).unwrap());
        prop_assert!(coarsens(&before, &after));
        prop_assert!(before.len() - after.len() <= 1);
    }

    #[test]
    fn directionality(n in 1u32..40, proposals in prop::collection::vec((0u32..45, 0u32..45, prop::collection::vec(any_label(), 0..3)), 1..40)) {
        let base = Dialogue::build("d", units(n, |i| i as usize), Vec::new()).unwrap();
        for (source, target, labels) in proposals {
            let result = base.add_edge(source, target, labels.clone());
            let built = Dialogue::build("d", units(n, |i| i as usize), vec![ResponseDependency::new(source, target, labels.clone())]);
            let rhetorical_self = source == target && labels.iter().any(EdgeLabel::is_rhetorical);
            if source >= n || target >= n {
                let dangling = matches!(result, Err(GraphError::DanglingEdgeEndpoint { .. }));
                prop_assert!(dangling);
            } else if target > source {
                prop_assert_eq!(&result.unwrap_err(), &GraphError::ForwardEdge { from: source, to: target });
                prop_assert_eq!(built.unwrap_err(), GraphError::ForwardEdge { from: source, to: target });
            } else if rhetorical_self {
                prop_assert_eq!(result.unwrap_err(), GraphError::SelfEdgeWithRhetoricalLabel(source));
            } else {
                let d = result.unwrap();
                prop_assert!(d.labels_between(source, target).is_some());
                prop_assert!(built.is_ok());
                prop_assert!(d.validate(false).iter().all(|x| !x.is_error()));
            }
        }
    }

    #[test]
    fn built_dialogues_validate_without_errors(d in valid_dialogue(80)) {
        prop_assert!(d.validate(true).iter().all(|x| !x.is_error()));
    }

    #[test]
    fn add_then_remove_restores(d in valid_dialogue(40), a in any::<u32>(), b in any::<u32>(), label in any_label()) {
        prop_assume!(!d.units().is_empty());
        let n = d.units().len() as u32;
        let (source, target) = ((a % n).max(b % n), (a % n).min(b % n));
        prop_assume!(source != target || !label.is_rhetorical());
        prop_assume!(!d.labels_between(source, target).is_some_and(|l| l.contains(&label)));
        let added = d.add_edge(source, target, [label]).unwrap();
        let removed = added.remove_edge(source, target, Some(&label)).unwrap();
        prop_assert_eq!(removed, d);
    }

    #[test]
    fn edge_order_is_irrelevant(d in valid_dialogue(60), seed in any::<u64>()) {
        let mut edges: Vec<ResponseDependency> = d.edges().collect();
        // Deterministic shuffle driven by the seed.
        let mut state = seed | 1;
        for i in (1..edges.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            edges.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let mut units_rev = d.units().to_vec();
        units_rev.reverse();
        let rebuilt = Dialogue::build(d.id(), units_rev, edges).unwrap();
        prop_assert_eq!(&rebuilt, &d);
        let one = serialize_corpus(&Corpus::from_dialogues([d]).unwrap());
        let two = serialize_corpus(&Corpus::from_dialogues([rebuilt]).unwrap());
        prop_assert_eq!(one, two);
    }

    #[test]
    fn parse_inverts_serialize(ds in prop::collection::vec(valid_dialogue(30), 0..4)) {
        let ds: Vec<Dialogue> = ds
            .into_iter()
            .enumerate()
            .map(|(i, d)| Dialogue::build(format!("d{i}"), d.units().to_vec(), d.edges().collect()).unwrap())
            .collect();
        let corpus = Corpus::from_dialogues(ds).unwrap();
        let bytes = serialize_corpus(&corpus);
        let back = parse_corpus(&bytes).unwrap();
        prop_assert_eq!(&back, &corpus);
        prop_assert_eq!(serialize_corpus(&back), bytes);
    }

    #[test]
    fn reply_import_preserves_components((n, pairs) in reply_forest()) {
        let record = ReplyGraphRecord { dialogue_id: "irc".into(), pairs: pairs.clone() };
        let d = import_reply_graph(&lines(n), &record).unwrap();
        let nodes: Vec<u32> = (0..n as u32).collect();
        prop_assert_eq!(partition(&d), bfs_partition(&nodes, &pairs));
        prop_assert!(d.validate(true).is_empty());

        let backward: BTreeSet<(u32, u32)> = pairs.iter().map(|&(a, b)| (a.max(b), a.min(b))).collect();
        prop_assert_eq!(export_reply_graph(&d).pair_set(), backward.clone());

        let again = import_reply_graph(&lines(n), &export_reply_graph(&d)).unwrap();
        prop_assert_eq!(export_reply_graph(&again).pair_set(), backward);
    }

    #[test]
    fn normalization_is_idempotent_and_keeps_threads(
        n in 1u32..60,
        proposals in prop::collection::vec((0u32..60, 0u32..60, prop::collection::vec(any_label(), 0..3)), 0..80),
    ) {
        let raw: Vec<ResponseDependency> = proposals
            .into_iter()
            .map(|(a, b, labels)| {
                let labels = labels.into_iter().filter(|l| a % n != b % n || !l.is_rhetorical());
                ResponseDependency::new(a % n, b % n, labels)
            })
            .collect();
        let normalized: Vec<ResponseDependency> = raw.iter().map(normalize_direction).collect();
        for (r, e) in raw.iter().zip(&normalized) {
            prop_assert!(!e.is_forward());
            prop_assert_eq!(&normalize_direction(e), e);
            prop_assert_eq!(e.labels.len(), r.labels.len());
            let mut before: Vec<_> = edge_readings(r);
            let mut after: Vec<_> = edge_readings(e);
            before.sort();
            after.sort();
            prop_assert_eq!(before, after);
        }
        let d = Dialogue::build("n", units(n, |i| i as usize), normalized).unwrap();
        let nodes: Vec<u32> = (0..n).collect();
        let raw_pairs: Vec<(u32, u32)> = raw.iter().map(|e| (e.source, e.target)).collect();
        prop_assert_eq!(partition(&d), bfs_partition(&nodes, &raw_pairs));
    }

    #[test]
    fn orientation_round_trip(a in 0u32..1000, gap in 1u32..1000, relation in asymmetric_relation(), o in any_orientation()) {
        let b = a + gap;
        let label = RhetoricalLabel::with_orientation(relation, o).unwrap();
        let forward = ResponseDependency::new(a, b, [EdgeLabel::Rhetorical(label)]);
        let back = normalize_direction(&forward);
        prop_assert_eq!((back.source, back.target), (b, a));
        let stored = back.labels.iter().next().unwrap().as_rhetorical().unwrap();
        prop_assert_eq!(reading(a, b, &label), reading(back.source, back.target, &stored));
        prop_assert_eq!(reverse_label(reverse_label(label.into())), EdgeLabel::from(label));
    }

    #[test]
    fn balance_ignores_speaker_names_and_scale(d in valid_dialogue(60), shift in 1usize..4, copies in 2u32..4) {
        let renamed = Dialogue::build(
            d.id(),
            d.units()
                .iter()
                .map(|u| {
                    let i = SPEAKERS.iter().position(|s| *s == u.speaker).unwrap();
                    SlashUnit::new(u.id, format!("speaker-{}", (i + shift) % SPEAKERS.len()), u.text.clone())
                })
                .collect(),
            d.edges().collect(),
        )
        .unwrap();
        prop_assert_eq!(balance_index(&renamed), balance_index(&d));

        // Concatenated copies duplicate every edge and keep the speaker set.
        let n = d.units().len() as u32;
        let mut units = Vec::new();
        let mut edges = Vec::new();
        for c in 0..copies {
            units.extend(d.units().iter().map(|u| SlashUnit::new(u.id + c * n, u.speaker.clone(), u.text.clone())));
            edges.extend(d.edges().map(|e| ResponseDependency::new(e.source + c * n, e.target + c * n, e.labels)));
        }
        let scaled = Dialogue::build("x", units, edges).unwrap();
        match (balance_index(&d), balance_index(&scaled)) {
            (None, None) => {}
            (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12, "{} vs {}", x, y),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn entropy_matches_oracle(counts in prop::collection::vec(0usize..50, 2..8), k in 1usize..5) {
        prop_assume!(counts.iter().sum::<usize>() > 0);
        let got = normalized_entropy(&counts).unwrap();
        prop_assert!((got - entropy_oracle(&counts)).abs() < 1e-12);
        let scaled: Vec<usize> = counts.iter().map(|c| c * k).collect();
        prop_assert!((normalized_entropy(&scaled).unwrap() - got).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&got));
    }

    #[test]
    fn swbd_outputs_are_dda_tags(text in "\\PC{0,12}") {
        if let Ok(tag) = map_swbd_tag(&text) {
            prop_assert!(all_dialog_acts().contains(&tag));
        }
    }

    #[test]
    fn tag_names_survive_case_and_separator_noise(label in any_label(), upper in any::<bool>(), sep in prop::sample::select(vec!["-", " ", "_", "/"])) {
        let Some(name) = label.tag_name() else { return Ok(()); };
        let noisy = name.replace(['-', '/'], sep);
        let noisy = if upper { noisy.to_uppercase() } else { noisy.to_lowercase() };
        prop_assert_eq!(parse_tag(&noisy).unwrap(), label);
    }
}

#[test]
fn dual_is_an_involution() {
    for &r in RhetoricalRelation::ALL {
        match dual_of(r) {
            Some(d) => {
                assert!(!r.is_symmetric());
                assert_eq!(dual_of(d), Some(r));
            }
            None => assert!(r.is_symmetric()),
        }
    }
}

#[test]
fn every_swbd_entry_maps_into_the_vocabulary() {
    for e in SwbdMap::bundled().entries() {
        match (map_swbd_tag(&e.code), e.dda) {
            (Ok(tag), Some(expected)) => {
                assert_eq!(tag, expected, "{}", e.code);
                assert!(all_dialog_acts().contains(&tag));
            }
            (Err(_), None) => {}
            other => panic!("{}: {other:?}", e.code),
        }
    }
}
