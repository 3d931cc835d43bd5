use proptest::prelude::*;
use ropesweep::arrangement::crossing_count;
use ropesweep::graph::Rope;
use ropesweep::sweep::{flip_face, primal_dual_sweep_with, SweepOptions};
use ropesweep::{ArrangementGraph, WiringDiagram};

/// A random simple arrangement: repeatedly swap a random adjacent pair that
/// has not crossed yet.
fn arrangement(max_n: usize) -> impl Strategy<Value = WiringDiagram> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u32>(), crossing_count(n)).prop_map(move |choices| {
            let mut tracks: Vec<usize> = (1..=n).collect();
            let mut word = Vec::new();
            for c in choices {
                let open: Vec<usize> = (1..n).filter(|&p| tracks[p - 1] < tracks[p]).collect();
                let p = open[c as usize % open.len()];
                tracks.swap(p - 1, p);
                word.push(p);
            }
            WiringDiagram::new(n, &word).unwrap()
        })
    })
}

/// The order in which each line meets the others; it determines the class.
fn local_sequences(wd: &WiringDiagram) -> Vec<Vec<usize>> {
    let mut seq = vec![Vec::new(); wd.n() + 1];
    for (a, b) in wd.crossing_pairs() {
        seq[a].push(b);
        seq[b].push(a);
    }
    seq
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(wd in arrangement(12)) {
        let back: WiringDiagram = wd.to_text().parse().unwrap();
        prop_assert_eq!(back, wd);
    }

    #[test]
    fn canonical_form_keeps_the_class(wd in arrangement(10)) {
        let c = wd.canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(local_sequences(&c), local_sequences(&wd));
        prop_assert!(c <= wd);
    }

    #[test]
    fn reflections_are_involutions(wd in arrangement(10)) {
        prop_assert_eq!(wd.reflect_horizontal().reflect_horizontal(), wd.clone());
        prop_assert_eq!(wd.reflect_vertical().reflect_vertical(), wd.clone());
        let orbit = wd.symmetry_orbit();
        prop_assert_eq!(orbit[0].clone(), wd.canonicalize());
        prop_assert_eq!(wd.reflect_vertical().symmetry_representative(), wd.symmetry_representative());
    }

    #[test]
    fn graph_sizes(wd in arrangement(12)) {
        let n = wd.n();
        let g = ArrangementGraph::build(&wd);
        prop_assert_eq!(g.vertex_count(), n * (n - 1) / 2 + 2);
        prop_assert_eq!(g.edge_count(), n * n);
        prop_assert_eq!(g.face_count(), n * (n + 1) / 2 - 1);
        let (lower, upper) = g.hulls();
        prop_assert!(lower.is_valid(&g) && upper.is_valid(&g));
    }

    #[test]
    fn sweep_bound_and_claims(wd in arrangement(9)) {
        let n = wd.n();
        let g = ArrangementGraph::build(&wd);
        let trace = primal_dual_sweep_with(&g, SweepOptions { verify: true }).unwrap();
        prop_assert_eq!(trace.moves.len(), n * n - 1);
        prop_assert!(trace.max_rope_len <= 2 * n - 2);
        prop_assert_eq!(trace.final_rope.edges.as_slice(), g.upper_hull());
        trace.replay(&g).unwrap();
    }

    #[test]
    fn every_face_flips_exactly_once(wd in arrangement(9)) {
        let g = ArrangementGraph::build(&wd);
        let trace = primal_dual_sweep_with(&g, SweepOptions::default()).unwrap();
        let mut order = trace.face_order();
        order.sort_unstable();
        prop_assert_eq!(order, (0..g.face_count()).collect::<Vec<_>>());
    }

    #[test]
    fn face_flip_length_change(wd in arrangement(8), pick in any::<usize>()) {
        let g = ArrangementGraph::build(&wd);
        let lower: Rope = g.hulls().0;
        let flippable: Vec<usize> = (0..g.face_count()).filter(|&f| flip_face(&g, &lower, f).is_ok()).collect();
        prop_assert!(!flippable.is_empty());
        let f = flippable[pick % flippable.len()];
        let next = flip_face(&g, &lower, f).unwrap();
        let face = g.face(f);
        prop_assert_eq!(
            next.len() as isize - lower.len() as isize,
            face.top_chain.len() as isize - face.bottom_chain.len() as isize
        );
        prop_assert!(next.is_valid(&g));
    }
}
