//! Optimal rope-length against directed cutwidth of the dual and against the
//! rope-flip search, on every arrangement with up to six lines.

use ropesweep::cutwidth::{directed_cutwidth_exact, SmallGraph};
use ropesweep::optimal::replay_face_order;
use ropesweep::sweep::primal_dual_max;
use ropesweep::{enumerate, optimal_rope_length, rope_flip_search, ArrangementGraph, DualGraph};

#[test]
fn three_solvers_agree() {
    for n in 2..=6 {
        enumerate(n, |wd| {
            let g = ArrangementGraph::build(wd);
            let opt = optimal_rope_length(&g).unwrap();
            let dual = SmallGraph::from(&DualGraph::build(&g));
            let (dcw, _) = directed_cutwidth_exact(&dual).unwrap();
            assert_eq!(opt.width, dcw, "{wd}");
            assert_eq!(opt.width, rope_flip_search(&g).unwrap(), "{wd}");
        })
        .unwrap();
    }
}

#[test]
fn witness_reversed_is_a_dual_order_of_the_same_width() {
    for n in 2..=6 {
        enumerate(n, |wd| {
            let g = ArrangementGraph::build(wd);
            let opt = optimal_rope_length(&g).unwrap();
            assert_eq!(replay_face_order(&g, &opt.order).unwrap(), opt.width);
            let dual = SmallGraph::from(&DualGraph::build(&g));
            let order: Vec<usize> = std::iter::once(g.s_star())
                .chain(opt.order.iter().rev().copied())
                .chain(std::iter::once(g.t_star()))
                .collect();
            let lo = dual.linear_order(order).unwrap();
            assert_eq!(lo.width(), opt.width, "{wd}");
        })
        .unwrap();
    }
}

#[test]
fn sandwich() {
    for n in 2..=6 {
        enumerate(n, |wd| {
            let g = ArrangementGraph::build(wd);
            let opt = optimal_rope_length(&g).unwrap().width;
            let hulls = g.lower_hull().len().max(g.upper_hull().len());
            let pd = primal_dual_max(&g).unwrap();
            assert!(hulls <= opt && opt <= pd && pd <= 2 * n - 2, "{wd}");
        })
        .unwrap();
    }
}

#[test]
fn optimum_is_a_symmetry_invariant() {
    for n in 3..=6 {
        enumerate(n, |wd| {
            let w = optimal_rope_length(&ArrangementGraph::build(wd)).unwrap().width;
            for image in wd.symmetry_orbit() {
                assert_eq!(optimal_rope_length(&ArrangementGraph::build(&image)).unwrap().width, w);
            }
        })
        .unwrap();
    }
}

#[test]
fn table_extremes_up_to_six() {
    // (min, max) optimum over all classes
    let expected = [(2, 2), (4, 4), (5, 5), (6, 7), (7, 9)];
    for (n, &(lo, hi)) in (2..=6).zip(expected.iter()) {
        let mut seen = (usize::MAX, 0);
        enumerate(n, |wd| {
            let w = optimal_rope_length(&ArrangementGraph::build(wd)).unwrap().width;
            seen = (seen.0.min(w), seen.1.max(w));
        })
        .unwrap();
        assert_eq!(seen, (lo, hi), "n = {n}");
    }
}
