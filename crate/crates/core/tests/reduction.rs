//! The cutwidth to directed-cutwidth reduction on small subcubic graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ropesweep::cutwidth::*;

fn check(g: &SmallGraph) {
    let (cw, sigma_g) = cutwidth_exact(g).unwrap();
    let red = reduce_to_dcw(g).unwrap();
    assert_eq!(red.h.vertex_count(), g.vertex_count() + 2 * g.edges().len());
    assert_eq!(red.h.edges().len(), 4 * g.edges().len());
    assert!(red.h.max_degree() <= 2 * g.max_degree());
    let (dcw, sigma_h) = directed_cutwidth_exact(&red.h).unwrap();
    assert_eq!(dcw, 2 * cw + 2, "{g}");

    let forward = order_g_to_h(g, &red, &sigma_g).unwrap();
    assert_eq!(forward.width(), 2 * cw + 2);
    let (back, exchanges) = order_h_to_g(g, &red, &sigma_h).unwrap();
    assert_eq!(back.width(), cw);
    for ex in &exchanges {
        assert!(ex.cut_after < ex.cut_before);
    }
    let (round_trip, _) = order_h_to_g(g, &red, &forward).unwrap();
    assert_eq!(round_trip.width(), cw);
}

#[test]
fn exhaustive_up_to_six_vertices() {
    let mut checked = 0;
    for n in 3..=6 {
        for g in connected_bounded_degree_graphs(n, 3) {
            if is_planar_small(&g) {
                check(&g);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 4 + 38 + 472 + 7530);
}

/// Random connected planar graphs with maximum degree 3: a random tree
/// plus random extra edges, rejected when nonplanar.
fn random_subcubic(rng: &mut ChaCha8Rng, n: usize) -> SmallGraph {
    loop {
        let mut deg = vec![0usize; n];
        let mut edges = Vec::new();
        for v in 1..n {
            let candidates: Vec<usize> = (0..v).filter(|&u| deg[u] < 3).collect();
            let u = candidates[rng.gen_range(0..candidates.len())];
            edges.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
        for _ in 0..rng.gen_range(0..=n / 2) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v
                && deg[u] < 3
                && deg[v] < 3
                && !edges.contains(&(u.min(v), u.max(v)))
                && !edges.contains(&(u.max(v), u.min(v)))
            {
                edges.push((u.min(v), u.max(v)));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let g = SmallGraph::undirected(n, edges).unwrap();
        if is_planar_small(&g) {
            return g;
        }
    }
}

#[test]
fn random_eight_to_ten_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(8..=10);
        check(&random_subcubic(&mut rng, n));
    }
}

#[test]
fn small_figure_graph() {
    // the paw: a triangle with a pendant vertex
    let g = SmallGraph::undirected(4, vec![(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
    let red = reduce_to_dcw(&g).unwrap();
    assert_eq!(cutwidth_exact(&g).unwrap().0, 2);
    let sigma = g.linear_order(vec![1, 2, 3, 0]).unwrap();
    assert_eq!(sigma.cuts, vec![2, 2, 3]);
    let sigma_h = order_g_to_h(&g, &red, &sigma).unwrap();
    assert_eq!(sigma_h.width(), 6);
    let (fixed, exchanges) = order_h_to_g(&g, &red, &sigma_h).unwrap();
    assert_eq!(
        exchanges,
        vec![Exchange {
            position: 2,
            cut_before: 3,
            cut_after: 1
        }]
    );
    assert_eq!(fixed.order, vec![1, 2, 0, 3]);
    assert_eq!(fixed.width(), 2);
    assert_eq!(order_g_to_h(&g, &red, &fixed).unwrap().width(), 6);
}
