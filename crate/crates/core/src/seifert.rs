//! Seifert circles, the signed Seifert graph, and the homogeneity and
//! positivity checks.

use crate::conventions;
use crate::diagram::{ArcLabel, Diagram};
use crate::graph::SignedGraph;

/// Circles of the orientation-respecting smoothing, as lists of arcs.
/// Crossingless components appear as empty circles.
pub fn seifert_circles(d: &Diagram) -> Vec<Vec<ArcLabel>> {
    let state = d.seifert_state();
    let touch = d.resolve(&state).expect("total state");
    let mut circles: Vec<Vec<ArcLabel>> = vec![Vec::new(); touch.circle_count];
    let mut id_of_arc = vec![usize::MAX; d.arc_count()];
    for (x, &(p, q)) in touch.touch.iter().enumerate() {
        let pairs = conventions::smoothing_pairs(state.get(x));
        for ((i, j), circle) in pairs.into_iter().zip([p, q]) {
            id_of_arc[d.pd()[x][i] as usize - 1] = circle;
            id_of_arc[d.pd()[x][j] as usize - 1] = circle;
        }
    }
    for (a, &c) in id_of_arc.iter().enumerate() {
        circles[c].push(a as ArcLabel + 1);
    }
    circles
}

/// One vertex per Seifert circle, one edge per crossing signed by type.
pub fn seifert_graph(d: &Diagram) -> SignedGraph {
    let r = d.resolve(&d.seifert_state()).expect("total state");
    let mut g = SignedGraph::new(r.circle_count);
    for (x, &(p, q)) in r.touch.iter().enumerate() {
        debug_assert_ne!(p, q, "Seifert graph loop at crossing {x}");
        g.add_edge(p, q, conventions::seifert_sign(d.sign(x)), x);
    }
    g
}

/// Every block of the Seifert graph carries a single sign.
pub fn is_homogeneous(d: &Diagram) -> bool {
    let g = seifert_graph(d);
    g.blocks_of_components()
        .blocks
        .iter()
        .all(|b| b.iter().all(|&e| g.edges[e].sign == g.edges[b[0]].sign))
}

/// Every crossing is of type I.
pub fn is_positive(d: &Diagram) -> bool {
    (0..d.crossing_count()).all(|x| conventions::seifert_sign(d.sign(x)) > 0)
}
