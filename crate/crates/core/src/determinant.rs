//! Tait graphs, signed spanning-tree sums, and the determinant of a diagram.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::checkerboard::{two_coloring, Coloring};
use crate::conventions;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::graph::{Color, SignedGraph};
use crate::net;
use crate::uf::UnionFind;

/// Largest edge count for which spanning trees are enumerated.
pub const TREE_ENUMERATION_LIMIT: usize = 16;

/// Signed graph on the black regions, one edge per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitGraph {
    pub graph: SignedGraph,
    /// Region index of each vertex.
    pub vertex_face: Vec<usize>,
}

impl TaitGraph {
    /// Edge index of the crossing's edge.
    pub fn edge_of(&self, crossing: usize) -> usize {
        self.graph.edges.iter().position(|e| e.crossing == crossing).expect("one edge per crossing")
    }
}

pub fn tait_graph(d: &Diagram, col: &Coloring) -> TaitGraph {
    let vertex_face: Vec<usize> = (0..col.colors.len()).filter(|&f| col.color(f) == Color::Black).collect();
    let mut index = vec![usize::MAX; col.colors.len()];
    for (v, &f) in vertex_face.iter().enumerate() {
        index[f] = v;
    }
    let mut graph = SignedGraph::new(vertex_face.len());
    for x in 0..d.crossing_count() {
        let shaded = if col.corner_color(x, 0) == Color::Black { 0 } else { 1 };
        let u = index[col.faces.corner(x, shaded)];
        let v = index[col.faces.corner(x, shaded + 2)];
        graph.add_edge(u, v, conventions::tait_sign(shaded), x);
    }
    TaitGraph { graph, vertex_face }
}

/// The coloring whose Tait edge at `c` is positive.
pub fn choose_coloring_positive_at(d: &Diagram, c: usize) -> Coloring {
    let col = two_coloring(d);
    let t = tait_graph(d, &col);
    if t.graph.edges[t.edge_of(c)].sign > 0 {
        col
    } else {
        col.flipped()
    }
}

/// `counts[v]`: spanning trees with exactly `v` positive edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TreeSignature {
    pub counts: BTreeMap<usize, u64>,
}

impl TreeSignature {
    pub fn get(&self, v: usize) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum_v (-1)^v s_v`.
    pub fn signed_sum(&self) -> i64 {
        self.counts.iter().map(|(&v, &s)| if v % 2 == 0 { s as i64 } else { -(s as i64) }).sum()
    }
}

/// Spanning trees by enumeration of edge subsets.
pub fn tree_signature(g: &SignedGraph) -> Result<TreeSignature> {
    let m = g.edge_count();
    if m > TREE_ENUMERATION_LIMIT {
        return Err(Error::ResourceLimit { crossings: m, limit: TREE_ENUMERATION_LIMIT });
    }
    let mut sig = TreeSignature::default();
    let need = g.vertex_count.saturating_sub(1) as u32;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() != need {
            continue;
        }
        let mut uf = UnionFind::new(g.vertex_count);
        let mut positive = 0;
        let mut acyclic = true;
        for (i, e) in g.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if !uf.union(e.u, e.v) {
                    acyclic = false;
                    break;
                }
                if e.sign > 0 {
                    positive += 1;
                }
            }
        }
        if acyclic {
            *sig.counts.entry(positive).or_default() += 1;
        }
    }
    Ok(sig)
}

/// Determinant of an integer matrix by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `sum_T (-1)^(positive edges of T)` by the weighted matrix-tree theorem.
pub fn signed_tree_sum(g: &SignedGraph) -> BigInt {
    let n = g.vertex_count;
    if n == 0 {
        return BigInt::zero();
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in &g.edges {
        if e.u == e.v {
            continue;
        }
        let w = BigInt::from(if e.sign > 0 { -1 } else { 1 });
        lap[e.u][e.u] += &w;
        lap[e.v][e.v] += &w;
        lap[e.u][e.v] -= &w;
        lap[e.v][e.u] -= &w;
    }
    let minor: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    bareiss(minor)
}

/// `|sum_T (-1)^v(T)|` over the Tait graph; zero for split diagrams.
pub fn determinant(d: &Diagram) -> u64 {
    if d.is_split() {
        return 0;
    }
    let t = tait_graph(d, &two_coloring(d));
    signed_tree_sum(&t.graph).abs().to_u64().expect("determinant fits in u64")
}

/// Which smoothing to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Smoothing {
    A,
    B,
}

/// The diagram with crossing `c` smoothed. `A` gives `L_0`, `B` gives `L_1`.
pub fn smooth_at(d: &Diagram, c: usize, which: Smoothing) -> Result<Diagram> {
    if c >= d.crossing_count() {
        return Err(Error::UnknownCrossing(c));
    }
    Ok(net::smooth_at(d, c, if which == Smoothing::A { 1 } else { -1 }))
}

fn delete_edge(g: &SignedGraph, e: usize) -> SignedGraph {
    let mut h = g.clone();
    h.edges.remove(e);
    h
}

fn contract_edge(g: &SignedGraph, e: usize) -> SignedGraph {
    let (keep, gone) = (g.edges[e].u.min(g.edges[e].v), g.edges[e].u.max(g.edges[e].v));
    let relabel = |v: usize| {
        let v = if v == gone { keep } else { v };
        if v > gone {
            v - 1
        } else {
            v
        }
    };
    let mut h = SignedGraph::new(if keep == gone { g.vertex_count } else { g.vertex_count - 1 });
    for (i, f) in g.edges.iter().enumerate() {
        if i != e {
            if keep == gone {
                h.add_edge(f.u, f.v, f.sign, f.crossing);
            } else {
                h.add_edge(relabel(f.u), relabel(f.v), f.sign, f.crossing);
            }
        }
    }
    h
}

/// `(x, y)` at crossing `c`, with the coloring that makes the edge at `c`
/// positive: `x = -S(G - e)`, `y = S(G / e)` where `S` is the signed tree sum.
pub fn xy_values(d: &Diagram, c: usize) -> Result<(BigInt, BigInt)> {
    if c >= d.crossing_count() {
        return Err(Error::UnknownCrossing(c));
    }
    let col = choose_coloring_positive_at(d, c);
    let t = tait_graph(d, &col);
    let e = t.edge_of(c);
    let x = -signed_tree_sum(&delete_edge(&t.graph, e));
    let y = signed_tree_sum(&contract_edge(&t.graph, e));
    Ok((x, y))
}

/// Determinant of a diagram whose crossing `c` was replaced by a rational
/// tangle of slope `beta / alpha`.
pub fn predict_twisted_det(alpha: u64, beta: u64, det0: u64, det1: u64, sign_xy: i8, sign_c: i8) -> u64 {
    let (p, q) = if sign_c > 0 { (det0, det1) } else { (det1, det0) };
    let v = alpha as i128 * p as i128 + sign_xy as i128 * beta as i128 * q as i128;
    v.unsigned_abs() as u64
}
