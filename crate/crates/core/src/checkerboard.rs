//! Checkerboard colorings, the enhanced checkerboard digraph, and the
//! alternativity check.

use std::collections::VecDeque;

use crate::conventions;
use crate::diagram::{ArcSide, Diagram, Faces};
use crate::graph::{Arrow, Color, SignedDigraph, WalkMode};

/// A proper two-coloring of the regions of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub faces: Faces,
    pub colors: Vec<Color>,
}

impl Coloring {
    pub fn color(&self, face: usize) -> Color {
        self.colors[face]
    }

    /// Color of corner `corner` at crossing `crossing`.
    pub fn corner_color(&self, crossing: usize, corner: usize) -> Color {
        self.colors[self.faces.corner(crossing, corner)]
    }

    pub fn flipped(&self) -> Coloring {
        Coloring { faces: self.faces.clone(), colors: self.colors.iter().map(|c| c.flip()).collect() }
    }

    /// Faces on the two sides of every arc differ.
    pub fn is_proper(&self, d: &Diagram) -> bool {
        (1..=d.arc_count() as u32).all(|arc| {
            let l = self.faces.side(ArcSide { arc, left: true });
            let r = self.faces.side(ArcSide { arc, left: false });
            self.colors[l] != self.colors[r]
        })
    }
}

/// The coloring in which the region left of arc 1 is white.
pub fn two_coloring(d: &Diagram) -> Coloring {
    let faces = d.faces();
    let mut colors = vec![None; faces.len()];
    if d.crossing_count() == 0 {
        let colors = (0..faces.len()).map(|f| if f % 2 == 0 { Color::White } else { Color::Black }).collect();
        return Coloring { faces, colors };
    }
    let mut adj = vec![Vec::new(); faces.len()];
    for arc in 1..=d.arc_count() as u32 {
        let l = faces.side(ArcSide { arc, left: true });
        let r = faces.side(ArcSide { arc, left: false });
        adj[l].push(r);
        adj[r].push(l);
    }
    let seed = faces.side(ArcSide { arc: 1, left: true });
    colors[seed] = Some(Color::White);
    let mut queue = VecDeque::from([seed]);
    while let Some(f) = queue.pop_front() {
        let c = colors[f].unwrap();
        for &g in &adj[f] {
            if colors[g].is_none() {
                colors[g] = Some(c.flip());
                queue.push_back(g);
            }
        }
    }
    // Regions untouched by arcs are the crossingless loops of a split diagram.
    let colors = colors.into_iter().map(|c| c.unwrap_or(Color::White)).collect();
    Coloring { faces, colors }
}

/// One signed edge per crossing, from the region between the two incoming
/// strands to the region between the two outgoing strands.
pub fn enhanced_digraph(d: &Diagram, col: &Coloring) -> SignedDigraph {
    let edges = (0..d.crossing_count())
        .map(|x| {
            let row = conventions::phi_row(d.sign(x));
            Arrow {
                tail: col.faces.corner(x, row.tail_corner),
                head: col.faces.corner(x, row.head_corner),
                sign: row.sign,
                crossing: x,
            }
        })
        .collect();
    SignedDigraph { colors: col.colors.clone(), edges }
}

pub fn is_alternative(d: &Diagram) -> bool {
    is_alternative_with(d, WalkMode::Directed)
}

/// No walk of the enhanced digraph uses edges of both signs.
pub fn is_alternative_with(d: &Diagram, mode: WalkMode) -> bool {
    !enhanced_digraph(d, &two_coloring(d)).has_mixed_walk(mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
    const FIGURE_EIGHT: &str = "X 8 5 1 6\nX 4 1 5 2\nX 2 8 3 7\nX 6 4 7 3\n";

    #[test]
    fn unknot_coloring() {
        let c = two_coloring(&Diagram::unknot());
        assert_eq!(c.colors.len(), 2);
        assert_ne!(c.colors[0], c.colors[1]);
    }

    #[test]
    fn trefoil_coloring_is_proper() {
        let d = parse_pd(TREFOIL).unwrap();
        let c = two_coloring(&d);
        assert_eq!(c.colors.len(), 5);
        assert!(c.is_proper(&d));
        assert_eq!(c.color(c.faces.side(ArcSide { arc: 1, left: true })), Color::White);
        let f = c.flipped();
        assert!(f.is_proper(&d));
        assert!(c.colors.iter().zip(&f.colors).all(|(a, b)| *a != *b));
    }

    #[test]
    fn alternating_diagrams_are_alternative() {
        for text in [TREFOIL, FIGURE_EIGHT] {
            let d = parse_pd(text).unwrap();
            assert_eq!(enhanced_digraph(&d, &two_coloring(&d)).edges.len(), d.crossing_count());
            assert!(is_alternative(&d));
            assert!(is_alternative(&d.mirror()));
        }
    }

    /// Arrow endpoints as arc-side sets, which do not depend on face numbering.
    fn arrow_keys(d: &Diagram) -> Vec<(Vec<ArcSide>, Vec<ArcSide>, i8)> {
        let col = two_coloring(d);
        let g = enhanced_digraph(d, &col);
        let key = |f: usize| {
            let mut v = col.faces.regions[f].clone();
            v.sort();
            v
        };
        let mut out: Vec<_> = g.edges.iter().map(|a| (key(a.tail), key(a.head), a.sign)).collect();
        out.sort();
        out
    }

    #[test]
    fn mirror_keeps_arrows_and_flips_signs() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let flipped: Vec<_> = {
            let mut v: Vec<_> = arrow_keys(&d).into_iter().map(|(t, h, s)| (t, h, -s)).collect();
            v.sort();
            v
        };
        assert_eq!(arrow_keys(&d.mirror()), flipped);
    }
}
