//! Crossing networks with free ends, used to render tangles and perform
//! surgery before the result is turned back into an oriented [`Diagram`].
//!
//! A 4-ended net uses the compass order NW = 0, NE = 1, SW = 2, SE = 3.

use crate::diagram::{ArcLabel, Diagram, Port};

pub(crate) const NW: usize = 0;
pub(crate) const NE: usize = 1;
pub(crate) const SW: usize = 2;
pub(crate) const SE: usize = 3;

/// Compass position of each slot of a crossing drawn in the tangle frame.
/// Sign +1 has its under-strand NW-SE; sign -1 is its mirror.
pub(crate) fn frame(sign: i8) -> [usize; 4] {
    if sign > 0 {
        [SE, NE, NW, SW]
    } else {
        [SW, SE, NE, NW]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum End {
    Slot(usize, usize),
    Bnd(usize),
}

/// Where a crossing came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    /// Crossing of the input diagram, by its original index.
    Original(usize),
    /// Crossing of twist box `box_index` (1-based) of leaf `leaf` of a block.
    Block { leaf: usize, box_index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Net {
    partner: Vec<[End; 4]>,
    pub tags: Vec<Tag>,
    boundary: Vec<End>,
    pub loops: usize,
}

/// Result of orienting a closed net.
#[derive(Clone, Debug)]
pub(crate) struct Oriented {
    pub diagram: Diagram,
    /// Every anchor agreed with the chosen orientation.
    pub preserved: bool,
    /// Components that carried no anchor.
    pub free_components: usize,
}

impl Net {
    /// A single crossing whose slot `k` sits at boundary point `compass[k]`.
    pub fn crossing(compass: [usize; 4], tag: Tag) -> Net {
        let mut boundary = vec![End::Bnd(usize::MAX); 4];
        let mut partner = [End::Bnd(0); 4];
        for (s, &p) in compass.iter().enumerate() {
            partner[s] = End::Bnd(p);
            boundary[p] = End::Slot(0, s);
        }
        Net { partner: vec![partner], tags: vec![tag], boundary, loops: 0 }
    }

    pub fn crossing_count(&self) -> usize {
        self.partner.len()
    }

    pub fn boundary_end(&self, point: usize) -> End {
        self.boundary[point]
    }

    /// Disjoint union; `other`'s boundary points follow `self`'s.
    pub fn concat(&self, other: &Net) -> Net {
        let off_x = self.partner.len();
        let off_b = self.boundary.len();
        let shift = |e: End| match e {
            End::Slot(x, s) => End::Slot(x + off_x, s),
            End::Bnd(i) => End::Bnd(i + off_b),
        };
        let mut out = self.clone();
        out.partner.extend(other.partner.iter().map(|p| p.map(shift)));
        out.tags.extend(other.tags.iter().copied());
        out.boundary.extend(other.boundary.iter().map(|&e| shift(e)));
        out.loops += other.loops;
        out
    }

    /// Join boundary points pairwise; the points in `keep` become the new
    /// boundary in that order. Every point must be glued or kept.
    pub fn glue(&self, pairs: &[(usize, usize)], keep: &[usize]) -> Net {
        let nb = self.boundary.len();
        let mut glued = vec![None; nb];
        for &(a, b) in pairs {
            glued[a] = Some(b);
            glued[b] = Some(a);
        }
        let mut new_index = vec![None; nb];
        for (k, &p) in keep.iter().enumerate() {
            new_index[p] = Some(k);
        }
        debug_assert!((0..nb).all(|i| glued[i].is_some() != new_index[i].is_some()));
        let mut visited = vec![false; nb];
        // Arriving at boundary point `i` from inside the net.
        let walk = |mut i: usize, visited: &mut Vec<bool>| -> End {
            loop {
                visited[i] = true;
                if let Some(k) = new_index[i] {
                    return End::Bnd(k);
                }
                let j = glued[i].expect("glued or kept");
                visited[j] = true;
                match self.boundary[j] {
                    End::Slot(x, s) => return End::Slot(x, s),
                    End::Bnd(k) => i = k,
                }
            }
        };
        let mut partner = self.partner.clone();
        for row in partner.iter_mut() {
            for e in row.iter_mut() {
                if let End::Bnd(i) = *e {
                    *e = walk(i, &mut visited);
                }
            }
        }
        let boundary: Vec<End> = keep
            .iter()
            .map(|&i| {
                visited[i] = true;
                match self.boundary[i] {
                    End::Slot(x, s) => End::Slot(x, s),
                    End::Bnd(k) => walk(k, &mut visited),
                }
            })
            .collect();
        let mut loops = self.loops;
        for start in 0..nb {
            if visited[start] {
                continue;
            }
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                let j = glued[i].expect("unvisited points are glued");
                visited[j] = true;
                match self.boundary[j] {
                    End::Bnd(k) => i = k,
                    End::Slot(..) => unreachable!("slot ends are always visited"),
                }
            }
            loops += 1;
        }
        Net { partner, tags: self.tags.clone(), boundary, loops }
    }

    /// Tangle sum: `self` to the left of `other`.
    pub fn sum(&self, other: &Net) -> Net {
        self.concat(other).glue(&[(NE, 4 + NW), (SE, 4 + SW)], &[NW, 4 + NE, SW, 4 + SE])
    }

    /// Tangle product: `self` on top of `other`.
    pub fn product(&self, other: &Net) -> Net {
        self.concat(other).glue(&[(SE, 4 + NE), (SW, 4 + NW)], &[NW, NE, 4 + SW, 4 + SE])
    }

    /// Join NW to NE and SW to SE.
    pub fn numerator(&self) -> Net {
        self.glue(&[(NW, NE), (SW, SE)], &[])
    }

    /// Join NW to SW and NE to SE.
    pub fn denominator(&self) -> Net {
        self.glue(&[(NW, SW), (NE, SE)], &[])
    }

    /// The diagram with crossing `c` removed. Its four free ends sit at the
    /// compass points that `c`'s slots occupy in the frame of its sign.
    pub fn complement(d: &Diagram, c: usize) -> Net {
        let place = frame(d.sign(c));
        let idx = |y: usize| if y < c { y } else { y - 1 };
        let end_of = |p: Port| {
            if p.crossing == c {
                End::Bnd(place[p.slot])
            } else {
                End::Slot(idx(p.crossing), p.slot)
            }
        };
        let mut partner = Vec::with_capacity(d.crossing_count() - 1);
        let mut tags = Vec::with_capacity(d.crossing_count() - 1);
        for y in (0..d.crossing_count()).filter(|&y| y != c) {
            let mut row = [End::Bnd(0); 4];
            for (s, e) in row.iter_mut().enumerate() {
                *e = end_of(d.partner(Port::new(y, s)));
            }
            partner.push(row);
            tags.push(Tag::Original(y));
        }
        let mut boundary = vec![End::Bnd(0); 4];
        for k in 0..4 {
            boundary[place[k]] = end_of(d.partner(Port::new(c, k)));
        }
        Net { partner, tags, boundary, loops: d.free_loops() }
    }

    /// The whole diagram as a closed net.
    #[cfg(test)]
    pub fn from_diagram(d: &Diagram) -> Net {
        let partner = (0..d.crossing_count())
            .map(|y| {
                let mut row = [End::Bnd(0); 4];
                for (s, e) in row.iter_mut().enumerate() {
                    let p = d.partner(Port::new(y, s));
                    *e = End::Slot(p.crossing, p.slot);
                }
                row
            })
            .collect();
        Net {
            partner,
            tags: (0..d.crossing_count()).map(Tag::Original).collect(),
            boundary: Vec::new(),
            loops: d.free_loops(),
        }
    }

    /// Reorder crossings: new crossing `i` is old crossing `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> Net {
        let mut inv = vec![0; order.len()];
        for (i, &o) in order.iter().enumerate() {
            inv[o] = i;
        }
        let map = |e: End| match e {
            End::Slot(x, s) => End::Slot(inv[x], s),
            b => b,
        };
        Net {
            partner: order.iter().map(|&o| self.partner[o].map(map)).collect(),
            tags: order.iter().map(|&o| self.tags[o]).collect(),
            boundary: self.boundary.iter().map(|&e| map(e)).collect(),
            loops: self.loops,
        }
    }

    fn slot_partner(&self, x: usize, s: usize) -> (usize, usize) {
        match self.partner[x][s] {
            End::Slot(y, t) => (y, t),
            End::Bnd(_) => panic!("net is not closed"),
        }
    }

    /// Orient a closed net and relabel it as a diagram.
    ///
    /// `anchors` lists `(crossing, slot, entering)` facts. Each component
    /// follows its first anchor; components without one are oriented by bit
    /// `j` of `free_choice` (set = reversed), `j` counting in discovery order.
    pub fn into_diagram(&self, anchors: &[(usize, usize, bool)], free_choice: u64) -> Oriented {
        assert!(self.boundary.is_empty(), "net is not closed");
        let n = self.partner.len();
        let mut anchor = vec![[None::<bool>; 4]; n];
        for &(x, s, e) in anchors {
            anchor[x][s] = Some(e);
        }
        let mut entering = vec![[None::<bool>; 4]; n];
        let mut preserved = true;
        let mut free = 0usize;
        for x0 in 0..n {
            for s0 in 0..4 {
                if entering[x0][s0].is_some() {
                    continue;
                }
                // Walk the component assuming (x0, s0) is entering.
                let mut path = Vec::new();
                let (mut x, mut s) = (x0, s0);
                loop {
                    path.push((x, s));
                    let (y, t) = self.slot_partner(x, (s + 2) % 4);
                    (x, s) = (y, t);
                    if (x, s) == (x0, s0) {
                        break;
                    }
                }
                let mut flip = None;
                for &(x, s) in &path {
                    for (port, want) in [((x, s), true), ((x, (s + 2) % 4), false)] {
                        if let Some(a) = anchor[port.0][port.1] {
                            let f = a != want;
                            match flip {
                                None => flip = Some(f),
                                Some(g) if g != f => preserved = false,
                                _ => {}
                            }
                        }
                    }
                }
                let flip = flip.unwrap_or_else(|| {
                    let f = free_choice >> free & 1 == 1;
                    free += 1;
                    f
                });
                for &(x, s) in &path {
                    entering[x][s] = Some(!flip);
                    entering[x][(s + 2) % 4] = Some(flip);
                }
            }
        }
        let entering: Vec<[bool; 4]> = entering.iter().map(|r| r.map(|e| e.unwrap())).collect();

        // Rotate each crossing so that slot 0 is the incoming under-strand.
        let rot: Vec<usize> = (0..n).map(|x| if entering[x][0] { 0 } else { 2 }).collect();
        let new_slot = |x: usize, s: usize| (s + 4 - rot[x]) % 4;
        let over_in: Vec<u8> = (0..n)
            .map(|x| {
                let old = if entering[x][1] { 1 } else { 3 };
                new_slot(x, old) as u8
            })
            .collect();

        // Label arcs by their head port (an entering port), walking forward.
        let mut label = vec![[0 as ArcLabel; 4]; n];
        let mut next: ArcLabel = 1;
        for x0 in 0..n {
            for k in 0..4 {
                let s0 = (k + rot[x0]) % 4;
                let head0 = if entering[x0][s0] { (x0, s0) } else { self.slot_partner(x0, s0) };
                if label[head0.0][head0.1] != 0 {
                    continue;
                }
                let mut h = head0;
                loop {
                    let tail = self.slot_partner(h.0, h.1);
                    label[h.0][h.1] = next;
                    label[tail.0][tail.1] = next;
                    next += 1;
                    h = self.slot_partner(h.0, (h.1 + 2) % 4);
                    if h == head0 {
                        break;
                    }
                }
            }
        }
        let pd: Vec<[ArcLabel; 4]> = (0..n)
            .map(|x| {
                let mut row = [0; 4];
                for (k, r) in row.iter_mut().enumerate() {
                    *r = label[x][(k + rot[x]) % 4];
                }
                row
            })
            .collect();
        Oriented {
            diagram: Diagram::from_parts(None, pd, over_in, self.loops),
            preserved,
            free_components: free,
        }
    }
}

/// Anchors fixing every slot of the original crossings kept in a net.
pub(crate) fn original_anchors(d: &Diagram, net: &Net) -> Vec<(usize, usize, bool)> {
    let mut out = Vec::new();
    for (x, tag) in net.tags.iter().enumerate() {
        if let Tag::Original(y) = *tag {
            for s in 0..4 {
                out.push((x, s, d.is_entering(Port::new(y, s))));
            }
        }
    }
    out
}

/// Smooth crossing `c` of `d` with value +1 (A) or -1 (B). The result keeps
/// the original orientation where it can; it may be split.
pub(crate) fn smooth_at(d: &Diagram, c: usize, value: i8) -> Diagram {
    let place = frame(d.sign(c));
    let comp = Net::complement(d, c);
    let pairs: Vec<(usize, usize)> = crate::conventions::smoothing_pairs(value)
        .iter()
        .map(|&(i, j)| (place[i], place[j]))
        .collect();
    let closed = comp.glue(&pairs, &[]);
    let anchors = original_anchors(d, &closed);
    closed.into_diagram(&anchors, 0).diagram
}
