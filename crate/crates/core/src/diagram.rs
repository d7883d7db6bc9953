//! Oriented link diagrams stored as planar-diagram (PD) codes.
//!
//! Each crossing lists four arc labels counterclockwise, starting at the
//! incoming under-strand. Arc labels run consecutively along each component in
//! the direction of its orientation, which is how the over-strand direction is
//! recovered when a code is read.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::conventions::{self, smoothing_pairs};
use crate::error::{Error, Result};
use crate::uf::UnionFind;

pub type ArcLabel = u32;

/// Default upper bound on crossings for exhaustive state enumeration.
pub const DEFAULT_MAX_STATE_SUM: usize = 24;

/// A crossing slot: slot 0 is the incoming under-strand, the rest follow
/// counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: usize,
}

impl Port {
    pub fn new(crossing: usize, slot: usize) -> Self {
        Port { crossing, slot }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SeifertType {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    pub arcs: [ArcLabel; 4],
    pub sign: i8,
    pub seifert_type: SeifertType,
}

/// Syntactic content of a PD file, before any validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PdCode {
    pub name: Option<String>,
    pub crossings: Vec<[i64; 4]>,
    /// Crossingless components. `None` means "not stated": a code without
    /// crossings is then the one-component unknot.
    pub loops: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    ArcMultiplicity,
    Orientation,
    Planarity,
    Split,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl Violation {
    fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation { kind, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ViolationKind::ArcMultiplicity => "arc multiplicity",
            ViolationKind::Orientation => "orientation",
            ViolationKind::Planarity => "planarity",
            ViolationKind::Split => "split",
            ViolationKind::Empty => "empty",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// A validated, oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    name: Option<String>,
    pd: Vec<[ArcLabel; 4]>,
    over_in: Vec<u8>,
    free_loops: usize,
    /// `[tail, head]` of each arc, indexed by `label - 1`.
    arc_ends: Vec<[Port; 2]>,
    components: Vec<Vec<ArcLabel>>,
}

/// A choice of A-smoothing (+1) or B-smoothing (-1) at every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    values: Vec<i8>,
}

impl State {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidArgument("state values must be +1 or -1".into()));
        }
        Ok(State { values })
    }

    pub fn constant(n: usize, value: i8) -> Self {
        State { values: vec![value; n] }
    }

    /// State from a bit mask: bit `i` set means B-smoothing at crossing `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        State { values: (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, crossing: usize) -> i8 {
        self.values[crossing]
    }

    pub fn sigma(&self) -> i64 {
        self.values.iter().map(|&v| v as i64).sum()
    }

    pub fn flipped(&self, crossing: usize) -> Self {
        let mut values = self.values.clone();
        values[crossing] = -values[crossing];
        State { values }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothingResult {
    pub circle_count: usize,
    /// Circle ids of the two smoothing arcs at each crossing.
    pub touch: Vec<(usize, usize)>,
}

/// One side of an arc; `left` is relative to the arc's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ArcSide {
    pub arc: ArcLabel,
    pub left: bool,
}

/// Regions of the diagram complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub regions: Vec<Vec<ArcSide>>,
    corner_face: Vec<[usize; 4]>,
    side_face: Vec<[usize; 2]>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// Face occupying corner `corner` of crossing `crossing`.
    pub fn corner(&self, crossing: usize, corner: usize) -> usize {
        self.corner_face[crossing][corner]
    }

    pub fn side(&self, side: ArcSide) -> usize {
        self.side_face[side.arc as usize - 1][if side.left { 0 } else { 1 }]
    }
}

// ---------------------------------------------------------------------------
// Parsing and serialization

/// Parse the text form into a [`PdCode`] without checking it.
pub fn parse_pd_code(text: &str) -> Result<PdCode> {
    let mut code = PdCode::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("X") => {
                let nums: Vec<i64> = words
                    .map(|w| {
                        w.parse::<i64>().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("expected an integer arc label, found {w:?}"),
                        })
                    })
                    .collect::<Result<_>>()?;
                if nums.len() != 4 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("crossing needs 4 arc labels, found {}", nums.len()),
                    });
                }
                code.crossings.push([nums[0], nums[1], nums[2], nums[3]]);
            }
            Some("name") => {
                let rest = line["name".len()..].trim();
                if rest.is_empty() {
                    return Err(Error::Parse { line: line_no, msg: "empty name".into() });
                }
                code.name = Some(rest.to_string());
            }
            Some("loops") => {
                let k = words.next().and_then(|w| w.parse::<usize>().ok()).ok_or_else(|| {
                    Error::Parse { line: line_no, msg: "loops needs a count".into() }
                })?;
                code.loops = Some(k);
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown directive {other:?}"),
                })
            }
            None => {}
        }
    }
    Ok(code)
}

/// Parse and validate a PD file.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let code = parse_pd_code(text)?;
    Diagram::from_pd_code(&code)
}

/// Check a raw code against every diagram invariant.
pub fn validate_pd(code: &PdCode) -> Vec<Violation> {
    let mut out = Vec::new();
    let loops = effective_loops(code);
    if code.crossings.is_empty() {
        if loops == 0 {
            out.push(Violation::new(ViolationKind::Empty, "no crossings and no loops"));
        } else if loops > 1 {
            out.push(Violation::new(ViolationKind::Split, format!("{loops} disjoint loops")));
        }
        return out;
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for c in &code.crossings {
        for &a in c {
            *counts.entry(a).or_default() += 1;
        }
    }
    for (&arc, &count) in &counts {
        if count != 2 {
            out.push(Violation::new(
                ViolationKind::ArcMultiplicity,
                format!("arc {arc} appears {count} times"),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let pd = normalize_labels(&code.crossings);
    match infer_orientation(&pd) {
        Ok(_) => {}
        Err(v) => out.extend(v),
    }
    let partner = raw_partner(&pd);
    let n = pd.len();
    let components = projection_components(n, |p| partner[p.crossing][p.slot]);
    let cycles = face_cycles(n, |p| partner[p.crossing][p.slot]);
    let expected = 2 * pd.len() - n + 2 * components;
    if cycles.len() != expected {
        out.push(Violation::new(
            ViolationKind::Planarity,
            format!(
                "V - E + F = {} - {} + {} differs from 2 per component ({} components)",
                n,
                2 * n,
                cycles.len(),
                components
            ),
        ));
    }
    if components > 1 || loops > 0 {
        out.push(Violation::new(
            ViolationKind::Split,
            format!("{} projection components and {} free loops", components, loops),
        ));
    }
    out
}

fn effective_loops(code: &PdCode) -> usize {
    match code.loops {
        Some(k) => k,
        None if code.crossings.is_empty() => 1,
        None => 0,
    }
}

fn normalize_labels(crossings: &[[i64; 4]]) -> Vec<[ArcLabel; 4]> {
    let mut labels: Vec<i64> = crossings.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let rank: BTreeMap<i64, ArcLabel> =
        labels.iter().enumerate().map(|(i, &l)| (l, i as ArcLabel + 1)).collect();
    crossings.iter().map(|c| [rank[&c[0]], rank[&c[1]], rank[&c[2]], rank[&c[3]]]).collect()
}

/// Port partner table for a code whose labels each occur twice.
fn raw_partner(pd: &[[ArcLabel; 4]]) -> Vec<[Port; 4]> {
    let arc_count = pd.len() * 2;
    let mut seen: Vec<Vec<Port>> = vec![Vec::new(); arc_count + 1];
    for (x, c) in pd.iter().enumerate() {
        for (s, &a) in c.iter().enumerate() {
            seen[a as usize].push(Port::new(x, s));
        }
    }
    let mut partner = vec![[Port::new(0, 0); 4]; pd.len()];
    for ends in seen.iter().skip(1) {
        partner[ends[0].crossing][ends[0].slot] = ends[1];
        partner[ends[1].crossing][ends[1].slot] = ends[0];
    }
    partner
}

/// Face walks: arrive at a port, leave through the clockwise-next slot.
/// Each returned cycle lists arrival ports.
pub(crate) fn face_cycles(n: usize, partner: impl Fn(Port) -> Port) -> Vec<Vec<Port>> {
    let mut seen = vec![[false; 4]; n];
    let mut cycles = Vec::new();
    for x in 0..n {
        for s in 0..4 {
            if seen[x][s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = Port::new(x, s);
            while !seen[p.crossing][p.slot] {
                seen[p.crossing][p.slot] = true;
                cycle.push(p);
                let out = Port::new(p.crossing, (p.slot + 3) % 4);
                p = partner(out);
            }
            cycles.push(cycle);
        }
    }
    cycles
}

fn projection_components(n: usize, partner: impl Fn(Port) -> Port) -> usize {
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for s in 0..4 {
            uf.union(x, partner(Port::new(x, s)).crossing);
        }
    }
    uf.labels().1
}

/// Recover the over-strand entry slot of every crossing from the arc numbering.
fn infer_orientation(pd: &[[ArcLabel; 4]]) -> std::result::Result<Vec<u8>, Vec<Violation>> {
    let n = pd.len();
    let partner = raw_partner(pd);
    let mut violations = Vec::new();

    // Components as label sets, via strand continuation through crossings.
    let arc_count = 2 * n;
    let mut uf = UnionFind::new(arc_count + 1);
    for c in pd {
        uf.union(c[0] as usize, c[2] as usize);
        uf.union(c[1] as usize, c[3] as usize);
    }
    let mut comp_labels: BTreeMap<usize, Vec<ArcLabel>> = BTreeMap::new();
    for l in 1..=arc_count {
        comp_labels.entry(uf.find(l)).or_default().push(l as ArcLabel);
    }
    let mut next: Vec<Option<ArcLabel>> = vec![None; arc_count + 1];
    for labels in comp_labels.values() {
        let lo = labels[0];
        let hi = *labels.last().unwrap();
        if (hi - lo) as usize + 1 != labels.len() {
            violations.push(Violation::new(
                ViolationKind::Orientation,
                format!("arc labels {lo}..{hi} of a component are not consecutive"),
            ));
            continue;
        }
        for &l in labels {
            next[l as usize] = Some(if l == hi { lo } else { l + 1 });
        }
    }

    // role: Some(true) = strand enters the crossing at this slot.
    let mut role = vec![[None::<bool>; 4]; n];
    for (x, c) in pd.iter().enumerate() {
        role[x][0] = Some(true);
        role[x][2] = Some(false);
        let (b, d) = (c[1], c[3]);
        let b_to_d = next[b as usize] == Some(d);
        let d_to_b = next[d as usize] == Some(b);
        if b_to_d && !d_to_b {
            role[x][1] = Some(true);
            role[x][3] = Some(false);
        } else if d_to_b && !b_to_d {
            role[x][3] = Some(true);
            role[x][1] = Some(false);
        }
    }
    // Propagate along arcs; an arc enters one crossing and leaves another.
    loop {
        let mut changed = false;
        for x in 0..n {
            for s in 0..4 {
                let q = partner[x][s];
                if let (Some(r), None) = (role[x][s], role[q.crossing][q.slot]) {
                    role[q.crossing][q.slot] = Some(!r);
                    role[q.crossing][(q.slot + 2) % 4] = Some(r);
                    changed = true;
                }
            }
        }
        if changed {
            continue;
        }
        match (0..n).find(|&x| role[x][1].is_none()) {
            Some(x) => {
                role[x][1] = Some(true);
                role[x][3] = Some(false);
            }
            None => break,
        }
    }
    for x in 0..n {
        for s in 0..4 {
            let q = partner[x][s];
            if (x, s) < (q.crossing, q.slot) && role[x][s] == role[q.crossing][q.slot] {
                violations.push(Violation::new(
                    ViolationKind::Orientation,
                    format!("arc {} is traversed inconsistently", pd[x][s]),
                ));
            }
        }
    }
    // Labels must increase along the orientation.
    for (x, c) in pd.iter().enumerate() {
        if let Some(nx) = next[c[0] as usize] {
            if nx != c[2] {
                violations.push(Violation::new(
                    ViolationKind::Orientation,
                    format!("crossing {}: under-strand {} -> {} breaks the numbering", x + 1, c[0], c[2]),
                ));
            }
        }
    }
    if violations.is_empty() {
        Ok((0..n).map(|x| if role[x][3] == Some(true) { 3 } else { 1 }).collect())
    } else {
        Err(violations)
    }
}

// ---------------------------------------------------------------------------
// Diagram

impl Diagram {
    /// Build from a raw code, failing on the first broken invariant.
    pub fn from_pd_code(code: &PdCode) -> Result<Diagram> {
        let violations = validate_pd(code);
        if let Some(v) = violations.first() {
            if v.kind == ViolationKind::ArcMultiplicity {
                let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
                for c in &code.crossings {
                    for &a in c {
                        *counts.entry(a).or_default() += 1;
                    }
                }
                // Report an over-used label first; a missing one is its echo.
                let (&arc, &count) = counts
                    .iter()
                    .find(|(_, &c)| c > 2)
                    .or_else(|| counts.iter().find(|(_, &c)| c != 2))
                    .unwrap();
                return Err(Error::ArcMultiplicity { arc, count });
            }
            let joined: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::InvalidDiagram(joined.join("; ")));
        }
        let pd = normalize_labels(&code.crossings);
        let over_in = infer_orientation(&pd).expect("validated above");
        Ok(Diagram::from_parts(code.name.clone(), pd, over_in, effective_loops(code)))
    }

    /// Assemble a diagram whose labels and orientation are already consistent.
    pub(crate) fn from_parts(
        name: Option<String>,
        pd: Vec<[ArcLabel; 4]>,
        over_in: Vec<u8>,
        free_loops: usize,
    ) -> Diagram {
        let arc_count = pd.len() * 2;
        let mut arc_ends = vec![[Port::new(usize::MAX, 0); 2]; arc_count];
        for (x, c) in pd.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                let entering = s == 0 || s == over_in[x] as usize;
                arc_ends[a as usize - 1][if entering { 1 } else { 0 }] = Port::new(x, s);
            }
        }
        let mut d = Diagram { name, pd, over_in, free_loops, arc_ends, components: Vec::new() };
        d.components = d.trace_components();
        d
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Diagram {
        Diagram::from_parts(Some("unknot".into()), Vec::new(), Vec::new(), 1)
    }

    fn trace_components(&self) -> Vec<Vec<ArcLabel>> {
        let mut seen = vec![false; self.arc_count()];
        let mut comps = Vec::new();
        for start in 1..=self.arc_count() as ArcLabel {
            if seen[start as usize - 1] {
                continue;
            }
            let mut comp = Vec::new();
            let mut l = start;
            while !seen[l as usize - 1] {
                seen[l as usize - 1] = true;
                comp.push(l);
                let head = self.arc_ends[l as usize - 1][1];
                l = self.pd[head.crossing][(head.slot + 2) % 4];
            }
            comps.push(comp);
        }
        comps
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Diagram {
        self.name = Some(name.into());
        self
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.len()
    }

    pub fn arc_count(&self) -> usize {
        self.pd.len() * 2
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn pd(&self) -> &[[ArcLabel; 4]] {
        &self.pd
    }

    pub fn components(&self) -> &[Vec<ArcLabel>] {
        &self.components
    }

    /// Number of link components, crossingless loops included.
    pub fn link_components(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        conventions::writhe_from_over_in(self.over_in[crossing])
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count()).map(|x| self.sign(x) as i64).sum()
    }

    pub fn crossing(&self, id: usize) -> Crossing {
        let sign = self.sign(id);
        Crossing {
            id,
            arcs: self.pd[id],
            sign,
            seifert_type: if conventions::seifert_sign(sign) > 0 {
                SeifertType::I
            } else {
                SeifertType::II
            },
        }
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        (0..self.crossing_count()).map(|x| self.crossing(x)).collect()
    }

    /// Whether the strand at `port` enters its crossing there.
    pub fn is_entering(&self, port: Port) -> bool {
        port.slot == 0 || port.slot == self.over_in[port.crossing] as usize
    }

    /// The other end of the arc at `port`.
    pub fn partner(&self, port: Port) -> Port {
        let a = self.pd[port.crossing][port.slot];
        let ends = self.arc_ends[a as usize - 1];
        if ends[0] == port {
            ends[1]
        } else {
            ends[0]
        }
    }

    /// `[tail, head]` of an arc.
    pub fn arc_ends(&self, arc: ArcLabel) -> [Port; 2] {
        self.arc_ends[arc as usize - 1]
    }

    pub fn to_pd_code(&self) -> PdCode {
        let loops = if self.pd.is_empty() && self.free_loops == 1 {
            None
        } else if self.free_loops == 0 {
            None
        } else {
            Some(self.free_loops)
        };
        PdCode {
            name: self.name.clone(),
            crossings: self.pd.iter().map(|c| c.map(|a| a as i64)).collect(),
            loops,
        }
    }

    /// Text form: optional `name` line, then one `X a b c d` line per crossing.
    pub fn to_pd_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("name {name}\n"));
        }
        if let Some(k) = self.to_pd_code().loops {
            out.push_str(&format!("loops {k}\n"));
        }
        for c in &self.pd {
            out.push_str(&format!("X {} {} {} {}\n", c[0], c[1], c[2], c[3]));
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_pd(&self.to_pd_code())
    }

    pub fn is_split(&self) -> bool {
        if self.pd.is_empty() {
            return self.free_loops > 1;
        }
        self.free_loops > 0 || projection_components(self.crossing_count(), |p| self.partner(p)) > 1
    }

    /// Swap over and under at every crossing.
    pub fn mirror(&self) -> Diagram {
        let mut pd = Vec::with_capacity(self.pd.len());
        let mut over_in = Vec::with_capacity(self.pd.len());
        for (x, c) in self.pd.iter().enumerate() {
            let [a, b, cc, d] = *c;
            if self.over_in[x] == 3 {
                pd.push([d, a, b, cc]);
                over_in.push(1);
            } else {
                pd.push([b, cc, d, a]);
                over_in.push(3);
            }
        }
        Diagram::from_parts(self.name.clone(), pd, over_in, self.free_loops)
    }

    /// Orientation- and slot-preserving isomorphism up to relabeling of arcs
    /// and reordering of crossings.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        let n = self.crossing_count();
        if n != other.crossing_count()
            || self.free_loops != other.free_loops
            || self.components.len() != other.components.len()
        {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.match_from(other, 0, &mut map, &mut used)
    }

    fn match_from(&self, other: &Diagram, from: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.crossing_count();
        let Some(start) = (from..n).find(|&x| map[x] == usize::MAX) else {
            return true;
        };
        for y in 0..n {
            if used[y] || self.over_in[start] != other.over_in[y] {
                continue;
            }
            let mut trial_map = map.to_vec();
            let mut trial_used = used.to_vec();
            if self.extend_match(other, start, y, &mut trial_map, &mut trial_used)
                && self.match_from(other, start + 1, &mut trial_map, &mut trial_used)
            {
                map.copy_from_slice(&trial_map);
                used.copy_from_slice(&trial_used);
                return true;
            }
        }
        false
    }

    fn extend_match(&self, other: &Diagram, x0: usize, y0: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let mut stack = vec![(x0, y0)];
        map[x0] = y0;
        used[y0] = true;
        while let Some((x, y)) = stack.pop() {
            for s in 0..4 {
                let p = self.partner(Port::new(x, s));
                let q = other.partner(Port::new(y, s));
                if p.slot != q.slot {
                    return false;
                }
                if map[p.crossing] == usize::MAX {
                    if used[q.crossing] || self.over_in[p.crossing] != other.over_in[q.crossing] {
                        return false;
                    }
                    map[p.crossing] = q.crossing;
                    used[q.crossing] = true;
                    stack.push((p.crossing, q.crossing));
                } else if map[p.crossing] != q.crossing {
                    return false;
                }
            }
        }
        true
    }

    // -----------------------------------------------------------------------
    // States

    pub fn all_a(&self) -> State {
        State::constant(self.crossing_count(), 1)
    }

    pub fn all_b(&self) -> State {
        State::constant(self.crossing_count(), -1)
    }

    /// The state that agrees with the orientation (Seifert smoothing).
    pub fn seifert_state(&self) -> State {
        State {
            values: (0..self.crossing_count())
                .map(|x| conventions::seifert_smoothing(self.sign(x)))
                .collect(),
        }
    }

    /// Smooth every crossing according to `state`.
    pub fn resolve(&self, state: &State) -> Result<SmoothingResult> {
        let n = self.crossing_count();
        if state.len() != n {
            return Err(Error::PartialState { expected: n, got: state.len() });
        }
        let mut uf = UnionFind::new(self.arc_count());
        for (x, c) in self.pd.iter().enumerate() {
            for (i, j) in smoothing_pairs(state.get(x)) {
                uf.union(c[i] as usize - 1, c[j] as usize - 1);
            }
        }
        let (ids, count) = uf.labels();
        let touch = self
            .pd
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let [(i, _), (k, _)] = smoothing_pairs(state.get(x));
                (ids[c[i] as usize - 1], ids[c[k] as usize - 1])
            })
            .collect();
        Ok(SmoothingResult { circle_count: count + self.free_loops, touch })
    }

    /// Circle count only, with the state given as a B-mask.
    pub(crate) fn circles_for_mask(&self, mask: u64) -> usize {
        let mut uf = UnionFind::new(self.arc_count());
        let mut merged = 0;
        for (x, c) in self.pd.iter().enumerate() {
            let v = if mask >> x & 1 == 1 { -1 } else { 1 };
            for (i, j) in smoothing_pairs(v) {
                if uf.union(c[i] as usize - 1, c[j] as usize - 1) {
                    merged += 1;
                }
            }
        }
        self.arc_count() - merged + self.free_loops
    }

    fn state_adequate(&self, state: &State) -> bool {
        let r = self.resolve(state).expect("total state");
        r.touch.iter().all(|(p, q)| p != q)
    }

    pub fn is_a_adequate(&self) -> bool {
        self.state_adequate(&self.all_a())
    }

    pub fn is_b_adequate(&self) -> bool {
        self.state_adequate(&self.all_b())
    }

    pub fn is_adequate(&self) -> bool {
        self.is_a_adequate() && self.is_b_adequate()
    }

    // -----------------------------------------------------------------------
    // Faces

    pub fn faces(&self) -> Faces {
        let n = self.crossing_count();
        if n == 0 {
            return Faces {
                regions: vec![Vec::new(); self.free_loops + 1],
                corner_face: Vec::new(),
                side_face: Vec::new(),
            };
        }
        let cycles = face_cycles(n, |p| self.partner(p));
        let mut corner_face = vec![[usize::MAX; 4]; n];
        let mut side_face = vec![[usize::MAX; 2]; self.arc_count()];
        let mut regions = Vec::with_capacity(cycles.len());
        for (f, cycle) in cycles.iter().enumerate() {
            let mut sides = Vec::with_capacity(cycle.len());
            for &p in cycle {
                let arc = self.pd[p.crossing][p.slot];
                // Arriving at the head means the arc was walked forward, so the
                // face is on its left.
                let left = self.is_entering(p);
                sides.push(ArcSide { arc, left });
                side_face[arc as usize - 1][if left { 0 } else { 1 }] = f;
                corner_face[p.crossing][conventions::corner_after_arrival(p.slot)] = f;
            }
            regions.push(sides);
        }
        for _ in 0..self.free_loops {
            regions.push(Vec::new());
        }
        Faces { regions, corner_face, side_face }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_text())
    }
}

impl std::str::FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pd(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.components().len(), 1);
        assert!(d.validate().is_empty());
        // Knot-table trefoil is the left-handed one.
        assert!((0..3).all(|x| d.sign(x) == -1));
    }

    #[test]
    fn arc_multiplicity_is_rejected() {
        let err = parse_pd("X 1 4 2 5\nX 3 6 4 1\nX 5 4 6 3\n").unwrap_err();
        assert!(matches!(err, Error::ArcMultiplicity { arc: 4, count: 3 }));
        let code = parse_pd_code("X 1 4 2 5\nX 3 6 4 1\nX 5 4 6 3\n").unwrap();
        let v = validate_pd(&code);
        assert!(v.iter().any(|v| v.kind == ViolationKind::ArcMultiplicity && v.message.contains("arc 4")));
    }

    #[test]
    fn duplicated_label_gives_one_violation_naming_it() {
        // arc 2 is written where arc 1 should be
        let code = parse_pd_code("X 2 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n").unwrap();
        let v = validate_pd(&code);
        let named: Vec<_> = v.iter().filter(|v| v.message.contains("arc 2 ")).collect();
        assert_eq!(named.len(), 1);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_pd("X 1 2 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_pd("X 1 2 a 4"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("Y 1 2 3 4"), Err(Error::Parse { .. })));
    }

    #[test]
    fn comments_and_name() {
        let d = parse_pd("# a trefoil\nname 3_1\nX 1 4 2 5 # first\nX 3 6 4 1\n\nX 5 2 6 3\n").unwrap();
        assert_eq!(d.name(), Some("3_1"));
        assert_eq!(d.to_pd_text(), format!("name 3_1\n{TREFOIL}"));
    }

    #[test]
    fn labels_are_normalized() {
        let d = parse_pd("X 0 3 1 4\nX 2 5 3 0\nX 4 1 5 2\n").unwrap();
        assert_eq!(d.to_pd_text(), TREFOIL);
    }

    #[test]
    fn unknot_has_one_circle_and_two_faces() {
        let u = parse_pd("").unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.resolve(&u.all_a()).unwrap().circle_count, 1);
        assert_eq!(u.faces().len(), 2);
        assert!(u.validate().is_empty());
        assert!(u.is_adequate());
    }

    #[test]
    fn mirror_is_an_involution_and_negates_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert!((0..3).all(|x| m.sign(x) == -d.sign(x)));
        assert_eq!(m.mirror(), d);
        assert!(m.validate().is_empty());
        assert_eq!(m.faces().len(), d.faces().len());
        assert_eq!(d.is_adequate(), m.is_adequate());
    }

    #[test]
    fn trefoil_faces_and_states() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.all_a().sigma(), 3);
        assert_eq!(d.all_b().sigma(), -3);
        assert!(d.is_adequate());
    }

    #[test]
    fn partial_state_is_an_error() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = State::new(vec![1, 1]).unwrap();
        assert_eq!(d.resolve(&s), Err(Error::PartialState { expected: 3, got: 2 }));
    }

    #[test]
    fn one_crossing_kink_is_not_adequate() {
        let d = parse_pd("X 1 2 2 1").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert!(!d.is_adequate());
        assert!(d.validate().is_empty());
    }

    #[test]
    fn hopf_link_orientation_from_numbering() {
        let d = parse_pd("X 4 1 3 2\nX 2 3 1 4").unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.sign(0), d.sign(1));
    }

    #[test]
    fn isomorphism_ignores_labels_and_order() {
        let d = parse_pd(TREFOIL).unwrap();
        let shuffled = parse_pd("X 3 6 4 1\nX 5 2 6 3\nX 1 4 2 5\n").unwrap();
        assert!(d.is_isomorphic(&shuffled));
        assert!(!d.is_isomorphic(&d.mirror()));
    }
}
