//! Continued fractions, rational tangles and blocks of rational tangles.
//!
//! A leaf `[a_1, ..., a_m]` is drawn as `m` twist boxes. Box 1 is the outermost
//! and is horizontal; boxes alternate horizontal and vertical inward. Its
//! fraction is `F = a_1 + 1/(a_2 + ... + 1/a_m)` and its slope is `1/F`.

use std::fmt;

use crate::bracket::{BlockShape, ShapeMode};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::net::{self, Net, Tag};

/// Nonempty list of nonzero integer denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    denominators: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(denominators: Vec<i64>) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::InvalidContinuedFraction("no denominators".into()));
        }
        if denominators.contains(&0) {
            return Err(Error::InvalidContinuedFraction("zero denominator".into()));
        }
        Ok(ContinuedFraction { denominators })
    }

    pub fn denominators(&self) -> &[i64] {
        &self.denominators
    }

    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    /// `F` as `(numerator, denominator)` with a positive denominator.
    pub fn fraction(&self) -> Result<(i64, i64)> {
        let mut it = self.denominators.iter().rev();
        let (mut p, mut q) = (*it.next().unwrap(), 1i64);
        for &a in it {
            if p == 0 {
                return Err(Error::SingularContinuedFraction);
            }
            (p, q) = (a * p + q, p);
        }
        if q < 0 {
            (p, q) = (-p, -q);
        }
        Ok((p, q))
    }

    /// Slope `(beta, alpha)` with `alpha > 0`, in lowest terms.
    pub fn slope(&self) -> Result<(i64, i64)> {
        let (p, q) = self.fraction()?;
        if p == 0 {
            return Err(Error::SingularContinuedFraction);
        }
        Ok((q * p.signum(), p.abs()))
    }

    pub fn negate(&self) -> ContinuedFraction {
        ContinuedFraction { denominators: self.denominators.iter().map(|a| -a).collect() }
    }

    /// `[.., a, 1]` to `[.., a + 1]` and `[.., a, -1]` to `[.., a - 1]`.
    pub fn collapse_last(&self) -> Result<ContinuedFraction> {
        let n = self.len();
        let last = self.denominators[n - 1];
        if n < 2 || last.abs() != 1 {
            return Err(Error::InvalidContinuedFraction("last entry must be +1 or -1 after another entry".into()));
        }
        let mut d = self.denominators[..n - 1].to_vec();
        d[n - 2] += last;
        ContinuedFraction::new(d)
    }

    /// Common sign of the entries, if any.
    pub fn sign(&self) -> Option<i8> {
        if self.denominators.iter().all(|&a| a > 0) {
            Some(1)
        } else if self.denominators.iter().all(|&a| a < 0) {
            Some(-1)
        } else {
            None
        }
    }

    /// Positive denominators of `F = p / q` for `p, q >= 1`.
    pub fn from_fraction(p: i64, q: i64) -> Result<ContinuedFraction> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidArgument(format!("fraction {p}/{q} must be positive")));
        }
        let (mut p, mut q) = (p, q);
        let mut out = Vec::new();
        while q != 0 {
            out.push(p / q);
            (p, q) = (q, p % q);
        }
        if out[0] == 0 {
            return Err(Error::InvalidArgument("fraction below 1 has no positive expansion".into()));
        }
        ContinuedFraction::new(out)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.denominators.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Sum and product expression over rational tangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangleBlock {
    Leaf(ContinuedFraction),
    Sum(Vec<TangleBlock>),
    Product(Vec<TangleBlock>),
}

impl TangleBlock {
    pub fn leaf(denominators: Vec<i64>) -> Result<TangleBlock> {
        Ok(TangleBlock::Leaf(ContinuedFraction::new(denominators)?))
    }

    /// Parse the block grammar; whitespace is ignored.
    pub fn parse(text: &str) -> Result<TangleBlock> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let b = parse_block(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Grammar(format!("unexpected {:?} at position {pos}", chars[pos])));
        }
        Ok(b)
    }

    pub fn leaves(&self) -> Vec<&ContinuedFraction> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a ContinuedFraction>) {
        match self {
            TangleBlock::Leaf(cf) => out.push(cf),
            TangleBlock::Sum(ch) | TangleBlock::Product(ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Every denominator carries `sign`.
    pub fn extends(&self, sign: i8) -> bool {
        self.leaves().iter().all(|cf| cf.sign() == Some(sign.signum()))
    }

    /// Every leaf negated.
    pub fn negate(&self) -> TangleBlock {
        match self {
            TangleBlock::Leaf(cf) => TangleBlock::Leaf(cf.negate()),
            TangleBlock::Sum(ch) => TangleBlock::Sum(ch.iter().map(|c| c.negate()).collect()),
            TangleBlock::Product(ch) => TangleBlock::Product(ch.iter().map(|c| c.negate()).collect()),
        }
    }

    /// Number of crossings of the rendered block.
    pub fn crossing_count(&self) -> usize {
        self.leaves().iter().flat_map(|cf| cf.denominators()).map(|a| a.unsigned_abs() as usize).sum()
    }

    pub(crate) fn net(&self) -> Net {
        let mut next_leaf = 0;
        self.net_from(&mut next_leaf)
    }

    fn net_from(&self, next_leaf: &mut usize) -> Net {
        match self {
            TangleBlock::Leaf(cf) => {
                let leaf = *next_leaf;
                *next_leaf += 1;
                render_leaf(cf, leaf)
            }
            TangleBlock::Sum(ch) => fold(ch, next_leaf, Net::sum),
            TangleBlock::Product(ch) => fold(ch, next_leaf, Net::product),
        }
    }

    /// Parameters for the extreme-power prediction, with absolute values.
    pub fn shape(&self) -> Result<BlockShape> {
        let unsupported = || Error::UnsupportedShape(self.to_string());
        if self.leaves().iter().any(|cf| cf.sign().is_none()) || !(self.extends(1) || self.extends(-1)) {
            return Err(Error::InvalidArgument(format!("block {self} mixes signs")));
        }
        let abs = |cf: &ContinuedFraction| cf.denominators().iter().map(|a| a.abs()).collect::<Vec<_>>();
        let flat = self.flattened();
        let (mode, children) = match &flat {
            TangleBlock::Leaf(cf) => return BlockShape::single(abs(cf)),
            TangleBlock::Product(ch) => (ShapeMode::ProductOfSums, ch),
            TangleBlock::Sum(ch) => (ShapeMode::SumOfProducts, ch),
        };
        let mut cf = Vec::new();
        for child in children {
            let row = match (child, mode) {
                (TangleBlock::Leaf(c), _) => vec![abs(c)],
                (TangleBlock::Sum(g), ShapeMode::ProductOfSums) | (TangleBlock::Product(g), ShapeMode::SumOfProducts) => {
                    let mut row = Vec::new();
                    for leaf in g {
                        match leaf {
                            TangleBlock::Leaf(c) => row.push(abs(c)),
                            _ => return Err(unsupported()),
                        }
                    }
                    row
                }
                _ => return Err(unsupported()),
            };
            cf.push(row);
        }
        BlockShape::new(mode, cf)
    }

    /// Nested nodes of the same kind merged, single children lifted.
    pub fn flattened(&self) -> TangleBlock {
        match self {
            TangleBlock::Leaf(_) => self.clone(),
            TangleBlock::Sum(ch) | TangleBlock::Product(ch) => {
                let is_sum = matches!(self, TangleBlock::Sum(_));
                let mut out = Vec::new();
                for c in ch {
                    match c.flattened() {
                        TangleBlock::Sum(g) if is_sum => out.extend(g),
                        TangleBlock::Product(g) if !is_sum => out.extend(g),
                        other => out.push(other),
                    }
                }
                if out.len() == 1 {
                    out.pop().unwrap()
                } else if is_sum {
                    TangleBlock::Sum(out)
                } else {
                    TangleBlock::Product(out)
                }
            }
        }
    }
}

fn fold(children: &[TangleBlock], next_leaf: &mut usize, op: fn(&Net, &Net) -> Net) -> Net {
    let mut acc = children[0].net_from(next_leaf);
    for c in &children[1..] {
        acc = op(&acc, &c.net_from(next_leaf));
    }
    acc
}

/// Twist boxes from the innermost outward: odd boxes are horizontal (tangle
/// sums of crossings), even boxes vertical (products).
fn render_leaf(cf: &ContinuedFraction, leaf: usize) -> Net {
    let mut acc: Option<Net> = None;
    for (i, &a) in cf.denominators().iter().enumerate().rev() {
        let box_index = i + 1;
        let horizontal = box_index % 2 == 1;
        let x = Net::crossing(net::frame(a.signum() as i8), Tag::Block { leaf, box_index });
        let op: fn(&Net, &Net) -> Net = if horizontal { Net::sum } else { Net::product };
        let mut twist = x.clone();
        for _ in 1..a.unsigned_abs() {
            twist = op(&twist, &x);
        }
        acc = Some(match acc {
            None => twist,
            Some(inner) => op(&inner, &twist),
        });
    }
    acc.expect("nonempty continued fraction")
}

fn parse_int(chars: &[char], pos: &mut usize) -> Result<i64> {
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse().map_err(|_| Error::Grammar(format!("expected an integer at position {start}")))
}

fn expect(chars: &[char], pos: &mut usize, c: char) -> Result<()> {
    if chars.get(*pos) == Some(&c) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Grammar(format!("expected {c:?} at position {}", *pos)))
    }
}

fn parse_block(chars: &[char], pos: &mut usize) -> Result<TangleBlock> {
    match chars.get(*pos) {
        Some('[') => {
            *pos += 1;
            let mut d = vec![parse_int(chars, pos)?];
            while chars.get(*pos) == Some(&',') {
                *pos += 1;
                d.push(parse_int(chars, pos)?);
            }
            expect(chars, pos, ']')?;
            ContinuedFraction::new(d).map(TangleBlock::Leaf).map_err(|e| Error::Grammar(e.to_string()))
        }
        Some(&op @ ('S' | 'P')) => {
            *pos += 1;
            expect(chars, pos, '(')?;
            let mut ch = vec![parse_block(chars, pos)?];
            while chars.get(*pos) == Some(&',') {
                *pos += 1;
                ch.push(parse_block(chars, pos)?);
            }
            expect(chars, pos, ')')?;
            Ok(if op == 'S' { TangleBlock::Sum(ch) } else { TangleBlock::Product(ch) })
        }
        Some(c) => Err(Error::Grammar(format!("unexpected {c:?} at position {}", *pos))),
        None => Err(Error::Grammar("unexpected end of input".into())),
    }
}

impl fmt::Display for TangleBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleBlock::Leaf(cf) => write!(f, "{cf}"),
            TangleBlock::Sum(ch) | TangleBlock::Product(ch) => {
                f.write_str(if matches!(self, TangleBlock::Sum(_)) { "S(" } else { "P(" })?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl std::str::FromStr for TangleBlock {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TangleBlock::parse(s)
    }
}

/// A block template with a single `?` standing for an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPattern {
    text: String,
}

impl BlockPattern {
    pub fn parse(text: &str) -> Result<BlockPattern> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.matches('?').count() != 1 {
            return Err(Error::Grammar("pattern needs exactly one '?'".into()));
        }
        // the template must parse once the hole is filled
        TangleBlock::parse(&text.replace('?', "1"))?;
        Ok(BlockPattern { text })
    }

    pub fn instantiate(&self, k: i64) -> Result<TangleBlock> {
        TangleBlock::parse(&self.text.replace('?', &k.to_string()))
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// A rendered block with four free ends NW, NE, SW, SE.
#[derive(Clone, Debug)]
pub struct OpenTangle {
    net: Net,
}

impl OpenTangle {
    pub fn crossing_count(&self) -> usize {
        self.net.crossing_count()
    }

    /// Box of each crossing, in rendering order.
    pub fn tags(&self) -> &[Tag] {
        &self.net.tags
    }

    /// NW joined to NE and SW to SE.
    pub fn numerator_closure(&self) -> Diagram {
        self.net.numerator().into_diagram(&[], 0).diagram
    }

    /// NW joined to SW and NE to SE.
    pub fn denominator_closure(&self) -> Diagram {
        self.net.denominator().into_diagram(&[], 0).diagram
    }
}

pub fn render(b: &TangleBlock) -> OpenTangle {
    OpenTangle { net: b.net() }
}

pub fn slope(cf: &ContinuedFraction) -> Result<(i64, i64)> {
    cf.slope()
}

pub fn extends(b: &TangleBlock, sign_c: i8) -> bool {
    b.extends(sign_c)
}

pub fn block_crossing_count(b: &TangleBlock) -> usize {
    b.crossing_count()
}

pub fn block_shape(b: &TangleBlock) -> Result<BlockShape> {
    b.shape()
}

/// Whether replacing crossing `c` of `d` by `b` admits an orientation in
/// which every block crossing has the type of `c` and every original arc
/// keeps its direction.
pub fn orientation_extends(d: &Diagram, c: usize, b: &TangleBlock) -> bool {
    crate::twist::oriented_surgery(d, c, b).is_ok()
}
