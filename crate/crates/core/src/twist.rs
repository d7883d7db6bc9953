//! Replacing a crossing by a block of rational tangles, families of twisted
//! diagrams, and pretzel and Montesinos diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Port};
use crate::error::{Error, Result};
use crate::net::{self, original_anchors, Net, Oriented, Tag};
use crate::tangle::{BlockPattern, ContinuedFraction, TangleBlock};

/// Orientation choices tried for crossingless-free components of a block.
const MAX_FREE_COMPONENTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    /// Crossing index (0-based).
    pub crossing: usize,
    pub block: TangleBlock,
    /// Require an orientation that extends the crossing's type.
    pub oriented: bool,
}

/// Crossing `c` of `d` replaced by `block` drawn in the frame of `frame_sign`.
/// Block crossings take the place of `c` in the crossing order.
fn surgery(d: &Diagram, c: usize, block: &TangleBlock, frame_sign: i8) -> (Net, Vec<(usize, usize, bool)>) {
    let place = net::frame(frame_sign);
    let comp = if frame_sign == d.sign(c) { Net::complement(d, c) } else { complement_in_frame(d, c, place) };
    let t = block.net();
    let nb = comp.crossing_count();
    let glued = comp.concat(&t).glue(&[(0, 4), (1, 5), (2, 6), (3, 7)], &[]);
    let order: Vec<usize> = (0..c).chain(nb..nb + t.crossing_count()).chain(c..nb).collect();
    let closed = glued.reorder(&order);
    let mut anchors = original_anchors(d, &closed);
    for (k, &p) in place.iter().enumerate() {
        if let net::End::Slot(x, s) = t.boundary_end(p) {
            anchors.push((c + x, s, d.is_entering(Port::new(c, k))));
        }
    }
    (closed, anchors)
}

/// Like [`Net::complement`], with `c`'s slots placed by an explicit frame.
fn complement_in_frame(d: &Diagram, c: usize, place: [usize; 4]) -> Net {
    // Relabel through the mirror-free route: build the complement in the
    // writhe frame, then permute its four free ends.
    let natural = net::frame(d.sign(c));
    let comp = Net::complement(d, c);
    let mut keep = [0usize; 4];
    for k in 0..4 {
        keep[place[k]] = natural[k];
    }
    comp.glue(&[], &keep)
}

fn check_crossing(d: &Diagram, c: usize) -> Result<()> {
    if c >= d.crossing_count() {
        Err(Error::UnknownCrossing(c + 1))
    } else {
        Ok(())
    }
}

/// Surgery keeping the original orientation where possible.
fn unoriented_surgery(d: &Diagram, c: usize, block: &TangleBlock, frame_sign: i8) -> Oriented {
    let (closed, anchors) = surgery(d, c, block, frame_sign);
    closed.into_diagram(&anchors, 0)
}

/// The twisted diagram under an orientation in which every original arc keeps
/// its direction and every block crossing has the sign of `c`.
pub(crate) fn oriented_surgery(d: &Diagram, c: usize, block: &TangleBlock) -> Result<Diagram> {
    check_crossing(d, c)?;
    let sign = d.sign(c);
    if !block.extends(sign) {
        return Err(Error::NotExtending { crossing: c + 1, sign });
    }
    let (closed, anchors) = surgery(d, c, block, sign);
    let first = closed.into_diagram(&anchors, 0);
    if !first.preserved {
        return Err(Error::NoOrientationExtends(format!("{block} reverses an arc of crossing {}", c + 1)));
    }
    let free = first.free_components.min(MAX_FREE_COMPONENTS);
    let block_range = c..c + block.crossing_count();
    for choice in 0..1u64 << free {
        let out = if choice == 0 { first.clone() } else { closed.into_diagram(&anchors, choice) };
        if block_range.clone().all(|x| out.diagram.sign(x) == sign) {
            return Ok(out.diagram);
        }
    }
    Err(Error::NoOrientationExtends(format!("{block} has a crossing of the wrong type at crossing {}", c + 1)))
}

/// `D*`: crossing `spec.crossing` replaced by `spec.block`.
pub fn replace_crossing(d: &Diagram, spec: &TwistSpec) -> Result<Diagram> {
    let c = spec.crossing;
    check_crossing(d, c)?;
    if spec.oriented {
        return oriented_surgery(d, c, &spec.block);
    }
    let sign = d.sign(c);
    if !spec.block.extends(sign) {
        return Err(Error::NotExtending { crossing: c + 1, sign });
    }
    Ok(unoriented_surgery(d, c, &spec.block, sign).diagram)
}

/// Lazily twist crossing `c` by the pattern instantiated at each `k`.
pub fn generate_family<'a>(
    d: &'a Diagram,
    crossing: usize,
    pattern: &'a BlockPattern,
    range: std::ops::RangeInclusive<i64>,
    oriented: bool,
) -> impl Iterator<Item = Result<(i64, TangleBlock, Diagram)>> + 'a {
    range.map(move |k| {
        let block = pattern.instantiate(k)?;
        let spec = TwistSpec { crossing, block: block.clone(), oriented };
        replace_crossing(d, &spec).map(|out| (k, block, out))
    })
}

fn pretzel_net(p: &[i64]) -> Net {
    let columns: Vec<Net> = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| {
            let x = Net::crossing(net::frame(pi.signum() as i8), Tag::Block { leaf: i, box_index: 1 });
            let mut col = x.clone();
            for _ in 1..pi.unsigned_abs() {
                col = col.product(&x);
            }
            col
        })
        .collect();
    let mut row = columns[0].clone();
    for col in &columns[1..] {
        row = row.sum(col);
    }
    row.numerator()
}

fn pretzel_name(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("P({})", parts.join(","))
}

/// Pretzel diagram: vertical twist columns of `|p_i|` crossings side by side,
/// closed at the top and bottom. Orientations of the components are chosen so
/// that as many crossings as possible have the sign of their column.
pub fn pretzel(p: &[i64]) -> Result<Diagram> {
    if p.len() < 2 {
        return Err(Error::InvalidArgument("a pretzel needs at least 2 strands".into()));
    }
    if p.contains(&0) {
        return Err(Error::InvalidArgument("pretzel entries must be nonzero".into()));
    }
    let closed = pretzel_net(p);
    let column_sign: Vec<i8> = closed
        .tags
        .iter()
        .map(|t| match *t {
            Tag::Block { leaf, .. } => p[leaf].signum() as i8,
            Tag::Original(_) => unreachable!(),
        })
        .collect();
    let first = closed.into_diagram(&[], 0);
    let free = first.free_components.min(MAX_FREE_COMPONENTS);
    let score = |d: &Diagram| (0..d.crossing_count()).filter(|&x| d.sign(x) == column_sign[x]).count();
    let mut best = first.diagram;
    for choice in 1..1u64 << free {
        let d = closed.into_diagram(&[], choice).diagram;
        if score(&d) > score(&best) {
            best = d;
        }
    }
    Ok(best.with_name(pretzel_name(p)))
}

/// Block `R` with `1/F(R) = alpha/beta - 1`, so that `R` stacked on one
/// crossing has `1/F = alpha/beta`.
fn column_block(alpha: i64, beta: i64) -> Result<TangleBlock> {
    if alpha <= beta || beta < 1 || num_integer::gcd(alpha, beta) != 1 {
        return Err(Error::InvalidArgument(format!("fraction ({alpha},{beta}) needs 0 < beta < alpha, coprime")));
    }
    // 1/F(R) = k + 1/F(leaf) with F(leaf) >= 1
    let (num, den) = (alpha - beta, beta);
    let (k, rem) = (num / den, num % den);
    let (k, leaf) = if rem == 0 {
        (k - 1, ContinuedFraction::new(vec![1])?)
    } else {
        (k, ContinuedFraction::from_fraction(den, rem)?)
    };
    let mut parts: Vec<TangleBlock> = (0..k).map(|_| TangleBlock::leaf(vec![1]).unwrap()).collect();
    parts.push(TangleBlock::Leaf(leaf));
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { TangleBlock::Product(parts) })
}

/// Montesinos diagram from `pretzel(2, .., 2, -2, .., -2)` by replacing the
/// top crossing of each column with the rational tangle that turns the column
/// into the tangle of the given fraction. Positive pairs are `(alpha, beta)`
/// with `0 < beta < alpha`; negative pairs `(gamma, delta)` with
/// `|delta| < |gamma|` and `gamma / delta < 0`.
pub fn montesinos(pos: &[(i64, i64)], neg: &[(i64, i64)]) -> Result<Diagram> {
    if pos.len() < 2 || neg.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 positive and 2 negative fractions".into()));
    }
    let mut blocks = Vec::new();
    for &(a, b) in pos {
        if a <= 1 {
            return Err(Error::InvalidArgument(format!("({a},{b}): alpha must exceed 1")));
        }
        blocks.push(column_block(a, b)?);
    }
    for &(g, dl) in neg {
        if g.abs() <= 1 || g.signum() * dl.signum() >= 0 {
            return Err(Error::InvalidArgument(format!("({g},{dl}): need |gamma| > 1 and gamma/delta < 0")));
        }
        blocks.push(column_block(g.abs(), dl.abs())?.negate());
    }
    let p: Vec<i64> = pos.iter().map(|_| 2).chain(neg.iter().map(|_| -2)).collect();
    let mut d = pretzel(&p)?;
    // Columns are consecutive pairs of crossings; twist from the right so
    // earlier indices stay put.
    for (i, block) in blocks.iter().enumerate().rev() {
        let top = 2 * i;
        let frame_sign = p[i].signum() as i8;
        d = unoriented_surgery(&d, top, block, frame_sign).diagram;
    }
    let pos_s: Vec<String> = pos.iter().map(|(a, b)| format!("{b}/{a}")).collect();
    let neg_s: Vec<String> = neg.iter().map(|(a, b)| format!("{b}/{a}")).collect();
    Ok(d.with_name(format!("M({};{})", pos_s.join(","), neg_s.join(","))))
}

/// Random positive composition of `total` into `parts` parts.
fn composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = Vec::new();
    while cuts.len() < parts - 1 {
        let c = rng.gen_range(1..total);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// A deterministic two-level block whose denominators all carry `sign`.
pub fn random_extending_block(seed: u64, sign: i8, max_crossings: usize) -> TangleBlock {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_crossings = max_crossings.max(1);
    let total = rng.gen_range(1..=max_crossings);
    let leaf_count = rng.gen_range(1..=total.min(4));
    let s = sign.signum() as i64;
    let leaves: Vec<TangleBlock> = composition(&mut rng, total, leaf_count)
        .into_iter()
        .map(|size| {
            let m = rng.gen_range(1..=size.min(3));
            let d = composition(&mut rng, size, m).into_iter().map(|a| a as i64 * s).collect();
            TangleBlock::leaf(d).expect("nonzero entries")
        })
        .collect();
    let groups = rng.gen_range(1..=leaf_count);
    let sizes = composition(&mut rng, leaf_count, groups);
    let product_of_sums = rng.gen_bool(0.5);
    let mut it = leaves.into_iter();
    let mut outer = Vec::new();
    for size in sizes {
        let mut g: Vec<TangleBlock> = it.by_ref().take(size).collect();
        outer.push(if g.len() == 1 {
            g.pop().unwrap()
        } else if product_of_sums {
            TangleBlock::Sum(g)
        } else {
            TangleBlock::Product(g)
        });
    }
    if outer.len() == 1 {
        outer.pop().unwrap()
    } else if product_of_sums {
        TangleBlock::Product(outer)
    } else {
        TangleBlock::Sum(outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::ShapeMode;
    use crate::determinant::determinant;
    use crate::diagram::parse_pd;
    use crate::seifert::{is_homogeneous, is_positive};

    const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";

    fn spec(c: usize, b: &str, oriented: bool) -> TwistSpec {
        TwistSpec { crossing: c, block: TangleBlock::parse(b).unwrap(), oriented }
    }

    #[test]
    fn identity_law() {
        let d = parse_pd(TREFOIL).unwrap();
        for c in 0..3 {
            let out = replace_crossing(&d, &spec(c, "[-1]", false)).unwrap();
            assert!(out.is_isomorphic(&d));
            assert_eq!(out, d);
            let m = d.mirror();
            let out = replace_crossing(&m, &spec(c, "[1]", true)).unwrap();
            assert!(out.is_isomorphic(&m));
        }
    }

    #[test]
    fn crossing_count_law() {
        let d = parse_pd(TREFOIL).unwrap();
        let out = replace_crossing(&d, &spec(0, "[-3]", false)).unwrap();
        assert_eq!(out.crossing_count(), 5);
        assert!(out.validate().is_empty());
        assert!(out.is_adequate());
    }

    #[test]
    fn errors() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(replace_crossing(&d, &spec(0, "[3]", false)), Err(Error::NotExtending { crossing: 1, sign: -1 }));
        assert_eq!(replace_crossing(&d, &spec(7, "[-3]", false)), Err(Error::UnknownCrossing(8)));
        assert!(matches!(replace_crossing(&d, &spec(0, "[-2]", true)), Err(Error::NoOrientationExtends(_))));
    }

    #[test]
    fn oriented_odd_twist_keeps_positivity() {
        let d = parse_pd(TREFOIL).unwrap().mirror();
        assert!(is_positive(&d));
        let out = replace_crossing(&d, &spec(1, "[3]", true)).unwrap();
        assert!(is_positive(&out) && is_homogeneous(&out));
        assert!(!crate::tangle::orientation_extends(&d, 1, &TangleBlock::parse("[1,1,1]").unwrap()));
    }

    #[test]
    fn family_counts() {
        let d = parse_pd(TREFOIL).unwrap();
        let pat = BlockPattern::parse("[?]").unwrap();
        let counts: Vec<usize> =
            generate_family(&d, 0, &pat, -5..=-1, false).map(|r| r.unwrap().2.crossing_count()).collect();
        assert_eq!(counts, vec![7, 6, 5, 4, 3]);
    }

    #[test]
    fn pretzels() {
        let t = pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(determinant(&t), 3);
        let p = pretzel(&[2, 2, -2, -2]).unwrap();
        assert_eq!(p.crossing_count(), 8);
        assert_eq!(p.link_components(), 4);
        assert!(p.validate().is_empty());
        assert!(p.is_adequate());
        assert!((0..8).all(|x| p.sign(x) == if x < 4 { 1 } else { -1 }));
        assert!(pretzel(&[3]).is_err());
    }

    #[test]
    fn montesinos_reduces_to_pretzel() {
        let m = montesinos(&[(2, 1), (2, 1)], &[(-2, 1), (-2, 1)]).unwrap();
        assert_eq!(m, pretzel(&[2, 2, -2, -2]).unwrap().with_name(m.name().unwrap()));
    }

    #[test]
    fn montesinos_is_adequate() {
        let m = montesinos(&[(3, 1), (3, 2)], &[(-3, 1), (-3, 2)]).unwrap();
        assert!(m.validate().is_empty());
        assert!(m.is_adequate());
        assert!(montesinos(&[(3, 1)], &[(-3, 1), (-3, 2)]).is_err());
        assert!(montesinos(&[(3, 4), (3, 1)], &[(-3, 1), (-3, 2)]).is_err());
    }

    #[test]
    fn column_blocks_have_the_right_fraction() {
        for (a, b) in [(2, 1), (3, 1), (3, 2), (5, 2), (7, 3), (7, 5)] {
            let r = column_block(a, b).unwrap();
            // stacking R on one crossing gives a column whose closure has det alpha
            let col = r.net().product(&Net::crossing(net::frame(1), Tag::Original(0)));
            let d = col.denominator().into_diagram(&[], 0).diagram;
            assert_eq!(determinant(&d), a as u64, "({a},{b}) via {r}");
        }
    }

    #[test]
    fn random_blocks() {
        let a = random_extending_block(42, 1, 8);
        assert_eq!(a, random_extending_block(42, 1, 8));
        let mut modes = std::collections::HashSet::new();
        for seed in 0..1000 {
            let s = if seed % 2 == 0 { 1 } else { -1 };
            let b = random_extending_block(seed, s, 8);
            assert!(b.extends(s));
            assert!(b.crossing_count() <= 8);
            let shape = b.shape().unwrap();
            if shape.l > 1 {
                modes.insert(shape.mode);
            }
        }
        assert!(modes.contains(&ShapeMode::ProductOfSums) && modes.contains(&ShapeMode::SumOfProducts));
    }
}
