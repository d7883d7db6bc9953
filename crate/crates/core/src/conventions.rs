//! Local crossing conventions shared by every module.
//!
//! A crossing is stored as four arc labels in counterclockwise order, slot 0
//! being the incoming under-strand. The under-strand runs slot 0 -> slot 2; the
//! over-strand enters at slot 3 (positive writhe) or slot 1 (negative writhe).
//! Corner `k` is the region between slot `k` and slot `k + 1`.
//!
//! Every figure-dependent choice lives here so that a different reading of
//! the pictures is a change to this file only.

/// Slot pairs joined by the A-smoothing.
pub const A_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
/// Slot pairs joined by the B-smoothing.
pub const B_PAIRS: [(usize, usize); 2] = [(1, 2), (3, 0)];

/// Corners merged by the A-smoothing.
pub const A_CORNERS: [usize; 2] = [1, 3];
/// Corners merged by the B-smoothing.
pub const B_CORNERS: [usize; 2] = [0, 2];

/// Slot pairs joined by a smoothing given as +1 (A) or -1 (B).
pub fn smoothing_pairs(value: i8) -> [(usize, usize); 2] {
    if value > 0 {
        A_PAIRS
    } else {
        B_PAIRS
    }
}

/// Writhe sign from the slot at which the over-strand enters.
pub fn writhe_from_over_in(over_in: u8) -> i8 {
    match over_in {
        3 => 1,
        1 => -1,
        _ => unreachable!("over-strand enters at slot 1 or 3"),
    }
}

/// Seifert type I is a positive crossing, type II a negative one.
pub fn seifert_sign(writhe: i8) -> i8 {
    writhe
}

/// The smoothing value (A = +1, B = -1) that agrees with the orientation.
pub fn seifert_smoothing(writhe: i8) -> i8 {
    writhe
}

/// Tait edge sign given which corners of the crossing are shaded.
///
/// Positive when the shaded corners are the B-corners, so that the
/// A-smoothing at a positive edge deletes it and the B-smoothing contracts it.
pub fn tait_sign(shaded_corner: usize) -> i8 {
    if B_CORNERS.contains(&shaded_corner) {
        1
    } else {
        -1
    }
}

/// One row of the enhanced checkerboard table: the corner between the two
/// incoming strands, the corner between the two outgoing strands, and the
/// edge sign, keyed by writhe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiRow {
    pub writhe: i8,
    pub tail_corner: usize,
    pub head_corner: usize,
    pub sign: i8,
}

/// Enhanced checkerboard digraph table. The edge joins the two regions merged
/// by Seifert smoothing, pointing from the incoming corner to the outgoing one.
pub const PHI_TABLE: [PhiRow; 2] = [
    PhiRow { writhe: 1, tail_corner: 3, head_corner: 1, sign: 1 },
    PhiRow { writhe: -1, tail_corner: 0, head_corner: 2, sign: -1 },
];

pub fn phi_row(writhe: i8) -> PhiRow {
    if writhe > 0 {
        PHI_TABLE[0]
    } else {
        PHI_TABLE[1]
    }
}

/// Corner index that a face walk arriving at `slot` occupies.
pub fn corner_after_arrival(slot: usize) -> usize {
    (slot + 3) % 4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_and_b_pairs_cover_every_slot_once() {
        for pairs in [A_PAIRS, B_PAIRS] {
            let mut seen = [0; 4];
            for (a, b) in pairs {
                seen[a] += 1;
                seen[b] += 1;
            }
            assert_eq!(seen, [1, 1, 1, 1]);
        }
    }

    #[test]
    fn phi_corners_sit_between_in_and_out_strands() {
        // positive: in = {0, 3}, out = {1, 2}
        let p = phi_row(1);
        assert_eq!((p.tail_corner, p.head_corner), (3, 1));
        // negative: in = {0, 1}, out = {2, 3}
        let n = phi_row(-1);
        assert_eq!((n.tail_corner, n.head_corner), (0, 2));
        // Seifert smoothing merges exactly these corners
        assert!(A_CORNERS.contains(&p.tail_corner) && A_CORNERS.contains(&p.head_corner));
        assert!(B_CORNERS.contains(&n.tail_corner) && B_CORNERS.contains(&n.head_corner));
    }
}
