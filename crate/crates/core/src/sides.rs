//! The two boundary windows of the framed graph and the catalog of ways an
//! admissible subgraph can intersect one of them.
//!
//! A side consists of the 4k+1 edges incident to the k outermost columns:
//! on the left these are the stubs L_0..L_k, the ring edges v_i v_{i+1},
//! the spokes v_i w_i and the chords w_i w_{i+k} for i < k. Every vertex of
//! the window proper (v_i, w_i with i < k) has all three of its framed-graph
//! edges inside the side, so admissibility pins its degree to exactly 2;
//! the far endpoints v_k, w_k..w_{2k−1} touch the side through one edge
//! each and carry no constraint. Within one side the edges form a forest,
//! so the intersection patterns are exactly the 2-of-3 degree choices.
//!
//! Bit layout of a pattern mask (identical for both sides; the right side
//! is read in its own local coordinates and converted through
//! [`mirror_mask`]): bits 0..=k are the stubs, bits k+1..=2k the ring
//! edges, bits 2k+1..=3k the spokes, bits 3k+1..=4k the chords, each block
//! indexed by column 0..k−1 from the cut inward.

use crate::graph::Dsu;

pub const fn stub_bit(j: usize) -> u32 {
    1 << j
}

pub const fn ring_bit(k: usize, i: usize) -> u32 {
    1 << (k + 1 + i)
}

pub const fn spoke_bit(k: usize, i: usize) -> u32 {
    1 << (2 * k + 1 + i)
}

pub const fn chord_bit(k: usize, i: usize) -> u32 {
    1 << (3 * k + 1 + i)
}

pub const fn num_side_edges(k: usize) -> usize {
    4 * k + 1
}

/// One way an admissible subgraph can meet a side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideIntersection {
    /// Which of the 4k+1 side edges are present (layout above).
    pub edges: u32,
    /// The stubs of degree 1, as a sub-mask of bits 0..=k. These are the
    /// pattern's loose ends.
    pub loose_ends: u32,
    /// Pairs of loose stubs already joined by a path inside the side, as
    /// (smaller, larger) stub indices. Any signature built on this pattern
    /// must contain these pairs.
    pub forced_pairs: Vec<(u8, u8)>,
    /// Attachment points (bit 0 = v_k, bit 1+i = w_{k+i}) whose single side
    /// edge is present; these are where the pattern continues inward.
    pub open_ends: u32,
}

impl SideIntersection {
    pub fn stub_present(&self, j: usize) -> bool {
        self.edges & stub_bit(j) != 0
    }

    pub fn loose_count(&self) -> u32 {
        self.loose_ends.count_ones()
    }
}

/// Stub index correspondence under the left↔right reflection
/// v_i ↦ v_{n−1−i}, w_i ↦ w_{n−1−i}: the ring stubs match up (L_0 ↔ R_0)
/// and the chord stubs reverse (L_j ↔ R_{k+1−j}).
pub fn mirror_stub(k: usize, j: usize) -> usize {
    debug_assert!(j <= k);
    if j == 0 {
        0
    } else {
        k + 1 - j
    }
}

/// Rewrites a pattern mask between right-local and left-canonical
/// coordinates (an involution): stub j ↦ mirror_stub(j), and the ring,
/// spoke and chord blocks each reverse their column index i ↦ k−1−i.
pub fn mirror_mask(k: usize, mask: u32) -> u32 {
    let mut out = 0;
    for j in 0..=k {
        if mask & stub_bit(j) != 0 {
            out |= stub_bit(mirror_stub(k, j));
        }
    }
    for i in 0..k {
        if mask & ring_bit(k, i) != 0 {
            out |= ring_bit(k, k - 1 - i);
        }
        if mask & spoke_bit(k, i) != 0 {
            out |= spoke_bit(k, k - 1 - i);
        }
        if mask & chord_bit(k, i) != 0 {
            out |= chord_bit(k, k - 1 - i);
        }
    }
    out
}

/// Incident side-edge masks of the 2k window vertices, left semantics:
/// first v_0..v_{k−1}, then w_0..w_{k−1}.
fn left_window_incidence(k: usize) -> Vec<u32> {
    let mut inc = Vec::with_capacity(2 * k);
    for i in 0..k {
        let mut m = spoke_bit(k, i) | ring_bit(k, i);
        if i == 0 {
            m |= stub_bit(0);
        } else {
            m |= ring_bit(k, i - 1);
        }
        inc.push(m);
    }
    for i in 0..k {
        inc.push(stub_bit(i + 1) | spoke_bit(k, i) | chord_bit(k, i));
    }
    inc
}

/// Same for the right window in its local coordinates (v_{n−k+j} ↦ slot j):
/// ring slot j is the edge v_{n−k−1+j} v_{n−k+j}, so local vertex j touches
/// ring slots j and j+1, and the ring stub R_0 sits at j = k−1.
fn right_window_incidence(k: usize) -> Vec<u32> {
    let mut inc = Vec::with_capacity(2 * k);
    for j in 0..k {
        let mut m = spoke_bit(k, j) | ring_bit(k, j);
        if j == k - 1 {
            m |= stub_bit(0);
        } else {
            m |= ring_bit(k, j + 1);
        }
        inc.push(m);
    }
    for j in 0..k {
        inc.push(stub_bit(j + 1) | spoke_bit(k, j) | chord_bit(k, j));
    }
    inc
}

fn window_valid(mask: u32, incidence: &[u32]) -> bool {
    incidence.iter().all(|&m| (mask & m).count_ones() == 2)
}

/// All intersection patterns for one side, sorted by edge mask. The index
/// into this vector is the pattern's catalog id.
pub fn enumerate_side_intersections(k: usize) -> Vec<SideIntersection> {
    assert!(k >= 1 && num_side_edges(k) <= 31, "side mask must fit in u32");
    let incidence = left_window_incidence(k);
    let mut out = Vec::new();
    for mask in 0u32..1 << num_side_edges(k) {
        if window_valid(mask, &incidence) {
            out.push(build_entry(k, mask));
        }
    }
    out
}

/// Connectivity bookkeeping for one accepted mask. Side vertices are
/// numbered: window v_i = i, window w_i = k+i, attachment v_k = 2k,
/// attachment w_{k+i} = 2k+1+i, stub L_j = 3k+1+j.
fn build_entry(k: usize, mask: u32) -> SideIntersection {
    let n_verts = 4 * k + 2;
    let vv = |i: usize| i;
    let ww = |i: usize| k + i;
    let attach_v = 2 * k;
    let attach_w = |i: usize| 2 * k + 1 + i;
    let stub_v = |j: usize| 3 * k + 1 + j;

    let mut dsu = Dsu::new(n_verts);
    let join = |dsu: &mut Dsu, a: usize, b: usize| {
        if dsu.find(a) != dsu.find(b) {
            dsu.union(a, b);
        } else {
            unreachable!("side edges form a forest");
        }
    };
    let mut open_ends = 0u32;
    for j in 0..=k {
        if mask & stub_bit(j) != 0 {
            let host = if j == 0 { vv(0) } else { ww(j - 1) };
            join(&mut dsu, stub_v(j), host);
        }
    }
    for i in 0..k {
        if mask & ring_bit(k, i) != 0 {
            let far = if i + 1 == k { attach_v } else { vv(i + 1) };
            join(&mut dsu, vv(i), far);
            if i + 1 == k {
                open_ends |= 1;
            }
        }
        if mask & spoke_bit(k, i) != 0 {
            join(&mut dsu, vv(i), ww(i));
        }
        if mask & chord_bit(k, i) != 0 {
            join(&mut dsu, ww(i), attach_w(i));
            open_ends |= 1 << (1 + i);
        }
    }

    let loose_ends = mask & ((1 << (k + 1)) - 1);
    let mut forced_pairs = Vec::new();
    for a in 0..=k {
        if loose_ends & stub_bit(a) == 0 {
            continue;
        }
        for b in a + 1..=k {
            if loose_ends & stub_bit(b) != 0 && dsu.find(stub_v(a)) == dsu.find(stub_v(b)) {
                forced_pairs.push((a as u8, b as u8));
            }
        }
    }

    SideIntersection {
        edges: mask,
        loose_ends,
        forced_pairs,
        open_ends,
    }
}

/// Right-local masks that satisfy the right window's degree constraints;
/// used by tests and by the transfer step's successor check.
pub(crate) fn right_window_valid(k: usize, mask: u32) -> bool {
    window_valid(mask, &right_window_incidence(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn catalog_sizes() {
        assert_eq!(enumerate_side_intersections(1).len(), 5);
        assert_eq!(enumerate_side_intersections(3).len(), 33);
        assert_eq!(enumerate_side_intersections(4).len(), 85);
        assert_eq!(enumerate_side_intersections(5).len(), 217);
    }

    #[test]
    fn k1_catalog_by_hand() {
        // Window = {v_0, w_0}. v_0 picks 2 of {L_0, ring, spoke}, w_0 picks
        // 2 of {L_1, spoke, chord}; the spoke is shared, giving 5 patterns.
        let cat = enumerate_side_intersections(1);
        assert_eq!(cat.len(), 5);
        let k = 1;
        let full_stubs = stub_bit(0) | stub_bit(1);
        // Pattern with both stubs: L_0-v_0-v_1 ring plus L_1-w_0-w_1 chord.
        let both = cat
            .iter()
            .find(|e| e.edges == (full_stubs | ring_bit(k, 0) | chord_bit(k, 0)))
            .expect("two loose ends on separate paths");
        assert_eq!(both.loose_ends, full_stubs);
        assert!(both.forced_pairs.is_empty());
        assert_eq!(both.open_ends, 0b11);
        // Pattern L_0-v_0-w_0-L_1: both stubs joined through the spoke.
        let forced = cat
            .iter()
            .find(|e| e.edges == (full_stubs | spoke_bit(k, 0)))
            .expect("stub-spoke-stub path");
        assert_eq!(forced.forced_pairs, vec![(0, 1)]);
        assert_eq!(forced.open_ends, 0);
    }

    #[test]
    fn exactly_one_closed_pattern() {
        for k in [1usize, 3, 4] {
            let cat = enumerate_side_intersections(k);
            let closed: Vec<_> = cat.iter().filter(|e| e.loose_ends == 0).collect();
            assert_eq!(closed.len(), 1, "k={k}");
            // All spokes and chords, rings on alternating columns 0, 2, ...
            let mut want = 0u32;
            for i in 0..k {
                want |= spoke_bit(k, i) | chord_bit(k, i);
                if i % 2 == 0 {
                    want |= ring_bit(k, i);
                }
            }
            assert_eq!(closed[0].edges, want, "k={k}");
        }
    }

    #[test]
    fn loose_and_forced_consistency() {
        let cat = enumerate_side_intersections(4);
        for e in &cat {
            assert_eq!(e.loose_ends, e.edges & 0b11111);
            let mut seen = 0u32;
            for &(a, b) in &e.forced_pairs {
                assert!(e.loose_ends & stub_bit(a as usize) != 0);
                assert!(e.loose_ends & stub_bit(b as usize) != 0);
                assert!(a < b);
                for s in [a, b] {
                    assert_eq!(seen & stub_bit(s as usize), 0, "stub in two pairs");
                    seen |= stub_bit(s as usize);
                }
            }
        }
    }

    #[test]
    fn mirror_stub_is_involution() {
        assert_eq!(
            (0..=3).map(|j| mirror_stub(3, j)).collect::<Vec<_>>(),
            vec![0, 3, 2, 1]
        );
        for k in 1..=5 {
            for j in 0..=k {
                assert_eq!(mirror_stub(k, mirror_stub(k, j)), j);
            }
        }
    }

    #[test]
    fn mirror_mask_bijects_sides() {
        for k in [1usize, 3, 4] {
            let left: BTreeSet<u32> = enumerate_side_intersections(k)
                .iter()
                .map(|e| e.edges)
                .collect();
            let mut right = BTreeSet::new();
            for mask in 0u32..1 << num_side_edges(k) {
                if right_window_valid(k, mask) {
                    assert_eq!(mirror_mask(k, mirror_mask(k, mask)), mask);
                    right.insert(mirror_mask(k, mask));
                }
            }
            // The reflection maps right-valid patterns exactly onto the
            // left catalog.
            assert_eq!(left, right, "k={k}");
        }
    }
}
