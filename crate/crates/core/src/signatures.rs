//! Signatures: the boundary data of an admissible subgraph, and the
//! catalog of all of them for a given k.
//!
//! A signature records the intersection pattern on each side plus the
//! pairing of loose stubs by connected components. Sides are stored as ids
//! into the side catalog; the right side's id is the left-canonical form of
//! its mirrored pattern, while the pairing speaks of actual stub labels
//! L_0..L_k, R_0..R_k. Loose ends are encoded as u8: L_j ↦ j,
//! R_j ↦ k+1+j.

use std::collections::HashMap;

use crate::sides::{
    enumerate_side_intersections, mirror_stub, stub_bit, SideIntersection,
};

pub const fn left_end(j: usize) -> u8 {
    j as u8
}

pub const fn right_end(k: usize, j: usize) -> u8 {
    (k + 1 + j) as u8
}

pub const fn end_is_right(k: usize, e: u8) -> bool {
    (e as usize) > k
}

/// The stub index of an end, with its side stripped.
pub const fn end_index(k: usize, e: u8) -> usize {
    if end_is_right(k, e) {
        e as usize - (k + 1)
    } else {
        e as usize
    }
}

/// The opposite-side end with the same stub index (L_j ↔ R_j); gluing the
/// two frames back together identifies these pairs.
pub const fn seam_partner(k: usize, e: u8) -> u8 {
    if end_is_right(k, e) {
        (e as usize - (k + 1)) as u8
    } else {
        (e as usize + k + 1) as u8
    }
}

/// Boundary data of an admissible subgraph: side patterns by catalog id,
/// plus the pairing of loose ends by components. Pairs are stored
/// (smaller, larger) in ascending order, so equal signatures compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub left: u32,
    pub right: u32,
    pub pairing: Vec<(u8, u8)>,
}

impl Signature {
    pub fn new(left: u32, right: u32, mut pairing: Vec<(u8, u8)>) -> Self {
        for p in pairing.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairing.sort_unstable();
        Signature { left, right, pairing }
    }

    /// Masks (over stub indices 0..=k) of the loose ends on each side.
    pub fn loose_masks(&self, k: usize) -> (u32, u32) {
        let mut left = 0;
        let mut right = 0;
        for &(a, b) in &self.pairing {
            for e in [a, b] {
                if end_is_right(k, e) {
                    right |= stub_bit(end_index(k, e));
                } else {
                    left |= stub_bit(end_index(k, e));
                }
            }
        }
        (left, right)
    }
}

/// Actual right-stub loose mask of a side pattern given by its
/// left-canonical catalog entry: R_r is loose exactly when the entry has
/// stub mirror_stub(r).
pub fn right_actual_loose(k: usize, entry_loose: u32) -> u32 {
    let mut m = 0;
    for j in 0..=k {
        if entry_loose & stub_bit(j) != 0 {
            m |= stub_bit(mirror_stub(k, j));
        }
    }
    m
}

/// Does the matching-union walk close into one cycle through every loose
/// end? Empty pairings pass: a subgraph with no loose ends is admissible
/// only when it is a single spanning cycle already.
pub fn is_hamiltonian_signature(k: usize, sig: &Signature) -> bool {
    hamiltonian_walk(k, sig, None)
}

/// Same test but starting the walk at `start` (used to check the verdict
/// is start-independent).
pub(crate) fn hamiltonian_walk(k: usize, sig: &Signature, start: Option<u8>) -> bool {
    if sig.pairing.is_empty() {
        return true;
    }
    let (left, right) = sig.loose_masks(k);
    if left != right {
        // Re-gluing moves between L_j and R_j; a loose end whose partner
        // across the seam is absent strands the walk.
        return false;
    }
    let mut partner = [u8::MAX; 32];
    for &(a, b) in &sig.pairing {
        partner[a as usize] = b;
        partner[b as usize] = a;
    }
    let total = 2 * sig.pairing.len();
    let start = start.unwrap_or(sig.pairing[0].0);
    debug_assert!(partner[start as usize] != u8::MAX);
    let mut cur = start;
    let mut visited = 0usize;
    loop {
        let along = partner[cur as usize];
        visited += 2;
        let glued = seam_partner(k, along);
        if glued == start {
            return visited == total;
        }
        cur = glued;
    }
}

/// The full signature domain for one k, with the derived lookups the
/// transfer construction needs.
pub struct SignatureCatalog {
    pub k: usize,
    pub sides: Vec<SideIntersection>,
    side_index: HashMap<u32, u32>,
    pub signatures: Vec<Signature>,
    index: HashMap<Signature, u32>,
    /// Per side id: its pattern mask rewritten into right-local
    /// coordinates.
    right_local_masks: Vec<u32>,
    /// Per side id: actual right-stub loose mask when the side is used on
    /// the right.
    right_loose: Vec<u32>,
    hamiltonian: Vec<u32>,
    even_side: Vec<bool>,
    closed_side: u32,
    closed_signature: u32,
}

impl SignatureCatalog {
    pub fn len(&self) -> usize {
        self.signatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signatures.is_empty()
    }

    pub fn side_id(&self, mask: u32) -> Option<u32> {
        self.side_index.get(&mask).copied()
    }

    pub fn signature_id(&self, sig: &Signature) -> Option<u32> {
        self.index.get(sig).copied()
    }

    pub fn right_local_mask(&self, side: u32) -> u32 {
        self.right_local_masks[side as usize]
    }

    pub fn right_loose_mask(&self, side: u32) -> u32 {
        self.right_loose[side as usize]
    }

    /// Ids of the signatures whose re-glued walk is a single cycle,
    /// ascending.
    pub fn hamiltonian_ids(&self) -> &[u32] {
        &self.hamiltonian
    }

    pub fn is_hamiltonian(&self, id: u32) -> bool {
        self.hamiltonian.binary_search(&id).is_ok()
    }

    /// True when the signature has an even number of loose ends per side
    /// (both sides always agree, the pairing having even total size).
    pub fn even_side(&self, id: u32) -> bool {
        self.even_side[id as usize]
    }

    /// The unique stub-free side pattern.
    pub fn closed_side(&self) -> u32 {
        self.closed_side
    }

    /// The unique signature with no loose ends: both sides closed, empty
    /// pairing. Realized exactly by the subgraphs that are one spanning
    /// cycle.
    pub fn closed_signature(&self) -> u32 {
        self.closed_signature
    }
}

/// All perfect matchings of `free` (sorted end labels), each as a sorted
/// pair list. One empty matching when `free` is empty; none at odd length.
fn perfect_matchings(free: &[u8]) -> Vec<Vec<(u8, u8)>> {
    if free.len() % 2 != 0 {
        return Vec::new();
    }
    if free.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let first = free[0];
    for i in 1..free.len() {
        let mate = free[i];
        let mut rest: Vec<u8> = Vec::with_capacity(free.len() - 2);
        rest.extend(free[1..i].iter().copied());
        rest.extend(free[i + 1..].iter().copied());
        for mut m in perfect_matchings(&rest) {
            m.push((first, mate));
            out.push(m);
        }
    }
    out
}

pub fn enumerate_signatures(k: usize) -> SignatureCatalog {
    let sides = enumerate_side_intersections(k);
    let side_index: HashMap<u32, u32> = sides
        .iter()
        .enumerate()
        .map(|(i, e)| (e.edges, i as u32))
        .collect();
    let right_local_masks: Vec<u32> = sides
        .iter()
        .map(|e| crate::sides::mirror_mask(k, e.edges))
        .collect();
    let right_loose: Vec<u32> = sides
        .iter()
        .map(|e| right_actual_loose(k, e.loose_ends))
        .collect();
    let closed_side = sides
        .iter()
        .position(|e| e.loose_ends == 0)
        .expect("stub-free side pattern") as u32;

    let mut signatures = Vec::new();
    for (li, le) in sides.iter().enumerate() {
        // Ends forced into pairs by paths inside one of the sides.
        let left_forced: Vec<(u8, u8)> = le
            .forced_pairs
            .iter()
            .map(|&(a, b)| (left_end(a as usize), left_end(b as usize)))
            .collect();
        let mut left_free: Vec<u8> = (0..=k)
            .filter(|&j| le.loose_ends & stub_bit(j) != 0)
            .map(left_end)
            .filter(|e| !left_forced.iter().any(|&(a, b)| a == *e || b == *e))
            .collect();
        left_free.sort_unstable();
        for (ri, re) in sides.iter().enumerate() {
            let mut forced = left_forced.clone();
            for &(a, b) in &re.forced_pairs {
                forced.push((
                    right_end(k, mirror_stub(k, a as usize)),
                    right_end(k, mirror_stub(k, b as usize)),
                ));
            }
            let mut free = left_free.clone();
            let rl = right_loose[ri];
            for j in 0..=k {
                if rl & stub_bit(j) != 0 {
                    let e = right_end(k, j);
                    if !forced.iter().any(|&(a, b)| a == e || b == e) {
                        free.push(e);
                    }
                }
            }
            free.sort_unstable();
            for matching in perfect_matchings(&free) {
                let mut pairing = forced.clone();
                pairing.extend(matching);
                signatures.push(Signature::new(li as u32, ri as u32, pairing));
            }
        }
    }

    let index: HashMap<Signature, u32> = signatures
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();
    assert_eq!(index.len(), signatures.len(), "duplicate signature");

    let mut hamiltonian = Vec::new();
    let mut even_side = Vec::with_capacity(signatures.len());
    let mut closed_signature = None;
    for (i, s) in signatures.iter().enumerate() {
        if is_hamiltonian_signature(k, s) {
            hamiltonian.push(i as u32);
        }
        let (lm, _) = s.loose_masks(k);
        even_side.push(lm.count_ones() % 2 == 0);
        if s.pairing.is_empty() {
            assert!(closed_signature.is_none(), "several loose-free signatures");
            closed_signature = Some(i as u32);
        }
    }

    SignatureCatalog {
        k,
        sides,
        side_index,
        signatures,
        index,
        right_local_masks,
        right_loose,
        hamiltonian,
        even_side,
        closed_side,
        closed_signature: closed_signature.expect("loose-free signature"),
    }
}
