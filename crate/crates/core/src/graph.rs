//! Generalized Petersen graphs, their cut-open framed variants, and a
//! brute-force Hamiltonian-cycle oracle.
//!
//! The oracle is deliberately independent of the signature/transfer
//! machinery: it counts spanning cycles by plain edge-choice backtracking,
//! so agreement between the two is meaningful evidence for both.

use std::collections::BTreeSet;

use crate::error::CoreError;

/// G(n,k): outer ring v_0..v_{n−1}, inner vertices w_0..w_{n−1}, spokes
/// v_i w_i, and inner chords w_i w_{i+k mod n}. Vertices are numbered
/// v_i = i, w_i = n + i.
#[derive(Debug, Clone)]
pub struct PetersenGraph {
    pub n: usize,
    pub k: usize,
    /// Set when n ≤ 2k or n < 3: chords (or ring edges) collapse onto each
    /// other, the edge set is deduplicated with set semantics, self-loops
    /// are dropped, and the graph is not cubic.
    pub degenerate: bool,
    edges: Vec<(u32, u32)>,
}

impl PetersenGraph {
    pub fn num_vertices(&self) -> usize {
        2 * self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.num_vertices()];
        for &(a, b) in &self.edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        deg
    }
}

pub fn build_petersen(n: usize, k: usize) -> PetersenGraph {
    assert!(n >= 1 && k >= 1, "G(n,k) needs positive n and k");
    let v = |i: usize| (i % n) as u32;
    let w = |i: usize| (n + i % n) as u32;
    let mut set = BTreeSet::new();
    let mut add = |a: u32, b: u32| {
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    };
    for i in 0..n {
        add(v(i), v(i + 1));
        add(w(i), w(i + k));
        add(v(i), w(i));
    }
    PetersenGraph {
        n,
        k,
        degenerate: n < 3 || n <= 2 * k,
        edges: set.into_iter().collect(),
    }
}

/// G′(n,k): G(n,k) with the seam cut open. The ring edge v_0 v_{n−1} and
/// the k chords w_i w_{n−k+i} are replaced by pendant stubs
/// L_0..L_k on the left and R_0..R_k on the right:
/// v_0 L_0, w_i L_{i+1}, v_{n−1} R_0, w_{n−k+i} R_{i+1}.
#[derive(Debug, Clone)]
pub struct FramedGraph {
    pub n: usize,
    pub k: usize,
    edges: Vec<(u32, u32)>,
}

impl FramedGraph {
    pub fn num_vertices(&self) -> usize {
        2 * self.n + 2 * (self.k + 1)
    }

    /// Vertices below this id are the internal (degree-3) ones.
    pub fn internal_count(&self) -> usize {
        2 * self.n
    }

    pub fn v(&self, i: usize) -> u32 {
        debug_assert!(i < self.n);
        i as u32
    }

    pub fn w(&self, i: usize) -> u32 {
        debug_assert!(i < self.n);
        (self.n + i) as u32
    }

    pub fn left_stub(&self, j: usize) -> u32 {
        debug_assert!(j <= self.k);
        (2 * self.n + j) as u32
    }

    pub fn right_stub(&self, j: usize) -> u32 {
        debug_assert!(j <= self.k);
        (2 * self.n + self.k + 1 + j) as u32
    }

    pub fn is_stub(&self, x: u32) -> bool {
        (x as usize) >= 2 * self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

pub fn build_framed(n: usize, k: usize) -> Result<FramedGraph, CoreError> {
    if k < 1 || n < 2 * k + 1 {
        return Err(CoreError::BadOrder {
            n,
            k,
            reason: "framed graph needs n ≥ 2k+1 so the two sides are well-formed",
        });
    }
    let mut g = FramedGraph { n, k, edges: Vec::with_capacity(3 * n + 2) };
    let mut edges = Vec::with_capacity(3 * n + 2);
    for i in 0..n - 1 {
        edges.push((g.v(i), g.v(i + 1)));
    }
    for i in 0..n {
        edges.push((g.v(i), g.w(i)));
    }
    for i in 0..n - k {
        edges.push((g.w(i), g.w(i + k)));
    }
    edges.push((g.v(0), g.left_stub(0)));
    for i in 0..k {
        edges.push((g.w(i), g.left_stub(i + 1)));
    }
    edges.push((g.v(n - 1), g.right_stub(0)));
    for i in 0..k {
        edges.push((g.w(n - k + i), g.right_stub(i + 1)));
    }
    g.edges = edges;
    Ok(g)
}

/// Counts subsets of `edges` that form a single cycle through every one of
/// the `num_vertices` vertices (i.e. spanning, 2-regular, connected).
/// Cycles are counted as undirected edge sets, once each.
///
/// Edge-choice backtracking: every vertex is pinned to degree exactly 2,
/// branches die as soon as a vertex can no longer reach degree 2, and a
/// cycle may be closed only once (closing it excludes all later edges, so
/// the closure must already cover every vertex).
pub fn count_spanning_single_cycles(num_vertices: usize, edges: &[(u32, u32)]) -> u64 {
    if num_vertices == 0 || edges.len() < num_vertices {
        return 0;
    }
    let mut st = CycleSearch {
        edges,
        deg: vec![0u8; num_vertices],
        avail: vec![0u32; num_vertices],
        dsu: Dsu::new(num_vertices),
        full_count: num_vertices as u32,
        deg2_count: 0,
    };
    for &(a, b) in edges {
        st.avail[a as usize] += 1;
        st.avail[b as usize] += 1;
    }
    // A vertex of degree < 2 in the host graph can never lie on a cycle.
    if st.avail.iter().any(|&c| c < 2) {
        return 0;
    }
    st.search(0)
}

struct CycleSearch<'a> {
    edges: &'a [(u32, u32)],
    deg: Vec<u8>,
    avail: Vec<u32>,
    dsu: Dsu,
    full_count: u32,
    deg2_count: u32,
}

impl CycleSearch<'_> {
    fn search(&mut self, idx: usize) -> u64 {
        if idx == self.edges.len() {
            return 0; // never closed a cycle
        }
        let (a, b) = self.edges[idx];
        let (a, b) = (a as usize, b as usize);
        self.avail[a] -= 1;
        self.avail[b] -= 1;
        let mut total = 0;

        if self.deg[a] < 2 && self.deg[b] < 2 {
            if self.dsu.find(a) == self.dsu.find(b) {
                // Closing the one allowed cycle: every later edge is then
                // excluded, so this completes a solution exactly when the
                // closure brings every vertex to degree 2.
                let closes_all = self.deg[a] == 1
                    && self.deg[b] == 1
                    && self.deg2_count + 2 == self.full_count;
                if closes_all {
                    total += 1;
                }
            } else {
                self.deg[a] += 1;
                self.deg[b] += 1;
                let newly_full = (self.deg[a] == 2) as u32 + (self.deg[b] == 2) as u32;
                self.deg2_count += newly_full;
                let undo = self.dsu.union(a, b);
                total += self.search(idx + 1);
                self.dsu.undo(undo);
                self.deg2_count -= newly_full;
                self.deg[a] -= 1;
                self.deg[b] -= 1;
            }
        }

        // Exclude the edge, unless that strands an endpoint below degree 2.
        if u32::from(self.deg[a]) + self.avail[a] >= 2
            && u32::from(self.deg[b]) + self.avail[b] >= 2
        {
            total += self.search(idx + 1);
        }

        self.avail[a] += 1;
        self.avail[b] += 1;
        total
    }
}

/// Union-find with an undo stack (union by size, no path compression) so
/// the backtracking search can roll merges back in O(1).
pub(crate) struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

pub(crate) struct DsuUndo {
    child: u32,
    parent: u32,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Merges the components of a and b; returns a token for `undo`.
    /// Caller must ensure the roots differ.
    pub fn union(&mut self, a: usize, b: usize) -> DsuUndo {
        let ra = self.find(a);
        let rb = self.find(b);
        debug_assert_ne!(ra, rb);
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        DsuUndo {
            child: small as u32,
            parent: big as u32,
        }
    }

    pub fn undo(&mut self, token: DsuUndo) {
        let child = token.child as usize;
        let parent = token.parent as usize;
        self.size[parent] -= self.size[child];
        self.parent[child] = child as u32;
    }
}

/// Exact number of Hamiltonian cycles of G(n,k), counted as edge sets.
/// Intended for small n (backtracking cost grows quickly); the transfer
/// pipeline is the scalable path.
pub fn count_ham_cycles_oracle(n: usize, k: usize) -> Result<u64, CoreError> {
    let g = build_petersen(n, k);
    if g.degenerate {
        return Err(CoreError::BadOrder {
            n,
            k,
            reason: "oracle requires the simple cubic regime n ≥ 2k+1",
        });
    }
    Ok(count_spanning_single_cycles(g.num_vertices(), g.edges()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shapes() {
        let g = build_petersen(5, 2);
        assert!(!g.degenerate);
        assert_eq!(g.num_vertices(), 10);
        assert_eq!(g.edges().len(), 15);
        assert!(g.degree_sequence().iter().all(|&d| d == 3));

        let g = build_petersen(7, 3);
        assert_eq!(g.num_vertices(), 14);
        assert_eq!(g.edges().len(), 21);
        assert!(g.degree_sequence().iter().all(|&d| d == 3));
    }

    #[test]
    fn petersen_degenerate_collapse() {
        // n = 2k: each chord appears twice in the defining list; as a set
        // the inner vertices come out with degree 2.
        let g = build_petersen(6, 3);
        assert!(g.degenerate);
        let deg = g.degree_sequence();
        for i in 0..6 {
            assert_eq!(deg[i], 3, "outer vertex v_{i}");
            assert_eq!(deg[6 + i], 2, "inner vertex w_{i}");
        }
    }

    #[test]
    fn framed_shape() {
        let g = build_framed(7, 3).unwrap();
        assert_eq!(g.num_vertices(), 22);
        let mut deg = vec![0usize; g.num_vertices()];
        for &(a, b) in g.edges() {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        for i in 0..g.internal_count() {
            assert_eq!(deg[i], 3, "internal vertex {i}");
        }
        for j in 0..=3 {
            assert_eq!(deg[g.left_stub(j) as usize], 1);
            assert_eq!(deg[g.right_stub(j) as usize], 1);
        }
    }

    #[test]
    fn framed_seam_edges() {
        let g = build_framed(9, 4).unwrap();
        assert_eq!(g.num_vertices(), 28);
        let has = |a: u32, b: u32| {
            g.edges()
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
        };
        assert!(has(g.v(8), g.right_stub(0)));
        assert!(!has(g.v(0), g.v(8)));
        assert!(has(g.w(5), g.right_stub(1)));
        assert!(!has(g.w(0), g.w(5)));
    }

    #[test]
    fn framed_rejects_small_n() {
        assert!(build_framed(6, 3).is_err());
    }

    #[test]
    fn oracle_reference_counts() {
        assert_eq!(count_ham_cycles_oracle(7, 3).unwrap(), 7);
        assert_eq!(count_ham_cycles_oracle(10, 4).unwrap(), 30);
        assert_eq!(count_ham_cycles_oracle(5, 2).unwrap(), 0);
        assert!(count_ham_cycles_oracle(6, 3).is_err());
    }

    #[test]
    fn oracle_ignores_edge_order() {
        let g = build_petersen(8, 3);
        let base = count_spanning_single_cycles(g.num_vertices(), g.edges());
        let mut shuffled = g.edges().to_vec();
        shuffled.reverse();
        shuffled.swap(0, 7);
        shuffled.swap(3, 11);
        assert_eq!(
            count_spanning_single_cycles(g.num_vertices(), &shuffled),
            base
        );
    }

    #[test]
    fn cycle_counter_small_cases() {
        // A triangle has one spanning cycle; a path has none.
        assert_eq!(count_spanning_single_cycles(3, &[(0, 1), (1, 2), (0, 2)]), 1);
        assert_eq!(count_spanning_single_cycles(3, &[(0, 1), (1, 2)]), 0);
        // K4 has 3 Hamiltonian cycles.
        assert_eq!(
            count_spanning_single_cycles(
                4,
                &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            ),
            3
        );
    }
}
