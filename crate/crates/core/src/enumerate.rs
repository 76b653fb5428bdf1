//! Exhaustive enumeration of admissible subgraphs of the framed graph.
//!
//! This is the ground truth the transfer step is validated against, and
//! the source of the pipeline's initial state at n₀ = 3k (the smallest
//! order at which the two sides share no edges). Admissible subgraphs
//! split cleanly in two: forests whose paths end in loose stubs, and the
//! single-cycle subgraphs that realize the loose-free signature; the two
//! kinds are counted by separate searches.

use num_bigint::BigInt;

use crate::error::CoreError;
use crate::graph::{build_framed, count_spanning_single_cycles, Dsu};
use crate::signatures::{left_end, right_end, Signature, SignatureCatalog};
use crate::sides::{chord_bit, mirror_mask, ring_bit, spoke_bit, stub_bit};

/// Per-signature counts of admissible subgraphs at the starting order.
#[derive(Debug, Clone)]
pub struct InitialState {
    pub n0: usize,
    /// Indexed by signature id.
    pub values: Vec<BigInt>,
}

/// How one framed-graph edge shows up in the side masks and at the stubs.
#[derive(Default, Clone, Copy)]
struct EdgeRole {
    left_slot: u32,
    right_slot: u32,
    /// For stub edges: (stub vertex id, loose-end label).
    stub: Option<(u32, u8)>,
}

fn classify_edges(n: usize, k: usize) -> Result<(Vec<(u32, u32)>, Vec<EdgeRole>), CoreError> {
    let g = build_framed(n, k)?;
    let mut roles = Vec::with_capacity(g.edges().len());
    for &(a, b) in g.edges() {
        let mut role = EdgeRole::default();
        let (a_us, b_us) = (a as usize, b as usize);
        if g.is_stub(b) {
            let j = b_us - 2 * n;
            role.stub = if j <= k {
                role.left_slot = stub_bit(j);
                Some((b, left_end(j)))
            } else {
                role.right_slot = stub_bit(j - (k + 1));
                Some((b, right_end(k, j - (k + 1))))
            };
        } else if a_us < n {
            // a = v_i; ring edge (b = v_{i+1}) or spoke (b = w_i).
            let i = a_us;
            if b_us < n {
                if i <= k - 1 {
                    role.left_slot = ring_bit(k, i);
                }
                if i >= n - k - 1 {
                    role.right_slot = ring_bit(k, i - (n - k - 1));
                }
            } else {
                if i <= k - 1 {
                    role.left_slot = spoke_bit(k, i);
                }
                if i >= n - k {
                    role.right_slot = spoke_bit(k, i - (n - k));
                }
            }
        } else {
            // Chord w_i w_{i+k}.
            let i = a_us - n;
            if i <= k - 1 {
                role.left_slot = chord_bit(k, i);
            }
            if i >= n - 2 * k {
                role.right_slot = chord_bit(k, i - (n - 2 * k));
            }
        }
        roles.push(role);
    }
    Ok((g.edges().to_vec(), roles))
}

struct ForestSearch<'a> {
    cat: &'a SignatureCatalog,
    edges: &'a [(u32, u32)],
    roles: &'a [EdgeRole],
    internal_count: usize,
    deg: Vec<u8>,
    avail: Vec<u32>,
    dsu: Dsu,
    left_mask: u32,
    right_mask: u32,
    tally: Vec<u64>,
}

impl ForestSearch<'_> {
    fn is_internal(&self, x: u32) -> bool {
        (x as usize) < self.internal_count
    }

    fn search(&mut self, idx: usize) {
        if idx == self.edges.len() {
            self.record_leaf();
            return;
        }
        let (a, b) = self.edges[idx];
        let role = self.roles[idx];
        for x in [a, b] {
            if self.is_internal(x) {
                self.avail[x as usize] -= 1;
            }
        }

        let cap_ok = [a, b]
            .iter()
            .all(|&x| !self.is_internal(x) || self.deg[x as usize] < 2);
        if cap_ok && self.dsu.find(a as usize) != self.dsu.find(b as usize) {
            for x in [a, b] {
                if self.is_internal(x) {
                    self.deg[x as usize] += 1;
                }
            }
            self.left_mask |= role.left_slot;
            self.right_mask |= role.right_slot;
            let undo = self.dsu.union(a as usize, b as usize);
            self.search(idx + 1);
            self.dsu.undo(undo);
            self.left_mask &= !role.left_slot;
            self.right_mask &= !role.right_slot;
            for x in [a, b] {
                if self.is_internal(x) {
                    self.deg[x as usize] -= 1;
                }
            }
        }

        let exclude_ok = [a, b].iter().all(|&x| {
            !self.is_internal(x)
                || u32::from(self.deg[x as usize]) + self.avail[x as usize] >= 2
        });
        if exclude_ok {
            self.search(idx + 1);
        }

        for x in [a, b] {
            if self.is_internal(x) {
                self.avail[x as usize] += 1;
            }
        }
    }

    fn record_leaf(&mut self) {
        let k = self.cat.k;
        let left = self
            .cat
            .side_id(self.left_mask)
            .expect("window degrees force a cataloged left pattern");
        let right = self
            .cat
            .side_id(mirror_mask(k, self.right_mask))
            .expect("window degrees force a cataloged right pattern");

        // Pair loose ends by component. Each component holding a loose end
        // is a path with stubs at both ends, so roots match up two by two.
        let mut open: Vec<(usize, u8)> = Vec::new();
        let mut pairing = Vec::new();
        for (idx, role) in self.roles.iter().enumerate() {
            let Some((stub_vertex, end)) = role.stub else { continue };
            let present = if role.left_slot != 0 {
                self.left_mask & role.left_slot != 0
            } else {
                self.right_mask & role.right_slot != 0
            };
            if !present {
                continue;
            }
            debug_assert_eq!(self.edges[idx].1, stub_vertex);
            let root = self.dsu.find(stub_vertex as usize);
            if let Some(pos) = open.iter().position(|&(r, _)| r == root) {
                let (_, other) = open.swap_remove(pos);
                pairing.push((other, end));
            } else {
                open.push((root, end));
            }
        }
        assert!(open.is_empty(), "a loose end without a path partner");

        let sig = Signature::new(left, right, pairing);
        let id = self
            .cat
            .signature_id(&sig)
            .expect("every realized signature is cataloged");
        self.tally[id as usize] += 1;
    }
}

/// Number of admissible subgraphs of G′(n,k) per signature id. Exponential
/// backtracking — meant for n near 3k.
pub fn admissible_tally(cat: &SignatureCatalog, n: usize) -> Result<Vec<u64>, CoreError> {
    let k = cat.k;
    let (edges, roles) = classify_edges(n, k)?;
    let num_vertices = 2 * n + 2 * (k + 1);

    let mut search = ForestSearch {
        cat,
        edges: &edges,
        roles: &roles,
        internal_count: 2 * n,
        deg: vec![0; num_vertices],
        avail: vec![0; num_vertices],
        dsu: Dsu::new(num_vertices),
        left_mask: 0,
        right_mask: 0,
        tally: vec![0; cat.len()],
    };
    for &(a, b) in &edges {
        for x in [a, b] {
            if (x as usize) < 2 * n {
                search.avail[x as usize] += 1;
            }
        }
    }
    search.search(0);
    let mut tally = search.tally;

    // Single-cycle subgraphs: spanning cycles of the stub-stripped graph.
    let internal_edges: Vec<(u32, u32)> = edges
        .iter()
        .copied()
        .filter(|&(a, b)| (a as usize) < 2 * n && (b as usize) < 2 * n)
        .collect();
    tally[cat.closed_signature() as usize] +=
        count_spanning_single_cycles(2 * n, &internal_edges);

    Ok(tally)
}

/// The transfer pipeline's starting vector: per-signature counts at
/// n₀ = 3k, where the two sides are edge-disjoint for the first time.
pub fn initial_state(cat: &SignatureCatalog) -> Result<InitialState, CoreError> {
    let n0 = 3 * cat.k;
    let tally = admissible_tally(cat, n0)?;
    Ok(InitialState {
        n0,
        values: tally.into_iter().map(BigInt::from).collect(),
    })
}

/// Σ of a tally over the Hamiltonian signature set: the number of
/// Hamiltonian cycles of G(n,k).
pub fn hamiltonian_total(cat: &SignatureCatalog, tally: &[u64]) -> u64 {
    cat.hamiltonian_ids()
        .iter()
        .map(|&id| tally[id as usize])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::count_ham_cycles_oracle;
    use crate::signatures::enumerate_signatures;

    #[test]
    fn k1_tallies_match_oracle() {
        let cat = enumerate_signatures(1);
        for n in 3..=7 {
            let tally = admissible_tally(&cat, n).unwrap();
            assert_eq!(
                hamiltonian_total(&cat, &tally),
                count_ham_cycles_oracle(n, 1).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn k3_tallies_match_oracle() {
        let cat = enumerate_signatures(3);
        for n in 7..=9 {
            let tally = admissible_tally(&cat, n).unwrap();
            assert_eq!(
                hamiltonian_total(&cat, &tally),
                count_ham_cycles_oracle(n, 3).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn k3_initial_state_sums_to_nine() {
        let cat = enumerate_signatures(3);
        let init = initial_state(&cat).unwrap();
        assert_eq!(init.n0, 9);
        let total: BigInt = cat
            .hamiltonian_ids()
            .iter()
            .map(|&id| init.values[id as usize].clone())
            .sum();
        assert_eq!(total, BigInt::from(9));
    }

    #[test]
    fn k4_initial_state_sums_to_six() {
        let cat = enumerate_signatures(4);
        let init = initial_state(&cat).unwrap();
        assert_eq!(init.n0, 12);
        let total: BigInt = cat
            .hamiltonian_ids()
            .iter()
            .map(|&id| init.values[id as usize].clone())
            .sum();
        assert_eq!(total, BigInt::from(6));
    }

    #[test]
    fn tally_rejects_overlapping_windows() {
        let cat = enumerate_signatures(3);
        assert!(admissible_tally(&cat, 6).is_err());
    }
}
