//! Strongly connected components of the signature transfer digraph.
//!
//! Tarjan's algorithm (iterative, so 25k-node graphs don't blow the call
//! stack) yields the components in reverse topological order; on top of
//! that we build the condensation DAG, group components into isomorphism
//! classes, and extract the induced linear system of a single component so
//! its minimal polynomial can be computed exactly.

use std::collections::HashMap;

use crate::krylov::stripped_matrix_minpoly;
use crate::poly::Poly;
use crate::transfer::LinearSystem;

/// Components of a digraph given by out-neighbour lists.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    /// Component id of each node.  Ids follow Tarjan emission order, which
    /// is reverse topological: an arc u→v between different components
    /// always has `comp_of[u] > comp_of[v]`.
    pub comp_of: Vec<u32>,
    /// Members of each component, ascending node ids.
    pub comps: Vec<Vec<u32>>,
    /// Condensation arcs (deduplicated, sorted) out of each component.
    pub cond_out: Vec<Vec<u32>>,
    /// Condensation arcs into each component.
    pub cond_in: Vec<Vec<u32>>,
}

impl SccDecomposition {
    pub fn num_comps(&self) -> usize {
        self.comps.len()
    }

    /// Component ids in topological order, sources first.
    pub fn topo_order(&self) -> Vec<u32> {
        (0..self.num_comps() as u32).rev().collect()
    }
}

pub fn scc_decompose(out: &[Vec<u32>]) -> SccDecomposition {
    let n = out.len();
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut comp_of = vec![UNSET; n];
    let mut comps: Vec<Vec<u32>> = Vec::new();
    let mut next_index = 0u32;

    // Explicit DFS frames: (node, position in its out-list).
    let mut frames: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root as usize] = next_index;
        lowlink[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            if let Some(&w) = out[v as usize].get(*pos) {
                *pos += 1;
                if index[w as usize] == UNSET {
                    index[w as usize] = next_index;
                    lowlink[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    frames.push((w, 0));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent as usize] = lowlink[parent as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    let id = comps.len() as u32;
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp_of[w as usize] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    comps.push(members);
                }
            }
        }
    }

    let num = comps.len();
    let mut cond_out = vec![Vec::new(); num];
    let mut cond_in = vec![Vec::new(); num];
    for u in 0..n {
        for &w in &out[u] {
            let (cu, cw) = (comp_of[u], comp_of[w as usize]);
            if cu != cw {
                debug_assert!(cu > cw, "emission order must be reverse topological");
                cond_out[cu as usize].push(cw);
                cond_in[cw as usize].push(cu);
            }
        }
    }
    for list in cond_out.iter_mut().chain(cond_in.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    SccDecomposition { comp_of, comps, cond_out, cond_in }
}

/// Linear system induced on `members` (arcs of `out` with both ends inside),
/// in predecessor-list form over local indices.
pub fn induced_system(out: &[Vec<u32>], members: &[u32]) -> LinearSystem {
    let mut local = HashMap::with_capacity(members.len());
    for (i, &v) in members.iter().enumerate() {
        local.insert(v, i as u32);
    }
    let mut rows = vec![Vec::new(); members.len()];
    for (i, &v) in members.iter().enumerate() {
        let _ = i;
        for &w in &out[v as usize] {
            if let Some(&lw) = local.get(&w) {
                rows[lw as usize].push(local[&v]);
            }
        }
    }
    for row in &mut rows {
        row.sort_unstable();
    }
    LinearSystem { n: members.len(), rows }
}

/// x-stripped minimal polynomial of the matrix induced on one component.
///
/// For a single node without a self-loop this is 1 (the raw minimal
/// polynomial is `x`); with a self-loop it is `x − 1`; larger components
/// give the polynomial whose recurrence every coordinate sequence of the
/// component eventually satisfies, regardless of how it is driven from
/// upstream once that driving has died out.
pub fn scc_universal_minpoly(out: &[Vec<u32>], members: &[u32]) -> Poly {
    let (stripped, _) = stripped_matrix_minpoly(&induced_system(out, members));
    stripped
}

/// One isomorphism class of components.
#[derive(Debug, Clone)]
pub struct SccClass {
    /// Number of nodes in each member.
    pub size: usize,
    /// Component ids belonging to the class.
    pub members: Vec<u32>,
    /// Out-neighbour lists of the representative, in local indices.
    pub shape: Vec<Vec<u32>>,
}

fn local_out_lists(out: &[Vec<u32>], members: &[u32]) -> Vec<Vec<u32>> {
    let mut local = HashMap::with_capacity(members.len());
    for (i, &v) in members.iter().enumerate() {
        local.insert(v, i as u32);
    }
    let mut lists = vec![Vec::new(); members.len()];
    for (i, &v) in members.iter().enumerate() {
        for &w in &out[v as usize] {
            if let Some(&lw) = local.get(&w) {
                lists[i].push(lw);
            }
        }
        lists[i].sort_unstable();
    }
    lists
}

fn degree_fingerprint(lists: &[Vec<u32>]) -> Vec<(u32, u32, bool)> {
    let n = lists.len();
    let mut indeg = vec![0u32; n];
    let mut selfloop = vec![false; n];
    for (v, row) in lists.iter().enumerate() {
        for &w in row {
            indeg[w as usize] += 1;
            if w as usize == v {
                selfloop[v] = true;
            }
        }
    }
    let mut fp: Vec<(u32, u32, bool)> = (0..n)
        .map(|v| (indeg[v], lists[v].len() as u32, selfloop[v]))
        .collect();
    fp.sort_unstable();
    fp
}

/// Digraph isomorphism by backtracking, with candidate filtering on
/// (in-degree, out-degree, self-loop) triples.  Only ever called on graphs
/// that already share a degree fingerprint, and in this codebase those are
/// strongly connected with at most a couple hundred nodes, so the search
/// space stays tame.
pub fn digraph_isomorphic(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if degree_fingerprint(a) != degree_fingerprint(b) {
        return false;
    }
    let triple = |lists: &[Vec<u32>]| -> Vec<(u32, u32, bool)> {
        let mut indeg = vec![0u32; n];
        let mut selfloop = vec![false; n];
        for (v, row) in lists.iter().enumerate() {
            for &w in row {
                indeg[w as usize] += 1;
                if w as usize == v {
                    selfloop[v] = true;
                }
            }
        }
        (0..n).map(|v| (indeg[v], lists[v].len() as u32, selfloop[v])).collect()
    };
    let ta = triple(a);
    let tb = triple(b);

    const FREE: u32 = u32::MAX;
    let mut a_to_b = vec![FREE; n];
    let mut b_to_a = vec![FREE; n];

    // Order A's nodes so each one (after the first) touches an already
    // mapped node; in a strongly connected graph a BFS order does it.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([0u32]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &a[v as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        // Not strongly connected (or even weakly, along arcs): fall back to
        // plain index order; correctness is unaffected.
        order = (0..n as u32).collect();
    }

    fn consistent(
        a: &[Vec<u32>],
        b: &[Vec<u32>],
        a_to_b: &[u32],
        v: usize,
        image: usize,
    ) -> bool {
        const FREE: u32 = u32::MAX;
        // Arcs out of v to already mapped nodes must map to arcs of b.
        for &w in &a[v] {
            let iw = a_to_b[w as usize];
            if iw != FREE && !b[image].contains(&iw) {
                return false;
            }
        }
        if a[v].iter().filter(|&&w| a_to_b[w as usize] != FREE).count()
            != b[image]
                .iter()
                .filter(|&&w| a_to_b.iter().any(|&x| x == w))
                .count()
        {
            return false;
        }
        // Arcs into v from already mapped nodes must be mirrored too.
        for (u, row) in a.iter().enumerate() {
            let iu = a_to_b[u];
            if iu == FREE {
                continue;
            }
            if row.contains(&(v as u32)) != b[iu as usize].contains(&(image as u32)) {
                return false;
            }
        }
        true
    }

    fn search(
        a: &[Vec<u32>],
        b: &[Vec<u32>],
        ta: &[(u32, u32, bool)],
        tb: &[(u32, u32, bool)],
        order: &[u32],
        depth: usize,
        a_to_b: &mut [u32],
        b_to_a: &mut [u32],
    ) -> bool {
        const FREE: u32 = u32::MAX;
        if depth == order.len() {
            return true;
        }
        let v = order[depth] as usize;
        for image in 0..b.len() {
            if b_to_a[image] != FREE || tb[image] != ta[v] {
                continue;
            }
            if !consistent(a, b, a_to_b, v, image) {
                continue;
            }
            a_to_b[v] = image as u32;
            b_to_a[image] = v as u32;
            if search(a, b, ta, tb, order, depth + 1, a_to_b, b_to_a) {
                return true;
            }
            a_to_b[v] = FREE;
            b_to_a[image] = FREE;
        }
        false
    }

    search(a, b, &ta, &tb, &order, 0, &mut a_to_b, &mut b_to_a)
}

/// Groups the components of a decomposition into isomorphism classes,
/// sorted by (size, first member id).  Degree fingerprints do the coarse
/// grouping; exact backtracking isomorphism splits any collisions.
pub fn classify_sccs(out: &[Vec<u32>], dec: &SccDecomposition) -> Vec<SccClass> {
    let mut by_fp: HashMap<Vec<(u32, u32, bool)>, Vec<u32>> = HashMap::new();
    let mut shapes: Vec<Vec<Vec<u32>>> = Vec::with_capacity(dec.num_comps());
    for (id, members) in dec.comps.iter().enumerate() {
        let lists = local_out_lists(out, members);
        by_fp.entry(degree_fingerprint(&lists)).or_default().push(id as u32);
        shapes.push(lists);
    }

    let mut classes: Vec<SccClass> = Vec::new();
    let mut groups: Vec<Vec<u32>> = by_fp.into_values().collect();
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort_unstable();
    for group in groups {
        // Sequential refinement: match each member against the existing
        // representatives carved out of this fingerprint bucket.
        let mut reps: Vec<SccClass> = Vec::new();
        for id in group {
            let lists = &shapes[id as usize];
            let mut placed = false;
            for class in &mut reps {
                if lists.len() == class.shape.len()
                    && (lists.len() <= 1 || digraph_isomorphic(lists, &class.shape))
                {
                    class.members.push(id);
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push(SccClass {
                    size: lists.len(),
                    members: vec![id],
                    shape: lists.clone(),
                });
            }
        }
        classes.extend(reps);
    }
    classes.sort_by_key(|c| (c.size, c.members[0]));
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycles_in_a_chain() {
        // 0↔1 → 2↔3, plus an isolated node 4.
        let out = vec![vec![1], vec![0, 2], vec![3], vec![2], vec![]];
        let dec = scc_decompose(&out);
        assert_eq!(dec.num_comps(), 3);
        let mut sizes: Vec<usize> = dec.comps.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 2]);
        // Arc between components goes from higher id to lower (reverse
        // topological emission).
        let c01 = dec.comp_of[0];
        let c23 = dec.comp_of[2];
        assert!(c01 > c23);
        assert_eq!(dec.cond_out[c01 as usize], vec![c23]);
        assert_eq!(dec.cond_in[c23 as usize], vec![c01]);
    }

    #[test]
    fn condensation_arcs_deduplicated() {
        // Two parallel routes from the 0↔1 component to node 2.
        let out = vec![vec![1, 2], vec![0, 2], vec![]];
        let dec = scc_decompose(&out);
        let top = dec.comp_of[0] as usize;
        assert_eq!(dec.cond_out[top].len(), 1);
    }

    #[test]
    fn induced_three_cycle_minpoly() {
        let out = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let dec = scc_decompose(&out);
        let cyc = dec.comps[dec.comp_of[0] as usize].clone();
        assert_eq!(cyc.len(), 3);
        let p = scc_universal_minpoly(&out, &cyc);
        assert_eq!(p, Poly::from_i64s(&[-1, 0, 0, 1]));
    }

    #[test]
    fn trivial_component_polynomials() {
        let out = vec![vec![], vec![1]];
        let dec = scc_decompose(&out);
        let plain = dec.comp_of[0] as usize;
        let looped = dec.comp_of[1] as usize;
        assert!(scc_universal_minpoly(&out, &dec.comps[plain]).is_one());
        assert_eq!(
            scc_universal_minpoly(&out, &dec.comps[looped]),
            Poly::from_i64s(&[-1, 1])
        );
    }

    #[test]
    fn classification_groups_isomorphic_components() {
        // Two 2-cycles, one 3-cycle, one plain node, one self-loop.
        let out = vec![
            vec![1],
            vec![0],
            vec![3],
            vec![2],
            vec![5],
            vec![6],
            vec![4],
            vec![],
            vec![8],
        ];
        let dec = scc_decompose(&out);
        let classes = classify_sccs(&out, &dec);
        let mut summary: Vec<(usize, usize)> =
            classes.iter().map(|c| (c.size, c.members.len())).collect();
        summary.sort_unstable();
        assert_eq!(summary, [(1, 1), (1, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn isomorphism_rejects_same_degrees_different_structure() {
        // Two hexagons, each with one extra 2-cycle chord; the chord spans
        // distance 3 in the first and distance 2 in the second.  Degree
        // fingerprints agree, the digraphs do not.
        let mut a: Vec<Vec<u32>> = (0..6).map(|v| vec![((v + 1) % 6) as u32]).collect();
        a[0].push(3);
        a[3].push(0);
        let mut b: Vec<Vec<u32>> = (0..6).map(|v| vec![((v + 1) % 6) as u32]).collect();
        b[0].push(2);
        b[2].push(0);
        for l in a.iter_mut().chain(b.iter_mut()) {
            l.sort_unstable();
        }
        assert!(!digraph_isomorphic(&a, &b));
        // Sanity: each is isomorphic to a relabelled copy of itself.
        let rot: Vec<Vec<u32>> = (0..6)
            .map(|v| {
                let src = (v + 2) % 6;
                a[src].iter().map(|&w| (w + 4) % 6).map(|w| w as u32).collect::<Vec<u32>>()
            })
            .collect();
        let mut rot = rot;
        for l in rot.iter_mut() {
            l.sort_unstable();
        }
        assert!(digraph_isomorphic(&a, &rot));
    }

    #[test]
    fn topo_order_is_sources_first() {
        let out = vec![vec![1], vec![2], vec![], vec![1]];
        let dec = scc_decompose(&out);
        let order = dec.topo_order();
        let pos: Vec<usize> = (0..dec.num_comps())
            .map(|c| order.iter().position(|&x| x as usize == c).unwrap())
            .collect();
        for (u, row) in out.iter().enumerate() {
            for &w in row {
                let (cu, cw) = (dec.comp_of[u] as usize, dec.comp_of[w as usize] as usize);
                if cu != cw {
                    assert!(pos[cu] < pos[cw]);
                }
            }
        }
    }
}
