//! The signature transfer relation: how admissible subgraphs of G′(n+1,k)
//! restrict to admissible subgraphs of G′(n,k), organized as a digraph σ
//! on signatures.
//!
//! Going from n to n+1 appends one column (v_n, w_n). The old stubs R_0
//! and R_1 turn into the real edges v_{n−1}v_n and w_{n−k}w_n, the old
//! R_j slide down to R_{j−1} for j ≥ 2, and three new edges are up for
//! grabs: the stub v_nR_0, the spoke v_nw_n, and the stub w_nR_k. The
//! degree-2 constraints at v_n and w_n leave five consistent choices,
//! keyed by whether the old R_0 and R_1 were loose. Each choice rewrites
//! the pairing mechanically; the only rejected moves are the two that
//! would close a cycle smaller than the whole subgraph. Counting
//! admissible subgraphs therefore advances by one matrix–vector product
//! with σ's 0/1 adjacency.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::enumerate::initial_state;
use crate::error::CoreError;
use crate::signatures::{
    end_index, end_is_right, enumerate_signatures, right_end, Signature, SignatureCatalog,
};
use crate::sides::{chord_bit, mirror_mask, ring_bit, spoke_bit, stub_bit};

/// Which of the three new edges the extension picks up.
#[derive(Clone, Copy)]
struct ExtensionCase {
    s0: bool,
    vw: bool,
    sk: bool,
}

/// R_j with j ≥ 2 slides down to R_{j−1}; all other labels survive.
fn relabel_end(k: usize, e: u8) -> u8 {
    if end_is_right(k, e) && end_index(k, e) >= 2 {
        e - 1
    } else {
        e
    }
}

fn take_partner(pairs: &mut Vec<(u8, u8)>, e: u8) -> u8 {
    let pos = pairs
        .iter()
        .position(|&(a, b)| a == e || b == e)
        .expect("loose end is paired");
    let (a, b) = pairs.swap_remove(pos);
    if a == e {
        b
    } else {
        a
    }
}

/// The successor signature under one extension case, or None when the
/// extension closes a cycle that does not swallow the whole subgraph.
fn successor(
    cat: &SignatureCatalog,
    sig: &Signature,
    case: ExtensionCase,
    r0: bool,
    r1: bool,
) -> Option<Signature> {
    let k = cat.k;

    // New right window pattern, in right-local coordinates: columns shift
    // down by one, the promoted stubs become the outgoing ring and chord
    // of the new column, and the case fills the three new slots.
    let old = cat.right_local_mask(sig.right);
    let mut mask = 0u32;
    for j in 0..k - 1 {
        if old & ring_bit(k, j + 1) != 0 {
            mask |= ring_bit(k, j);
        }
        if old & spoke_bit(k, j + 1) != 0 {
            mask |= spoke_bit(k, j);
        }
        if old & chord_bit(k, j + 1) != 0 {
            mask |= chord_bit(k, j);
        }
        if old & stub_bit(j + 2) != 0 {
            mask |= stub_bit(j + 1);
        }
    }
    if r0 {
        mask |= ring_bit(k, k - 1);
    }
    if r1 {
        mask |= chord_bit(k, k - 1);
    }
    if case.vw {
        mask |= spoke_bit(k, k - 1);
    }
    if case.s0 {
        mask |= stub_bit(0);
    }
    if case.sk {
        mask |= stub_bit(k);
    }
    debug_assert!(crate::sides::right_window_valid(k, mask));
    let new_right = cat
        .side_id(mirror_mask(k, mask))
        .expect("successor window pattern is cataloged");

    let r0_end = right_end(k, 0);
    let r1_end = right_end(k, 1);
    let new_r0 = right_end(k, 0);
    let new_rk = right_end(k, k);

    let mut pairs = sig.pairing.clone();
    let mut fresh: Vec<(u8, u8)> = Vec::new();
    match (r0, r1) {
        (false, false) => {
            // New column hangs off both new stubs. A loose-free
            // predecessor is the spanning cycle; gluing a path onto it is
            // inadmissible.
            if pairs.is_empty() {
                return None;
            }
            fresh.push((new_r0, new_rk));
        }
        (false, true) => {
            let y = take_partner(&mut pairs, r1_end);
            fresh.push((relabel_end(k, y), new_r0));
        }
        (true, false) => {
            let x = take_partner(&mut pairs, r0_end);
            fresh.push((relabel_end(k, x), new_rk));
        }
        (true, true) if !case.vw => {
            let x = take_partner(&mut pairs, r0_end);
            if x == r1_end {
                fresh.push((new_r0, new_rk));
            } else {
                let y = take_partner(&mut pairs, r1_end);
                fresh.push((new_r0, relabel_end(k, x)));
                fresh.push((relabel_end(k, y), new_rk));
            }
        }
        (true, true) => {
            // The spoke joins the two promoted edges' paths.
            let x = take_partner(&mut pairs, r0_end);
            if x == r1_end {
                if !pairs.is_empty() {
                    // Closes a cycle while other components remain.
                    return None;
                }
                // The path swallowed everything: the successor is the
                // spanning cycle, with no loose ends.
            } else {
                let y = take_partner(&mut pairs, r1_end);
                fresh.push((relabel_end(k, x), relabel_end(k, y)));
            }
        }
    }

    let mut pairing: Vec<(u8, u8)> = pairs
        .into_iter()
        .map(|(a, b)| (relabel_end(k, a), relabel_end(k, b)))
        .collect();
    pairing.extend(fresh);
    Some(Signature::new(sig.left, new_right, pairing))
}

/// The transfer digraph: an arc s → t for every extension case of s that
/// yields t. All arcs have multiplicity one; out-degrees are 0..=2.
pub struct SigmaGraph {
    pub k: usize,
    num_nodes: usize,
    succ_off: Vec<u32>,
    succ: Vec<u32>,
    pred_off: Vec<u32>,
    pred: Vec<u32>,
}

impl SigmaGraph {
    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_arcs(&self) -> usize {
        self.succ.len()
    }

    pub fn succs(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.succ[self.succ_off[v] as usize..self.succ_off[v + 1] as usize]
    }

    pub fn preds(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.pred[self.pred_off[v] as usize..self.pred_off[v + 1] as usize]
    }
}

fn csr(num_nodes: usize, arcs: impl Iterator<Item = (u32, u32)> + Clone) -> (Vec<u32>, Vec<u32>) {
    let mut off = vec![0u32; num_nodes + 1];
    for (src, _) in arcs.clone() {
        off[src as usize + 1] += 1;
    }
    for i in 0..num_nodes {
        off[i + 1] += off[i];
    }
    let mut data = vec![0u32; off[num_nodes] as usize];
    let mut cursor = off.clone();
    for (src, dst) in arcs {
        data[cursor[src as usize] as usize] = dst;
        cursor[src as usize] += 1;
    }
    (off, data)
}

pub fn build_sigma(cat: &SignatureCatalog) -> SigmaGraph {
    let mut arcs: Vec<(u32, u32)> = Vec::with_capacity(2 * cat.len());
    for (i, sig) in cat.signatures.iter().enumerate() {
        let loose = cat.right_loose_mask(sig.right);
        let r0 = loose & stub_bit(0) != 0;
        let r1 = loose & stub_bit(1) != 0;
        let cases: &[ExtensionCase] = match (r0, r1) {
            (false, false) => &[ExtensionCase { s0: true, vw: true, sk: true }],
            (false, true) => &[ExtensionCase { s0: true, vw: true, sk: false }],
            (true, false) => &[ExtensionCase { s0: false, vw: true, sk: true }],
            (true, true) => &[
                ExtensionCase { s0: true, vw: false, sk: true },
                ExtensionCase { s0: false, vw: true, sk: false },
            ],
        };
        let mut out: Vec<u32> = Vec::with_capacity(2);
        for &case in cases {
            if let Some(succ) = successor(cat, sig, case, r0, r1) {
                let id = cat
                    .signature_id(&succ)
                    .expect("successor signature is cataloged");
                out.push(id);
            }
        }
        debug_assert!(out.len() <= 2 && (out.len() < 2 || out[0] != out[1]));
        for id in out {
            arcs.push((i as u32, id));
        }
    }
    let (succ_off, succ) = csr(cat.len(), arcs.iter().copied());
    let (pred_off, pred) = csr(cat.len(), arcs.iter().map(|&(s, d)| (d, s)));
    SigmaGraph {
        k: cat.k,
        num_nodes: cat.len(),
        succ_off,
        succ,
        pred_off,
        pred,
    }
}

/// Per-signature subgraph counts at one order.
#[derive(Debug, Clone)]
pub struct StateVector {
    pub n: usize,
    pub values: Vec<BigInt>,
}

/// One transfer move: values at n+1 from values at n.
pub fn step(sigma: &SigmaGraph, state: &StateVector) -> StateVector {
    step_threaded(sigma, state, 1)
}

pub fn step_threaded(sigma: &SigmaGraph, state: &StateVector, threads: usize) -> StateVector {
    assert_eq!(state.values.len(), sigma.num_nodes());
    let sum_range = |lo: usize, hi: usize| -> Vec<BigInt> {
        (lo..hi)
            .map(|d| {
                let mut acc = BigInt::zero();
                for &p in sigma.preds(d as u32) {
                    acc += &state.values[p as usize];
                }
                acc
            })
            .collect()
    };
    let n_nodes = sigma.num_nodes();
    let values = if threads <= 1 || n_nodes < 2 * threads {
        sum_range(0, n_nodes)
    } else {
        let chunk = n_nodes.div_ceil(threads);
        let mut parts: Vec<Vec<BigInt>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..n_nodes)
                .step_by(chunk)
                .map(|lo| scope.spawn(move || sum_range(lo, (lo + chunk).min(n_nodes))))
                .collect();
            for h in handles {
                parts.push(h.join().expect("step worker"));
            }
        });
        parts.concat()
    };
    StateVector {
        n: state.n + 1,
        values,
    }
}

/// σ's adjacency as a sparse 0/1 linear map: row d lists the predecessors
/// feeding destination d, so state_{n+1} = M · state_n.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl LinearSystem {
    pub fn from_sigma(sigma: &SigmaGraph) -> LinearSystem {
        LinearSystem {
            n: sigma.num_nodes(),
            rows: (0..sigma.num_nodes())
                .map(|d| sigma.preds(d as u32).to_vec())
                .collect(),
        }
    }

    /// Arc lists in the forward direction: out[u] = destinations fed by u.
    pub fn out_lists(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n];
        for (d, row) in self.rows.iter().enumerate() {
            for &p in row {
                out[p as usize].push(d as u32);
            }
        }
        out
    }

    pub fn apply_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for &p in row {
                    acc += &v[p as usize];
                }
                acc
            })
            .collect()
    }

    pub fn apply_rat(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for &p in row {
                    acc += &v[p as usize];
                }
                acc
            })
            .collect()
    }
}

/// Hamiltonian-cycle counts, possibly split by boundary parity class.
#[derive(Debug, Clone)]
pub struct CountSeries {
    pub k: usize,
    pub first_n: usize,
    pub h: Vec<BigInt>,
    pub h_even: Option<Vec<BigInt>>,
    pub h_odd: Option<Vec<BigInt>>,
}

impl CountSeries {
    pub fn last_n(&self) -> usize {
        self.first_n + self.h.len() - 1
    }

    pub fn value(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(self.first_n).and_then(|i| self.h.get(i))
    }
}

/// Catalog, transfer digraph and starting state bundled for repeated runs.
pub struct Engine {
    pub catalog: SignatureCatalog,
    pub sigma: SigmaGraph,
    pub threads: usize,
}

impl Engine {
    pub fn new(k: usize) -> Engine {
        Engine::with_threads(k, 1)
    }

    pub fn with_threads(k: usize, threads: usize) -> Engine {
        let catalog = enumerate_signatures(k);
        let sigma = build_sigma(&catalog);
        Engine {
            catalog,
            sigma,
            threads: threads.max(1),
        }
    }

    pub fn initial(&self) -> Result<StateVector, CoreError> {
        let init = initial_state(&self.catalog)?;
        Ok(StateVector {
            n: init.n0,
            values: init.values,
        })
    }

    pub fn step(&self, state: &StateVector) -> StateVector {
        step_threaded(&self.sigma, state, self.threads)
    }

    pub fn hamiltonian_sum(&self, state: &StateVector) -> BigInt {
        self.catalog
            .hamiltonian_ids()
            .iter()
            .map(|&id| state.values[id as usize].clone())
            .sum()
    }

    /// (total, even-class, odd-class) sums over the Hamiltonian set.
    pub fn parity_sums(&self, state: &StateVector) -> (BigInt, BigInt, BigInt) {
        let mut even = BigInt::zero();
        let mut odd = BigInt::zero();
        for &id in self.catalog.hamiltonian_ids() {
            let v = &state.values[id as usize];
            if self.catalog.even_side(id) {
                even += v;
            } else {
                odd += v;
            }
        }
        (&even + &odd, even, odd)
    }
}

pub fn hamiltonian_counts(k: usize, n_max: usize, threads: usize) -> Result<CountSeries, CoreError> {
    let engine = Engine::with_threads(k, threads);
    let mut state = engine.initial()?;
    let first_n = state.n;
    assert!(n_max >= first_n, "need n_max ≥ 3k");
    let mut h = Vec::with_capacity(n_max - first_n + 1);
    loop {
        h.push(engine.hamiltonian_sum(&state));
        if state.n == n_max {
            break;
        }
        state = engine.step(&state);
    }
    Ok(CountSeries {
        k,
        first_n,
        h,
        h_even: None,
        h_odd: None,
    })
}

pub fn parity_split_counts(
    k: usize,
    n_max: usize,
    threads: usize,
) -> Result<CountSeries, CoreError> {
    let engine = Engine::with_threads(k, threads);
    let mut state = engine.initial()?;
    let first_n = state.n;
    assert!(n_max >= first_n, "need n_max ≥ 3k");
    let mut h = Vec::new();
    let mut h_even = Vec::new();
    let mut h_odd = Vec::new();
    loop {
        let (total, even, odd) = engine.parity_sums(&state);
        h.push(total);
        h_even.push(even);
        h_odd.push(odd);
        if state.n == n_max {
            break;
        }
        state = engine.step(&state);
    }
    Ok(CountSeries {
        k,
        first_n,
        h,
        h_even: Some(h_even),
        h_odd: Some(h_odd),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::admissible_tally;
    use crate::graph::count_ham_cycles_oracle;

    #[test]
    fn k1_pipeline_matches_oracle() {
        let series = hamiltonian_counts(1, 10, 1).unwrap();
        assert_eq!(series.first_n, 3);
        for n in 3..=10 {
            assert_eq!(
                series.value(n).unwrap(),
                &BigInt::from(count_ham_cycles_oracle(n, 1).unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn k3_step_matches_direct_tally() {
        let engine = Engine::new(3);
        let state9 = engine.initial().unwrap();
        let state10 = engine.step(&state9);
        let tally10 = admissible_tally(&engine.catalog, 10).unwrap();
        for (id, want) in tally10.iter().enumerate() {
            assert_eq!(
                state10.values[id],
                BigInt::from(*want),
                "signature {id} at n=10"
            );
        }
    }

    #[test]
    fn k3_counts_match_oracle() {
        let series = hamiltonian_counts(3, 11, 1).unwrap();
        for n in 9..=11 {
            assert_eq!(
                series.value(n).unwrap(),
                &BigInt::from(count_ham_cycles_oracle(n, 3).unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn sigma_shape() {
        let engine = Engine::new(3);
        let sigma = &engine.sigma;
        assert_eq!(sigma.num_nodes(), 1705);
        let mut zero_out = Vec::new();
        for v in 0..sigma.num_nodes() as u32 {
            let succs = sigma.succs(v);
            assert!(succs.len() <= 2);
            if succs.len() == 2 {
                assert_ne!(succs[0], succs[1], "parallel arcs at {v}");
            }
            if succs.is_empty() {
                zero_out.push(v);
            }
        }
        // The spanning-cycle signature is the one dead end: gluing a fresh
        // column onto a finished cycle is never admissible.
        assert_eq!(zero_out, vec![engine.catalog.closed_signature()]);
    }

    #[test]
    fn k3_parity_split_reference_values() {
        let series = parity_split_counts(3, 14, 1).unwrap();
        let even = series.h_even.as_ref().unwrap();
        let odd = series.h_odd.as_ref().unwrap();
        for n in 9..=14 {
            assert_eq!(
                &even[n - 9] + &odd[n - 9],
                series.h[n - 9],
                "class sums at n={n}"
            );
        }
        // h(10) = 24 splits 12+12, h(12) = 68 splits 36+32, h(14) = 88
        // splits 30+58.
        let want_even = [9u64, 12, 11, 36];
        let want_odd = [0u64, 12, 0, 32, 0, 58];
        for (i, w) in want_even.iter().enumerate() {
            assert_eq!(even[i], BigInt::from(*w), "even class at n={}", 9 + i);
        }
        for (i, w) in want_odd.iter().enumerate() {
            assert_eq!(odd[i], BigInt::from(*w), "odd class at n={}", 9 + i);
        }
    }

    #[test]
    fn threaded_step_matches_serial() {
        let engine = Engine::new(3);
        let s = engine.initial().unwrap();
        let a = step_threaded(&engine.sigma, &s, 1);
        let b = step_threaded(&engine.sigma, &s, 4);
        assert_eq!(a.values, b.values);
        assert_eq!(a.n, b.n);
    }
}
