//! Hand-wired relation systems used to certify the recurrence machinery.
//!
//! The 13-node block is the smallest transfer component with a genuinely
//! interesting minimal polynomial (x⁶−x³−x−1 after stripping transients);
//! the cascade embeds two copies of it behind a chain of trivial relay
//! nodes, so that the output of one copy drives the other and the composed
//! characteristic polynomial picks up the square of the block polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::transfer::LinearSystem;

/// Predecessor lists of the 13-node block: entry `d` lists the sources
/// feeding node `d`, i.e. u_d(n+1) = Σ u_s(n) over listed `s`.
const BLOCK13: [&[u32]; 13] = [
    &[10, 11],
    &[0, 8],
    &[1, 6],
    &[2],
    &[3],
    &[4],
    &[5],
    &[4],
    &[7],
    &[7],
    &[9, 12],
    &[10],
    &[11],
];

pub fn block13_system() -> LinearSystem {
    LinearSystem {
        n: BLOCK13.len(),
        rows: BLOCK13.iter().map(|r| r.to_vec()).collect(),
    }
}

fn push_block(rows: &mut Vec<Vec<u32>>, block: &[&[u32]]) -> u32 {
    let base = rows.len() as u32;
    for preds in block {
        rows.push(preds.iter().map(|&p| p + base).collect());
    }
    base
}

fn push_cycle(rows: &mut Vec<Vec<u32>>, len: u32) -> u32 {
    let base = rows.len() as u32;
    for i in 0..len {
        rows.push(vec![base + (i + len - 1) % len]);
    }
    base
}

/// The cascade: nine strongly connected blocks wired into a DAG.
///
/// Two 3-cycles feed both 13-blocks and the final 13-block directly; the
/// first two 13-blocks drain through a chain of four relay nodes into the
/// final one.  Only the second 13-block carries a nonzero initial value,
/// so the two 3-cycles and the first 13-block stay identically zero.
///
/// Returns the system, the initial state, and the target nodes (the final
/// block).
pub fn cascade_system() -> (LinearSystem, Vec<BigInt>, Vec<u32>) {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let c1 = push_cycle(&mut rows, 3);
    let c2 = push_cycle(&mut rows, 3);
    let b1 = push_block(&mut rows, &BLOCK13);
    let b2 = push_block(&mut rows, &BLOCK13);
    let relay: Vec<u32> = (0..4)
        .map(|i| {
            let id = rows.len() as u32;
            rows.push(if i == 0 { vec![b1, b2] } else { vec![id - 1] });
            id
        })
        .collect();
    let b3 = push_block(&mut rows, &BLOCK13);
    // Cycle outputs fan out to every 13-block; the relay chain ends at the
    // last one.
    for target in [b1, b2, b3] {
        rows[target as usize].push(c1);
        rows[target as usize].push(c2);
    }
    rows[b3 as usize].push(*relay.last().unwrap());
    for row in &mut rows {
        row.sort_unstable();
    }

    let n = rows.len();
    let mut initial = vec![BigInt::zero(); n];
    initial[b2 as usize] = BigInt::one();
    let targets: Vec<u32> = (b3..b3 + BLOCK13.len() as u32).collect();
    (LinearSystem { n, rows }, initial, targets)
}

/// The condensation the cascade is built to have, for shape checks:
/// 0,1 are the cycles; 2,3 the driven blocks; 4–7 the relay chain; 8 the
/// final block.
pub fn cascade_dag() -> Vec<Vec<u32>> {
    vec![
        vec![2, 3, 8],
        vec![2, 3, 8],
        vec![4],
        vec![4],
        vec![5],
        vec![6],
        vec![7],
        vec![8],
        vec![],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berlekamp::{annihilates, berlekamp_massey_ints};
    use crate::krylov::{iterate_big, matrix_minpoly, stripped_matrix_minpoly};
    use crate::poly::Poly;
    use crate::scc::{digraph_isomorphic, scc_decompose};

    fn block_poly() -> Poly {
        Poly::from_i64s(&[-1, -1, 0, -1, 0, 0, 1])
    }

    #[test]
    fn block13_degree_profile() {
        let m = block13_system();
        let mut indegs: Vec<usize> = m.rows.iter().map(Vec::len).collect();
        indegs.sort_unstable();
        assert_eq!(indegs, [1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2]);
        let dec = scc_decompose(&m.out_lists());
        assert_eq!(dec.num_comps(), 1, "the block must be strongly connected");
    }

    #[test]
    fn block13_minimal_polynomial() {
        let (stripped, transient) = stripped_matrix_minpoly(&block13_system());
        assert_eq!(stripped, block_poly());
        assert!(transient > 0, "the block has a genuine transient");
    }

    #[test]
    fn block13_coordinates_obey_recurrence() {
        let m = block13_system();
        let (stripped, transient) = stripped_matrix_minpoly(&m);
        let mut v0 = vec![BigInt::zero(); m.n];
        v0[0] = BigInt::one();
        let windows = iterate_big(&m, &v0, 40);
        for w in 0..m.n {
            let seq: Vec<BigInt> = windows.iter().map(|row| row[w].clone()).collect();
            assert!(
                annihilates(&stripped, &seq, transient),
                "coordinate {w} must satisfy the stripped recurrence past the transient"
            );
        }
    }

    #[test]
    fn block13_sequence_annihilator_divides_minpoly() {
        let m = block13_system();
        let p = matrix_minpoly(&m);
        let mut v0 = vec![BigInt::zero(); m.n];
        v0[0] = BigInt::one();
        let windows = iterate_big(&m, &v0, 40);
        let seq: Vec<BigInt> = windows.iter().map(|row| row[0].clone()).collect();
        let bm = berlekamp_massey_ints(&seq);
        assert!(p.divisible_by(&bm));
    }

    #[test]
    fn cascade_condensation_shape() {
        let (m, initial, targets) = cascade_system();
        assert_eq!(m.n, 49);
        assert_eq!(initial.iter().filter(|v| !v.is_zero()).count(), 1);
        assert_eq!(targets.len(), 13);
        let dec = scc_decompose(&m.out_lists());
        assert_eq!(dec.num_comps(), 9);
        let mut sizes: Vec<usize> = dec.comps.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 1, 1, 1, 3, 3, 13, 13, 13]);
        let cond: Vec<Vec<u32>> = dec.cond_out.clone();
        assert!(digraph_isomorphic(&cond, &cascade_dag()));
    }
}
