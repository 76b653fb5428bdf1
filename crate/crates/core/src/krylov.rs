//! Exact minimal polynomials of transfer systems via Krylov iteration.
//!
//! The transition matrices we care about are sparse 0/1 matrices given as
//! predecessor lists ([`LinearSystem`]), small enough (dimension at most a
//! couple of hundred once restricted to a single strongly connected
//! component) that dense rational linear algebra is comfortably exact.
//!
//! [`min_ann_of_vector`] computes the minimal monic polynomial annihilating
//! a single Krylov orbit; [`matrix_minpoly`] takes the LCM over the standard
//! basis, which is the minimal polynomial of the whole matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::transfer::LinearSystem;

fn zero_vec(n: usize) -> Vec<BigRational> {
    vec![BigRational::zero(); n]
}

fn unit_vec(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = zero_vec(n);
    v[i] = BigRational::one();
    v
}

fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Evaluates `p(M) v` by Horner's rule, using one matrix application per
/// coefficient.
pub fn apply_poly(m: &LinearSystem, p: &Poly, v: &[BigRational]) -> Vec<BigRational> {
    if p.is_zero() {
        return zero_vec(v.len());
    }
    let d = p.degree();
    let mut r: Vec<BigRational> = v.iter().map(|x| x * p.coeff(d)).collect();
    for j in (0..d).rev() {
        r = m.apply_rat(&r);
        let c = p.coeff(j);
        if !c.is_zero() {
            for (ri, vi) in r.iter_mut().zip(v) {
                *ri += vi * &c;
            }
        }
    }
    r
}

/// Minimal monic polynomial `q` with `q(M) v = 0`.
///
/// Walks the Krylov sequence `v, Mv, M²v, …`, keeping an echelonized basis
/// of the span visited so far together with the polynomial that produced
/// each basis vector from `v`.  The first Krylov vector that reduces to zero
/// hands us the dependency polynomial directly, and it is monic of degree
/// equal to the step count, hence minimal.
pub fn min_ann_of_vector(m: &LinearSystem, v: &[BigRational]) -> Poly {
    let n = m.n;
    assert_eq!(v.len(), n);
    // (pivot index, reduced vector, producing polynomial)
    let mut basis: Vec<(usize, Vec<BigRational>, Poly)> = Vec::new();
    let mut krylov = v.to_vec();
    for step in 0..=n {
        let mut w = krylov.clone();
        let mut q = Poly::x_power(step);
        for (pivot, bvec, bpoly) in &basis {
            if w[*pivot].is_zero() {
                continue;
            }
            let c = &w[*pivot] / &bvec[*pivot];
            for (wi, bi) in w.iter_mut().zip(bvec) {
                *wi -= bi * &c;
            }
            q = q.sub(&bpoly.scale(&c));
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return q,
            Some(pivot) => basis.push((pivot, w, q)),
        }
        krylov = m.apply_rat(&krylov);
    }
    unreachable!("Krylov sequence in dimension {n} must become dependent within {n} steps");
}

/// Minimal polynomial of the matrix: the least common multiple of the
/// minimal annihilators of the standard basis vectors.
///
/// Basis vectors already annihilated by the running LCM are skipped via a
/// direct Horner evaluation, which keeps the number of full Krylov runs
/// down to the number of invariant factors.  The result is certified at the
/// end by checking `p(M) eᵢ = 0` for every `i`; the dimensions we feed in
/// make that exact check cheap.
pub fn matrix_minpoly(m: &LinearSystem) -> Poly {
    let n = m.n;
    let mut p = Poly::one();
    for i in 0..n {
        let e = unit_vec(n, i);
        if is_zero_vec(&apply_poly(m, &p, &e)) {
            continue;
        }
        let q = min_ann_of_vector(m, &e);
        p = p.lcm(&q);
    }
    for i in 0..n {
        let e = unit_vec(n, i);
        assert!(
            is_zero_vec(&apply_poly(m, &p, &e)),
            "minimal polynomial candidate fails to annihilate basis vector {i}"
        );
    }
    p
}

/// Minimal polynomial with any `x^e` factor split off, returned as
/// `(stripped, e)`.  The power of `x` corresponds to a finite transient:
/// the stripped part annihilates every coordinate sequence once the first
/// `e` steps have passed.
pub fn stripped_matrix_minpoly(m: &LinearSystem) -> (Poly, usize) {
    matrix_minpoly(m).strip_power_of_x()
}

/// Exact integer state windows `v, Mv, M²v, …` of length `len`.
pub fn iterate_big(m: &LinearSystem, v0: &[BigInt], len: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::with_capacity(len);
    let mut cur = v0.to_vec();
    for _ in 0..len {
        let next = m.apply_big(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: Vec<Vec<u32>>) -> LinearSystem {
        LinearSystem { n: rows.len(), rows }
    }

    #[test]
    fn identity_matrix() {
        let m = sys(vec![vec![0], vec![1]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn zero_matrix_one_dim() {
        let m = sys(vec![vec![]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[0, 1]));
    }

    #[test]
    fn nilpotent_jordan_block() {
        // out[0] = v[1], out[1] = 0: squares to zero but is not zero.
        let m = sys(vec![vec![1], vec![]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[0, 0, 1]));
        let (stripped, e) = stripped_matrix_minpoly(&m);
        assert!(stripped.is_one());
        assert_eq!(e, 2);
    }

    #[test]
    fn fibonacci_companion() {
        let m = sys(vec![vec![1], vec![0, 1]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[-1, -1, 1]));
    }

    #[test]
    fn three_cycle() {
        let m = sys(vec![vec![2], vec![0], vec![1]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[-1, 0, 0, 1]));
    }

    #[test]
    fn block_diagonal_lcm() {
        // A 2-cycle next to a 3-cycle: lcm(x²−1, x³−1) = x⁴+x³−x−1.
        let m = sys(vec![vec![1], vec![0], vec![4], vec![2], vec![3]]);
        assert_eq!(matrix_minpoly(&m), Poly::from_i64s(&[-1, -1, 0, 1, 1]));
    }

    #[test]
    fn vector_annihilator_divides_matrix_minpoly() {
        let m = sys(vec![vec![1, 2], vec![0], vec![0, 2], vec![]]);
        let p = matrix_minpoly(&m);
        for i in 0..m.n {
            let q = min_ann_of_vector(&m, &unit_vec(m.n, i));
            assert!(p.divisible_by(&q), "e_{i} annihilator must divide the minpoly");
        }
    }

    #[test]
    fn apply_poly_matches_iteration() {
        let m = sys(vec![vec![1], vec![0, 1]]);
        let p = Poly::from_i64s(&[2, -3, 1]); // x² − 3x + 2
        let v = unit_vec(2, 0);
        let mv = m.apply_rat(&v);
        let mmv = m.apply_rat(&mv);
        let want: Vec<BigRational> = (0..2)
            .map(|i| {
                &mmv[i] - BigRational::from_integer(3.into()) * &mv[i]
                    + BigRational::from_integer(2.into()) * &v[i]
            })
            .collect();
        assert_eq!(apply_poly(&m, &p, &v), want);
    }
}
