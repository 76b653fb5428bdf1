//! Berlekamp–Massey over ℚ: the minimal linear recurrence satisfied by a
//! finite sequence window, computed exactly.
//!
//! When the window is at least twice as long as the true recurrence order,
//! the result is the sequence's minimal annihilator; shorter windows just
//! return the minimal recurrence of the window itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;

/// Minimal connection polynomial of `seq`, monic, as
/// c(x) = x^d − c_1 x^{d−1} − ... − c_d with
/// seq[m] = Σ_{i=1..d} c_i seq[m−i] for all d ≤ m < seq.len().
///
/// The all-zero sequence yields the constant 1 (empty recurrence).
pub fn berlekamp_massey(seq: &[BigRational]) -> Poly {
    // Connection polynomials in the classic form c(x) = 1 − Σ c_i x^i,
    // coefficient lists ascending.
    let mut c: Vec<BigRational> = vec![BigRational::one()];
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut l: usize = 0; // current recurrence order
    let mut m: usize = 1; // steps since last update of b
    let mut last_disc = BigRational::one();

    for i in 0..seq.len() {
        let mut disc = seq[i].clone();
        for j in 1..c.len().min(i + 1) {
            if !c[j].is_zero() {
                disc += &c[j] * &seq[i - j];
            }
        }
        if disc.is_zero() {
            m += 1;
            continue;
        }
        let coef = &disc / &last_disc;
        if 2 * l <= i {
            let t = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &coef * bj;
            }
            l = i + 1 - l;
            b = t;
            last_disc = disc;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &coef * bj;
            }
            m += 1;
        }
    }

    // c(x) = 1 + c_1 x + ... ; the recurrence reads
    // seq[m] = −Σ c_i seq[m−i]. Repackage as the monic characteristic
    // polynomial x^l + c_1 x^{l−1} + ... + c_l.
    let mut coeffs = vec![BigRational::zero(); l + 1];
    coeffs[l] = BigRational::one();
    for j in 1..=l {
        coeffs[l - j] = if j < c.len() {
            c[j].clone()
        } else {
            BigRational::zero()
        };
    }
    Poly::from_coeffs(coeffs)
}

/// Convenience wrapper for integer sequences.
pub fn berlekamp_massey_ints(seq: &[BigInt]) -> Poly {
    let rats: Vec<BigRational> = seq
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    berlekamp_massey(&rats)
}

const CRT_PRIMES: [u64; 6] = [
    (1 << 61) - 1, // Mersenne
    1_000_000_007,
    998_244_353,
    754_974_721,
    469_762_049,
    167_772_161,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Berlekamp–Massey over F_p; returns the monic characteristic polynomial
/// of the window as ascending coefficients mod p.
fn berlekamp_massey_mod(seq: &[u64], p: u64) -> Vec<u64> {
    let mut c: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![1];
    let mut l: usize = 0;
    let mut m: usize = 1;
    let mut last_disc = 1u64;

    for i in 0..seq.len() {
        let mut disc = seq[i] % p;
        for j in 1..c.len().min(i + 1) {
            disc = (disc + mulmod(c[j], seq[i - j], p)) % p;
        }
        if disc == 0 {
            m += 1;
            continue;
        }
        let coef = mulmod(disc, invmod(last_disc, p), p);
        let update = |c: &mut Vec<u64>, b: &[u64], m: usize| {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, 0);
            }
            for (j, &bj) in b.iter().enumerate() {
                let sub = mulmod(coef, bj, p);
                c[j + m] = (c[j + m] + p - sub) % p;
            }
        };
        if 2 * l <= i {
            let t = c.clone();
            update(&mut c, &b, m);
            l = i + 1 - l;
            b = t;
            last_disc = disc;
            m = 1;
        } else {
            update(&mut c, &b, m);
            m += 1;
        }
    }

    let mut coeffs = vec![0u64; l + 1];
    coeffs[l] = 1;
    for j in 1..=l {
        coeffs[l - j] = if j < c.len() { c[j] } else { 0 };
    }
    coeffs
}

/// Minimal monic annihilator of an integer window, computed by running
/// Berlekamp–Massey modulo a few large primes and lifting the coefficients
/// by CRT (symmetric representatives), then certifying the lift exactly.
///
/// The modular runs are only a guide: a returned polynomial always passes
/// the exact `annihilates` check over the full window, and since a modular
/// image can only lower the minimal degree, a certified candidate of the
/// modular degree is genuinely minimal.  Unlucky primes or non-integer
/// minimal coefficients fall back to the exact rational routine.
pub fn minimal_window_annihilator(seq: &[BigInt]) -> Poly {
    use num_integer::Integer;

    let mut modulus = BigInt::from(1);
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut degree: Option<usize> = None;
    let mut merged = 0usize;

    for &p in &CRT_PRIMES {
        let pb = BigInt::from(p);
        let residues: Vec<u64> = seq
            .iter()
            .map(|v| {
                let r = v.mod_floor(&pb);
                u64::try_from(&r).expect("residue fits u64")
            })
            .collect();
        let char_mod = berlekamp_massey_mod(&residues, p);
        let d = char_mod.len() - 1;
        match degree {
            Some(cur) if d < cur => continue, // unlucky prime, skip
            Some(cur) if d > cur => {
                // Every earlier prime was unlucky; start over from here.
                modulus = BigInt::from(1);
                lifted = vec![BigInt::from(0); d + 1];
                degree = Some(d);
                merged = 0;
            }
            None => {
                lifted = vec![BigInt::from(0); d + 1];
                degree = Some(d);
            }
            _ => {}
        }

        // Incremental CRT merge: x ← x + M·t with t ≡ (r − x)/M (mod p).
        let m_mod_p = u64::try_from(&modulus.mod_floor(&pb)).unwrap();
        let m_inv = invmod(m_mod_p, p);
        let before = lifted.clone();
        for (x, &r) in lifted.iter_mut().zip(&char_mod) {
            let x_mod_p = u64::try_from(&x.mod_floor(&pb)).unwrap();
            let t = mulmod((r + p - x_mod_p) % p, m_inv, p);
            *x += &modulus * BigInt::from(t);
        }
        modulus *= &pb;
        let half = &modulus / 2;
        for x in lifted.iter_mut() {
            if &*x > &half {
                *x -= &modulus;
            }
        }
        merged += 1;

        if merged >= 2 && lifted == before {
            let candidate = Poly::from_bigints(&lifted);
            if annihilates(&candidate, seq, 0) {
                return candidate;
            }
        }
    }

    // Last resort: exact rational arithmetic.
    berlekamp_massey_ints(seq)
}

/// Does `p` (monic, degree d) annihilate `seq` starting at `from`? I.e.
/// Σ_j p_j · seq[m+j] = 0 for every m with from ≤ m and m+d < seq.len().
pub fn annihilates(p: &Poly, seq: &[BigInt], from: usize) -> bool {
    let d = p.degree();
    if p.is_zero() {
        return false;
    }
    let coeffs = p.coeffs();
    let mut m = from;
    while m + d < seq.len() {
        let mut acc = BigRational::zero();
        for (j, pj) in coeffs.iter().enumerate() {
            if !pj.is_zero() {
                acc += pj * BigRational::from_integer(seq[m + j].clone());
            }
        }
        if !acc.is_zero() {
            return false;
        }
        m += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fibonacci_recurrence() {
        let seq = ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        let p = berlekamp_massey_ints(&seq);
        // x² − x − 1
        assert_eq!(p, Poly::from_i64s(&[-1, -1, 1]));
        assert!(annihilates(&p, &seq, 0));
    }

    #[test]
    fn constant_sequence() {
        let seq = ints(&[7, 7, 7, 7, 7, 7]);
        let p = berlekamp_massey_ints(&seq);
        assert_eq!(p, Poly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn zero_sequence() {
        let seq = ints(&[0, 0, 0, 0]);
        let p = berlekamp_massey_ints(&seq);
        assert!(p.is_one());
    }

    #[test]
    fn geometric_with_transient() {
        // 5·2^n plus a one-off spike at n=0: minimal recurrence of the
        // window picks up the spike through a longer polynomial, so feed
        // the smooth tail only.
        let seq = ints(&[9, 10, 20, 40, 80, 160, 320]);
        let tail = berlekamp_massey_ints(&seq[1..]);
        assert_eq!(tail, Poly::from_i64s(&[-2, 1]));
        assert!(annihilates(&tail, &seq, 1));
        assert!(!annihilates(&tail, &seq, 0));
    }

    #[test]
    fn order_two_with_rationals() {
        // seq[m] = (1/2)·seq[m−1] + seq[m−2], exact over ℚ.
        let mut seq = vec![
            BigRational::from_integer(BigInt::from(2)),
            BigRational::from_integer(BigInt::from(1)),
        ];
        for i in 2..12 {
            let v = &seq[i - 1] / BigInt::from(2) + &seq[i - 2];
            seq.push(v);
        }
        let p = berlekamp_massey(&seq);
        assert_eq!(p.degree(), 2);
        // x² − x/2 − 1
        let c = p.coeffs();
        assert_eq!(c[2], BigRational::one());
        assert_eq!(
            c[1].to_f64().unwrap(),
            -0.5
        );
        assert_eq!(c[0], -BigRational::one());
    }

    #[test]
    fn modular_path_matches_exact_bm() {
        let mut seq = ints(&[1, 4, 2]);
        for i in 3..20 {
            let v = 2 * &seq[i - 1] - 3 * &seq[i - 3];
            seq.push(v);
        }
        assert_eq!(minimal_window_annihilator(&seq), berlekamp_massey_ints(&seq));
    }

    #[test]
    fn modular_path_handles_large_values_and_coefficients() {
        // a_n = 10^6·a_{n−1} + a_{n−2}: values blow up fast, and the
        // recurrence coefficient exceeds any single small residue.
        let big = BigInt::from(1_000_000);
        let mut seq = ints(&[1, 1]);
        for i in 2..10 {
            let v = &big * &seq[i - 1] + &seq[i - 2];
            seq.push(v);
        }
        let p = minimal_window_annihilator(&seq);
        assert_eq!(p.degree(), 2);
        assert!(annihilates(&p, &seq, 0));
        assert_eq!(p.coeff(1), BigRational::from_integer((-1_000_000).into()));
    }

    #[test]
    fn modular_path_zero_sequence() {
        assert!(minimal_window_annihilator(&ints(&[0, 0, 0, 0, 0])).is_one());
    }

    #[test]
    fn window_twice_degree_recovers_exactly() {
        // Order-3 recurrence a_n = 2a_{n−1} − 3a_{n−3}; 12 ≥ 2·3 terms.
        let mut seq = ints(&[1, 4, 2]);
        for i in 3..12 {
            let v = 2 * &seq[i - 1] - 3 * &seq[i - 3];
            seq.push(v);
        }
        let p = berlekamp_massey_ints(&seq);
        assert_eq!(p, Poly::from_i64s(&[3, 0, -2, 1]));
    }
}
