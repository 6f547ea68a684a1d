//! Closed-form quantities: the full-rank success bound, the number of
//! matrices of given rank, and Wilson score intervals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Lower bounds on the probability that a uniform `ℓ × t` matrix over
/// `F_{q^m}` of `F_q`-rank `t` also has `F_{q^m}`-rank `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessBound {
    /// `∏_{i=0}^{t-1} (1 - q^{m(i-ℓ)})`
    pub product: BigRational,
    /// `1 - t·q^{m(t-1-ℓ)}`
    pub simple: BigRational,
}

impl SuccessBound {
    pub fn product_f64(&self) -> f64 {
        self.product.to_f64().unwrap_or(f64::NAN)
    }

    pub fn simple_f64(&self) -> f64 {
        self.simple.to_f64().unwrap_or(f64::NAN)
    }
}

fn big_pow(q: u32, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

pub fn success_lower_bound(t: usize, ell: usize, m: u32, q: u32) -> Result<SuccessBound> {
    if t > ell {
        return Err(Error::InvalidParameter(format!(
            "bound needs ell >= t, got ell = {ell}, t = {t}"
        )));
    }
    if q < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "bad field parameters q = {q}, m = {m}"
        )));
    }
    let one = BigRational::one();
    let mut product = one.clone();
    for i in 0..t {
        let denom = big_pow(q, m as u64 * (ell - i) as u64);
        product *= &one - BigRational::new(BigInt::one(), denom);
    }
    let simple = if t == 0 {
        one
    } else {
        let denom = big_pow(q, m as u64 * (ell + 1 - t) as u64);
        &one - BigRational::new(BigInt::from(t), denom)
    };
    Ok(SuccessBound { product, simple })
}

/// Number of `rows × cols` matrices over `F_q` of rank `t`:
/// `∏_{i<t} (q^cols - q^i)(q^rows - q^i) / (q^t - q^i)`.
pub fn count_matrices_rank(rows: usize, cols: usize, t: usize, q: u32) -> Result<BigUint> {
    if t > rows.min(cols) {
        return Err(Error::InvalidParameter(format!(
            "rank {t} exceeds min({rows}, {cols})"
        )));
    }
    let p = |e: usize| num_traits::pow(BigUint::from(q), e);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..t {
        num *= (p(cols) - p(i)) * (p(rows) - p(i));
        den *= p(t) - p(i);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank over F_2 of a matrix given as row bitmasks.
    fn gf2_rank(mut rows: Vec<u32>) -> usize {
        let mut rank = 0;
        for bit in 0..32 {
            if let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> bit) & 1 == 1) {
                rows.swap(rank, p);
                for i in 0..rows.len() {
                    if i != rank && (rows[i] >> bit) & 1 == 1 {
                        rows[i] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn counting_matches_enumeration() {
        let mut by_rank = [0u64; 3];
        for x in 0u32..16 {
            by_rank[gf2_rank(vec![x & 3, x >> 2])] += 1;
        }
        assert_eq!(by_rank[1], 9);
        for (t, &count) in by_rank.iter().enumerate() {
            assert_eq!(
                count_matrices_rank(2, 2, t, 2).unwrap(),
                BigUint::from(count)
            );
        }
        let total: BigUint = (0..=3)
            .map(|t| count_matrices_rank(3, 3, t, 2).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(512u32));
        assert_eq!(count_matrices_rank(5, 7, 0, 3).unwrap(), BigUint::one());
        assert!(count_matrices_rank(2, 3, 3, 2).is_err());
    }

    #[test]
    fn bound_values() {
        let b = success_lower_bound(0, 3, 4, 2).unwrap();
        assert!(b.product.is_one() && b.simple.is_one());
        let b = success_lower_bound(2, 2, 4, 2).unwrap();
        assert_eq!(b.product, BigRational::new(3825.into(), 4096.into()));
        assert!((b.product_f64() - 0.933837890625).abs() < 1e-15);
        assert!(b.product >= b.simple);
        assert!(success_lower_bound(3, 2, 4, 2).is_err());
    }

    #[test]
    fn bounds_ordered_and_monotone_in_ell() {
        for q in [2, 3] {
            for m in 1..6 {
                for t in 0..5 {
                    let mut prev = None;
                    for ell in t..t + 4 {
                        let b = success_lower_bound(t, ell, m, q).unwrap();
                        assert!(b.product >= b.simple);
                        if let Some(p) = prev {
                            assert!(b.simple >= p);
                        }
                        prev = Some(b.simple);
                    }
                }
            }
        }
    }

    #[test]
    fn wilson_contains_point_estimate() {
        let (lo, hi) = wilson_interval(990, 1000, Z_99);
        assert!(lo < 0.99 && 0.99 < hi);
        assert!(lo > 0.97 && hi < 0.997);
        assert_eq!(wilson_interval(0, 0, Z_99), (0.0, 1.0));
        let (lo, hi) = wilson_interval(100, 100, Z_99);
        assert!(lo > 0.9 && hi == 1.0);
    }
}
