//! The fixed monotone approximation `φ_n(u) = min(⌊2ⁿu⌋ / 2ⁿ, n)` of a
//! non-negative value, and its closed-form antiderivative.
//!
//! `φ_n ≤ φ_{n+1} ≤ id` on `[0, ∞)` and `φ_0 ≡ 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{pow2, Rational};

fn cap(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `φ_n(u)` for `u ≥ 0`.
pub fn level_floor(u: &Rational, n: u32) -> Rational {
    let c = cap(n);
    if *u >= c {
        return c;
    }
    if !u.is_positive() {
        return Rational::zero();
    }
    grid_point((u.numer() << n as usize).div_floor(u.denom()), n)
}

/// `k / 2ⁿ` in lowest terms, for `k ≥ 0`.
fn grid_point(k: BigInt, n: u32) -> Rational {
    let shift = k.trailing_zeros().map_or(n, |z| z.min(n as u64) as u32);
    Rational::new_raw(k >> shift as usize, BigInt::one() << (n - shift) as usize)
}

/// `lim_{v↑u} φ_n(v)`, the value a decreasing affine piece takes on the
/// half-open interval starting where it equals `u`.
pub fn level_floor_left(u: &Rational, n: u32) -> Rational {
    if !u.is_positive() {
        return Rational::zero();
    }
    let c = cap(n);
    if *u > c {
        return c;
    }
    let (k, r) = (u.numer() << n as usize).div_mod_floor(u.denom());
    grid_point(if r.is_zero() { k - BigInt::one() } else { k }, n)
}

/// `Φ_n(U) = ∫_0^U φ_n(u) du` for `U ≥ 0`.
pub fn level_antiderivative(upper: &Rational, n: u32) -> Rational {
    debug_assert!(!upper.is_negative());
    let c = cap(n);
    if *upper > c {
        return level_antiderivative(&c, n) + &c * (upper - &c);
    }
    let s = pow2(n);
    let k = (upper * &s).floor();
    let two = Rational::from_integer(2.into());
    // Σ_{j<K} (j/s)(1/s) + (K/s)(U − K/s)
    &k * (&k - Rational::one()) / (two * &s * &s) + &k * (upper - &k / &s) / &s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn floors_to_grid_and_caps() {
        assert_eq!(level_floor(&rat(3, 4), 1), rat(1, 2));
        assert_eq!(level_floor(&rat(3, 4), 2), rat(3, 4));
        assert_eq!(level_floor(&int(5), 2), int(2));
        assert_eq!(level_floor(&int(7), 0), int(0));
        assert_eq!(level_floor(&rat(1, 3), 3), rat(2, 8));
    }

    #[test]
    fn left_limits() {
        assert_eq!(level_floor_left(&rat(1, 2), 1), int(0));
        assert_eq!(level_floor_left(&rat(3, 4), 1), rat(1, 2));
        assert_eq!(level_floor_left(&int(2), 2), rat(7, 4));
        assert_eq!(level_floor_left(&int(3), 2), int(2));
        assert_eq!(level_floor_left(&int(0), 3), int(0));
    }

    #[test]
    fn antiderivative_matches_riemann_sum_on_grid() {
        // on a grid of width 2^-n, φ_n is constant on each cell
        for n in 0..6u32 {
            for upper_num in 0..=(8 * (1 << n)) {
                let upper = Rational::new(upper_num.into(), (1i64 << n).into());
                let width = Rational::new(1.into(), (1i64 << n).into());
                let mut sum = Rational::zero();
                let mut x = Rational::zero();
                while x < upper {
                    sum += level_floor(&x, n) * &width;
                    x += &width;
                }
                assert_eq!(level_antiderivative(&upper, n), sum, "n={n} U={upper}");
            }
        }
    }

    #[test]
    fn antiderivative_off_grid() {
        // ∫_0^{3/4} φ_1 = 0·1/2 + 1/2·1/4
        assert_eq!(level_antiderivative(&rat(3, 4), 1), rat(1, 8));
        // ∫_0^1 φ_n = (2^n − 1)/2^{n+1}
        for n in 1..=20u32 {
            let s = 1i64 << n;
            assert_eq!(level_antiderivative(&int(1), n), rat(s - 1, 2 * s));
        }
    }
}
