//! Doubly infinite integer sequences behind the families: the two-periodic
//! `u^sigma` recurrence, Fibonacci, and the Pell pair `(H_k, P_k)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sigma must be two distinct values in {{1,2,3}}, got ({0},{1})")]
pub struct BadSigma(pub i64, pub i64);

/// An ordered pair of distinct values from `{1, 2, 3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaPair {
    s0: u8,
    s1: u8,
}

impl SigmaPair {
    pub const ALL: [SigmaPair; 6] = [
        SigmaPair { s0: 1, s1: 2 },
        SigmaPair { s0: 1, s1: 3 },
        SigmaPair { s0: 2, s1: 1 },
        SigmaPair { s0: 2, s1: 3 },
        SigmaPair { s0: 3, s1: 1 },
        SigmaPair { s0: 3, s1: 2 },
    ];

    pub fn new(s0: i64, s1: i64) -> Result<Self, BadSigma> {
        let ok = |s: i64| (1..=3).contains(&s);
        if !ok(s0) || !ok(s1) || s0 == s1 {
            return Err(BadSigma(s0, s1));
        }
        Ok(SigmaPair {
            s0: s0 as u8,
            s1: s1 as u8,
        })
    }

    pub fn sigma0(self) -> i64 {
        self.s0 as i64
    }

    pub fn sigma1(self) -> i64 {
        self.s1 as i64
    }

    /// `sigma_{k mod 2}`.
    pub fn at(self, k: i64) -> i64 {
        if k.rem_euclid(2) == 0 {
            self.sigma0()
        } else {
            self.sigma1()
        }
    }

    pub fn swapped(self) -> SigmaPair {
        SigmaPair {
            s0: self.s1,
            s1: self.s0,
        }
    }

    /// `6 / (sigma0 * sigma1)`; always 1, 2 or 3.
    pub fn n_factor(self) -> i64 {
        6 / (self.sigma0() * self.sigma1())
    }
}

impl fmt::Display for SigmaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.s0, self.s1)
    }
}

/// `u^sigma_k` from `u_0 = u_1 = 1` and
/// `u_{k-1} - 2 sigma_{k mod 2} u_k + u_{k+1} = 0`, run backwards for `k < 0`.
pub fn u_seq(sigma: SigmaPair, k: i64) -> BigInt {
    let mut prev = BigInt::one();
    let mut cur = BigInt::one();
    if k >= 1 {
        // (prev, cur) = (u_{j-1}, u_j), starting at j = 1
        for j in 1..k {
            let next = BigInt::from(2 * sigma.at(j)) * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    } else {
        // (prev, cur) = (u_{j+1}, u_j), starting at j = 0
        for j in (k + 1..=0).rev() {
            let next = BigInt::from(2 * sigma.at(j)) * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }
}

/// Fibonacci with `F_1 = F_2 = 1`, extended by `F_k = F_{k+2} - F_{k+1}`.
pub fn fib(k: i64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one()); // (F_0, F_1)
    if k >= 0 {
        for _ in 0..k {
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        a
    } else {
        // walk down: (F_j, F_{j+1}) -> (F_{j-1}, F_j)
        for _ in 0..(-k) {
            let prev = &b - &a;
            b = std::mem::replace(&mut a, prev);
        }
        a
    }
}

/// `(H_k, P_k) = (1 2; 1 1)^k (1, 0)`; negative `k` uses the exact inverse
/// `(-1 2; 1 -1)`.
pub fn pell(k: i64) -> (BigInt, BigInt) {
    let (mut h, mut p) = (BigInt::one(), BigInt::zero());
    for _ in 0..k.unsigned_abs() {
        (h, p) = if k > 0 {
            (&h + &p * 2, &h + &p)
        } else {
            (-&h + &p * 2, &h - &p)
        };
    }
    (h, p)
}

/// `P^sigma(x, y) = 1 + s0 s1 + (6/s1) x^2 + (6/s0) y^2 - 12 x y`.
pub fn markov_poly(sigma: SigmaPair, x: &BigInt, y: &BigInt) -> Rational {
    let s0 = sigma.sigma0();
    let s1 = sigma.sigma1();
    let v = BigInt::from(1 + s0 * s1) + BigInt::from(6 / s1) * x * x + BigInt::from(6 / s0) * y * y
        - BigInt::from(12) * x * y;
    Rational::from_integer(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sp(a: i64, b: i64) -> SigmaPair {
        SigmaPair::new(a, b).unwrap()
    }

    #[test]
    fn sigma_validation() {
        assert!(SigmaPair::new(2, 2).is_err());
        assert!(SigmaPair::new(0, 1).is_err());
        assert!(SigmaPair::new(1, 4).is_err());
        assert_eq!(sp(2, 3).at(-1), 3);
        assert_eq!(sp(2, 3).at(-2), 2);
        assert_eq!(SigmaPair::ALL.iter().map(|s| s.n_factor()).sum::<i64>(), 12);
    }

    #[test]
    fn printed_u_values() {
        let s = sp(1, 2);
        assert_eq!((0..8).map(|k| u_seq(s, k)).collect::<Vec<_>>(), big(&[1, 1, 3, 5, 17, 29, 99, 169]));
        let s = sp(2, 3);
        assert_eq!(
            (-5..=5).map(|k| u_seq(s, k)).collect::<Vec<_>>(),
            big(&[1427, 373, 65, 17, 3, 1, 1, 5, 19, 109, 417])
        );
        let s = sp(1, 3);
        for k in 0..=7 {
            assert_eq!(u_seq(s, k), u_seq(s, -k));
        }
    }

    #[test]
    fn fibonacci() {
        assert_eq!((1..=8).map(fib).collect::<Vec<_>>(), big(&[1, 1, 2, 3, 5, 8, 13, 21]));
        assert_eq!(fib(0), BigInt::zero());
        assert_eq!(fib(-3), BigInt::from(2));
        assert_eq!(fib(-4), BigInt::from(-3));
        for k in -30..30 {
            assert_eq!(fib(k + 2), fib(k + 1) + fib(k));
        }
    }

    #[test]
    fn pell_pairs() {
        let hs: Vec<_> = (1..=4).map(|k| pell(k).0).collect();
        let ps: Vec<_> = (1..=4).map(|k| pell(k).1).collect();
        assert_eq!(hs, big(&[1, 3, 7, 17]));
        assert_eq!(ps, big(&[1, 2, 5, 12]));
        assert_eq!(pell(0), (BigInt::one(), BigInt::zero()));
        assert_eq!(pell(-2), (BigInt::from(3), BigInt::from(-2)));
    }

    #[test]
    fn pell_negative_index_signs() {
        for k in 1..=20i64 {
            let (h, p) = pell(k);
            let (hn, pn) = pell(-k);
            let s = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(hn, &h * s);
            assert_eq!(pn, -&p * s);
        }
    }

    #[test]
    fn markov_poly_values() {
        for s in SigmaPair::ALL {
            assert!(markov_poly(s, &BigInt::one(), &BigInt::one()).is_zero());
        }
        // (u_1, u_2) = (1, 5) for sigma = (2,3); k = 1 is odd so the pair is
        // evaluated with the swapped sigma: 1 + 6 + 3 + 2*25 - 12*5 = 0.
        assert!(markov_poly(sp(3, 2), &BigInt::from(1), &BigInt::from(5)).is_zero());
        assert_eq!(markov_poly(sp(2, 3), &BigInt::from(1), &BigInt::from(5)), Rational::from_integer(BigInt::from(24)));
        assert_eq!(markov_poly(sp(2, 3), &BigInt::from(2), &BigInt::from(1)), Rational::from_integer(BigInt::from(-6)));
    }

    proptest! {
        #[test]
        fn markov_reflections(i in 0usize..6, x in -1000i64..1000, y in -1000i64..1000) {
            let s = SigmaPair::ALL[i];
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let v = markov_poly(s, &bx, &by);
            let rx = BigInt::from(2 * s.sigma1()) * &by - &bx;
            let ry = BigInt::from(2 * s.sigma0()) * &bx - &by;
            prop_assert_eq!(&v, &markov_poly(s, &rx, &by));
            prop_assert_eq!(&v, &markov_poly(s, &bx, &ry));
        }
    }
}
