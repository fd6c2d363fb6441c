//! Dense univariate polynomials in `tau` with integer coefficients, and 2x2
//! matrices of them for symbolic word evaluation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::word::{ExpWord, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial has nonzero constant term {0}; not divisible by tau")]
pub struct NotDivisibleByTau(pub BigInt);

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        UniPoly::new(vec![c])
    }

    /// The indeterminate `tau`.
    pub fn tau() -> Self {
        UniPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Divides by `tau`, which must divide exactly (zero constant term).
    pub fn div_by_tau(&self) -> Result<UniPoly, NotDivisibleByTau> {
        match self.coeffs.first() {
            None => Ok(UniPoly::zero()),
            Some(c) if !c.is_zero() => Err(NotDivisibleByTau(c.clone())),
            Some(_) => Ok(UniPoly::new(self.coeffs[1..].to_vec())),
        }
    }

    /// Human-readable rendering such as `7τ² − 23τ + 11`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('−');
                }
            } else {
                out.push_str(if c.is_negative() { " − " } else { " + " });
            }
            if deg == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if deg >= 1 {
                out.push('τ');
            }
            if deg >= 2 {
                out.push_str(&superscript(deg));
            }
        }
        out
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// 2x2 matrix of polynomials in `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatPoly {
    pub e11: UniPoly,
    pub e12: UniPoly,
    pub e21: UniPoly,
    pub e22: UniPoly,
}

impl MatPoly {
    pub fn identity() -> Self {
        MatPoly {
            e11: UniPoly::one(),
            e12: UniPoly::zero(),
            e21: UniPoly::zero(),
            e22: UniPoly::one(),
        }
    }

    pub fn det(&self) -> UniPoly {
        &(&self.e11 * &self.e22) - &(&self.e12 * &self.e21)
    }

    /// Right-multiplies by `g^a` or `h_tau^a`.
    pub fn mul_gen_power(&mut self, tag: Generator, a: &BigInt) {
        match tag {
            Generator::G => {
                self.e12 = &self.e12 + &self.e11.scale(a);
                self.e22 = &self.e22 + &self.e21.scale(a);
            }
            Generator::H => {
                let s = UniPoly::new(vec![BigInt::zero(), a.clone()]);
                self.e11 = &self.e11 + &(&self.e12 * &s);
                self.e21 = &self.e21 + &(&self.e22 * &s);
            }
        }
    }

    /// Specializes every entry at `tau`.
    pub fn eval(&self, tau: &Rational) -> crate::word::Mat2 {
        crate::word::Mat2::new(
            self.e11.eval(tau),
            self.e12.eval(tau),
            self.e21.eval(tau),
            self.e22.eval(tau),
        )
    }
}

/// Word product with `tau` kept symbolic.
pub fn eval_word_symbolic(w: &ExpWord) -> MatPoly {
    let mut m = MatPoly::identity();
    for (tag, a) in w.letters() {
        m.mul_gen_power(tag, a);
    }
    m
}
