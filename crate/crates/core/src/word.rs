//! 2x2 rational matrices and alternating words in `g = (1 1; 0 1)` and
//! `h_tau = (1 0; tau 1)`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_integer_list, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    G,
    H,
}

impl Generator {
    pub fn other(self) -> Generator {
        match self {
            Generator::G => Generator::H,
            Generator::H => Generator::G,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::G => "G",
            Generator::H => "H",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: Rational,
    pub e12: Rational,
    pub e21: Rational,
    pub e22: Rational,
}

impl Mat2 {
    pub fn new(e11: Rational, e12: Rational, e21: Rational, e22: Rational) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn from_ints(e11: i64, e12: i64, e21: i64, e22: i64) -> Self {
        let r = |v: i64| Rational::from_integer(BigInt::from(v));
        Mat2::new(r(e11), r(e12), r(e21), r(e22))
    }

    pub fn identity() -> Self {
        Mat2::new(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.e11.is_one() && self.e12.is_zero() && self.e21.is_zero() && self.e22.is_one()
    }

    pub fn det(&self) -> Rational {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(
            self.e11.clone(),
            self.e21.clone(),
            self.e12.clone(),
            self.e22.clone(),
        )
    }

    /// Inverse; `None` for singular matrices.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Mat2::new(
            &self.e22 / &det,
            -&self.e12 / &det,
            -&self.e21 / &det,
            &self.e11 / &det,
        ))
    }

    pub fn diag(a: Rational, d: Rational) -> Self {
        Mat2::new(a, Rational::zero(), Rational::zero(), d)
    }

    /// Right-multiplies in place by `g^a` (`G`) or `h_tau^a` (`H`).
    ///
    /// Uses the closed forms, so the cost does not depend on `|a|`.
    pub fn mul_gen_power(&mut self, tag: Generator, a: &Rational, tau: &Rational) {
        if a.is_zero() {
            return;
        }
        match tag {
            Generator::G => {
                self.e12 += &self.e11 * a;
                self.e22 += &self.e21 * a;
            }
            Generator::H => {
                let s = a * tau;
                self.e11 += &self.e12 * &s;
                self.e21 += &self.e22 * &s;
            }
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.e11, self.e12, self.e21, self.e22)
    }
}

/// `g^a = (1 a; 0 1)` or `h_tau^a = (1 0; a*tau 1)`.
pub fn gen_power(tag: Generator, a: &BigInt, tau: &Rational) -> Mat2 {
    let a = Rational::from_integer(a.clone());
    match tag {
        Generator::G => Mat2::new(Rational::one(), a, Rational::zero(), Rational::one()),
        Generator::H => Mat2::new(Rational::one(), Rational::zero(), a * tau, Rational::one()),
    }
}

/// An alternating word `start^{a_1} other^{a_2} start^{a_3} ...`.
///
/// The empty exponent list denotes the empty word (the identity); it only
/// appears as the right-hand side of relators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpWord {
    pub start: Generator,
    pub exponents: Vec<BigInt>,
}

impl ExpWord {
    pub fn new(start: Generator, exponents: Vec<BigInt>) -> Self {
        ExpWord { start, exponents }
    }

    pub fn from_i64(start: Generator, exponents: &[i64]) -> Self {
        ExpWord::new(start, exponents.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn empty() -> Self {
        ExpWord::new(Generator::G, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Generator used at 0-based position `i`.
    pub fn letter(&self, i: usize) -> Generator {
        if i.is_multiple_of(2) {
            self.start
        } else {
            self.start.other()
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = (Generator, &BigInt)> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, a)| (self.letter(i), a))
    }

    pub fn is_reduced(&self) -> bool {
        self.exponents.iter().all(|a| !a.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.exponents.iter().all(|a| a.is_positive())
    }

    /// `(-1)^i a_i > 0` for every 1-based index `i`.
    pub fn is_alternating_sign(&self) -> bool {
        self.exponents.iter().enumerate().all(|(i, a)| {
            if i % 2 == 0 {
                a.is_negative()
            } else {
                a.is_positive()
            }
        })
    }

    /// Formal inverse: reversed letters with negated exponents.
    pub fn inverse(&self) -> ExpWord {
        if self.is_empty() {
            return self.clone();
        }
        let last = self.letter(self.len() - 1);
        ExpWord::new(last, self.exponents.iter().rev().map(|a| -a).collect())
    }

    /// Concatenation; requires the junction to alternate.
    pub fn concat(&self, other: &ExpWord) -> Option<ExpWord> {
        if self.is_empty() {
            return Some(other.clone());
        }
        if other.is_empty() {
            return Some(self.clone());
        }
        if self.letter(self.len() - 1) == other.start {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents.extend(other.exponents.iter().cloned());
        Some(ExpWord::new(self.start, exponents))
    }

    /// Image under conjugation by `diag(1,-1)`: `g^a -> g^-a` and
    /// `h_tau^b -> h_{-tau}^b`, so the result evaluated at `-tau` equals
    /// `diag(1,-1) M diag(1,-1)` where `M` is this word at `tau`.
    pub fn conjugate_by_reflection(&self) -> ExpWord {
        let exponents = self
            .letters()
            .map(|(tag, a)| match tag {
                Generator::G => -a,
                Generator::H => a.clone(),
            })
            .collect();
        ExpWord::new(self.start, exponents)
    }

    pub fn exponents_text(&self) -> String {
        format_integer_list(&self.exponents)
    }
}

impl fmt::Display for ExpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (tag, a)) in self.letters().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = match tag {
                Generator::G => "g",
                Generator::H => "h",
            };
            if a.is_one() {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Left-to-right product of the generator powers of `w` at `tau`.
pub fn eval_word(w: &ExpWord, tau: &Rational) -> Mat2 {
    let mut m = Mat2::identity();
    for (tag, a) in w.letters() {
        m.mul_gen_power(tag, &Rational::from_integer(a.clone()), tau);
    }
    m
}
