//! Half-relations: exponent tuples `(a_1, ..., a_l)` whose alternating word
//! `M = g^{a_1} h^{a_2} ...` satisfies `tau*c12(M) = c21(M)` (odd `l`) or
//! `c11(M) = c22(M)` (even `l`), and the relations they induce.
//!
//! A half-relation yields the symmetric identity
//! `g^{a_1} h^{a_2} ... = h^{a_l} g^{a_{l-1}} ...`, a relation in the group
//! when all `a_i != 0`, in the semigroup `S(1, tau)` when all `a_i > 0`, and
//! (after conjugating by `diag(1,-1)`) in `S(1, -tau)` when the signs
//! alternate as `(-1)^i a_i > 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{eval_word_symbolic, NotDivisibleByTau, UniPoly};
use crate::rational::{format_integer_list, Rational};
use crate::word::{eval_word, ExpWord, Generator, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HalfRelError {
    #[error("half-relation candidates need at least one exponent")]
    Empty,
    #[error("({seq}) is not a half-relation for tau = {tau}")]
    NotHalfRelation { seq: String, tau: Rational },
    #[error("sign pattern {0} does not give a semigroup relation")]
    SignPattern(RelationKind),
    #[error(transparent)]
    Divisibility(#[from] NotDivisibleByTau),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfRelCandidate(Vec<BigInt>);

impl HalfRelCandidate {
    pub fn new(exponents: Vec<BigInt>) -> Result<Self, HalfRelError> {
        if exponents.is_empty() {
            return Err(HalfRelError::Empty);
        }
        Ok(HalfRelCandidate(exponents))
    }

    /// Panics on an empty slice.
    pub fn from_i64(exponents: &[i64]) -> Self {
        Self::new(exponents.iter().map(|&a| BigInt::from(a)).collect())
            .expect("non-empty exponent list")
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word `g^{a_1} h^{a_2} ...`.
    pub fn word(&self) -> ExpWord {
        ExpWord::new(Generator::G, self.0.clone())
    }

    /// The mirrored word `h^{a_l} g^{a_{l-1}} ...`.
    pub fn mirror_word(&self) -> ExpWord {
        ExpWord::new(Generator::H, self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for HalfRelCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_integer_list(&self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    GroupNontrivial,
    SemigroupAtTau,
    SemigroupAtMinusTau,
    Trivial,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::GroupNontrivial => "GroupNontrivial",
            RelationKind::SemigroupAtTau => "SemigroupAtTau",
            RelationKind::SemigroupAtMinusTau => "SemigroupAtMinusTau",
            RelationKind::Trivial => "Trivial",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            RelationKind::GroupNontrivial,
            RelationKind::SemigroupAtTau,
            RelationKind::SemigroupAtMinusTau,
            RelationKind::Trivial,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }

    pub fn is_nontrivial(self) -> bool {
        self != RelationKind::Trivial
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluated half-relation condition; zero iff `c` is a half-relation.
pub fn defect(c: &HalfRelCandidate, tau: &Rational) -> Rational {
    defect_of_matrix(&eval_word(&c.word(), tau), c.len(), tau)
}

pub(crate) fn defect_of_matrix(m: &Mat2, len: usize, tau: &Rational) -> Rational {
    if len % 2 == 1 {
        tau * &m.e12 - &m.e21
    } else {
        &m.e11 - &m.e22
    }
}

/// The defect with `tau` symbolic.
pub fn symbolic_defect(c: &HalfRelCandidate) -> UniPoly {
    let m = eval_word_symbolic(&c.word());
    if c.len() % 2 == 1 {
        &(&UniPoly::tau() * &m.e12) - &m.e21
    } else {
        &m.e11 - &m.e22
    }
}

/// `P_l(a_1, ..., a_l; tau)`: the symbolic defect divided by `tau`.
pub fn poly_hr(c: &HalfRelCandidate) -> Result<UniPoly, HalfRelError> {
    Ok(symbolic_defect(c).div_by_tau()?)
}

pub fn is_half_relation(c: &HalfRelCandidate, tau: &Rational) -> bool {
    defect(c, tau).is_zero()
}

pub fn negate(c: &HalfRelCandidate) -> HalfRelCandidate {
    HalfRelCandidate(c.0.iter().map(|a| -a).collect())
}

/// Most specific relation type the sign pattern of `c` supports.
pub fn classify_signs(c: &HalfRelCandidate) -> RelationKind {
    let w = c.word();
    if !w.is_reduced() {
        RelationKind::Trivial
    } else if w.is_positive() {
        RelationKind::SemigroupAtTau
    } else if w.is_alternating_sign() || negate(c).word().is_alternating_sign() {
        RelationKind::SemigroupAtMinusTau
    } else {
        RelationKind::GroupNontrivial
    }
}

/// A pair of words with equal value at `eval_tau`.
///
/// `tau` is the parameter the certificate is about; `eval_tau` differs from it
/// only for witnesses transported through the `diag(1,-1)` conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub tau: Rational,
    pub eval_tau: Rational,
    pub lhs: ExpWord,
    pub rhs: ExpWord,
    /// `lhs * rhs^-1`, a word evaluating to the identity.
    pub relator: ExpWord,
    pub kind: RelationKind,
    pub value: Mat2,
    pub verified: bool,
}

impl RelationWitness {
    fn assemble(tau: Rational, eval_tau: Rational, lhs: ExpWord, rhs: ExpWord, kind: RelationKind) -> Self {
        let relator = lhs
            .concat(&rhs.inverse())
            .unwrap_or_else(|| relator_fallback(&lhs, &rhs));
        let value = eval_word(&lhs, &eval_tau);
        let mut w = RelationWitness {
            tau,
            eval_tau,
            lhs,
            rhs,
            relator,
            kind,
            value,
            verified: false,
        };
        w.verified = w.check();
        w
    }

    /// A relator `w = 1` given verbatim, e.g. `(g h^-1)^3` at `tau = 3`.
    pub fn from_relator(tau: Rational, relator: ExpWord) -> Self {
        let kind = if relator.is_empty() || !relator.is_reduced() {
            RelationKind::Trivial
        } else {
            RelationKind::GroupNontrivial
        };
        Self::assemble(tau.clone(), tau, relator, ExpWord::empty(), kind)
    }

    /// Recomputes both sides and the relator from the stored words.
    pub fn check(&self) -> bool {
        let l = eval_word(&self.lhs, &self.eval_tau);
        let r = eval_word(&self.rhs, &self.eval_tau);
        l == r && l == self.value && eval_word(&self.relator, &self.eval_tau).is_identity()
    }

    /// Transports the witness to `-eval_tau` by conjugating with `diag(1,-1)`.
    pub fn reflected(&self) -> Self {
        Self::assemble(
            -&self.tau,
            -&self.eval_tau,
            self.lhs.conjugate_by_reflection(),
            self.rhs.conjugate_by_reflection(),
            self.kind,
        )
    }

    /// Both sides use only positive exponents.
    pub fn is_positive(&self) -> bool {
        self.lhs.is_positive() && self.rhs.is_positive()
    }
}

// Only reachable when the two words do not alternate at the junction; fall
// back to the relator with letters merged.
fn relator_fallback(lhs: &ExpWord, rhs: &ExpWord) -> ExpWord {
    let inv = rhs.inverse();
    let mut exps = lhs.exponents.clone();
    let mut rest = inv.exponents.into_iter();
    if let (Some(last), Some(first)) = (exps.last_mut(), rest.next()) {
        *last += first;
    }
    exps.extend(rest);
    ExpWord::new(lhs.start, exps)
}

/// The symmetric relation `g^{a_1} h^{a_2} ... = h^{a_l} g^{a_{l-1}} ...`.
pub fn build_relation(c: &HalfRelCandidate, tau: &Rational) -> Result<RelationWitness, HalfRelError> {
    if !is_half_relation(c, tau) {
        return Err(HalfRelError::NotHalfRelation {
            seq: c.to_string(),
            tau: tau.clone(),
        });
    }
    Ok(RelationWitness::assemble(
        tau.clone(),
        tau.clone(),
        c.word(),
        c.mirror_word(),
        classify_signs(c),
    ))
}

/// Relation between two positive words: in `S(1, tau)` for positive
/// candidates, in `S(1, -tau)` for alternating ones.
///
/// For alternating candidates the tuple is first oriented so that
/// `(-1)^i a_i > 0`. Even lengths give two positive words in `g` and
/// `h_{-tau}`; odd lengths give a positive relator equal to the empty word.
pub fn build_semigroup_witness(c: &HalfRelCandidate, tau: &Rational) -> Result<RelationWitness, HalfRelError> {
    let kind = classify_signs(c);
    match kind {
        RelationKind::SemigroupAtTau => build_relation(c, tau),
        RelationKind::SemigroupAtMinusTau => {
            let oriented = if c.word().is_alternating_sign() {
                c.clone()
            } else {
                negate(c)
            };
            let base = build_relation(&oriented, tau)?;
            let (lhs, rhs) = if oriented.len() % 2 == 0 {
                (base.lhs.conjugate_by_reflection(), base.rhs.conjugate_by_reflection())
            } else {
                (base.relator.conjugate_by_reflection(), ExpWord::empty())
            };
            debug_assert!(lhs.is_positive() && rhs.is_positive());
            Ok(RelationWitness::assemble(tau.clone(), -tau, lhs, rhs, kind))
        }
        other => Err(HalfRelError::SignPattern(other)),
    }
}
