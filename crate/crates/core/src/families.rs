//! The five infinite families of non-free values, each with an explicit
//! half-relation, plus the three exceptional members that need special words.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::halfrel::{
    build_relation, build_semigroup_witness, classify_signs, is_half_relation, negate,
    HalfRelCandidate, RelationKind, RelationWitness,
};
use crate::rational::{frac, Rational};
use crate::sequences::{fib, pell, u_seq, BadSigma, SigmaPair};
use crate::word::{eval_word, ExpWord, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `((2k-1)/(2k))^2`
    A,
    /// `((n-1)/n)^2` with `n = 6/(s0 s1) u_k u_{k+1}`
    B,
    /// `(2k+1)/k` with `(k,-1,1,-1,k,x)`
    CGeneral,
    /// `(2k+1)/k`, `k = 2t`
    CEven,
    /// `(2k+1)/k`, `k = t(t+1)/2 - 1`
    CQuad,
    /// `F_{k+2}/F_k`
    D,
    /// `H_{k+1}/P_k`
    E,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 7] = [
        FamilyTag::A,
        FamilyTag::B,
        FamilyTag::CGeneral,
        FamilyTag::CEven,
        FamilyTag::CQuad,
        FamilyTag::D,
        FamilyTag::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::A => "A",
            FamilyTag::B => "B",
            FamilyTag::CGeneral => "C_general",
            FamilyTag::CEven => "C_even",
            FamilyTag::CQuad => "C_quad",
            FamilyTag::D => "D",
            FamilyTag::E => "E",
        }
    }

    pub fn takes_x(self) -> bool {
        matches!(self, FamilyTag::CGeneral | FamilyTag::E)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("k must be nonzero")]
    ZeroK,
    #[error("C_even requires k even")]
    OddK,
    #[error("C_quad requires k = t(t+1)/2 - 1 for some integer t")]
    NotTriangular,
    #[error("degenerate tau=0")]
    DegenerateTau,
    #[error("x must be nonzero")]
    ZeroX,
    #[error("family B requires sigma")]
    MissingSigma,
    #[error(transparent)]
    Sigma(#[from] BadSigma),
}

/// One member of a family: the value `tau` and its half-relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub family: FamilyTag,
    pub k: i64,
    pub sigma: Option<SigmaPair>,
    pub x: Option<BigInt>,
    /// Auxiliary parameter of the C_even / C_quad variants.
    pub t: Option<i64>,
    /// `n` of family B.
    pub n: Option<BigInt>,
    pub tau: Rational,
    pub candidate: HalfRelCandidate,
    pub exceptional: bool,
    /// Verbatim relator for the exceptional members whose half-relation has
    /// a zero coefficient (`tau = 2` and `tau = 3`).
    pub relator: Option<ExpWord>,
}

impl FamilyInstance {
    /// The certificate this instance provides.
    pub fn witness(&self) -> RelationWitness {
        match &self.relator {
            Some(r) => RelationWitness::from_relator(self.tau.clone(), r.clone()),
            None => build_relation(&self.candidate, &self.tau)
                .expect("family candidates are half-relations"),
        }
    }

    pub fn verify(&self) -> bool {
        let half = is_half_relation(&self.candidate, &self.tau);
        match &self.relator {
            Some(r) => half && eval_word(r, &self.tau).is_identity(),
            None => half && self.witness().verified,
        }
    }

    /// Sign class of the candidate, or of the relator for exceptional members.
    pub fn kind(&self) -> RelationKind {
        match &self.relator {
            Some(_) => self.witness().kind,
            None => classify_signs(&self.candidate),
        }
    }

    /// Semigroup witness when the sign pattern allows one.
    pub fn semigroup_witness(&self) -> Option<RelationWitness> {
        if self.relator.is_some() {
            return None;
        }
        build_semigroup_witness(&self.candidate, &self.tau).ok()
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn cand(v: Vec<BigInt>) -> HalfRelCandidate {
    HalfRelCandidate::new(v).expect("non-empty")
}

/// `n = 6/(s0 s1) u_k u_{k+1}` for family B.
pub fn n_value(sigma: SigmaPair, k: i64) -> BigInt {
    big(sigma.n_factor()) * u_seq(sigma, k) * u_seq(sigma, k + 1)
}

/// Distinct `n` values over a range of `k`, ascending.
pub fn enumerate_n_values(sigma: SigmaPair, ks: RangeInclusive<i64>) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = ks.map(|k| n_value(sigma, k)).collect();
    out.sort();
    out.dedup();
    out
}

/// Nonnegative `t` with `t(t+1)/2 = k + 1`, if any.
pub fn triangular_root(k: i64) -> Option<i64> {
    let target = k.checked_add(1)?;
    if target < 0 {
        return None;
    }
    let disc = 8 * target as i128 + 1;
    let r = disc.sqrt();
    (r * r == disc).then(|| ((r - 1) / 2) as i64)
}

/// Default `x`: continue the alternating pattern of the first `l - 1`
/// coefficients when they alternate, otherwise 1.
fn default_x(prefix: &[BigInt]) -> BigInt {
    let c = cand(prefix.to_vec());
    let w = c.word();
    if w.is_alternating_sign() || negate(&c).word().is_alternating_sign() {
        let last = prefix.last().expect("non-empty");
        -last.signum()
    } else {
        BigInt::one()
    }
}

/// Builds the family member for `k` (plus `sigma` for B and optionally `x`
/// for C_general and E).
pub fn family_instance(
    family: FamilyTag,
    k: i64,
    sigma: Option<SigmaPair>,
    x: Option<BigInt>,
) -> Result<FamilyInstance, FamilyError> {
    if k == 0 && family != FamilyTag::B {
        return Err(FamilyError::ZeroK);
    }
    if x.as_ref().is_some_and(|x| x.is_zero()) {
        return Err(FamilyError::ZeroX);
    }
    let mut inst = FamilyInstance {
        family,
        k,
        sigma: None,
        x: None,
        t: None,
        n: None,
        tau: Rational::zero(),
        candidate: HalfRelCandidate::from_i64(&[0]),
        exceptional: false,
        relator: None,
    };
    match family {
        FamilyTag::A => {
            if k == -1 {
                inst.tau = frac(9, 4);
                inst.candidate = HalfRelCandidate::from_i64(&[1, -1, 1, 14, 2]);
                inst.exceptional = true;
            } else {
                let r = frac(2 * k - 1, 2 * k);
                inst.tau = &r * &r;
                inst.candidate = cand(vec![big(1), big(-1), big(-k), big(k) * big(4 * k + 4)]);
            }
        }
        FamilyTag::B => {
            let s = sigma.ok_or(FamilyError::MissingSigma)?;
            let (uk, uk1) = (u_seq(s, k), u_seq(s, k + 1));
            let n = big(s.n_factor()) * &uk * &uk1;
            let r = Rational::new(&n - 1, n.clone());
            inst.tau = &r * &r;
            inst.candidate = cand(vec![
                big(1),
                big(6 / s.at(k + 1)) * &uk * &uk,
                big(6 / s.at(k)) * &uk1 * &uk1,
                big(1),
            ]);
            inst.sigma = Some(s);
            inst.n = Some(n);
        }
        FamilyTag::CGeneral => {
            inst.tau = frac(2 * k + 1, k);
            let mut v = vec![big(k), big(-1), big(1), big(-1), big(k)];
            let x = x.unwrap_or_else(|| default_x(&v));
            v.push(x.clone());
            inst.candidate = cand(v);
            inst.x = Some(x);
        }
        FamilyTag::CEven => {
            if k % 2 != 0 {
                return Err(FamilyError::OddK);
            }
            let t = k / 2;
            inst.tau = frac(2 * k + 1, k);
            inst.candidate = cand(vec![
                big(1),
                big(-1),
                big(1),
                big(-t),
                big(-4) * big(t) * big(t) + big(2 * t - 2),
            ]);
            inst.t = Some(t);
        }
        FamilyTag::CQuad => {
            let t = triangular_root(k).ok_or(FamilyError::NotTriangular)?;
            inst.tau = frac(2 * k + 1, k);
            inst.candidate = c_quad_candidate(t);
            inst.t = Some(t);
        }
        FamilyTag::D => {
            if k == -2 {
                return Err(FamilyError::DegenerateTau);
            }
            inst.tau = Rational::new(fib(k + 2), fib(k));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let n = big(2 * sign) * fib(k - 1) * fib(k);
            inst.candidate = cand(vec![big(1), big(-1), big(1), big(-1), n]);
            if k == 1 {
                inst.exceptional = true;
                inst.relator = Some(ExpWord::from_i64(Generator::G, &[2, -1, 1, -2, 1, -1]));
            }
        }
        FamilyTag::E => {
            let (h_next, _) = pell(k + 1);
            let (_, p_prev) = pell(k - 1);
            let (_, p) = pell(k);
            inst.tau = Rational::new(h_next, p.clone());
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let n = big(sign) * p_prev * p;
            let mut v = vec![n.clone()];
            for i in 0..7 {
                v.push(big(if i % 2 == 0 { -1 } else { 1 }));
            }
            v.push(n);
            let x = x.unwrap_or_else(|| default_x(&v));
            v.push(x.clone());
            inst.candidate = cand(v);
            inst.x = Some(x);
            if k == 1 {
                inst.exceptional = true;
                inst.relator = Some(ExpWord::from_i64(Generator::G, &[1, -1, 1, -1, 1, -1]));
            }
        }
    }
    Ok(inst)
}

/// `(1, -1, 1, -t+1, -t-2)`; both integer roots `t` of `t(t+1)/2 = k+1`
/// give half-relations for `tau = (2k+1)/k`.
pub fn c_quad_candidate(t: i64) -> HalfRelCandidate {
    HalfRelCandidate::from_i64(&[1, -1, 1, 1 - t, -t - 2])
}

/// All instances over `ks` for which `family_instance` succeeds.
pub fn family_sweep(
    family: FamilyTag,
    ks: RangeInclusive<i64>,
    sigma: Option<SigmaPair>,
    x: Option<BigInt>,
) -> Vec<FamilyInstance> {
    ks.filter_map(|k| family_instance(family, k, sigma, x.clone()).ok())
        .collect()
}

/// Members whose `tau` equals the input, found by inverting each formula.
///
/// Handles `|k| <= 10^6`; every returned instance has been verified.
pub fn family_lookup(tau: &Rational) -> Vec<FamilyInstance> {
    const K_MAX: i64 = 1_000_000;
    let mut out = Vec::new();
    let push = |out: &mut Vec<FamilyInstance>, r: Result<FamilyInstance, FamilyError>| {
        if let Ok(inst) = r {
            if &inst.tau == tau && inst.verify() {
                out.push(inst);
            }
        }
    };
    let small_k = |v: &Rational| -> Option<i64> {
        v.is_integer()
            .then(|| v.to_integer().to_i64())
            .flatten()
            .filter(|k| *k != 0 && k.abs() <= K_MAX)
    };

    if let Some(r) = crate::rational::exact_sqrt(tau) {
        // A: r = 1 - 1/(2k)  =>  k = 1 / (2 (1 - r))
        let one_minus = Rational::one() - &r;
        if !one_minus.is_zero() {
            if let Some(k) = small_k(&(Rational::one() / (&one_minus * Rational::from_integer(big(2))))) {
                push(&mut out, family_instance(FamilyTag::A, k, None, None));
            }
            // B: r = 1 - 1/n  =>  n = 1 / (1 - r)
            let n = Rational::one() / &one_minus;
            if n.is_integer() && n.numer().is_positive() {
                for s in SigmaPair::ALL {
                    if let Some(k) = b_index(s, n.numer()) {
                        push(&mut out, family_instance(FamilyTag::B, k, Some(s), None));
                    }
                }
            }
        }
    }

    // C: tau = 2 + 1/k
    let two = Rational::from_integer(big(2));
    if tau != &two {
        if let Some(k) = small_k(&(Rational::one() / (tau - &two))) {
            push(&mut out, family_instance(FamilyTag::CGeneral, k, None, None));
            push(&mut out, family_instance(FamilyTag::CEven, k, None, None));
            push(&mut out, family_instance(FamilyTag::CQuad, k, None, None));
        }
    }

    // D, E: the denominators |F_k|, |P_k| grow geometrically in |k|, so only
    // a logarithmic window of k can match a given reduced denominator.
    let den = tau.denom().clone();
    let limit = &den * 2;
    let mut k = 1i64;
    while k <= K_MAX && fib(k).abs() <= limit {
        for kk in [k, -k] {
            if kk != -2 {
                push(&mut out, family_instance(FamilyTag::D, kk, None, None));
            }
        }
        k += 1;
    }
    let mut k = 1i64;
    while k <= K_MAX && pell(k).1.abs() <= limit {
        for kk in [k, -k] {
            push(&mut out, family_instance(FamilyTag::E, kk, None, None));
        }
        k += 1;
    }
    out
}

/// The `k` with `n_value(sigma, k) == n`, scanning outward until the
/// geometric growth of `u` passes `n`.
pub fn b_index(sigma: SigmaPair, n: &BigInt) -> Option<i64> {
    let mut k = 0i64;
    loop {
        let (up, down) = (n_value(sigma, k), n_value(sigma, -k - 1));
        if &up == n {
            return Some(k);
        }
        if &down == n {
            return Some(-k - 1);
        }
        if &up > n && &down > n {
            return None;
        }
        k += 1;
    }
}
