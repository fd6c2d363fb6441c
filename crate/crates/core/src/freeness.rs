//! Classification of a rational `tau`: Schottky thresholds first, then the
//! families (at `tau` and at `-tau`), then bounded search.
//!
//! A missing certificate is reported as `Unknown`, never as free.

use num_traits::{One, Signed, Zero};

use crate::families::{family_lookup, FamilyInstance};
use crate::halfrel::{build_relation, build_semigroup_witness, RelationWitness};
use crate::rational::{int, Rational};
use crate::search::{search_half_relations, SearchQuery, SignMode};
use crate::word::{ExpWord, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchEffort {
    pub max_len: usize,
    pub bound: i64,
}

impl Default for SearchEffort {
    fn default() -> Self {
        SearchEffort {
            max_len: 5,
            bound: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub witness: RelationWitness,
    /// Where the witness came from, e.g. `family D k=3` or `search`.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    FreeSchottky,
    NotFree(Box<Certificate>),
    Unknown,
}

impl Status {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Status::NotFree(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_free_schottky(&self) -> bool {
        matches!(self, Status::FreeSchottky)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Status::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauClassification {
    pub tau: Rational,
    pub group: Status,
    pub semigroup: Status,
    pub effort: SearchEffort,
}

impl TauClassification {
    pub fn group_label(&self) -> &'static str {
        match self.group {
            Status::FreeSchottky => "FreeSchottky",
            Status::NotFree(_) => "NonFree",
            Status::Unknown => "Unknown",
        }
    }

    pub fn semigroup_label(&self) -> &'static str {
        match self.semigroup {
            Status::FreeSchottky => "FreeSchottky",
            Status::NotFree(_) => "NonSemigroupFree",
            Status::Unknown => "Unknown",
        }
    }

    /// Re-verifies every carried witness against this `tau`.
    pub fn witnesses_valid(&self) -> bool {
        let group_ok = self
            .group
            .certificate()
            .is_none_or(|c| is_group_certificate(&c.witness, &self.tau));
        let semi_ok = self
            .semigroup
            .certificate()
            .is_none_or(|c| is_semigroup_certificate(&c.witness, &self.tau));
        group_ok && semi_ok
    }
}

/// Nontrivial relation in `Gamma(1, tau)`, checked by evaluation.
pub fn is_group_certificate(w: &RelationWitness, tau: &Rational) -> bool {
    &w.eval_tau == tau && w.kind.is_nontrivial() && w.check() && w.lhs.is_reduced() && w.rhs.is_reduced()
}

/// Two positive words, equal in `S(1, tau)`, checked by evaluation.
pub fn is_semigroup_certificate(w: &RelationWitness, tau: &Rational) -> bool {
    &w.eval_tau == tau && w.kind.is_nontrivial() && w.check() && w.is_positive() && w.lhs != w.rhs
}

fn cert(witness: RelationWitness, source: String) -> Status {
    Status::NotFree(Box::new(Certificate { witness, source }))
}

fn describe(inst: &FamilyInstance) -> String {
    let mut s = format!("family {} k={}", inst.family, inst.k);
    if let Some(sigma) = inst.sigma {
        s.push_str(&format!(" sigma=({sigma})"));
    }
    if let Some(x) = &inst.x {
        s.push_str(&format!(" x={x}"));
    }
    s
}

pub fn classify_tau(tau: &Rational, effort: SearchEffort) -> TauClassification {
    let four = int(4);
    let group = if tau.abs() >= four {
        Status::FreeSchottky
    } else {
        find_group_witness(tau, effort)
    };
    let semigroup = if group.is_free_schottky() || tau >= &Rational::one() {
        Status::FreeSchottky
    } else {
        find_semigroup_witness(tau, effort)
    };
    TauClassification {
        tau: tau.clone(),
        group,
        semigroup,
        effort,
    }
}

fn find_group_witness(tau: &Rational, effort: SearchEffort) -> Status {
    if tau.is_zero() {
        // h_0 is the identity
        let w = RelationWitness::from_relator(tau.clone(), ExpWord::from_i64(Generator::H, &[1]));
        return cert(w, "tau=0".to_string());
    }
    for inst in family_lookup(tau) {
        let w = inst.witness();
        if is_group_certificate(&w, tau) {
            return cert(w, describe(&inst));
        }
    }
    for inst in family_lookup(&-tau) {
        let w = inst.witness().reflected();
        if is_group_certificate(&w, tau) {
            return cert(w, format!("{} at -tau", describe(&inst)));
        }
    }
    let mut q = SearchQuery::new(tau.clone(), effort.max_len, effort.bound, SignMode::NonzeroAny);
    q.result_limit = Some(1);
    if let Ok(report) = search_half_relations(&q) {
        if let Some(c) = report.hits.first() {
            if let Ok(w) = build_relation(c, tau) {
                if is_group_certificate(&w, tau) {
                    return cert(w, "search".to_string());
                }
            }
        }
    }
    Status::Unknown
}

fn find_semigroup_witness(tau: &Rational, effort: SearchEffort) -> Status {
    if tau.is_zero() {
        let w = RelationWitness::from_relator(tau.clone(), ExpWord::from_i64(Generator::H, &[1]));
        return cert(w, "tau=0".to_string());
    }
    let neg = -tau;
    for inst in family_lookup(tau) {
        if let Ok(w) = build_semigroup_witness(&inst.candidate, tau) {
            if is_semigroup_certificate(&w, tau) {
                return cert(w, describe(&inst));
            }
        }
    }
    for inst in family_lookup(&neg) {
        if let Ok(w) = build_semigroup_witness(&inst.candidate, &neg) {
            if is_semigroup_certificate(&w, tau) {
                return cert(w, format!("{} at -tau", describe(&inst)));
            }
        }
    }
    for (at, mode, label) in [
        (tau.clone(), SignMode::AllPositive, "search positive"),
        (neg.clone(), SignMode::Alternating, "search alternating at -tau"),
    ] {
        let mut q = SearchQuery::new(at.clone(), effort.max_len, effort.bound, mode);
        q.result_limit = Some(1);
        if let Ok(report) = search_half_relations(&q) {
            if let Some(c) = report.hits.first() {
                if let Ok(w) = build_semigroup_witness(c, &at) {
                    if is_semigroup_certificate(&w, tau) {
                        return cert(w, label.to_string());
                    }
                }
            }
        }
    }
    Status::Unknown
}
