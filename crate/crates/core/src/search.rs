//! Bounded exhaustive search for half-relations at a fixed rational `tau`.
//!
//! Prefixes are extended depth-first with the partial product kept
//! incrementally. The defect is affine in the last exponent, so the last
//! coefficient is solved for exactly instead of enumerated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::halfrel::{defect_of_matrix, HalfRelCandidate};
use crate::rational::Rational;
use crate::word::{Generator, Mat2};

pub const MAX_SEARCH_LEN: usize = 12;
pub const DEFAULT_RESULT_LIMIT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignMode {
    /// Every `a_i != 0`.
    NonzeroAny,
    /// Every `a_i > 0`.
    AllPositive,
    /// `(-1)^i a_i > 0`, i.e. `a_1 < 0` and alternating from there.
    Alternating,
}

impl SignMode {
    pub fn name(self) -> &'static str {
        match self {
            SignMode::NonzeroAny => "any",
            SignMode::AllPositive => "positive",
            SignMode::Alternating => "alternating",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "any" | "nonzero" => Some(SignMode::NonzeroAny),
            "positive" => Some(SignMode::AllPositive),
            "alternating" => Some(SignMode::Alternating),
            _ => None,
        }
    }

    /// Whether `a` may sit at 0-based position `i`.
    fn allows(self, i: usize, a: i64) -> bool {
        match self {
            SignMode::NonzeroAny => a != 0,
            SignMode::AllPositive => a > 0,
            SignMode::Alternating => {
                if i.is_multiple_of(2) {
                    a < 0
                } else {
                    a > 0
                }
            }
        }
    }

    /// Admissible values at 0-based position `i`, ascending.
    fn values(self, i: usize, bound: i64) -> Vec<i64> {
        (-bound..=bound).filter(|&a| self.allows(i, a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    pub tau: Rational,
    pub max_len: usize,
    /// `|a_i| <= bound`.
    pub bound: i64,
    pub sign_mode: SignMode,
    pub result_limit: Option<usize>,
}

impl SearchQuery {
    pub fn new(tau: Rational, max_len: usize, bound: i64, sign_mode: SignMode) -> Self {
        SearchQuery {
            tau,
            max_len,
            bound,
            sign_mode,
            result_limit: Some(DEFAULT_RESULT_LIMIT),
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_len == 0 || self.max_len > MAX_SEARCH_LEN {
            return Err(SearchError::MaxLen(self.max_len));
        }
        if self.bound < 1 {
            return Err(SearchError::Bound(self.bound));
        }
        if self.result_limit == Some(0) {
            return Err(SearchError::Limit);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max_len must be in 1..={MAX_SEARCH_LEN}, got {0}")]
    MaxLen(usize),
    #[error("bound must be at least 1, got {0}")]
    Bound(i64),
    #[error("result limit must be positive")]
    Limit,
    #[error("length-4 range needs 2 <= n_from <= n_to, got [{0}, {1}]")]
    Range(u64, u64),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub query: SearchQuery,
    /// Shortlex order: by length, then lexicographic.
    pub hits: Vec<HalfRelCandidate>,
    /// False when the result limit cut the enumeration short.
    pub exhausted: bool,
}

/// Searches on the global rayon pool.
pub fn search_half_relations(q: &SearchQuery) -> Result<SearchReport, SearchError> {
    q.validate()?;
    Ok(run_search(q))
}

/// Searches on a dedicated pool of `workers` threads.
pub fn search_half_relations_with_workers(
    q: &SearchQuery,
    workers: usize,
) -> Result<SearchReport, SearchError> {
    q.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    Ok(pool.install(|| run_search(q)))
}

fn run_search(q: &SearchQuery) -> SearchReport {
    let cap = q.result_limit.unwrap_or(usize::MAX);
    let mut hits: Vec<HalfRelCandidate> = Vec::new();
    let mut exhausted = true;
    for len in 1..=q.max_len {
        let room = cap - hits.len();
        // one extra hit tells us the limit was actually exceeded
        let want = room.saturating_add(1);
        let mut found = if len == 1 {
            let mut out = Vec::new();
            Dfs::new(q, len, want).finish(&Mat2::identity(), &[], &mut out);
            out
        } else {
            let firsts = q.sign_mode.values(0, q.bound);
            let parts: Vec<Vec<Vec<i64>>> = firsts
                .par_iter()
                .map(|&a1| {
                    let dfs = Dfs::new(q, len, want);
                    let mut m = Mat2::identity();
                    m.mul_gen_power(Generator::G, &small(a1), &q.tau);
                    let mut prefix = vec![a1];
                    let mut out = Vec::new();
                    dfs.extend(&m, &mut prefix, &mut out);
                    out
                })
                .collect();
            parts.into_iter().flatten().take(want).collect()
        };
        if found.len() > room {
            found.truncate(room);
            exhausted = false;
        }
        hits.extend(found.into_iter().map(to_candidate));
        if !exhausted || (hits.len() == cap && len < q.max_len) {
            exhausted = false;
            break;
        }
    }
    SearchReport {
        query: q.clone(),
        hits,
        exhausted,
    }
}

fn small(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

fn to_candidate(v: Vec<i64>) -> HalfRelCandidate {
    HalfRelCandidate::from_i64(&v)
}

struct Dfs<'a> {
    q: &'a SearchQuery,
    len: usize,
    want: usize,
}

impl<'a> Dfs<'a> {
    fn new(q: &'a SearchQuery, len: usize, want: usize) -> Self {
        Dfs { q, len, want }
    }

    fn extend(&self, m: &Mat2, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if out.len() >= self.want {
            return;
        }
        let pos = prefix.len();
        if pos + 1 == self.len {
            self.finish(m, prefix, out);
            return;
        }
        let tag = letter(pos);
        for a in self.q.sign_mode.values(pos, self.q.bound) {
            let mut next = m.clone();
            next.mul_gen_power(tag, &small(a), &self.q.tau);
            prefix.push(a);
            self.extend(&next, prefix, out);
            prefix.pop();
            if out.len() >= self.want {
                return;
            }
        }
    }

    /// Solves `c0 + a * c1 = 0` for the last exponent `a`.
    fn finish(&self, m: &Mat2, prefix: &[i64], out: &mut Vec<Vec<i64>>) {
        let pos = prefix.len();
        let tau = &self.q.tau;
        let c0 = defect_of_matrix(m, self.len, tau);
        let c1 = match letter(pos) {
            Generator::G => tau * &m.e11,
            Generator::H => tau * &m.e12,
        };
        let push = |a: i64, out: &mut Vec<Vec<i64>>| {
            if out.len() < self.want {
                let mut v = prefix.to_vec();
                v.push(a);
                out.push(v);
            }
        };
        if c1.is_zero() {
            if c0.is_zero() {
                for a in self.q.sign_mode.values(pos, self.q.bound) {
                    push(a, out);
                }
            }
            return;
        }
        let a = -c0 / c1;
        if !a.is_integer() {
            return;
        }
        if let Some(a) = a.to_integer().to_i64() {
            if a.abs() <= self.q.bound && self.q.sign_mode.allows(pos, a) {
                push(a, out);
            }
        }
    }
}

fn letter(pos: usize) -> Generator {
    if pos.is_multiple_of(2) {
        Generator::G
    } else {
        Generator::H
    }
}

/// Positive length-4 half-relations for `tau = ((n-1)/n)^2`, `n` in range,
/// all coefficients at most `bound`. Only `n` with hits appear in the map.
///
/// `P_4 = a1 a2 a3 a4 tau + a1 a2 - a2 a3 + a3 a4 + a1 a4` is linear in `a2`.
/// With `m = n - 1`, positivity of `a2` forces `(a3 - a1) n^2 > a1 a3 a4 m^2`,
/// hence `a1 < n^2/m^2`, and `P_4` is invariant under reversing the tuple, so
/// `a4 < n^2/m^2` as well. The scan runs over `(a1, a4, a3)` and solves `a2`.
pub fn search_len4_positive(
    n_from: u64,
    n_to: u64,
    bound: u64,
) -> Result<BTreeMap<u64, Vec<[u64; 4]>>, SearchError> {
    if n_from < 2 || n_from > n_to {
        return Err(SearchError::Range(n_from, n_to));
    }
    if bound < 1 {
        return Err(SearchError::Bound(bound as i64));
    }
    let found: Vec<(u64, Vec<[u64; 4]>)> = (n_from..=n_to)
        .into_par_iter()
        .filter_map(|n| {
            let hits = len4_hits(n, bound);
            (!hits.is_empty()).then_some((n, hits))
        })
        .collect();
    Ok(found.into_iter().collect())
}

fn len4_hits(n: u64, bound: u64) -> Vec<[u64; 4]> {
    let n2 = (n as i128) * (n as i128);
    let m2 = ((n - 1) as i128) * ((n - 1) as i128);
    let b = bound as i128;
    // a1, a4 < n^2 / m^2
    let small_max = ((n2 - 1) / m2).min(b);
    let mut hits = Vec::new();
    for a1 in 1..=small_max {
        for a4 in 1..=small_max {
            // den = a3 (n^2 - a1 a4 m^2) - a1 n^2 must be positive
            let slope = n2 - a1 * a4 * m2;
            if slope <= 0 {
                continue;
            }
            let a3_min = (a1 * n2) / slope + 1;
            for a3 in a3_min..=b {
                let den = a3 * slope - a1 * n2;
                let num = a4 * (a1 + a3) * n2;
                if num % den == 0 {
                    let a2 = num / den;
                    if a2 <= b {
                        hits.push([a1 as u64, a2 as u64, a3 as u64, a4 as u64]);
                    }
                }
            }
        }
    }
    hits.sort();
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfrel::{defect, is_half_relation, negate};
    use crate::rational::{frac, int};

    fn hit(v: &[i64]) -> HalfRelCandidate {
        HalfRelCandidate::from_i64(v)
    }

    #[test]
    fn finds_tau_two() {
        let q = SearchQuery::new(int(2), 3, 2, SignMode::NonzeroAny);
        let r = search_half_relations(&q).unwrap();
        assert!(r.exhausted);
        assert!(r.hits.contains(&hit(&[1, -2, 1])));
        assert!(r.hits.contains(&hit(&[-1, 2, -1])));
    }

    #[test]
    fn schottky_region_is_empty() {
        let q = SearchQuery::new(int(5), 4, 6, SignMode::NonzeroAny);
        let r = search_half_relations(&q).unwrap();
        assert!(r.hits.is_empty() && r.exhausted);
    }

    #[test]
    fn rejects_oversize() {
        let q = SearchQuery::new(int(2), 13, 2, SignMode::NonzeroAny);
        assert_eq!(search_half_relations(&q), Err(SearchError::MaxLen(13)));
        let q = SearchQuery::new(int(2), 3, 0, SignMode::NonzeroAny);
        assert_eq!(search_half_relations(&q), Err(SearchError::Bound(0)));
    }

    #[test]
    fn limit_truncates_deterministically() {
        let mut q = SearchQuery::new(frac(1, 4), 4, 8, SignMode::NonzeroAny);
        let full = search_half_relations(&q).unwrap();
        assert!(full.exhausted && full.hits.len() > 3);
        q.result_limit = Some(3);
        let cut = search_half_relations(&q).unwrap();
        assert!(!cut.exhausted);
        assert_eq!(cut.hits, full.hits[..3].to_vec());
        q.result_limit = Some(full.hits.len());
        let exact = search_half_relations(&q).unwrap();
        assert!(exact.exhausted);
    }

    #[test]
    fn tau_zero_makes_everything_a_hit() {
        let q = SearchQuery::new(int(0), 2, 1, SignMode::AllPositive);
        let r = search_half_relations(&q).unwrap();
        assert_eq!(r.hits, vec![hit(&[1]), hit(&[1, 1])]);
    }

    #[test]
    fn alternating_orientation() {
        let q = SearchQuery::new(frac(5, 2), 5, 4, SignMode::Alternating);
        let r = search_half_relations(&q).unwrap();
        assert!(r.hits.iter().all(|h| h.word().is_alternating_sign()));
        // (1,-1,1,-1,-4) is not alternating; family D at k=4 gives tau=8/3.
        let q = SearchQuery::new(frac(8, 3), 5, 12, SignMode::Alternating);
        let r = search_half_relations(&q).unwrap();
        assert!(r.hits.contains(&negate(&hit(&[1, -1, 1, -1, 12]))));
    }

    #[test]
    fn shortlex_order() {
        let q = SearchQuery::new(frac(1, 4), 4, 8, SignMode::NonzeroAny);
        let r = search_half_relations(&q).unwrap();
        let keys: Vec<_> = r.hits.iter().map(|h| (h.len(), h.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for h in &r.hits {
            assert!(defect(h, &q.tau).is_zero());
        }
    }

    #[test]
    fn len4_examples() {
        let hits = search_len4_positive(2, 12, 100).unwrap();
        assert_eq!(hits.keys().copied().collect::<Vec<_>>(), [2, 3, 5, 9, 10]);
        assert!(hits[&9].contains(&[1, 6, 27, 1]));
        for (n, list) in &hits {
            let r = Rational::new(BigInt::from(*n - 1), BigInt::from(*n));
            let tau = &r * &r;
            for h in list {
                let c = HalfRelCandidate::new(h.iter().map(|&a| BigInt::from(a)).collect()).unwrap();
                assert!(is_half_relation(&c, &tau));
            }
        }
        assert!(search_len4_positive(1, 5, 10).is_err());
        assert!(search_len4_positive(6, 5, 10).is_err());
    }

    /// Literal scan over (a1, a2, a3) solving a4.
    fn len4_cubic(n: u64, bound: i64) -> Vec<[u64; 4]> {
        let r = Rational::new(BigInt::from(n - 1), BigInt::from(n));
        let tau = &r * &r;
        let mut out = Vec::new();
        for a1 in 1..=bound {
            for a2 in 1..=bound {
                for a3 in 1..=bound {
                    let den = &tau * int(a1 * a2 * a3) + int(a1 + a3);
                    let a4 = int(a2 * (a3 - a1)) / den;
                    if a4.is_integer() {
                        let a4 = a4.to_integer().to_i64().unwrap();
                        if a4 >= 1 && a4 <= bound {
                            out.push([a1 as u64, a2 as u64, a3 as u64, a4 as u64]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn len4_matches_cubic_scan() {
        let fast = search_len4_positive(2, 16, 50).unwrap();
        for n in 2..=16u64 {
            let slow = len4_cubic(n, 50);
            assert_eq!(fast.get(&n).cloned().unwrap_or_default(), slow, "n = {n}");
        }
    }
}
