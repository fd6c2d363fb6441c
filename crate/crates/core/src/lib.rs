//! Exact certificates that `tau` is non-free for the group (or semigroup)
//! generated by `g = (1 1; 0 1)` and `h_tau = (1 0; tau 1)`.
//!
//! The certificates are half-relations: exponent tuples whose alternating word
//! is fixed by an anti-involution swapping (or fixing) the two generators.
//!
//! ```
//! use nonfree::{build_relation, parse_rational, HalfRelCandidate, RelationKind};
//!
//! let tau = parse_rational("9/4").unwrap();
//! let c = HalfRelCandidate::from_i64(&[1, -1, 1, 14, 2]);
//! let w = build_relation(&c, &tau).unwrap();
//! assert!(w.verified);
//! assert_eq!(w.kind, RelationKind::GroupNontrivial);
//! assert_eq!(w.lhs.to_string(), "g h^-1 g h^14 g^2");
//! ```

pub mod accumulation;
pub mod families;
pub mod freeness;
pub mod halfrel;
pub mod poly;
pub mod rational;
pub mod search;
pub mod sequences;
pub mod word;

pub use families::{family_instance, family_lookup, FamilyInstance, FamilyTag};
pub use freeness::{classify_tau, SearchEffort, Status, TauClassification};
pub use halfrel::{
    build_relation, build_semigroup_witness, classify_signs, defect, is_half_relation, negate,
    poly_hr, HalfRelCandidate, HalfRelError, RelationKind, RelationWitness,
};
pub use poly::{eval_word_symbolic, MatPoly, UniPoly};
pub use rational::{parse_rational, Rational};
pub use search::{search_half_relations, SearchQuery, SearchReport, SignMode};
pub use word::{eval_word, gen_power, ExpWord, Generator, Mat2};
