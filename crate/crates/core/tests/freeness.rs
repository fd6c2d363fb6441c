use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;

use nonfree::families::{family_instance, FamilyTag};
use nonfree::freeness::{classify_tau, is_group_certificate, SearchEffort, Status};
use nonfree::rational::{frac, int, Rational};
use nonfree::sequences::SigmaPair;

fn family_taus() -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for k in -12..=12 {
        for tag in FamilyTag::ALL {
            let sigmas: Vec<Option<SigmaPair>> = if tag == FamilyTag::B {
                SigmaPair::ALL.iter().map(|s| Some(*s)).collect()
            } else {
                vec![None]
            };
            for s in sigmas {
                if let Ok(i) = family_instance(tag, k, s, None) {
                    if i.tau.abs() < int(4) {
                        out.insert(i.tau.clone());
                        out.insert(-i.tau);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn family_values_are_certified_without_contradiction() {
    let effort = SearchEffort { max_len: 3, bound: 3 };
    for tau in family_taus() {
        let c = classify_tau(&tau, effort);
        assert!(c.witnesses_valid(), "{tau}");
        assert!(!c.group.is_free_schottky(), "{tau}");
        // every family value (and its negative) is non-free by lookup alone
        let cert = c.group.certificate().unwrap_or_else(|| panic!("{tau} has no certificate"));
        assert!(is_group_certificate(&cert.witness, &tau));
        assert!(cert.source.starts_with("family") || cert.source == "tau=0", "{tau}: {}", cert.source);
        if c.semigroup.is_free_schottky() {
            assert!(tau >= int(1), "{tau}");
        }
    }
}

#[test]
fn schottky_claims_respect_thresholds() {
    for q in 1..=6i64 {
        for p in -30..=30 {
            let tau = frac(p, q);
            let c = classify_tau(&tau, SearchEffort { max_len: 2, bound: 2 });
            if c.group.is_free_schottky() {
                assert!(tau.abs() >= int(4));
            }
            if c.semigroup.is_free_schottky() {
                assert!(tau >= int(1) || tau <= int(-4));
            }
        }
    }
}

#[test]
fn semigroup_reflection_route() {
    // -8/3 is the negative of a family D value with even k
    let c = classify_tau(&frac(-8, 3), SearchEffort::default());
    let cert = c.semigroup.certificate().expect("certificate");
    assert!(cert.witness.is_positive());
    assert_eq!(cert.witness.eval_tau, frac(-8, 3));
}

fn rank(s: &Status) -> u8 {
    match s {
        Status::Unknown => 0,
        _ => 1,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn more_effort_never_loses_a_certificate(p in -31i64..=31, q in 1i64..=8, len in 1usize..=4, bound in 1i64..=4) {
        let tau = frac(p, q);
        let low = classify_tau(&tau, SearchEffort { max_len: len, bound });
        let high = classify_tau(&tau, SearchEffort { max_len: len + 1, bound: bound + 1 });
        prop_assert!(rank(&high.group) >= rank(&low.group));
        prop_assert!(rank(&high.semigroup) >= rank(&low.semigroup));
        prop_assert!(low.witnesses_valid() && high.witnesses_valid());
    }
}
