//! Limit points of the families and high-precision distances to them.
//!
//! Values are fixed-point integers scaled by `10^SCALE`; irrational targets
//! come from integer square roots, so the error is at most one unit in the
//! last place.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::families::{family_instance, FamilyTag};
use crate::rational::Rational;
use crate::sequences::SigmaPair;

const SCALE: u32 = 60;
/// Digits shown after the decimal point.
pub const DISPLAY_DIGITS: usize = 50;

/// Fixed-point decimal `value / 10^60`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decimal(BigInt);

impl Decimal {
    fn unit() -> BigInt {
        BigInt::from(10).pow(SCALE)
    }

    pub fn from_rational(r: &Rational) -> Decimal {
        Decimal((r.numer() * Self::unit()).div_floor(r.denom()))
    }

    /// `floor(sqrt(n) * 10^60)`.
    pub fn sqrt_int(n: u64) -> Decimal {
        Decimal((BigInt::from(n) * Self::unit() * Self::unit()).sqrt())
    }

    pub fn abs_diff(&self, other: &Decimal) -> Decimal {
        Decimal((&self.0 - &other.0).abs())
    }

    /// Compares against `10^-exp`.
    pub fn is_below_pow10(&self, exp: u32) -> bool {
        self.0 < BigInt::from(10).pow(SCALE - exp)
    }

    fn affine(&self, mul_num: i64, add: &Rational, div: i64) -> Decimal {
        // (self * mul_num + add) / div
        let add = Decimal::from_rational(add).0;
        Decimal((&self.0 * mul_num + add).div_floor(&BigInt::from(div)))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = Self::unit();
        let sign = if self.0.is_negative() { "-" } else { "" };
        let mag = self.0.abs();
        let (int_part, frac_part) = mag.div_rem(&unit);
        let frac = format!("{:0>width$}", frac_part, width = SCALE as usize);
        write!(f, "{sign}{int_part}.{}", &frac[..DISPLAY_DIGITS])
    }
}

/// Where a family's values accumulate, for one sign of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulationTarget {
    pub family: FamilyTag,
    /// Sign of `k` along this branch.
    pub direction: i8,
    pub description: &'static str,
    pub value: Decimal,
}

impl AccumulationTarget {
    pub fn numeric(&self) -> String {
        self.value.to_string()
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn target(family: FamilyTag, direction: i8) -> AccumulationTarget {
    let positive = direction > 0;
    let sqrt5 = Decimal::sqrt_int(5);
    let sqrt2 = Decimal::sqrt_int(2);
    let (description, value) = match family {
        FamilyTag::A | FamilyTag::B => ("1", Decimal::from_rational(&int(1))),
        FamilyTag::CGeneral | FamilyTag::CEven | FamilyTag::CQuad => {
            ("2", Decimal::from_rational(&int(2)))
        }
        FamilyTag::D if positive => ("φ²", sqrt5.affine(1, &int(3), 2)),
        FamilyTag::D => ("φ⁻²", sqrt5.affine(-1, &int(3), 2)),
        FamilyTag::E if positive => ("2+√2", sqrt2.affine(1, &int(2), 1)),
        FamilyTag::E => ("2−√2", sqrt2.affine(-1, &int(2), 1)),
    };
    AccumulationTarget {
        family,
        direction: if positive { 1 } else { -1 },
        description,
        value,
    }
}

/// Accumulation points of rational non-semigroup-free values: the negatives
/// of the C, D, E limits together with 1 (family B).
pub fn semigroup_accumulation_points() -> Vec<(&'static str, Decimal)> {
    let neg = |d: Decimal| Decimal(-d.0);
    vec![
        ("−2−√2", neg(target(FamilyTag::E, 1).value)),
        ("−2+√2", neg(target(FamilyTag::E, -1).value)),
        ("−φ²", neg(target(FamilyTag::D, 1).value)),
        ("−φ⁻²", neg(target(FamilyTag::D, -1).value)),
        ("−2", neg(target(FamilyTag::CGeneral, 1).value)),
        ("1", target(FamilyTag::B, 1).value),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulationRow {
    pub k: i64,
    pub tau: Rational,
    pub distance: Decimal,
}

/// `|tau_k - target|` for every valid `k` in the range; `sigma` is needed for
/// family B only.
pub fn accumulation_report(
    family: FamilyTag,
    sigma: Option<SigmaPair>,
    ks: RangeInclusive<i64>,
) -> Vec<AccumulationRow> {
    ks.filter_map(|k| {
        let inst = family_instance(family, k, sigma, None).ok()?;
        let t = target(family, if k > 0 { 1 } else { -1 });
        let distance = Decimal::from_rational(&inst.tau).abs_diff(&t.value);
        Some(AccumulationRow {
            k,
            tau: inst.tau,
            distance,
        })
    })
    .collect()
}

/// True when distances strictly decrease as `|k|` grows on each sign branch.
pub fn strictly_decreasing_by_branch(rows: &[AccumulationRow]) -> bool {
    let branch = |positive: bool| {
        let mut v: Vec<&AccumulationRow> = rows.iter().filter(|r| (r.k > 0) == positive).collect();
        v.sort_by_key(|r| r.k.abs());
        v.windows(2).all(|w| w[1].distance < w[0].distance)
    };
    branch(true) && branch(false)
}

impl AccumulationRow {
    pub fn is_exact_hit(&self) -> bool {
        self.distance.0.is_zero()
    }
}
