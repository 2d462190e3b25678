//! Conflict-free Assignment: buyers are assigned to at most one seller each,
//! seller capacities bound the total assigned weight, conflicting buyers are
//! never both assigned, and the assigned profit must reach `q`.

mod kernel;
mod solve;

pub use kernel::{kernelize_cfa, validate_kernel_bounds, KernelBounds, RuleFiring};
pub use solve::{check_assignment, solve_cfa, CFA_MAX_BUYERS};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Buyer weight; `Infinite` exceeds every capacity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(BigUint),
    Infinite,
}

impl Weight {
    pub fn finite(v: u64) -> Self {
        Weight::Finite(BigUint::from(v))
    }

    pub fn fits(&self, capacity: &BigUint) -> bool {
        match self {
            Weight::Finite(w) => w <= capacity,
            Weight::Infinite => false,
        }
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(Weight::Infinite)
        } else {
            parse_big(s).map(Weight::Finite)
        }
    }
}

fn parse_big(s: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::arg(format!("`{s}` is not a decimal integer")));
    }
    BigUint::from_str(s).map_err(|e| Error::arg(e.to_string()))
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_big(&s).map_err(serde::de::Error::custom)
    }
}

pub type BuyerId = u64;
pub type SellerId = u64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Buyer {
    pub id: BuyerId,
    #[serde(with = "decimal")]
    pub profit: BigUint,
    pub weight: Weight,
    /// Optional vertex set this buyer stands for (used by the triangle-partition compression).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seller {
    pub id: SellerId,
    #[serde(with = "decimal")]
    pub capacity: BigUint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfaInstance {
    pub buyers: Vec<Buyer>,
    pub sellers: Vec<Seller>,
    /// `(buyer, seller)` pairs.
    pub edges: Vec<(BuyerId, SellerId)>,
    /// Unordered buyer pairs; stored with the smaller id first.
    pub conflicts: Vec<(BuyerId, BuyerId)>,
    #[serde(with = "decimal")]
    pub q: BigUint,
}

impl CfaInstance {
    pub fn empty() -> Self {
        CfaInstance {
            buyers: Vec::new(),
            sellers: Vec::new(),
            edges: Vec::new(),
            conflicts: Vec::new(),
            q: BigUint::zero(),
        }
    }

    /// Declared encoding bound for numeric values: `64 + |B|^2` bits.
    pub fn value_bit_bound(&self) -> u64 {
        64 + (self.buyers.len() as u64).pow(2)
    }

    /// Structural validity: unique ids, bipartite edges over existing
    /// endpoints, irreflexive conflicts, values within the bit bound.
    pub fn validate(&self) -> Result<()> {
        let mut buyer_ids = BTreeSet::new();
        for b in &self.buyers {
            if !buyer_ids.insert(b.id) {
                return Err(Error::arg(format!("duplicate buyer id {}", b.id)));
            }
        }
        let mut seller_ids = BTreeSet::new();
        for s in &self.sellers {
            if !seller_ids.insert(s.id) {
                return Err(Error::arg(format!("duplicate seller id {}", s.id)));
            }
        }
        let mut seen = BTreeSet::new();
        for &(b, s) in &self.edges {
            if !buyer_ids.contains(&b) || !seller_ids.contains(&s) {
                return Err(Error::arg(format!("edge ({b}, {s}) has an unknown endpoint")));
            }
            if !seen.insert((b, s)) {
                return Err(Error::arg(format!("duplicate edge ({b}, {s})")));
            }
        }
        for &(a, b) in &self.conflicts {
            if a == b {
                return Err(Error::arg(format!("buyer {a} conflicts with itself")));
            }
            if !buyer_ids.contains(&a) || !buyer_ids.contains(&b) {
                return Err(Error::arg(format!("conflict ({a}, {b}) names an unknown buyer")));
            }
        }
        let bound = self.value_bit_bound();
        let too_big = |v: &BigUint| v.bits() > bound;
        let oversized = self.buyers.iter().any(|b| {
            too_big(&b.profit) || b.weight.as_finite().is_some_and(too_big)
        }) || self.sellers.iter().any(|s| too_big(&s.capacity))
            || too_big(&self.q);
        if oversized {
            return Err(Error::arg(format!("a value exceeds the {bound}-bit encoding bound")));
        }
        Ok(())
    }

    pub fn buyer_degrees(&self) -> BTreeMap<BuyerId, usize> {
        let mut deg: BTreeMap<BuyerId, usize> = self.buyers.iter().map(|b| (b.id, 0)).collect();
        for &(b, _) in &self.edges {
            *deg.entry(b).or_default() += 1;
        }
        deg
    }

    pub fn seller_degrees(&self) -> BTreeMap<SellerId, usize> {
        let mut deg: BTreeMap<SellerId, usize> = self.sellers.iter().map(|s| (s.id, 0)).collect();
        for &(_, s) in &self.edges {
            *deg.entry(s).or_default() += 1;
        }
        deg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("CFA instances serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: CfaInstance =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }
}

/// Random instance for property tests: up to `max_buyers` buyers and `max_sellers` sellers,
/// small values, occasional infinite weights.
pub fn random_instance<R: Rng>(rng: &mut R, max_buyers: usize, max_sellers: usize) -> CfaInstance {
    let nb = rng.gen_range(0..=max_buyers);
    let ns = rng.gen_range(0..=max_sellers);
    let buyers: Vec<Buyer> = (0..nb as u64)
        .map(|id| Buyer {
            id,
            profit: BigUint::from(rng.gen_range(0..=6u32)),
            weight: if rng.gen_bool(0.1) {
                Weight::Infinite
            } else {
                Weight::finite(rng.gen_range(0..=5))
            },
            label: None,
        })
        .collect();
    let sellers: Vec<Seller> = (0..ns as u64)
        .map(|id| Seller {
            id,
            capacity: BigUint::from(rng.gen_range(0..=8u32)),
            label: None,
        })
        .collect();
    let density = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for b in 0..nb as u64 {
        for s in 0..ns as u64 {
            if rng.gen_bool(density) {
                edges.push((b, s));
            }
        }
    }
    let mut conflicts = Vec::new();
    for a in 0..nb as u64 {
        for b in a + 1..nb as u64 {
            if rng.gen_bool(0.2) {
                conflicts.push((a, b));
            }
        }
    }
    let total: u32 = buyers
        .iter()
        .map(|b| u32::try_from(&b.profit).unwrap_or(0))
        .sum();
    let q = BigUint::from(rng.gen_range(0..=total.max(1)));
    CfaInstance {
        buyers,
        sellers,
        edges,
        conflicts,
        q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_infinite_weight() {
        let mut r = crate::generate::rng(9);
        for _ in 0..20 {
            let inst = random_instance(&mut r, 5, 4);
            let back = CfaInstance::from_json(&inst.to_json()).unwrap();
            assert_eq!(back, inst);
        }
        let text = r#"{"buyers":[{"id":0,"profit":"36893488147419103231","weight":"inf"}],
            "sellers":[{"id":7,"capacity":"3"}],"edges":[[0,7]],"conflicts":[],"q":"1"}"#;
        let inst = CfaInstance::from_json(text).unwrap();
        assert_eq!(inst.buyers[0].weight, Weight::Infinite);
        assert!(inst.to_json().contains("\"36893488147419103231\""));
    }

    #[test]
    fn validation_errors() {
        let mut inst = CfaInstance::empty();
        inst.buyers.push(Buyer {
            id: 0,
            profit: BigUint::from(1u8),
            weight: Weight::finite(1),
            label: None,
        });
        inst.conflicts.push((0, 0));
        assert!(inst.validate().is_err());
        inst.conflicts.clear();
        inst.edges.push((0, 3));
        assert!(inst.validate().is_err());
        inst.edges.clear();
        inst.q = BigUint::from(1u8) << 100;
        assert!(inst.validate().is_err());
        assert!("12x".parse::<Weight>().is_err());
    }
}
