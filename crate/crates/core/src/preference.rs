//! Weak orders stored as integer tiers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};

/// The two sides of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    D,
    H,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::D, Side::H];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::D => f.write_str("D"),
            Side::H => f.write_str("H"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Better,
    Equal,
    Worse,
}

/// A complete preorder on the ground set: smaller tier is more preferred,
/// equal tiers are ties. Tiers need not be contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeakOrder {
    tiers: Vec<Option<i64>>,
}

impl WeakOrder {
    pub fn new(tiers: impl IntoIterator<Item = (Element, i64)>) -> Self {
        let mut order = WeakOrder::default();
        for (e, t) in tiers {
            if e.0 >= order.tiers.len() {
                order.tiers.resize(e.0 + 1, None);
            }
            order.tiers[e.0] = Some(t);
        }
        order
    }

    /// Every element on one tier.
    pub fn indifferent(n: usize) -> Self {
        Self::new((0..n).map(|i| (Element(i), 0)))
    }

    pub fn tier(&self, e: Element) -> Option<i64> {
        self.tiers.get(e.0).copied().flatten()
    }

    pub fn domain(&self) -> ElementSet {
        self.tiers
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_some())
            .map(|(i, _)| Element(i))
            .collect()
    }

    fn tier_of(&self, e: Element) -> Result<i64> {
        self.tier(e).ok_or(Error::OutsideGround(e))
    }

    pub fn compare(&self, e: Element, f: Element) -> Result<Comparison> {
        let (te, tf) = (self.tier_of(e)?, self.tier_of(f)?);
        Ok(match te.cmp(&tf) {
            std::cmp::Ordering::Less => Comparison::Better,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Worse,
        })
    }

    /// `e ≿ f`. Panics on elements outside the domain.
    pub fn weakly_prefers(&self, e: Element, f: Element) -> bool {
        self.tier(e).expect("ranked element") <= self.tier(f).expect("ranked element")
    }

    /// `e ≻ f`. Panics on elements outside the domain.
    pub fn strictly_prefers(&self, e: Element, f: Element) -> bool {
        self.tier(e).expect("ranked element") < self.tier(f).expect("ranked element")
    }

    pub fn ties(&self, e: Element, f: Element) -> bool {
        self.tier(e) == self.tier(f)
    }

    /// Most-preferred elements of `set`.
    pub fn heads(&self, set: &ElementSet) -> ElementSet {
        self.extreme(set, |a, b| a < b)
    }

    /// Least-preferred elements of `set`.
    pub fn tails(&self, set: &ElementSet) -> ElementSet {
        self.extreme(set, |a, b| a > b)
    }

    fn extreme(&self, set: &ElementSet, better: impl Fn(i64, i64) -> bool) -> ElementSet {
        let Some(best) = set
            .iter()
            .map(|e| self.tier(e).expect("ranked element"))
            .reduce(|a, b| if better(b, a) { b } else { a })
        else {
            return ElementSet::new();
        };
        set.iter()
            .filter(|&e| self.tier(e) == Some(best))
            .collect()
    }
}
