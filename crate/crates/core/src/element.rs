//! Elements, element sets and the named ground set.
//!
//! Elements are dense indices into a [`GroundSet`], whose names are kept in
//! lexicographic order. Index order is therefore the canonical order used for
//! every greedy step and tie-break in the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of the ground set, identified by its canonical position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite set of elements backed by a growable bitset.
///
/// Equality, hashing and ordering only look at the members, never at the
/// backing capacity.
#[derive(Clone, Default)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn singleton(e: Element) -> Self {
        let mut s = Self::with_capacity(e.0 + 1);
        s.insert(e);
        s
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.bits.contains(e.0)
    }

    pub fn insert(&mut self, e: Element) -> bool {
        if e.0 >= self.bits.len() {
            self.bits.grow(e.0 + 1);
        }
        !self.bits.put(e.0)
    }

    pub fn remove(&mut self, e: Element) -> bool {
        if e.0 >= self.bits.len() {
            return false;
        }
        let had = self.bits.contains(e.0);
        self.bits.set(e.0, false);
        had
    }

    /// Members in canonical (ascending) order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones().map(Element)
    }

    pub fn first(&self) -> Option<Element> {
        self.bits.minimum().map(Element)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    /// `self + e`.
    pub fn with(&self, e: Element) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    /// `self - e`.
    pub fn without(&self, e: Element) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.intersect_with(&other.bits);
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.ones().all(|i| other.bits.contains(i))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.ones().all(|i| !other.bits.contains(i))
    }

    /// All subsets of `self`, enumerated by binary counting over the members.
    /// Only meant for desk-scale brute force.
    pub fn subsets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let members = self.to_vec();
        assert!(members.len() < 64, "subset enumeration over {} elements", members.len());
        (0u64..(1u64 << members.len())).map(move |mask| {
            let mut s = ElementSet::new();
            for (k, &e) in members.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    s.insert(e);
                }
            }
            s
        })
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits.ones().eq(other.bits.ones())
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for i in self.bits.ones() {
            i.hash(state);
        }
        usize::MAX.hash(state);
    }
}

impl Ord for ElementSet {
    /// Lexicographic comparison of the sorted member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.ones().cmp(other.bits.ones())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<T: IntoIterator<Item = Element>>(iter: T) -> Self {
        let mut s = ElementSet::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a Element> for ElementSet {
    fn from_iter<T: IntoIterator<Item = &'a Element>>(iter: T) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl Extend<Element> for ElementSet {
    fn extend<T: IntoIterator<Item = Element>>(&mut self, iter: T) {
        for e in iter {
            self.insert(e);
        }
    }
}

/// The named ground set `E`. Names are unique and stored sorted, so
/// `Element(i)` is the `i`-th name in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Ok(Self { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.len()).map(Element)
    }

    pub fn name(&self, e: Element) -> &str {
        &self.names[e.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        self.index
            .get(name)
            .map(|&i| Element(i))
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn set<I, S>(&self, names: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().map(|n| self.element(n.as_ref())).collect()
    }

    pub fn set_names(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|e| self.names[e.0].clone()).collect()
    }

    /// Renders a set as `{a, b, c}`.
    pub fn show(&self, set: &ElementSet) -> String {
        format!("{{{}}}", self.set_names(set).join(", "))
    }
}
