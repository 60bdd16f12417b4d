//! Concrete matroid families and their independence oracles.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use petgraph::unionfind::UnionFind;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};

/// One block of a partition matroid: at most `capacity` of `members` may be
/// chosen together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionBlock {
    pub members: ElementSet,
    pub capacity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    blocks: Vec<PartitionBlock>,
    block_of: BTreeMap<Element, usize>,
}

impl PartitionMatroid {
    pub fn new(blocks: Vec<PartitionBlock>) -> Result<Self> {
        let mut block_of = BTreeMap::new();
        for (k, block) in blocks.iter().enumerate() {
            for e in block.members.iter() {
                if block_of.insert(e, k).is_some() {
                    return Err(Error::InvalidMatroid(format!(
                        "partition blocks overlap on element {e}"
                    )));
                }
            }
        }
        Ok(Self { blocks, block_of })
    }

    pub fn blocks(&self) -> &[PartitionBlock] {
        &self.blocks
    }

    pub fn covered(&self) -> ElementSet {
        self.block_of.keys().copied().collect()
    }

    fn is_independent(&self, x: &ElementSet) -> bool {
        let mut used = vec![0usize; self.blocks.len()];
        for e in x.iter() {
            let Some(&k) = self.block_of.get(&e) else {
                return false;
            };
            used[k] += 1;
            if used[k] > self.blocks[k].capacity {
                return false;
            }
        }
        true
    }
}

/// Cycle matroid of a multigraph: a set of edges is independent iff it is a
/// forest. Self-loop edges are loops of the matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicMatroid {
    vertices: Vec<String>,
    edges: BTreeMap<Element, (usize, usize)>,
}

impl GraphicMatroid {
    /// `edges` maps each element to its two endpoint labels.
    pub fn new<S: AsRef<str>>(edges: impl IntoIterator<Item = (Element, S, S)>) -> Self {
        let mut vertices: Vec<String> = Vec::new();
        let mut raw = Vec::new();
        for (e, u, v) in edges {
            raw.push((e, u.as_ref().to_string(), v.as_ref().to_string()));
        }
        for (_, u, v) in &raw {
            vertices.push(u.clone());
            vertices.push(v.clone());
        }
        vertices.sort();
        vertices.dedup();
        let pos = |name: &str| vertices.binary_search_by(|v| v.as_str().cmp(name)).unwrap();
        let edges = raw
            .iter()
            .map(|(e, u, v)| (*e, (pos(u), pos(v))))
            .collect();
        Self { vertices, edges }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Element, &str, &str)> + '_ {
        self.edges
            .iter()
            .map(|(&e, &(u, v))| (e, self.vertices[u].as_str(), self.vertices[v].as_str()))
    }

    pub fn covered(&self) -> ElementSet {
        self.edges.keys().copied().collect()
    }

    fn is_independent(&self, x: &ElementSet) -> bool {
        let mut forest = UnionFind::<usize>::new(self.vertices.len());
        for e in x.iter() {
            let Some(&(u, v)) = self.edges.get(&e) else {
                return false;
            };
            if !forest.union(u, v) {
                return false;
            }
        }
        true
    }
}

/// A matroid given by its full family of independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitMatroid {
    ground: ElementSet,
    family: HashSet<ElementSet>,
}

impl ExplicitMatroid {
    /// Builds the matroid and checks (I1), (I2) and `∅ ∈ family` eagerly.
    /// Exponential in the family size; meant for small ground sets.
    pub fn new(ground: ElementSet, family: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let family: HashSet<ElementSet> = family.into_iter().collect();
        if !family.contains(&ElementSet::new()) {
            return Err(Error::InvalidMatroid(
                "explicit family does not contain the empty set".into(),
            ));
        }
        for set in &family {
            if !set.is_subset(&ground) {
                return Err(Error::InvalidMatroid(format!(
                    "explicit independent set {set:?} leaves the ground set"
                )));
            }
            if let Some(e) = set.iter().find(|&e| !family.contains(&set.without(e))) {
                return Err(Error::InvalidMatroid(format!(
                    "explicit family is not downward closed: {set:?} minus {e} is missing"
                )));
            }
        }
        let sets: Vec<&ElementSet> = family.iter().collect();
        for small in &sets {
            for large in &sets {
                // with (I1) in place, checking |J| = |I| + 1 is enough
                if small.len() + 1 == large.len()
                    && !large
                        .difference(small)
                        .iter()
                        .any(|u| family.contains(&small.with(u)))
                {
                    return Err(Error::InvalidMatroid(format!(
                        "explicit family violates the exchange axiom for {small:?} and {large:?}"
                    )));
                }
            }
        }
        Ok(Self { ground, family })
    }

    /// Materialises the independent sets of `oracle` over `ground`.
    pub fn from_oracle(ground: ElementSet, oracle: impl Fn(&ElementSet) -> bool) -> Result<Self> {
        let family: Vec<ElementSet> = ground.subsets().filter(|s| oracle(s)).collect();
        Self::new(ground, family)
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    /// Independent sets in canonical order.
    pub fn independent_sets(&self) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = self.family.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    fn is_independent(&self, x: &ElementSet) -> bool {
        self.family.contains(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidSpec {
    /// Every subset is independent.
    Free,
    /// Sets of size at most `rank`.
    Uniform { rank: usize },
    Partition(PartitionMatroid),
    Graphic(GraphicMatroid),
    Explicit(ExplicitMatroid),
}

impl MatroidSpec {
    /// Elements the spec can speak about, or `None` when it accepts any.
    pub fn domain(&self) -> Option<ElementSet> {
        match self {
            MatroidSpec::Free | MatroidSpec::Uniform { .. } => None,
            MatroidSpec::Partition(p) => Some(p.covered()),
            MatroidSpec::Graphic(g) => Some(g.covered()),
            MatroidSpec::Explicit(x) => Some(x.ground.clone()),
        }
    }

    pub fn is_independent(&self, x: &ElementSet) -> bool {
        match self {
            MatroidSpec::Free => true,
            MatroidSpec::Uniform { rank } => x.len() <= *rank,
            MatroidSpec::Partition(p) => p.is_independent(x),
            MatroidSpec::Graphic(g) => g.is_independent(x),
            MatroidSpec::Explicit(m) => m.is_independent(x),
        }
    }
}

/// A matroid spec together with a call counter. Every independence query
/// that reaches a concrete family goes through [`Oracle::query`].
#[derive(Debug)]
pub struct Oracle {
    spec: MatroidSpec,
    calls: AtomicU64,
}

impl Oracle {
    pub fn new(spec: MatroidSpec) -> Self {
        Self {
            spec,
            calls: AtomicU64::new(0),
        }
    }

    pub fn spec(&self) -> &MatroidSpec {
        &self.spec
    }

    pub fn query(&self, x: &ElementSet) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.spec.is_independent(x)
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}
