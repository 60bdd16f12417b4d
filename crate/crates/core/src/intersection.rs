//! Matroid intersection: maximum common independent sets, Edmonds' min-max
//! function, the critical subset and exchange-graph utilities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::MatroidView;

/// Exchange graph of a common independent set `I` of `M1`, `M2`.
///
/// Arc `v -> u` (`v ∈ I`, `u ∉ I`) when `I + u - v` stays independent in
/// `M1` although `I + u` does not; arc `u -> v` likewise for `M2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    vertices: ElementSet,
    independent: ElementSet,
    arcs: BTreeSet<(Element, Element)>,
}

/// A simple directed cycle, as its vertex sequence `v0 -> v1 -> ... -> v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle(pub Vec<Element>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        let n = self.0.len();
        (0..n).map(move |k| (self.0[k], self.0[(k + 1) % n]))
    }

    pub fn vertices(&self) -> ElementSet {
        self.0.iter().collect()
    }
}

fn same_ground(m1: &MatroidView, m2: &MatroidView) -> Result<()> {
    if m1.ground() == m2.ground() {
        Ok(())
    } else {
        Err(Error::GroundMismatch)
    }
}

impl ExchangeGraph {
    /// A graph with the given arcs, for callers that build one by hand.
    pub fn from_arcs(
        vertices: ElementSet,
        independent: ElementSet,
        arcs: impl IntoIterator<Item = (Element, Element)>,
    ) -> Self {
        Self {
            vertices,
            independent,
            arcs: arcs.into_iter().collect(),
        }
    }

    pub fn vertices(&self) -> &ElementSet {
        &self.vertices
    }

    /// The common independent set the graph was built from.
    pub fn independent_set(&self) -> &ElementSet {
        &self.independent
    }

    pub fn arcs(&self) -> &BTreeSet<(Element, Element)> {
        &self.arcs
    }

    pub fn has_arc(&self, from: Element, to: Element) -> bool {
        self.arcs.contains(&(from, to))
    }

    fn successors(&self) -> BTreeMap<Element, Vec<Element>> {
        let mut succ: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
        for &(a, b) in &self.arcs {
            succ.entry(a).or_default().push(b);
        }
        succ
    }

    /// Vertices reachable from `sources` (sources included).
    pub fn reachable_from(&self, sources: &ElementSet) -> ElementSet {
        let succ = self.successors();
        let mut seen = sources.clone();
        let mut queue: VecDeque<Element> = sources.iter().collect();
        while let Some(v) = queue.pop_front() {
            for &w in succ.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `I ⊖ C`: add the cycle's vertices outside `I`, drop those inside.
    pub fn apply_cycle(&self, cycle: &Cycle) -> Result<ElementSet> {
        self.check_cycle(cycle)?;
        let on_cycle = cycle.vertices();
        let outside = on_cycle.difference(&self.independent);
        let inside = on_cycle.intersection(&self.independent);
        Ok(self.independent.union(&outside).difference(&inside))
    }

    fn check_cycle(&self, cycle: &Cycle) -> Result<()> {
        if cycle.len() < 2 {
            return Err(Error::Precondition("a cycle needs at least two vertices".into()));
        }
        if cycle.vertices().len() != cycle.len() {
            return Err(Error::Precondition("cycle repeats a vertex".into()));
        }
        if let Some((a, b)) = cycle.arcs().find(|&(a, b)| !self.has_arc(a, b)) {
            return Err(Error::Precondition(format!(
                "{a} -> {b} is not an arc of the exchange graph"
            )));
        }
        Ok(())
    }

    /// Arcs not on `cycle` that join two of its vertices. Each such arc closes
    /// a strictly shorter cycle together with part of `cycle`.
    pub fn shortcut_arcs(&self, cycle: &Cycle) -> Vec<(Element, Element)> {
        let on_cycle = cycle.vertices();
        let cycle_arcs: BTreeSet<_> = cycle.arcs().collect();
        self.arcs
            .iter()
            .copied()
            .filter(|&(a, b)| {
                on_cycle.contains(a) && on_cycle.contains(b) && !cycle_arcs.contains(&(a, b))
            })
            .collect()
    }

    /// Some simple directed cycle without shortcut arcs, or `None` when the
    /// graph is acyclic. Starts from the first cycle found by depth-first
    /// search and keeps replacing it with the cycle closed by its first
    /// shortcut arc; the length drops every time.
    pub fn shortcut_free_cycle(&self) -> Option<Cycle> {
        let mut cycle = self.find_cycle()?;
        while let Some(&(a, b)) = self.shortcut_arcs(&cycle).first() {
            // new cycle: b -> ... -> a along the old one, then a -> b
            let n = cycle.len();
            let start = cycle.0.iter().position(|&v| v == b).expect("on cycle");
            let mut next = Vec::new();
            let mut k = start;
            loop {
                next.push(cycle.0[k]);
                if cycle.0[k] == a {
                    break;
                }
                k = (k + 1) % n;
            }
            debug_assert!(next.len() < n);
            cycle = Cycle(next);
        }
        Some(cycle)
    }

    fn find_cycle(&self) -> Option<Cycle> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let succ = self.successors();
        let mut mark: BTreeMap<Element, Mark> =
            self.vertices.iter().map(|v| (v, Mark::New)).collect();
        for root in self.vertices.iter() {
            if mark[&root] != Mark::New {
                continue;
            }
            // iterative DFS keeping the active path explicitly
            let mut path: Vec<(Element, usize)> = vec![(root, 0)];
            mark.insert(root, Mark::Active);
            while let Some(&mut (v, ref mut next)) = path.last_mut() {
                let out = succ.get(&v).map(Vec::as_slice).unwrap_or(&[]);
                if *next < out.len() {
                    let w = out[*next];
                    *next += 1;
                    match mark.get(&w).copied().unwrap_or(Mark::Done) {
                        Mark::New => {
                            mark.insert(w, Mark::Active);
                            path.push((w, 0));
                        }
                        Mark::Active => {
                            let from = path.iter().position(|&(x, _)| x == w).expect("active");
                            return Some(Cycle(path[from..].iter().map(|&(x, _)| x).collect()));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark.insert(v, Mark::Done);
                    path.pop();
                }
            }
        }
        None
    }
}

/// Builds the exchange graph of `i` with respect to `m1`, `m2`.
pub fn exchange_graph(m1: &MatroidView, m2: &MatroidView, i: &ElementSet) -> Result<ExchangeGraph> {
    same_ground(m1, m2)?;
    if !m1.is_independent(i)? || !m2.is_independent(i)? {
        return Err(Error::Precondition(format!(
            "{i:?} is not a common independent set"
        )));
    }
    Ok(build_graph(m1, m2, i))
}

fn build_graph(m1: &MatroidView, m2: &MatroidView, i: &ElementSet) -> ExchangeGraph {
    let mut arcs = BTreeSet::new();
    for u in m1.ground().difference(i).iter() {
        if m1.spans(i, u) {
            for v in m1.circuit_of(u, i).without(u).iter() {
                arcs.insert((v, u));
            }
        }
        if m2.spans(i, u) {
            for v in m2.circuit_of(u, i).without(u).iter() {
                arcs.insert((u, v));
            }
        }
    }
    ExchangeGraph {
        vertices: m1.ground().clone(),
        independent: i.clone(),
        arcs,
    }
}

/// Final state of the augmenting-path algorithm.
struct Saturated {
    set: ElementSet,
    graph: ExchangeGraph,
    sources: ElementSet,
}

fn saturate(m1: &MatroidView, m2: &MatroidView) -> Saturated {
    let ground = m1.ground();
    let mut current = ElementSet::new();
    loop {
        let outside = ground.difference(&current);
        let sources: ElementSet = outside.iter().filter(|&u| !m1.spans(&current, u)).collect();
        let sinks: ElementSet = outside.iter().filter(|&u| !m2.spans(&current, u)).collect();
        let graph = build_graph(m1, m2, &current);
        match shortest_path(&graph, &sources, &sinks) {
            Some(path) => {
                for (k, &v) in path.iter().enumerate() {
                    if k % 2 == 0 {
                        current.insert(v);
                    } else {
                        current.remove(v);
                    }
                }
            }
            None => {
                return Saturated {
                    set: current,
                    graph,
                    sources,
                }
            }
        }
    }
}

/// Lexicographically smallest among the shortest source-to-sink paths.
fn shortest_path(
    graph: &ExchangeGraph,
    sources: &ElementSet,
    sinks: &ElementSet,
) -> Option<Vec<Element>> {
    let mut pred: BTreeMap<Element, Vec<Element>> = BTreeMap::new();
    for &(a, b) in &graph.arcs {
        pred.entry(b).or_default().push(a);
    }
    // distance to the nearest sink, by backward BFS
    let mut dist: BTreeMap<Element, usize> = sinks.iter().map(|v| (v, 0)).collect();
    let mut queue: VecDeque<Element> = sinks.iter().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for &w in pred.get(&v).into_iter().flatten() {
            if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(w) {
                slot.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    let start = sources
        .iter()
        .filter_map(|s| dist.get(&s).map(|&d| (d, s)))
        .min()?;
    let succ = graph.successors();
    let (mut d, mut v) = start;
    let mut path = vec![v];
    while d > 0 {
        v = *succ[&v]
            .iter()
            .filter(|w| dist.get(w) == Some(&(d - 1)))
            .min()
            .expect("distance labels are consistent");
        d -= 1;
        path.push(v);
    }
    Some(path)
}

/// A maximum-size common independent set, by repeated shortest augmenting
/// paths from `I = ∅`.
pub fn max_common_independent(m1: &MatroidView, m2: &MatroidView) -> Result<ElementSet> {
    same_ground(m1, m2)?;
    Ok(saturate(m1, m2).set)
}

/// `μ(X) = rk1(U \ X) + rk2(X)`.
pub fn mu(m1: &MatroidView, m2: &MatroidView, x: &ElementSet) -> Result<usize> {
    same_ground(m1, m2)?;
    let rest = m1.ground().difference(x);
    Ok(m1.rank(&rest)? + m2.rank(x)?)
}

/// The inclusion-wise minimal minimiser of [`mu`].
///
/// Once no augmenting path is left, the vertices reachable from the source
/// class `{u ∉ I : I + u ∈ I1}` form a minimiser, and every minimiser
/// contains the sources and is closed under out-arcs, so this set is the
/// minimal one.
pub fn critical_subset(m1: &MatroidView, m2: &MatroidView) -> Result<ElementSet> {
    same_ground(m1, m2)?;
    let done = saturate(m1, m2);
    Ok(done.graph.reachable_from(&done.sources))
}

/// Maximum common independent set and critical subset from one run.
pub fn max_and_critical(m1: &MatroidView, m2: &MatroidView) -> Result<(ElementSet, ElementSet)> {
    same_ground(m1, m2)?;
    let done = saturate(m1, m2);
    let critical = done.graph.reachable_from(&done.sources);
    Ok((done.set, critical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{ExplicitMatroid, MatroidSpec, PartitionBlock, PartitionMatroid};

    fn set(ix: &[usize]) -> ElementSet {
        ix.iter().map(|&i| Element(i)).collect()
    }

    fn uniform(rank: usize, n: usize) -> MatroidView {
        MatroidView::new(MatroidSpec::Uniform { rank }, ElementSet::full(n)).unwrap()
    }

    fn free(n: usize) -> MatroidView {
        MatroidView::new(MatroidSpec::Free, ElementSet::full(n)).unwrap()
    }

    fn all_loops(n: usize) -> MatroidView {
        let m = ExplicitMatroid::new(ElementSet::full(n), [ElementSet::new()]).unwrap();
        MatroidView::new(MatroidSpec::Explicit(m), ElementSet::full(n)).unwrap()
    }

    fn partition(blocks: &[(&[usize], usize)], n: usize) -> MatroidView {
        let blocks = blocks
            .iter()
            .map(|(m, c)| PartitionBlock { members: set(m), capacity: *c })
            .collect();
        let p = PartitionMatroid::new(blocks).unwrap();
        MatroidView::new(MatroidSpec::Partition(p), ElementSet::full(n)).unwrap()
    }

    #[test]
    fn exchange_graph_examples() {
        let m = uniform(1, 2);
        let g = exchange_graph(&m, &m, &set(&[0])).unwrap();
        assert_eq!(
            g.arcs().iter().copied().collect::<Vec<_>>(),
            vec![(Element(0), Element(1)), (Element(1), Element(0))]
        );
        assert!(exchange_graph(&m, &m, &set(&[])).unwrap().arcs().is_empty());
        let f = free(2);
        assert!(exchange_graph(&f, &f, &set(&[0])).unwrap().arcs().is_empty());
        assert!(exchange_graph(&m, &m, &set(&[0, 1])).is_err());
    }

    #[test]
    fn max_common_independent_examples() {
        let m = uniform(1, 2);
        assert_eq!(max_common_independent(&m, &m).unwrap(), set(&[0]));
        let p = partition(&[(&[0, 1], 1), (&[2], 1)], 3);
        assert_eq!(max_common_independent(&p, &uniform(2, 3)).unwrap().len(), 2);
        assert!(max_common_independent(&all_loops(3), &free(3)).unwrap().is_empty());
        assert_eq!(
            max_common_independent(&free(2), &free(3)).unwrap_err(),
            Error::GroundMismatch
        );
    }

    #[test]
    fn mu_examples() {
        let m = uniform(1, 2);
        assert_eq!(mu(&m, &m, &set(&[])).unwrap(), 1);
        assert_eq!(mu(&m, &m, &set(&[0])).unwrap(), 2);
        let p = partition(&[(&[0, 1], 1), (&[2], 1)], 3);
        assert_eq!(mu(&free(3), &p, &ElementSet::full(3)).unwrap(), 2);
    }

    #[test]
    fn critical_subset_examples() {
        let m = uniform(1, 2);
        assert_eq!(critical_subset(&m, &m).unwrap(), set(&[]));
        assert_eq!(critical_subset(&free(3), &free(3)).unwrap(), set(&[]));
        // μ(∅) = rk1({a}) + 0 = 0 for an all-loop M1, so ∅ is the minimal minimiser
        assert_eq!(critical_subset(&all_loops(1), &free(1)).unwrap(), set(&[]));
        // the other orientation: M2 all loops makes {a} the only minimiser
        assert_eq!(critical_subset(&free(1), &all_loops(1)).unwrap(), set(&[0]));
    }

    #[test]
    fn apply_cycle_examples() {
        let m = uniform(1, 2);
        let g = exchange_graph(&m, &m, &set(&[0])).unwrap();
        assert_eq!(g.apply_cycle(&Cycle(vec![Element(0), Element(1)])).unwrap(), set(&[1]));
        assert!(g.apply_cycle(&Cycle(vec![Element(0)])).is_err());

        // I = {a, c}; M1 pairs (a, b), (c, d); M2 pairs (b, c), (d, a):
        // the graph is the single 4-cycle a -> b -> c -> d -> a.
        let m1 = partition(&[(&[0, 1], 1), (&[2, 3], 1)], 4);
        let m2 = partition(&[(&[1, 2], 1), (&[3, 0], 1)], 4);
        let g = exchange_graph(&m1, &m2, &set(&[0, 2])).unwrap();
        let c = g.shortcut_free_cycle().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(g.apply_cycle(&c).unwrap(), set(&[1, 3]));
    }

    #[test]
    fn apply_cycle_rejects_non_arcs() {
        let g = ExchangeGraph::from_arcs(set(&[0, 1, 2]), set(&[0]), [(Element(0), Element(1))]);
        assert!(g.apply_cycle(&Cycle(vec![Element(0), Element(1)])).is_err());
        assert!(g.shortcut_free_cycle().is_none());
    }

    #[test]
    fn shortcut_elimination() {
        let (a, b, c, d) = (Element(0), Element(1), Element(2), Element(3));
        let g = ExchangeGraph::from_arcs(
            set(&[0, 1, 2, 3]),
            set(&[]),
            [(a, b), (b, c), (c, d), (d, a), (b, a)],
        );
        let cycle = g.shortcut_free_cycle().unwrap();
        assert!(g.shortcut_arcs(&cycle).is_empty());
        assert_eq!(cycle, Cycle(vec![a, b]));

        let two = ExchangeGraph::from_arcs(set(&[0, 1]), set(&[]), [(a, b), (b, a)]);
        assert_eq!(two.shortcut_free_cycle().unwrap().len(), 2);
    }
}
