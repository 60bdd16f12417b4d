use std::sync::Arc;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};

use super::spec::{MatroidSpec, Oracle};

/// An independence oracle over an explicit ground set, composed lazily from a
/// concrete matroid by restriction, contraction and direct sum.
///
/// Contractions are kept flat: contracting a contraction merges the two
/// contracted sets and their bases, so `inner` is never itself a contraction.
#[derive(Debug, Clone)]
pub struct MatroidView {
    ground: ElementSet,
    kind: ViewKind,
}

#[derive(Debug, Clone)]
enum ViewKind {
    Base(Arc<Oracle>),
    Contraction {
        inner: Arc<MatroidView>,
        contracted: ElementSet,
        contraction_base: ElementSet,
    },
    DirectSum(Arc<[MatroidView]>),
}

impl MatroidView {
    /// A concrete matroid on `ground`. Fails when the spec does not cover
    /// every element of `ground`.
    pub fn new(spec: MatroidSpec, ground: ElementSet) -> Result<Self> {
        Self::from_oracle(Arc::new(Oracle::new(spec)), ground)
    }

    pub fn from_oracle(oracle: Arc<Oracle>, ground: ElementSet) -> Result<Self> {
        if let Some(domain) = oracle.spec().domain() {
            if let Some(e) = ground.difference(&domain).first() {
                return Err(Error::InvalidMatroid(format!(
                    "matroid does not define element {e}"
                )));
            }
        }
        Ok(Self {
            ground,
            kind: ViewKind::Base(oracle),
        })
    }

    /// The matroid `(∅, {∅})`.
    pub fn empty() -> Self {
        Self {
            ground: ElementSet::new(),
            kind: ViewKind::DirectSum(Arc::from(Vec::new())),
        }
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    /// Direct-sum summands, if this view is a direct sum.
    pub fn summands(&self) -> Option<&[MatroidView]> {
        match &self.kind {
            ViewKind::DirectSum(parts) => Some(parts),
            _ => None,
        }
    }

    /// Contracted set and its fixed base, if this view is a contraction.
    pub fn contraction(&self) -> Option<(&ElementSet, &ElementSet)> {
        match &self.kind {
            ViewKind::Contraction {
                contracted,
                contraction_base,
                ..
            } => Some((contracted, contraction_base)),
            _ => None,
        }
    }

    fn check_domain(&self, x: &ElementSet) -> Result<()> {
        match x.difference(&self.ground).first() {
            Some(e) => Err(Error::OutsideGround(e)),
            None => Ok(()),
        }
    }

    fn check_element(&self, e: Element) -> Result<()> {
        if self.ground.contains(e) {
            Ok(())
        } else {
            Err(Error::OutsideGround(e))
        }
    }

    pub fn is_independent(&self, x: &ElementSet) -> Result<bool> {
        self.check_domain(x)?;
        Ok(self.independent(x))
    }

    /// Unchecked independence test; `x` must lie inside the ground set.
    pub(crate) fn independent(&self, x: &ElementSet) -> bool {
        debug_assert!(x.is_subset(&self.ground), "{x:?} outside {:?}", self.ground);
        match &self.kind {
            ViewKind::Base(oracle) => oracle.query(x),
            ViewKind::Contraction {
                inner,
                contraction_base,
                ..
            } => inner.independent(&x.union(contraction_base)),
            ViewKind::DirectSum(parts) => parts
                .iter()
                .all(|p| p.independent(&x.intersection(&p.ground))),
        }
    }

    pub fn rank(&self, x: &ElementSet) -> Result<usize> {
        self.check_domain(x)?;
        Ok(self.rank_of(x))
    }

    pub(crate) fn rank_of(&self, x: &ElementSet) -> usize {
        match &self.kind {
            ViewKind::DirectSum(parts) => parts
                .iter()
                .map(|p| p.rank_of(&x.intersection(&p.ground)))
                .sum(),
            _ => self.greedy_base_of(x).len(),
        }
    }

    /// A maximal independent subset of `x`, built by inserting elements in
    /// canonical order.
    pub fn greedy_base(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_domain(x)?;
        Ok(self.greedy_base_of(x))
    }

    pub(crate) fn greedy_base_of(&self, x: &ElementSet) -> ElementSet {
        match &self.kind {
            ViewKind::DirectSum(parts) => {
                let mut base = ElementSet::new();
                for p in parts.iter() {
                    base.union_with(&p.greedy_base_of(&x.intersection(&p.ground)));
                }
                base
            }
            _ => {
                let mut base = ElementSet::new();
                for e in x.iter() {
                    base.insert(e);
                    if !self.independent(&base) {
                        base.remove(e);
                    }
                }
                base
            }
        }
    }

    /// `{u ∈ ground : rank(x + u) = rank(x)}`.
    pub fn closure(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_domain(x)?;
        let base = self.greedy_base_of(x);
        Ok(self
            .ground
            .iter()
            .filter(|&u| x.contains(u) || !self.independent(&base.with(u)))
            .collect())
    }

    /// Is `u ∈ cl(i)` for an independent `i`? Equivalent to `i + u` being
    /// dependent or `u ∈ i`.
    pub(crate) fn spans(&self, i: &ElementSet, u: Element) -> bool {
        i.contains(u) || !self.independent(&i.with(u))
    }

    /// The unique circuit inside `i + u`, for independent `i` and
    /// `u ∈ cl(i) \ i`.
    pub fn fundamental_circuit(&self, u: Element, i: &ElementSet) -> Result<ElementSet> {
        self.check_element(u)?;
        self.check_domain(i)?;
        if !self.independent(i) {
            return Err(Error::Precondition(format!(
                "fundamental circuit: base set {i:?} is not independent"
            )));
        }
        if i.contains(u) {
            return Err(Error::Precondition(format!(
                "fundamental circuit: {u} already belongs to {i:?}"
            )));
        }
        if self.independent(&i.with(u)) {
            return Err(Error::Precondition(format!(
                "fundamental circuit: {u} is not in the closure of {i:?}"
            )));
        }
        Ok(self.circuit_of(u, i))
    }

    /// Unchecked fundamental circuit: `{v ∈ i + u : i + u - v independent}`.
    /// In a direct sum the circuit lives inside the summand holding `u`.
    pub(crate) fn circuit_of(&self, u: Element, i: &ElementSet) -> ElementSet {
        if let ViewKind::DirectSum(parts) = &self.kind {
            let part = parts
                .iter()
                .find(|p| p.ground.contains(u))
                .expect("element belongs to a summand");
            return part.circuit_of(u, &i.intersection(&part.ground));
        }
        let iu = i.with(u);
        let mut circuit = ElementSet::singleton(u);
        for v in i.iter() {
            if self.independent(&iu.without(v)) {
                circuit.insert(v);
            }
        }
        circuit
    }

    /// A circuit contained in `x`, or `None` when `x` is independent. Shrinks
    /// `x` by dropping elements in canonical order while it stays dependent.
    pub fn find_circuit_within(&self, x: &ElementSet) -> Result<Option<ElementSet>> {
        self.check_domain(x)?;
        if self.independent(x) {
            return Ok(None);
        }
        let mut c = x.clone();
        for e in x.iter() {
            let smaller = c.without(e);
            if !self.independent(&smaller) {
                c = smaller;
            }
        }
        Ok(Some(c))
    }

    /// `M | x`.
    pub fn restrict(&self, x: &ElementSet) -> Result<MatroidView> {
        self.check_domain(x)?;
        Ok(self.restrict_to(x))
    }

    pub(crate) fn restrict_to(&self, x: &ElementSet) -> MatroidView {
        let kind = match &self.kind {
            ViewKind::DirectSum(parts) => ViewKind::DirectSum(
                parts
                    .iter()
                    .map(|p| p.restrict_to(&x.intersection(&p.ground)))
                    .collect(),
            ),
            other => other.clone(),
        };
        MatroidView {
            ground: x.clone(),
            kind,
        }
    }

    /// `M / x`, using the greedy base of `M | x` as the contraction base.
    pub fn contract(&self, x: &ElementSet) -> Result<MatroidView> {
        self.check_domain(x)?;
        let base = self.greedy_base_of(x);
        Ok(self.contract_with(x, base))
    }

    /// `M / x` with a caller-chosen base of `M | x`.
    pub fn contract_with_base(&self, x: &ElementSet, base: &ElementSet) -> Result<MatroidView> {
        self.check_domain(x)?;
        if !base.is_subset(x) {
            return Err(Error::Precondition(
                "contraction base must lie inside the contracted set".into(),
            ));
        }
        if !self.independent(base) || self.rank_of(x) != base.len() {
            return Err(Error::Precondition(format!(
                "{base:?} is not a base of the contracted set {x:?}"
            )));
        }
        Ok(self.contract_with(x, base.clone()))
    }

    fn contract_with(&self, x: &ElementSet, base: ElementSet) -> MatroidView {
        let ground = self.ground.difference(x);
        let kind = match &self.kind {
            ViewKind::Contraction {
                inner,
                contracted,
                contraction_base,
            } => ViewKind::Contraction {
                inner: Arc::clone(inner),
                contracted: contracted.union(x),
                contraction_base: contraction_base.union(&base),
            },
            _ => ViewKind::Contraction {
                inner: Arc::new(self.clone()),
                contracted: x.clone(),
                contraction_base: base,
            },
        };
        MatroidView { ground, kind }
    }

    /// Direct sum of views with pairwise disjoint ground sets.
    pub fn direct_sum(parts: Vec<MatroidView>) -> Result<MatroidView> {
        let mut ground = ElementSet::new();
        for p in &parts {
            if let Some(e) = ground.intersection(&p.ground).first() {
                return Err(Error::OverlappingSummands(e));
            }
            ground.union_with(&p.ground);
        }
        Ok(MatroidView {
            ground,
            kind: ViewKind::DirectSum(parts.into()),
        })
    }

    /// Total oracle queries made so far by the concrete matroids under this
    /// view (each distinct oracle counted once).
    pub fn oracle_calls(&self) -> u64 {
        let mut seen: Vec<*const Oracle> = Vec::new();
        let mut total = 0;
        self.visit_oracles(&mut |o| {
            let p = Arc::as_ptr(o);
            if !seen.contains(&p) {
                seen.push(p);
                total += o.calls();
            }
        });
        total
    }

    fn visit_oracles(&self, f: &mut dyn FnMut(&Arc<Oracle>)) {
        match &self.kind {
            ViewKind::Base(o) => f(o),
            ViewKind::Contraction { inner, .. } => inner.visit_oracles(f),
            ViewKind::DirectSum(parts) => parts.iter().for_each(|p| p.visit_oracles(f)),
        }
    }
}
