//! Problem instances and their validation.

use std::fmt;
use std::sync::Arc;

use crate::element::{Element, ElementSet, GroundSet};
use crate::error::Result;
use crate::matroid::{MatroidSpec, MatroidView, Oracle};
use crate::preference::{Side, WeakOrder};

/// Two matroids on a common ground set with a weak order per side and the
/// `E1`/`E2` labelling. `E1` elements are judged by the super-stability rule,
/// `E2` elements by the strong-stability rule.
#[derive(Debug, Clone)]
pub struct Instance {
    ground: GroundSet,
    oracle_d: Arc<Oracle>,
    oracle_h: Arc<Oracle>,
    m_d: MatroidView,
    m_h: MatroidView,
    pref_d: WeakOrder,
    pref_h: WeakOrder,
    e1: ElementSet,
    e2: ElementSet,
}

impl Instance {
    /// Assembles an instance. Fails only when a matroid spec cannot speak
    /// about some element; every other problem is reported by
    /// [`Instance::validate`].
    pub fn new(
        ground: GroundSet,
        spec_d: MatroidSpec,
        spec_h: MatroidSpec,
        pref_d: WeakOrder,
        pref_h: WeakOrder,
        e1: ElementSet,
        e2: ElementSet,
    ) -> Result<Self> {
        let all = ground.all();
        let oracle_d = Arc::new(Oracle::new(spec_d));
        let oracle_h = Arc::new(Oracle::new(spec_h));
        let m_d = MatroidView::from_oracle(Arc::clone(&oracle_d), all.clone())?;
        let m_h = MatroidView::from_oracle(Arc::clone(&oracle_h), all)?;
        Ok(Self {
            ground,
            oracle_d,
            oracle_h,
            m_d,
            m_h,
            pref_d,
            pref_h,
            e1,
            e2,
        })
    }

    /// Same as [`Instance::new`] with `E2` taken as the complement of `E1`.
    pub fn with_e1(
        ground: GroundSet,
        spec_d: MatroidSpec,
        spec_h: MatroidSpec,
        pref_d: WeakOrder,
        pref_h: WeakOrder,
        e1: ElementSet,
    ) -> Result<Self> {
        let e2 = ground.all().difference(&e1);
        Self::new(ground, spec_d, spec_h, pref_d, pref_h, e1, e2)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn all(&self) -> ElementSet {
        self.ground.all()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn matroid(&self, side: Side) -> &MatroidView {
        match side {
            Side::D => &self.m_d,
            Side::H => &self.m_h,
        }
    }

    pub fn spec(&self, side: Side) -> &MatroidSpec {
        match side {
            Side::D => self.oracle_d.spec(),
            Side::H => self.oracle_h.spec(),
        }
    }

    pub fn pref(&self, side: Side) -> &WeakOrder {
        match side {
            Side::D => &self.pref_d,
            Side::H => &self.pref_h,
        }
    }

    pub fn e1(&self) -> &ElementSet {
        &self.e1
    }

    pub fn e2(&self) -> &ElementSet {
        &self.e2
    }

    pub fn in_e1(&self, e: Element) -> bool {
        self.e1.contains(e)
    }

    pub fn is_common_independent(&self, set: &ElementSet) -> bool {
        set.is_subset(&self.all())
            && self.m_d.independent(set)
            && self.m_h.independent(set)
    }

    /// Independence queries made against both concrete matroids so far.
    pub fn oracle_calls(&self) -> u64 {
        self.oracle_d.calls() + self.oracle_h.calls()
    }

    pub fn reset_oracle_calls(&self) {
        self.oracle_d.reset_calls();
        self.oracle_h.reset_calls();
    }

    /// Looks up a set by element names.
    pub fn set<I, S>(&self, names: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.ground.set(names)
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        self.ground.element(name)
    }

    pub fn show(&self, set: &ElementSet) -> String {
        self.ground.show(set)
    }

    /// Every broken instance invariant, each with its witnesses. Empty iff
    /// the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let all = self.all();
        let names = |s: &ElementSet| self.ground.set_names(s);

        for side in Side::BOTH {
            let missing = all.difference(&self.pref(side).domain());
            if !missing.is_empty() {
                out.push(Violation {
                    kind: ViolationKind::Unranked(side),
                    witnesses: names(&missing),
                });
            }
        }
        let overlap = self.e1.intersection(&self.e2);
        if !overlap.is_empty() {
            out.push(Violation {
                kind: ViolationKind::LabelOverlap,
                witnesses: names(&overlap),
            });
        }
        let uncovered = all.difference(&self.e1.union(&self.e2));
        if !uncovered.is_empty() {
            out.push(Violation {
                kind: ViolationKind::Unlabelled,
                witnesses: names(&uncovered),
            });
        }
        let stray = self.e1.union(&self.e2).difference(&all);
        if !stray.is_empty() {
            out.push(Violation {
                kind: ViolationKind::LabelOutsideGround,
                witnesses: stray.iter().map(|e| e.to_string()).collect(),
            });
        }
        for side in Side::BOTH {
            let m = self.matroid(side);
            let loops: ElementSet = all
                .iter()
                .filter(|&e| !m.independent(&ElementSet::singleton(e)))
                .collect();
            if !loops.is_empty() {
                out.push(Violation {
                    kind: ViolationKind::SingletonDependent(side),
                    witnesses: names(&loops),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// Some element has no tier on this side.
    Unranked(Side),
    /// `E1 ∩ E2 ≠ ∅`.
    LabelOverlap,
    /// `E1 ∪ E2 ≠ E`.
    Unlabelled,
    LabelOutsideGround,
    /// `{e}` is dependent in the matroid of this side.
    SingletonDependent(Side),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clause = match self.kind {
            ViolationKind::Unranked(side) => format!("no {side} tier"),
            ViolationKind::LabelOverlap => "in both e1 and e2".to_string(),
            ViolationKind::Unlabelled => "in neither e1 nor e2".to_string(),
            ViolationKind::LabelOutsideGround => "label outside ground set".to_string(),
            ViolationKind::SingletonDependent(side) => {
                format!("singleton dependent in matroid_{}", side.to_string().to_lowercase())
            }
        };
        write!(f, "{clause}: {}", self.witnesses.join(", "))
    }
}
