//! Blocking predicates, the stability check and the brute-force oracle.
//!
//! `e ∉ I` weakly (strongly) blocks `I` on `M_S` if `I + e` is independent in
//! `M_S`, or if `e` can be swapped for some `f ∈ I` with `e ≿_S f`
//! (`e ≻_S f`). The exchangeable `f` are exactly the fundamental circuit of
//! `e` minus `e`, so the predicates scan that circuit.

use serde::Serialize;

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::preference::Side;

/// Default bound on `|E|` for [`brute_force_stable_sets`].
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 16;

/// One value per side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PerSide<T> {
    pub d: T,
    pub h: T,
}

impl<T> PerSide<T> {
    pub fn get(&self, side: Side) -> &T {
        match side {
            Side::D => &self.d,
            Side::H => &self.h,
        }
    }

    fn from_fn(mut f: impl FnMut(Side) -> T) -> Self {
        PerSide {
            d: f(Side::D),
            h: f(Side::H),
        }
    }
}

/// Why `e` does or does not block `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub element: Element,
    pub in_e1: bool,
    pub weak: PerSide<bool>,
    pub strong: PerSide<bool>,
    pub verdict: bool,
    /// An exchangeable `f ∈ I` with `e ≿_S f`, when blocking relies on a swap.
    pub witness: PerSide<Option<Element>>,
}

fn check_candidate(instance: &Instance, i: &ElementSet, e: Element) -> Result<()> {
    if !instance.all().contains(e) {
        return Err(Error::OutsideGround(e));
    }
    if !instance.is_common_independent(i) {
        return Err(Error::Precondition(format!(
            "{} is not a common independent set",
            instance.show(i)
        )));
    }
    if i.contains(e) {
        return Err(Error::Precondition(format!(
            "{} already belongs to the set",
            instance.ground().name(e)
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct SideBlock {
    weak: bool,
    strong: bool,
    witness: Option<Element>,
}

fn side_block(instance: &Instance, i: &ElementSet, e: Element, side: Side) -> SideBlock {
    let m = instance.matroid(side);
    if !m.spans(i, e) {
        return SideBlock {
            weak: true,
            strong: true,
            witness: None,
        };
    }
    let pref = instance.pref(side);
    let exchangeable = m.circuit_of(e, i).without(e);
    let witness = exchangeable.iter().find(|&f| pref.weakly_prefers(e, f));
    let strong = exchangeable.iter().any(|f| pref.strictly_prefers(e, f));
    SideBlock {
        weak: witness.is_some(),
        strong,
        witness,
    }
}

pub fn weakly_blocks(instance: &Instance, i: &ElementSet, e: Element, side: Side) -> Result<bool> {
    check_candidate(instance, i, e)?;
    Ok(side_block(instance, i, e, side).weak)
}

pub fn strongly_blocks(instance: &Instance, i: &ElementSet, e: Element, side: Side) -> Result<bool> {
    check_candidate(instance, i, e)?;
    Ok(side_block(instance, i, e, side).strong)
}

/// Weak blocking straight from the exchange formulation: `I + e`
/// independent, or some `f ∈ I` with `e ≿ f` and `I + e - f` independent.
pub fn weakly_blocks_by_exchange(
    instance: &Instance,
    i: &ElementSet,
    e: Element,
    side: Side,
) -> Result<bool> {
    check_candidate(instance, i, e)?;
    Ok(blocks_by_exchange(instance, i, e, side, false))
}

/// Strong blocking straight from the exchange formulation.
pub fn strongly_blocks_by_exchange(
    instance: &Instance,
    i: &ElementSet,
    e: Element,
    side: Side,
) -> Result<bool> {
    check_candidate(instance, i, e)?;
    Ok(blocks_by_exchange(instance, i, e, side, true))
}

fn blocks_by_exchange(instance: &Instance, i: &ElementSet, e: Element, side: Side, strict: bool) -> bool {
    let m = instance.matroid(side);
    let pref = instance.pref(side);
    let ie = i.with(e);
    if m.independent(&ie) {
        return true;
    }
    i.iter().any(|f| {
        let preferred = if strict {
            pref.strictly_prefers(e, f)
        } else {
            pref.weakly_prefers(e, f)
        };
        preferred && m.independent(&ie.without(f))
    })
}

fn report(instance: &Instance, i: &ElementSet, e: Element) -> BlockReport {
    let sides = PerSide::from_fn(|s| side_block(instance, i, e, s));
    let weak = PerSide::from_fn(|s| sides.get(s).weak);
    let strong = PerSide::from_fn(|s| sides.get(s).strong);
    let in_e1 = instance.in_e1(e);
    let verdict = weak.d && weak.h && (in_e1 || strong.d || strong.h);
    BlockReport {
        element: e,
        in_e1,
        weak,
        strong,
        verdict,
        witness: PerSide::from_fn(|s| sides.get(s).witness),
    }
}

/// Full blocking report for `e` against `I`.
pub fn blocks(instance: &Instance, i: &ElementSet, e: Element) -> Result<BlockReport> {
    check_candidate(instance, i, e)?;
    Ok(report(instance, i, e))
}

/// Reports for every element outside `I` that blocks it.
pub fn blocking_reports(instance: &Instance, i: &ElementSet) -> Result<Vec<BlockReport>> {
    if !instance.is_common_independent(i) {
        return Err(Error::Precondition(format!(
            "{} is not a common independent set",
            instance.show(i)
        )));
    }
    Ok(instance
        .all()
        .difference(i)
        .iter()
        .map(|e| report(instance, i, e))
        .filter(|r| r.verdict)
        .collect())
}

/// `block(I)`: blockers of `I` that lie in `cl_H(I)`.
pub fn block_set(instance: &Instance, i: &ElementSet) -> Result<ElementSet> {
    let m_h = instance.matroid(Side::H);
    Ok(blocking_reports(instance, i)?
        .into_iter()
        .map(|r| r.element)
        .filter(|&e| m_h.spans(i, e))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instability {
    /// The set is dependent in the matroid of this side.
    NotCommonIndependent(Side),
    OutsideGround,
    Blocked(BlockReport),
}

/// Is `I` a non-uniformly stable common independent set? Total on all
/// subsets; on failure the first reason found is returned.
pub fn check_stable(instance: &Instance, i: &ElementSet) -> Result<(), Instability> {
    if !i.is_subset(&instance.all()) {
        return Err(Instability::OutsideGround);
    }
    for side in Side::BOTH {
        if !instance.matroid(side).independent(i) {
            return Err(Instability::NotCommonIndependent(side));
        }
    }
    for e in instance.all().difference(i).iter() {
        let r = report(instance, i, e);
        if r.verdict {
            return Err(Instability::Blocked(r));
        }
    }
    Ok(())
}

pub fn is_stable(instance: &Instance, i: &ElementSet) -> bool {
    check_stable(instance, i).is_ok()
}

/// Every non-uniformly stable common independent set, by enumerating all
/// subsets of `E`. Refuses when `|E| > bound`.
pub fn brute_force_stable_sets(instance: &Instance, bound: usize) -> Result<Vec<ElementSet>> {
    if instance.len() > bound {
        return Err(Error::TooLarge {
            size: instance.len(),
            bound,
        });
    }
    let mut found: Vec<ElementSet> = instance
        .all()
        .subsets()
        .filter(|s| is_stable(instance, s))
        .collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroundSet;
    use crate::matroid::{MatroidSpec, PartitionBlock, PartitionMatroid};
    use crate::preference::WeakOrder;

    /// 2x2 marriage, all pairs acceptable, partition matroids of capacity 1.
    fn marriage(tiers_d: [i64; 4], tiers_h: [i64; 4], e1: &[&str]) -> Instance {
        let ground = GroundSet::new(["m1w1", "m1w2", "m2w1", "m2w2"]).unwrap();
        let block = |names: [&str; 2]| PartitionBlock {
            members: ground.set(names).unwrap(),
            capacity: 1,
        };
        let men = PartitionMatroid::new(vec![block(["m1w1", "m1w2"]), block(["m2w1", "m2w2"])]).unwrap();
        let women = PartitionMatroid::new(vec![block(["m1w1", "m2w1"]), block(["m1w2", "m2w2"])]).unwrap();
        let tiers = |t: [i64; 4]| WeakOrder::new(t.iter().enumerate().map(|(i, &x)| (Element(i), x)));
        let e1 = ground.set(e1).unwrap();
        Instance::with_e1(
            ground,
            MatroidSpec::Partition(men),
            MatroidSpec::Partition(women),
            tiers(tiers_d),
            tiers(tiers_h),
            e1,
        )
        .unwrap()
    }

    const ALL: [&str; 4] = ["m1w1", "m1w2", "m2w1", "m2w2"];

    #[test]
    fn insertable_element_blocks_weakly_and_strongly() {
        let inst = marriage([0; 4], [0; 4], &ALL);
        let i = inst.set(["m1w1"]).unwrap();
        let e = inst.element("m2w2").unwrap();
        for side in Side::BOTH {
            assert!(weakly_blocks(&inst, &i, e, side).unwrap());
            assert!(strongly_blocks(&inst, &i, e, side).unwrap());
        }
    }

    #[test]
    fn tie_gives_weak_but_not_strong_blocking() {
        let inst = marriage([0; 4], [0; 4], &ALL);
        let i = inst.set(["m1w1", "m2w2"]).unwrap();
        let e = inst.element("m1w2").unwrap();
        assert!(weakly_blocks(&inst, &i, e, Side::H).unwrap());
        assert!(!strongly_blocks(&inst, &i, e, Side::H).unwrap());
        assert!(!strongly_blocks(&inst, &i, e, Side::D).unwrap());
    }

    #[test]
    fn strictly_worst_element_does_not_block() {
        // m1 ranks w1 over w2; e = m1w2 is worse than m1w1 on D.
        let inst = marriage([0, 1, 0, 0], [0; 4], &ALL);
        let i = inst.set(["m1w1", "m2w2"]).unwrap();
        let e = inst.element("m1w2").unwrap();
        assert!(!weakly_blocks(&inst, &i, e, Side::D).unwrap());
        // and the reverse: m1w2 strictly better than m1w1
        let inst = marriage([1, 0, 0, 0], [0; 4], &ALL);
        assert!(strongly_blocks(&inst, &i, e, Side::D).unwrap());
    }

    #[test]
    fn preconditions() {
        let inst = marriage([0; 4], [0; 4], &ALL);
        let dependent = inst.set(["m1w1", "m1w2"]).unwrap();
        let e = inst.element("m2w2").unwrap();
        assert!(weakly_blocks(&inst, &dependent, e, Side::D).is_err());
        let i = inst.set(["m1w1"]).unwrap();
        assert!(blocks(&inst, &i, inst.element("m1w1").unwrap()).is_err());
        assert!(blocks(&inst, &i, Element(99)).is_err());
    }

    #[test]
    fn verdict_follows_labels() {
        let i_names = ["m1w1", "m2w2"];
        // E1: weak on both sides suffices
        let inst = marriage([0; 4], [0; 4], &ALL);
        let i = inst.set(i_names).unwrap();
        assert!(blocks(&inst, &i, inst.element("m1w2").unwrap()).unwrap().verdict);
        // E2 with ties everywhere: no strong side
        let inst = marriage([0; 4], [0; 4], &[]);
        let r = blocks(&inst, &i, inst.element("m1w2").unwrap()).unwrap();
        assert!(r.weak.d && r.weak.h && !r.strong.d && !r.strong.h && !r.verdict);
        // E2, w2 strictly prefers m1 to m2: strong on H only
        let inst = marriage([0; 4], [0, 0, 0, 1], &[]);
        let r = blocks(&inst, &i, inst.element("m1w2").unwrap()).unwrap();
        assert!(r.strong.h && !r.strong.d && r.verdict);
    }

    #[test]
    fn block_set_examples() {
        let inst = marriage([0; 4], [0; 4], &ALL);
        let i = inst.set(["m1w1", "m2w2"]).unwrap();
        assert_eq!(block_set(&inst, &i).unwrap(), inst.set(["m1w2", "m2w1"]).unwrap());
        // m2w2 blocks {m1w1} by plain insertion, but is outside cl_H
        let i = inst.set(["m1w1"]).unwrap();
        let blockers: Vec<_> = blocking_reports(&inst, &i).unwrap().iter().map(|r| r.element).collect();
        let m2w2 = inst.element("m2w2").unwrap();
        assert!(blockers.contains(&m2w2));
        assert!(!block_set(&inst, &i).unwrap().contains(m2w2));
    }

    #[test]
    fn is_stable_examples() {
        let empty = Instance::with_e1(
            GroundSet::default(),
            MatroidSpec::Free,
            MatroidSpec::Free,
            WeakOrder::default(),
            WeakOrder::default(),
            ElementSet::new(),
        )
        .unwrap();
        assert!(is_stable(&empty, &ElementSet::new()));

        let single = Instance::with_e1(
            GroundSet::new(["e"]).unwrap(),
            MatroidSpec::Free,
            MatroidSpec::Free,
            WeakOrder::indifferent(1),
            WeakOrder::indifferent(1),
            ElementSet::new(),
        )
        .unwrap();
        assert!(!is_stable(&single, &ElementSet::new()));
        assert!(is_stable(&single, &ElementSet::singleton(Element(0))));

        let inst = marriage([0; 4], [0; 4], &ALL);
        assert!(inst.all().subsets().all(|s| !is_stable(&inst, &s)));
        assert_eq!(
            check_stable(&inst, &inst.set(["m1w1", "m1w2"]).unwrap()),
            Err(Instability::NotCommonIndependent(Side::D))
        );
    }

    #[test]
    fn brute_force_examples() {
        let inst = marriage([0; 4], [0; 4], &ALL);
        assert!(brute_force_stable_sets(&inst, 16).unwrap().is_empty());
        let inst = marriage([0; 4], [0; 4], &[]);
        let found = brute_force_stable_sets(&inst, 16).unwrap();
        assert_eq!(
            found,
            vec![inst.set(["m1w1", "m2w2"]).unwrap(), inst.set(["m1w2", "m2w1"]).unwrap()]
        );
        assert!(matches!(
            brute_force_stable_sets(&inst, 3),
            Err(Error::TooLarge { size: 4, bound: 3 })
        ));
    }
}
