//! Brute-force oracles shared by the integration tests. Everything here talks
//! to matroids only through `is_independent` and enumerates subsets.

#![allow(dead_code)]

pub mod lemmas;

use stablemat::generate::{marriage_ties, random_explicit, random_partition, Labels, MarriageParams, RandomParams};
use stablemat::matroid::{PartitionBlock, PartitionMatroid};
use stablemat::{Element, ElementSet, GroundSet, Instance, MatroidSpec, MatroidView, Side, WeakOrder};

pub fn indep(m: &MatroidView, x: &ElementSet) -> bool {
    m.is_independent(x).unwrap()
}

pub fn independent_sets(m: &MatroidView) -> Vec<ElementSet> {
    m.ground().subsets().filter(|s| indep(m, s)).collect()
}

/// Size of a largest independent subset of `x`, by enumeration.
pub fn brute_rank(m: &MatroidView, x: &ElementSet) -> usize {
    x.subsets().filter(|s| indep(m, s)).map(|s| s.len()).max().unwrap_or(0)
}

/// Maximal independent sets.
pub fn bases(m: &MatroidView) -> Vec<ElementSet> {
    let ind = independent_sets(m);
    let r = ind.iter().map(|s| s.len()).max().unwrap_or(0);
    ind.into_iter().filter(|s| s.len() == r).collect()
}

/// Minimal dependent sets.
pub fn circuits(m: &MatroidView) -> Vec<ElementSet> {
    m.ground()
        .subsets()
        .filter(|s| !indep(m, s) && s.iter().all(|e| indep(m, &s.without(e))))
        .collect()
}

pub fn circuits_within(m: &MatroidView, x: &ElementSet) -> Vec<ElementSet> {
    circuits(m).into_iter().filter(|c| c.is_subset(x)).collect()
}

pub fn set(ix: &[usize]) -> ElementSet {
    ix.iter().map(|&i| Element(i)).collect()
}

/// 2x2 marriage with all four pairs acceptable; `e1_mask` bit k puts the
/// k-th pair (canonical order m1w1, m1w2, m2w1, m2w2) in `E1`.
pub fn marriage(tiers_d: [i64; 4], tiers_h: [i64; 4], e1_mask: u32) -> Instance {
    let ground = GroundSet::new(["m1w1", "m1w2", "m2w1", "m2w2"]).unwrap();
    let block = |names: [&str; 2]| PartitionBlock {
        members: ground.set(names).unwrap(),
        capacity: 1,
    };
    let men = PartitionMatroid::new(vec![block(["m1w1", "m1w2"]), block(["m2w1", "m2w2"])]).unwrap();
    let women = PartitionMatroid::new(vec![block(["m1w1", "m2w1"]), block(["m1w2", "m2w2"])]).unwrap();
    let tiers = |t: [i64; 4]| WeakOrder::new(t.iter().enumerate().map(|(i, &x)| (Element(i), x)));
    let e1 = (0..4).filter(|k| e1_mask >> k & 1 == 1).map(Element).collect();
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

/// Random instance of size `1..=max_size`; alternates partition, explicit
/// and marriage families by seed.
pub fn random_instance(seed: u64, max_size: usize) -> Instance {
    let size = 1 + (seed / 3 % max_size as u64) as usize;
    let tiers = 1 + (seed / 7 % 3) as usize;
    let labels = match seed / 11 % 3 {
        0 => Labels::AllE1,
        1 => Labels::AllE2,
        _ => Labels::Random,
    };
    let p = RandomParams { size, tiers, labels, seed };
    match seed % 3 {
        0 => random_partition(p).unwrap(),
        1 => random_explicit(p).unwrap(),
        _ => marriage_ties(MarriageParams {
            men: 1 + (seed / 5 % 3) as usize,
            women: 1 + (seed / 13 % 3) as usize,
            tiers,
            density: 0.8,
            labels,
            seed,
        })
        .unwrap(),
    }
}

/// Both matroids of an instance, for matroid-level property tests.
pub fn matroids(inst: &Instance) -> [MatroidView; 2] {
    [inst.matroid(Side::D).clone(), inst.matroid(Side::H).clone()]
}

/// Weak blocking straight from the definition, without closures or
/// fundamental circuits.
pub fn def_weak(inst: &Instance, i: &ElementSet, e: Element, side: Side, strict: bool) -> bool {
    let m = inst.matroid(side);
    let pref = inst.pref(side);
    let ie = i.with(e);
    if indep(m, &ie) {
        return true;
    }
    i.iter().any(|f| {
        let (te, tf) = (pref.tier(e).unwrap(), pref.tier(f).unwrap());
        let better = if strict { te < tf } else { te <= tf };
        better && indep(m, &ie.without(f))
    })
}

/// Non-uniform stability straight from the definition.
pub fn def_stable(inst: &Instance, i: &ElementSet) -> bool {
    let common = Side::BOTH.iter().all(|&s| indep(inst.matroid(s), i));
    common
        && inst.all().difference(i).iter().all(|e| {
            let weak = def_weak(inst, i, e, Side::D, false) && def_weak(inst, i, e, Side::H, false);
            let strong = def_weak(inst, i, e, Side::D, true) || def_weak(inst, i, e, Side::H, true);
            let blocks = if inst.in_e1(e) { weak } else { weak && strong };
            !blocks
        })
}

/// Super-stability: no `e ∉ I` weakly blocks on both sides.
pub fn super_stable(inst: &Instance, i: &ElementSet) -> bool {
    Side::BOTH.iter().all(|&s| indep(inst.matroid(s), i))
        && inst.all().difference(i).iter().all(|e| {
            !(def_weak(inst, i, e, Side::D, false) && def_weak(inst, i, e, Side::H, false))
        })
}

/// Strong stability: no `e ∉ I` weakly blocks on both sides while strongly
/// blocking on one.
pub fn strongly_stable(inst: &Instance, i: &ElementSet) -> bool {
    Side::BOTH.iter().all(|&s| indep(inst.matroid(s), i))
        && inst.all().difference(i).iter().all(|e| {
            let weak = def_weak(inst, i, e, Side::D, false) && def_weak(inst, i, e, Side::H, false);
            let strong = def_weak(inst, i, e, Side::D, true) || def_weak(inst, i, e, Side::H, true);
            !(weak && strong)
        })
}

/// Stable sets by the definition, smallest first, ties in canonical order.
pub fn def_stable_sets(inst: &Instance) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = inst.all().subsets().filter(|s| def_stable(inst, s)).collect();
    out.sort_by_key(|s| (s.len(), s.to_vec()));
    out
}

/// A pair of matroids on a common ground set of at most 8 elements. Some
/// pairs get loops by folding a contraction back into a direct sum.
pub fn matroid_pair(seed: u64) -> (MatroidView, MatroidView) {
    let inst = random_instance(seed, 8);
    let [a, b] = matroids(&inst);
    if seed % 4 == 3 {
        let x: ElementSet = (0..inst.len()).filter(|i| (seed >> (i + 5)) & 1 == 1).map(Element).collect();
        let folded = MatroidView::direct_sum(vec![a.restrict(&x).unwrap(), a.contract(&x).unwrap()]).unwrap();
        (folded, b)
    } else {
        (a, b)
    }
}

/// Minimum of `μ` and all its minimisers, by enumeration.
pub fn mu_minimizers(m1: &MatroidView, m2: &MatroidView) -> (usize, Vec<ElementSet>) {
    let values: Vec<(usize, ElementSet)> = m1
        .ground()
        .subsets()
        .map(|x| (brute_rank(m1, &m1.ground().difference(&x)) + brute_rank(m2, &x), x))
        .collect();
    let best = values.iter().map(|v| v.0).min().unwrap();
    (best, values.into_iter().filter(|v| v.0 == best).map(|v| v.1).collect())
}

pub fn common_independent_sets(m1: &MatroidView, m2: &MatroidView) -> Vec<ElementSet> {
    m1.ground().subsets().filter(|s| indep(m1, s) && indep(m2, s)).collect()
}
