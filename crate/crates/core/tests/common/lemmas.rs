//! Checks of the layered-matroid and solver-trace properties, shared by the
//! property tests and the acceptance run. Each returns the first failure.

use super::*;
use stablemat::layered::{build_layered_d, build_layered_h, choice_d, LayeredMatroid};
use stablemat::solver::Branch;
use stablemat::Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub type Check = Result<(), String>;

pub fn is_base(m: &MatroidView, b: &ElementSet, x: &ElementSet) -> bool {
    b.is_subset(x) && indep(m, b) && b.len() == brute_rank(m, x)
}

/// Layer sets partition `F`, each minor is in normal form, and the whole is
/// their direct sum.
pub fn layer_structure(inst: &Instance, f: &ElementSet, lm: &LayeredMatroid) -> Check {
    ensure!(lm.ground() == f, "ground {:?} is not F", lm.ground());
    let mut seen = ElementSet::new();
    for layer in &lm.layers {
        ensure!(!layer.tier_set.is_empty(), "empty layer");
        ensure!(seen.is_disjoint(&layer.tier_set), "layers overlap");
        ensure!(layer.minor.ground() == &layer.tier_set, "minor ground differs from its tier set");
        let normal = inst
            .matroid(lm.side)
            .restrict(&seen.union(&layer.tier_set))
            .unwrap()
            .contract(&seen)
            .unwrap();
        for x in layer.tier_set.subsets() {
            ensure!(indep(&layer.minor, &x) == indep(&normal, &x), "minor differs from normal form on {x:?}");
        }
        seen.union_with(&layer.tier_set);
    }
    ensure!(&seen == f, "layers do not cover F");
    for x in f.subsets() {
        let by_layers = lm.layers.iter().all(|l| indep(&l.minor, &x.intersection(&l.tier_set)));
        ensure!(indep(&lm.whole, &x) == by_layers, "direct sum disagrees on {x:?}");
    }
    Ok(())
}

/// Prefix bases and the three clauses relating layered and ambient
/// fundamental circuits, for either side.
pub fn bases_and_circuits(inst: &Instance, f: &ElementSet, lm: &LayeredMatroid) -> Check {
    let side = lm.side;
    let m = inst.matroid(side);
    let pref = inst.pref(side);
    for b in bases(&lm.whole) {
        for prefix in lm.prefixes() {
            ensure!(is_base(m, &b.intersection(&prefix), &prefix), "{side}: B ∩ {prefix:?} is not a base");
        }
        for e in f.difference(&b).iter() {
            let layered = lm.whole.fundamental_circuit(e, &b).unwrap();
            let ambient = m.fundamental_circuit(e, &b).unwrap();
            ensure!(layered.iter().all(|g| pref.ties(e, g)), "{side}: layered circuit of {e} not tied");
            ensure!(layered.is_subset(&ambient), "{side}: layered circuit of {e} escapes the ambient one");
            for g in ambient.difference(&layered).iter() {
                let applies = match side {
                    Side::D => true,
                    Side::H => inst.in_e1(e) || !inst.in_e1(g),
                };
                ensure!(!applies || pref.strictly_prefers(g, e), "{side}: {g} outside the layered circuit of {e} is not better");
            }
        }
    }
    Ok(())
}

/// Tail sets, the choice set characterisations, rank equality and circuits
/// inside the choice set.
pub fn d_side(inst: &Instance, f: &ElementSet) -> Check {
    let m = inst.matroid(Side::D);
    let pref = inst.pref(Side::D);
    let lm = build_layered_d(inst, f);
    let layered_circuits = circuits(&lm.whole);
    let all_circuits = circuits(m);
    let ambient: Vec<&ElementSet> = all_circuits.iter().filter(|c| c.is_subset(f)).collect();
    for c in &ambient {
        let tail = pref.tails(c);
        ensure!(!indep(&lm.whole, &tail), "tail of {c:?} independent in the layered matroid");
        for e in tail.iter() {
            ensure!(
                layered_circuits.iter().any(|c2| c2.contains(e) && c2.is_subset(&tail)),
                "no layered circuit through {e} inside the tail of {c:?}"
            );
        }
    }

    let k = choice_d(inst, f);
    ensure!(k.is_subset(f), "choice set leaves F");
    for e in f.iter() {
        let dominated = ambient
            .iter()
            .any(|c| c.contains(e) && c.without(e).iter().all(|g| pref.strictly_prefers(g, e)));
        ensure!(!dominated || !k.contains(e), "strictly dominated {e} was chosen");
        if !k.contains(e) {
            let witness = all_circuits.iter().any(|c| {
                c.contains(e) && c.without(e).is_subset(&k) && c.without(e).iter().all(|g| pref.strictly_prefers(g, e))
            });
            ensure!(witness, "no dominating circuit for rejected {e}");
        }
    }

    let lk = build_layered_d(inst, &k);
    ensure!(m.rank(f).unwrap() == lk.whole.rank(&k).unwrap(), "rank of F differs from layered rank of K");

    let inside_k: Vec<&&ElementSet> = ambient.iter().filter(|c| c.is_subset(&k)).collect();
    for c in &ambient {
        let tk = pref.tails(c).intersection(&k);
        for e in tk.iter() {
            let found = inside_k.iter().any(|c2| {
                let t2 = pref.tails(c2);
                t2.contains(e) && t2.is_subset(&tk)
            });
            ensure!(found, "no circuit inside K with tail through {e} below the tail of {c:?}");
        }
    }
    Ok(())
}

/// Every layered property for one `F`.
pub fn layered(inst: &Instance, f: &ElementSet) -> Check {
    let d = build_layered_d(inst, f);
    let h = build_layered_h(inst, f);
    layer_structure(inst, f, &d)?;
    layer_structure(inst, f, &h)?;
    bases_and_circuits(inst, f, &d)?;
    bases_and_circuits(inst, f, &h)?;
    d_side(inst, f)
}

/// Re-derives every recorded quantity of a solver trace and checks the loop
/// invariants, the non-empty critical subset when `I` falls short, the base
/// properties of `I` at each inner exit and `K ∩ E1 ⊆ I`.
pub fn trace(inst: &Instance, out: &Outcome) -> Check {
    let all = inst.all();
    let m_d = inst.matroid(Side::D);
    let m_h = inst.matroid(Side::H);
    let n = inst.len();
    let mut steps = 0;
    let mut prev_rejected = ElementSet::new();
    ensure!(out.trace.outer.len() <= n + 1, "too many outer rounds");
    for (t, round) in out.trace.outer.iter().enumerate() {
        let t = t + 1;
        ensure!(round.index == t, "outer index");
        ensure!(round.rejected_before == prev_rejected, "R_{{t-1}} not carried over at t={t}");
        ensure!(round.inner.len() <= n + 1, "too many inner rounds at t={t}");
        let mut prev = round.rejected_before.clone();
        for (i, r) in round.inner.iter().enumerate() {
            let i = i + 1;
            steps += 1;
            ensure!(r.index == i, "inner index");
            ensure!(r.removed_before == prev, "P not carried over at ({t},{i})");
            let rest = all.difference(&prev);
            let k = choice_d(inst, &rest);
            ensure!(r.choice == k, "K differs at ({t},{i})");
            let lh = build_layered_h(inst, &k);
            ensure!(is_base(&lh.whole, &r.h_base, &k), "Q is not a layered base at ({t},{i})");
            ensure!(r.rank_d == brute_rank(m_d, &rest), "rk_D wrong at ({t},{i})");
            ensure!(r.rank_h == brute_rank(m_h, &k), "rk_H wrong at ({t},{i})");
            ensure!(prev.is_subset(&r.removed_after), "P shrank at ({t},{i})");
            match r.branch {
                Branch::RankDeficit => ensure!(r.rank_d < r.rank_h, "rank-deficit branch without deficit"),
                Branch::E1Deficit => {
                    let missing = k.difference(&r.h_base).intersection(inst.e1());
                    ensure!(!missing.is_empty(), "e1-deficit branch without a missing element");
                    ensure!(r.removed_after == prev.union(&missing), "P update wrong at ({t},{i})");
                }
                Branch::Intersect => {
                    let ld = build_layered_d(inst, &k);
                    let Some(i_set) = r.matching.clone() else {
                        return Err(format!("intersect branch without I at ({t},{i})"));
                    };
                    ensure!(indep(&ld.whole, &i_set) && indep(&lh.whole, &i_set), "I not common independent");
                    match &r.critical {
                        Some(z) => {
                            ensure!(i_set.len() < r.rank_d, "Z computed although |I| is large enough");
                            ensure!(!z.is_empty(), "empty critical subset at ({t},{i})");
                            ensure!(r.removed_after == prev.union(z), "P update wrong at ({t},{i})");
                        }
                        None => {
                            ensure!(i_set.len() >= r.rank_d, "|I| < rk_D without Z at ({t},{i})");
                            ensure!(r.removed_after == prev, "P changed at an exit");
                            ensure!(is_base(&ld.whole, &i_set, &k), "I not a base of M_D<K> at ({t},{i})");
                            ensure!(is_base(m_d, &i_set, &rest), "I not a base of M_D|(E\\P) at ({t},{i})");
                            ensure!(is_base(&lh.whole, &i_set, &k), "I not a base of M_H<K> at ({t},{i})");
                            ensure!(k.intersection(inst.e1()).is_subset(&i_set), "K ∩ E1 not inside I at ({t},{i})");
                        }
                    }
                }
            }
            prev = r.removed_after.clone();
        }
        ensure!(prev.is_subset(&round.rejected_after), "R_t misses P at t={t}");
        prev_rejected = round.rejected_after.clone();
    }
    ensure!(steps <= (n + 1) * (n + 1), "{steps} inner steps exceed (|E|+1)^2");
    Ok(())
}

/// Every stable set avoids every `P` and `R` recorded in the trace.
pub fn stable_sets_avoid_rejected(out: &Outcome, stable: &[ElementSet]) -> Check {
    for j in stable {
        for round in &out.trace.outer {
            ensure!(j.is_disjoint(&round.rejected_after), "stable {j:?} meets R_{}", round.index);
            for r in &round.inner {
                ensure!(j.is_disjoint(&r.removed_after), "stable {j:?} meets P_{{{},{}}}", round.index, r.index);
            }
        }
    }
    Ok(())
}
