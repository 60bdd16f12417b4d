use std::fmt::Write;

use super::trace::{Branch, NoReason, Outcome, Verdict};
use crate::instance::Instance;
use crate::stability::blocks;

/// Deterministic human-readable rendering of a solver run.
pub fn explain(instance: &Instance, outcome: &Outcome) -> String {
    let show = |s| instance.show(s);
    let name = |e| instance.ground().name(e);
    let mut out = String::new();
    for round in &outcome.trace.outer {
        let _ = writeln!(out, "round t={} R={}", round.index, show(&round.rejected_before));
        for r in &round.inner {
            let _ = writeln!(
                out,
                "  step i={} P={} K={} Q={} rk_D(E\\P)={} rk_H(K)={} -> {}",
                r.index,
                show(&r.removed_before),
                show(&r.choice),
                show(&r.h_base),
                r.rank_d,
                r.rank_h,
                r.branch.name()
            );
            if let Some(m) = &r.matching {
                let _ = writeln!(out, "    I={} (|I|={})", show(m), m.len());
            }
            if let Some(z) = &r.critical {
                let _ = writeln!(out, "    Z={}", show(z));
            }
            if r.branch != Branch::RankDeficit {
                let _ = writeln!(out, "    P -> {}", show(&r.removed_after));
            }
        }
        if let (Some(b), Some(tails)) = (round.blocker, &round.blocker_tails) {
            let _ = writeln!(
                out,
                "  blocked in P: {}; b={} pulls tails {}",
                show(&round.blocked_removed),
                name(b),
                show(tails)
            );
        }
        let _ = writeln!(out, "  R -> {}", show(&round.rejected_after));
    }
    let _ = writeln!(out, "oracle calls: {}", outcome.oracle_calls);
    match &outcome.verdict {
        Verdict::No(NoReason::RankDeficit {
            outer,
            inner,
            rank_d,
            rank_h,
        }) => {
            let _ = writeln!(
                out,
                "NO: at t={outer}, i={inner}: rk_D(E\\P)={rank_d} < rk_H(K)={rank_h}"
            );
        }
        Verdict::No(NoReason::Insertable { element }) => {
            let _ = writeln!(
                out,
                "NO: rejected element {} can be added to the final set in M_H",
                name(*element)
            );
        }
        Verdict::Yes(set) => {
            let _ = writeln!(out, "YES: stable set {}", show(set));
            for e in instance.all().difference(set).iter() {
                let Ok(r) = blocks(instance, set, e) else { continue };
                let label = if r.in_e1 { "E1" } else { "E2" };
                let why = if !r.weak.d {
                    "no weak block on D".to_string()
                } else if !r.weak.h {
                    "no weak block on H".to_string()
                } else {
                    "weak on both sides but strong on neither".to_string()
                };
                let _ = writeln!(out, "  {} ({label}): {why}", name(e));
            }
        }
    }
    out
}
