//! Polynomial-time existence check for a non-uniformly stable common
//! independent set.
//!
//! The solver maintains a growing set `R` of elements that no stable set can
//! contain. Each outer round restarts from `P = R` and repeatedly shrinks the
//! candidate set `E \ P`:
//!
//! * `K = Ch_D(E \ P)` and `Q` = a base of `M_H⟨K⟩`;
//! * if `rk_D(E \ P) < rk_H(K)` the answer is No;
//! * if `Q` misses some `E1` element of `K`, those elements join `P`;
//! * otherwise `I` = a maximum common independent set of `M_D⟨K⟩`,
//!   `M_H⟨K⟩`, and if `|I| < rk_D(E \ P)` the critical subset of that pair
//!   joins `P`.
//!
//! When `P` stops growing, an element of `P ∩ block(I)` (if any) pulls the
//! `≿_H`-tails of its H-side fundamental circuit into `R`. Once `R` is stable
//! the final `I` is returned unless some element of `R` can be added to it in
//! `M_H`.

mod explain;
mod trace;

pub use explain::explain;
pub use trace::{Branch, InnerRound, NoReason, Outcome, OuterRound, SolverTrace, Verdict};

use thiserror::Error;

use crate::element::ElementSet;
use crate::instance::{Instance, Violation};
use crate::intersection::max_and_critical;
use crate::layered::{build_layered_d, build_layered_h, choice_d, LayeredMatroid};
use crate::preference::Side;
use crate::stability::{block_set, check_stable};

#[derive(Debug, Clone, Error)]
pub enum SolverError {
    #[error("invalid instance: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),

    /// An internal invariant failed. This is a bug, never bad input.
    #[error("internal contract `{contract}` violated: {detail}")]
    Contract {
        contract: &'static str,
        detail: String,
        trace: Box<SolverTrace>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Assert the base and `E1`-coverage properties of every `I_{t,i}` at the
    /// end of each inner loop. Costs extra oracle calls.
    pub check_invariants: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            check_invariants: cfg!(debug_assertions),
        }
    }
}

pub fn solve(instance: &Instance) -> Result<Outcome, SolverError> {
    solve_with(instance, SolveOptions::default())
}

pub fn solve_with(instance: &Instance, options: SolveOptions) -> Result<Outcome, SolverError> {
    let violations = instance.validate();
    if !violations.is_empty() {
        return Err(SolverError::Invalid(violations));
    }
    let calls_before = instance.oracle_calls();
    let mut run = Run {
        instance,
        options,
        trace: SolverTrace { outer: Vec::new() },
    };
    let verdict = run.execute()?;
    Ok(Outcome {
        verdict,
        trace: run.trace,
        oracle_calls: instance.oracle_calls() - calls_before,
    })
}

struct Run<'a> {
    instance: &'a Instance,
    options: SolveOptions,
    trace: SolverTrace,
}

impl Run<'_> {
    fn breach(&self, contract: &'static str, detail: String) -> SolverError {
        SolverError::Contract {
            contract,
            detail,
            trace: Box::new(self.trace.clone()),
        }
    }

    fn execute(&mut self) -> Result<Verdict, SolverError> {
        let inst = self.instance;
        let all = inst.all();
        let m_d = inst.matroid(Side::D);
        let m_h = inst.matroid(Side::H);
        let limit = inst.len() + 1;

        let mut rejected = ElementSet::new();
        let final_set = loop {
            let t = self.trace.outer.len() + 1;
            if t > limit {
                return Err(self.breach("outer-progress", format!("more than {limit} outer rounds")));
            }
            self.trace.outer.push(OuterRound {
                index: t,
                rejected_before: rejected.clone(),
                inner: Vec::new(),
                blocked_removed: ElementSet::new(),
                blocker: None,
                blocker_tails: None,
                rejected_after: rejected.clone(),
            });

            let mut removed = rejected.clone();
            let mut matching: Option<ElementSet> = None;
            loop {
                let i = self.outer().inner.len() + 1;
                if i > limit {
                    return Err(self.breach("inner-progress", format!("more than {limit} inner rounds")));
                }
                let candidates = all.difference(&removed);
                let choice = choice_d(inst, &candidates);
                let layered_h = build_layered_h(inst, &choice);
                let h_base = layered_h.greedy_base();
                let rank_d = m_d.rank_of(&candidates);
                let rank_h = m_h.rank_of(&choice);
                let mut round = InnerRound {
                    index: i,
                    removed_before: removed.clone(),
                    choice: choice.clone(),
                    h_base: h_base.clone(),
                    rank_d,
                    rank_h,
                    branch: Branch::Intersect,
                    matching: None,
                    critical: None,
                    removed_after: removed.clone(),
                };

                if rank_d < rank_h {
                    round.branch = Branch::RankDeficit;
                    self.outer_mut().inner.push(round);
                    self.outer_mut().rejected_after = removed;
                    return Ok(Verdict::No(NoReason::RankDeficit {
                        outer: t,
                        inner: i,
                        rank_d,
                        rank_h,
                    }));
                }

                let e1 = inst.e1();
                let next = if h_base.intersection(e1) != choice.intersection(e1) {
                    round.branch = Branch::E1Deficit;
                    removed.union(&choice.difference(&h_base).intersection(e1))
                } else {
                    let layered_d = build_layered_d(inst, &choice);
                    let (max, critical) = max_and_critical(&layered_d.whole, &layered_h.whole)
                        .expect("layered matroids share the ground set K");
                    let grown = if max.len() < rank_d {
                        if critical.is_empty() {
                            return Err(self.breach(
                                "critical-subset-nonempty",
                                format!(
                                    "|I| = {} < rk_D(E \\ P) = {rank_d} but the critical subset is empty",
                                    max.len()
                                ),
                            ));
                        }
                        let grown = removed.union(&critical);
                        round.critical = Some(critical);
                        grown
                    } else {
                        removed.clone()
                    };
                    round.matching = Some(max.clone());
                    matching = Some(max);
                    if grown == removed && self.options.check_invariants {
                        let current = matching.as_ref().expect("just set");
                        self.check_inner_exit(current, &choice, &removed, rank_d, &layered_d, &layered_h)?;
                    }
                    grown
                };

                round.removed_after = next.clone();
                self.outer_mut().inner.push(round);
                if next == removed {
                    break;
                }
                removed = next;
                matching = None;
            }

            let Some(current) = matching else {
                return Err(self.breach(
                    "inner-exit-through-intersection",
                    "inner loop ended without a common independent set".into(),
                ));
            };
            if current.len() < self.outer().inner.last().map_or(0, |r| r.rank_d) {
                return Err(self.breach(
                    "matching-size-at-exit",
                    format!("|I| = {} is below rk_D(E \\ P)", current.len()),
                ));
            }

            let block = block_set(inst, &current)
                .map_err(|e| self.breach("common-independence", e.to_string()))?;
            let blocked_removed = removed.intersection(&block);
            let next_rejected = match blocked_removed.first() {
                Some(b) => {
                    let circuit = m_h.circuit_of(b, &current);
                    let tails = inst.pref(Side::H).tails(&circuit);
                    let outer = self.outer_mut();
                    outer.blocker = Some(b);
                    outer.blocker_tails = Some(tails.clone());
                    removed.union(&tails)
                }
                None => removed.clone(),
            };
            let outer = self.outer_mut();
            outer.blocked_removed = blocked_removed;
            outer.rejected_after = next_rejected.clone();

            if next_rejected == removed {
                rejected = next_rejected;
                break current;
            }
            rejected = next_rejected;
        };

        if let Some(e) = rejected.iter().find(|&e| m_h.independent(&final_set.with(e))) {
            return Ok(Verdict::No(NoReason::Insertable { element: e }));
        }
        if let Err(why) = check_stable(inst, &final_set) {
            return Err(self.breach(
                "soundness",
                format!("returned set {} is not stable: {why:?}", inst.show(&final_set)),
            ));
        }
        Ok(Verdict::Yes(final_set))
    }

    /// Properties of `I` when the inner loop stops: a base of `M_D⟨K⟩`, of
    /// `M_D | (E \ P)` and of `M_H⟨K⟩`, and it contains `K ∩ E1`.
    fn check_inner_exit(
        &self,
        matching: &ElementSet,
        choice: &ElementSet,
        removed: &ElementSet,
        rank_d: usize,
        layered_d: &LayeredMatroid,
        layered_h: &LayeredMatroid,
    ) -> Result<(), SolverError> {
        let inst = self.instance;
        let is_base = |m: &crate::matroid::MatroidView, ground: &ElementSet| {
            matching.is_subset(ground) && m.independent(matching) && m.rank_of(ground) == matching.len()
        };
        if matching.len() < rank_d {
            return Err(self.breach("matching-size-at-exit", format!("|I| = {} < {rank_d}", matching.len())));
        }
        if !is_base(&layered_d.whole, choice) {
            return Err(self.breach("base-of-layered-d", inst.show(matching)));
        }
        let rest = inst.all().difference(removed);
        if !is_base(&inst.matroid(Side::D).restrict_to(&rest), &rest) {
            return Err(self.breach("base-of-d-restricted", inst.show(matching)));
        }
        if !is_base(&layered_h.whole, choice) {
            return Err(self.breach("base-of-layered-h", inst.show(matching)));
        }
        if !choice.intersection(inst.e1()).is_subset(matching) {
            return Err(self.breach("e1-covered", inst.show(matching)));
        }
        Ok(())
    }

    fn outer(&self) -> &OuterRound {
        self.trace.outer.last().expect("an outer round is open")
    }

    fn outer_mut(&mut self) -> &mut OuterRound {
        self.trace.outer.last_mut().expect("an outer round is open")
    }
}
