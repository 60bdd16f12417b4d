use serde_json::{json, Value};

use crate::element::{Element, ElementSet};
use crate::instance::Instance;

/// Which branch an inner round took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `rk_D(E \ P) < rk_H(K)`: the solver halts with No.
    RankDeficit,
    /// Some `E1` element of `K` is missing from the H-side base `Q`; those
    /// elements are added to `P`.
    E1Deficit,
    /// A maximum common independent set of the two layered matroids was
    /// computed; `P` grows by the critical subset if it is too small.
    Intersect,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::RankDeficit => "rank-deficit",
            Branch::E1Deficit => "e1-deficit",
            Branch::Intersect => "intersect",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerRound {
    /// 1-based index `i`.
    pub index: usize,
    /// `P_{t,i-1}`.
    pub removed_before: ElementSet,
    /// `K_{t,i} = Ch_D(E \ P_{t,i-1})`.
    pub choice: ElementSet,
    /// `Q_{t,i}`, the greedy base of `M_H⟨K⟩`.
    pub h_base: ElementSet,
    /// `rk_D(E \ P_{t,i-1})`.
    pub rank_d: usize,
    /// `rk_H(K_{t,i})`.
    pub rank_h: usize,
    pub branch: Branch,
    /// `I_{t,i}`, on the intersect branch.
    pub matching: Option<ElementSet>,
    /// `Z_{t,i}`, when the intersection fell short.
    pub critical: Option<ElementSet>,
    /// `P_{t,i}`.
    pub removed_after: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterRound {
    /// 1-based index `t`.
    pub index: usize,
    /// `R_{t-1}`.
    pub rejected_before: ElementSet,
    pub inner: Vec<InnerRound>,
    /// `P_{t,i} ∩ block(I_{t,i})`.
    pub blocked_removed: ElementSet,
    /// `b_t`, the canonical minimum of `blocked_removed`.
    pub blocker: Option<Element>,
    /// `ta_H(ℂ_H(b_t, I_{t,i}))`.
    pub blocker_tails: Option<ElementSet>,
    /// `R_t`.
    pub rejected_after: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoReason {
    /// Halted inside round `(outer, inner)` on `rk_D(E \ P) < rk_H(K)`.
    RankDeficit {
        outer: usize,
        inner: usize,
        rank_d: usize,
        rank_h: usize,
    },
    /// A rejected element can be added to the final set in `M_H`.
    Insertable { element: Element },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(ElementSet),
    No(NoReason),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn stable_set(&self) -> Option<&ElementSet> {
        match self {
            Verdict::Yes(s) => Some(s),
            Verdict::No(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverTrace {
    pub outer: Vec<OuterRound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub trace: SolverTrace,
    /// Independence queries made against the instance's two matroids.
    pub oracle_calls: u64,
}

impl Outcome {
    /// Final `R`, the set of elements proven absent from every stable set.
    pub fn final_rejected(&self) -> ElementSet {
        self.trace
            .outer
            .last()
            .map(|r| r.rejected_after.clone())
            .unwrap_or_default()
    }

    /// Structured form with element names, as emitted by the CLI.
    pub fn to_json(&self, instance: &Instance) -> Value {
        let names = |s: &ElementSet| json!(instance.ground().set_names(s));
        let opt = |s: &Option<ElementSet>| s.as_ref().map(&names);
        let name = |e: Element| instance.ground().name(e).to_string();
        let verdict = match &self.verdict {
            Verdict::Yes(s) => json!({ "result": "yes", "set": names(s) }),
            Verdict::No(NoReason::RankDeficit {
                outer,
                inner,
                rank_d,
                rank_h,
            }) => json!({
                "result": "no",
                "reason": "rank-deficit",
                "t": outer,
                "i": inner,
                "rank_d": rank_d,
                "rank_h": rank_h,
            }),
            Verdict::No(NoReason::Insertable { element }) => json!({
                "result": "no",
                "reason": "h-insertable-rejected-element",
                "element": name(*element),
            }),
        };
        let rounds: Vec<Value> = self
            .trace
            .outer
            .iter()
            .map(|o| {
                json!({
                    "t": o.index,
                    "r_before": names(&o.rejected_before),
                    "inner": o.inner.iter().map(|r| json!({
                        "i": r.index,
                        "p_before": names(&r.removed_before),
                        "k": names(&r.choice),
                        "q": names(&r.h_base),
                        "rank_d": r.rank_d,
                        "rank_h": r.rank_h,
                        "branch": r.branch.name(),
                        "i_set": opt(&r.matching),
                        "z": opt(&r.critical),
                        "p_after": names(&r.removed_after),
                    })).collect::<Vec<_>>(),
                    "blocked": names(&o.blocked_removed),
                    "b": o.blocker.map(name),
                    "tails": opt(&o.blocker_tails),
                    "r_after": names(&o.rejected_after),
                })
            })
            .collect();
        json!({
            "verdict": verdict,
            "oracle_calls": self.oracle_calls,
            "trace": rounds,
        })
    }
}
