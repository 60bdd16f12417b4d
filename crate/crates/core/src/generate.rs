//! Seeded instance generators. Output depends only on the parameters and the
//! seed.

use rand::seq::SliceRandom;
use rand::rngs::ChaCha8Rng;
use rand::{RngExt, SeedableRng};

use crate::element::{Element, ElementSet, GroundSet};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matroid::{
    ExplicitMatroid, GraphicMatroid, MatroidSpec, PartitionBlock, PartitionMatroid,
};
use crate::preference::WeakOrder;

/// Largest ground set accepted by [`random_explicit`].
pub const MAX_EXPLICIT_SIZE: usize = 10;

/// How elements are split between `E1` and `E2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labels {
    /// `E1 = E`: super-stability.
    AllE1,
    /// `E2 = E`: strong stability.
    AllE2,
    /// Each element independently with probability 1/2.
    Random,
}

impl std::str::FromStr for Labels {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e1" => Ok(Labels::AllE1),
            "e2" => Ok(Labels::AllE2),
            "random" => Ok(Labels::Random),
            other => Err(Error::Precondition(format!(
                "unknown label mode `{other}` (expected e1, e2 or random)"
            ))),
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_tiers(rng: &mut ChaCha8Rng, n: usize, tiers: usize) -> WeakOrder {
    WeakOrder::new((0..n).map(|i| (Element(i), rng.random_range(0..tiers.max(1)) as i64)))
}

fn labels(rng: &mut ChaCha8Rng, n: usize, mode: Labels) -> ElementSet {
    match mode {
        Labels::AllE1 => ElementSet::full(n),
        Labels::AllE2 => ElementSet::new(),
        Labels::Random => (0..n).filter(|_| rng.random_bool(0.5)).map(Element).collect(),
    }
}

fn element_names(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarriageParams {
    pub men: usize,
    pub women: usize,
    /// Number of tier levels each side draws from; 1 means all ties.
    pub tiers: usize,
    /// Probability that a (man, woman) pair is acceptable.
    pub density: f64,
    pub labels: Labels,
    pub seed: u64,
}

/// One-to-one matching with ties: one element `m<i>w<j>` per acceptable
/// pair and a capacity-1 partition matroid per side.
pub fn marriage_ties(p: MarriageParams) -> Result<Instance> {
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::Precondition(format!("density {} outside [0, 1]", p.density)));
    }
    if p.tiers == 0 {
        return Err(Error::Precondition("at least one tier level is needed".into()));
    }
    let mut rng = rng(p.seed);
    let mut pairs = Vec::new();
    for m in 1..=p.men {
        for w in 1..=p.women {
            if p.density >= 1.0 || rng.random_bool(p.density) {
                pairs.push((m, w));
            }
        }
    }
    let name = |m: usize, w: usize| format!("m{m}w{w}");
    let ground = GroundSet::new(pairs.iter().map(|&(m, w)| name(m, w)))?;
    let blocks = |key: &dyn Fn(&(usize, usize)) -> usize, count: usize| -> Result<PartitionMatroid> {
        let blocks = (1..=count)
            .map(|k| {
                let members = ground.set(
                    pairs.iter().filter(|pw| key(pw) == k).map(|&(m, w)| name(m, w)),
                )?;
                Ok(PartitionBlock { members, capacity: 1 })
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionMatroid::new(blocks.into_iter().filter(|b| !b.members.is_empty()).collect())
    };
    let men = blocks(&|&(m, _)| m, p.men)?;
    let women = blocks(&|&(_, w)| w, p.women)?;
    let n = ground.len();
    let pref_d = random_tiers(&mut rng, n, p.tiers);
    let pref_h = random_tiers(&mut rng, n, p.tiers);
    let e1 = labels(&mut rng, n, p.labels);
    Instance::with_e1(
        ground,
        MatroidSpec::Partition(men),
        MatroidSpec::Partition(women),
        pref_d,
        pref_h,
        e1,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub size: usize,
    pub tiers: usize,
    pub labels: Labels,
    pub seed: u64,
}

fn random_partition_spec(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    let count = rng.random_range(1..=n.max(1));
    let mut members = vec![ElementSet::new(); count];
    for i in 0..n {
        members[rng.random_range(0..count)].insert(Element(i));
    }
    let blocks = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| {
            let capacity = rng.random_range(1..=m.len());
            PartitionBlock { members: m, capacity }
        })
        .collect();
    MatroidSpec::Partition(PartitionMatroid::new(blocks).expect("blocks are disjoint"))
}

/// Random partition matroids on both sides, random tiers and labels.
pub fn random_partition(p: RandomParams) -> Result<Instance> {
    if p.tiers == 0 {
        return Err(Error::Precondition("at least one tier level is needed".into()));
    }
    let mut rng = rng(p.seed);
    let ground = GroundSet::new(element_names("e", p.size))?;
    let spec_d = random_partition_spec(&mut rng, p.size);
    let spec_h = random_partition_spec(&mut rng, p.size);
    let pref_d = random_tiers(&mut rng, p.size, p.tiers);
    let pref_h = random_tiers(&mut rng, p.size, p.tiers);
    let e1 = labels(&mut rng, p.size, p.labels);
    Instance::with_e1(ground, spec_d, spec_h, pref_d, pref_h, e1)
}

/// A sparse paving matroid of rank `r`: every set of size below `r` is
/// independent, and so is every `r`-set except a random family of
/// circuit-hyperplanes that pairwise share at most `r - 2` elements.
fn sparse_paving(rng: &mut ChaCha8Rng, n: usize) -> ExplicitMatroid {
    let ground = ElementSet::full(n);
    let rank = rng.random_range(1..=n.clamp(1, 4));
    let mut candidates: Vec<ElementSet> = ground.subsets().filter(|s| s.len() == rank).collect();
    candidates.shuffle(rng);
    let mut hyperplanes: Vec<ElementSet> = Vec::new();
    if rank >= 2 {
        for c in candidates {
            if rng.random_bool(0.5)
                && hyperplanes
                    .iter()
                    .all(|h| h.intersection(&c).len() + 2 <= rank)
            {
                hyperplanes.push(c);
            }
        }
    }
    ExplicitMatroid::from_oracle(ground, |s| {
        s.len() < rank || (s.len() == rank && !hyperplanes.contains(s))
    })
    .expect("sparse paving families are matroids")
}

/// Cycle matroid of a random loopless multigraph, materialised.
fn random_graphic(rng: &mut ChaCha8Rng, n: usize) -> ExplicitMatroid {
    let vertices = rng.random_range(2..=4usize);
    let edges: Vec<(Element, String, String)> = (0..n)
        .map(|i| {
            let u = rng.random_range(0..vertices);
            let mut v = rng.random_range(0..vertices - 1);
            if v >= u {
                v += 1;
            }
            (Element(i), u.to_string(), v.to_string())
        })
        .collect();
    let graph = MatroidSpec::Graphic(GraphicMatroid::new(edges));
    ExplicitMatroid::from_oracle(ElementSet::full(n), |s| graph.is_independent(s))
        .expect("graphic families are matroids")
}

/// Explicit matroids (sparse paving or graphic, chosen per side) with random
/// tiers and labels.
pub fn random_explicit(p: RandomParams) -> Result<Instance> {
    if p.size > MAX_EXPLICIT_SIZE {
        return Err(Error::Precondition(format!(
            "explicit instances are limited to {MAX_EXPLICIT_SIZE} elements"
        )));
    }
    if p.tiers == 0 {
        return Err(Error::Precondition("at least one tier level is needed".into()));
    }
    let mut rng = rng(p.seed);
    let ground = GroundSet::new(element_names("e", p.size))?;
    let side = |rng: &mut ChaCha8Rng| {
        let m = if rng.random_bool(0.5) {
            sparse_paving(rng, p.size)
        } else {
            random_graphic(rng, p.size)
        };
        MatroidSpec::Explicit(m)
    };
    let spec_d = side(&mut rng);
    let spec_h = side(&mut rng);
    let pref_d = random_tiers(&mut rng, p.size, p.tiers);
    let pref_h = random_tiers(&mut rng, p.size, p.tiers);
    let e1 = labels(&mut rng, p.size, p.labels);
    Instance::with_e1(ground, spec_d, spec_h, pref_d, pref_h, e1)
}
