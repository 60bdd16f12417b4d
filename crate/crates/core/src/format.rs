//! JSON instance files.
//!
//! ```json
//! {
//!   "elements": ["a", "b"],
//!   "matroid_d": {"type": "uniform", "rank": 1},
//!   "matroid_h": {"type": "partition", "blocks": [{"members": ["a", "b"], "capacity": 1}]},
//!   "pref_d": {"a": 0, "b": 1},
//!   "pref_h": {"a": 0, "b": 0},
//!   "e1": ["a"]
//! }
//! ```
//!
//! `e2` is implicit: every element not listed in `e1`. Matroid types are
//! `uniform`, `partition`, `graphic` (edge id to a pair of vertex labels),
//! `explicit` (the full list of independent sets) and `free`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::element::{Element, GroundSet};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matroid::{
    ExplicitMatroid, GraphicMatroid, MatroidSpec, PartitionBlock, PartitionMatroid,
};
use crate::preference::{Side, WeakOrder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub elements: Vec<String>,
    pub matroid_d: MatroidFile,
    pub matroid_h: MatroidFile,
    pub pref_d: BTreeMap<String, i64>,
    pub pref_h: BTreeMap<String, i64>,
    pub e1: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidFile {
    Uniform { rank: usize },
    Partition { blocks: Vec<BlockFile> },
    Graphic { edges: BTreeMap<String, [Vertex; 2]> },
    Explicit { independent: Vec<Vec<String>> },
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockFile {
    pub members: Vec<String>,
    pub capacity: usize,
}

/// Graph vertex label; integers and strings are both accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Vertex {
    Int(i64),
    Name(String),
}

impl Vertex {
    fn label(&self) -> String {
        match self {
            Vertex::Int(i) => i.to_string(),
            Vertex::Name(s) => s.clone(),
        }
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    /// Builds the instance. Unknown or duplicate ids and malformed matroids
    /// are errors here; invariant violations are left to
    /// [`Instance::validate`].
    pub fn to_instance(&self) -> Result<Instance> {
        let ground = GroundSet::new(self.elements.iter().cloned())?;
        let spec_d = matroid_from_file(&ground, &self.matroid_d)?;
        let spec_h = matroid_from_file(&ground, &self.matroid_h)?;
        let pref = |tiers: &BTreeMap<String, i64>| -> Result<WeakOrder> {
            let pairs = tiers
                .iter()
                .map(|(k, &t)| Ok((ground.element(k)?, t)))
                .collect::<Result<Vec<(Element, i64)>>>()?;
            Ok(WeakOrder::new(pairs))
        };
        let pref_d = pref(&self.pref_d)?;
        let pref_h = pref(&self.pref_h)?;
        let e1 = ground.set(&self.e1)?;
        Instance::with_e1(ground, spec_d, spec_h, pref_d, pref_h, e1)
    }

    /// The canonical file for an instance: ids, blocks and sets sorted.
    pub fn from_instance(instance: &Instance) -> Self {
        let ground = instance.ground();
        let tiers = |side: Side| -> BTreeMap<String, i64> {
            let pref = instance.pref(side);
            ground
                .elements()
                .filter_map(|e| pref.tier(e).map(|t| (ground.name(e).to_string(), t)))
                .collect()
        };
        InstanceFile {
            elements: ground.names().to_vec(),
            matroid_d: matroid_to_file(ground, instance.spec(Side::D)),
            matroid_h: matroid_to_file(ground, instance.spec(Side::H)),
            pref_d: tiers(Side::D),
            pref_h: tiers(Side::H),
            e1: ground.set_names(instance.e1()),
        }
    }
}

fn matroid_from_file(ground: &GroundSet, file: &MatroidFile) -> Result<MatroidSpec> {
    Ok(match file {
        MatroidFile::Free => MatroidSpec::Free,
        MatroidFile::Uniform { rank } => MatroidSpec::Uniform { rank: *rank },
        MatroidFile::Partition { blocks } => {
            let blocks = blocks
                .iter()
                .map(|b| {
                    Ok(PartitionBlock {
                        members: ground.set(&b.members)?,
                        capacity: b.capacity,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            MatroidSpec::Partition(PartitionMatroid::new(blocks)?)
        }
        MatroidFile::Graphic { edges } => {
            let edges = edges
                .iter()
                .map(|(id, [u, v])| Ok((ground.element(id)?, u.label(), v.label())))
                .collect::<Result<Vec<_>>>()?;
            MatroidSpec::Graphic(GraphicMatroid::new(edges))
        }
        MatroidFile::Explicit { independent } => {
            let family = independent
                .iter()
                .map(|s| ground.set(s))
                .collect::<Result<Vec<_>>>()?;
            MatroidSpec::Explicit(ExplicitMatroid::new(ground.all(), family)?)
        }
    })
}

fn matroid_to_file(ground: &GroundSet, spec: &MatroidSpec) -> MatroidFile {
    match spec {
        MatroidSpec::Free => MatroidFile::Free,
        MatroidSpec::Uniform { rank } => MatroidFile::Uniform { rank: *rank },
        MatroidSpec::Partition(p) => MatroidFile::Partition {
            blocks: p
                .blocks()
                .iter()
                .map(|b| BlockFile {
                    members: ground.set_names(&b.members),
                    capacity: b.capacity,
                })
                .collect(),
        },
        MatroidSpec::Graphic(g) => MatroidFile::Graphic {
            edges: g
                .edges()
                .map(|(e, u, v)| {
                    (
                        ground.name(e).to_string(),
                        [Vertex::Name(u.to_string()), Vertex::Name(v.to_string())],
                    )
                })
                .collect(),
        },
        MatroidSpec::Explicit(x) => MatroidFile::Explicit {
            independent: x
                .independent_sets()
                .iter()
                .map(|s| ground.set_names(s))
                .collect(),
        },
    }
}
