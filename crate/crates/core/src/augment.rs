//! Registry of augmentation methods behind one calling convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{self, DEFAULT_RHO};
use crate::diffusion::DiffusionConfig;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSet};
use crate::nodesam::{nodesam_variant, NodeSamVariant};
use crate::rng::Rng;
use crate::submix::{self, AugmentedSample, DEFAULT_P};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubMixVariant {
    /// Uniform random node subsets instead of diffusion-ranked ones.
    Base,
    #[default]
    Full,
}

impl FromStr for SubMixVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base" => Ok(Self::Base),
            "full" => Ok(Self::Full),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    NodeSam(NodeSamVariant),
    SubMix(SubMixVariant),
    DropEdge,
    DropNode,
    AddEdge,
    ChangeAttr,
    GraphCrop,
    NodeAug,
    MotifSwap,
    /// Returns a copy of the input. Used as a reference point in benchmarks.
    Identity,
}

impl Method {
    /// Every registered method in its default variant, identity excluded.
    pub const ALL: [Method; 9] = [
        Method::NodeSam(NodeSamVariant::Full),
        Method::SubMix(SubMixVariant::Full),
        Method::DropEdge,
        Method::DropNode,
        Method::AddEdge,
        Method::ChangeAttr,
        Method::GraphCrop,
        Method::NodeAug,
        Method::MotifSwap,
    ];

    /// Parses a method name plus an optional variant name.
    pub fn parse(name: &str, variant: Option<&str>) -> Result<Self> {
        let base = match name {
            "nodesam" => Method::NodeSam(NodeSamVariant::Full),
            "submix" => Method::SubMix(SubMixVariant::Full),
            "dropedge" => Method::DropEdge,
            "dropnode" => Method::DropNode,
            "addedge" => Method::AddEdge,
            "changeattr" => Method::ChangeAttr,
            "graphcrop" => Method::GraphCrop,
            "nodeaug" => Method::NodeAug,
            "motifswap" => Method::MotifSwap,
            "identity" => Method::Identity,
            other => return Err(Error::UnknownMethod(other.to_string())),
        };
        match (base, variant) {
            (m, None) => Ok(m),
            (Method::NodeSam(_), Some(v)) => Ok(Method::NodeSam(v.parse()?)),
            (Method::SubMix(_), Some(v)) => Ok(Method::SubMix(v.parse()?)),
            (_, Some(v)) => Err(Error::InvalidParameter(format!(
                "method `{name}` has no variant `{v}`"
            ))),
        }
    }

    pub fn base_name(&self) -> &'static str {
        match self {
            Method::NodeSam(_) => "nodesam",
            Method::SubMix(_) => "submix",
            Method::DropEdge => "dropedge",
            Method::DropNode => "dropnode",
            Method::AddEdge => "addedge",
            Method::ChangeAttr => "changeattr",
            Method::GraphCrop => "graphcrop",
            Method::NodeAug => "nodeaug",
            Method::MotifSwap => "motifswap",
            Method::Identity => "identity",
        }
    }

    pub fn variant_name(&self) -> Option<&'static str> {
        match self {
            Method::NodeSam(NodeSamVariant::Full) | Method::SubMix(SubMixVariant::Full) => None,
            Method::NodeSam(NodeSamVariant::SplitOnly) => Some("split-only"),
            Method::NodeSam(NodeSamVariant::MergeOnly) => Some("merge-only"),
            Method::NodeSam(NodeSamVariant::Base) => Some("base"),
            Method::SubMix(SubMixVariant::Base) => Some("base"),
            _ => None,
        }
    }

    /// True when the method draws a second graph from the set.
    pub fn needs_partner(&self) -> bool {
        matches!(self, Method::SubMix(_))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant_name() {
            Some(v) => write!(f, "{}/{}", self.base_name(), v),
            None => f.write_str(self.base_name()),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts `name` or `name/variant`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((name, variant)) => Method::parse(name, Some(variant)),
            None => Method::parse(s, None),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A method plus its knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Augmenter {
    pub method: Method,
    /// SubMix ratio.
    pub p: f64,
    /// GraphCrop ratio.
    pub rho: f64,
    /// Applications per call for DropEdge and AddEdge.
    pub repeat: usize,
    pub diffusion: DiffusionConfig,
}

impl Augmenter {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            p: DEFAULT_P,
            rho: DEFAULT_RHO,
            repeat: 1,
            diffusion: DiffusionConfig::default(),
        }
    }

    /// Augments one graph in isolation. SubMix needs a set; use
    /// [`Augmenter::apply`] for it.
    pub fn apply_graph(&self, g: &Graph, rng: &mut Rng) -> Result<Graph> {
        let repeated = |f: fn(&Graph, &mut Rng) -> Result<Graph>, rng: &mut Rng| {
            if self.repeat == 0 {
                return Err(Error::InvalidParameter("repeat must be at least 1".into()));
            }
            let mut out = f(g, rng)?;
            for _ in 1..self.repeat {
                out = f(&out, rng)?;
            }
            Ok(out)
        };
        match self.method {
            Method::NodeSam(v) => nodesam_variant(g, v, rng),
            Method::SubMix(_) => Err(Error::InvalidParameter("submix needs a graph set".into())),
            Method::DropEdge => repeated(baselines::drop_edge, rng),
            Method::DropNode => baselines::drop_node(g, rng),
            Method::AddEdge => repeated(baselines::add_edge, rng),
            Method::ChangeAttr => baselines::change_attr(g, rng),
            Method::GraphCrop => baselines::graph_crop(g, self.rho, &self.diffusion, rng),
            Method::NodeAug => baselines::node_aug(g, rng),
            Method::MotifSwap => baselines::motif_swap(g, rng),
            Method::Identity => Ok(g.clone()),
        }
    }

    /// Augments graph `index` of `set`. Single-graph methods return a sample
    /// whose soft label is the one-hot of the original label.
    pub fn apply(&self, set: &GraphSet, index: usize, rng: &mut Rng) -> Result<AugmentedSample> {
        let g = set
            .get(index)
            .ok_or_else(|| Error::InvalidParameter(format!("graph index {index} out of range")))?;
        match self.method {
            Method::SubMix(SubMixVariant::Full) => {
                submix::submix(set, index, self.p, &self.diffusion, rng)
            }
            Method::SubMix(SubMixVariant::Base) => submix::submix_base(set, index, self.p, rng),
            _ => AugmentedSample::hard(self.apply_graph(g, rng)?, set.num_classes()),
        }
    }
}
