use std::path::Path;

use anyhow::{bail, Context, Result};
use edss::metrics::BipartitionFamily;
use edss::protocol::{carrier_labels, Variant};
use edss::states::Topology;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologyKindName {
    #[serde(rename = "linear")]
    Linear,
    #[serde(rename = "ring")]
    Ring,
    #[serde(rename = "star")]
    Star,
    #[serde(rename = "custom")]
    Custom,
    #[serde(rename = "appendixA")]
    AppendixA,
}

impl std::str::FromStr for TopologyKindName {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "linear" => Self::Linear,
            "ring" => Self::Ring,
            "star" => Self::Star,
            "custom" => Self::Custom,
            "appendixA" | "appendix-a" | "pairs" => Self::AppendixA,
            _ => bail!("unknown topology kind {s:?} (expected linear, ring, star, custom or appendixA)"),
        })
    }
}

/// Topology file: one TOML document, unknown fields rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub kind: TopologyKindName,
    pub nodes: usize,
    pub center: Option<usize>,
    pub pairs: Option<Vec<[usize; 2]>>,
    pub variant: Option<String>,
}

impl TopologyFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologySpec {
    pub kind: TopologyKindName,
    pub nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub center: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairs: Option<Vec<[usize; 2]>>,
}

impl TopologySpec {
    pub fn build(&self) -> Result<Topology> {
        let n = self.nodes;
        if self.center.is_some() && self.kind != TopologyKindName::Star {
            bail!("--center only applies to star topologies");
        }
        if self.pairs.is_some() && self.kind != TopologyKindName::Custom {
            bail!("explicit pairs only apply to custom topologies");
        }
        Ok(match self.kind {
            TopologyKindName::Linear => Topology::linear(n)?,
            TopologyKindName::Ring => Topology::ring(n)?,
            TopologyKindName::Star => Topology::star(n, self.center.unwrap_or(1))?,
            TopologyKindName::AppendixA => Topology::appendix_a(n)?,
            TopologyKindName::Custom => {
                let Some(pairs) = &self.pairs else { bail!("custom topologies need --pairs") };
                Topology::custom(n, pairs.iter().map(|p| (p[0], p[1])).collect())?
            }
        })
    }
}

/// Parses `1-2,2-3` into pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<[usize; 2]>> {
    text.split(',')
        .map(|item| {
            let (a, b) = item
                .trim()
                .split_once('-')
                .with_context(|| format!("pair {item:?} is not of the form i-j"))?;
            Ok([a.trim().parse()?, b.trim().parse()?])
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything a simulation run depends on, echoed into its report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub topology: TopologySpec,
    pub variant: Variant,
    pub carriers: usize,
    pub relay: bool,
    pub family: BipartitionFamily,
    pub format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    pub tolerance: f64,
    pub decompose: bool,
}

impl RunConfig {
    pub fn new(
        topology: TopologySpec,
        variant: Variant,
        family: BipartitionFamily,
        format: OutputFormat,
        output: Option<String>,
        tolerance: f64,
        decompose: bool,
    ) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            bail!("tolerance must be positive, got {tolerance}");
        }
        let built = topology.build()?;
        if variant == Variant::StarQudit && topology.kind != TopologyKindName::Star {
            bail!("the qudit variant needs --topology star");
        }
        if variant == Variant::Relay && (topology.kind != TopologyKindName::Ring || !topology.nodes.is_multiple_of(2)) {
            bail!("the relay variant needs a ring with an even number of nodes");
        }
        Ok(Self {
            carriers: carrier_labels(&built, variant).len(),
            relay: variant == Variant::Relay,
            topology,
            variant,
            family,
            format,
            output,
            tolerance,
            decompose,
        })
    }
}
