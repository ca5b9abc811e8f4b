//! JSON shapes for data sets, multicurves and classified roots.

use serde::{Deserialize, Serialize};
use twistroot_core::classify::{ComponentRecord, RootClassRecord};
use twistroot_core::compat::{ClassKind, Endpoint};
use twistroot_core::dataset::{InvalidDataSet, OrbitError};
use twistroot_core::spec::{ComponentSpec, EdgeSpec, InternalSpec, SatelliteSpec};
use twistroot_core::{ConeClass, DataSet, MulticurveSpec, OrbitDistribution, PermutingDataSet, RawDataSet};

/// `{"n":4,"g0":0,"a":[1],"cones":[[1,2],[1,4]],"orbits":[[[0,1],2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSetJson {
    pub n: u64,
    pub g0: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cones: Vec<(i64, u64)>,
    /// Distinguished orbit classes `[c, b]` with multiplicities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<((i64, u64), u64)>>,
}

/// A data set JSON whose orbit part names an unusable class.
#[derive(Debug, thiserror::Error)]
pub enum DataSetJsonError {
    #[error("{0}")]
    Invalid(InvalidDataSet),
    #[error("orbit class ({0},{1}) is not a reduced class")]
    BadClass(i64, u64),
    #[error("{0}")]
    Orbits(OrbitError),
}

impl DataSetJson {
    pub fn raw(&self) -> RawDataSet {
        RawDataSet { n: self.n, g0: self.g0, residues: self.a.clone(), cones: self.cones.clone() }
    }

    pub fn from_dataset(d: &DataSet) -> Self {
        let raw = d.to_raw();
        DataSetJson { n: raw.n, g0: raw.g0, a: raw.residues, cones: raw.cones, orbits: None }
    }

    pub fn from_permuting(pd: &PermutingDataSet) -> Self {
        let mut out = Self::from_dataset(pd.dataset());
        out.orbits = Some(pd.orbits().iter().map(|(p, m)| ((p.residue() as i64, p.modulus()), m)).collect());
        out
    }

    pub fn permuting(&self) -> Result<PermutingDataSet, DataSetJsonError> {
        let d = self.raw().validate().map_err(DataSetJsonError::Invalid)?;
        let mut orbits = OrbitDistribution::new();
        for &((c, b), m) in self.orbits.iter().flatten() {
            let p = if b == 1 { Some(ConeClass::FREE) } else { ConeClass::new(c, b) };
            orbits.add(p.ok_or(DataSetJsonError::BadClass(c, b))?, m);
        }
        PermutingDataSet::new(d, orbits).map_err(DataSetJsonError::Orbits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonseparatingJson {
    pub g: u64,
    pub m: u64,
    #[serde(default)]
    pub r: u64,
    #[serde(default)]
    pub sizes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InternalJson {
    #[serde(default)]
    pub r: u64,
    #[serde(default)]
    pub sizes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteJson {
    pub g2: u64,
    pub m: u64,
    pub k: u64,
    /// Defaults to `k` orbits of size `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internal: Option<InternalJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub g1: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub satellites: Vec<SatelliteJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internal: Option<InternalJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub k: u64,
    /// Defaults to `k` preserved strands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<u64>>,
}

/// `{"nonseparating":{"g":3,"m":2,"sizes":[2]}}` or
/// `{"chain":[{"g1":1},{"g1":1}],"edges":[{"k":2,"sizes":[2]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecJson {
    Nonseparating {
        nonseparating: NonseparatingJson,
    },
    Chain {
        chain: Vec<NodeJson>,
        #[serde(default)]
        edges: Vec<EdgeJson>,
    },
}

fn internal(i: &Option<InternalJson>) -> Option<InternalSpec> {
    i.as_ref().map(|i| InternalSpec { r: i.r, sizes: i.sizes.clone() })
}

impl SpecJson {
    pub fn to_spec(&self) -> MulticurveSpec {
        match self {
            SpecJson::Nonseparating { nonseparating: n } => {
                MulticurveSpec::nonseparating(n.g, n.m, n.r, n.sizes.clone())
            }
            SpecJson::Chain { chain, edges } => MulticurveSpec::Chain {
                nodes: chain
                    .iter()
                    .map(|node| ComponentSpec {
                        g1: node.g1,
                        satellites: node
                            .satellites
                            .iter()
                            .map(|s| SatelliteSpec {
                                g2: s.g2,
                                copies: s.m,
                                strands: s.k,
                                sizes: s.sizes.clone().unwrap_or_else(|| vec![s.m; s.k as usize]),
                                internal: internal(&s.internal),
                            })
                            .collect(),
                        internal: internal(&node.internal),
                    })
                    .collect(),
                edges: edges
                    .iter()
                    .map(|e| EdgeSpec { strands: e.k, sizes: e.sizes.clone().unwrap_or_else(|| vec![1; e.k as usize]) })
                    .collect(),
            },
        }
    }
}

/// One glued class: component index and class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndJson {
    pub component: usize,
    /// `{"residue":a}`, `{"cone":[c,b]}` or `"free"`.
    pub class: ClassJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassJson {
    Residue(u64),
    Cone((u64, u64)),
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingJson {
    pub size: u64,
    pub first: EndJson,
    pub second: EndJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub path: String,
    pub copies: u64,
    pub data: DataSetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub degree: u64,
    pub components: Vec<ComponentJson>,
    pub witness: Vec<GluingJson>,
}

fn end(e: &Endpoint) -> EndJson {
    let class = match e.class.kind {
        ClassKind::Residue(a) => ClassJson::Residue(a),
        ClassKind::Cone(p) => ClassJson::Cone((p.residue(), p.modulus())),
        ClassKind::Free => ClassJson::Free,
    };
    EndJson { component: e.side, class }
}

fn component(c: &ComponentRecord) -> ComponentJson {
    ComponentJson { path: c.path.to_string(), copies: c.copies, data: DataSetJson::from_permuting(&c.data) }
}

impl From<&RootClassRecord> for RecordJson {
    fn from(r: &RootClassRecord) -> Self {
        RecordJson {
            degree: r.degree,
            components: r.components.iter().map(component).collect(),
            witness: r
                .witness
                .pairs
                .iter()
                .map(|p| GluingJson { size: p.size, first: end(&p.first), second: end(&p.second) })
                .collect(),
        }
    }
}
