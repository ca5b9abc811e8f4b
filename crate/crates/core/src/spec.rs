//! Multicurves described by how they cut the surface.

use alloc::vec::Vec;
use core::fmt;

/// Curves living inside a single component and not separating it.
/// For a satellite the sizes are orbit sizes under the whole root, so each
/// is a multiple of the copy count and `r` is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InternalSpec {
    pub r: u64,
    pub sizes: Vec<u64>,
}

impl InternalSpec {
    /// Curves per copy when spread over `copies` copies.
    pub fn curves_per_copy(&self, copies: u64) -> u64 {
        self.r + self.sizes.iter().sum::<u64>() / copies.max(1)
    }

    fn is_empty(&self) -> bool {
        self.r == 0 && self.sizes.is_empty()
    }
}

/// `copies` homeomorphic pieces of genus `g2`, cyclically permuted and each
/// attached to its center along `strands` curves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatelliteSpec {
    pub g2: u64,
    pub copies: u64,
    pub strands: u64,
    /// Orbit sizes of the attaching curves; they sum to `copies · strands`.
    pub sizes: Vec<u64>,
    pub internal: Option<InternalSpec>,
}

/// A central piece of the chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    pub g1: u64,
    pub satellites: Vec<SatelliteSpec>,
    pub internal: Option<InternalSpec>,
}

impl ComponentSpec {
    pub fn plain(g1: u64) -> Self {
        ComponentSpec { g1, satellites: Vec::new(), internal: None }
    }
}

/// A pseudo-nonseparating multicurve of `strands` curves joining two
/// consecutive chain pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSpec {
    pub strands: u64,
    pub sizes: Vec<u64>,
}

impl EdgeSpec {
    pub fn new(sizes: Vec<u64>) -> Self {
        EdgeSpec { strands: sizes.iter().sum(), sizes }
    }
}

/// A multicurve together with the partition of its curves into orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MulticurveSpec {
    /// `curves` jointly nonseparating curves on a genus-`g` surface:
    /// `r` preserved, the rest in orbits of the given sizes.
    Nonseparating {
        g: u64,
        curves: u64,
        r: u64,
        sizes: Vec<u64>,
    },
    Chain {
        nodes: Vec<ComponentSpec>,
        edges: Vec<EdgeSpec>,
    },
}

/// Inconsistent multicurve description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    CurveCountMismatch,
    TooManyCurves,
    TrivialOrbit,
    EmptyChain,
    EdgeCountMismatch,
    StrandCountMismatch,
    CopyCountNotDividing,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecError::CurveCountMismatch => "preserved curves plus orbit sizes must equal the curve count",
            SpecError::TooManyCurves => "more nonseparating curves than the genus allows",
            SpecError::TrivialOrbit => "orbit sizes of permuted curves must be at least 2",
            SpecError::EmptyChain => "a chain needs at least one component",
            SpecError::EdgeCountMismatch => "a chain of k components needs k - 1 edges",
            SpecError::StrandCountMismatch => "orbit sizes must add up to the strand count",
            SpecError::CopyCountNotDividing => "satellite orbit sizes must be multiples of the copy count",
        })
    }
}

impl core::error::Error for SpecError {}

impl MulticurveSpec {
    pub fn nonseparating(g: u64, curves: u64, r: u64, sizes: Vec<u64>) -> Self {
        MulticurveSpec::Nonseparating { g, curves, r, sizes }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            MulticurveSpec::Nonseparating { g, curves, r, sizes } => {
                if sizes.iter().any(|&s| s < 2) {
                    return Err(SpecError::TrivialOrbit);
                }
                if r + sizes.iter().sum::<u64>() != *curves || *curves == 0 {
                    return Err(SpecError::CurveCountMismatch);
                }
                if curves > g {
                    return Err(SpecError::TooManyCurves);
                }
                Ok(())
            }
            MulticurveSpec::Chain { nodes, edges } => {
                if nodes.is_empty() {
                    return Err(SpecError::EmptyChain);
                }
                if edges.len() + 1 != nodes.len() {
                    return Err(SpecError::EdgeCountMismatch);
                }
                for e in edges {
                    if e.strands == 0 || e.sizes.iter().sum::<u64>() != e.strands || e.sizes.contains(&0) {
                        return Err(SpecError::StrandCountMismatch);
                    }
                }
                for node in nodes {
                    if let Some(int) = &node.internal {
                        check_internal(int, 1, node.g1)?;
                    }
                    for sat in &node.satellites {
                        if sat.copies == 0 || sat.strands == 0 {
                            return Err(SpecError::StrandCountMismatch);
                        }
                        if sat.sizes.iter().sum::<u64>() != sat.copies * sat.strands {
                            return Err(SpecError::StrandCountMismatch);
                        }
                        if sat.sizes.iter().any(|&s| s == 0 || s % sat.copies != 0) {
                            return Err(SpecError::CopyCountNotDividing);
                        }
                        if let Some(int) = &sat.internal {
                            if int.r != 0 {
                                return Err(SpecError::CopyCountNotDividing);
                            }
                            check_internal(int, sat.copies, sat.g2)?;
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Genus of the whole surface.
    pub fn genus(&self) -> u64 {
        match self {
            MulticurveSpec::Nonseparating { g, .. } => *g,
            MulticurveSpec::Chain { nodes, edges } => {
                let nodes: u64 = nodes
                    .iter()
                    .map(|n| n.g1 + n.satellites.iter().map(|s| s.copies * (s.g2 + s.strands - 1)).sum::<u64>())
                    .sum();
                nodes + edges.iter().map(|e| e.strands - 1).sum::<u64>()
            }
        }
    }

    /// Total number of curves.
    pub fn curve_count(&self) -> u64 {
        match self {
            MulticurveSpec::Nonseparating { curves, .. } => *curves,
            MulticurveSpec::Chain { nodes, edges } => {
                let internal =
                    |int: &Option<InternalSpec>| int.as_ref().map_or(0, |i| i.r + i.sizes.iter().sum::<u64>());
                edges.iter().map(|e| e.strands).sum::<u64>()
                    + nodes
                        .iter()
                        .map(|n| {
                            internal(&n.internal)
                                + n.satellites.iter().map(|s| s.copies * s.strands + internal(&s.internal)).sum::<u64>()
                        })
                        .sum::<u64>()
            }
        }
    }

    /// The `(r, k)` partition: preserved curves and orbits of size at least two.
    pub fn partition(&self) -> (u64, u64) {
        let mut all = Vec::new();
        let mut r = 0;
        match self {
            MulticurveSpec::Nonseparating { r: rr, sizes, .. } => {
                r += rr;
                all.extend(sizes.iter().copied());
            }
            MulticurveSpec::Chain { nodes, edges } => {
                for e in edges {
                    all.extend(e.sizes.iter().copied());
                }
                for n in nodes {
                    if let Some(i) = &n.internal {
                        r += i.r;
                        all.extend(i.sizes.iter().copied());
                    }
                    for s in &n.satellites {
                        all.extend(s.sizes.iter().copied());
                        if let Some(i) = &s.internal {
                            all.extend(i.sizes.iter().copied());
                        }
                    }
                }
            }
        }
        r += all.iter().filter(|&&s| s == 1).count() as u64;
        (r, all.iter().filter(|&&s| s > 1).count() as u64)
    }

    /// Whether some component carries nonseparating curves of its own.
    pub fn is_mixed(&self) -> bool {
        match self {
            MulticurveSpec::Nonseparating { .. } => false,
            MulticurveSpec::Chain { nodes, .. } => nodes.iter().any(|n| {
                n.internal.as_ref().is_some_and(|i| !i.is_empty())
                    || n.satellites.iter().any(|s| s.internal.as_ref().is_some_and(|i| !i.is_empty()))
            }),
        }
    }

    /// Smallest genus sum of two consecutive chain pieces, or the single
    /// piece's genus for a one-piece chain.
    pub fn g_of_c(&self) -> Option<u64> {
        match self {
            MulticurveSpec::Nonseparating { .. } => None,
            MulticurveSpec::Chain { nodes, .. } if nodes.len() == 1 => Some(nodes[0].g1),
            MulticurveSpec::Chain { nodes, .. } => nodes.windows(2).map(|w| w[0].g1 + w[1].g1).min(),
        }
    }

    /// The same chain read from the other end.
    pub fn reversed(&self) -> Self {
        match self {
            MulticurveSpec::Chain { nodes, edges } => MulticurveSpec::Chain {
                nodes: nodes.iter().rev().cloned().collect(),
                edges: edges.iter().rev().cloned().collect(),
            },
            other => other.clone(),
        }
    }
}

fn check_internal(int: &InternalSpec, copies: u64, genus: u64) -> Result<(), SpecError> {
    if int.sizes.iter().any(|&s| s < 2.max(copies) || s % copies != 0) {
        return Err(SpecError::TrivialOrbit);
    }
    if int.curves_per_copy(copies) > genus {
        return Err(SpecError::TooManyCurves);
    }
    Ok(())
}
