//! When actions on the pieces of a cut surface glue to a root of the twist.
//!
//! A curve orbit of size `S` in a root of degree `n` is preserved curve by
//! curve by `h^S`, and `(h^S)^(n/S)` must twist once about each curve. So the
//! rotations of `h^S` on the two sides of a curve add up to `S/n` of a turn.
//! A side's stabilizer generator is `h^s` for its own orbit size `s`, hence
//! the side contributes `(S/s)·θ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::angle::TurnAngle;
use crate::arith::lcm;
use crate::dataset::{fixed_angle, theta, ConeClass, PermutingDataSet};

/// How the angle sum of a glued pair is tested.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Σ (S/s_i)·θ_i ≡ S/n (mod 1)`, which the published tables obey.
    #[default]
    Scaled,
    /// `θ_1 + θ_2 ≡ 1/n (mod 1)` taken literally, except that two free
    /// classes always glue.
    Strict,
}

/// Which kind of class a gluing consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    /// A distinguished fixed point with this monodromy residue.
    Residue(u64),
    Cone(ConeClass),
    Free,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Residue(a) => write!(f, "a={a}"),
            ClassKind::Cone(p) => write!(f, "{p}"),
            ClassKind::Free => f.write_str("(0,1)"),
        }
    }
}

/// A class of a side's data set, together with that data set's degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassRef {
    pub kind: ClassKind,
    pub own_degree: u64,
}

impl ClassRef {
    pub fn residue(a: u64, n: u64) -> Self {
        ClassRef { kind: ClassKind::Residue(a % n.max(1)), own_degree: n }
    }

    pub fn cone(p: ConeClass, n: u64) -> Self {
        ClassRef { kind: ClassKind::Cone(p), own_degree: n }
    }

    pub fn free(n: u64) -> Self {
        ClassRef { kind: ClassKind::Free, own_degree: n }
    }

    /// Orbit size of the class under its own action.
    pub fn own_orbit_size(self) -> u64 {
        match self.kind {
            ClassKind::Residue(_) => 1,
            ClassKind::Cone(p) => self.own_degree / p.modulus(),
            ClassKind::Free => self.own_degree,
        }
    }

    /// Rotation of the stabilizer generator.
    pub fn angle(self) -> TurnAngle {
        match self.kind {
            ClassKind::Residue(a) => fixed_angle(a, self.own_degree).expect("residue is a unit"),
            ClassKind::Cone(p) => theta(p),
            ClassKind::Free => TurnAngle::ZERO,
        }
    }
}

/// Rejected gluing request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatError {
    ExponentNotStabilizing {
        exponent: u64,
        orbit: u64,
    },
    /// The class orbit does not produce a curve orbit of the requested size.
    SizeMismatch {
        size: u64,
        copies: u64,
        orbit: u64,
    },
    CopyCountNotDividing {
        size: u64,
        copies: u64,
    },
    DegreeMismatch {
        size: u64,
        degree: u64,
    },
    ArityMismatch,
}

impl fmt::Display for CompatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompatError::ExponentNotStabilizing { exponent, orbit } => {
                write!(f, "power {exponent} does not stabilize an orbit of size {orbit}")
            }
            CompatError::SizeMismatch { size, copies, orbit } => {
                write!(f, "{copies} copies of an orbit of size {orbit} do not form a curve orbit of size {size}")
            }
            CompatError::CopyCountNotDividing { size, copies } => {
                write!(f, "{copies} copies do not divide the curve orbit size {size}")
            }
            CompatError::DegreeMismatch { size, degree } => {
                write!(f, "curve orbit size {size} does not divide the degree {degree}")
            }
            CompatError::ArityMismatch => f.write_str("number of classes does not match the multicurve"),
        }
    }
}

impl core::error::Error for CompatError {}

/// Order of `σ_m ∘ t̃` on `m` cyclically permuted copies when `t̃` has order `q`.
pub fn union_order(m: u64, q: u64) -> u64 {
    lcm(m, q)
}

/// Rotation of `t^e` at a point of the class; `e` must stabilize the point.
pub fn rot_power(class: ClassRef, e: u64) -> Result<TurnAngle, CompatError> {
    let s = class.own_orbit_size();
    if !e.is_multiple_of(s) {
        return Err(CompatError::ExponentNotStabilizing { exponent: e, orbit: s });
    }
    Ok(class.angle().scale(e / s))
}

/// One side of a gluing: a permuting data set, possibly for the per-copy
/// map of `copies` cyclically permuted components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub pd: PermutingDataSet,
    pub copies: u64,
}

impl Side {
    pub fn central(pd: PermutingDataSet) -> Self {
        Side { pd, copies: 1 }
    }

    pub fn satellite(pd: PermutingDataSet, copies: u64) -> Self {
        Side { pd, copies }
    }

    /// Order of the restriction of the root to this piece.
    pub fn order(&self) -> u64 {
        union_order(self.copies, self.pd.dataset().degree())
    }
}

/// Rotation of `h^S` at a class of a side with `copies` copies, where `S`
/// is the size of the curve orbit through it.
pub fn contribution(copies: u64, class: ClassRef, size: u64) -> Result<TurnAngle, CompatError> {
    if copies == 0 || !size.is_multiple_of(copies) {
        return Err(CompatError::CopyCountNotDividing { size, copies });
    }
    let s = class.own_orbit_size();
    if union_order(copies, s) != size {
        return Err(CompatError::SizeMismatch { size, copies, orbit: s });
    }
    Ok(class.angle().scale(size / s))
}

fn verdict(x: (u64, ClassRef), y: (u64, ClassRef), size: u64, degree: u64, mode: Mode) -> Result<bool, CompatError> {
    if degree == 0 || !degree.is_multiple_of(size) {
        return Err(CompatError::DegreeMismatch { size, degree });
    }
    let cx = contribution(x.0, x.1, size)?;
    let cy = contribution(y.0, y.1, size)?;
    Ok(match mode {
        Mode::Scaled => cx + cy == TurnAngle::new(size as i128, degree),
        Mode::Strict => {
            (x.1.kind == ClassKind::Free && y.1.kind == ClassKind::Free)
                || x.1.angle() + y.1.angle() == TurnAngle::new(1, degree)
        }
    })
}

/// Whether a class on each side can be glued along a curve orbit of size
/// `size` in a root of degree `degree`.
pub fn class_compatible(
    first: (&Side, ClassRef),
    second: (&Side, ClassRef),
    size: u64,
    degree: u64,
    mode: Mode,
) -> Result<bool, CompatError> {
    verdict((first.0.copies, first.1), (second.0.copies, second.1), size, degree, mode)
}

/// Same test for raw copy counts, without materialized sides.
pub fn classes_glue(
    first: (u64, ClassRef),
    second: (u64, ClassRef),
    size: u64,
    degree: u64,
    mode: Mode,
) -> Result<bool, CompatError> {
    verdict(first, second, size, degree, mode)
}

/// A class consumed on one side of a gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub side: usize,
    pub class: ClassRef,
}

/// Two classes glued along one curve orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WitnessPair {
    pub first: Endpoint,
    pub second: Endpoint,
    pub size: u64,
}

/// A full assignment of classes to the curve orbits of a multicurve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingWitness {
    pub pairs: Vec<WitnessPair>,
}

impl PairingWitness {
    /// How often each class of each side is consumed.
    pub fn consumption(&self) -> BTreeMap<(usize, ClassKind), u64> {
        let mut out = BTreeMap::new();
        for p in &self.pairs {
            for e in [p.first, p.second] {
                *out.entry((e.side, e.class.kind)).or_insert(0) += 1;
            }
        }
        out
    }
}

/// A curve orbit of size `size` joining side `a` to side `b` (possibly the same).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    pub a: usize,
    pub b: usize,
    pub size: u64,
}

/// How many witnesses a search should collect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    First,
    All,
}

/// Supply of each class on a side: residues once each, cone and free
/// classes as often as the orbit distribution allows.
fn supply(side: &Side) -> Vec<(ClassRef, u64)> {
    let d = side.pd.dataset();
    let n = d.degree();
    let mut out: Vec<(ClassRef, u64)> = Vec::new();
    for &a in d.residues() {
        match out.iter_mut().find(|(c, _)| c.kind == ClassKind::Residue(a)) {
            Some(entry) => entry.1 += 1,
            None => out.push((ClassRef::residue(a, n), 1)),
        }
    }
    for (p, m) in side.pd.orbits().iter() {
        let class = if p.is_free() { ClassRef::free(n) } else { ClassRef::cone(p, n) };
        out.push((class, m));
    }
    out
}

/// Searches class assignments for every link, consuming each side's supply
/// disjointly, so that every pair passes [`class_compatible`].
pub fn assemble(
    sides: &[Side],
    links: &[Link],
    degree: u64,
    mode: Mode,
    limit: Limit,
) -> Result<Vec<PairingWitness>, CompatError> {
    for l in links {
        if l.a >= sides.len() || l.b >= sides.len() {
            return Err(CompatError::ArityMismatch);
        }
        if degree == 0 || !degree.is_multiple_of(l.size) {
            return Err(CompatError::DegreeMismatch { size: l.size, degree });
        }
    }
    let mut stock: Vec<Vec<(ClassRef, u64)>> = sides.iter().map(supply).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(links.len());
    search(sides, links, degree, mode, limit, &mut stock, &mut cur, &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    sides: &[Side],
    links: &[Link],
    degree: u64,
    mode: Mode,
    limit: Limit,
    stock: &mut Vec<Vec<(ClassRef, u64)>>,
    cur: &mut Vec<WitnessPair>,
    out: &mut Vec<PairingWitness>,
) -> Result<(), CompatError> {
    if limit == Limit::First && !out.is_empty() {
        return Ok(());
    }
    let i = cur.len();
    if i == links.len() {
        out.push(PairingWitness { pairs: cur.clone() });
        return Ok(());
    }
    let link = links[i];
    let (ma, mb) = (sides[link.a].copies, sides[link.b].copies);
    for x in 0..stock[link.a].len() {
        let (cx, left) = stock[link.a][x];
        if left == 0 || contribution(ma, cx, link.size).is_err() {
            continue;
        }
        stock[link.a][x].1 -= 1;
        for y in 0..stock[link.b].len() {
            let (cy, left) = stock[link.b][y];
            if left == 0 || contribution(mb, cy, link.size).is_err() {
                continue;
            }
            // On a self-link the two ends are interchangeable.
            if link.a == link.b && y < x {
                continue;
            }
            if !verdict((ma, cx), (mb, cy), link.size, degree, mode)? {
                continue;
            }
            stock[link.b][y].1 -= 1;
            cur.push(WitnessPair {
                first: Endpoint { side: link.a, class: cx },
                second: Endpoint { side: link.b, class: cy },
                size: link.size,
            });
            search(sides, links, degree, mode, limit, stock, cur, out)?;
            cur.pop();
            stock[link.b][y].1 += 1;
        }
        stock[link.a][x].1 += 1;
    }
    Ok(())
}

/// Pairs the `2r` residues and the `2k` distinguished orbits of a single
/// action so that each pair closes up to a nonseparating curve orbit.
pub fn nonseparating_check(
    pd: &PermutingDataSet,
    r: u64,
    sizes: &[u64],
    mode: Mode,
) -> Result<Option<PairingWitness>, CompatError> {
    let d = pd.dataset();
    if d.residues().len() as u64 != 2 * r || pd.orbits().total() != 2 * sizes.len() as u64 {
        return Err(CompatError::ArityMismatch);
    }
    let mut links: Vec<Link> = (0..r).map(|_| Link { a: 0, b: 0, size: 1 }).collect();
    links.extend(sizes.iter().map(|&s| Link { a: 0, b: 0, size: s }));
    let side = [Side::central(pd.clone())];
    Ok(assemble(&side, &links, d.degree(), mode, Limit::First)?.into_iter().next())
}

/// Glues two sides along curve orbits of the given sizes.
pub fn pair_compatible(
    first: &Side,
    second: &Side,
    sizes: &[u64],
    mode: Mode,
) -> Result<Option<PairingWitness>, CompatError> {
    let degree = lcm(first.order(), second.order());
    let links: Vec<Link> = sizes.iter().map(|&s| Link { a: 0, b: 1, size: s }).collect();
    let sides = [first.clone(), second.clone()];
    Ok(assemble(&sides, &links, degree, mode, Limit::First)?.into_iter().next())
}

/// A central side with satellites, each attached along curve orbits of the given sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tuple {
    pub center: Side,
    pub satellites: Vec<(Side, Vec<u64>)>,
}

impl Tuple {
    fn push_into(&self, sides: &mut Vec<Side>, links: &mut Vec<Link>) -> usize {
        let c = sides.len();
        sides.push(self.center.clone());
        for (sat, sizes) in &self.satellites {
            let s = sides.len();
            sides.push(sat.clone());
            links.extend(sizes.iter().map(|&size| Link { a: c, b: s, size }));
        }
        c
    }
}

/// Satellites glued to one center with disjoint consumption of its classes.
pub fn tuple_compatible(tuple: &Tuple, mode: Mode) -> Result<Option<PairingWitness>, CompatError> {
    multituple_compatible(core::slice::from_ref(tuple), &[], mode)
}

/// A chain of tuples whose consecutive centers are glued along the given
/// curve orbit sizes.
pub fn multituple_compatible(
    chain: &[Tuple],
    edges: &[Vec<u64>],
    mode: Mode,
) -> Result<Option<PairingWitness>, CompatError> {
    if chain.is_empty() || edges.len() + 1 != chain.len() {
        return Err(CompatError::ArityMismatch);
    }
    let mut sides = Vec::new();
    let mut links = Vec::new();
    let centers: Vec<usize> = chain.iter().map(|t| t.push_into(&mut sides, &mut links)).collect();
    for (i, sizes) in edges.iter().enumerate() {
        links.extend(sizes.iter().map(|&size| Link { a: centers[i], b: centers[i + 1], size }));
    }
    let degree = sides.iter().map(Side::order).fold(1, lcm);
    Ok(assemble(&sides, &links, degree, mode, Limit::First)?.into_iter().next())
}

/// Genus of two surfaces of genera `g1`, `g2` glued along `r` fixed curves and
/// orbits of total size `alpha`.
pub fn pair_genus(g1: u64, g2: u64, r: u64, alpha: u64) -> u64 {
    (g1 + g2 + r + alpha).saturating_sub(1)
}

/// Genus of a surface of genus `g1` carrying `m` copies of a genus-`g2`
/// surface, each attached along `k` curves.
pub fn satellite_genus(g1: u64, m: u64, g2: u64, k: u64) -> u64 {
    g1 + m * (g2 + k).saturating_sub(1)
}

/// A chain node: its genus and the `(m, g2, k)` shape of each satellite.
pub type NodeShape = (u64, Vec<(u64, u64, u64)>);

/// Genus of a chain: node genera (each with its `(m, g2, k)` satellites),
/// plus `k − 1` handles for every edge of `k` strands.
pub fn multituple_genus(nodes: &[NodeShape], edge_strands: &[u64]) -> u64 {
    let node_part: u64 =
        nodes.iter().map(|(g1, sats)| sats.iter().fold(*g1, |acc, &(m, g2, k)| satellite_genus(acc, m, g2, k))).sum();
    node_part + edge_strands.iter().map(|&k| k.saturating_sub(1)).sum::<u64>()
}
