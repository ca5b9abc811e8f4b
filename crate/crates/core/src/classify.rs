//! Classification of roots of multicurve twists up to conjugacy.
//!
//! A multicurve is flattened into components (chain nodes and satellite
//! blocks) joined by links, one link per curve orbit. For each candidate
//! degree every component independently lists its data sets and class
//! assignments, and a backtracking search keeps the combinations whose
//! links all glue.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::arith::{divisors, lcm};
use crate::bounds::search_cap;
use crate::compat::{
    classes_glue, contribution, ClassKind, ClassRef, Endpoint, Link, Mode, PairingWitness, WitnessPair,
};
use crate::dataset::{ConeClass, DataSet, OrbitDistribution, PermutingDataSet, PowerImage};
use crate::enumerate::{enumerate_datasets, EnumQuery};
use crate::spec::{MulticurveSpec, SpecError};

/// Where a component sits in the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentPath {
    Node(usize),
    Satellite { node: usize, index: usize },
}

impl fmt::Display for ComponentPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentPath::Node(i) => write!(f, "n{i}"),
            ComponentPath::Satellite { node, index } => write!(f, "n{node}s{index}"),
        }
    }
}

/// Unrecognized component path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsePathError;

impl fmt::Display for ParsePathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("component paths look like n0 or n1s0")
    }
}

impl core::error::Error for ParsePathError {}

impl FromStr for ComponentPath {
    type Err = ParsePathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s.strip_prefix('n').ok_or(ParsePathError)?;
        match rest.split_once('s') {
            Some((node, index)) => Ok(ComponentPath::Satellite {
                node: node.parse().map_err(|_| ParsePathError)?,
                index: index.parse().map_err(|_| ParsePathError)?,
            }),
            None => Ok(ComponentPath::Node(rest.parse().map_err(|_| ParsePathError)?)),
        }
    }
}

/// A piece of the cut surface, after capping.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub path: ComponentPath,
    /// Number of cyclically permuted copies; 1 for chain nodes.
    pub copies: u64,
    /// Genus of one capped copy.
    pub genus: u64,
    /// Distinguished residues its data set carries (preserved curves).
    pub residues: u64,
}

/// Components, links and the symmetries of a multicurve.
#[derive(Clone, Debug)]
pub struct Layout {
    pub components: Vec<Component>,
    pub links: Vec<Link>,
    /// Component permutations mapping the multicurve to itself.
    automorphisms: Vec<Vec<usize>>,
    /// For every component, the link ends `(link, is_second_end)` it hosts.
    ends: Vec<Vec<(usize, bool)>>,
}

impl Layout {
    pub fn of(spec: &MulticurveSpec) -> Result<Layout, SpecError> {
        spec.validate()?;
        let mut components = Vec::new();
        let mut links = Vec::new();
        match spec {
            MulticurveSpec::Nonseparating { g, curves, r, sizes } => {
                components.push(Component {
                    path: ComponentPath::Node(0),
                    copies: 1,
                    genus: g - curves,
                    residues: 2 * r,
                });
                links.extend((0..*r).map(|_| Link { a: 0, b: 0, size: 1 }));
                links.extend(sizes.iter().map(|&size| Link { a: 0, b: 0, size }));
            }
            MulticurveSpec::Chain { nodes, edges } => {
                let mut node_index = Vec::new();
                for (i, node) in nodes.iter().enumerate() {
                    let c = components.len();
                    node_index.push(c);
                    let (int_r, int_sizes, int_curves) = match &node.internal {
                        Some(int) => (int.r, int.sizes.clone(), int.curves_per_copy(1)),
                        None => (0, Vec::new(), 0),
                    };
                    components.push(Component {
                        path: ComponentPath::Node(i),
                        copies: 1,
                        genus: node.g1 - int_curves,
                        residues: 0,
                    });
                    links.extend((0..int_r).map(|_| Link { a: c, b: c, size: 1 }));
                    links.extend(int_sizes.iter().map(|&size| Link { a: c, b: c, size }));
                    for (j, sat) in node.satellites.iter().enumerate() {
                        let s = components.len();
                        let (sizes, curves) = match &sat.internal {
                            Some(int) => (int.sizes.clone(), int.curves_per_copy(sat.copies)),
                            None => (Vec::new(), 0),
                        };
                        components.push(Component {
                            path: ComponentPath::Satellite { node: i, index: j },
                            copies: sat.copies,
                            genus: sat.g2 - curves,
                            residues: 0,
                        });
                        links.extend(sat.sizes.iter().map(|&size| Link { a: c, b: s, size }));
                        links.extend(sizes.iter().map(|&size| Link { a: s, b: s, size }));
                    }
                }
                for (i, e) in edges.iter().enumerate() {
                    let (a, b) = (node_index[i], node_index[i + 1]);
                    links.extend(e.sizes.iter().map(|&size| Link { a, b, size }));
                }
            }
        }
        let mut ends = alloc::vec![Vec::new(); components.len()];
        for (i, l) in links.iter().enumerate() {
            ends[l.a].push((i, false));
            ends[l.b].push((i, true));
            if l.size == 1 && components[l.a].copies == 1 {
                components[l.a].residues += 1;
                components[l.b].residues += 1;
            }
        }
        if let MulticurveSpec::Nonseparating { r, .. } = spec {
            components[0].residues = 2 * r;
        }
        let mut layout = Layout { components, links, automorphisms: Vec::new(), ends };
        layout.automorphisms = layout.symmetries(spec);
        Ok(layout)
    }

    fn index_of(&self, path: ComponentPath) -> Option<usize> {
        self.components.iter().position(|c| c.path == path)
    }

    pub fn column(&self, path: ComponentPath) -> Option<usize> {
        self.index_of(path)
    }

    fn symmetries(&self, spec: &MulticurveSpec) -> Vec<Vec<usize>> {
        let k = self.components.len();
        let identity: Vec<usize> = (0..k).collect();
        let MulticurveSpec::Chain { nodes, .. } = spec else {
            return alloc::vec![identity];
        };
        let mut flips = alloc::vec![identity.clone()];
        if spec.reversed() == *spec && nodes.len() > 1 {
            let last = nodes.len() - 1;
            let flip = self
                .components
                .iter()
                .map(|c| {
                    let target = match c.path {
                        ComponentPath::Node(i) => ComponentPath::Node(last - i),
                        ComponentPath::Satellite { node, index } => {
                            ComponentPath::Satellite { node: last - node, index }
                        }
                    };
                    self.index_of(target).expect("reversed chain has the same shape")
                })
                .collect();
            flips.push(flip);
        }
        // Identical satellites of one node can be exchanged.
        let mut shuffles = alloc::vec![identity];
        for (i, node) in nodes.iter().enumerate() {
            let n = node.satellites.len();
            let mut next = Vec::new();
            for perm in permutations(n) {
                if (0..n).any(|j| node.satellites[j] != node.satellites[perm[j]]) {
                    continue;
                }
                for base in &shuffles {
                    let mut p = base.clone();
                    for (j, &target) in perm.iter().enumerate() {
                        let from = self.index_of(ComponentPath::Satellite { node: i, index: j }).unwrap();
                        let to = self.index_of(ComponentPath::Satellite { node: i, index: target }).unwrap();
                        p[from] = to;
                    }
                    next.push(p);
                }
            }
            shuffles = next;
        }
        let mut out = Vec::new();
        for f in &flips {
            for s in &shuffles {
                let p: Vec<usize> = (0..k).map(|c| s[f[c]]).collect();
                if self.preserves(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn preserves(&self, p: &[usize]) -> bool {
        let norm = |a: usize, b: usize, s: u64| if a <= b { (a, b, s) } else { (b, a, s) };
        let mut mine: Vec<_> = self.links.iter().map(|l| norm(l.a, l.b, l.size)).collect();
        let mut theirs: Vec<_> = self.links.iter().map(|l| norm(p[l.a], p[l.b], l.size)).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs && (0..p.len()).all(|c| self.components[c].copies == self.components[p[c]].copies)
    }

    /// Table-level identity of a row: degree plus one entry per component,
    /// minimized over the symmetries of the multicurve.
    pub fn row_key(&self, degree: u64, data: &[DataSet]) -> RowKey {
        let parts: Vec<CompKey> = data.iter().zip(&self.components).map(|(d, c)| comp_key(c.copies, d)).collect();
        let best = self
            .automorphisms
            .iter()
            .map(|p| {
                let mut moved = parts.clone();
                for (c, part) in parts.iter().enumerate() {
                    moved[p[c]] = part.clone();
                }
                moved
            })
            .min()
            .expect("identity is always a symmetry");
        RowKey { degree, parts: best }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// A component's contribution to a row key. A satellite block is
/// determined up to conjugacy by the `m`-th power of its per-copy map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompKey {
    Central(DataSet),
    Satellite { copies: u64, power: DataSet },
}

fn comp_key(copies: u64, d: &DataSet) -> CompKey {
    if copies == 1 {
        CompKey::Central(d.clone())
    } else {
        CompKey::Satellite { copies, power: d.raise(copies).0 }
    }
}

/// Identity of a table row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowKey {
    pub degree: u64,
    pub parts: Vec<CompKey>,
}

/// Conjugacy invariant of a root: row key data plus how classes are glued.
/// Size of a glued curve orbit and the power-map image of each end.
pub type GluingImage = (u64, (usize, PowerImage), (usize, PowerImage));

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordKey {
    pub degree: u64,
    pub parts: Vec<CompKey>,
    pub gluings: Vec<GluingImage>,
}

/// The data set of one component in a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentRecord {
    pub path: ComponentPath,
    pub copies: u64,
    pub data: PermutingDataSet,
}

/// One conjugacy class of roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClassRecord {
    pub degree: u64,
    pub components: Vec<ComponentRecord>,
    pub witness: PairingWitness,
    key: RecordKey,
}

impl RootClassRecord {
    pub fn key(&self) -> &RecordKey {
        &self.key
    }

    pub fn datasets(&self) -> Vec<DataSet> {
        self.components.iter().map(|c| c.data.dataset().clone()).collect()
    }

    /// Order of the root restricted to each component.
    pub fn component_orders(&self) -> Vec<u64> {
        self.components.iter().map(|c| lcm(c.copies, c.data.dataset().degree())).collect()
    }
}

impl PartialOrd for RootClassRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootClassRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .cmp(&other.key)
            .then_with(|| self.components.cmp(&other.components))
            .then_with(|| self.witness.cmp(&other.witness))
    }
}

/// Image of a glued class in the component key.
fn end_image(copies: u64, d: &DataSet, class: ClassKind) -> PowerImage {
    if copies == 1 {
        return match class {
            ClassKind::Residue(a) => PowerImage::Residue(a),
            ClassKind::Cone(p) => PowerImage::Cone(p),
            ClassKind::Free => PowerImage::Free,
        };
    }
    let (_, images) = d.raise(copies);
    let r = d.residues().len();
    let idx = match class {
        ClassKind::Residue(a) => d.residues().iter().position(|&x| x == a).expect("residue present"),
        ClassKind::Cone(p) => r + d.cones().iter().position(|&q| q == p).expect("cone present"),
        ClassKind::Free => r + d.cones().len(),
    };
    images[idx][0]
}

struct LocalOption {
    data: DataSet,
    order: u64,
    /// Class at each end hosted by the component, aligned with `Layout::ends`.
    classes: Vec<ClassRef>,
}

/// Data sets by `(genus, degree, residues)`.
#[derive(Default)]
pub struct DataSetCache {
    map: BTreeMap<(u64, u64, u64), Vec<DataSet>>,
}

impl DataSetCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&mut self, genus: u64, degree: u64, residues: u64) -> &[DataSet] {
        self.map
            .entry((genus, degree, residues))
            .or_insert_with(|| enumerate_datasets(&EnumQuery::new(genus, degree).with_residues(residues)))
    }
}

fn local_options(layout: &Layout, c: usize, n: u64, mode: Mode, cache: &mut DataSetCache) -> Vec<LocalOption> {
    let comp = &layout.components[c];
    let residues = if comp.copies == 1 { comp.residues } else { 0 };
    let candidates: Vec<DataSet> = divisors(n)
        .into_iter()
        .filter(|&d| n.is_multiple_of(lcm(comp.copies, d)))
        .flat_map(|d| cache.get(comp.genus, d, residues).to_vec())
        .collect();
    options_from(layout, c, n, mode, candidates)
}

fn options_from(layout: &Layout, c: usize, n: u64, mode: Mode, candidates: Vec<DataSet>) -> Vec<LocalOption> {
    let comp = &layout.components[c];
    let ends = &layout.ends[c];
    let mut out = Vec::new();
    for data in candidates {
        let d = data.degree();
        let order = lcm(comp.copies, d);
        if !n.is_multiple_of(order) {
            continue;
        }
        {
            let mut supply: Vec<(ClassRef, Option<u64>)> = Vec::new();
            for &a in data.residues() {
                match supply.iter_mut().find(|(x, _)| x.kind == ClassKind::Residue(a)) {
                    Some((_, Some(k))) => *k += 1,
                    _ => supply.push((ClassRef::residue(a, d), Some(1))),
                }
            }
            let mut cones: Vec<ConeClass> = data.cones().to_vec();
            cones.dedup();
            for p in cones {
                supply.push((ClassRef::cone(p, d), Some(data.cone_count(p) as u64)));
            }
            supply.push((ClassRef::free(d), None));
            let mut picked = Vec::with_capacity(ends.len());
            assign(layout, c, n, mode, &mut supply, &mut picked, &data, order, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn assign(
    layout: &Layout,
    c: usize,
    n: u64,
    mode: Mode,
    supply: &mut Vec<(ClassRef, Option<u64>)>,
    picked: &mut Vec<(usize, ClassRef)>,
    data: &DataSet,
    order: u64,
    out: &mut Vec<LocalOption>,
) {
    let comp = &layout.components[c];
    let ends = &layout.ends[c];
    let i = picked.len();
    if i == ends.len() {
        out.push(LocalOption { data: data.clone(), order, classes: picked.iter().map(|&(_, x)| x).collect() });
        return;
    }
    let (link_id, second) = ends[i];
    let link = layout.links[link_id];
    for s in 0..supply.len() {
        let (class, left) = supply[s];
        if left == Some(0) {
            continue;
        }
        let is_residue = matches!(class.kind, ClassKind::Residue(_));
        if comp.copies == 1 && (link.size == 1) != is_residue {
            continue;
        }
        if contribution(comp.copies, class, link.size).is_err() {
            continue;
        }
        if second && link.a == link.b {
            // Both ends of a self-link live here: the first end was picked
            // just before, and the order of the two ends is immaterial.
            let first_pos = ends.iter().position(|&e| e == (link_id, false)).unwrap();
            let (first_supply, first_class) = picked[first_pos];
            if s < first_supply {
                continue;
            }
            let ok = classes_glue((comp.copies, first_class), (comp.copies, class), link.size, n, mode);
            if ok != Ok(true) {
                continue;
            }
        }
        if let Some(k) = left {
            supply[s].1 = Some(k - 1);
        }
        picked.push((s, class));
        assign(layout, c, n, mode, supply, picked, data, order, out);
        picked.pop();
        if let Some(k) = left {
            supply[s].1 = Some(k);
        }
    }
}

/// Roots of degree exactly `n` for the layout, deduplicated by conjugacy
/// invariant and sorted.
pub fn classify_at_degree(layout: &Layout, n: u64, mode: Mode, cache: &mut DataSetCache) -> Vec<RootClassRecord> {
    let options: Vec<Vec<LocalOption>> =
        (0..layout.components.len()).map(|c| local_options(layout, c, n, mode, cache)).collect();
    glue_options(layout, n, mode, &options)
}

/// Roots of degree `n` whose components carry exactly the given data sets,
/// one per component in layout order.
pub fn glue_row(layout: &Layout, n: u64, data: &[DataSet], mode: Mode) -> Vec<RootClassRecord> {
    if data.len() != layout.components.len() {
        return Vec::new();
    }
    let options: Vec<Vec<LocalOption>> =
        data.iter().enumerate().map(|(c, d)| options_from(layout, c, n, mode, alloc::vec![d.clone()])).collect();
    glue_options(layout, n, mode, &options)
}

fn glue_options(layout: &Layout, n: u64, mode: Mode, options: &[Vec<LocalOption>]) -> Vec<RootClassRecord> {
    let k = layout.components.len();
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    // Position of each link end inside its component's option.
    let slot =
        |link: usize, second: bool, comp: usize| layout.ends[comp].iter().position(|&e| e == (link, second)).unwrap();
    let checks: Vec<Vec<(usize, usize, usize)>> = (0..k)
        .map(|c| {
            layout
                .links
                .iter()
                .enumerate()
                .filter(|(_, l)| l.a != l.b && l.a.max(l.b) == c)
                .map(|(i, l)| (i, slot(i, false, l.a), slot(i, true, l.b)))
                .collect()
        })
        .collect();
    let mut found: BTreeMap<RecordKey, RootClassRecord> = BTreeMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    search(layout, n, mode, options, &checks, &mut chosen, &mut found);
    found.into_values().collect()
}

fn search(
    layout: &Layout,
    n: u64,
    mode: Mode,
    options: &[Vec<LocalOption>],
    checks: &[Vec<(usize, usize, usize)>],
    chosen: &mut Vec<usize>,
    found: &mut BTreeMap<RecordKey, RootClassRecord>,
) {
    let c = chosen.len();
    if c == options.len() {
        let order = (0..c).map(|i| options[i][chosen[i]].order).fold(1, lcm);
        if order == n {
            let record = build_record(layout, n, options, chosen);
            match found.get(record.key()) {
                Some(old) if !prefer(&record, old, layout) => {}
                _ => {
                    found.insert(record.key().clone(), record);
                }
            }
        }
        return;
    }
    'options: for (o, opt) in options[c].iter().enumerate() {
        for &(link_id, ia, ib) in &checks[c] {
            let l = layout.links[link_id];
            let xa = if l.a == c { opt.classes[ia] } else { options[l.a][chosen[l.a]].classes[ia] };
            let xb = if l.b == c { opt.classes[ib] } else { options[l.b][chosen[l.b]].classes[ib] };
            let ok =
                classes_glue((layout.components[l.a].copies, xa), (layout.components[l.b].copies, xb), l.size, n, mode);
            if ok != Ok(true) {
                continue 'options;
            }
        }
        chosen.push(o);
        search(layout, n, mode, options, checks, chosen, found);
        chosen.pop();
    }
}

fn build_record(layout: &Layout, n: u64, options: &[Vec<LocalOption>], chosen: &[usize]) -> RootClassRecord {
    let picks: Vec<&LocalOption> = chosen.iter().enumerate().map(|(c, &o)| &options[c][o]).collect();
    let mut pairs = Vec::new();
    let mut usage: Vec<BTreeMap<ConeClass, u64>> = alloc::vec![BTreeMap::new(); picks.len()];
    for (i, l) in layout.links.iter().enumerate() {
        let ia = layout.ends[l.a].iter().position(|&e| e == (i, false)).unwrap();
        let ib = layout.ends[l.b].iter().position(|&e| e == (i, true)).unwrap();
        let (xa, xb) = (picks[l.a].classes[ia], picks[l.b].classes[ib]);
        for (comp, x) in [(l.a, xa), (l.b, xb)] {
            let p = match x.kind {
                ClassKind::Residue(_) => continue,
                ClassKind::Cone(p) => p,
                ClassKind::Free => ConeClass::FREE,
            };
            *usage[comp].entry(p).or_insert(0) += 1;
        }
        pairs.push(WitnessPair {
            first: Endpoint { side: l.a, class: xa },
            second: Endpoint { side: l.b, class: xb },
            size: l.size,
        });
    }
    let components: Vec<ComponentRecord> = layout
        .components
        .iter()
        .zip(&picks)
        .zip(usage)
        .map(|((comp, opt), used)| ComponentRecord {
            path: comp.path,
            copies: comp.copies,
            data: PermutingDataSet::new(opt.data.clone(), used.into_iter().collect::<OrbitDistribution>())
                .expect("usage respects the cone supply"),
        })
        .collect();
    let witness = PairingWitness { pairs };
    let key = record_key(layout, n, &components, &witness);
    RootClassRecord { degree: n, components, witness, key }
}

fn record_key(layout: &Layout, n: u64, components: &[ComponentRecord], witness: &PairingWitness) -> RecordKey {
    let parts: Vec<CompKey> = components.iter().map(|c| comp_key(c.copies, c.data.dataset())).collect();
    let images: Vec<GluingImage> = witness
        .pairs
        .iter()
        .map(|p| {
            let img = |e: &Endpoint| {
                let comp = &components[e.side];
                (e.side, end_image(comp.copies, comp.data.dataset(), e.class.kind))
            };
            (p.size, img(&p.first), img(&p.second))
        })
        .collect();
    layout
        .automorphisms
        .iter()
        .map(|perm| {
            let mut moved = parts.clone();
            for (c, part) in parts.iter().enumerate() {
                moved[perm[c]] = part.clone();
            }
            let mut gluings: Vec<_> = images
                .iter()
                .map(|&(s, (a, ia), (b, ib))| {
                    let (x, y) = ((perm[a], ia), (perm[b], ib));
                    if x <= y {
                        (s, x, y)
                    } else {
                        (s, y, x)
                    }
                })
                .collect();
            gluings.sort_unstable();
            RecordKey { degree: n, parts: moved, gluings }
        })
        .min()
        .expect("identity is always a symmetry")
}

/// Among records of one conjugacy class, prefer the canonically oriented
/// one, then satellites whose per-copy map is as simple as possible.
fn prefer(new: &RootClassRecord, old: &RootClassRecord, layout: &Layout) -> bool {
    let misoriented = |r: &RootClassRecord| {
        let raw: Vec<CompKey> = r.components.iter().map(|c| comp_key(c.copies, c.data.dataset())).collect();
        raw != r.key.parts
    };
    let rank = |r: &RootClassRecord| {
        let sats: Vec<(bool, bool, u64, DataSet)> = r
            .components
            .iter()
            .zip(&layout.components)
            .filter(|(_, c)| c.copies > 1)
            .map(|(rec, c)| {
                let q = rec.data.dataset().degree();
                (q != 1, q % c.copies != 0, q, rec.data.dataset().clone())
            })
            .collect();
        (misoriented(r), sats)
    };
    match rank(new).cmp(&rank(old)) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => new < old,
    }
}

/// Every root of the multicurve twist with degree between 2 and `cap`.
pub fn classify_up_to(layout: &Layout, cap: u64, mode: Mode) -> Vec<RootClassRecord> {
    let mut cache = DataSetCache::new();
    (2..=cap).flat_map(|n| classify_at_degree(layout, n, mode, &mut cache)).collect()
}

/// Classifies all roots using the degree cap of the multicurve.
pub fn classify(spec: &MulticurveSpec, mode: Mode) -> Result<Vec<RootClassRecord>, SpecError> {
    let layout = Layout::of(spec)?;
    Ok(classify_up_to(&layout, search_cap(spec), mode))
}

/// Nonseparating multicurves only.
pub fn classify_nonseparating(spec: &MulticurveSpec, mode: Mode) -> Result<Vec<RootClassRecord>, SpecError> {
    match spec {
        MulticurveSpec::Nonseparating { .. } => classify(spec, mode),
        _ => Err(SpecError::EdgeCountMismatch),
    }
}

/// Chains without internal curves.
pub fn classify_separating(spec: &MulticurveSpec, mode: Mode) -> Result<Vec<RootClassRecord>, SpecError> {
    match spec {
        MulticurveSpec::Chain { .. } if !spec.is_mixed() => classify(spec, mode),
        _ => Err(SpecError::EdgeCountMismatch),
    }
}

/// Chains whose pieces may carry their own nonseparating curves.
pub fn classify_mixed(spec: &MulticurveSpec, mode: Mode) -> Result<Vec<RootClassRecord>, SpecError> {
    match spec {
        MulticurveSpec::Chain { .. } => classify(spec, mode),
        _ => Err(SpecError::EdgeCountMismatch),
    }
}

/// Distinct table rows among the records, each with a representative.
pub fn table_rows<'a>(layout: &Layout, records: &'a [RootClassRecord]) -> BTreeMap<RowKey, &'a RootClassRecord> {
    let mut rows: BTreeMap<RowKey, &RootClassRecord> = BTreeMap::new();
    for r in records {
        rows.entry(layout.row_key(r.degree, &r.datasets())).or_insert(r);
    }
    rows
}
