//! Data sets of cyclic actions: validation, genus, rotation angles,
//! canonical form and the power map.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::angle::TurnAngle;
use crate::arith::{gcd, lcm, mod_inverse};

/// Orbit type `c mod b`: the stabilizer of a point in the orbit has order `b`
/// and its generator rotates by `c⁻¹/b` of a turn. `(0,1)` is the free class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConeClass {
    c: u64,
    b: u64,
}

impl Ord for ConeClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.b, self.c).cmp(&(other.b, other.c))
    }
}

impl PartialOrd for ConeClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ConeClass {
    pub const FREE: ConeClass = ConeClass { c: 0, b: 1 };

    /// Reduces `c` modulo `b`; `None` unless the result is a unit (or `b == 1`).
    pub fn new(c: i64, b: u64) -> Option<Self> {
        if b == 0 {
            return None;
        }
        let r = (c as i128).rem_euclid(b as i128) as u64;
        (gcd(r, b) == 1).then_some(ConeClass { c: r, b })
    }

    pub fn residue(self) -> u64 {
        self.c
    }

    pub fn modulus(self) -> u64 {
        self.b
    }

    pub fn is_free(self) -> bool {
        self.b == 1
    }

    /// Rotation of the stabilizer generator.
    pub fn angle(self) -> TurnAngle {
        theta(self)
    }
}

impl fmt::Display for ConeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.b)
    }
}

/// `(c,b) ↦ (c⁻¹ mod b)/b`, and the free class rotates by nothing.
pub fn theta(p: ConeClass) -> TurnAngle {
    if p.b == 1 {
        return TurnAngle::ZERO;
    }
    let inv = mod_inverse(p.c, p.b).expect("cone residue is a unit");
    TurnAngle::new(inv as i128, p.b)
}

/// Rotation at a fixed point whose monodromy exponent is `a` in degree `n`.
pub fn fixed_angle(a: u64, n: u64) -> Option<TurnAngle> {
    let inv = mod_inverse(a, n)?;
    Some(TurnAngle::new(inv as i128, n))
}

/// Size of an orbit of class `p` under an action of order `n`.
pub fn class_orbit_size(p: ConeClass, n: u64) -> Option<u64> {
    (n > 0 && n.is_multiple_of(p.b)).then(|| n / p.b)
}

/// One failed condition of a data-set tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroDegree,
    TrivialCone {
        residue: i64,
    },
    NonDividingModulus {
        modulus: u64,
    },
    NonCoprimeResidue {
        residue: i64,
        modulus: u64,
    },
    CongruenceSumNonzero {
        sum: u64,
    },
    /// Sphere quotient without distinguished points whose cone orders have
    /// lcm below the degree: the cover would be disconnected.
    NonGenerating {
        order: u64,
    },
    NonIntegralGenus,
    NegativeGenus,
}

impl Violation {
    /// Short tag of the condition that failed.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::ZeroDegree | Violation::TrivialCone { .. } => "degree",
            Violation::NonDividingModulus { .. } => "divisibility",
            Violation::NonCoprimeResidue { .. } => "coprimality",
            Violation::CongruenceSumNonzero { .. } => "congruence",
            Violation::NonGenerating { .. } => "generation",
            Violation::NonIntegralGenus | Violation::NegativeGenus => "genus",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: ", self.condition())?;
        match self {
            Violation::ZeroDegree => f.write_str("degree must be positive"),
            Violation::TrivialCone { residue } => {
                write!(f, "cone ({residue},1) has trivial stabilizer")
            }
            Violation::NonDividingModulus { modulus } => {
                write!(f, "cone order {modulus} does not divide the degree")
            }
            Violation::NonCoprimeResidue { residue, modulus } => {
                write!(f, "{residue} is not a unit modulo {modulus}")
            }
            Violation::CongruenceSumNonzero { sum } => {
                write!(f, "weighted residue sum is {sum}, not 0, modulo the degree")
            }
            Violation::NonGenerating { order } => {
                write!(f, "cone points generate a subgroup of order {order} only")
            }
            Violation::NonIntegralGenus => f.write_str("Riemann-Hurwitz genus is not an integer"),
            Violation::NegativeGenus => f.write_str("Riemann-Hurwitz genus is negative"),
        }
    }
}

/// The complete list of violated conditions for a rejected tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidDataSet {
    pub violations: Vec<Violation>,
}

impl InvalidDataSet {
    pub fn contains(&self, probe: fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(probe)
    }
}

impl fmt::Display for InvalidDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for InvalidDataSet {}

/// An unchecked tuple `(n, g0, a_1..a_r; (c_1,n_1)..(c_s,n_s))`, as printed or parsed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawDataSet {
    pub n: u64,
    pub g0: u64,
    pub residues: Vec<i64>,
    pub cones: Vec<(i64, u64)>,
}

impl RawDataSet {
    pub fn validate(&self) -> Result<DataSet, InvalidDataSet> {
        validate(self.n, self.g0, &self.residues, &self.cones)
    }
}

/// Checks a tuple against every data-set condition, reporting each failure.
/// Besides the three arithmetic conditions and the genus, a sphere quotient
/// with no distinguished points needs cone orders of lcm `n`.
pub fn validate(n: u64, g0: u64, residues: &[i64], cones: &[(i64, u64)]) -> Result<DataSet, InvalidDataSet> {
    let mut violations = Vec::new();
    if n == 0 {
        violations.push(Violation::ZeroDegree);
        return Err(InvalidDataSet { violations });
    }
    let mut dividing = true;
    for &(c, b) in cones {
        if b <= 1 {
            violations.push(Violation::TrivialCone { residue: c });
            dividing = false;
            continue;
        }
        if !n.is_multiple_of(b) {
            violations.push(Violation::NonDividingModulus { modulus: b });
            dividing = false;
        }
    }
    for &a in residues {
        if gcd(reduce(a, n), n) != 1 {
            violations.push(Violation::NonCoprimeResidue { residue: a, modulus: n });
        }
    }
    for &(c, b) in cones {
        if b > 1 && gcd(reduce(c, b), b) != 1 {
            violations.push(Violation::NonCoprimeResidue { residue: c, modulus: b });
        }
    }
    if dividing {
        let sum = residues.iter().map(|&a| reduce(a, n) as u128).sum::<u128>()
            + cones.iter().map(|&(c, b)| (n / b) as u128 * reduce(c, b) as u128).sum::<u128>();
        let sum = (sum % n as u128) as u64;
        if sum != 0 {
            violations.push(Violation::CongruenceSumNonzero { sum });
        }
        if g0 == 0 && residues.is_empty() {
            let order = cones.iter().fold(1, |acc, &(_, b)| lcm(acc, b));
            if order != n {
                violations.push(Violation::NonGenerating { order });
            }
        }
    }
    let moduli: Vec<u64> = cones.iter().map(|&(_, b)| b).filter(|&b| b > 0).collect();
    let genus = match surface_genus(n, g0, residues.len() as u64, &moduli) {
        Ok(g) => Some(g),
        Err(v) => {
            violations.push(v);
            None
        }
    };
    if !violations.is_empty() {
        return Err(InvalidDataSet { violations });
    }
    let mut rs: Vec<u64> = residues.iter().map(|&a| reduce(a, n)).collect();
    rs.sort_unstable();
    let mut cs: Vec<ConeClass> = cones.iter().map(|&(c, b)| ConeClass::new(c, b).expect("checked unit")).collect();
    cs.sort_unstable();
    Ok(DataSet { n, g0, residues: rs, cones: cs, genus: genus.expect("checked genus") })
}

fn reduce(a: i64, n: u64) -> u64 {
    (a as i128).rem_euclid(n as i128) as u64
}

/// Genus `g` solving `(2−2g)/n = 2−2g0 + r(1/n−1) + Σ(1/n_j−1)`.
pub fn surface_genus(n: u64, g0: u64, r: u64, moduli: &[u64]) -> Result<u64, Violation> {
    // Scale by L = lcm of the cone orders so every term is an integer.
    let l = moduli.iter().fold(1u64, |acc, &b| lcm(acc, b)) as i128;
    let n_ = n as i128;
    let mut chi_l = l * (2 * n_ * (1 - g0 as i128) + r as i128 * (1 - n_));
    for &b in moduli {
        chi_l += n_ * (l / b as i128) - n_ * l;
    }
    if chi_l % l != 0 {
        return Err(Violation::NonIntegralGenus);
    }
    let chi = chi_l / l;
    if (2 - chi) % 2 != 0 {
        return Err(Violation::NonIntegralGenus);
    }
    let g = (2 - chi) / 2;
    if g < 0 {
        return Err(Violation::NegativeGenus);
    }
    Ok(g as u64)
}

/// A valid data set in canonical form: residues ascending in `[0, n)`,
/// cones ascending by `(b, c)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DataSet {
    n: u64,
    g0: u64,
    residues: Vec<u64>,
    cones: Vec<ConeClass>,
    genus: u64,
}

/// Rejected power exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerError {
    NonDividingExponent { exponent: u64, degree: u64 },
}

impl fmt::Display for PowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerError::NonDividingExponent { exponent, degree } => {
                write!(f, "exponent {exponent} does not divide the degree {degree}")
            }
        }
    }
}

impl core::error::Error for PowerError {}

impl DataSet {
    /// The identity on a closed surface of genus `g`.
    pub fn identity(genus: u64) -> DataSet {
        DataSet { n: 1, g0: genus, residues: Vec::new(), cones: Vec::new(), genus }
    }

    pub fn degree(&self) -> u64 {
        self.n
    }

    pub fn quotient_genus(&self) -> u64 {
        self.g0
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn cones(&self) -> &[ConeClass] {
        &self.cones
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn canonicalize(&self) -> DataSet {
        self.clone()
    }

    pub fn equivalent(&self, other: &DataSet) -> bool {
        self == other
    }

    /// Number of cones equal to `p`.
    pub fn cone_count(&self, p: ConeClass) -> usize {
        self.cones.iter().filter(|&&q| q == p).count()
    }

    pub fn to_raw(&self) -> RawDataSet {
        RawDataSet {
            n: self.n,
            g0: self.g0,
            residues: self.residues.iter().map(|&a| a as i64).collect(),
            cones: self.cones.iter().map(|p| (p.c as i64, p.b)).collect(),
        }
    }

    /// Data set of `t^d` where `self` encodes `t`; `d` must divide the degree.
    pub fn power(&self, d: u64) -> Result<DataSet, PowerError> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(PowerError::NonDividingExponent { exponent: d, degree: self.n });
        }
        Ok(self.raise(d).0)
    }

    /// Data set of `t^d` for any `d ≥ 1`, together with the image of every
    /// source class: entry `i` lists the classes that the `i`-th source
    /// class (residues first, then cones, then the free class) splits into.
    pub fn raise(&self, d: u64) -> (DataSet, Vec<Vec<PowerImage>>) {
        assert!(d > 0, "power exponent must be positive");
        let n2 = self.n / gcd(self.n, d);
        let mut residues = Vec::new();
        let mut cones = Vec::new();
        let mut images = Vec::new();
        let sources = self
            .residues
            .iter()
            .map(|&a| (1u64, fixed_angle(a, self.n).expect("valid residue"), true))
            .chain(self.cones.iter().map(|p| (self.n / p.b, theta(*p), false)))
            .chain(core::iter::once((self.n, TurnAngle::ZERO, false)));
        for (s, angle, distinguished) in sources {
            let split = gcd(s, d);
            let s2 = s / split;
            let stretch = lcm(d, s) / s;
            let b2 = n2 / s2;
            let rotated = angle.scale(stretch);
            let image = if b2 == 1 {
                PowerImage::Free
            } else {
                debug_assert_eq!(b2 % rotated.den(), 0);
                let exponent = rotated.num() * (b2 / rotated.den());
                let c2 = mod_inverse(exponent, b2).expect("rotation generates the stabilizer");
                if distinguished && s2 == 1 {
                    PowerImage::Residue(c2)
                } else {
                    PowerImage::Cone(ConeClass { c: c2, b: b2 })
                }
            };
            // The free class of the source only ever maps to free classes.
            if s != self.n || distinguished {
                for _ in 0..split {
                    match image {
                        PowerImage::Residue(a) => residues.push(a),
                        PowerImage::Cone(p) => cones.push(p),
                        PowerImage::Free => {}
                    }
                }
            }
            images.push(alloc::vec![image; split as usize]);
        }
        residues.sort_unstable();
        cones.sort_unstable();
        let r = residues.len() as i128;
        let n_ = n2 as i128;
        let cone_part: i128 = cones.iter().map(|p| n_ / p.b as i128 - n_).sum();
        let chi = 2 - 2 * self.genus as i128;
        // chi = 2 n2 (1 - g0) + r (1 - n2) + Σ (n2/b - n2)
        let rest = chi - r * (1 - n_) - cone_part;
        debug_assert_eq!(rest % (2 * n_), 0);
        let g0 = 1 - rest / (2 * n_);
        let out = DataSet { n: n2, g0: g0 as u64, residues, cones, genus: self.genus };
        (out, images)
    }
}

/// Where a source class lands under a power map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PowerImage {
    Residue(u64),
    Cone(ConeClass),
    Free,
}

impl PowerImage {
    /// Rotation of the stabilizer generator of the image class in degree `n`.
    pub fn angle(self, n: u64) -> TurnAngle {
        match self {
            PowerImage::Residue(a) => fixed_angle(a, n).expect("unit"),
            PowerImage::Cone(p) => theta(p),
            PowerImage::Free => TurnAngle::ZERO,
        }
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, n: u64, g0: u64, residues: &[i64], cones: &[(i64, u64)]) -> fmt::Result {
    write!(f, "({n},{g0}")?;
    match residues {
        [] => {}
        [a] => write!(f, ",{a}")?,
        _ => {
            f.write_str(",(")?;
            for (i, a) in residues.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
    }
    f.write_str(";")?;
    for (i, (c, b)) in cones.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "({c},{b})")?;
    }
    f.write_str(")")
}

impl fmt::Display for RawDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.n, self.g0, &self.residues, &self.cones)
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_raw(), f)
    }
}

/// Failure to read the `(n,g0,a;(c,b),...)` notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDataSetError {
    pub position: usize,
    pub expected: &'static str,
}

impl fmt::Display for ParseDataSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected {} at byte {}", self.expected, self.position)
    }
}

impl core::error::Error for ParseDataSetError {}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: u8, what: &'static str) -> Result<(), ParseDataSetError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn error(&self, expected: &'static str) -> ParseDataSetError {
        ParseDataSetError { position: self.pos, expected }
    }

    fn int(&mut self) -> Result<i64, ParseDataSetError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.text.len() && self.text[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(ParseDataSetError { position: start, expected: "integer" })
    }

    fn uint(&mut self) -> Result<u64, ParseDataSetError> {
        let at = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| ParseDataSetError { position: at, expected: "non-negative integer" })
    }
}

impl FromStr for RawDataSet {
    type Err = ParseDataSetError;

    /// Reads `(n,g0;cones)`, `(n,g0,a;cones)` or `(n,g0,(a1,..);cones)`,
    /// where each cone is `(c,b)` optionally followed by `^k` repetition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { text: s.as_bytes(), pos: 0 };
        cur.expect(b'(', "'('")?;
        let n = cur.uint()?;
        cur.expect(b',', "','")?;
        let g0 = cur.uint()?;
        let mut residues = Vec::new();
        if cur.eat(b',') {
            if cur.eat(b'(') {
                loop {
                    residues.push(cur.int()?);
                    if cur.eat(b')') {
                        break;
                    }
                    cur.expect(b',', "',' or ')'")?;
                }
            } else {
                residues.push(cur.int()?);
            }
        }
        cur.expect(b';', "';'")?;
        let mut cones = Vec::new();
        if !cur.eat(b')') {
            loop {
                cur.expect(b'(', "'(' opening a cone")?;
                let c = cur.int()?;
                cur.expect(b',', "','")?;
                let b = cur.uint()?;
                cur.expect(b')', "')' closing a cone")?;
                let reps = if cur.eat(b'^') { cur.uint()? } else { 1 };
                for _ in 0..reps {
                    cones.push((c, b));
                }
                if cur.eat(b')') {
                    break;
                }
                cur.expect(b',', "',' or ')'")?;
            }
        }
        if cur.peek().is_some() {
            return Err(cur.error("end of input"));
        }
        Ok(RawDataSet { n, g0, residues, cones })
    }
}

/// Multiplicities `m_p` of distinguished orbits per class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitDistribution {
    entries: BTreeMap<ConeClass, u64>,
}

impl OrbitDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: ConeClass, count: u64) {
        if count > 0 {
            *self.entries.entry(p).or_insert(0) += count;
        }
    }

    pub fn multiplicity(&self, p: ConeClass) -> u64 {
        self.entries.get(&p).copied().unwrap_or(0)
    }

    /// Total number of distinguished orbits.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ConeClass, u64)> + '_ {
        self.entries.iter().map(|(&p, &m)| (p, m))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<(ConeClass, u64)> for OrbitDistribution {
    fn from_iter<I: IntoIterator<Item = (ConeClass, u64)>>(iter: I) -> Self {
        let mut out = OrbitDistribution::new();
        for (p, m) in iter {
            out.add(p, m);
        }
        out
    }
}

/// Rejected orbit distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitError {
    /// The class is neither free nor a cone of the data set.
    UnsupportedClass(ConeClass),
    /// More distinguished orbits of a cone class than the data set has cones of it;
    /// each cone point lifts to exactly one orbit.
    ExceedsCones { class: ConeClass, requested: u64, available: u64 },
}

impl fmt::Display for OrbitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitError::UnsupportedClass(p) => write!(f, "class {p} is not free and not a cone"),
            OrbitError::ExceedsCones { class, requested, available } => {
                write!(f, "{requested} orbits of class {class} requested, only {available} cones")
            }
        }
    }
}

impl core::error::Error for OrbitError {}

/// A data set together with an orbit distribution supported on its classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutingDataSet {
    dataset: DataSet,
    orbits: OrbitDistribution,
}

impl PermutingDataSet {
    pub fn new(dataset: DataSet, orbits: OrbitDistribution) -> Result<Self, OrbitError> {
        for (p, m) in orbits.iter() {
            if p.is_free() {
                continue;
            }
            let available = dataset.cone_count(p) as u64;
            if available == 0 {
                return Err(OrbitError::UnsupportedClass(p));
            }
            if m > available {
                return Err(OrbitError::ExceedsCones { class: p, requested: m, available });
            }
        }
        Ok(PermutingDataSet { dataset, orbits })
    }

    pub fn dataset(&self) -> &DataSet {
        &self.dataset
    }

    pub fn orbits(&self) -> &OrbitDistribution {
        &self.orbits
    }

    /// Sizes of the distinguished orbits, ascending.
    pub fn orbit_sizes(&self) -> Vec<u64> {
        let n = self.dataset.degree();
        let mut out = Vec::new();
        for (p, m) in self.orbits.iter() {
            for _ in 0..m {
                out.push(n / p.modulus());
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for PermutingDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dataset)?;
        if !self.orbits.is_empty() {
            f.write_str(" O={")?;
            for (i, (p, m)) in self.orbits.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "({p},{m})")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}
