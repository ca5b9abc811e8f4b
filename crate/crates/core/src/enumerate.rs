//! Exhaustive enumeration of data sets with prescribed genus and degree.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{divisors, units};
use crate::dataset::{class_orbit_size, validate, ConeClass, DataSet, OrbitDistribution, PermutingDataSet};

/// What to enumerate: genus, degree, residue count and, for permuting
/// data sets, the sizes of the distinguished orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnumQuery {
    pub genus: u64,
    pub degree: u64,
    /// Number of distinguished residues; absent means none.
    pub residues: Option<u64>,
    pub orbit_sizes: Vec<u64>,
}

impl EnumQuery {
    pub fn new(genus: u64, degree: u64) -> Self {
        EnumQuery { genus, degree, residues: None, orbit_sizes: Vec::new() }
    }

    pub fn with_residues(mut self, r: u64) -> Self {
        self.residues = Some(r);
        self
    }

    pub fn with_orbit_sizes(mut self, sizes: Vec<u64>) -> Self {
        self.orbit_sizes = sizes;
        self
    }

    fn r(&self) -> u64 {
        self.residues.unwrap_or(0)
    }
}

/// Enumeration failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    /// An orbit of this size cannot occur at the queried degree.
    UnrealizableOrbitSize(u64),
    /// The reference enumerator refuses queries outside its small range.
    QueryTooLarge,
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::UnrealizableOrbitSize(s) => write!(f, "no orbit of size {s} exists at this degree"),
            EnumError::QueryTooLarge => f.write_str("query outside the reference enumerator's range"),
        }
    }
}

impl core::error::Error for EnumError {}

/// All valid data sets matching the query, canonical and ascending.
pub fn enumerate_datasets(q: &EnumQuery) -> Vec<DataSet> {
    let n = q.degree;
    if n == 0 {
        return Vec::new();
    }
    let r = q.r();
    let mut out = BTreeSet::new();
    let cone_orders: Vec<u64> = divisors(n).into_iter().filter(|&b| b >= 2).collect();
    for g0 in 0..=q.genus {
        // Riemann-Hurwitz leaves this much branching for the cones:
        // T = Σ (n − n/b_j).
        let budget = 2 * n as i128 * (1 - g0 as i128) + r as i128 * (1 - n as i128) - (2 - 2 * q.genus as i128);
        if budget < 0 {
            continue;
        }
        let mut shapes = Vec::new();
        cone_shapes(n, &cone_orders, 0, budget as u64, &mut Vec::new(), &mut shapes);
        for shape in shapes {
            for cones in cone_residues(&shape) {
                let cone_sum: u64 = cones.iter().map(|p| (n / p.modulus()) * p.residue() % n).sum::<u64>() % n;
                for residues in residue_multisets(n, r as usize) {
                    let total = (cone_sum + residues.iter().sum::<u64>()) % n;
                    if total != 0 {
                        continue;
                    }
                    let raw_res: Vec<i64> = residues.iter().map(|&a| a as i64).collect();
                    let raw_cones: Vec<(i64, u64)> = cones.iter().map(|p| (p.residue() as i64, p.modulus())).collect();
                    if let Ok(d) = validate(n, g0, &raw_res, &raw_cones) {
                        if d.genus() == q.genus {
                            out.insert(d);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Nondecreasing cone orders whose branching contributions sum to `budget`.
fn cone_shapes(n: u64, orders: &[u64], from: usize, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if budget == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, &b) in orders.iter().enumerate().skip(from) {
        let cost = n - n / b;
        if cost > budget {
            // Costs grow with b, so nothing later fits either.
            break;
        }
        cur.push(b);
        cone_shapes(n, orders, i, budget - cost, cur, out);
        cur.pop();
    }
}

/// Every multiset of cone classes over a fixed multiset of orders.
fn cone_residues(shape: &[u64]) -> Vec<Vec<ConeClass>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(shape.len());
    fn rec(shape: &[u64], i: usize, cur: &mut Vec<ConeClass>, out: &mut Vec<Vec<ConeClass>>) {
        if i == shape.len() {
            out.push(cur.clone());
            return;
        }
        let b = shape[i];
        let floor = match cur.last() {
            Some(prev) if prev.modulus() == b => prev.residue(),
            _ => 0,
        };
        for c in units(b).into_iter().filter(|&c| c >= floor) {
            cur.push(ConeClass::new(c as i64, b).expect("unit"));
            rec(shape, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(shape, 0, &mut cur, &mut out);
    out
}

/// Ascending multisets of `r` units modulo `n`.
fn residue_multisets(n: u64, r: usize) -> Vec<Vec<u64>> {
    let us = units(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(us: &[u64], from: usize, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..us.len() {
            cur.push(us[i]);
            rec(us, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&us, 0, r, &mut cur, &mut out);
    out
}

/// Data sets of the query together with every orbit distribution that
/// realizes the requested orbit sizes.
pub fn enumerate_permuting(q: &EnumQuery) -> Result<Vec<PermutingDataSet>, EnumError> {
    let n = q.degree;
    if let Some(&bad) = q.orbit_sizes.iter().find(|&&s| s == 0 || !n.is_multiple_of(s)) {
        return Err(EnumError::UnrealizableOrbitSize(bad));
    }
    let mut sizes = q.orbit_sizes.clone();
    sizes.sort_unstable();
    let mut out = BTreeSet::new();
    for d in enumerate_datasets(q) {
        for orbits in orbit_assignments(&d, &sizes) {
            let pd = PermutingDataSet::new(d.clone(), orbits).expect("assignment respects the cones");
            out.insert(pd);
        }
    }
    Ok(out.into_iter().collect())
}

/// Distinct orbit distributions putting one orbit of each requested size
/// on a class of that size, never exceeding the cone supply.
pub fn orbit_assignments(d: &DataSet, sizes: &[u64]) -> Vec<OrbitDistribution> {
    let n = d.degree();
    let mut classes: Vec<ConeClass> = d.cones().to_vec();
    classes.dedup();
    classes.push(ConeClass::FREE);
    let mut out = BTreeSet::new();
    let mut used: Vec<u64> = alloc::vec![0; classes.len()];
    fn rec(
        d: &DataSet,
        n: u64,
        classes: &[ConeClass],
        sizes: &[u64],
        i: usize,
        used: &mut Vec<u64>,
        out: &mut BTreeSet<OrbitDistribution>,
    ) {
        if i == sizes.len() {
            out.insert(classes.iter().zip(used.iter()).map(|(&p, &m)| (p, m)).collect());
            return;
        }
        for (j, &p) in classes.iter().enumerate() {
            if class_orbit_size(p, n) != Some(sizes[i]) {
                continue;
            }
            if !p.is_free() && used[j] >= d.cone_count(p) as u64 {
                continue;
            }
            used[j] += 1;
            rec(d, n, classes, sizes, i + 1, used, out);
            used[j] -= 1;
        }
    }
    rec(d, n, &classes, sizes, 0, &mut used, &mut out);
    out.into_iter().collect()
}

/// Unpruned reference enumerator for small queries.
pub fn naive_enumerate(q: &EnumQuery) -> Result<Vec<DataSet>, EnumError> {
    let n = q.degree;
    if n == 0 || n > 12 || q.genus > 2 {
        return Err(EnumError::QueryTooLarge);
    }
    let r = q.r() as usize;
    let mut all_classes = Vec::new();
    for b in 2..=n {
        if n.is_multiple_of(b) {
            for c in 1..b {
                if let Some(p) = ConeClass::new(c as i64, b) {
                    all_classes.push(p);
                }
            }
        }
    }
    // A cone of order b costs n(1 - 1/b) >= n/2 of the Euler characteristic,
    // so 2g - 2 + 2n >= s n / 2 caps the count loosely at 4 + 2g.
    let max_cones = 4 + 2 * q.genus as usize;
    let mut cone_sets: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    let mut frontier = cone_sets.clone();
    for _ in 0..max_cones {
        let mut next = Vec::new();
        for set in &frontier {
            let from = set.last().copied().unwrap_or(0);
            for i in from..all_classes.len() {
                let mut s = set.clone();
                s.push(i);
                next.push(s);
            }
        }
        cone_sets.extend(next.iter().cloned());
        frontier = next;
    }
    let residue_sets: Vec<Vec<u64>> = {
        let mut sets: Vec<Vec<u64>> = alloc::vec![Vec::new()];
        for _ in 0..r {
            let mut next = Vec::new();
            for s in &sets {
                for a in 0..n {
                    if s.last().is_none_or(|&l| a >= l) {
                        let mut t = s.clone();
                        t.push(a);
                        next.push(t);
                    }
                }
            }
            sets = next;
        }
        sets
    };
    let mut out = BTreeSet::new();
    for g0 in 0..=q.genus {
        for cones in &cone_sets {
            let raw_cones: Vec<(i64, u64)> =
                cones.iter().map(|&i| (all_classes[i].residue() as i64, all_classes[i].modulus())).collect();
            for res in &residue_sets {
                let raw_res: Vec<i64> = res.iter().map(|&a| a as i64).collect();
                if let Ok(d) = validate(n, g0, &raw_res, &raw_cones) {
                    if d.genus() == q.genus {
                        out.insert(d);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}
