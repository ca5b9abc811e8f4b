//! Rechecks every erratum and every matched printed row with arithmetic
//! written from scratch, independent of the classifier's own checks.

use std::collections::{BTreeMap, BTreeSet};

use twistroot::reproduce::{analyze_row, column_map, reproduce, RowOutcome};
use twistroot::tables::{default_dir, load_all, load_errata, GoldenRow, GoldenTable, Invariant};
use twistroot_core::bounds::search_cap;
use twistroot_core::classify::Layout;
use twistroot_core::{Mode, RawDataSet};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn inverse(a: i64, m: u64) -> Option<u64> {
    let a = a.rem_euclid(m as i64) as u64;
    (1..=m).find(|x| a * x % m == 1 % m)
}

/// Genus of a tuple if it describes an action, by the orbifold Euler
/// characteristic.
fn genus(d: &RawDataSet) -> Option<u64> {
    let n = d.n as i64;
    if n == 0 || d.cones.iter().any(|&(_, b)| b < 2 || !d.n.is_multiple_of(b)) {
        return None;
    }
    if d.residues.iter().any(|&a| inverse(a, d.n).is_none()) || d.cones.iter().any(|&(c, b)| inverse(c, b).is_none()) {
        return None;
    }
    let weighted: i64 =
        d.residues.iter().sum::<i64>() + d.cones.iter().map(|&(c, b)| (d.n / b) as i64 * c).sum::<i64>();
    if weighted.rem_euclid(n) != 0 {
        return None;
    }
    if d.g0 == 0 && d.residues.is_empty() && d.cones.iter().fold(1, |acc, &(_, b)| lcm(acc, b)) != d.n {
        return None;
    }
    let r = d.residues.len() as i64;
    let euler = n * (2 - 2 * d.g0 as i64) - r * (n - 1) - d.cones.iter().map(|&(_, b)| n - n / b as i64).sum::<i64>();
    (euler <= 2 && euler % 2 == 0).then(|| ((2 - euler) / 2) as u64)
}

/// A class a curve orbit can end on.
struct Class {
    /// Rotation of `h^S` at the class, as a numerator over the root degree.
    rot: u64,
    /// Orbit size across the copies.
    size: u64,
    residue: bool,
    /// Supply slot; the free class is unlimited.
    slot: Option<usize>,
}

fn classes(d: &RawDataSet, copies: u64, n: u64) -> Vec<Class> {
    let q = d.n;
    let rot = |inv: u64, s: u64| (inv as u128 * s as u128 * (n / q) as u128 % n as u128) as u64;
    let mut out = Vec::new();
    for (i, &a) in d.residues.iter().enumerate() {
        let s = lcm(copies, 1);
        out.push(Class { rot: rot(inverse(a, q).unwrap(), s), size: s, residue: true, slot: Some(i) });
    }
    for (j, &(c, b)) in d.cones.iter().enumerate() {
        let s = lcm(copies, q / b);
        out.push(Class {
            rot: rot(inverse(c, b).unwrap(), s),
            size: s,
            residue: false,
            slot: Some(d.residues.len() + j),
        });
    }
    out.push(Class { rot: 0, size: lcm(copies, q), residue: false, slot: None });
    out
}

fn glues(options: &[Vec<Class>], links: &[(usize, usize, u64)], n: u64, used: &mut [BTreeSet<usize>]) -> bool {
    let Some((&(a, b, s), rest)) = links.split_first() else { return true };
    let fits = |e: &Class, used: &BTreeSet<usize>| {
        e.size == s && (e.residue || s > 1) && e.slot.is_none_or(|t| !used.contains(&t))
    };
    for x in &options[a] {
        if !fits(x, &used[a]) {
            continue;
        }
        used[a].extend(x.slot);
        for y in &options[b] {
            if !fits(y, &used[b]) || (x.rot + y.rot) % n != s % n {
                continue;
            }
            used[b].extend(y.slot);
            let ok = glues(options, rest, n, used);
            if let Some(t) = y.slot {
                used[b].remove(&t);
            }
            if ok {
                return true;
            }
        }
        if let Some(t) = x.slot {
            used[a].remove(&t);
        }
    }
    false
}

/// What the oracle finds wrong with a printed row; empty when it describes
/// a root.
fn oracle(table: &GoldenTable, row: &GoldenRow) -> BTreeSet<Invariant> {
    let spec = table.spec.to_spec();
    let layout = Layout::of(&spec).unwrap();
    let columns = column_map(table, &layout).unwrap();
    let mut found = BTreeSet::new();
    if row.data.len() != columns.len() {
        found.insert(Invariant::Malformed);
        return found;
    }
    let mut data: Vec<Option<RawDataSet>> = vec![None; columns.len()];
    for (text, &c) in row.data.iter().zip(&columns) {
        match text.parse::<RawDataSet>() {
            Ok(d) => data[c] = Some(d),
            Err(_) => {
                found.insert(Invariant::Malformed);
            }
        }
    }
    if !found.is_empty() {
        return found;
    }
    let data: Vec<RawDataSet> = data.into_iter().map(Option::unwrap).collect();
    for (d, comp) in data.iter().zip(&layout.components) {
        let residues = if comp.copies == 1 { comp.residues } else { 0 };
        if d.residues.len() as u64 != residues {
            found.insert(Invariant::ResidueCount);
        }
        match genus(d) {
            None => found.insert(Invariant::Validity),
            Some(g) if g != comp.genus => found.insert(Invariant::CutGenus),
            Some(_) => false,
        };
    }
    let order = data.iter().zip(&layout.components).map(|(d, c)| lcm(c.copies, d.n.max(1))).fold(1, lcm);
    if order != row.degree {
        found.insert(Invariant::Order);
    }
    if row.degree > search_cap(&spec) {
        found.insert(Invariant::Bound);
    }
    if found.is_empty() {
        let n = row.degree;
        let options: Vec<_> = data.iter().zip(&layout.components).map(|(d, c)| classes(d, c.copies, n)).collect();
        let links: Vec<_> = layout.links.iter().map(|l| (l.a, l.b, l.size)).collect();
        let mut used = vec![BTreeSet::new(); data.len()];
        if !glues(&options, &links, n, &mut used) {
            found.insert(Invariant::NoGluing);
        }
    }
    found
}

#[test]
fn every_erratum_cites_a_real_defect() {
    let dir = default_dir();
    let tables: BTreeMap<String, GoldenTable> =
        load_all(&dir).unwrap().into_iter().map(|t| (t.id.clone(), t)).collect();
    let errata = load_errata(&dir, None).unwrap();
    assert!(!errata.is_empty());
    for e in &errata {
        let table = &tables[&e.table];
        let printed = table.rows.iter().any(|r| r.normalized() == e.row.normalized());
        let found = oracle(table, &e.row);
        match e.invariant {
            Invariant::Omitted => {
                assert!(!printed, "{}: omitted row is printed: {:?}", e.table, e.row);
                assert!(found.is_empty(), "{}: omitted row {:?} is not a root: {found:?}", e.table, e.row);
            }
            Invariant::Duplicate => {
                assert!(printed);
                assert!(found.is_empty(), "{}: {:?}", e.table, e.row);
                let spec = table.spec.to_spec();
                let layout = Layout::of(&spec).unwrap();
                let columns = column_map(table, &layout).unwrap();
                let cap = search_cap(&spec);
                let key = analyze_row(&e.row, &layout, &columns, cap, Mode::Scaled).unwrap();
                let twins = table
                    .rows
                    .iter()
                    .filter(|r| analyze_row(r, &layout, &columns, cap, Mode::Scaled).ok().as_ref() == Some(&key))
                    .count();
                assert!(twins >= 2, "{}: {:?} has no twin", e.table, e.row);
            }
            cited => {
                assert!(printed, "{}: {:?}", e.table, e.row);
                assert!(found.contains(&cited), "{}: {:?} cites {cited:?}, oracle finds {found:?}", e.table, e.row);
            }
        }
    }
}

#[test]
fn matched_rows_pass_the_oracle() {
    let dir = default_dir();
    let errata = load_errata(&dir, None).unwrap();
    let mut checked = 0;
    for table in load_all(&dir).unwrap() {
        let report = reproduce(&table, &errata, Mode::Scaled, None).unwrap();
        for p in report.printed.iter().filter(|p| p.outcome == RowOutcome::Matched) {
            assert_eq!(oracle(&table, &p.row), BTreeSet::new(), "{}: {:?}", table.id, p.row);
            checked += 1;
        }
        for x in &report.extra {
            assert!(x.explained, "{}: unexplained extra {:?}", table.id, x.row);
            assert!(oracle(&table, &x.row).is_empty(), "{}: {:?}", table.id, x.row);
        }
    }
    assert!(checked >= 70);
}
