//! One line per acceptance criterion. Criteria listed in `KNOWN_RED` fail on
//! the shipped tables for reasons recorded in the errata file; the test
//! fails if any other criterion fails or if a known red one starts passing.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use twistroot::reproduce::{analyze_row, column_map, reproduce, Report};
use twistroot::tables::{default_dir, load_all, load_errata, Erratum, GoldenTable, Invariant};
use twistroot_core::bounds::{bound_nonseparating, search_cap, separating_bound, stable_bound};
use twistroot_core::classify::{classify, classify_nonseparating, Layout, RootClassRecord};
use twistroot_core::compat::ClassKind;
use twistroot_core::enumerate::{enumerate_datasets, naive_enumerate};
use twistroot_core::{EnumQuery, Mode, MulticurveSpec, TurnAngle};

/// Printed genus-3 tables that list roots the classification cannot
/// produce (a sphere rotation with equal cones) or that omit genuine roots.
const KNOWN_RED: [u32; 2] = [1, 2];

type Verdict = Result<String, String>;

struct Fixture {
    tables: Vec<GoldenTable>,
    errata: Vec<Erratum>,
}

impl Fixture {
    fn load() -> Self {
        let dir = default_dir();
        Fixture { tables: load_all(&dir).unwrap(), errata: load_errata(&dir, None).unwrap() }
    }

    fn table(&self, id: &str) -> &GoldenTable {
        self.tables.iter().find(|t| t.id == id).unwrap_or_else(|| panic!("no table {id}"))
    }

    fn report(&self, id: &str) -> Report {
        reproduce(self.table(id), &self.errata, Mode::Scaled, None).unwrap()
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn exact_tables(fx: &Fixture, ids: &[&str], limit: Duration) -> Verdict {
    let (reports, took) = timed(|| ids.iter().map(|id| fx.report(id)).collect::<Vec<_>>());
    let off: Vec<String> = reports
        .iter()
        .filter(|r| !r.is_exact())
        .map(|r| format!("{} ({} missing, {} extra)", r.table, r.missing(), r.extra.len()))
        .collect();
    if !off.is_empty() {
        return Err(format!("not exact: {}", off.join(", ")));
    }
    if took > limit {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} tables exact in {took:?}", ids.len()))
}

fn criterion_1(fx: &Fixture) -> Verdict {
    exact_tables(fx, &["g3-nonsep-m3", "g3-nonsep-m2"], Duration::from_secs(1))
}

fn criterion_2(fx: &Fixture) -> Verdict {
    let listed = ["g3-sep-chain-rk20", "g3-sep-s1-s1x2", "g3-sep-c2-rk20", "g3-sep-c2-rk01", "g3-sep-s0-s1x3"];
    let shapes: Vec<(usize, Vec<u64>)> = listed
        .iter()
        .map(|id| {
            let t = fx.table(id);
            (t.rows.len(), t.rows.iter().map(|r| r.degree).collect())
        })
        .collect();
    if shapes[0] != (7, vec![3, 6, 6, 6, 6, 12, 12])
        || shapes[1].0 != 5
        || shapes[2].0 != 7
        || shapes[3] != (1, vec![6])
        || shapes[4] != (1, vec![3])
    {
        return Err(format!("golden tables differ from the expected shapes: {shapes:?}"));
    }
    let suite: Vec<&str> = fx.tables.iter().filter(|t| t.id.starts_with("g3-sep-")).map(|t| t.id.as_str()).collect();
    let (_, took) = timed(|| suite.iter().for_each(|id| drop(fx.report(id))));
    if took > Duration::from_secs(60) {
        return Err(format!("separating suite took {took:?}"));
    }
    exact_tables(fx, &listed, Duration::from_secs(60))
}

fn criterion_3(fx: &Fixture) -> Verdict {
    let mut discrepancies = 0;
    for t in fx.tables.iter().filter(|t| t.id.starts_with("g4-")) {
        let r = fx.report(&t.id);
        if r.unexplained() > 0 || !r.stale.is_empty() {
            return Err(format!("{}: {} unexplained, {} stale errata", t.id, r.unexplained(), r.stale.len()));
        }
        discrepancies += r.errata_hits();
    }
    let cited =
        fx.errata.iter().any(|e| e.table == "g4-nonsep-m4" && e.row.degree == 2 && e.invariant == Invariant::CutGenus);
    if !cited {
        return Err("the degree-2 row of the m=4 table does not cite the cut genus".into());
    }
    Ok(format!("{discrepancies} discrepancies, all explained"))
}

fn criterion_4(_: &Fixture) -> Verdict {
    let got = [bound_nonseparating(4, 2, 0), bound_nonseparating(5, 1, 1), separating_bound(2), stable_bound(22)];
    if got == [10, 9, 20, 1824] {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("{got:?}"))
    }
}

fn criterion_5(_: &Fixture) -> Verdict {
    let (bad, took) = timed(|| {
        let mut bad = Vec::new();
        for g in 2..=3u64 {
            if enumerate_datasets(&EnumQuery::new(g, 4 * g + 2)).is_empty() {
                bad.push(format!("genus {g} has no action of degree {}", 4 * g + 2));
            }
            for n in 4 * g + 3..=8 * g {
                if !enumerate_datasets(&EnumQuery::new(g, n)).is_empty() {
                    bad.push(format!("genus {g} has an action of degree {n}"));
                }
            }
        }
        bad
    });
    match (bad.is_empty(), took <= Duration::from_secs(30)) {
        (true, true) => Ok(format!("{took:?}")),
        (false, _) => Err(bad.join("; ")),
        (true, false) => Err(format!("took {took:?}")),
    }
}

fn criterion_6(_: &Fixture) -> Verdict {
    for g in 2..=5u64 {
        let spec = MulticurveSpec::nonseparating(g, 1, 1, vec![]);
        let top = classify_nonseparating(&spec, Mode::Scaled).unwrap().iter().map(|r| r.degree).max();
        if top != Some(2 * g - 1) {
            return Err(format!("genus {g}: largest degree {top:?}"));
        }
    }
    Ok("largest degree 2g-1 for g = 2..5".into())
}

fn criterion_7(_: &Fixture) -> Verdict {
    let (bad, took) = timed(|| {
        let mut bad = Vec::new();
        for genus in 0..=2 {
            for degree in 1..=12 {
                let q = EnumQuery::new(genus, degree);
                if enumerate_datasets(&q) != naive_enumerate(&q).unwrap() {
                    bad.push(format!("({genus}, {degree})"));
                }
            }
        }
        bad
    });
    if !bad.is_empty() {
        return Err(format!("differ at {}", bad.join(", ")));
    }
    if took > Duration::from_secs(120) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("36 cases agree in {took:?}"))
}

/// Class index in `raise` order: residues, cones, then the free class.
fn source_index(d: &twistroot_core::DataSet, kind: ClassKind) -> usize {
    match kind {
        ClassKind::Residue(a) => d.residues().iter().position(|&x| x == a).unwrap(),
        ClassKind::Cone(p) => d.residues().len() + d.cones().iter().position(|&x| x == p).unwrap(),
        ClassKind::Free => d.residues().len() + d.cones().len(),
    }
}

fn power_violations(rec: &RootClassRecord) -> usize {
    let mut bad = 0;
    for pair in &rec.witness.pairs {
        let s = pair.size;
        let mut sum = TurnAngle::ZERO;
        for end in [pair.first, pair.second] {
            let d = rec.components[end.side].data.dataset();
            let (power, images) = d.raise(s);
            let image = &images[source_index(d, end.class.kind)];
            if image.windows(2).any(|w| w[0] != w[1]) {
                bad += 1;
            }
            sum = sum + image[0].angle(power.degree());
        }
        if sum != TurnAngle::new(s as i128, rec.degree) {
            bad += 1;
        }
    }
    bad
}

fn criterion_8(fx: &Fixture) -> Verdict {
    let mut pairs = 0;
    let mut bad = 0;
    let specs: BTreeSet<String> = fx
        .tables
        .iter()
        .filter(|t| t.id.starts_with("g3-nonsep") || t.id.starts_with("g3-sep") || t.id.starts_with("g4-"))
        .map(|t| serde_json::to_string(&t.spec).unwrap())
        .collect();
    for text in &specs {
        let spec = serde_json::from_str::<twistroot::schema::SpecJson>(text).unwrap().to_spec();
        for rec in classify(&spec, Mode::Scaled).unwrap() {
            pairs += rec.witness.pairs.len();
            bad += power_violations(&rec);
        }
    }
    if bad == 0 {
        Ok(format!("{pairs} glued pairs checked"))
    } else {
        Err(format!("{bad} violations among {pairs} pairs"))
    }
}

fn criterion_9(_: &Fixture) -> Verdict {
    let mut records = 0;
    for g in 1..=5u64 {
        for m in 1..=g {
            for r in 1..=m {
                for sizes in partitions(m - r, 2) {
                    let spec = MulticurveSpec::nonseparating(g, m, r, sizes);
                    for rec in classify_nonseparating(&spec, Mode::Scaled).unwrap() {
                        if rec.degree % 2 == 0 {
                            return Err(format!("{spec:?} has a root of degree {}", rec.degree));
                        }
                        records += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{records} records, all of odd degree"))
}

fn partitions(total: u64, min: u64) -> Vec<Vec<u64>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    (min..=total)
        .flat_map(|first| {
            partitions(total - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn criterion_10(fx: &Fixture) -> Verdict {
    let t = fx.table("g3-sep-c2-rk01");
    let spec = t.spec.to_spec();
    let layout = Layout::of(&spec).unwrap();
    let columns = column_map(t, &layout).unwrap();
    let cap = search_cap(&spec);
    let row = t.rows.iter().find(|r| r.degree == 6).ok_or("no degree-6 row")?;
    let scaled = analyze_row(row, &layout, &columns, cap, Mode::Scaled);
    let strict = analyze_row(row, &layout, &columns, cap, Mode::Strict);
    match (scaled, strict) {
        (Ok(_), Err(f)) if f.iter().any(|f| f.invariant == Invariant::NoGluing) => {
            Ok("the degree-6 row glues only under the scaled condition".into())
        }
        (s, t) => Err(format!("scaled {:?}, strict {:?}", s.is_ok(), t.is_ok())),
    }
}

fn main() {
    let fx = Fixture::load();
    let criteria: [fn(&Fixture) -> Verdict; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut red = Vec::new();
    for (i, check) in criteria.iter().enumerate() {
        let n = i as u32 + 1;
        match check(&fx) {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                let note = if KNOWN_RED.contains(&n) { ", known red" } else { "" };
                println!("criterion {n}: FAIL ({detail}{note})");
                red.push(n);
            }
        }
    }
    if red != KNOWN_RED {
        eprintln!("failing criteria {red:?} differ from the known red list {KNOWN_RED:?}");
        std::process::exit(1);
    }
}
