use proptest::prelude::*;
use twistroot_core::arith::gcd;
use twistroot_core::dataset::{fixed_angle, theta, validate};
use twistroot_core::{ConeClass, DataSet, RawDataSet, Violation};

/// Genus from the Riemann-Hurwitz relation, multiplied through by the
/// product of all cone orders instead of their lcm.
fn naive_genus(n: u64, g0: u64, r: u64, moduli: &[u64]) -> Option<u64> {
    let p: i128 = moduli.iter().map(|&b| b as i128).product();
    let n = n as i128;
    let mut chi_p = p * (2 * n * (1 - g0 as i128) + r as i128 * (1 - n));
    for &b in moduli {
        chi_p -= n * (p - p / b as i128);
    }
    (0..400i128).find(|g| (2 - 2 * g) * p == chi_p).map(|g| g as u64)
}

fn naive_valid(n: u64, g0: u64, residues: &[i64], cones: &[(i64, u64)]) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let unit = |x: i64, m: u64| gcd(x.rem_euclid(m as i64) as u64, m) == 1;
    if cones.iter().any(|&(c, b)| b < 2 || !n.is_multiple_of(b) || !unit(c, b)) {
        return None;
    }
    if residues.iter().any(|&a| !unit(a, n)) {
        return None;
    }
    let sum: i64 = residues.iter().sum::<i64>() + cones.iter().map(|&(c, b)| (n / b) as i64 * c).sum::<i64>();
    if sum.rem_euclid(n as i64) != 0 {
        return None;
    }
    // Without handles or distinguished points only the cone generators
    // can generate the group.
    if g0 == 0 && residues.is_empty() {
        let gens: Vec<u64> = cones.iter().map(|&(c, b)| (n / b) * c.rem_euclid(b as i64) as u64 % n).collect();
        let mut reached = vec![false; n as usize];
        let mut stack = vec![0u64];
        reached[0] = true;
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = ((x + g) % n) as usize;
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y as u64);
                }
            }
        }
        if reached.contains(&false) {
            return None;
        }
    }
    let moduli: Vec<u64> = cones.iter().map(|&(_, b)| b).collect();
    naive_genus(n, g0, residues.len() as u64, &moduli)
}

fn multisets<T: Clone>(pool: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<T>)> = vec![(0, Vec::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (from, set) in &frontier {
            for (i, x) in pool.iter().enumerate().skip(*from) {
                let mut s = set.clone();
                s.push(x.clone());
                out.push(s.clone());
                next.push((i, s));
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn validate_agrees_with_naive_checker_on_small_tuples() {
    let pool: Vec<(i64, u64)> = (2..=8u64).flat_map(|b| (0..b as i64).map(move |c| (c, b))).collect();
    let cone_sets = multisets(&pool, 4);
    let mut checked = 0u64;
    for n in 1..=8u64 {
        let residue_sets: Vec<Vec<i64>> = core::iter::once(Vec::new()).chain((0..n as i64).map(|a| vec![a])).collect();
        for g0 in 0..=2 {
            for cones in &cone_sets {
                for residues in &residue_sets {
                    let got = validate(n, g0, residues, cones).ok().map(|d| d.genus());
                    assert_eq!(got, naive_valid(n, g0, residues, cones), "n={n} g0={g0} {residues:?} {cones:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1_000_000);
}

#[test]
fn rejection_lists_every_failed_condition() {
    let err = validate(4, 0, &[2], &[(1, 3), (2, 4)]).unwrap_err();
    let has = |p: fn(&Violation) -> bool| err.violations.iter().any(p);
    assert!(has(|v| matches!(v, Violation::NonDividingModulus { modulus: 3 })));
    let units = err.violations.iter().filter(|v| matches!(v, Violation::NonCoprimeResidue { .. })).count();
    assert_eq!(units, 2);
    assert!(has(|v| matches!(v, Violation::NonIntegralGenus | Violation::NegativeGenus)));
}

#[test]
fn literal_congruence_rejects_equal_sphere_rotations() {
    let err = validate(3, 0, &[], &[(1, 3), (1, 3)]).unwrap_err();
    assert_eq!(err.violations, vec![Violation::CongruenceSumNonzero { sum: 2 }]);
    assert_eq!(validate(3, 0, &[], &[(1, 3), (2, 3)]).unwrap().genus(), 0);
}

#[test]
fn cone_points_must_generate_on_a_sphere_quotient() {
    let err = validate(16, 0, &[], &[(1, 2), (1, 8), (3, 8)]).unwrap_err();
    assert_eq!(err.violations, vec![Violation::NonGenerating { order: 8 }]);
    assert!(validate(4, 0, &[], &[(1, 2), (1, 2), (1, 2), (1, 2)]).is_err());
    assert_eq!(validate(4, 1, &[], &[(1, 2), (1, 2)]).unwrap().genus(), 3);
    assert_eq!(validate(4, 0, &[1, 1], &[(1, 2)]).unwrap().genus(), 1);
}

fn arb_dataset() -> impl Strategy<Value = DataSet> {
    (1u64..=12, 0u64..=2, prop::collection::vec((0i64..12, 0usize..6), 0..5), prop::collection::vec(0i64..12, 0..3))
        .prop_filter_map("invalid tuple", |(n, g0, raw_cones, residues)| {
            let divisors: Vec<u64> = (2..=n).filter(|b| n % b == 0).collect();
            if divisors.is_empty() && !raw_cones.is_empty() {
                return None;
            }
            let cones: Vec<(i64, u64)> = raw_cones.iter().map(|&(c, i)| (c, divisors[i % divisors.len()])).collect();
            validate(n, g0, &residues, &cones).ok()
        })
}

proptest! {
    #[test]
    fn input_order_does_not_matter(d in arb_dataset(), seed in any::<u64>()) {
        let mut raw = d.to_raw();
        let k = raw.cones.len().max(1);
        raw.cones.rotate_left(seed as usize % k);
        raw.residues.reverse();
        let again = raw.validate().unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert!(again.equivalent(&d));
        prop_assert_eq!(d.canonicalize().canonicalize(), d.canonicalize());
    }

    #[test]
    fn printed_form_parses_back(d in arb_dataset()) {
        let raw: RawDataSet = d.to_string().parse().unwrap();
        prop_assert_eq!(raw.validate().unwrap(), d);
    }

    #[test]
    fn angles_are_reduced(c in 1i64..60, b in 2u64..60) {
        prop_assume!(gcd(c as u64 % b, b) == 1);
        let p = ConeClass::new(c, b).unwrap();
        let t = theta(p);
        prop_assert_eq!(b % t.den(), 0);
        prop_assert_eq!(gcd(t.num(), t.den()), 1);
        let q = ConeClass::new(b as i64 - c, b).unwrap();
        prop_assert!((t + theta(q)).is_zero());
        let f = fixed_angle(p.residue(), b).unwrap();
        prop_assert_eq!(f, t);
    }

    #[test]
    fn powers_keep_the_genus(d in arb_dataset(), pick in any::<prop::sample::Index>()) {
        let n = d.degree();
        let divs: Vec<u64> = (1..=n).filter(|e| n % e == 0).collect();
        let e = *pick.get(&divs);
        let p = d.power(e).unwrap();
        prop_assert_eq!(p.genus(), d.genus());
        prop_assert_eq!(p.degree(), n / e);
    }

    #[test]
    fn powers_compose(d in arb_dataset(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = d.degree();
        let divs: Vec<u64> = (1..=n).filter(|e| n % e == 0).collect();
        let x = *a.get(&divs);
        let rest: Vec<u64> = divs.iter().copied().filter(|e| (n / x) % e == 0).collect();
        let y = *b.get(&rest);
        prop_assert_eq!(d.power(x).unwrap().power(y).unwrap(), d.power(x * y).unwrap());
    }

    #[test]
    fn power_matches_frame_model(d in arb_dataset(), pick in any::<prop::sample::Index>()) {
        let n = d.degree();
        let divs: Vec<u64> = (1..=n).filter(|e| n % e == 0).collect();
        let e = *pick.get(&divs);
        let (residues, cones) = frame_model_power(&d, e);
        let p = d.power(e).unwrap();
        prop_assert_eq!(p.residues(), &residues[..]);
        prop_assert_eq!(p.cones(), &cones[..]);
    }
}

/// Power map computed on an explicit model: each special orbit of size `s`
/// with rotation `k/b` is `s` points carrying `b` tangent frames each; `t`
/// shifts points and, when wrapping around, turns the frames by `k`.
fn frame_model_power(d: &DataSet, e: u64) -> (Vec<u64>, Vec<ConeClass>) {
    let n = d.degree();
    let n2 = n / e;
    let mut orbits: Vec<(u64, u64, u64, bool)> = Vec::new();
    for &a in d.residues() {
        let angle = fixed_angle(a, n).unwrap();
        orbits.push((1, angle.num() * (n / angle.den()), n, true));
    }
    for p in d.cones() {
        let t = theta(*p);
        orbits.push((n / p.modulus(), t.num() * (p.modulus() / t.den()), p.modulus(), false));
    }
    let mut residues = Vec::new();
    let mut cones = Vec::new();
    for (s, k, b, distinguished) in orbits {
        let step = |(i, j): (u64, u64)| if i + 1 == s { (0, (j + k) % b) } else { (i + 1, j) };
        let power = |mut x: (u64, u64)| {
            for _ in 0..e {
                x = step(x);
            }
            x
        };
        let mut seen = vec![false; s as usize];
        for start in 0..s {
            if seen[start as usize] {
                continue;
            }
            let mut x = (start, 0);
            let mut len = 0;
            loop {
                seen[x.0 as usize] = true;
                x = power(x);
                len += 1;
                if x.0 == start {
                    break;
                }
            }
            let turn = x.1;
            let b2 = n2 / len;
            if b2 == 1 {
                continue;
            }
            assert_eq!(turn * b2 % b, 0);
            let num = turn * b2 / b;
            let c2 = (1..b2).find(|c| c * num % b2 == 1).expect("rotation generates the stabilizer");
            if distinguished {
                residues.push(c2);
            } else {
                cones.push(ConeClass::new(c2 as i64, b2).unwrap());
            }
        }
    }
    residues.sort_unstable();
    cones.sort_unstable();
    (residues, cones)
}
