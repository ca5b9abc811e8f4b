use twistroot_core::enumerate::{enumerate_datasets, enumerate_permuting, naive_enumerate, orbit_assignments};
use twistroot_core::{ConeClass, EnumQuery};

#[test]
fn pruned_enumeration_matches_the_reference() {
    for genus in 0..=2 {
        for degree in 1..=12 {
            for residues in 0..=2 {
                let q = EnumQuery::new(genus, degree).with_residues(residues);
                let fast = enumerate_datasets(&q);
                let slow = naive_enumerate(&q).unwrap();
                assert_eq!(fast, slow, "genus {genus}, degree {degree}, {residues} residues");
            }
        }
    }
}

#[test]
fn output_is_sorted_valid_and_of_the_requested_genus() {
    for (genus, degree) in [(3, 8), (3, 12), (4, 10), (2, 10)] {
        let list = enumerate_datasets(&EnumQuery::new(genus, degree));
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        for d in &list {
            assert_eq!(d.genus(), genus);
            assert_eq!(d.degree(), degree);
            assert_eq!(d.to_raw().validate().as_ref(), Ok(d));
        }
    }
}

#[test]
fn wiman_degree_is_the_largest() {
    for g in 2..=3u64 {
        assert!(!enumerate_datasets(&EnumQuery::new(g, 4 * g + 2)).is_empty());
        for n in 4 * g + 3..=8 * g {
            assert!(enumerate_datasets(&EnumQuery::new(g, n)).is_empty(), "genus {g} degree {n}");
        }
    }
}

#[test]
fn orbit_distributions_respect_the_cone_supply() {
    for degree in [2, 3, 4, 6] {
        for sizes in [vec![degree], vec![degree, degree], vec![1, 1], vec![degree / 2]] {
            if sizes.contains(&0) {
                continue;
            }
            for d in enumerate_datasets(&EnumQuery::new(1, degree)) {
                for o in orbit_assignments(&d, &sizes) {
                    assert_eq!(o.total(), sizes.len() as u64);
                    for (p, m) in o.iter() {
                        if !p.is_free() {
                            assert!(m as usize <= d.cone_count(p), "{d} {p}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn permuting_enumeration_rejects_impossible_sizes() {
    let q = EnumQuery::new(1, 4).with_orbit_sizes(vec![3]);
    assert!(enumerate_permuting(&q).is_err());
    let q = EnumQuery::new(0, 3).with_orbit_sizes(vec![3, 3]);
    let list = enumerate_permuting(&q).unwrap();
    assert!(list
        .iter()
        .any(|pd| pd.dataset().to_string() == "(3,0;(1,3),(2,3))" && pd.orbits().multiplicity(ConeClass::FREE) == 2));
}
