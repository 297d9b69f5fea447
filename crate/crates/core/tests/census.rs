use comatroid::canonical::canonical_key;
use comatroid::census::{
    enumerate_colorings, hyperplane_scan, minimal_non_comatroids, pg42_connected_hyperplanes,
    ColoringFilter, Sampling,
};
use comatroid::constructions::{named, MINIMAL_GRAPHS};
use comatroid::decide::{decide, Method};
use comatroid::{EmbeddedMatroid, FieldOrder, PointSet, PointSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn emb(name: &str) -> EmbeddedMatroid {
    named(name).unwrap().embed().unwrap().matroid
}

#[test]
fn binary_rank4_minimal_classes() {
    let report = minimal_non_comatroids(FieldOrder::Two, 4).unwrap();
    for c in &report.classes {
        println!("{} {} {}", c.size, c.label, c.green);
    }
    assert_eq!(report.classes.len(), 12);
    let pairs = report.complement_pairs().unwrap();
    assert_eq!(pairs.len(), 6);
    let space = PointSpace::get(FieldOrder::Two, 4).unwrap();
    let mut small: Vec<String> = Vec::new();
    for (a, _) in &pairs {
        let c = &report.classes[*a];
        assert!(c.size <= 7);
        assert!(c.label.starts_with("M("), "{}", c.label);
        small.push(c.label.clone());
    }
    for (name, _) in MINIMAL_GRAPHS {
        assert!(small.contains(&format!("M({name})")), "missing {name}");
    }
    for c in &report.classes {
        let m = EmbeddedMatroid::new(space.clone(), c.green.clone());
        for method in Method::ALL {
            assert!(!decide(&m, method).unwrap().is_comatroid);
        }
    }
}

#[test]
fn ternary_rank3_minimal_classes() {
    let report = minimal_non_comatroids(FieldOrder::Three, 3).unwrap();
    for c in &report.classes {
        println!("{} {} {}", c.size, c.label, c.green);
    }
    assert_eq!(report.classes.len(), 14);
    assert_eq!(report.complement_pairs().unwrap().len(), 7);
    for name in [
        "U34@3",
        "P(U23,U23)",
        "U24+2U23",
        "U24+2U24",
        "P(U24,U23)",
        "M(K4)@3",
        "W3",
    ] {
        let key = canonical_key(&emb(name)).unwrap();
        assert!(
            report.classes.iter().any(|c| c.key.as_ref() == Some(&key)),
            "{name} not found"
        );
    }
}

#[test]
fn ternary_rank4_family_members_are_minimal() {
    let report = minimal_non_comatroids(FieldOrder::Three, 4).unwrap();
    assert_eq!(report.classes.len(), 6);
}

#[test]
fn table_hyperplane_count_matches_generic() {
    let space = PointSpace::get(FieldOrder::Two, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 300 {
        let mask: u32 = rng.gen::<u32>() & 0x7fff_ffff;
        let g = PointSet::from_mask(31, mask as u64);
        let m = EmbeddedMatroid::new(space.clone(), g);
        if m.rank() != 5 {
            continue;
        }
        let generic = m.connected_hyperplanes().len() as u32;
        assert_eq!(pg42_connected_hyperplanes(mask).unwrap(), generic);
        checked += 1;
    }
}

#[test]
fn f77_seed_alone_has_27() {
    let scan = hyperplane_scan(&emb("f77"), 0, true).unwrap();
    let records = scan.records.unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].i, 27);
    assert_eq!(records[0].j, None);
    assert_eq!(scan.red_counts, 0);
}

#[test]
fn extension_scans_have_no_survivors() {
    for seed in ["m2a", "m2b", "extra-a", "extra-b"] {
        let scan = hyperplane_scan(&emb(seed), 10, false).unwrap();
        println!(
            "{seed}: scanned {} red-counts {} survivors {}",
            scan.scanned,
            scan.red_counts,
            scan.survivors.len()
        );
        assert!(scan.survivors.is_empty());
        assert!(scan.red_counts <= scan.scanned);
    }
}

#[test]
fn scan_rejects_wrong_seeds() {
    assert!(hyperplane_scan(&emb("F7"), 1, false).is_err());
    assert!(hyperplane_scan(&emb("W3"), 1, false).is_err());
}

#[test]
fn fano_colorings_never_have_both_sides_connected_spanning() {
    let space = PointSpace::get(FieldOrder::Two, 3).unwrap();
    let f = ColoringFilter::named("both-connected-spanning").unwrap();
    let r = enumerate_colorings(&space, &f, false, Sampling::Exhaustive).unwrap();
    assert_eq!(r.scanned, 128);
    assert!(r.classes.is_empty());
}

#[test]
fn large_green_sets_are_connected_spanning() {
    let f = ColoringFilter::named("large-green-degenerate").unwrap();
    for (q, r) in [(FieldOrder::Two, 4), (FieldOrder::Three, 3)] {
        let space = PointSpace::get(q, r).unwrap();
        let rep = enumerate_colorings(&space, &f, false, Sampling::Exhaustive).unwrap();
        assert!(rep.classes.is_empty());
    }
}

#[test]
fn sampled_reports_are_reproducible() {
    let space = PointSpace::get(FieldOrder::Three, 4).unwrap();
    let f = ColoringFilter::named("non-comatroid").unwrap();
    let s = Sampling::Random {
        samples: 40,
        seed: 5,
    };
    let a = enumerate_colorings(&space, &f, true, s).unwrap();
    let b = enumerate_colorings(&space, &f, true, s).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_tsv(), b.to_tsv());
    assert!(enumerate_colorings(&space, &f, false, Sampling::Exhaustive).is_err());
}
