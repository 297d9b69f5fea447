//! The verification manifest: twelve end-to-end checks of the library
//! against known values, each reported as PASS or FAIL.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canonical::{canonical_key, CanonicalKey};
use crate::census::{
    hyperplane_scan, is_graphic_on_five_vertices, minimal_non_comatroids, SubsetTable,
};
use crate::constructions::{circuit, four_hyperplane_family, named};
use crate::decide::{decide, is_comatroid, Method};
use crate::error::Result;
use crate::field::FieldOrder;
use crate::matroid::{EmbeddedMatroid, LinearMap};
use crate::pointset::PointSet;
use crate::space::PointSpace;

/// Default seed for the randomized checks.
pub const DEFAULT_SEED: u64 = 20240601;

pub const CHECKS: [&str; 12] = [
    "decider agreement on all colorings of PG(3,2) and PG(2,3)",
    "circuit law: k-circuit over GF(q) is a comatroid iff q+k <= 6",
    "binary rank-4 minimal non-comatroids: six complementary pairs of graphic classes",
    "ternary rank-3 minimal non-comatroids: seven complementary pairs",
    "f77 has 27 connected hyperplanes",
    "M(K33) has 6 connected hyperplanes; PG(4,2) has 31 hyperplanes",
    "extension scans of the four K33 seeds leave no survivors",
    "named connected hyperplanes of the rank-5 sporadic matroids",
    "vertical connectivities of a coloring sum to at least r, with one exception",
    "connected-hyperplane theorems at small rank",
    "closure of comatroids under flats, contraction and components",
    "complements are invariant under linear maps",
];

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail
        )
    }
}

type Check = (bool, String);

fn emb(name: &str) -> Result<EmbeddedMatroid> {
    Ok(named(name)?.embed()?.matroid)
}

fn all_colorings(q: FieldOrder, r: usize) -> Result<(std::sync::Arc<PointSpace>, Vec<PointSet>)> {
    let space = PointSpace::get(q, r)?;
    let n = space.len();
    let sets = (0..1u64 << n).map(|m| PointSet::from_mask(n, m)).collect();
    Ok((space, sets))
}

fn decider_agreement() -> Result<Check> {
    let mut details = Vec::new();
    let mut ok = true;
    for (q, r) in [(FieldOrder::Two, 4), (FieldOrder::Three, 3)] {
        let (space, sets) = all_colorings(q, r)?;
        let rows: Vec<(bool, bool)> = sets
            .into_par_iter()
            .map(|g| {
                let m = EmbeddedMatroid::new(space.clone(), g);
                let v: Vec<bool> = Method::ALL
                    .iter()
                    .map(|&meth| decide(&m, meth).map(|v| v.is_comatroid))
                    .collect::<Result<_>>()?;
                Ok((v.iter().all(|&x| x == v[0]), v[0]))
            })
            .collect::<Result<_>>()?;
        let disagree = rows.iter().filter(|r| !r.0).count();
        let yes = rows.iter().filter(|r| r.1).count();
        ok &= disagree == 0;
        details.push(format!(
            "PG({},{}): {} colorings, {yes} comatroids, {disagree} disagreements",
            r - 1,
            q.q(),
            rows.len()
        ));
    }
    Ok((ok, details.join("; ")))
}

fn circuit_law() -> Result<Check> {
    let mut ok = true;
    let mut seen = Vec::new();
    for (q, ks) in [(FieldOrder::Two, 3..=8), (FieldOrder::Three, 3..=7)] {
        for k in ks {
            let m = circuit(k, q)?.embed()?.matroid;
            let expect = q.q() as usize + k <= 6;
            for meth in Method::ALL {
                ok &= decide(&m, meth)?.is_comatroid == expect;
            }
            seen.push(format!(
                "q={}:k={k}{}",
                q.q(),
                if expect { "+" } else { "-" }
            ));
        }
    }
    Ok((ok, seen.join(" ")))
}

fn binary_census() -> Result<Check> {
    let report = minimal_non_comatroids(FieldOrder::Two, 4)?;
    let pairs = report.complement_pairs()?;
    let space = PointSpace::get(FieldOrder::Two, 4)?;
    let mut small_keys = HashSet::new();
    let mut ok = report.classes.len() == 12 && pairs.len() == 6;
    let mut max_small = 0;
    for (a, _) in &pairs {
        let c = &report.classes[*a];
        let m = EmbeddedMatroid::new(space.clone(), c.green.clone());
        max_small = max_small.max(c.size);
        ok &= c.size <= 7 && is_graphic_on_five_vertices(&m)?;
        small_keys.insert(c.key.clone().expect("census classes are keyed"));
    }
    for g in ["M(C5)", "M(K23)"] {
        ok &= small_keys.contains(&canonical_key(&emb(g)?)?);
    }
    Ok((
        ok,
        format!(
            "{} classes, {} pairs, small sides have at most {max_small} elements",
            report.classes.len(),
            pairs.len()
        ),
    ))
}

fn ternary_census() -> Result<Check> {
    let report = minimal_non_comatroids(FieldOrder::Three, 3)?;
    let pairs = report.complement_pairs()?;
    let mut hit = HashSet::new();
    let mut ok = pairs.len() == 7 && report.classes.len() == 14;
    for name in [
        "U34@3",
        "P(U23,U23)",
        "U24+2U23",
        "U24+2U24",
        "P(U24,U23)",
        "M(K4)@3",
        "W3",
    ] {
        let key = canonical_key(&emb(name)?)?;
        let pos = pairs.iter().position(|(a, b)| {
            [a, b]
                .iter()
                .any(|&&i| report.classes[i].key.as_ref() == Some(&key))
        });
        match pos {
            Some(p) => ok &= hit.insert(p),
            None => ok = false,
        }
    }
    Ok((
        ok && hit.len() == 7,
        format!(
            "{} classes, {} pairs, {} matched by the seven constructions",
            report.classes.len(),
            pairs.len(),
            hit.len()
        ),
    ))
}

fn f77_count() -> Result<Check> {
    let n = emb("f77")?.connected_hyperplanes().len();
    Ok((n == 27, format!("{n} connected hyperplanes")))
}

fn k33_and_pg42() -> Result<Check> {
    let k = emb("K33")?.connected_hyperplanes().len();
    let h = PointSpace::get(FieldOrder::Two, 5)?.hyperplanes().len();
    Ok((k == 6 && h == 31, format!("M(K33): {k}, PG(4,2): {h}")))
}

fn extension_scans() -> Result<Check> {
    let mut ok = true;
    let mut parts = Vec::new();
    for seed in ["m2a", "m2b", "extra-a", "extra-b"] {
        let scan = hyperplane_scan(&emb(seed)?, 10, false)?;
        ok &= scan.survivors.is_empty();
        parts.push(format!(
            "{seed}: {} scanned, {} survivors",
            scan.scanned,
            scan.survivors.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn named_hyperplanes() -> Result<Check> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, labels) in [
        ("Delta5", &["e", "j", "k", "l", "m"][..]),
        ("T12/e", &["f", "g", "h", "i", "j"][..]),
        ("M5,12a", &["f", "g", "h", "i", "j", "l"][..]),
        ("M5,12b", &["f", "g", "h", "i", "j", "l"][..]),
        ("M5,13", &["a", "b", "d", "e", "f", "i", "j"][..]),
    ] {
        let e = named(name)?.embed()?;
        let h = e.label_set(labels)?;
        let hit = e.matroid.connected_hyperplanes().contains(&h);
        let mut good = hit;
        if name == "M5,13" {
            let sub = e.matroid.restrict(&h).reembed().0;
            let c = sub.red_matroid();
            good &= c.rank() == 4 && c.is_connected();
        }
        ok &= good;
        parts.push(format!("{name}: {}", if good { "yes" } else { "no" }));
    }
    Ok((ok, parts.join(", ")))
}

fn vertical_connectivity_sums() -> Result<Check> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, r) in [
        (FieldOrder::Two, 3),
        (FieldOrder::Two, 4),
        (FieldOrder::Three, 3),
    ] {
        let space = PointSpace::get(q, r)?;
        let table = SubsetTable::new(space.clone())?;
        let full = table.full_mask();
        let exception: Option<[CanonicalKey; 2]> = if (q, r) == (FieldOrder::Two, 3) {
            let u33 = EmbeddedMatroid::new(space.clone(), PointSet::from_indices(7, [0, 1, 3]));
            Some([canonical_key(&u33)?, canonical_key(&u33.red_matroid())?])
        } else {
            None
        };
        let mut failures = 0;
        let mut mismatched = 0;
        for mask in 0..=full {
            let fails =
                table.vertical_connectivity(mask) + table.vertical_connectivity(full & !mask) < r;
            let is_exception = match &exception {
                Some(keys) => {
                    let g = EmbeddedMatroid::new(
                        space.clone(),
                        PointSet::from_mask(space.len(), mask as u64),
                    );
                    let pair = [canonical_key(&g)?, canonical_key(&g.red_matroid())?];
                    pair == *keys || (pair[0] == keys[1] && pair[1] == keys[0])
                }
                None => false,
            };
            failures += usize::from(fails);
            mismatched += usize::from(fails != is_exception);
        }
        ok &= mismatched == 0;
        parts.push(format!("PG({},{}): {failures} exceptions", r - 1, q.q()));
    }
    Ok((ok, parts.join(", ")))
}

/// Connected spanning colorings of PG(r-1,q).
fn connected_spanning(q: FieldOrder, r: usize) -> Result<Vec<EmbeddedMatroid>> {
    let space = PointSpace::get(q, r)?;
    let table = SubsetTable::new(space.clone())?;
    Ok((1..=table.full_mask())
        .filter(|&m| table.rank(m) == r && table.is_connected(m))
        .map(|m| EmbeddedMatroid::new(space.clone(), PointSet::from_mask(space.len(), m as u64)))
        .collect())
}

/// Circuit, or a connected hyperplane through every element, or a series
/// class of size at least three avoiding the element.
fn binary_trichotomy(m: &EmbeddedMatroid) -> bool {
    if m.len() == m.rank() + 1 {
        return true;
    }
    let hyps = m.connected_hyperplanes();
    let series: Vec<PointSet> = m
        .series_classes()
        .into_iter()
        .filter(|s| s.len() >= 3)
        .collect();
    m.green()
        .iter()
        .all(|e| hyps.iter().any(|h| h.contains(e)) || series.iter().any(|s| !s.contains(e)))
}

fn hyperplane_theorems(seed: u64) -> Result<Check> {
    let mut ok = true;
    let mut trichotomy = 0;
    let mut cosimple = 0;
    for r in 2..=4 {
        let corpus = connected_spanning(FieldOrder::Two, r)?;
        let rows: Vec<(bool, bool, bool)> = corpus
            .par_iter()
            .map(|m| {
                let tri = binary_trichotomy(m);
                if m.cocircuits_min_size() < 3 {
                    return (tri, false, true);
                }
                let hyps = m.connected_hyperplanes();
                let each = m
                    .green()
                    .iter()
                    .all(|e| hyps.iter().filter(|h| h.contains(e)).count() >= 2);
                (tri, true, hyps.len() >= 4 && each)
            })
            .collect();
        trichotomy += rows.len();
        cosimple += rows.iter().filter(|r| r.1).count();
        ok &= rows.iter().all(|r| r.0 && r.2);
    }
    let two_hyps =
        |m: &EmbeddedMatroid| m.cocircuits_min_size() < 4 || m.connected_hyperplanes().len() >= 2;
    let ternary3 = connected_spanning(FieldOrder::Three, 3)?;
    let t3 = ternary3
        .iter()
        .filter(|m| m.cocircuits_min_size() >= 4)
        .count();
    ok &= ternary3.par_iter().all(two_hyps);
    let space = PointSpace::get(FieldOrder::Three, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t4 = 0;
    let mut tries = 0;
    while t4 < 300 && tries < 20000 {
        tries += 1;
        let keep = rng.gen_range(0.3..0.9);
        let g =
            PointSet::from_indices(space.len(), (0..space.len()).filter(|_| rng.gen_bool(keep)));
        let m = EmbeddedMatroid::new(space.clone(), g);
        if m.rank() == 4 && m.is_connected() && m.cocircuits_min_size() >= 4 {
            t4 += 1;
            ok &= two_hyps(&m);
        }
    }
    let mut fam = Vec::new();
    for n in 1..=2 {
        let m = four_hyperplane_family(n)?.embed()?.matroid;
        let c = m.connected_hyperplanes().len();
        ok &= c == 4 && m.len() == 5 * n + 8 && m.rank() == 2 * n + 3;
        fam.push(format!(
            "n={n}: {} elements, rank {}, {c} connected hyperplanes",
            m.len(),
            m.rank()
        ));
    }
    Ok((
        ok,
        format!(
            "{trichotomy} binary matroids, {cosimple} without small cocircuits; {t3} ternary rank-3 and {t4} sampled rank-4 with cocircuits of size at least 4; {}",
            fam.join(", ")
        ),
    ))
}

fn closure_properties() -> Result<Check> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (q, r) in [(FieldOrder::Two, 4), (FieldOrder::Three, 3)] {
        let space = PointSpace::get(q, r)?;
        let table = SubsetTable::new(space.clone())?;
        let flats: Vec<PointSet> = space
            .all_flats()
            .filter(|f| f.rank >= 1)
            .map(|f| f.members.clone())
            .collect();
        let comatroids: Vec<u32> = (0..=table.full_mask())
            .filter(|&m| table.is_comatroid(m))
            .collect();
        let bad: usize = comatroids
            .par_iter()
            .map(|&mask| -> Result<usize> {
                let g = PointSet::from_mask(space.len(), mask as u64);
                let m = EmbeddedMatroid::new(space.clone(), g.clone());
                let mut bad = 0;
                for f in &flats {
                    bad += usize::from(!is_comatroid(&m.restrict(&f.intersection(&g)))?);
                }
                for e in g.iter() {
                    bad += usize::from(!is_comatroid(&m.si_contract(e)?)?);
                }
                let comps = m.components(&g);
                if comps.len() > 1 {
                    for c in &comps {
                        bad += usize::from(!is_comatroid(&m.restrict(c))?);
                    }
                } else if !g.is_empty() {
                    let rank = table.rank(mask);
                    bad += usize::from(table.vertical_connectivity(mask) + 1 < rank);
                }
                Ok(bad)
            })
            .sum::<Result<usize>>()?;
        ok &= bad == 0;
        parts.push(format!(
            "PG({},{}): {} comatroids, {bad} failures",
            r - 1,
            q.q(),
            comatroids.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn complement_invariance(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    while triples.len() < 1000 {
        let q = if rng.gen_bool(0.5) {
            FieldOrder::Two
        } else {
            FieldOrder::Three
        };
        let a = rng.gen_range(1..=4);
        let space = PointSpace::get(q, a)?;
        let g = PointSet::from_indices(space.len(), (0..space.len()).filter(|_| rng.gen_bool(0.5)));
        let m = EmbeddedMatroid::new(space, g);
        let t = rng.gen_range(m.rank().max(1)..=4);
        let map = LinearMap::random(q, a, &mut rng);
        triples.push((m, map, t));
    }
    let mismatches = triples
        .par_iter()
        .map(|(m, map, t)| -> Result<usize> {
            let a = canonical_key(&m.complement(*t)?)?;
            let b = canonical_key(&m.transform(map).complement(*t)?)?;
            Ok(usize::from(a != b))
        })
        .sum::<Result<usize>>()?;
    Ok((
        mismatches == 0,
        format!("{} triples, {mismatches} mismatches", triples.len()),
    ))
}

/// Runs one check by number (1 to 12).
pub fn run_check(id: usize, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let result = match id {
        1 => decider_agreement(),
        2 => circuit_law(),
        3 => binary_census(),
        4 => ternary_census(),
        5 => f77_count(),
        6 => k33_and_pg42(),
        7 => extension_scans(),
        8 => named_hyperplanes(),
        9 => vertical_connectivity_sums(),
        10 => hyperplane_theorems(seed),
        11 => closure_properties(),
        12 => complement_invariance(seed),
        _ => Ok((false, format!("no check numbered {id}"))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome {
        id,
        title: CHECKS.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    (1..=CHECKS.len()).map(|id| run_check(id, seed)).collect()
}
