//! Independent brute-force oracles for canonical keys, ranks, flats and
//! vertical connectivity.

use std::collections::HashMap;

use comatroid::canonical::canonical_key;
use comatroid::census::SubsetTable;
use comatroid::field::{rank_of_vectors, GfVec};
use comatroid::{EmbeddedMatroid, FieldOrder, LinearMap, PointSet, PointSpace};

/// Point permutations induced by transvections I + E_ij and, over GF(3),
/// the scaling of the first coordinate by 2. These generate GL(r, q).
fn generators(space: &PointSpace) -> Vec<Vec<usize>> {
    let q = space.field();
    let r = space.rank();
    let mut maps = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i != j {
                let images = (0..r)
                    .map(|k| {
                        let mut v = GfVec::unit(k);
                        if k == j {
                            v.set(i, 1);
                        }
                        v
                    })
                    .collect();
                maps.push(LinearMap::new(q, images).unwrap());
            }
        }
    }
    if q == FieldOrder::Three {
        let images = (0..r)
            .map(|k| GfVec::unit(k).scale(if k == 0 { 2 } else { 1 }, q))
            .collect();
        maps.push(LinearMap::new(q, images).unwrap());
    }
    maps.iter()
        .map(|m| {
            (0..space.len())
                .map(|p| space.index_of(m.apply(space.point(p)).normalized(q)))
                .collect()
        })
        .collect()
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Orbit label of every subset under the linear group, by union-find.
fn orbits(space: &PointSpace) -> Vec<u32> {
    let n = space.len();
    let gens = generators(space);
    let size = 1usize << n;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    for mask in 0..size {
        for g in &gens {
            let mut image = 0usize;
            for (p, &to) in g.iter().enumerate() {
                if mask >> p & 1 == 1 {
                    image |= 1 << to;
                }
            }
            let (a, b) = (
                find(&mut parent, mask as u32),
                find(&mut parent, image as u32),
            );
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (0..size as u32).map(|x| find(&mut parent, x)).collect()
}

fn keys_match_orbits(q: FieldOrder, r: usize) -> usize {
    let space = PointSpace::get(q, r).unwrap();
    let orbit = orbits(&space);
    let mut key_to_orbit = HashMap::new();
    let mut orbit_to_key = HashMap::new();
    for (mask, &o) in orbit.iter().enumerate() {
        let m = EmbeddedMatroid::new(space.clone(), PointSet::from_mask(space.len(), mask as u64));
        let key = canonical_key(&m).unwrap();
        assert_eq!(
            *key_to_orbit.entry(key.clone()).or_insert(o),
            o,
            "key shared by two orbits"
        );
        assert_eq!(
            *orbit_to_key.entry(o).or_insert(key.clone()),
            key,
            "orbit with two keys"
        );
    }
    orbit_to_key.len()
}

#[test]
fn canonical_keys_are_linear_group_orbits() {
    assert_eq!(keys_match_orbits(FieldOrder::Two, 3), 10);
    let ternary = keys_match_orbits(FieldOrder::Three, 3);
    let binary4 = keys_match_orbits(FieldOrder::Two, 4);
    println!("orbits: PG(2,3) {ternary}, PG(3,2) {binary4}");
}

#[test]
fn representatives_have_the_same_key() {
    let space = PointSpace::get(FieldOrder::Three, 3).unwrap();
    for mask in (0..1u64 << 13).step_by(37) {
        let m = EmbeddedMatroid::new(space.clone(), PointSet::from_mask(13, mask));
        let key = canonical_key(&m).unwrap();
        let rep = key.representative().unwrap();
        assert_eq!(canonical_key(&rep).unwrap(), key);
        assert_eq!(rep.len(), m.len());
    }
}

#[test]
fn subset_table_ranks_match_direct_elimination() {
    let space = PointSpace::get(FieldOrder::Two, 4).unwrap();
    let table = SubsetTable::new(space.clone()).unwrap();
    for mask in 0..=table.full_mask() {
        let vecs = (0..15)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| space.point(i));
        assert_eq!(table.rank(mask), rank_of_vectors(vecs, FieldOrder::Two));
    }
}

/// Flats of the matroid as the closed sets under brute-force rank.
#[test]
fn matroid_flats_match_brute_force_closed_sets() {
    let space = PointSpace::get(FieldOrder::Three, 3).unwrap();
    for mask in [
        0b1_0110_1101_0011u64,
        0b0_1111_0000_1111,
        0b1_1111_1111_1111,
        0b101,
    ] {
        let m = EmbeddedMatroid::new(space.clone(), PointSet::from_mask(13, mask));
        let elems = m.green().to_vec();
        let mut closed = Vec::new();
        for sub in 0..1u32 << elems.len() {
            let s = PointSet::from_indices(
                13,
                (0..elems.len())
                    .filter(|i| sub >> i & 1 == 1)
                    .map(|i| elems[i]),
            );
            let r = m.rank_of(&s);
            let is_closed = elems.iter().filter(|e| !s.contains(**e)).all(|&e| {
                let mut t = s.clone();
                t.insert(e);
                m.rank_of(&t) > r
            });
            if is_closed {
                closed.push(s);
            }
        }
        closed.sort();
        let mut flats: Vec<PointSet> = m.flats().into_iter().map(|f| f.members).collect();
        flats.sort();
        assert_eq!(flats, closed);
    }
}

#[test]
fn table_vertical_connectivity_matches_generic() {
    let space = PointSpace::get(FieldOrder::Two, 4).unwrap();
    let table = SubsetTable::new(space.clone()).unwrap();
    for mask in (0..=table.full_mask()).step_by(97) {
        let g = PointSet::from_mask(15, mask as u64);
        let m = EmbeddedMatroid::new(space.clone(), g.clone());
        assert_eq!(
            table.vertical_connectivity(mask),
            m.vertical_connectivity(&g).unwrap()
        );
    }
}
