use comatroid::canonical::{canonical_key, isomorphic};
use comatroid::census::SubsetTable;
use comatroid::constructions::{
    circuit_with_u24, graph_cycle_matroid, named, parallel_connection, projective_geometry,
};
use comatroid::decide::{decide, replay, Method};
use comatroid::{EmbeddedMatroid, FieldOrder, LinearMap, PointSet, PointSpace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn emb(name: &str) -> EmbeddedMatroid {
    named(name).unwrap().embed().unwrap().matroid
}

/// A coloring of PG(r-1,q) with r <= 4 (r <= 3 over GF(3) keeps it small).
fn coloring() -> impl Strategy<Value = EmbeddedMatroid> {
    (any::<bool>(), 1usize..=4, any::<u64>()).prop_map(|(ternary, r, bits)| {
        let (q, r) = if ternary {
            (FieldOrder::Three, r.min(3))
        } else {
            (FieldOrder::Two, r)
        };
        let space = PointSpace::get(q, r).unwrap();
        let n = space.len();
        EmbeddedMatroid::new(space, PointSet::from_mask(n, bits & ((1u64 << n) - 1)))
    })
}

fn subset_of(s: &PointSet, bits: u64) -> PointSet {
    PointSet::from_indices(
        s.universe(),
        s.iter()
            .enumerate()
            .filter(|(i, _)| bits >> (i % 64) & 1 == 1)
            .map(|(_, p)| p),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_a_closure_operator(m in coloring(), a in any::<u64>(), b in any::<u64>()) {
        let s = subset_of(m.green(), a);
        let t = s.union(&subset_of(m.green(), b));
        let cs = m.closure_of(&s);
        prop_assert!(s.is_subset(&cs));
        prop_assert_eq!(m.closure_of(&cs), cs.clone());
        prop_assert!(cs.is_subset(&m.closure_of(&t)));
        prop_assert_eq!(m.rank_of(&cs), m.rank_of(&s));
    }

    #[test]
    fn complement_is_an_involution_at_full_rank(m in coloring()) {
        let c = m.complement_default();
        if m.rank() == m.ambient_rank() && c.rank() == m.rank() {
            prop_assert_eq!(c.complement_default().green().clone(), m.green().clone());
        }
    }

    #[test]
    fn one_side_of_every_coloring_spans(m in coloring()) {
        let r = m.ambient_rank();
        prop_assert!(m.rank() == r || m.red_matroid().rank() == r);
    }

    #[test]
    fn complements_commute_with_linear_maps(m in coloring(), seed in any::<u64>(), extra in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = LinearMap::random(m.field(), m.ambient_rank(), &mut rng);
        let t = m.ambient_rank().max(m.rank()) + extra;
        let a = m.complement(t).unwrap();
        let b = m.transform(&map).complement(t).unwrap();
        prop_assert!(isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn certificates_replay(m in coloring()) {
        for method in Method::ALL {
            let v = decide(&m, method).unwrap();
            prop_assert_eq!(replay(&m, &v.certificate).unwrap(), v.is_comatroid);
        }
    }

    /// Two vertically n-connected restrictions meeting in rank at least
    /// n - 1 have a vertically n-connected union.
    #[test]
    fn vertical_connectivity_of_unions(bits in any::<u64>(), a in any::<u64>(), b in any::<u64>(), n in 2usize..=4) {
        let space = PointSpace::get(FieldOrder::Two, 4).unwrap();
        let m = EmbeddedMatroid::new(space, PointSet::from_mask(15, bits & 0x7fff));
        let x = subset_of(m.green(), a);
        let y = subset_of(m.green(), b);
        let vconn = |s: &PointSet| m.min_vertical_separation(s).unwrap().is_none_or(|k| k >= n);
        let meet = m.rank_of(&x) + m.rank_of(&y) >= m.rank_of(&x.union(&y)) + n - 1;
        if vconn(&x) && vconn(&y) && meet {
            prop_assert!(vconn(&x.union(&y)));
        }
    }
}

#[test]
fn comatroids_built_from_the_empty_matroid_pass_every_decider() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [FieldOrder::Two, FieldOrder::Three] {
        let mut pool = vec![EmbeddedMatroid::empty(q)];
        for _ in 0..200 {
            let a = pool[rng.gen_range(0..pool.len())].clone();
            let next = if rng.gen_bool(0.5) {
                let b = &pool[rng.gen_range(0..pool.len())];
                match a.direct_sum(b) {
                    Ok(s) if s.ambient_rank() <= 5 => s,
                    _ => continue,
                }
            } else {
                let t = a.rank() + rng.gen_range(0..=1);
                if t > 5 || t == 0 {
                    continue;
                }
                a.complement(t).unwrap()
            };
            for method in Method::ALL {
                assert!(
                    decide(&next, method).unwrap().is_comatroid,
                    "{}",
                    next.green()
                );
            }
            pool.push(next);
        }
    }
}

#[test]
fn random_rank5_colorings_agree_across_deciders() {
    use rand::Rng;
    let space = PointSpace::get(FieldOrder::Two, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut yes = 0;
    for _ in 0..10_000 {
        let p = rng.gen_range(0.05..0.95);
        let g = PointSet::from_indices(31, (0..31).filter(|_| rng.gen_bool(p)));
        let m = EmbeddedMatroid::new(space.clone(), g);
        let v: Vec<bool> = Method::ALL
            .iter()
            .map(|&x| decide(&m, x).unwrap().is_comatroid)
            .collect();
        assert!(v.iter().all(|&x| x == v[0]), "{}", m.green());
        yes += usize::from(v[0]);
    }
    assert!(yes > 0);
}

#[test]
fn catalog_matroids_agree_across_deciders() {
    for name in comatroid::constructions::catalog_names() {
        let m = emb(&name);
        if m.rank() > 7 {
            continue;
        }
        let v: Vec<bool> = Method::ALL
            .iter()
            .map(|&x| decide(&m, x).unwrap().is_comatroid)
            .collect();
        assert!(v.iter().all(|&x| x == v[0]), "{name}");
    }
}

#[test]
fn large_sets_are_connected_and_spanning() {
    for (q, r) in [(FieldOrder::Two, 4), (FieldOrder::Three, 3)] {
        let table = SubsetTable::new(PointSpace::get(q, r).unwrap()).unwrap();
        let bound = q.q().pow(r as u32 - 1) + 1;
        for mask in 0..=table.full_mask() {
            if mask.count_ones() >= bound {
                assert!(table.rank(mask) == r && table.is_connected(mask));
            }
        }
    }
}

#[test]
fn rank4_colorings_have_a_connected_spanning_side() {
    let table = SubsetTable::new(PointSpace::get(FieldOrder::Two, 4).unwrap()).unwrap();
    let full = table.full_mask();
    let good = |m: u32| table.rank(m) == 4 && table.is_connected(m);
    for mask in 0..=full {
        assert!(good(mask) || good(full & !mask));
    }
    // a coarse sample of PG(3,3)
    use rand::Rng;
    let space = PointSpace::get(FieldOrder::Three, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let g = PointSet::from_indices(40, (0..40).filter(|_| rng.gen_bool(0.5)));
        let m = EmbeddedMatroid::new(space.clone(), g);
        let r = m.red_matroid();
        assert!((m.rank() == 4 && m.is_connected()) || (r.rank() == 4 && r.is_connected()));
    }
}

#[test]
fn every_coloring_has_a_spanning_side_exhaustively() {
    for (q, r) in [
        (FieldOrder::Two, 2),
        (FieldOrder::Two, 3),
        (FieldOrder::Two, 4),
        (FieldOrder::Three, 2),
        (FieldOrder::Three, 3),
    ] {
        let table = SubsetTable::new(PointSpace::get(q, r).unwrap()).unwrap();
        let full = table.full_mask();
        for mask in 0..=full {
            assert!(table.rank(mask) == r || table.rank(full & !mask) == r);
        }
    }
}

#[test]
fn parallel_connections_of_geometries_have_spanning_complements() {
    for q in [FieldOrder::Two, FieldOrder::Three] {
        for (j, k) in [(2, 3), (3, 3), (2, 4), (3, 4)] {
            let a = projective_geometry(j, q).unwrap();
            let b = projective_geometry(k, q).unwrap();
            let n = parallel_connection(&a, 0, &b, 0)
                .unwrap()
                .embed()
                .unwrap()
                .matroid;
            assert_eq!(n.rank(), j + k - 1);
            assert_eq!(n.complement_default().rank(), n.rank(), "q={q} j={j} k={k}");
        }
    }
}

/// A free element forces a circuit over GF(2), and over GF(3) a circuit with
/// copies of U(2,4) 2-summed on, or U(2,4) itself.
#[test]
fn free_elements_force_circuit_structure() {
    let two = PointSpace::get(FieldOrder::Two, 4).unwrap();
    for mask in 0..1u64 << 15 {
        let m = EmbeddedMatroid::new(two.clone(), PointSet::from_mask(15, mask));
        if m.rank() < 2 {
            continue;
        }
        let m = m.reembed().0;
        if m.green().iter().any(|e| m.is_free_element(e).unwrap()) {
            assert!(m.len() == m.rank() + 1 && m.is_connected(), "{}", m.green());
        }
    }
    let mut family = vec![canonical_key(&emb("U24")).unwrap()];
    for k in 3..=4 {
        for d in 0..k {
            if k - 1 + d <= 3 {
                let ds: Vec<usize> = (0..d).collect();
                let m = circuit_with_u24(k, &ds).unwrap().embed().unwrap().matroid;
                family.push(canonical_key(&m).unwrap());
            }
        }
    }
    let three = PointSpace::get(FieldOrder::Three, 3).unwrap();
    let mut seen = 0;
    for mask in 0..1u64 << 13 {
        let m = EmbeddedMatroid::new(three.clone(), PointSet::from_mask(13, mask));
        if m.rank() < 2 {
            continue;
        }
        let m = m.reembed().0;
        if m.green().iter().any(|e| m.is_free_element(e).unwrap()) {
            seen += 1;
            assert!(
                family.contains(&canonical_key(&m).unwrap()),
                "{}",
                m.green()
            );
        }
    }
    assert!(seen > 0);
}

#[test]
fn named_isomorphisms() {
    // two 4-circuits sharing an element form a 6-cycle with a chord
    let cycle_chord = graph_cycle_matroid(
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)],
        FieldOrder::Two,
    )
    .unwrap()
    .embed()
    .unwrap()
    .matroid;
    assert!(isomorphic(&emb("P(U34,U34)"), &cycle_chord).unwrap());
    let k23c = emb("M(K23)").complement(4).unwrap();
    assert!(isomorphic(&k23c, &emb("P(F7,U23)")).unwrap());
}
