//! Canonical keys for projective equivalence of embedded matroids.
//!
//! Two matroids over the same field get the same key exactly when an
//! invertible linear map carries one green set onto the other (after both are
//! re-embedded at their own rank). Over GF(2) and GF(3) this is the same as
//! matroid isomorphism.
//!
//! The key of a matroid whose red side is strictly smaller is derived from
//! the key of the red side, which keeps the search over ordered bases small.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Echelon, FieldOrder, GfVec};
use crate::matroid::EmbeddedMatroid;
use crate::space::PointSpace;

/// Highest rank accepted by [`canonical_key`].
pub const CANONICAL_RANK_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyForm {
    /// Sorted point indices of the canonical image in PG(rank-1, q).
    Direct(Vec<u16>),
    /// Key of the red side, re-embedded at its own rank.
    Complement(Box<CanonicalKey>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub q: u8,
    pub rank: u8,
    pub form: KeyForm,
}

impl CanonicalKey {
    /// Reconstructs a representative matroid of the class.
    pub fn representative(&self) -> Result<EmbeddedMatroid> {
        let q = FieldOrder::new(self.q as u32)?;
        let space = PointSpace::get(q, self.rank as usize)?;
        match &self.form {
            KeyForm::Direct(pts) => {
                if let Some(&bad) = pts.iter().find(|&&p| p as usize >= space.len()) {
                    return Err(Error::domain(format!(
                        "key names point {bad} outside the space"
                    )));
                }
                Ok(EmbeddedMatroid::from_indices(
                    space,
                    pts.iter().map(|&p| p as usize),
                ))
            }
            KeyForm::Complement(inner) => {
                let red = inner.representative()?;
                red.complement(self.rank as usize)
            }
        }
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}r{}", self.q, self.rank)?;
        match &self.form {
            KeyForm::Direct(pts) => {
                write!(f, "[")?;
                for (i, p) in pts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
            KeyForm::Complement(inner) => write!(f, "~({inner})"),
        }
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn parse(s: &str) -> Option<(CanonicalKey, &str)> {
            let s = s.strip_prefix('q')?;
            let qend = s.find('r')?;
            let q: u8 = s[..qend].parse().ok()?;
            let s = &s[qend + 1..];
            let rend = s.find(['[', '~'])?;
            let rank: u8 = s[..rend].parse().ok()?;
            let s = &s[rend..];
            if let Some(rest) = s.strip_prefix("~(") {
                let (inner, rest) = parse(rest)?;
                let rest = rest.strip_prefix(')')?;
                Some((
                    CanonicalKey {
                        q,
                        rank,
                        form: KeyForm::Complement(Box::new(inner)),
                    },
                    rest,
                ))
            } else {
                let s = s.strip_prefix('[')?;
                let end = s.find(']')?;
                let body = &s[..end];
                let pts = if body.is_empty() {
                    Vec::new()
                } else {
                    body.split(',')
                        .map(|t| t.parse().ok())
                        .collect::<Option<Vec<u16>>>()?
                };
                Some((
                    CanonicalKey {
                        q,
                        rank,
                        form: KeyForm::Direct(pts),
                    },
                    &s[end + 1..],
                ))
            }
        }
        match parse(s.trim()) {
            Some((k, "")) => Ok(k),
            _ => Err(Error::domain(format!("malformed canonical key `{s}`"))),
        }
    }
}

/// Canonical key of the matroid.
pub fn canonical_key(m: &EmbeddedMatroid) -> Result<CanonicalKey> {
    let (m, _) = m.reembed();
    let k = m.ambient_rank();
    Error::check_cap("rank for canonical form", k, CANONICAL_RANK_CAP)?;
    let q = m.field();
    let n = m.space().len();
    let g = m.len();
    if 2 * g > n {
        let red = m.red_matroid();
        return Ok(CanonicalKey {
            q: q.q() as u8,
            rank: k as u8,
            form: KeyForm::Complement(Box::new(canonical_key(&red)?)),
        });
    }
    Ok(CanonicalKey {
        q: q.q() as u8,
        rank: k as u8,
        form: KeyForm::Direct(direct_image(&m)),
    })
}

/// Whether two matroids over the same field are isomorphic.
pub fn isomorphic(a: &EmbeddedMatroid, b: &EmbeddedMatroid) -> Result<bool> {
    if a.field() != b.field() || a.len() != b.len() || a.rank() != b.rank() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

struct Search<'a> {
    q: FieldOrder,
    space: &'a PointSpace,
    vecs: Vec<GfVec>,
    green: Vec<bool>,
    class: Vec<u32>,
    best: Option<Vec<u16>>,
}

impl Search<'_> {
    /// Number of green points on the line through two green points.
    fn line_count(&self, a: usize, b: usize) -> u32 {
        let (va, vb) = (self.vecs[a], self.vecs[b]);
        let mut c = 2;
        if self.green[self.space.index_of(va.add(vb, self.q))] {
            c += 1;
        }
        if self.q == FieldOrder::Three && self.green[self.space.index_of(va.sub(vb, self.q))] {
            c += 1;
        }
        c
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, span: &Echelon) {
        let k = self.space.rank();
        if chosen.len() == k {
            self.leaf(chosen);
            return;
        }
        let mut cands: Vec<(Vec<u32>, usize)> = Vec::new();
        for x in 0..self.vecs.len() {
            if span.contains(self.vecs[x]) {
                continue;
            }
            let mut key = Vec::with_capacity(chosen.len() + 1);
            key.push(self.class[x]);
            key.extend(chosen.iter().map(|&b| self.line_count(x, b)));
            cands.push((key, x));
        }
        let min = cands
            .iter()
            .map(|c| &c.0)
            .min()
            .cloned()
            .expect("green spans the space");
        for (key, x) in cands {
            if key != min {
                continue;
            }
            let mut next = span.clone();
            next.insert_untracked(self.vecs[x]);
            chosen.push(x);
            self.dfs(chosen, &next);
            chosen.pop();
        }
    }

    fn leaf(&mut self, basis: &[usize]) {
        let q = self.q;
        let k = basis.len();
        let mut e = Echelon::new(q);
        for &b in basis {
            e.insert(self.vecs[b]);
        }
        let coords: Vec<GfVec> = self
            .vecs
            .iter()
            .map(|&v| e.coordinates(v).expect("basis spans"))
            .collect();
        let scalings: u32 = match q {
            FieldOrder::Two => 1,
            FieldOrder::Three => 1 << (k.saturating_sub(1)),
        };
        for s in 0..scalings {
            // bit j-1 of s flips the sign of basis vector j (j >= 1)
            let flip = s << 1;
            let mut image: Vec<u16> = coords
                .iter()
                .map(|&c| self.space.index_of(flip_coords(c, flip)) as u16)
                .collect();
            image.sort_unstable();
            let better = match &self.best {
                None => true,
                Some(b) => image.cmp(b) == Ordering::Less,
            };
            if better {
                self.best = Some(image);
            }
        }
    }
}

fn flip_coords(v: GfVec, mask: u32) -> GfVec {
    if mask == 0 {
        return v;
    }
    let mut out = v;
    let mut m = mask;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        m &= m - 1;
        let c = v.get(j);
        out.set(j, (3 - c) % 3);
    }
    out
}

/// Canonical image of a green set that spans its ambient space.
fn direct_image(m: &EmbeddedMatroid) -> Vec<u16> {
    let space = m.space().clone();
    let idx: Vec<usize> = m.green().to_vec();
    if idx.is_empty() {
        return Vec::new();
    }
    let mut green = vec![false; space.len()];
    for &i in &idx {
        green[i] = true;
    }
    let mut search = Search {
        q: m.field(),
        space: &space,
        vecs: idx.iter().map(|&i| space.point(i)).collect(),
        green,
        class: Vec::new(),
        best: None,
    };
    search.class = point_classes(&search);
    search.dfs(&mut Vec::new(), &Echelon::new(m.field()));
    search.best.expect("at least one basis exists")
}

/// Isomorphism-invariant classes of green points, from line statistics
/// refined once by the classes of their neighbours.
#[allow(clippy::needless_range_loop)]
fn point_classes(s: &Search) -> Vec<u32> {
    let n = s.vecs.len();
    let mut counts = vec![vec![0u32; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let c = s.line_count(a, b);
            counts[a][b] = c;
            counts[b][a] = c;
        }
    }
    let base: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            let mut h = vec![0u32; 3];
            for (b, &c) in counts[a].iter().enumerate() {
                if b != a {
                    h[(c - 2) as usize] += 1;
                }
            }
            h
        })
        .collect();
    let first = rank_values(&base);
    let refined: Vec<(u32, Vec<(u32, u32)>)> = (0..n)
        .map(|a| {
            let mut nb: Vec<(u32, u32)> = (0..n)
                .filter(|&b| b != a)
                .map(|b| (first[b], counts[a][b]))
                .collect();
            nb.sort_unstable();
            (first[a], nb)
        })
        .collect();
    rank_values(&refined)
}

fn rank_values<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::LinearMap;
    use rand::SeedableRng;

    fn from_cols(q: u32, cols: &[&str]) -> EmbeddedMatroid {
        let q = FieldOrder::new(q).unwrap();
        let named: Vec<(&str, &str)> = cols.iter().map(|c| ("x", *c)).collect();
        crate::presentation::MatrixPresentation::from_digit_columns(q, &named)
            .unwrap()
            .embed()
            .unwrap()
            .matroid
    }

    #[test]
    fn circuit_orderings_agree() {
        let a = from_cols(2, &["10000", "01000", "00100", "00010", "11110"]);
        let b = from_cols(2, &["11110", "00010", "01000", "10000", "00100"]);
        let c = from_cols(2, &["1000", "0100", "0010", "0001", "1111"]);
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&c).unwrap());
    }

    #[test]
    fn distinguishes_small_rank_three_matroids() {
        let u33 = from_cols(2, &["100", "010", "001"]);
        let mixed = from_cols(2, &["100", "010", "110", "001"]);
        assert_ne!(canonical_key(&u33).unwrap(), canonical_key(&mixed).unwrap());
        let mk4 = from_cols(3, &["100", "010", "001", "120", "012", "102"]);
        let w3 = from_cols(3, &["100", "010", "001", "110", "011", "101"]);
        assert_ne!(canonical_key(&mk4).unwrap(), canonical_key(&w3).unwrap());
    }

    #[test]
    fn keys_are_invariant_under_linear_maps() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (q, cols) in [
            (
                2,
                vec!["1000", "0100", "0010", "1100", "0110", "1111", "0011"],
            ),
            (3, vec!["100", "010", "001", "110", "120", "011"]),
        ] {
            let m = from_cols(q, &cols);
            let key = canonical_key(&m).unwrap();
            for _ in 0..25 {
                let map = LinearMap::random(m.field(), m.ambient_rank(), &mut rng);
                assert_eq!(canonical_key(&m.transform(&map)).unwrap(), key);
            }
            let rep = key.representative().unwrap();
            assert_eq!(canonical_key(&rep).unwrap(), key);
        }
    }

    #[test]
    fn key_text_round_trip() {
        let m = from_cols(
            2,
            &[
                "1000", "0100", "0010", "0001", "1111", "1100", "0011", "1010", "0101",
            ],
        );
        let key = canonical_key(&m).unwrap();
        let text = key.to_string();
        assert_eq!(text.parse::<CanonicalKey>().unwrap(), key);
        let big = EmbeddedMatroid::projective_geometry(FieldOrder::Three, 3).unwrap();
        let key = canonical_key(&big).unwrap();
        assert_eq!(key.to_string(), "q3r3~(q3r0[])");
        assert_eq!(key.to_string().parse::<CanonicalKey>().unwrap(), key);
        assert!("q2r3[1,".parse::<CanonicalKey>().is_err());
    }

    #[test]
    fn exhaustive_pg22_classes() {
        // subsets of the Fano plane fall into 10 orbits under GL(3, 2)
        let space = PointSpace::get(FieldOrder::Two, 3).unwrap();
        let mut keys = std::collections::BTreeSet::new();
        let mut red_keys = std::collections::BTreeSet::new();
        for mask in 0u64..128 {
            let m = EmbeddedMatroid::new(space.clone(), crate::PointSet::from_mask(7, mask));
            keys.insert(canonical_key(&m).unwrap());
            red_keys.insert(canonical_key(&m.complement(3).unwrap()).unwrap());
        }
        assert_eq!(keys.len(), 10);
        assert_eq!(red_keys.len(), 10);
    }
}
