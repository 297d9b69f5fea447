//! Simple GF(q)-representable matroids as colorings of a projective space.
//!
//! The ground set of an [`EmbeddedMatroid`] is its set of green points; every
//! other point of the ambient geometry is red.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{component_labels, Echelon, FieldOrder, GfVec, Insert};
use crate::pointset::PointSet;
use crate::space::{Flat, PointSpace, MAX_SPACE_RANK};

/// Largest set handled by the brute-force bipartition and circuit searches.
pub const BRUTE_FORCE_CAP: usize = 24;

#[derive(Clone)]
pub struct EmbeddedMatroid {
    space: Arc<PointSpace>,
    green: PointSet,
}

/// A flat of a matroid together with its projective span.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatroidFlat {
    pub members: PointSet,
    pub span: Flat,
}

impl PartialEq for EmbeddedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field()
            && self.space.rank() == other.space.rank()
            && self.green == other.green
    }
}

impl Eq for EmbeddedMatroid {}

impl std::hash::Hash for EmbeddedMatroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field().hash(state);
        self.space.rank().hash(state);
        self.green.hash(state);
    }
}

impl fmt::Debug for EmbeddedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} green {{{}}}", self.space, self.green)
    }
}

impl EmbeddedMatroid {
    pub fn new(space: Arc<PointSpace>, green: PointSet) -> Self {
        assert_eq!(
            green.universe(),
            space.len(),
            "green set sized for another space"
        );
        EmbeddedMatroid { space, green }
    }

    pub fn from_indices(space: Arc<PointSpace>, indices: impl IntoIterator<Item = usize>) -> Self {
        let green = PointSet::from_indices(space.len(), indices);
        EmbeddedMatroid { space, green }
    }

    /// The empty matroid U(0,0) in PG(-1, q).
    pub fn empty(q: FieldOrder) -> Self {
        let space = PointSpace::get(q, 0).expect("rank 0 is within the cap");
        let green = space.empty_set();
        EmbeddedMatroid { space, green }
    }

    /// The whole geometry PG(rank-1, q).
    pub fn projective_geometry(q: FieldOrder, rank: usize) -> Result<Self> {
        let space = PointSpace::get(q, rank)?;
        let green = space.full_set();
        Ok(EmbeddedMatroid { space, green })
    }

    /// Builds the matroid whose points are the spans of `vectors` inside
    /// PG(ambient-1, q). Vectors must be nonzero and pairwise non-parallel.
    pub fn from_vectors(q: FieldOrder, ambient: usize, vectors: &[GfVec]) -> Result<Self> {
        let space = PointSpace::get(q, ambient)?;
        let mut green = space.empty_set();
        for (i, v) in vectors.iter().enumerate() {
            if v.is_zero() {
                return Err(Error::Simplicity(format!("vector {i} is zero")));
            }
            if v.support() >> ambient != 0 {
                return Err(Error::domain(format!(
                    "vector {i} has a nonzero coordinate beyond rank {ambient}"
                )));
            }
            let p = space.index_of(*v);
            if green.contains(p) {
                return Err(Error::Simplicity(format!(
                    "vector {i} is parallel to an earlier vector"
                )));
            }
            green.insert(p);
        }
        Ok(EmbeddedMatroid { space, green })
    }

    pub fn space(&self) -> &Arc<PointSpace> {
        &self.space
    }

    pub fn field(&self) -> FieldOrder {
        self.space.field()
    }

    pub fn ambient_rank(&self) -> usize {
        self.space.rank()
    }

    pub fn green(&self) -> &PointSet {
        &self.green
    }

    pub fn red(&self) -> PointSet {
        self.green.complement()
    }

    pub fn len(&self) -> usize {
        self.green.len()
    }

    pub fn is_empty(&self) -> bool {
        self.green.is_empty()
    }

    pub fn vectors(&self, s: &PointSet) -> Vec<GfVec> {
        self.space.vectors(s)
    }

    pub fn rank(&self) -> usize {
        self.space.rank_of(&self.green)
    }

    /// Rank of a set of points of the ambient space.
    pub fn rank_of(&self, s: &PointSet) -> usize {
        self.space.rank_of(s)
    }

    /// The same point set viewed as a restriction with a different ground set.
    pub fn restrict(&self, s: &PointSet) -> EmbeddedMatroid {
        EmbeddedMatroid {
            space: self.space.clone(),
            green: s.clone(),
        }
    }

    /// The red points as a matroid in the same ambient space.
    pub fn red_matroid(&self) -> EmbeddedMatroid {
        self.restrict(&self.red())
    }

    /// Matroid closure of `s` (which need not consist of green points).
    pub fn closure_of(&self, s: &PointSet) -> PointSet {
        self.space.closure(s).members.intersection(&self.green)
    }

    pub fn is_flat(&self, s: &PointSet) -> bool {
        s.is_subset(&self.green) && self.closure_of(s) == *s
    }

    /// All flats of the matroid, sorted by rank and then by member set.
    pub fn flats(&self) -> Vec<MatroidFlat> {
        let mut by_rank: Vec<BTreeMap<PointSet, Flat>> = Vec::new();
        let bottom = self.space.closure(&self.space.empty_set());
        let mut level = BTreeMap::new();
        level.insert(self.space.empty_set(), bottom);
        while !level.is_empty() {
            let mut next = BTreeMap::new();
            for (members, span) in &level {
                for x in self.green.difference(&span.members).iter() {
                    let mut s = members.clone();
                    s.insert(x);
                    let up = self.space.closure(&s);
                    let m = up.members.intersection(&self.green);
                    next.entry(m).or_insert(up);
                }
            }
            by_rank.push(level);
            level = next;
        }
        by_rank
            .into_iter()
            .flat_map(|l| l.into_iter())
            .map(|(members, span)| MatroidFlat { members, span })
            .collect()
    }

    /// Connected components of the restriction to `s`, ordered by least member.
    pub fn components(&self, s: &PointSet) -> Vec<PointSet> {
        let members = s.to_vec();
        let labels = component_labels(&self.space.vectors(s), self.field());
        let mut blocks: BTreeMap<usize, PointSet> = BTreeMap::new();
        for (pos, &label) in labels.iter().enumerate() {
            blocks
                .entry(label)
                .or_insert_with(|| self.space.empty_set())
                .insert(members[pos]);
        }
        blocks.into_values().collect()
    }

    /// Whether the restriction to `s` is connected; sets with at most one
    /// element are connected.
    pub fn is_connected_set(&self, s: &PointSet) -> bool {
        crate::field::is_connected_vectors(&self.space.vectors(s), self.field())
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(&self.green)
    }

    /// Least k admitting a vertical k-separation of the restriction to `s`,
    /// or `None` when no vertical separation exists.
    pub fn min_vertical_separation(&self, s: &PointSet) -> Result<Option<usize>> {
        Error::check_cap(
            "set size for vertical connectivity",
            s.len(),
            BRUTE_FORCE_CAP,
        )?;
        let vecs = self.space.vectors(s);
        Ok(min_vertical_separation_of(&vecs, self.field()))
    }

    /// Vertical connectivity of the restriction to `s`: the least k with a
    /// vertical k-separation, r(s) if there is none, and 0 for the empty set.
    pub fn vertical_connectivity(&self, s: &PointSet) -> Result<usize> {
        if s.is_empty() {
            return Ok(0);
        }
        Ok(self
            .min_vertical_separation(s)?
            .unwrap_or_else(|| self.rank_of(s)))
    }

    /// All circuits of the restriction to `s` with at most `size_cap` elements.
    pub fn circuits(&self, s: &PointSet, size_cap: usize) -> Result<Vec<PointSet>> {
        Error::check_cap("set size for circuit enumeration", s.len(), BRUTE_FORCE_CAP)?;
        let members = s.to_vec();
        let vecs = self.space.vectors(s);
        let q = self.field();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        circuit_search(&vecs, q, 0, size_cap, &mut chosen, &mut |c| {
            out.push(PointSet::from_indices(
                self.space.len(),
                c.iter().map(|&i| members[i]),
            ));
        });
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(out)
    }

    /// Re-embeds the green points into PG(r-1, q) where r is the rank.
    ///
    /// Returns the new matroid and, for each of its green points, the index
    /// of the original point it came from.
    pub fn reembed(&self) -> (EmbeddedMatroid, Vec<(usize, usize)>) {
        let q = self.field();
        let mut e = Echelon::new(q);
        for i in self.green.iter() {
            e.insert(self.space.point(i));
        }
        let k = e.rank();
        let space = PointSpace::get(q, k).expect("rank never exceeds the ambient rank");
        let mut green = space.empty_set();
        let mut origin = Vec::with_capacity(self.green.len());
        for i in self.green.iter() {
            let c = e
                .coordinates(self.space.point(i))
                .expect("point lies in span");
            let j = space.index_of(c);
            green.insert(j);
            origin.push((j, i));
        }
        origin.sort();
        (EmbeddedMatroid { space, green }, origin)
    }

    /// The (GF(q), t)-complement.
    pub fn complement(&self, t: usize) -> Result<EmbeddedMatroid> {
        let r = self.rank();
        if t < r {
            return Err(Error::domain(format!(
                "complement rank {t} is below the matroid rank {r}"
            )));
        }
        if t == self.ambient_rank() {
            return Ok(self.red_matroid());
        }
        let (m, _) = self.reembed();
        let space = PointSpace::get(self.field(), t)?;
        // the reembedded vectors live in the first r coordinates
        let green = PointSet::from_indices(
            space.len(),
            m.green.iter().map(|i| space.index_of(m.space.point(i))),
        );
        Ok(EmbeddedMatroid {
            green: green.complement(),
            space,
        })
    }

    /// The complement inside PG(r(M)-1, q).
    pub fn complement_default(&self) -> EmbeddedMatroid {
        self.complement(self.rank())
            .expect("own rank is always allowed")
    }

    pub fn direct_sum(&self, other: &EmbeddedMatroid) -> Result<EmbeddedMatroid> {
        if self.field() != other.field() {
            return Err(Error::domain(
                "direct sum of matroids over different fields",
            ));
        }
        let (a, _) = self.reembed();
        let (b, _) = other.reembed();
        let (ka, kb) = (a.ambient_rank(), b.ambient_rank());
        Error::check_cap("projective rank", ka + kb, MAX_SPACE_RANK)?;
        let mut vecs: Vec<GfVec> = a.vectors(&a.green);
        vecs.extend(b.vectors(&b.green).into_iter().map(|v| v.shift_up(ka)));
        EmbeddedMatroid::from_vectors(self.field(), ka + kb, &vecs)
    }

    /// Contracts the green point `e` and simplifies, landing in PG(r-2, q).
    pub fn si_contract(&self, e: usize) -> Result<EmbeddedMatroid> {
        if !self.green.contains(e) {
            return Err(Error::domain(format!(
                "point {e} is not an element of the matroid"
            )));
        }
        let (m, origin) = self.reembed();
        let e_new = origin
            .iter()
            .find(|&&(_, old)| old == e)
            .map(|&(new, _)| new)
            .expect("every element has an image");
        let q = self.field();
        let k = m.ambient_rank();
        let ve = m.space.point(e_new);
        let p = ve.leading().expect("points are nonzero");
        let space = PointSpace::get(q, k - 1)?;
        let mut green = space.empty_set();
        for i in m.green.iter() {
            if i == e_new {
                continue;
            }
            let v = m.space.point(i);
            let w = v.sub_scaled(ve, v.get(p), q).drop_coord(p);
            // w is nonzero because the matroid is simple
            green.insert(space.index_of(w));
        }
        Ok(EmbeddedMatroid { space, green })
    }

    /// The restriction to a flat, re-embedded in the flat's projective span.
    pub fn restrict_to_flat(&self, members: &PointSet) -> Result<EmbeddedMatroid> {
        if !self.is_flat(members) {
            return Err(Error::domain("the given set is not a flat of the matroid"));
        }
        Ok(self.restrict(members).reembed().0)
    }

    /// The hyperplanes of the matroid: flats of rank r(M) - 1.
    pub fn hyperplanes(&self) -> Vec<PointSet> {
        let (m, origin) = self.reembed();
        let k = m.ambient_rank();
        if k == 0 {
            return Vec::new();
        }
        let q = self.field();
        let elems: Vec<(GfVec, usize)> = origin
            .iter()
            .map(|&(new, old)| (m.space.point(new), old))
            .collect();
        let mut out = Vec::new();
        for a in m.space.points() {
            let mut e = Echelon::new(q);
            let mut h = self.space.empty_set();
            for &(v, old) in &elems {
                if v.dot(a, q) == 0 {
                    e.insert_untracked(v);
                    h.insert(old);
                }
            }
            if e.rank() == k - 1 {
                out.push(h);
            }
        }
        out.sort();
        out
    }

    pub fn connected_hyperplanes(&self) -> Vec<PointSet> {
        self.hyperplanes()
            .into_iter()
            .filter(|h| self.is_connected_set(h))
            .collect()
    }

    /// Size of a smallest cocircuit; 0 for the empty matroid.
    pub fn cocircuits_min_size(&self) -> usize {
        self.hyperplanes()
            .iter()
            .map(|h| self.len() - h.len())
            .min()
            .unwrap_or(0)
    }

    /// Classes of the relation "e = f or {e, f} is a cocircuit".
    pub fn series_classes(&self) -> Vec<PointSet> {
        let members = self.green.to_vec();
        let pos = |x: usize| members.binary_search(&x).unwrap();
        let mut parent: Vec<usize> = (0..members.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        for h in self.hyperplanes() {
            let co = self.green.difference(&h);
            if co.len() == 2 {
                let v = co.to_vec();
                let (a, b) = (root(&mut parent, pos(v[0])), root(&mut parent, pos(v[1])));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: BTreeMap<usize, PointSet> = BTreeMap::new();
        for (i, &x) in members.iter().enumerate() {
            let r = root(&mut parent, i);
            blocks
                .entry(r)
                .or_insert_with(|| self.space.empty_set())
                .insert(x);
        }
        blocks.into_values().collect()
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        let mut rest = self.green.clone();
        rest.remove(e);
        self.green.contains(e) && self.rank_of(&rest) < self.rank()
    }

    /// Whether `e` is a non-coloop lying only in spanning circuits.
    pub fn is_free_element(&self, e: usize) -> Result<bool> {
        if !self.green.contains(e) {
            return Err(Error::domain(format!(
                "point {e} is not an element of the matroid"
            )));
        }
        if self.is_coloop(e) {
            return Ok(false);
        }
        // a non-spanning circuit through e sits inside a hyperplane where e
        // is not a coloop
        for h in self.hyperplanes() {
            if h.contains(e) {
                let mut rest = h.clone();
                rest.remove(e);
                if self.rank_of(&rest) == self.rank_of(&h) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Image under an invertible linear map of the ambient space.
    pub fn transform(&self, map: &LinearMap) -> EmbeddedMatroid {
        assert_eq!(map.rank(), self.ambient_rank());
        let green = PointSet::from_indices(
            self.space.len(),
            self.green
                .iter()
                .map(|i| self.space.index_of(map.apply(self.space.point(i)))),
        );
        EmbeddedMatroid {
            space: self.space.clone(),
            green,
        }
    }
}

/// Searches for circuits among `vecs`, extending `chosen` with indices at
/// least `start`. Only independent partial sets are extended.
fn circuit_search(
    vecs: &[GfVec],
    q: FieldOrder,
    start: usize,
    cap: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for i in start..vecs.len() {
        chosen.push(i);
        let mut e = Echelon::new(q);
        let mut independent = true;
        let mut coeffs = GfVec::ZERO;
        for &c in chosen.iter() {
            match e.insert(vecs[c]) {
                Insert::Independent { .. } => {}
                Insert::Dependent { coefficients } => {
                    independent = false;
                    coeffs = coefficients;
                }
            }
        }
        if independent {
            if chosen.len() < cap {
                circuit_search(vecs, q, i + 1, cap, chosen, emit);
            }
        } else if coeffs.support().count_ones() as usize == chosen.len() - 1 {
            // the dependency uses every earlier element, so the set is minimal
            emit(chosen);
        }
        chosen.pop();
    }
}

/// Least k admitting a vertical k-separation of the vectors, if any.
pub(crate) fn min_vertical_separation_of(vecs: &[GfVec], q: FieldOrder) -> Option<usize> {
    let n = vecs.len();
    if n < 2 {
        return None;
    }
    let total = crate::field::rank_of_vectors(vecs.iter().copied(), q);
    let rank_mask = |mask: u64| {
        let mut e = Echelon::new(q);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            e.insert_untracked(vecs[i]);
        }
        e.rank()
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<usize> = None;
    // element 0 always sits on side A
    let rest = all & !1;
    let mut sub = rest;
    loop {
        let a = sub | 1;
        let b = all & !a;
        if b != 0 {
            let (ra, rb) = (rank_mask(a), rank_mask(b));
            let k = ra + rb - total + 1;
            if k <= ra.min(rb) && best.is_none_or(|x| k < x) {
                best = Some(k);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    best
}

/// An invertible linear map of GF(q)^r, stored by the images of unit vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    q: FieldOrder,
    images: Vec<GfVec>,
}

impl LinearMap {
    pub fn new(q: FieldOrder, images: Vec<GfVec>) -> Result<Self> {
        let r = images.len();
        if crate::field::rank_of_vectors(images.iter().copied(), q) != r
            || images.iter().any(|v| v.support() >> r != 0)
        {
            return Err(Error::domain("linear map is not invertible"));
        }
        Ok(LinearMap { q, images })
    }

    pub fn identity(q: FieldOrder, r: usize) -> Self {
        LinearMap {
            q,
            images: (0..r).map(GfVec::unit).collect(),
        }
    }

    pub fn random(q: FieldOrder, r: usize, rng: &mut impl Rng) -> Self {
        let qq = q.q() as u8;
        loop {
            let images: Vec<GfVec> = (0..r)
                .map(|_| {
                    let coords: Vec<u8> = (0..r).map(|_| rng.gen_range(0..qq)).collect();
                    GfVec::from_coords(&coords)
                })
                .collect();
            if let Ok(m) = LinearMap::new(q, images) {
                return m;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: GfVec) -> GfVec {
        let mut out = GfVec::ZERO;
        for (j, img) in self.images.iter().enumerate() {
            out = out.add(img.scale(v.get(j), self.q), self.q);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(q: u32, rank: usize, cols: &[&[u8]]) -> EmbeddedMatroid {
        let q = FieldOrder::new(q).unwrap();
        let vecs: Vec<GfVec> = cols.iter().map(|c| GfVec::from_coords(c)).collect();
        EmbeddedMatroid::from_vectors(q, rank, &vecs).unwrap()
    }

    fn circuit(q: u32, k: usize) -> EmbeddedMatroid {
        let r = k - 1;
        let mut cols: Vec<Vec<u8>> = (0..r)
            .map(|i| (0..r).map(|j| (i == j) as u8).collect())
            .collect();
        cols.push(vec![1; r]);
        let refs: Vec<&[u8]> = cols.iter().map(|c| c.as_slice()).collect();
        m(q, r, &refs)
    }

    #[test]
    fn flats_of_small_matroids() {
        let line = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(line.flats().len(), 5);
        let ag = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(ag.flats().len(), 12);
        let f7 = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        assert_eq!(f7.flats().len(), 16);
    }

    #[test]
    fn components_examples() {
        let two = m(2, 2, &[&[1, 0], &[0, 1]]);
        assert_eq!(two.components(two.green()).len(), 2);
        let mixed = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let mut sizes: Vec<usize> = mixed
            .components(mixed.green())
            .iter()
            .map(|c| c.len())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
    }

    #[test]
    fn vertical_connectivity_examples() {
        let u33 = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(u33.vertical_connectivity(u33.green()).unwrap(), 1);
        let f7 = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        assert_eq!(f7.vertical_connectivity(f7.green()).unwrap(), 3);
        assert_eq!(
            f7.vertical_connectivity(&f7.space().empty_set()).unwrap(),
            0
        );
        let mixed = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let red = mixed.red();
        assert_eq!(mixed.vertical_connectivity(mixed.green()).unwrap(), 1);
        assert_eq!(mixed.vertical_connectivity(&red).unwrap(), 1);
    }

    #[test]
    fn circuits_examples() {
        let ind = m(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(ind.circuits(ind.green(), 5).unwrap().is_empty());
        let line = m(2, 3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        assert_eq!(line.circuits(line.green(), 3).unwrap().len(), 1);
        let f7 = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        let cs = f7.circuits(f7.green(), 7).unwrap();
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 7);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 7);
        assert_eq!(cs.len(), 14);
    }

    #[test]
    fn cocircuit_and_series_examples() {
        let u23 = m(2, 2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(u23.cocircuits_min_size(), 2);
        let f7 = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        assert_eq!(f7.cocircuits_min_size(), 4);
        assert_eq!(f7.series_classes().len(), 7);
        let c5 = circuit(2, 5);
        assert_eq!(c5.series_classes().len(), 1);
        for e in c5.green().iter() {
            assert!(c5.is_free_element(e).unwrap());
        }
    }

    #[test]
    fn free_elements_of_u24() {
        let u24 = m(3, 2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        for e in u24.green().iter() {
            assert!(u24.is_free_element(e).unwrap());
        }
        assert!(u24.is_free_element(3).is_err() || u24.green().contains(3));
    }

    #[test]
    fn complement_examples() {
        let empty = EmbeddedMatroid::empty(FieldOrder::Two);
        let pg = empty.complement(3).unwrap();
        assert_eq!(pg.len(), 7);
        let c6 = circuit(2, 6);
        let cc = c6.complement_default();
        assert_eq!(cc.len(), 31 - 6);
        assert_eq!(cc.complement_default(), c6);
        assert!(c6.complement(4).is_err());
        let padded = c6.complement(6).unwrap();
        assert_eq!(padded.len(), 63 - 6);
    }

    #[test]
    fn direct_sum_and_contraction() {
        let f7 = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        let pt = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 1).unwrap();
        let s = f7.direct_sum(&pt).unwrap();
        assert_eq!((s.len(), s.rank()), (8, 4));
        assert_eq!(s.components(s.green()).len(), 2);

        let c4 = circuit(2, 4);
        let e = c4.green().first().unwrap();
        let t = c4.si_contract(e).unwrap();
        assert_eq!((t.len(), t.rank()), (3, 2));

        let pg = EmbeddedMatroid::projective_geometry(FieldOrder::Three, 3).unwrap();
        let c = pg.si_contract(4).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn restriction_to_hyperplane_of_pg32() {
        let pg = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 4).unwrap();
        let h = pg.hyperplanes()[0].clone();
        let f = pg.restrict_to_flat(&h).unwrap();
        assert_eq!(f.ambient_rank(), 3);
        assert_eq!(f.len(), 7);
        let bad = PointSet::from_indices(15, [0, 1]);
        assert!(pg.restrict_to_flat(&bad).is_err());
    }

    #[test]
    fn linear_maps_preserve_size_and_rank() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let c5 = circuit(3, 5);
        for _ in 0..20 {
            let map = LinearMap::random(FieldOrder::Three, 4, &mut rng);
            let t = c5.transform(&map);
            assert_eq!(t.len(), 5);
            assert_eq!(t.rank(), 4);
            assert!(t.is_connected());
        }
    }
}
