//! The projective geometry PG(r-1, q) as an indexed point list.
//!
//! Points are normalized nonzero vectors (first nonzero coordinate 1) sorted
//! lexicographically with coordinate 0 most significant.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Echelon, FieldOrder, GfVec};
use crate::pointset::PointSet;

/// Largest projective rank (number of coordinates) a space may have.
pub const MAX_SPACE_RANK: usize = 8;

/// A flat of a projective space: a point set closed under span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub members: PointSet,
    pub rank: usize,
}

pub struct PointSpace {
    q: FieldOrder,
    rank: usize,
    points: Vec<GfVec>,
    flats: Vec<OnceLock<Vec<Flat>>>,
}

impl std::fmt::Debug for PointSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PG({}, {})", self.rank as isize - 1, self.q.q())
    }
}

type SpaceCache = Mutex<HashMap<(FieldOrder, usize), Arc<PointSpace>>>;

fn cache() -> &'static SpaceCache {
    static CACHE: OnceLock<SpaceCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl PointSpace {
    /// The shared instance of PG(rank-1, q).
    pub fn get(q: FieldOrder, rank: usize) -> Result<Arc<PointSpace>> {
        Error::check_cap("projective rank", rank, MAX_SPACE_RANK)?;
        let mut cache = cache().lock().unwrap();
        Ok(cache
            .entry((q, rank))
            .or_insert_with(|| Arc::new(PointSpace::build(q, rank)))
            .clone())
    }

    /// Same as [`PointSpace::get`] with the field given by its order.
    pub fn enumerate(rank: usize, q: u32) -> Result<Arc<PointSpace>> {
        PointSpace::get(FieldOrder::new(q)?, rank)
    }

    fn build(q: FieldOrder, rank: usize) -> PointSpace {
        let n = q.projective_points(rank);
        let qq = q.q() as usize;
        let mut points = Vec::with_capacity(n);
        // leading coordinate at position i, from the last position to the first
        for lead in (0..rank).rev() {
            let tail = rank - lead - 1;
            for value in 0..qq.pow(tail as u32) {
                let mut v = GfVec::unit(lead);
                let mut x = value;
                for pos in (lead + 1..rank).rev() {
                    v.set(pos, (x % qq) as u8);
                    x /= qq;
                }
                points.push(v);
            }
        }
        debug_assert_eq!(points.len(), n);
        PointSpace {
            q,
            rank,
            points,
            flats: (0..=rank).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn field(&self) -> FieldOrder {
        self.q
    }

    /// Number of coordinates, i.e. the rank of the geometry.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> GfVec {
        self.points[i]
    }

    pub fn points(&self) -> &[GfVec] {
        &self.points
    }

    pub fn coords(&self, i: usize) -> Vec<u8> {
        self.points[i].coords(self.rank)
    }

    /// Index of the point spanned by the nonzero vector `v`.
    pub fn index_of(&self, v: GfVec) -> usize {
        let v = v.normalized(self.q);
        let lead = v.leading().expect("zero vector has no projective point");
        debug_assert!(lead < self.rank);
        let qq = self.q.q() as usize;
        let tail = self.rank - lead - 1;
        let mut value = 0usize;
        for pos in lead + 1..self.rank {
            value = value * qq + v.get(pos) as usize;
        }
        (qq.pow(tail as u32) - 1) / (qq - 1) + value
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// The points other than `a` and `b` on the line through them.
    pub fn third_points(&self, a: usize, b: usize) -> smallvec::SmallVec<[usize; 2]> {
        let (va, vb) = (self.points[a], self.points[b]);
        let mut out = smallvec::SmallVec::new();
        out.push(self.index_of(va.add(vb, self.q)));
        if self.q == FieldOrder::Three {
            out.push(self.index_of(va.sub(vb, self.q)));
        }
        out
    }

    pub fn vectors(&self, s: &PointSet) -> Vec<GfVec> {
        s.iter().map(|i| self.points[i]).collect()
    }

    pub fn rank_of(&self, s: &PointSet) -> usize {
        let mut e = Echelon::new(self.q);
        for i in s.iter() {
            e.insert_untracked(self.points[i]);
            if e.rank() == self.rank {
                break;
            }
        }
        e.rank()
    }

    /// All points in the span of the given basis rows.
    pub(crate) fn span_members(&self, rows: &[GfVec]) -> PointSet {
        let mut out = self.empty_set();
        let k = rows.len();
        let qq = self.q.q() as usize;
        // combinations whose first nonzero coefficient is 1 hit each point once
        for first in 0..k {
            let tail = k - first - 1;
            for value in 0..qq.pow(tail as u32) {
                let mut v = rows[first];
                let mut x = value;
                for row in &rows[first + 1..] {
                    let c = (x % qq) as u8;
                    x /= qq;
                    v = v.add(row.scale(c, self.q), self.q);
                }
                out.insert(self.index_of(v));
            }
        }
        out
    }

    pub fn closure(&self, s: &PointSet) -> Flat {
        let mut e = Echelon::new(self.q);
        for i in s.iter() {
            e.insert_untracked(self.points[i]);
        }
        let rows = e.reduced_rows();
        Flat {
            members: self.span_members(&rows),
            rank: rows.len(),
        }
    }

    /// Every rank-`k` flat, sorted by member set.
    pub fn flats(&self, k: usize) -> &[Flat] {
        assert!(
            k <= self.rank,
            "flat rank {k} exceeds space rank {}",
            self.rank
        );
        self.flats[k].get_or_init(|| self.build_flats(k))
    }

    /// All flats of every rank from 0 to the rank of the space.
    pub fn all_flats(&self) -> impl Iterator<Item = &Flat> {
        (0..=self.rank).flat_map(move |k| self.flats(k).iter())
    }

    fn build_flats(&self, k: usize) -> Vec<Flat> {
        let mut out = Vec::new();
        let mut pivots = Vec::with_capacity(k);
        self.pivot_sets(k, 0, &mut pivots, &mut out);
        out.sort();
        out
    }

    fn pivot_sets(&self, k: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Flat>) {
        if pivots.len() == k {
            self.rref_fill(pivots, &mut Vec::with_capacity(k), out);
            return;
        }
        for p in start..self.rank {
            pivots.push(p);
            self.pivot_sets(k, p + 1, pivots, out);
            pivots.pop();
        }
    }

    /// Enumerates reduced row echelon matrices with the given pivot columns.
    fn rref_fill(&self, pivots: &[usize], rows: &mut Vec<GfVec>, out: &mut Vec<Flat>) {
        let i = rows.len();
        if i == pivots.len() {
            out.push(Flat {
                members: self.span_members(rows),
                rank: rows.len(),
            });
            return;
        }
        let free: Vec<usize> = (pivots[i] + 1..self.rank)
            .filter(|c| !pivots.contains(c))
            .collect();
        let qq = self.q.q() as usize;
        for value in 0..qq.pow(free.len() as u32) {
            let mut row = GfVec::unit(pivots[i]);
            let mut x = value;
            for &c in &free {
                row.set(c, (x % qq) as u8);
                x /= qq;
            }
            rows.push(row);
            self.rref_fill(pivots, rows, out);
            rows.pop();
        }
    }

    pub fn hyperplanes(&self) -> &[Flat] {
        self.flats(self.rank.saturating_sub(1))
    }
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(PointSpace::enumerate(3, 2).unwrap().len(), 7);
        assert_eq!(PointSpace::enumerate(5, 2).unwrap().len(), 31);
        assert_eq!(PointSpace::enumerate(3, 3).unwrap().len(), 13);
        assert_eq!(PointSpace::enumerate(0, 2).unwrap().len(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            PointSpace::enumerate(9, 2),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            PointSpace::enumerate(3, 5),
            Err(Error::UnsupportedField(5))
        ));
    }

    #[test]
    fn points_are_in_lexicographic_order() {
        for (q, r) in [(2, 4), (3, 3), (3, 4)] {
            let s = PointSpace::enumerate(r, q).unwrap();
            let coords: Vec<Vec<u8>> = (0..s.len()).map(|i| s.coords(i)).collect();
            assert!(coords.windows(2).all(|w| w[0] < w[1]));
            for (i, &p) in s.points().iter().enumerate() {
                assert_eq!(s.index_of(p), i);
                assert_eq!(s.index_of(p.neg(s.field())), i);
            }
        }
        let s = PointSpace::enumerate(3, 2).unwrap();
        assert_eq!(s.coords(0), vec![0, 0, 1]);
        assert_eq!(s.coords(3), vec![1, 0, 0]);
        assert_eq!(s.coords(6), vec![1, 1, 1]);
    }

    #[test]
    fn rank_and_closure_examples() {
        let s = PointSpace::enumerate(5, 2).unwrap();
        assert_eq!(s.rank_of(&s.empty_set()), 0);
        assert_eq!(s.rank_of(&s.full_set()), 5);

        let t = PointSpace::enumerate(3, 3).unwrap();
        let line = t.closure(&PointSet::from_indices(13, [0, 1]));
        assert_eq!(line.members.len(), 4);
        assert_eq!(line.rank, 2);
        assert_eq!(t.rank_of(&line.members), 2);

        let u = PointSpace::enumerate(4, 2).unwrap();
        let p = u.closure(&PointSet::from_indices(15, [5]));
        assert_eq!(p.members.to_vec(), vec![5]);
        let basis: Vec<usize> = (0..4).map(|i| u.index_of(GfVec::unit(i))).collect();
        assert_eq!(
            u.closure(&PointSet::from_indices(15, basis)).members.len(),
            15
        );
    }

    #[test]
    fn flat_counts_are_gaussian_binomials() {
        for q in [2u32, 3] {
            for r in 0..=5 {
                let s = PointSpace::enumerate(r, q).unwrap();
                for k in 0..=r {
                    let flats = s.flats(k);
                    assert_eq!(flats.len() as u64, gaussian_binomial(r, k, q as u64));
                    let expected = FieldOrder::new(q).unwrap().projective_points(k);
                    assert!(flats
                        .iter()
                        .all(|f| f.members.len() == expected && f.rank == k));
                    assert!(flats.windows(2).all(|w| w[0] < w[1]));
                }
                if r > 0 {
                    assert_eq!(s.hyperplanes().len(), s.len());
                }
            }
        }
    }

    #[test]
    fn lines_of_pg23_match_closed_pairs() {
        let s = PointSpace::enumerate(3, 3).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..13 {
            for b in a + 1..13 {
                seen.insert(s.closure(&PointSet::from_indices(13, [a, b])).members);
            }
        }
        let lines: Vec<PointSet> = s.flats(2).iter().map(|f| f.members.clone()).collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines, seen.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn third_points_lie_on_the_line() {
        for (q, r) in [(2u32, 4usize), (3, 3)] {
            let s = PointSpace::enumerate(r, q).unwrap();
            for a in 0..s.len() {
                for b in 0..s.len() {
                    if a == b {
                        continue;
                    }
                    let third = s.third_points(a, b);
                    let mut line = PointSet::from_indices(s.len(), [a, b]);
                    for &t in &third {
                        line.insert(t);
                    }
                    assert_eq!(line.len(), q as usize + 1);
                    assert_eq!(s.closure(&line).members, line);
                    let mut back = s.third_points(b, a).to_vec();
                    let mut fwd = third.to_vec();
                    back.sort();
                    fwd.sort();
                    assert_eq!(back, fwd);
                }
            }
        }
    }
}
