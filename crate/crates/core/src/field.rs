//! Arithmetic over GF(2) and GF(3) on short packed vectors.
//!
//! A [`GfVec`] holds up to 32 coordinates. Coordinate `i` lives in bit `i` of
//! two masks: `lo` marks coordinates equal to 1 and `hi` marks coordinates
//! equal to 2. Over GF(2) the `hi` mask is always zero, so addition is a plain
//! XOR.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of coordinates a packed vector can carry.
pub const MAX_COORDS: usize = 32;

/// The order of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldOrder {
    Two,
    Three,
}

impl FieldOrder {
    pub fn new(q: u32) -> Result<Self> {
        match q {
            2 => Ok(FieldOrder::Two),
            3 => Ok(FieldOrder::Three),
            other => Err(Error::UnsupportedField(other)),
        }
    }

    pub fn q(self) -> u32 {
        match self {
            FieldOrder::Two => 2,
            FieldOrder::Three => 3,
        }
    }

    /// Number of points of PG(r-1, q), i.e. (q^r - 1)/(q - 1).
    pub fn projective_points(self, rank: usize) -> usize {
        let q = self.q() as usize;
        (q.pow(rank as u32) - 1) / (q - 1)
    }

    pub(crate) fn inv(self, c: u8) -> u8 {
        debug_assert!(c != 0);
        // 1 and 2 are self-inverse in both fields
        c
    }
}

impl fmt::Display for FieldOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

/// A packed vector over GF(2) or GF(3).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfVec {
    lo: u32,
    hi: u32,
}

impl fmt::Debug for GfVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (32 - self.support().leading_zeros()) as usize;
        write!(f, "GfVec[")?;
        for i in 0..width {
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

impl GfVec {
    pub const ZERO: GfVec = GfVec { lo: 0, hi: 0 };

    pub fn from_coords(coords: &[u8]) -> Self {
        assert!(coords.len() <= MAX_COORDS);
        let mut v = GfVec::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            v.set(i, c);
        }
        v
    }

    pub fn unit(i: usize) -> Self {
        GfVec { lo: 1 << i, hi: 0 }
    }

    pub fn coords(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.get(i)).collect()
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        ((self.lo >> i) & 1) as u8 | ((((self.hi >> i) & 1) as u8) << 1)
    }

    #[inline]
    pub fn set(&mut self, i: usize, c: u8) {
        let bit = 1u32 << i;
        self.lo &= !bit;
        self.hi &= !bit;
        match c {
            0 => {}
            1 => self.lo |= bit,
            2 => self.hi |= bit,
            _ => panic!("coordinate {c} out of range"),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.lo | self.hi == 0
    }

    #[inline]
    pub fn support(&self) -> u32 {
        self.lo | self.hi
    }

    /// Index of the first nonzero coordinate.
    #[inline]
    pub fn leading(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| s.trailing_zeros() as usize)
    }

    #[inline]
    pub fn add(self, other: GfVec, q: FieldOrder) -> GfVec {
        match q {
            FieldOrder::Two => GfVec {
                lo: self.lo ^ other.lo,
                hi: 0,
            },
            FieldOrder::Three => {
                let (a1, a2, b1, b2) = (self.lo, self.hi, other.lo, other.hi);
                let az = !(a1 | a2);
                let bz = !(b1 | b2);
                GfVec {
                    lo: (a1 & bz) | (b1 & az) | (a2 & b2),
                    hi: (a2 & bz) | (b2 & az) | (a1 & b1),
                }
            }
        }
    }

    #[inline]
    pub fn neg(self, q: FieldOrder) -> GfVec {
        match q {
            FieldOrder::Two => self,
            FieldOrder::Three => GfVec {
                lo: self.hi,
                hi: self.lo,
            },
        }
    }

    #[inline]
    pub fn sub(self, other: GfVec, q: FieldOrder) -> GfVec {
        self.add(other.neg(q), q)
    }

    #[inline]
    pub fn scale(self, c: u8, q: FieldOrder) -> GfVec {
        match c % 3 {
            0 => GfVec::ZERO,
            1 => self,
            _ => self.neg(q),
        }
    }

    /// `self - c * other`
    #[inline]
    pub fn sub_scaled(self, other: GfVec, c: u8, q: FieldOrder) -> GfVec {
        match c {
            0 => self,
            1 => self.sub(other, q),
            _ => self.add(other, q),
        }
    }

    /// Scales so the first nonzero coordinate equals 1.
    #[inline]
    pub fn normalized(self, q: FieldOrder) -> GfVec {
        match self.leading() {
            Some(i) if self.get(i) == 2 => self.neg(q),
            _ => self,
        }
    }

    pub fn dot(&self, other: &GfVec, q: FieldOrder) -> u8 {
        match q {
            FieldOrder::Two => ((self.lo & other.lo).count_ones() & 1) as u8,
            FieldOrder::Three => {
                let ones = (self.lo & other.lo).count_ones() + (self.hi & other.hi).count_ones();
                let twos = (self.lo & other.hi).count_ones() + (self.hi & other.lo).count_ones();
                ((ones + 2 * twos) % 3) as u8
            }
        }
    }

    /// Removes coordinate `i`, shifting higher coordinates down by one.
    pub fn drop_coord(self, i: usize) -> GfVec {
        let low = (1u32 << i) - 1;
        let squeeze = |m: u32| (m & low) | ((m >> 1) & !low);
        GfVec {
            lo: squeeze(self.lo),
            hi: squeeze(self.hi),
        }
    }

    /// Shifts every coordinate up by `k` positions.
    pub fn shift_up(self, k: usize) -> GfVec {
        GfVec {
            lo: self.lo << k,
            hi: self.hi << k,
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Row {
    vec: GfVec,
    /// Coefficients of `vec` in terms of the basis elements inserted so far.
    comb: GfVec,
}

/// Incremental row-echelon basis that also tracks how each stored row is
/// expressed in terms of the inserted basis vectors.
///
/// Rows are kept keyed by their pivot, the first nonzero coordinate, and
/// normalized so the pivot entry is 1.
#[derive(Clone)]
pub struct Echelon {
    q: FieldOrder,
    rows: [Row; MAX_COORDS],
    pivots: u32,
    rank: usize,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insert {
    /// The vector was independent and became basis element `index`.
    Independent { index: usize },
    /// The vector is the linear combination with these coefficients on the
    /// basis elements (coordinate `j` is the coefficient of basis element `j`).
    Dependent { coefficients: GfVec },
}

impl Echelon {
    pub fn new(q: FieldOrder) -> Self {
        Echelon {
            q,
            rows: [Row::default(); MAX_COORDS],
            pivots: 0,
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldOrder {
        self.q
    }

    /// Reduces `v` and returns the remainder together with the coefficients
    /// subtracted along the way (on basis elements).
    #[inline]
    fn reduce_tracked(&self, mut v: GfVec) -> (GfVec, GfVec) {
        let q = self.q;
        let mut comb = GfVec::ZERO;
        loop {
            let live = v.support() & self.pivots;
            if live == 0 {
                return (v, comb);
            }
            let p = live.trailing_zeros() as usize;
            let c = v.get(p);
            let row = &self.rows[p];
            v = v.sub_scaled(row.vec, c, q);
            comb = comb.sub_scaled(row.comb.neg(q), c, q);
        }
    }

    #[inline]
    fn reduce(&self, mut v: GfVec) -> GfVec {
        let q = self.q;
        loop {
            let live = v.support() & self.pivots;
            if live == 0 {
                return v;
            }
            let p = live.trailing_zeros() as usize;
            let c = v.get(p);
            v = v.sub_scaled(self.rows[p].vec, c, q);
        }
    }

    pub fn contains(&self, v: GfVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`, returning whether it was independent of the current span.
    #[inline]
    pub fn insert_untracked(&mut self, v: GfVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some(p) => {
                let c = r.get(p);
                self.rows[p] = Row {
                    vec: r.scale(self.q.inv(c), self.q),
                    comb: GfVec::ZERO,
                };
                self.pivots |= 1 << p;
                self.rank += 1;
                true
            }
        }
    }

    /// Inserts `v` with coefficient tracking.
    pub fn insert(&mut self, v: GfVec) -> Insert {
        let q = self.q;
        let (r, comb) = self.reduce_tracked(v);
        match r.leading() {
            None => Insert::Dependent { coefficients: comb },
            Some(p) => {
                let index = self.rank;
                let c = q.inv(r.get(p));
                // r = v - comb.basis = e_index.basis - comb.basis
                let row_comb = GfVec::unit(index).sub(comb, q).scale(c, q);
                self.rows[p] = Row {
                    vec: r.scale(c, q),
                    comb: row_comb,
                };
                self.pivots |= 1 << p;
                self.rank += 1;
                Insert::Independent { index }
            }
        }
    }

    /// Expresses `v` in the inserted basis, if it lies in the span.
    pub fn coordinates(&self, v: GfVec) -> Option<GfVec> {
        let (r, comb) = self.reduce_tracked(v);
        r.is_zero().then_some(comb)
    }

    /// Fully reduced basis of the span, sorted by pivot.
    pub fn reduced_rows(&self) -> Vec<GfVec> {
        let q = self.q;
        let mut rows: Vec<(usize, GfVec)> = (0..MAX_COORDS)
            .filter(|p| self.pivots >> p & 1 == 1)
            .map(|p| (p, self.rows[p].vec))
            .collect();
        for i in (0..rows.len()).rev() {
            let (pi, vi) = rows[i];
            for row in rows.iter_mut().take(i) {
                let c = row.1.get(pi);
                row.1 = row.1.sub_scaled(vi, c, q);
            }
        }
        rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// GF(q)-rank of a list of vectors.
pub fn rank_of_vectors(vectors: impl IntoIterator<Item = GfVec>, q: FieldOrder) -> usize {
    let mut e = Echelon::new(q);
    for v in vectors {
        e.insert_untracked(v);
    }
    e.rank()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Labels the connected components of the matroid on `vectors`.
///
/// Uses the fundamental-circuit graph of a greedy basis: two elements lie in
/// the same component exactly when they are joined in that bipartite graph.
/// Returns one label per input vector; labels are the smallest index in each
/// component. The vectors must be nonzero.
pub fn component_labels(vectors: &[GfVec], q: FieldOrder) -> Vec<usize> {
    let n = vectors.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut basis_elems: Vec<usize> = Vec::new();
    let mut e = Echelon::new(q);
    for (i, &v) in vectors.iter().enumerate() {
        match e.insert(v) {
            Insert::Independent { .. } => basis_elems.push(i),
            Insert::Dependent { coefficients } => {
                let mut s = coefficients.support();
                while s != 0 {
                    let j = s.trailing_zeros() as usize;
                    s &= s - 1;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, basis_elems[j]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut labels = vec![0; n];
    // roots are not necessarily minimal after path halving, so relabel
    let mut min_of_root: Vec<usize> = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        min_of_root[r] = min_of_root[r].min(i);
    }
    for (i, label) in labels.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        *label = min_of_root[r];
    }
    labels
}

/// Whether the matroid on `vectors` is connected. Zero and one element
/// matroids count as connected.
pub fn is_connected_vectors(vectors: &[GfVec], q: FieldOrder) -> bool {
    vectors.len() <= 1 || component_labels(vectors, q).iter().all(|&l| l == 0)
}
