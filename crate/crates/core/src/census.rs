//! Exhaustive and targeted searches over colorings of small projective
//! geometries.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canonical::{canonical_key, CanonicalKey};
use crate::constructions::{self, graph_cycle_matroid, MINIMAL_GRAPHS};
use crate::decide::{decide_flat_criterion, is_comatroid};
use crate::error::{Error, Result};
use crate::field::{is_connected_vectors, rank_of_vectors, Echelon, FieldOrder};
use crate::matroid::EmbeddedMatroid;
use crate::pointset::PointSet;
use crate::space::PointSpace;

/// Largest space for which [`SubsetTable`] precomputes every subset.
pub const TABLE_POINT_CAP: usize = 16;

/// Largest space scanned exhaustively by [`enumerate_colorings`].
pub const EXHAUSTIVE_COLORING_CAP: usize = 15;

/// Thresholds of the rank-5 binary extension scan.
pub const GREEN_HYPERPLANE_LIMIT: u32 = 26;
pub const TOTAL_HYPERPLANE_LIMIT: u32 = 32;

/// Rank and connectivity of every subset of a small space, indexed by bitmask.
pub struct SubsetTable {
    space: Arc<PointSpace>,
    rank: Vec<u8>,
    connected: Vec<bool>,
    /// Projective flats of rank at least one, as bitmasks.
    flats: Vec<u32>,
    proper_flats: usize,
}

impl SubsetTable {
    pub fn new(space: Arc<PointSpace>) -> Result<Self> {
        let n = space.len();
        Error::check_cap("points for a subset table", n, TABLE_POINT_CAP)?;
        let q = space.field();
        let size = 1usize << n;
        let mut rank = vec![0u8; size];
        let mut connected = vec![true; size];
        for mask in 1..size {
            let vecs: Vec<_> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| space.point(i))
                .collect();
            rank[mask] = rank_of_vectors(vecs.iter().copied(), q) as u8;
            connected[mask] = is_connected_vectors(&vecs, q);
        }
        let to_mask = |s: &PointSet| s.to_mask().unwrap() as u32;
        let r = space.rank();
        let mut flats: Vec<u32> = Vec::new();
        for k in 1..r {
            flats.extend(space.flats(k).iter().map(|f| to_mask(&f.members)));
        }
        let proper_flats = flats.len();
        if r >= 1 {
            flats.push(to_mask(&space.full_set()));
        }
        Ok(SubsetTable {
            space,
            rank,
            connected,
            flats,
            proper_flats,
        })
    }

    pub fn space(&self) -> &Arc<PointSpace> {
        &self.space
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.space.len()) - 1) as u32
    }

    pub fn rank(&self, mask: u32) -> usize {
        self.rank[mask as usize] as usize
    }

    pub fn is_connected(&self, mask: u32) -> bool {
        self.connected[mask as usize]
    }

    fn flat_violated(&self, mask: u32, f: u32) -> bool {
        let g = mask & f;
        let r = f & !mask;
        g != 0
            && r != 0
            && self.rank[g as usize] == self.rank[r as usize]
            && self.connected[g as usize]
            && self.connected[r as usize]
    }

    /// Flat criterion over the table.
    pub fn is_comatroid(&self, mask: u32) -> bool {
        !self.flats.iter().any(|&f| self.flat_violated(mask, f))
    }

    /// Whether every restriction to a proper projective flat is a comatroid.
    pub fn proper_flats_comatroid(&self, mask: u32) -> bool {
        self.flats[..self.proper_flats]
            .iter()
            .all(|&f| self.is_comatroid(mask & f))
    }

    /// Rank-r non-comatroid whose proper flat restrictions are all comatroids.
    pub fn is_minimal_non_comatroid(&self, mask: u32) -> bool {
        self.rank(mask) == self.space.rank()
            && !self.is_comatroid(mask)
            && self.proper_flats_comatroid(mask)
    }

    /// Vertical connectivity of the subset, by enumeration of bipartitions.
    pub fn vertical_connectivity(&self, mask: u32) -> usize {
        if mask == 0 {
            return 0;
        }
        let total = self.rank(mask);
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut best = total;
        let mut sub = rest;
        loop {
            let a = sub | low;
            let b = mask & !a;
            if b != 0 {
                let (ra, rb) = (self.rank(a), self.rank(b));
                let k = ra + rb + 1 - total;
                if k <= ra.min(rb) && k < best {
                    best = k;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best
    }
}

/// One isomorphism class (or one coloring, without deduplication).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub key: Option<CanonicalKey>,
    pub green: PointSet,
    pub size: usize,
    pub rank: usize,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub q: FieldOrder,
    pub rank: usize,
    pub filter: String,
    pub classes: Vec<CensusClass>,
    pub scanned: u64,
    pub matched: u64,
    pub elapsed: Duration,
}

impl CensusReport {
    fn index_of_key(&self, key: &CanonicalKey) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.key.as_ref() == Some(key))
    }

    /// Pairs of class indices that are complements of each other in the
    /// ambient space, each listed once with the smaller side first.
    pub fn complement_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let mut pairs = Vec::new();
        for (i, c) in self.classes.iter().enumerate() {
            let space = PointSpace::get(self.q, self.rank)?;
            let m = EmbeddedMatroid::new(space, c.green.complement());
            if let Some(j) = self.index_of_key(&canonical_key(&m)?) {
                let pair = if (c.size, i) <= (self.classes[j].size, j) {
                    (i, j)
                } else {
                    (j, i)
                };
                if !pairs.contains(&pair) {
                    pairs.push(pair);
                }
            }
        }
        pairs.sort();
        Ok(pairs)
    }

    /// Line-oriented report. Timing is left out so reports are reproducible.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space PG({},{})", self.rank.saturating_sub(1), self.q);
        let _ = writeln!(out, "filter {}", self.filter);
        let _ = writeln!(out, "scanned {}", self.scanned);
        let _ = writeln!(out, "matched {}", self.matched);
        let _ = writeln!(out, "classes {}", self.classes.len());
        for c in &self.classes {
            let key = c.key.as_ref().map_or("-".to_string(), |k| k.to_string());
            let _ = writeln!(
                out,
                "class size={} rank={} label={} green={} key={key}",
                c.size, c.rank, c.label, c.green
            );
        }
        out
    }

    /// Tab-separated rows with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("key\tsize\trank\tlabel\n");
        for c in &self.classes {
            let key = c.key.as_ref().map_or("-".to_string(), |k| k.to_string());
            let _ = writeln!(out, "{key}\t{}\t{}\t{}", c.size, c.rank, c.label);
        }
        out
    }
}

/// Named graphs of [`MINIMAL_GRAPHS`] and every other simple graph on five
/// vertices whose cycle matroid has rank 4, keyed canonically.
struct GraphLabels {
    named: HashMap<CanonicalKey, String>,
    other: HashMap<CanonicalKey, String>,
}

fn graph_labels() -> &'static GraphLabels {
    static LABELS: OnceLock<GraphLabels> = OnceLock::new();
    LABELS.get_or_init(|| {
        let key_of = |edges: &[(usize, usize)]| {
            let m = graph_cycle_matroid(edges, FieldOrder::Two)
                .and_then(|p| p.embed())
                .expect("graphs embed")
                .matroid;
            (m.rank() == 4).then(|| canonical_key(&m).expect("rank 4 keys"))
        };
        let mut named = HashMap::new();
        for (name, edges) in MINIMAL_GRAPHS {
            named.insert(
                key_of(edges).expect("named graphs span rank 4"),
                format!("M({name})"),
            );
        }
        let all: Vec<(usize, usize)> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let mut other = HashMap::new();
        for bits in 1u32..1 << all.len() {
            let edges: Vec<_> = (0..all.len())
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            if let Some(key) = key_of(&edges) {
                other.entry(key).or_insert_with(|| {
                    let es: Vec<String> = edges.iter().map(|(u, v)| format!("{u}{v}")).collect();
                    format!("graph[{}]", es.join(" "))
                });
            }
        }
        GraphLabels { named, other }
    })
}

/// Whether the rank-4 binary matroid is the cycle matroid of a simple graph
/// on five vertices.
pub fn is_graphic_on_five_vertices(m: &EmbeddedMatroid) -> Result<bool> {
    if m.field() != FieldOrder::Two || m.rank() != 4 {
        return Ok(false);
    }
    let key = canonical_key(m)?;
    let labels = graph_labels();
    Ok(labels.named.contains_key(&key) || labels.other.contains_key(&key))
}

const TERNARY_RANK3_NAMES: [&str; 7] = [
    "U34@3",
    "P(U23,U23)",
    "U24+2U23",
    "U24+2U24",
    "P(U24,U23)",
    "M(K4)@3",
    "W3",
];

fn ternary_labels() -> Result<HashMap<CanonicalKey, String>> {
    let mut labels = HashMap::new();
    for name in TERNARY_RANK3_NAMES {
        let m = constructions::named(name)?.embed()?.matroid;
        labels.insert(canonical_key(&m.complement(3)?)?, format!("{name}^c"));
        labels.insert(canonical_key(&m)?, name.to_string());
    }
    Ok(labels)
}

fn label_for(
    q: FieldOrder,
    key: &CanonicalKey,
    space: &Arc<PointSpace>,
    green: &PointSet,
) -> Result<String> {
    match q {
        FieldOrder::Two => {
            let labels = graph_labels();
            if let Some(l) = labels.named.get(key) {
                return Ok(l.clone());
            }
            let c = canonical_key(&EmbeddedMatroid::new(space.clone(), green.complement()))?;
            if let Some(l) = labels.named.get(&c) {
                return Ok(format!("{l}^c"));
            }
            Ok(labels
                .other
                .get(key)
                .cloned()
                .unwrap_or_else(|| "non-graphic".to_string()))
        }
        FieldOrder::Three => Ok(ternary_labels()?
            .get(key)
            .cloned()
            .unwrap_or_else(|| "unnamed".to_string())),
    }
}

/// Groups green sets by canonical key, keeping the first set of each class,
/// and sorts the classes by size and key text.
fn classes_of(
    space: &Arc<PointSpace>,
    greens: Vec<PointSet>,
    label: bool,
) -> Result<Vec<CensusClass>> {
    let keyed: Vec<(CanonicalKey, PointSet)> = greens
        .into_par_iter()
        .map(|g| {
            let m = EmbeddedMatroid::new(space.clone(), g.clone());
            canonical_key(&m).map(|k| (k, g))
        })
        .collect::<Result<_>>()?;
    let mut first: BTreeMap<(usize, String), (CanonicalKey, PointSet)> = BTreeMap::new();
    for (k, g) in keyed {
        first.entry((g.len(), k.to_string())).or_insert((k, g));
    }
    let mut out = Vec::new();
    for ((size, _), (key, green)) in first {
        let rank = space.rank_of(&green);
        let label = if label {
            label_for(space.field(), &key, space, &green)?
        } else {
            String::new()
        };
        out.push(CensusClass {
            key: Some(key),
            green,
            size,
            rank,
            label,
        });
    }
    Ok(out)
}

/// Rank-4 ternary family members of the excluded-flat list and their
/// complements: a 5-circuit, a 4-circuit with one U(2,4) attached, and a
/// triangle with two attached.
fn ternary_rank4_candidates() -> Result<Vec<(String, EmbeddedMatroid)>> {
    let mut out = Vec::new();
    for (k, d) in [(5usize, 0usize), (4, 1), (3, 2)] {
        let ds: Vec<usize> = (0..d).collect();
        let m = constructions::circuit_with_u24(k, &ds)?.embed()?.matroid;
        let name = format!("circuit({k})+{d}U24");
        out.push((format!("{name}^c"), m.complement(4)?));
        out.push((name, m));
    }
    Ok(out)
}

/// Minimal non-comatroids of rank `r` over GF(q): colorings that are not
/// comatroids although every proper flat restriction is. Exhaustive for
/// (2,3), (2,4) and (3,3); for (3,4) only the rank-4 members of the
/// ternary excluded families and their complements are examined.
pub fn minimal_non_comatroids(q: FieldOrder, r: usize) -> Result<CensusReport> {
    let start = Instant::now();
    let space = PointSpace::get(q, r)?;
    match (q.q(), r) {
        (2, 3) | (2, 4) | (3, 3) => {
            let table = SubsetTable::new(space.clone())?;
            let n = space.len();
            let found: Vec<u32> = (0..table.full_mask() + 1)
                .into_par_iter()
                .filter(|&m| table.is_minimal_non_comatroid(m))
                .collect();
            let mut greens = Vec::new();
            for m in &found {
                let g = PointSet::from_mask(n, *m as u64);
                // the table is itself a flat-criterion scan, so cross-check it
                let v = decide_flat_criterion(&EmbeddedMatroid::new(space.clone(), g.clone()))?;
                if v.is_comatroid {
                    return Err(Error::domain(
                        "subset table disagrees with the flat criterion",
                    ));
                }
                greens.push(g);
            }
            Ok(CensusReport {
                q,
                rank: r,
                filter: "minimal-non-comatroid".into(),
                classes: classes_of(&space, greens, true)?,
                scanned: 1u64 << n,
                matched: found.len() as u64,
                elapsed: start.elapsed(),
            })
        }
        (3, 4) => {
            let candidates = ternary_rank4_candidates()?;
            let mut classes = Vec::new();
            for (name, m) in &candidates {
                let m = m.reembed().0;
                let minimal = !is_comatroid(&m)?
                    && space
                        .all_flats()
                        .filter(|f| f.rank >= 1 && f.rank < r)
                        .try_fold(true, |acc, f| -> Result<bool> {
                            Ok(acc
                                && is_comatroid(&m.restrict(&f.members.intersection(m.green())))?)
                        })?;
                if minimal {
                    classes.push(CensusClass {
                        key: Some(canonical_key(&m)?),
                        green: m.green().clone(),
                        size: m.len(),
                        rank: m.rank(),
                        label: name.clone(),
                    });
                }
            }
            Ok(CensusReport {
                q,
                rank: r,
                filter: "minimal-non-comatroid (excluded families only)".into(),
                matched: classes.len() as u64,
                classes,
                scanned: candidates.len() as u64,
                elapsed: start.elapsed(),
            })
        }
        _ => Err(Error::domain(format!(
            "minimal census is available for (q,r) in (2,3), (2,4), (3,3), (3,4); got ({q},{r})"
        ))),
    }
}

type Predicate = Box<dyn Fn(&EmbeddedMatroid) -> Result<bool> + Send + Sync>;

/// A named predicate on colorings.
pub struct ColoringFilter {
    name: String,
    pred: Predicate,
}

impl ColoringFilter {
    pub fn new(
        name: impl Into<String>,
        pred: impl Fn(&EmbeddedMatroid) -> Result<bool> + Send + Sync + 'static,
    ) -> Self {
        ColoringFilter {
            name: name.into(),
            pred: Box::new(pred),
        }
    }

    pub const NAMES: [&'static str; 8] = [
        "all",
        "comatroid",
        "non-comatroid",
        "minimal-non-comatroid",
        "both-connected-spanning",
        "neither-connected-spanning",
        "vertical-deficit",
        "large-green-degenerate",
    ];

    pub fn named(name: &str) -> Result<Self> {
        fn spanning_connected(m: &EmbeddedMatroid, s: &PointSet) -> bool {
            m.rank_of(s) == m.ambient_rank() && m.is_connected_set(s)
        }
        let f = match name {
            "all" => ColoringFilter::new(name, |_| Ok(true)),
            "comatroid" => ColoringFilter::new(name, is_comatroid),
            "non-comatroid" => ColoringFilter::new(name, |m| Ok(!is_comatroid(m)?)),
            "minimal-non-comatroid" => ColoringFilter::new(name, |m| {
                if m.rank() != m.ambient_rank() || is_comatroid(m)? {
                    return Ok(false);
                }
                for f in m.space().all_flats() {
                    if f.rank >= 1
                        && f.rank < m.ambient_rank()
                        && !is_comatroid(&m.restrict(&f.members.intersection(m.green())))?
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }),
            "both-connected-spanning" => ColoringFilter::new(name, |m| {
                Ok(spanning_connected(m, m.green()) && spanning_connected(m, &m.red()))
            }),
            "neither-connected-spanning" => ColoringFilter::new(name, |m| {
                Ok(!spanning_connected(m, m.green()) && !spanning_connected(m, &m.red()))
            }),
            "vertical-deficit" => ColoringFilter::new(name, |m| {
                let j = m.vertical_connectivity(m.green())?;
                let k = m.vertical_connectivity(&m.red())?;
                Ok(j + k < m.ambient_rank())
            }),
            "large-green-degenerate" => ColoringFilter::new(name, |m| {
                let r = m.ambient_rank() as u32;
                let threshold = (m.field().q() as usize).pow(r.saturating_sub(1)) + 1;
                Ok(m.len() >= threshold && !spanning_connected(m, m.green()))
            }),
            _ => {
                return Err(Error::domain(format!(
                    "unknown filter `{name}`; known filters: {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matches(&self, m: &EmbeddedMatroid) -> Result<bool> {
        (self.pred)(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Every subset of the space.
    Exhaustive,
    /// `samples` subsets, each point green with probability one half.
    Random { samples: u64, seed: u64 },
}

/// Colorings of `space` passing `filter`, optionally one per isomorphism class.
pub fn enumerate_colorings(
    space: &Arc<PointSpace>,
    filter: &ColoringFilter,
    dedup: bool,
    sampling: Sampling,
) -> Result<CensusReport> {
    let start = Instant::now();
    let n = space.len();
    let (greens, scanned): (Vec<PointSet>, u64) = match sampling {
        Sampling::Exhaustive => {
            Error::check_cap("points for exhaustive coloring", n, EXHAUSTIVE_COLORING_CAP)?;
            let masks: Vec<u64> = (0..1u64 << n).collect();
            let found = masks
                .into_par_iter()
                .map(|m| {
                    let g = PointSet::from_mask(n, m);
                    let em = EmbeddedMatroid::new(space.clone(), g.clone());
                    filter.matches(&em).map(|ok| ok.then_some(g))
                })
                .collect::<Result<Vec<_>>>()?;
            (found.into_iter().flatten().collect(), 1u64 << n)
        }
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sets: Vec<PointSet> = (0..samples)
                .map(|_| PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5))))
                .collect();
            let found = sets
                .into_par_iter()
                .map(|g| {
                    let em = EmbeddedMatroid::new(space.clone(), g.clone());
                    filter.matches(&em).map(|ok| ok.then_some(g))
                })
                .collect::<Result<Vec<_>>>()?;
            (found.into_iter().flatten().collect(), samples)
        }
    };
    let matched = greens.len() as u64;
    let classes = if dedup {
        classes_of(space, greens, false)?
    } else {
        greens
            .into_iter()
            .map(|g| CensusClass {
                key: None,
                size: g.len(),
                rank: space.rank_of(&g),
                green: g,
                label: String::new(),
            })
            .collect()
    };
    Ok(CensusReport {
        q: space.field(),
        rank: space.rank(),
        filter: filter.name().to_string(),
        classes,
        scanned,
        matched,
        elapsed: start.elapsed(),
    })
}

/// One extension of a seed: the added points and its hyperplane counts.
/// `j` is only computed when `i` is below the green threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub extra: PointSet,
    pub i: u32,
    pub j: Option<u32>,
}

impl ScanRecord {
    pub fn survives(&self) -> bool {
        self.i < GREEN_HYPERPLANE_LIMIT
            && self.j.is_some_and(|j| self.i + j < TOTAL_HYPERPLANE_LIMIT)
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionScan {
    /// The seed re-embedded in PG(4,2); extras index points of that space.
    pub seed: EmbeddedMatroid,
    pub max_extra: usize,
    pub survivors: Vec<ScanRecord>,
    /// Every scanned extension, when requested.
    pub records: Option<Vec<ScanRecord>>,
    pub scanned: u64,
    pub red_counts: u64,
    pub elapsed: Duration,
}

impl ExtensionScan {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed size={} rank={}",
            self.seed.len(),
            self.seed.rank()
        );
        let _ = writeln!(out, "max-extra {}", self.max_extra);
        let _ = writeln!(out, "scanned {}", self.scanned);
        let _ = writeln!(out, "red-counts {}", self.red_counts);
        let _ = writeln!(out, "survivors {}", self.survivors.len());
        let rows = self.records.as_ref().unwrap_or(&self.survivors);
        for r in rows {
            let j = r.j.map_or("-".to_string(), |j| j.to_string());
            let _ = writeln!(out, "extension extra={} i={} j={j}", r.extra, r.i);
        }
        out
    }

    pub fn to_tsv(&self) -> Result<String> {
        let mut out = String::from("key\tsize\trank\tlabel\n");
        let rows = self.records.as_ref().unwrap_or(&self.survivors);
        for r in rows {
            let m =
                EmbeddedMatroid::new(self.seed.space().clone(), self.seed.green().union(&r.extra));
            let j = r.j.map_or("-".to_string(), |j| j.to_string());
            let _ = writeln!(
                out,
                "{}\t{}\t{}\ti={};j={j}",
                canonical_key(&m)?,
                m.len(),
                m.rank(),
                r.i
            );
        }
        Ok(out)
    }
}

/// Connected-hyperplane counting for colorings of PG(4,2), by table lookup.
struct HyperplaneCounter {
    /// For each hyperplane, byte position and byte value, the bits of the
    /// corresponding points in the hyperplane's own PG(3,2) coordinates.
    local: Vec<[[u16; 256]; 4]>,
    table: SubsetTable,
}

impl HyperplaneCounter {
    fn new() -> Result<Self> {
        let big = PointSpace::get(FieldOrder::Two, 5)?;
        let small = PointSpace::get(FieldOrder::Two, 4)?;
        let table = SubsetTable::new(small.clone())?;
        let mut local = Vec::new();
        for h in big.hyperplanes() {
            // coordinates relative to a basis of the hyperplane
            let members = h.members.to_vec();
            let mut basis = Echelon::new(FieldOrder::Two);
            for &p in &members {
                basis.insert(big.point(p));
            }
            let mut bit_of = [0u16; 32];
            for &p in &members {
                let c = basis
                    .coordinates(big.point(p))
                    .expect("point lies in its hyperplane");
                bit_of[p] = 1 << small.index_of(c.normalized(FieldOrder::Two));
            }
            let mut t = [[0u16; 256]; 4];
            for (b, row) in t.iter_mut().enumerate() {
                for (v, cell) in row.iter_mut().enumerate() {
                    for bit in 0..8 {
                        let p = b * 8 + bit;
                        if v >> bit & 1 == 1 && p < 31 {
                            *cell |= bit_of[p];
                        }
                    }
                }
            }
            local.push(t);
        }
        Ok(HyperplaneCounter { local, table })
    }

    fn count(&self, mask: u32) -> u32 {
        let bytes = mask.to_le_bytes();
        let mut n = 0;
        for t in &self.local {
            let l = t[0][bytes[0] as usize]
                | t[1][bytes[1] as usize]
                | t[2][bytes[2] as usize]
                | t[3][bytes[3] as usize];
            let l = l as u32;
            if self.table.rank(l) == 4 && self.table.is_connected(l) {
                n += 1;
            }
        }
        n
    }
}

fn counter() -> Result<&'static HyperplaneCounter> {
    static COUNTER: OnceLock<HyperplaneCounter> = OnceLock::new();
    if let Some(c) = COUNTER.get() {
        return Ok(c);
    }
    let c = HyperplaneCounter::new()?;
    Ok(COUNTER.get_or_init(|| c))
}

/// Number of connected hyperplanes of a rank-5 coloring of PG(4,2), given
/// as a bitmask of green points.
pub fn pg42_connected_hyperplanes(mask: u32) -> Result<u32> {
    Ok(counter()?.count(mask))
}

/// Subsets of `free` (a list of point indices) of size `k`, in increasing
/// bitmask order.
fn combinations(free: &[usize], k: usize) -> Vec<u32> {
    let n = free.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let expand = |local: u64| -> u32 {
        let mut m = 0u32;
        for (i, &p) in free.iter().enumerate() {
            if local >> i & 1 == 1 {
                m |= 1 << p;
            }
        }
        m
    };
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut c: u64 = (1 << k) - 1;
    while c < 1 << n {
        out.push(expand(c));
        // next combination with the same popcount
        let t = c | (c - 1);
        c = (t + 1) | (((!t & (t + 1)) - 1) >> (c.trailing_zeros() + 1));
    }
    out
}

/// Adds every set of at most `max_extra` new points to a rank-5 binary seed
/// and counts connected hyperplanes of the result (i) and of its complement
/// (j, only when i is small enough). Survivors have i < 26 and i + j < 32.
pub fn hyperplane_scan(
    seed: &EmbeddedMatroid,
    max_extra: usize,
    keep_all: bool,
) -> Result<ExtensionScan> {
    let start = Instant::now();
    if seed.field() != FieldOrder::Two || seed.rank() != 5 {
        return Err(Error::domain("extension scans need a rank-5 binary seed"));
    }
    let seed = seed.reembed().0;
    let n = seed.space().len();
    let free: Vec<usize> = seed.red().to_vec();
    if max_extra > free.len() {
        return Err(Error::domain(format!(
            "max-extra {max_extra} exceeds the {} points outside the seed",
            free.len()
        )));
    }
    let counter = counter()?;
    let base = seed.green().to_mask().unwrap() as u32;
    let full = ((1u64 << n) - 1) as u32;
    let mut survivors = Vec::new();
    let mut records = keep_all.then(Vec::new);
    let mut scanned = 0u64;
    let mut red_counts = 0u64;
    for k in 0..=max_extra {
        let subsets = combinations(&free, k);
        scanned += subsets.len() as u64;
        let rows: Vec<(u32, u32, Option<u32>)> = subsets
            .into_par_iter()
            .map(|s| {
                let g = base | s;
                let i = counter.count(g);
                let j = (i < GREEN_HYPERPLANE_LIMIT).then(|| counter.count(full & !g));
                (s, i, j)
            })
            .collect();
        for (s, i, j) in rows {
            red_counts += u64::from(j.is_some());
            let rec = ScanRecord {
                extra: PointSet::from_mask(n, s as u64),
                i,
                j,
            };
            if rec.survives() {
                survivors.push(rec.clone());
            }
            if let Some(r) = records.as_mut() {
                r.push(rec);
            }
        }
    }
    Ok(ExtensionScan {
        seed,
        max_extra,
        survivors,
        records,
        scanned,
        red_counts,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_generic_operations() {
        for (q, r) in [(FieldOrder::Two, 3), (FieldOrder::Three, 3)] {
            let space = PointSpace::get(q, r).unwrap();
            let table = SubsetTable::new(space.clone()).unwrap();
            for mask in 0..=table.full_mask() {
                let g = PointSet::from_mask(space.len(), mask as u64);
                let m = EmbeddedMatroid::new(space.clone(), g.clone());
                assert_eq!(table.rank(mask), m.rank());
                assert_eq!(table.is_connected(mask), m.is_connected());
                assert_eq!(table.is_comatroid(mask), is_comatroid(&m).unwrap());
                if mask % 7 == 0 {
                    assert_eq!(
                        table.vertical_connectivity(mask),
                        m.vertical_connectivity(&g).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn combinations_are_ordered() {
        let c = combinations(&[1, 3, 4, 7], 2);
        assert_eq!(c.len(), 6);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(c.iter().all(|m| m.count_ones() == 2));
        assert_eq!(combinations(&[1, 3], 0), vec![0]);
    }

    #[test]
    fn binary_rank3_census_is_empty() {
        let r = minimal_non_comatroids(FieldOrder::Two, 3).unwrap();
        assert!(r.classes.is_empty());
    }

    #[test]
    fn unsupported_census_is_rejected() {
        assert!(minimal_non_comatroids(FieldOrder::Two, 5).is_err());
    }
}
