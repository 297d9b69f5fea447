//! Deciding membership in the class of GF(q)-comatroids.
//!
//! Three independent deciders are provided:
//!
//! * [`decide_recursive`] follows the generating definition: split into
//!   components, or pass to the complement, until the empty matroid is
//!   reached or both the matroid and its complement are connected of the
//!   same rank.
//! * [`decide_flat_criterion`] checks, for every projective flat F, that when
//!   the green and red parts of F have equal rank one of them is disconnected.
//! * [`decide_forbidden_flats`] searches the flats of M and of its complement
//!   for a member of the excluded list.
//!
//! All three return a [`Verdict`] whose certificate can be re-checked with
//! [`replay`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::canonical::{canonical_key, CanonicalKey};
use crate::constructions::{self, circuit_with_u24, MINIMAL_GRAPHS};
use crate::error::{Error, Result};
use crate::field::FieldOrder;
use crate::matroid::EmbeddedMatroid;
use crate::pointset::PointSet;
use crate::space::Flat;

/// Highest rank accepted by the deciders.
pub const DECIDER_RANK_CAP: usize = 7;

/// Highest rank accepted by the induced-minor search.
pub const INDUCED_MINOR_RANK_CAP: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Recursive,
    FlatCriterion,
    ForbiddenFlats,
}

impl Method {
    pub const ALL: [Method; 3] = [
        Method::Recursive,
        Method::FlatCriterion,
        Method::ForbiddenFlats,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Recursive => "recursive",
            Method::FlatCriterion => "flats",
            Method::ForbiddenFlats => "forbidden",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One step of a recursive decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceNode {
    /// The matroid is U(0,0).
    Empty,
    /// The matroid has `parts` components; the listed children are the
    /// decompositions of the components with the given indices.
    Split {
        parts: usize,
        children: Vec<(usize, TraceNode)>,
    },
    /// The matroid is connected and the decision passes to its complement.
    Complement(Box<TraceNode>),
    /// The matroid and its complement are both connected of this rank.
    BothConnected { rank: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Green,
    Red,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Green => "green",
            Side::Red => "red",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Trace(TraceNode),
    /// A projective flat whose green and red parts are connected of equal rank.
    Violation {
        flat: PointSet,
    },
    /// Every projective flat passed the criterion.
    Exhaustive {
        flats_checked: usize,
    },
    /// A flat of M (green side) or of its complement (red side) matching an
    /// excluded entry.
    Forbidden {
        flat: PointSet,
        side: Side,
        entry: String,
    },
    /// No flat matched the excluded list.
    NoForbiddenFlat {
        flats_checked: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub is_comatroid: bool,
    pub method: Method,
    pub certificate: Certificate,
}

/// The matroid re-embedded at its own rank, after checking the rank cap.
fn prepared(m: &EmbeddedMatroid) -> Result<EmbeddedMatroid> {
    let (m, _) = m.reembed();
    Error::check_cap(
        "rank for comatroid decision",
        m.ambient_rank(),
        DECIDER_RANK_CAP,
    )?;
    Ok(m)
}

fn recurse(m: &EmbeddedMatroid) -> (bool, TraceNode) {
    if m.is_empty() {
        return (true, TraceNode::Empty);
    }
    let comps = m.components(m.green());
    if comps.len() > 1 {
        let mut children = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            let (ok, node) = recurse(&m.restrict(c).reembed().0);
            children.push((i, node));
            if !ok {
                return (
                    false,
                    TraceNode::Split {
                        parts: comps.len(),
                        children: vec![children.pop().unwrap()],
                    },
                );
            }
        }
        return (
            true,
            TraceNode::Split {
                parts: comps.len(),
                children,
            },
        );
    }
    let r = m.ambient_rank();
    let c = m.red_matroid();
    if c.rank() == r && c.is_connected() {
        return (false, TraceNode::BothConnected { rank: r });
    }
    let (ok, node) = recurse(&c.reembed().0);
    (ok, TraceNode::Complement(Box::new(node)))
}

pub fn decide_recursive(m: &EmbeddedMatroid) -> Result<Verdict> {
    let m = prepared(m)?;
    let (ok, trace) = recurse(&m);
    Ok(Verdict {
        is_comatroid: ok,
        method: Method::Recursive,
        certificate: Certificate::Trace(trace),
    })
}

/// Whether `m` is a comatroid, by the recursive decider.
pub fn is_comatroid(m: &EmbeddedMatroid) -> Result<bool> {
    let m = prepared(m)?;
    Ok(recurse(&m).0)
}

/// The flat criterion on a matroid already embedded at its own rank. Flats
/// are scanned from the top rank down.
fn flat_scan(m: &EmbeddedMatroid) -> (Option<PointSet>, usize) {
    let space = m.space();
    let red = m.red();
    let mut checked = 0;
    for k in (1..=space.rank()).rev() {
        for f in space.flats(k) {
            checked += 1;
            let g = f.members.intersection(m.green());
            let r = f.members.intersection(&red);
            if g.is_empty() || r.is_empty() {
                continue;
            }
            if space.rank_of(&g) == space.rank_of(&r)
                && m.is_connected_set(&g)
                && m.is_connected_set(&r)
            {
                return (Some(f.members.clone()), checked);
            }
        }
    }
    // the rank-0 flat has empty green and red parts, which passes
    (None, checked + 1)
}

pub fn decide_flat_criterion(m: &EmbeddedMatroid) -> Result<Verdict> {
    let m = prepared(m)?;
    let (violation, checked) = flat_scan(&m);
    Ok(match violation {
        Some(flat) => Verdict {
            is_comatroid: false,
            method: Method::FlatCriterion,
            certificate: Certificate::Violation { flat },
        },
        None => Verdict {
            is_comatroid: true,
            method: Method::FlatCriterion,
            certificate: Certificate::Exhaustive {
                flats_checked: checked,
            },
        },
    })
}

struct FixedEntry {
    name: String,
    rank: usize,
    size: usize,
    key: CanonicalKey,
}

/// The excluded flats for one field: large circuits, (over GF(3)) circuits
/// with copies of U(2,4) 2-summed on, and a fixed list of small matroids.
pub struct ForbiddenCatalog {
    q: FieldOrder,
    circuit_min: usize,
    u24_family: bool,
    fixed: Vec<FixedEntry>,
    family_keys: Mutex<HashMap<(usize, usize), CanonicalKey>>,
}

impl fmt::Debug for ForbiddenCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ForbiddenCatalog")
            .field("q", &self.q)
            .field("fixed", &self.fixed_names())
            .finish()
    }
}

fn embed_named(name: &str) -> Result<EmbeddedMatroid> {
    Ok(constructions::named(name)?.embed()?.matroid)
}

impl ForbiddenCatalog {
    pub fn new(q: FieldOrder) -> Result<Self> {
        let names: Vec<String> = match q {
            FieldOrder::Two => std::iter::once("P(U34,U34)".to_string())
                .chain(MINIMAL_GRAPHS.iter().map(|(n, _)| format!("M({n})")))
                .collect(),
            FieldOrder::Three => ["P(U23,U23)", "U24+2U24", "P(U24,U23)", "M(K4)@3", "W3"]
                .map(String::from)
                .to_vec(),
        };
        let mut fixed = Vec::new();
        for name in names {
            let m = embed_named(&name)?;
            fixed.push(FixedEntry {
                rank: m.rank(),
                size: m.len(),
                key: canonical_key(&m)?,
                name,
            });
        }
        Ok(ForbiddenCatalog {
            q,
            circuit_min: match q {
                FieldOrder::Two => 6,
                FieldOrder::Three => 4,
            },
            u24_family: q == FieldOrder::Three,
            fixed,
            family_keys: Mutex::new(HashMap::new()),
        })
    }

    /// Shared catalog for the field.
    pub fn standard(q: FieldOrder) -> &'static ForbiddenCatalog {
        static TWO: OnceLock<ForbiddenCatalog> = OnceLock::new();
        static THREE: OnceLock<ForbiddenCatalog> = OnceLock::new();
        let cell = match q {
            FieldOrder::Two => &TWO,
            FieldOrder::Three => &THREE,
        };
        cell.get_or_init(|| ForbiddenCatalog::new(q).expect("built-in catalog entries are valid"))
    }

    pub fn field(&self) -> FieldOrder {
        self.q
    }

    pub fn fixed_names(&self) -> Vec<&str> {
        self.fixed.iter().map(|e| e.name.as_str()).collect()
    }

    /// Smallest rank of any excluded matroid.
    pub fn min_rank(&self) -> usize {
        let fixed = self
            .fixed
            .iter()
            .map(|e| e.rank)
            .min()
            .unwrap_or(usize::MAX);
        let circ = self.circuit_min - 1;
        let fam = if self.u24_family { 3 } else { usize::MAX };
        fixed.min(circ).min(fam)
    }

    fn family_key(&self, rank: usize, size: usize) -> Result<Option<(usize, usize, CanonicalKey)>> {
        if !self.u24_family || size <= rank + 1 {
            return Ok(None);
        }
        let d = size - rank - 1;
        if rank + 1 < d + 3 {
            return Ok(None);
        }
        let k = rank + 1 - d;
        if d > k {
            return Ok(None);
        }
        if let Some(key) = self.family_keys.lock().unwrap().get(&(rank, size)) {
            return Ok(Some((k, d, key.clone())));
        }
        let d_elems: Vec<usize> = (0..d).collect();
        let m = circuit_with_u24(k, &d_elems)?.embed()?.matroid;
        let key = canonical_key(&m)?;
        self.family_keys
            .lock()
            .unwrap()
            .insert((rank, size), key.clone());
        Ok(Some((k, d, key)))
    }

    /// Name of the excluded entry isomorphic to the connected matroid `x`.
    pub fn matches(&self, x: &EmbeddedMatroid) -> Result<Option<String>> {
        let (r, s) = (x.rank(), x.len());
        if s == r + 1 && s >= self.circuit_min && x.is_connected() {
            return Ok(Some(format!("circuit({s})")));
        }
        let mut key: Option<CanonicalKey> = None;
        let mut key_of = |x: &EmbeddedMatroid| -> Result<CanonicalKey> {
            if key.is_none() {
                key = Some(canonical_key(x)?);
            }
            Ok(key.clone().unwrap())
        };
        for e in &self.fixed {
            if e.rank == r && e.size == s && key_of(x)? == e.key {
                return Ok(Some(e.name.clone()));
            }
        }
        if let Some((k, d, fk)) = self.family_key(r, s)? {
            if key_of(x)? == fk {
                return Ok(Some(format!("circuit({k})+{d}U24")));
            }
        }
        Ok(None)
    }

    /// Checks that every fixed entry is a non-comatroid all of whose proper
    /// flats are comatroids. Returns the names that fail.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for e in &self.fixed {
            let m = e.key.representative()?;
            let minimal = !decide_flat_criterion(&m)?.is_comatroid
                && m.flats().iter().all(|f| {
                    f.members == *m.green()
                        || decide_flat_criterion(&m.restrict(&f.members))
                            .map(|v| v.is_comatroid)
                            .unwrap_or(false)
                });
            if !minimal {
                bad.push(e.name.clone());
            }
        }
        Ok(bad)
    }
}

/// A forbidden flat, the side it was found on, and the catalog entry.
type ForbiddenHit = (PointSet, Side, String);

fn forbidden_scan(
    m: &EmbeddedMatroid,
    cat: &ForbiddenCatalog,
) -> Result<(Option<ForbiddenHit>, usize)> {
    let space = m.space();
    let min_rank = cat.min_rank();
    let sides = [(Side::Green, m.green().clone()), (Side::Red, m.red())];
    let mut checked = 0;
    for k in (min_rank..=space.rank()).rev() {
        for f in space.flats(k) {
            checked += 1;
            for (side, set) in &sides {
                let x = f.members.intersection(set);
                if x.len() < k || space.rank_of(&x) != k || !m.is_connected_set(&x) {
                    continue;
                }
                if let Some(name) = cat.matches(&m.restrict(&x))? {
                    return Ok((Some((f.members.clone(), *side, name)), checked));
                }
            }
        }
    }
    Ok((None, checked))
}

pub fn decide_forbidden_flats(m: &EmbeddedMatroid, cat: &ForbiddenCatalog) -> Result<Verdict> {
    if cat.field() != m.field() {
        return Err(Error::domain(
            "catalog field differs from the matroid field",
        ));
    }
    let m = prepared(m)?;
    let (hit, checked) = forbidden_scan(&m, cat)?;
    Ok(match hit {
        Some((flat, side, entry)) => Verdict {
            is_comatroid: false,
            method: Method::ForbiddenFlats,
            certificate: Certificate::Forbidden { flat, side, entry },
        },
        None => Verdict {
            is_comatroid: true,
            method: Method::ForbiddenFlats,
            certificate: Certificate::NoForbiddenFlat {
                flats_checked: checked,
            },
        },
    })
}

/// Runs the chosen decider with the standard catalog.
pub fn decide(m: &EmbeddedMatroid, method: Method) -> Result<Verdict> {
    match method {
        Method::Recursive => decide_recursive(m),
        Method::FlatCriterion => decide_flat_criterion(m),
        Method::ForbiddenFlats => decide_forbidden_flats(m, ForbiddenCatalog::standard(m.field())),
    }
}

fn replay_trace(m: &EmbeddedMatroid, node: &TraceNode) -> Result<bool> {
    let fail = |msg: &str| Err(Error::domain(format!("trace does not replay: {msg}")));
    match node {
        TraceNode::Empty => {
            if m.is_empty() {
                Ok(true)
            } else {
                fail("matroid is not empty")
            }
        }
        TraceNode::Split { parts, children } => {
            let comps = m.components(m.green());
            if comps.len() != *parts || *parts < 2 {
                return fail("component count differs");
            }
            let mut all = true;
            let mut seen = HashSet::new();
            for (i, child) in children {
                if *i >= comps.len() || !seen.insert(*i) {
                    return fail("bad component index");
                }
                all &= replay_trace(&m.restrict(&comps[*i]).reembed().0, child)?;
            }
            if children.len() < *parts && all {
                return fail("a split omitting components must show a failing one");
            }
            Ok(all)
        }
        TraceNode::Complement(child) => {
            if m.is_empty() || !m.is_connected() {
                return fail("complement step on a disconnected or empty matroid");
            }
            let c = m.red_matroid();
            if c.rank() == m.ambient_rank() && c.is_connected() {
                return fail("complement step where both sides are connected");
            }
            replay_trace(&c.reembed().0, child)
        }
        TraceNode::BothConnected { rank } => {
            let c = m.red_matroid();
            if m.is_empty()
                || *rank != m.ambient_rank()
                || !m.is_connected()
                || c.rank() != *rank
                || !c.is_connected()
            {
                return fail("claimed both-connected step does not hold");
            }
            Ok(false)
        }
    }
}

/// Re-checks a certificate against the matroid and returns the verdict it
/// certifies.
pub fn replay(m: &EmbeddedMatroid, cert: &Certificate) -> Result<bool> {
    let m = prepared(m)?;
    let space = m.space().clone();
    match cert {
        Certificate::Trace(t) => replay_trace(&m, t),
        Certificate::Violation { flat } => {
            if flat.universe() != space.len() || space.closure(flat).members != *flat {
                return Err(Error::domain("violation set is not a projective flat"));
            }
            let g = flat.intersection(m.green());
            let r = flat.difference(m.green());
            let ok = !g.is_empty()
                && !r.is_empty()
                && space.rank_of(&g) == space.rank_of(&r)
                && m.is_connected_set(&g)
                && m.is_connected_set(&r);
            if ok {
                Ok(false)
            } else {
                Err(Error::domain(
                    "violation flat does not violate the criterion",
                ))
            }
        }
        Certificate::Exhaustive { .. } => match flat_scan(&m).0 {
            None => Ok(true),
            Some(_) => Err(Error::domain(
                "exhaustive claim fails: a violating flat exists",
            )),
        },
        Certificate::Forbidden { flat, side, entry } => {
            if flat.universe() != space.len() || space.closure(flat).members != *flat {
                return Err(Error::domain("witness set is not a projective flat"));
            }
            let set = match side {
                Side::Green => m.green().clone(),
                Side::Red => m.red(),
            };
            let x = flat.intersection(&set);
            let k = space.rank_of(flat);
            if space.rank_of(&x) != k || !m.is_connected_set(&x) {
                return Err(Error::domain(
                    "witness flat is not a connected spanning restriction",
                ));
            }
            let cat = ForbiddenCatalog::standard(m.field());
            match cat.matches(&m.restrict(&x))? {
                Some(name) if &name == entry => Ok(false),
                _ => Err(Error::domain(format!(
                    "witness is not isomorphic to {entry}"
                ))),
            }
        }
        Certificate::NoForbiddenFlat { .. } => {
            match forbidden_scan(&m, ForbiddenCatalog::standard(m.field()))?.0 {
                None => Ok(true),
                Some(_) => Err(Error::domain("a forbidden flat exists")),
            }
        }
    }
}

fn write_trace(node: &TraceNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node {
        TraceNode::Empty => out.push_str(&format!("{pad}empty\n")),
        TraceNode::BothConnected { rank } => {
            out.push_str(&format!("{pad}both-connected rank={rank}\n"))
        }
        TraceNode::Complement(c) => {
            out.push_str(&format!("{pad}complement\n"));
            write_trace(c, depth + 1, out);
        }
        TraceNode::Split { parts, children } => {
            out.push_str(&format!(
                "{pad}split parts={parts} listed={}\n",
                children.len()
            ));
            for (i, c) in children {
                out.push_str(&format!("{pad}  part {i}\n"));
                write_trace(c, depth + 2, out);
            }
        }
    }
}

fn kv<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=`")))
}

fn num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a number")))
}

fn parse_set(s: &str, universe: usize, line: usize) -> Result<PointSet> {
    let mut out = PointSet::empty(universe);
    for t in s.split(',').filter(|t| !t.is_empty()) {
        let i = num(t, line)?;
        if i >= universe {
            return Err(Error::parse(line, format!("point {i} out of range")));
        }
        out.insert(i);
    }
    Ok(out)
}

fn parse_trace<'a, I: Iterator<Item = (usize, &'a str)>>(lines: &mut I) -> Result<TraceNode> {
    let (ln, line) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "trace ended early"))?;
    let mut toks = line.split_whitespace();
    match toks.next() {
        Some("empty") => Ok(TraceNode::Empty),
        Some("both-connected") => Ok(TraceNode::BothConnected {
            rank: num(kv(toks.next(), "rank", ln)?, ln)?,
        }),
        Some("complement") => Ok(TraceNode::Complement(Box::new(parse_trace(lines)?))),
        Some("split") => {
            let parts = num(kv(toks.next(), "parts", ln)?, ln)?;
            let listed = num(kv(toks.next(), "listed", ln)?, ln)?;
            let mut children = Vec::new();
            for _ in 0..listed {
                let (pl, pline) = lines
                    .next()
                    .ok_or_else(|| Error::parse(ln, "missing part line"))?;
                let idx = pline
                    .strip_prefix("part ")
                    .ok_or_else(|| Error::parse(pl, "expected `part <index>`"))?;
                children.push((num(idx.trim(), pl)?, parse_trace(lines)?));
            }
            Ok(TraceNode::Split { parts, children })
        }
        _ => Err(Error::parse(ln, format!("unknown trace step `{line}`"))),
    }
}

impl Certificate {
    /// Line-oriented text form, parsed back by [`Certificate::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Certificate::Trace(t) => {
                out.push_str("trace\n");
                write_trace(t, 1, &mut out);
            }
            Certificate::Violation { flat } => {
                out.push_str(&format!("violation flat={flat}\n"));
            }
            Certificate::Exhaustive { flats_checked } => {
                out.push_str(&format!("exhaustive flats={flats_checked}\n"));
            }
            Certificate::Forbidden { flat, side, entry } => {
                out.push_str(&format!(
                    "forbidden side={} flat={flat} entry={entry}\n",
                    side.name()
                ));
            }
            Certificate::NoForbiddenFlat { flats_checked } => {
                out.push_str(&format!("no-forbidden-flat flats={flats_checked}\n"));
            }
        }
        out
    }

    /// Parses the text form; point sets are read in a space with `universe` points.
    pub fn parse(text: &str, universe: usize) -> Result<Certificate> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty certificate"))?;
        let mut toks = head.split_whitespace();
        let cert = match toks.next() {
            Some("trace") => Certificate::Trace(parse_trace(&mut lines)?),
            Some("violation") => Certificate::Violation {
                flat: parse_set(kv(toks.next(), "flat", ln)?, universe, ln)?,
            },
            Some("exhaustive") => Certificate::Exhaustive {
                flats_checked: num(kv(toks.next(), "flats", ln)?, ln)?,
            },
            Some("no-forbidden-flat") => Certificate::NoForbiddenFlat {
                flats_checked: num(kv(toks.next(), "flats", ln)?, ln)?,
            },
            Some("forbidden") => {
                let side = match kv(toks.next(), "side", ln)? {
                    "green" => Side::Green,
                    "red" => Side::Red,
                    other => return Err(Error::parse(ln, format!("unknown side `{other}`"))),
                };
                let flat = parse_set(kv(toks.next(), "flat", ln)?, universe, ln)?;
                let entry = kv(toks.next(), "entry", ln)?.to_string();
                Certificate::Forbidden { flat, side, entry }
            }
            _ => return Err(Error::parse(ln, format!("unknown certificate `{head}`"))),
        };
        if let Some((l, _)) = lines.next() {
            return Err(Error::parse(l, "trailing content after certificate"));
        }
        Ok(cert)
    }
}

/// Matroids excluded as induced minors, keyed by canonical form.
pub struct InducedMinorList {
    q: FieldOrder,
    entries: HashMap<CanonicalKey, String>,
    min_rank: usize,
}

impl fmt::Debug for InducedMinorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedMinorList")
            .field("q", &self.q)
            .field("entries", &self.names())
            .finish()
    }
}

impl InducedMinorList {
    /// Every list member of rank at most [`INDUCED_MINOR_RANK_CAP`].
    pub fn new(q: FieldOrder) -> Result<Self> {
        let mut members: Vec<(String, EmbeddedMatroid)> = Vec::new();
        let cap = INDUCED_MINOR_RANK_CAP;
        match q {
            FieldOrder::Two => {
                for k in 6..=cap + 1 {
                    let c = constructions::circuit(k, q)?.embed()?.matroid;
                    members.push((format!("circuit({k})^c"), c.complement_default()));
                }
                members.push(("P(U34,U34)".into(), embed_named("P(U34,U34)")?));
                for (n, _) in MINIMAL_GRAPHS {
                    let g = embed_named(&format!("M({n})"))?;
                    members.push((format!("M({n})^c"), g.complement(4)?));
                    members.push((format!("M({n})"), g));
                }
            }
            FieldOrder::Three => {
                for k in 3..=cap + 1 {
                    for d in 0..=k {
                        if k - 1 + d > cap {
                            break;
                        }
                        let ds: Vec<usize> = (0..d).collect();
                        let m = circuit_with_u24(k, &ds)?.embed()?.matroid;
                        let c = m.complement_default();
                        // the complement of a triangle is a single point
                        if is_comatroid(&c)? {
                            continue;
                        }
                        members.push((format!("(circuit({k})+{d}U24)^c"), c));
                    }
                }
                for name in [
                    "U34@3",
                    "P(U23,U23)",
                    "U24+2U23",
                    "U24+2U24",
                    "P(U24,U23)",
                    "M(K4)@3",
                    "W3",
                ] {
                    let m = embed_named(name)?;
                    members.push((format!("{name}^c"), m.complement(3)?));
                    members.push((name.to_string(), m));
                }
            }
        }
        let mut entries = HashMap::new();
        let mut min_rank = usize::MAX;
        for (name, m) in members {
            min_rank = min_rank.min(m.rank());
            entries.entry(canonical_key(&m)?).or_insert(name);
        }
        Ok(InducedMinorList {
            q,
            entries,
            min_rank,
        })
    }

    pub fn standard(q: FieldOrder) -> &'static InducedMinorList {
        static TWO: OnceLock<InducedMinorList> = OnceLock::new();
        static THREE: OnceLock<InducedMinorList> = OnceLock::new();
        let cell = match q {
            FieldOrder::Two => &TWO,
            FieldOrder::Three => &THREE,
        };
        cell.get_or_init(|| InducedMinorList::new(q).expect("built-in list entries are valid"))
    }

    pub fn names(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.entries.values().map(String::as_str).collect();
        v.sort();
        v
    }

    pub fn lookup(&self, key: &CanonicalKey) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Searches flat restrictions and simplified contractions of `m` for a
/// member of the list. Returns the name of the first member found.
pub fn find_forbidden_induced_minor(
    m: &EmbeddedMatroid,
    list: &InducedMinorList,
) -> Result<Option<String>> {
    if list.q != m.field() {
        return Err(Error::domain("list field differs from the matroid field"));
    }
    let (m, _) = m.reembed();
    Error::check_cap(
        "rank for induced-minor search",
        m.ambient_rank(),
        INDUCED_MINOR_RANK_CAP,
    )?;
    let mut seen = HashSet::new();
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x.ambient_rank() < list.min_rank {
            continue;
        }
        let key = canonical_key(&x)?;
        if !seen.insert(key.clone()) {
            continue;
        }
        if let Some(name) = list.lookup(&key) {
            return Ok(Some(name.to_string()));
        }
        for h in x.hyperplanes() {
            stack.push(x.restrict(&h).reembed().0);
        }
        for e in x.green().iter() {
            stack.push(x.si_contract(e)?);
        }
    }
    Ok(None)
}

pub fn has_forbidden_induced_minor(m: &EmbeddedMatroid, list: &InducedMinorList) -> Result<bool> {
    Ok(find_forbidden_induced_minor(m, list)?.is_some())
}

/// The flat F as a [`Flat`] of the matroid's own-rank embedding.
pub fn flat_of(m: &EmbeddedMatroid, members: &PointSet) -> Flat {
    let (m, _) = m.reembed();
    m.space().closure(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{circuit, named};

    fn emb(name: &str) -> EmbeddedMatroid {
        named(name).unwrap().embed().unwrap().matroid
    }

    fn all_methods(m: &EmbeddedMatroid) -> Vec<bool> {
        Method::ALL
            .iter()
            .map(|&meth| {
                let v = decide(m, meth).unwrap();
                assert_eq!(replay(m, &v.certificate).unwrap(), v.is_comatroid);
                let text = v.certificate.to_text();
                let parsed = Certificate::parse(&text, m.reembed().0.space().len()).unwrap();
                assert_eq!(parsed, v.certificate, "{text}");
                v.is_comatroid
            })
            .collect()
    }

    #[test]
    fn empty_and_geometries_are_comatroids() {
        assert_eq!(
            all_methods(&EmbeddedMatroid::empty(FieldOrder::Two)),
            vec![true; 3]
        );
        for r in 1..=5 {
            let pg = EmbeddedMatroid::projective_geometry(FieldOrder::Two, r).unwrap();
            assert_eq!(all_methods(&pg), vec![true; 3]);
        }
    }

    #[test]
    fn circuit_law() {
        for (q, k, expect) in [
            (2, 3, true),
            (2, 4, true),
            (2, 5, false),
            (2, 6, false),
            (3, 3, true),
            (3, 4, false),
        ] {
            let q = FieldOrder::new(q).unwrap();
            let m = circuit(k, q).unwrap().embed().unwrap().matroid;
            assert_eq!(all_methods(&m), vec![expect; 3], "q={q} k={k}");
        }
    }

    #[test]
    fn named_non_comatroids() {
        assert_eq!(all_methods(&emb("P(U34,U34)")), vec![false; 3]);
        assert_eq!(all_methods(&emb("M(K4)@3")), vec![false; 3]);
    }

    #[test]
    fn six_circuit_violates_at_the_top_flat() {
        let m = circuit(6, FieldOrder::Two)
            .unwrap()
            .embed()
            .unwrap()
            .matroid;
        let v = decide_flat_criterion(&m).unwrap();
        let Certificate::Violation { flat } = v.certificate else {
            panic!("expected a violation")
        };
        assert_eq!(flat.len(), 31);
        let w = decide_forbidden_flats(&m, ForbiddenCatalog::standard(FieldOrder::Two)).unwrap();
        assert!(
            matches!(w.certificate, Certificate::Forbidden { ref entry, .. } if entry == "circuit(6)")
        );
    }

    #[test]
    fn catalogs_validate() {
        for q in [FieldOrder::Two, FieldOrder::Three] {
            assert!(ForbiddenCatalog::standard(q).validate().unwrap().is_empty());
        }
    }

    #[test]
    fn induced_minor_examples() {
        let two = InducedMinorList::standard(FieldOrder::Two);
        let c6c = circuit(6, FieldOrder::Two)
            .unwrap()
            .embed()
            .unwrap()
            .matroid
            .complement_default();
        assert!(has_forbidden_induced_minor(&c6c, two).unwrap());
        assert!(!has_forbidden_induced_minor(&emb("F7"), two).unwrap());
        let three = InducedMinorList::standard(FieldOrder::Three);
        assert!(has_forbidden_induced_minor(&emb("U34@3"), three).unwrap());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let m = emb("P(U34,U34)");
        let v = decide_recursive(&m).unwrap();
        let bad = Certificate::Trace(TraceNode::Empty);
        assert!(replay(&m, &bad).is_err());
        let pg = EmbeddedMatroid::projective_geometry(FieldOrder::Two, 3).unwrap();
        assert!(replay(&pg, &v.certificate).is_err());
        let bogus = Certificate::Violation {
            flat: pg.space().full_set(),
        };
        assert!(replay(&pg, &bogus).is_err());
    }
}
