//! Named matroids and parametric families as matrix presentations.

use crate::error::{Error, Result};
use crate::field::{Echelon, FieldOrder, GfVec, MAX_COORDS};
use crate::presentation::{parse_matroid_text, MatrixPresentation, MatroidText};

/// Largest ladder length accepted by [`four_hyperplane_family`].
pub const FAMILY_CAP: usize = 4;

fn unit_columns(r: usize) -> Vec<GfVec> {
    (0..r).map(GfVec::unit).collect()
}

fn ones(r: usize) -> GfVec {
    GfVec::from_coords(&vec![1; r])
}

/// The k-circuit [I | 1] of rank k - 1.
pub fn circuit(k: usize, q: FieldOrder) -> Result<MatrixPresentation> {
    if k < 3 {
        return Err(Error::domain(format!(
            "a simple circuit needs at least 3 elements, got {k}"
        )));
    }
    Error::check_cap("circuit rows", k - 1, MAX_COORDS)?;
    let mut cols = unit_columns(k - 1);
    cols.push(ones(k - 1));
    MatrixPresentation::new(q, k - 1, cols)
}

/// The uniform matroid U(r, n), when it is simple and GF(q)-representable.
pub fn uniform(r: usize, n: usize, q: FieldOrder) -> Result<MatrixPresentation> {
    if n == r {
        return MatrixPresentation::new(q, r, unit_columns(r));
    }
    if n == r + 1 && r >= 2 {
        return circuit(n, q);
    }
    if q == FieldOrder::Three && r == 2 && n == 4 {
        let cols = ["10", "01", "11", "12"].map(|s| GfVec::from_coords(&digits(s)));
        return MatrixPresentation::new(q, 2, cols.to_vec());
    }
    Err(Error::domain(format!(
        "U({r},{n}) is not a simple {q}-representable matroid"
    )))
}

fn digits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

/// All points of PG(r-1, q).
pub fn projective_geometry(r: usize, q: FieldOrder) -> Result<MatrixPresentation> {
    let space = crate::space::PointSpace::get(q, r)?;
    Error::check_cap("matrix columns", space.len(), 4096)?;
    MatrixPresentation::new(q, r, space.points().to_vec())
}

/// The points of PG(r-1, q) off the hyperplane where the first coordinate vanishes.
pub fn affine_geometry(r: usize, q: FieldOrder) -> Result<MatrixPresentation> {
    let space = crate::space::PointSpace::get(q, r)?;
    let cols: Vec<GfVec> = space
        .points()
        .iter()
        .copied()
        .filter(|v| v.get(0) != 0)
        .collect();
    MatrixPresentation::new(q, r, cols)
}

/// Cycle matroid of a simple graph given by its edges on vertices 0..n.
///
/// Over GF(2) the columns are the vertex-edge incidence vectors; over GF(3)
/// edge {u, v} with u < v gets +1 at u and -1 at v.
pub fn graph_cycle_matroid(edges: &[(usize, usize)], q: FieldOrder) -> Result<MatrixPresentation> {
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Error::check_cap("graph vertices", n, MAX_COORDS)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut cols = Vec::new();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::domain(format!("loop at vertex {u}")));
        }
        let (a, b) = (u.min(v), u.max(v));
        if !seen.insert((a, b)) {
            return Err(Error::domain(format!("parallel edges between {a} and {b}")));
        }
        let mut c = GfVec::unit(a);
        c.set(b, if q == FieldOrder::Two { 1 } else { 2 });
        cols.push(c);
    }
    let labels = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    MatrixPresentation::with_labels(q, n, cols, labels)
}

/// Coordinates of the columns relative to a basis that starts with column
/// `base`, followed by a greedy choice of further columns.
fn coordinates_from(p: &MatrixPresentation, base: usize) -> Result<(Vec<GfVec>, usize)> {
    let q = p.q;
    let mut e = Echelon::new(q);
    if p.columns[base].is_zero() {
        return Err(Error::domain("basepoint is a zero column"));
    }
    e.insert(p.columns[base]);
    for &c in &p.columns {
        e.insert(c);
    }
    let r = e.rank();
    let coords = p
        .columns
        .iter()
        .map(|&c| e.coordinates(c).expect("column in span"))
        .collect();
    Ok((coords, r))
}

fn is_coloop(p: &MatrixPresentation, i: usize) -> bool {
    let rest = p
        .columns
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &c)| c);
    crate::field::rank_of_vectors(rest, p.q) < p.rank()
}

fn glue(
    m1: &MatrixPresentation,
    p1: usize,
    m2: &MatrixPresentation,
    p2: usize,
    keep_basepoint: bool,
) -> Result<MatrixPresentation> {
    if m1.q != m2.q {
        return Err(Error::domain("cannot glue matroids over different fields"));
    }
    for (m, p) in [(m1, p1), (m2, p2)] {
        if p >= m.len() {
            return Err(Error::domain(format!("basepoint {p} out of range")));
        }
        if is_coloop(m, p) {
            return Err(Error::domain(format!(
                "basepoint `{}` is a coloop",
                m.labels[p]
            )));
        }
    }
    let (c1, r1) = coordinates_from(m1, p1)?;
    let (c2, r2) = coordinates_from(m2, p2)?;
    let rows = r1 + r2 - 1;
    Error::check_cap("matrix rows", rows, MAX_COORDS)?;
    // move the basepoint coordinate of m1 to the last position r1 - 1
    let rotate = |v: GfVec| {
        let mut w = GfVec::ZERO;
        for j in 1..r1 {
            w.set(j - 1, v.get(j));
        }
        w.set(r1 - 1, v.get(0));
        w
    };
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for (i, &v) in c1.iter().enumerate() {
        if i == p1 && !keep_basepoint {
            continue;
        }
        cols.push(rotate(v));
        labels.push(m1.labels[i].clone());
    }
    for (i, &v) in c2.iter().enumerate() {
        if i == p2 {
            continue;
        }
        cols.push(v.shift_up(r1 - 1));
        let mut l = m2.labels[i].clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    MatrixPresentation::with_labels(m1.q, rows, cols, labels)
}

/// Parallel connection along the columns `p1` of `m1` and `p2` of `m2`.
pub fn parallel_connection(
    m1: &MatrixPresentation,
    p1: usize,
    m2: &MatrixPresentation,
    p2: usize,
) -> Result<MatrixPresentation> {
    glue(m1, p1, m2, p2, true)
}

/// 2-sum: the parallel connection with the basepoint deleted.
pub fn two_sum(
    m1: &MatrixPresentation,
    p1: usize,
    m2: &MatrixPresentation,
    p2: usize,
) -> Result<MatrixPresentation> {
    glue(m1, p1, m2, p2, false)
}

/// The ternary matroid obtained from a k-circuit by 2-summing a copy of
/// U(2,4) at each circuit element listed in `d` (indices 0..k).
pub fn circuit_with_u24(k: usize, d: &[usize]) -> Result<MatrixPresentation> {
    let q = FieldOrder::Three;
    let mut m = circuit(k, q)?;
    let mut ds: Vec<usize> = d.to_vec();
    ds.sort_unstable();
    ds.dedup();
    if let Some(&bad) = ds.iter().find(|&&i| i >= k) {
        return Err(Error::domain(format!(
            "element {bad} is not in a {k}-circuit"
        )));
    }
    let labels: Vec<String> = m.labels.clone();
    let u24 = uniform(2, 4, q)?;
    for &i in &ds {
        let pos = m.column(&labels[i]).expect("circuit labels survive 2-sums");
        let mut piece = u24.clone();
        piece.labels = (1..=4).map(|j| format!("{}{}", labels[i], j)).collect();
        m = two_sum(&m, pos, &piece, 0)?;
    }
    Ok(m)
}

/// M(K4) with the fourth point of a triangle avoiding column 0 added.
fn k4_with_point(q: FieldOrder) -> Result<MatrixPresentation> {
    // edges 0-1, 0-2, 0-3, 1-2, 1-3, 2-3; column 0 is the basepoint
    let mut m = graph_cycle_matroid(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], q)?;
    // triangle 1-2, 2-3, 1-3 avoids edge 0-1; its line's fourth point is
    // (1-2) - (2-3)
    let a = m.columns[3];
    let b = m.columns[5];
    let extra = a.sub(b, q);
    m.columns.push(extra);
    m.labels.push("q".into());
    Ok(m)
}

/// The ternary ladder family with exactly four connected hyperplanes:
/// 5n + 8 elements and rank 2n + 3.
pub fn four_hyperplane_family(n: usize) -> Result<MatrixPresentation> {
    if n == 0 {
        return Err(Error::domain("the ladder needs at least one rung"));
    }
    Error::check_cap("ladder length", n, FAMILY_CAP)?;
    let q = FieldOrder::Three;
    // x_i is vertex i, y_i is vertex n + i
    let (x, y) = (|i: usize| i, |i: usize| n + i);
    let mut edges = vec![(x(0), y(0))];
    for i in 0..n - 1 {
        edges.push((x(i), x(i + 1)));
        edges.push((y(i), y(i + 1)));
        edges.push((x(i + 1), y(i + 1)));
        edges.push((x(i), y(i + 1)));
        edges.push((x(i + 1), y(i)));
    }
    let ladder = graph_cycle_matroid(&edges, q)?;
    let mut n1 = k4_with_point(q)?;
    n1.labels = n1.labels.iter().map(|l| format!("N1:{l}")).collect();
    let mut n2 = k4_with_point(q)?;
    n2.labels = n2.labels.iter().map(|l| format!("N2:{l}")).collect();
    if n == 1 {
        // the ladder is the single edge x1y1, which becomes the shared basepoint
        let mut m = parallel_connection(&n1, 0, &n2, 0)?;
        m.labels[0] = format!("{}-{}", x(0), y(0));
        return Ok(m);
    }
    let first = format!("{}-{}", x(0), y(0));
    let last = format!("{}-{}", x(n - 1), y(n - 1));
    let m = parallel_connection(&ladder, ladder.column(&first).unwrap(), &n1, 0)?;
    let pos = m.column(&last).unwrap();
    parallel_connection(&m, pos, &n2, 0)
}

/// The rank-3 ternary whirl: three 3-point lines, pairwise meeting, with the
/// three meeting points not collinear.
pub fn whirl3() -> Result<MatrixPresentation> {
    let q = FieldOrder::Three;
    let cols = ["100", "010", "001", "110", "011", "101"]
        .map(|s| GfVec::from_coords(&digits(s)))
        .to_vec();
    MatrixPresentation::new(q, 3, cols)
}

struct DataFile {
    name: &'static str,
    text: &'static str,
}

const DATA: &[DataFile] = &[
    DataFile {
        name: "Delta5",
        text: include_str!("../data/delta5.txt"),
    },
    DataFile {
        name: "T12/e",
        text: include_str!("../data/t12e.txt"),
    },
    DataFile {
        name: "M5,12a",
        text: include_str!("../data/m512a.txt"),
    },
    DataFile {
        name: "M5,12b",
        text: include_str!("../data/m512b.txt"),
    },
    DataFile {
        name: "M5,13",
        text: include_str!("../data/m513.txt"),
    },
    DataFile {
        name: "K33",
        text: include_str!("../data/k33.txt"),
    },
    DataFile {
        name: "m2a",
        text: include_str!("../data/m2a.txt"),
    },
    DataFile {
        name: "m2b",
        text: include_str!("../data/m2b.txt"),
    },
    DataFile {
        name: "extra-a",
        text: include_str!("../data/extra-a.txt"),
    },
    DataFile {
        name: "extra-b",
        text: include_str!("../data/extra-b.txt"),
    },
    DataFile {
        name: "f77",
        text: include_str!("../data/f77.txt"),
    },
];

/// Edge lists of the six 5-vertex graphs whose cycle matroids are the
/// small sides of the rank-4 binary minimal non-comatroids.
pub const MINIMAL_GRAPHS: &[(&str, &[(usize, usize)])] = &[
    ("C5", &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
    (
        "C5+chord",
        &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)],
    ),
    ("K23", &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
    (
        "fan5",
        &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2), (0, 3)],
    ),
    (
        "C5+crossed",
        &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2), (1, 3)],
    ),
    (
        "K113",
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
    ),
];

fn graph(name: &str) -> Option<&'static [(usize, usize)]> {
    MINIMAL_GRAPHS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, e)| *e)
}

/// Fixed catalog names (parametric names such as `PG(3,2)` are also accepted).
pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = DATA.iter().map(|d| d.name.to_string()).collect();
    names.extend(
        [
            "F7",
            "K23",
            "M(K4)",
            "M(K4)@3",
            "W3",
            "U23",
            "U24",
            "U34",
            "U34@3",
            "P(U34,U34)",
            "P(U23,U23)",
            "U24+2U23",
            "U24+2U24",
            "P(U24,U23)",
            "P(F7,U23)",
            "AG(2,3)\\e",
            "family(1)",
            "family(2)",
        ]
        .map(String::from),
    );
    names.extend(MINIMAL_GRAPHS.iter().map(|(n, _)| format!("M({n})")));
    names
}

fn parse_params(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Looks up a catalog entry. An `@q` suffix selects the field where an entry
/// exists over both GF(2) and GF(3).
pub fn named(name: &str) -> Result<MatrixPresentation> {
    let (base, field) = match name.rsplit_once('@') {
        Some((b, f)) => {
            let q: u32 = f.parse().map_err(|_| Error::Catalog(name.to_string()))?;
            (b, Some(FieldOrder::new(q)?))
        }
        None => (name, None),
    };
    let bin = field.unwrap_or(FieldOrder::Two);
    let ter = field.unwrap_or(FieldOrder::Three);
    let only = |want: FieldOrder| -> Result<FieldOrder> {
        match field {
            Some(f) if f != want => Err(Error::Catalog(name.to_string())),
            _ => Ok(want),
        }
    };
    if let Some(d) = DATA.iter().find(|d| d.name == base) {
        only(FieldOrder::Two)?;
        return match parse_matroid_text(d.text)? {
            MatroidText::Matrix(p) => Ok(p),
            MatroidText::Points(_) => unreachable!("bundled data is in matrix form"),
        };
    }
    let q2 = FieldOrder::Two;
    let q3 = FieldOrder::Three;
    match base {
        "F7" => return projective_geometry(3, only(q2)?),
        "K23" | "M(K23)" => {
            return graph_cycle_matroid(graph("K23").unwrap(), bin);
        }
        "M(K4)" | "K4" => {
            return graph_cycle_matroid(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], bin)
        }
        "W3" => {
            only(q3)?;
            return whirl3();
        }
        "U23" => return uniform(2, 3, bin),
        "U24" => return uniform(2, 4, only(q3)?),
        "U34" => return uniform(3, 4, bin),
        "P(U34,U34)" => {
            let c = circuit(4, bin)?;
            return parallel_connection(&c, 0, &c, 0);
        }
        "P(U23,U23)" => {
            let c = circuit(3, ter)?;
            return parallel_connection(&c, 0, &c, 0);
        }
        "U24+2U23" => return circuit_with_u24(3, &[0]),
        "U24+2U24" => {
            let u = uniform(2, 4, only(q3)?)?;
            return two_sum(&u, 0, &u, 0);
        }
        "P(U24,U23)" => {
            let u = uniform(2, 4, only(q3)?)?;
            return parallel_connection(&u, 0, &circuit(3, q3)?, 0);
        }
        "P(F7,U23)" => {
            let f7 = projective_geometry(3, only(q2)?)?;
            return parallel_connection(&f7, 0, &circuit(3, q2)?, 0);
        }
        "AG(2,3)\\e" => {
            let mut ag = affine_geometry(3, only(q3)?)?;
            ag.columns.pop();
            ag.labels.pop();
            return Ok(ag);
        }
        _ => {}
    }
    if let Some(g) = base.strip_prefix("M(").and_then(|s| s.strip_suffix(')')) {
        if let Some(edges) = graph(g) {
            return graph_cycle_matroid(edges, bin);
        }
    }
    let call = |prefix: &str| {
        base.strip_prefix(prefix)
            .and_then(|s| s.strip_suffix(')'))
            .and_then(parse_params)
    };
    if let Some(p) = call("PG(") {
        if let [n, q] = p[..] {
            return projective_geometry(n + 1, FieldOrder::new(q as u32)?);
        }
    }
    if let Some(p) = call("AG(") {
        if let [n, q] = p[..] {
            return affine_geometry(n + 1, FieldOrder::new(q as u32)?);
        }
    }
    if let Some(p) = call("U(") {
        if let [r, n] = p[..] {
            return uniform(r, n, bin);
        }
    }
    if let Some(p) = call("circuit(") {
        if let [k] = p[..] {
            return circuit(k, bin);
        }
    }
    if let Some(p) = call("family(") {
        if let [n] = p[..] {
            only(q3)?;
            return four_hyperplane_family(n);
        }
    }
    Err(Error::Catalog(name.to_string()))
}
