//! Matrix presentations and the line-oriented matroid text format.
//!
//! ```text
//! # a triangle over GF(2)
//! q=2 rows=2
//! 10 a
//! 01 b
//! 11 c
//! ```
//!
//! A point-set form is also accepted:
//!
//! ```text
//! pg q=3 rank=3 green=0,1,4
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Echelon, FieldOrder, GfVec, MAX_COORDS};
use crate::matroid::EmbeddedMatroid;
use crate::pointset::PointSet;
use crate::space::PointSpace;

/// A matrix over GF(q) given by its columns, each optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPresentation {
    pub q: FieldOrder,
    pub rows: usize,
    pub columns: Vec<GfVec>,
    pub labels: Vec<String>,
}

/// An embedded matroid together with the point assigned to each column.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub matroid: EmbeddedMatroid,
    pub column_points: Vec<usize>,
    pub labels: Vec<String>,
}

impl Embedded {
    /// Point index of the column with the given label.
    pub fn point(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.column_points[i])
    }

    /// The points of the labelled columns; unknown labels are an error.
    pub fn label_set(&self, labels: &[&str]) -> Result<PointSet> {
        let mut s = self.matroid.space().empty_set();
        for l in labels {
            let p = self
                .point(l)
                .ok_or_else(|| Error::domain(format!("no column labelled `{l}`")))?;
            s.insert(p);
        }
        Ok(s)
    }

    /// Labels of the columns whose points lie in `s`, in column order.
    pub fn labels_of(&self, s: &PointSet) -> Vec<&str> {
        self.column_points
            .iter()
            .zip(&self.labels)
            .filter(|(p, _)| s.contains(**p))
            .map(|(_, l)| l.as_str())
            .collect()
    }
}

fn default_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < 26 {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl MatrixPresentation {
    pub fn new(q: FieldOrder, rows: usize, columns: Vec<GfVec>) -> Result<Self> {
        let labels = (0..columns.len()).map(default_label).collect();
        Self::with_labels(q, rows, columns, labels)
    }

    pub fn with_labels(
        q: FieldOrder,
        rows: usize,
        columns: Vec<GfVec>,
        labels: Vec<String>,
    ) -> Result<Self> {
        Error::check_cap("matrix rows", rows, MAX_COORDS)?;
        if labels.len() != columns.len() {
            return Err(Error::domain("label count differs from column count"));
        }
        if let Some(i) = columns.iter().position(|c| c.support() >> rows != 0) {
            return Err(Error::domain(format!(
                "column {i} is longer than {rows} rows"
            )));
        }
        Ok(MatrixPresentation {
            q,
            rows,
            columns,
            labels,
        })
    }

    /// Builds a presentation from digit strings, one per column.
    pub fn from_digit_columns(q: FieldOrder, cols: &[(&str, &str)]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.1.len());
        let mut columns = Vec::new();
        let mut labels = Vec::new();
        for (i, (label, digits)) in cols.iter().enumerate() {
            columns.push(parse_digits(digits, rows, q).map_err(|m| Error::parse(i + 1, m))?);
            labels.push(label.to_string());
        }
        Self::with_labels(q, rows, columns, labels)
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn rank(&self) -> usize {
        crate::field::rank_of_vectors(self.columns.iter().copied(), self.q)
    }

    pub fn column(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Embeds the columns into PG(r-1, q) where r is the rank.
    ///
    /// When the rows are independent the columns are used as they are;
    /// otherwise coordinates are taken relative to a greedy column basis.
    pub fn embed(&self) -> Result<Embedded> {
        let q = self.q;
        if let Some(i) = self.columns.iter().position(|c| c.is_zero()) {
            return Err(Error::Simplicity(format!(
                "column `{}` is zero",
                self.labels[i]
            )));
        }
        let r = self.rank();
        let coords: Vec<GfVec> = if r == self.rows {
            self.columns.clone()
        } else {
            let mut e = Echelon::new(q);
            for &c in &self.columns {
                e.insert(c);
            }
            self.columns
                .iter()
                .map(|&c| e.coordinates(c).expect("column lies in the column span"))
                .collect()
        };
        let space = PointSpace::get(q, r)?;
        let mut green = space.empty_set();
        let mut column_points = Vec::with_capacity(coords.len());
        for (i, &v) in coords.iter().enumerate() {
            let p = space.index_of(v);
            if green.contains(p) {
                let j = column_points.iter().position(|&x| x == p).unwrap();
                return Err(Error::Simplicity(format!(
                    "columns `{}` and `{}` are parallel",
                    self.labels[j], self.labels[i]
                )));
            }
            green.insert(p);
            column_points.push(p);
        }
        Ok(Embedded {
            matroid: EmbeddedMatroid::new(space, green),
            column_points,
            labels: self.labels.clone(),
        })
    }

    /// A presentation whose columns are the green points in index order.
    pub fn from_matroid(m: &EmbeddedMatroid) -> Self {
        let columns = m.vectors(m.green());
        let labels = m.green().iter().map(|i| format!("p{i}")).collect();
        MatrixPresentation {
            q: m.field(),
            rows: m.ambient_rank(),
            columns,
            labels,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "q={} rows={}", self.q.q(), self.rows).unwrap();
        for (c, l) in self.columns.iter().zip(&self.labels) {
            let digits: String = c
                .coords(self.rows)
                .iter()
                .map(|d| (b'0' + d) as char)
                .collect();
            writeln!(out, "{digits} {l}").unwrap();
        }
        out
    }
}

fn parse_digits(s: &str, rows: usize, q: FieldOrder) -> std::result::Result<GfVec, String> {
    if s.len() != rows {
        return Err(format!("expected {rows} digits, found `{s}`"));
    }
    let mut coords = Vec::with_capacity(rows);
    for ch in s.chars() {
        let d = ch
            .to_digit(10)
            .filter(|&d| d < q.q())
            .ok_or_else(|| format!("`{ch}` is not an element of {q}"))?;
        coords.push(d as u8);
    }
    Ok(GfVec::from_coords(&coords))
}

/// Contents of a matroid file.
#[derive(Clone, Debug)]
pub enum MatroidText {
    Matrix(MatrixPresentation),
    Points(EmbeddedMatroid),
}

impl MatroidText {
    pub fn into_embedded(self) -> Result<Embedded> {
        match self {
            MatroidText::Matrix(p) => p.embed(),
            MatroidText::Points(m) => {
                let column_points = m.green().to_vec();
                let labels = column_points.iter().map(|i| format!("p{i}")).collect();
                Ok(Embedded {
                    matroid: m,
                    column_points,
                    labels,
                })
            }
        }
    }
}

fn parse_kv<'a>(token: &'a str, key: &str, line: usize) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, format!("expected `{key}=...`, found `{token}`")))
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a number")))
}

/// Parses either text form.
pub fn parse_matroid_text(text: &str) -> Result<MatroidText> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty matroid description"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens[0] == "pg" {
        if tokens.len() != 4 {
            return Err(Error::parse(
                hline,
                "expected `pg q=<q> rank=<r> green=<list>`",
            ));
        }
        let q = FieldOrder::new(parse_num(parse_kv(tokens[1], "q", hline)?, hline)? as u32)
            .map_err(|e| Error::parse(hline, e.to_string()))?;
        let rank = parse_num(parse_kv(tokens[2], "rank", hline)?, hline)?;
        let space = PointSpace::get(q, rank)?;
        let list = parse_kv(tokens[3], "green", hline)?;
        let mut green = space.empty_set();
        for item in list.split(',').filter(|s| !s.is_empty()) {
            let i = parse_num(item, hline)?;
            if i >= space.len() {
                return Err(Error::parse(
                    hline,
                    format!("point {i} is outside PG({}, {})", rank as isize - 1, q.q()),
                ));
            }
            green.insert(i);
        }
        if let Some((l, _)) = lines.next() {
            return Err(Error::parse(l, "unexpected content after point-set line"));
        }
        return Ok(MatroidText::Points(EmbeddedMatroid::new(space, green)));
    }
    if tokens.len() != 2 {
        return Err(Error::parse(hline, "expected header `q=<2|3> rows=<r>`"));
    }
    let q = FieldOrder::new(parse_num(parse_kv(tokens[0], "q", hline)?, hline)? as u32)
        .map_err(|e| Error::parse(hline, e.to_string()))?;
    let rows = parse_num(parse_kv(tokens[1], "rows", hline)?, hline)?;
    if rows > MAX_COORDS {
        return Err(Error::parse(
            hline,
            format!("at most {MAX_COORDS} rows are supported"),
        ));
    }
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for (l, body) in lines {
        let mut parts = body.split_whitespace();
        let digits = parts.next().unwrap();
        let label = parts
            .next()
            .map(str::to_string)
            .unwrap_or_else(|| default_label(columns.len()));
        if parts.next().is_some() {
            return Err(Error::parse(
                l,
                "expected a digit string and an optional label",
            ));
        }
        columns.push(parse_digits(digits, rows, q).map_err(|m| Error::parse(l, m))?);
        labels.push(label);
    }
    Ok(MatroidText::Matrix(MatrixPresentation::with_labels(
        q, rows, columns, labels,
    )?))
}

/// The point-set form of an embedded matroid.
pub fn to_point_text(m: &EmbeddedMatroid) -> String {
    format!(
        "pg q={} rank={} green={}\n",
        m.field().q(),
        m.ambient_rank(),
        m.green()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_embeds_to_basis_points() {
        let q = FieldOrder::Two;
        let p = MatrixPresentation::new(q, 3, (0..3).map(GfVec::unit).collect()).unwrap();
        let e = p.embed().unwrap();
        assert_eq!(e.matroid.len(), 3);
        assert_eq!(e.matroid.rank(), 3);
        assert_eq!(e.matroid.ambient_rank(), 3);
    }

    #[test]
    fn dependent_rows_are_trimmed() {
        let q = FieldOrder::Two;
        let p =
            MatrixPresentation::from_digit_columns(q, &[("a", "110"), ("b", "011"), ("c", "101")])
                .unwrap();
        let e = p.embed().unwrap();
        assert_eq!(e.matroid.ambient_rank(), 2);
        assert_eq!(e.matroid.len(), 3);
    }

    #[test]
    fn parallel_columns_are_rejected() {
        let q = FieldOrder::Three;
        let p = MatrixPresentation::from_digit_columns(q, &[("a", "12"), ("b", "21"), ("c", "10")])
            .unwrap();
        assert!(matches!(p.embed(), Err(Error::Simplicity(_))));
    }

    #[test]
    fn text_round_trip() {
        let text = "# triangle\nq=3 rows=2\n10 a\n01 b\n11 c # sum\n12\n";
        let parsed = parse_matroid_text(text).unwrap();
        let MatroidText::Matrix(p) = parsed else {
            panic!("expected a matrix")
        };
        assert_eq!(p.labels, vec!["a", "b", "c", "d"]);
        let again = parse_matroid_text(&p.to_text()).unwrap();
        let MatroidText::Matrix(p2) = again else {
            panic!("expected a matrix")
        };
        assert_eq!(p, p2);

        let m = p.embed().unwrap().matroid;
        let pts = parse_matroid_text(&to_point_text(&m)).unwrap();
        assert_eq!(pts.into_embedded().unwrap().matroid, m);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_matroid_text("q=2 rows=3\n101\n1021\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "expected 3 digits, found `1021`"));
        let err = parse_matroid_text("q=2 rows=2\n12\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_matroid_text("q=5 rows=2\n").is_err());
        assert!(parse_matroid_text("pg q=2 rank=3 green=0,9\n").is_err());
    }
}
