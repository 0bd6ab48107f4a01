//! Simplices, chains and filtrations with exact rational insertion times.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::exactla::{format_scalar, int, parse_scalar, ExactMatrix, Scalar};

/// An oriented simplex. Vertices are strictly increasing, which fixes the
/// standard orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Sorts the vertices; `None` for an empty list or a repeated vertex.
    pub fn new(mut vertices: Vec<u32>) -> Option<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self(vertices))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces with the alternating signs `(-1)^q` of the
    /// boundary formula. Empty for a vertex.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |q| {
            let mut face = self.0.clone();
            face.remove(q);
            (if q % 2 == 0 { 1 } else { -1 }, Simplex(face))
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A filtration parameter: a finite rational or the point at infinity, which
/// sorts after every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimeValue {
    Finite(Scalar),
    Infinite,
}

impl TimeValue {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }
}

impl From<Scalar> for TimeValue {
    fn from(v: Scalar) -> Self {
        Self::Finite(v)
    }
}

impl fmt::Display for TimeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => f.write_str(&format_scalar(v)),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// A `p`-chain: sparse rational combination of `p`-simplices with no stored
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Simplex, Scalar>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Simplex, Scalar)>) -> Self {
        let mut chain = Self::zero(dim);
        for (s, c) in terms {
            chain.add_term(s, &c);
        }
        chain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Simplex) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, s: Simplex, coeff: &Scalar) {
        assert_eq!(s.dim(), self.dim, "simplex {s} does not belong to a {}-chain", self.dim);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(s);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Scalar, other: &Chain) {
        assert_eq!(self.dim, other.dim, "chain dimension mismatch");
        for (s, c) in &other.terms {
            self.add_term(s.clone(), &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Chain {
        let mut out = Chain::zero(self.dim);
        out.add_scaled(factor, self);
        out
    }

    /// Boundary as a chain one dimension down; zero for 0-chains.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.dim.saturating_sub(1));
        if self.dim == 0 {
            return out;
        }
        for (s, c) in &self.terms {
            for (sign, face) in s.boundary() {
                out.add_term(face, &(c * int(sign)));
            }
        }
        out
    }

    /// Euclidean inner product in the simplex basis.
    pub fn dot(&self, other: &Chain) -> Scalar {
        self.terms.iter().filter_map(|(s, c)| other.terms.get(s).map(|d| c * d)).fold(Scalar::zero(), |acc, v| acc + v)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("{}*{}", format_scalar(c), s)).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    MissingFace,
    FaceLater,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: time `{token}` is not a rational number")]
    NonRationalTime { line: usize, token: String },
    #[error("{}duplicate simplex {simplex}", line_prefix(.line))]
    DuplicateSimplex { line: Option<usize>, simplex: Simplex },
    #[error("{}simplex {simplex} {}", line_prefix(.line), closure_reason(.kind, .face))]
    ClosureViolation { line: Option<usize>, simplex: Simplex, face: Simplex, kind: ClosureKind },
    #[error("invalid JSON filtration: {0}")]
    Json(String),
}

fn line_prefix(line: &Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

fn closure_reason(kind: &ClosureKind, face: &Simplex) -> String {
    match kind {
        ClosureKind::MissingFace => format!("is missing its face {face}"),
        ClosureKind::FaceLater => format!("is inserted before its face {face}"),
    }
}

/// A simplicial complex whose simplices carry exact insertion times.
///
/// Simplices are held in a global filtration order: by time, then dimension,
/// then lexicographic vertices. Restricted to one dimension this order is
/// (time, lexicographic), which is the column order of every boundary matrix.
/// All `p`-simplices present at time `t` therefore form a prefix of the
/// dimension-`p` list.
#[derive(Clone, Debug)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    times: Vec<Scalar>,
    critical_times: Vec<Scalar>,
    by_dim: Vec<Vec<usize>>,
    column: Vec<usize>,
    lookup: HashMap<Simplex, usize>,
}

impl PartialEq for Filtration {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices && self.times == other.times
    }
}

impl Eq for Filtration {}

impl Filtration {
    pub fn new(entries: Vec<(Simplex, Scalar)>) -> Result<Self, ComplexError> {
        Self::build(entries.into_iter().map(|(s, t)| (s, t, None)).collect())
    }

    pub fn empty() -> Self {
        Self::build(Vec::new()).expect("empty filtration is valid")
    }

    fn build(entries: Vec<(Simplex, Scalar, Option<usize>)>) -> Result<Self, ComplexError> {
        let mut time_of: HashMap<&Simplex, &Scalar> = HashMap::with_capacity(entries.len());
        for (s, t, line) in &entries {
            if time_of.insert(s, t).is_some() {
                return Err(ComplexError::DuplicateSimplex { line: *line, simplex: s.clone() });
            }
        }
        for (s, t, line) in &entries {
            for (_, face) in s.boundary() {
                let kind = match time_of.get(&face) {
                    None => ClosureKind::MissingFace,
                    Some(ft) if *ft > t => ClosureKind::FaceLater,
                    Some(_) => continue,
                };
                return Err(ComplexError::ClosureViolation { line: *line, simplex: s.clone(), face, kind });
            }
        }
        drop(time_of);

        let mut sorted: Vec<(Simplex, Scalar)> = entries.into_iter().map(|(s, t, _)| (s, t)).collect();
        sorted.sort_by(|(a, ta), (b, tb)| ta.cmp(tb).then(a.dim().cmp(&b.dim())).then(a.cmp(b)));
        let (simplices, times): (Vec<_>, Vec<_>) = sorted.into_iter().unzip();

        let mut critical_times = times.clone();
        critical_times.dedup();
        let max_dim = simplices.iter().map(Simplex::dim).max();
        let mut by_dim = vec![Vec::new(); max_dim.map_or(0, |d| d + 1)];
        let mut column = Vec::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            column.push(by_dim[s.dim()].len());
            by_dim[s.dim()].push(i);
        }
        let lookup = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(Self { simplices, times, critical_times, by_dim, column, lookup })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// All simplices in global filtration order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// Insertion time of the simplex at global position `index`.
    pub fn time(&self, index: usize) -> &Scalar {
        &self.times[index]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, &Scalar)> {
        self.simplices.iter().zip(&self.times)
    }

    /// Sorted, deduplicated insertion times.
    pub fn critical_times(&self) -> &[Scalar] {
        &self.critical_times
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn time_of(&self, s: &Simplex) -> Option<&Scalar> {
        self.index_of(s).map(|i| &self.times[i])
    }

    /// Column index of a simplex among simplices of its own dimension.
    pub fn column_of(&self, s: &Simplex) -> Option<usize> {
        self.index_of(s).map(|i| self.column[i])
    }

    /// Global positions of the `p`-simplices, in column order.
    pub fn indices_of_dim(&self, p: usize) -> &[usize] {
        self.by_dim.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn count_of_dim(&self, p: usize) -> usize {
        self.indices_of_dim(p).len()
    }

    /// Number of `p`-simplices with time `<= t`.
    pub fn count_at(&self, p: usize, t: &Scalar) -> usize {
        self.indices_of_dim(p).partition_point(|&i| &self.times[i] <= t)
    }

    /// The `p`-simplices present at `t`, in column order.
    pub fn simplices_at(&self, p: usize, t: &Scalar) -> Vec<&Simplex> {
        let n = self.count_at(p, t);
        self.indices_of_dim(p)[..n].iter().map(|&i| &self.simplices[i]).collect()
    }

    /// For every `p`-simplex (column order) its boundary as `(row, sign)`
    /// pairs, rows being column indices of the `(p-1)`-simplices.
    pub fn boundary_columns(&self, p: usize) -> Vec<Vec<(usize, i64)>> {
        self.indices_of_dim(p)
            .iter()
            .map(|&i| {
                let mut col: Vec<(usize, i64)> =
                    self.simplices[i].boundary().map(|(sign, face)| (self.column[self.lookup[&face]], sign)).collect();
                col.sort_unstable();
                col
            })
            .collect()
    }

    /// Matrix of the boundary map `C_p(K_t) -> C_{p-1}(K_t)`. For `p = 0`
    /// the row index set is empty.
    pub fn boundary_matrix(&self, p: usize, t: &Scalar) -> ExactMatrix {
        let cols = self.count_at(p, t);
        let rows = if p == 0 { 0 } else { self.count_at(p - 1, t) };
        let mut m = ExactMatrix::zeros(rows, cols);
        if p == 0 {
            return m;
        }
        for (c, col) in self.boundary_columns(p).into_iter().take(cols).enumerate() {
            for (r, sign) in col {
                m.set(r, c, int(sign));
            }
        }
        m
    }

    /// `δ^p = ∂_{p+1}^T` at time `t`.
    pub fn coboundary_matrix(&self, p: usize, t: &Scalar) -> ExactMatrix {
        let m = self.boundary_matrix(p + 1, t);
        if m.ncols() == 0 {
            // keep the column count right even when no (p+1)-simplex exists
            return ExactMatrix::zeros(0, self.count_at(p, t));
        }
        m.transpose()
    }

    /// Coordinates of `chain` in `C_p(K_t)`; `None` if its support is not in `K_t`.
    pub fn chain_vector(&self, chain: &Chain, t: &Scalar) -> Option<Vec<Scalar>> {
        let n = self.count_at(chain.dim(), t);
        let mut v = vec![Scalar::zero(); n];
        for (s, c) in chain.terms() {
            let i = self.index_of(s)?;
            let col = self.column[i];
            if col >= n {
                return None;
            }
            v[col] = c.clone();
        }
        Some(v)
    }

    /// Chain with coordinates `v` over the first `v.len()` `p`-simplices.
    pub fn chain_from_vector(&self, p: usize, v: &[Scalar]) -> Chain {
        let idx = self.indices_of_dim(p);
        Chain::from_terms(p, v.iter().enumerate().map(|(c, x)| (self.simplices[idx[c]].clone(), x.clone())))
    }

    /// Latest insertion time over the support of `chain`, or `None` if the
    /// chain is zero or mentions a simplex outside the complex.
    pub fn support_time(&self, chain: &Chain) -> Option<Scalar> {
        let mut latest: Option<&Scalar> = None;
        for (s, _) in chain.terms() {
            let t = self.time_of(s)?;
            if latest.is_none_or(|l| t > l) {
                latest = Some(t);
            }
        }
        latest.cloned()
    }

    /// Text form accepted by [`parse_filtration`], in filtration order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, t) in self.entries() {
            out.push_str(&format_scalar(t));
            for v in s.vertices() {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Parses `<time> <v0> ... <vk>` lines. Blank lines and lines starting with
/// `#` are skipped.
pub fn parse_filtration(text: &str) -> Result<Filtration, ComplexError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let time_token = tokens.next().expect("non-empty line has a token");
        let time = parse_scalar(time_token)
            .ok_or_else(|| ComplexError::NonRationalTime { line, token: time_token.to_string() })?;
        let vertices = tokens
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| ComplexError::MalformedLine {
                    line,
                    message: format!("`{tok}` is not a non-negative vertex id"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.is_empty() {
            return Err(ComplexError::MalformedLine { line, message: "no vertices".into() });
        }
        let simplex = Simplex::new(vertices)
            .ok_or_else(|| ComplexError::MalformedLine { line, message: "repeated vertex".into() })?;
        entries.push((simplex, time, Some(line)));
    }
    Filtration::build(entries)
}

#[derive(Deserialize)]
struct JsonFiltration {
    simplices: Vec<JsonSimplex>,
}

#[derive(Deserialize)]
struct JsonSimplex {
    t: serde_json::Value,
    v: Vec<u32>,
}

/// Parses `{"simplices":[{"t":"3/2","v":[0,1]}, ...]}`. Times may be strings
/// or JSON integers; entry positions (1-based) stand in for line numbers.
pub fn parse_filtration_json(text: &str) -> Result<Filtration, ComplexError> {
    let doc: JsonFiltration = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
    let mut entries = Vec::with_capacity(doc.simplices.len());
    for (n, item) in doc.simplices.into_iter().enumerate() {
        let line = n + 1;
        let token = match &item.t {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(num) => num.to_string(),
            other => other.to_string(),
        };
        let time = parse_scalar(&token).ok_or(ComplexError::NonRationalTime { line, token })?;
        let simplex = Simplex::new(item.v)
            .ok_or_else(|| ComplexError::MalformedLine { line, message: "empty or repeated vertex list".into() })?;
        entries.push((simplex, time, Some(line)));
    }
    Filtration::build(entries)
}

/// Dispatches on the first non-blank character: `{` means JSON.
pub fn parse_filtration_auto(text: &str) -> Result<Filtration, ComplexError> {
    if text.trim_start().starts_with('{') {
        parse_filtration_json(text)
    } else {
        parse_filtration(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank, ratio};

    const TRIANGLE: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n2 0 1 2";

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parses_filled_triangle() {
        let f = parse_filtration(TRIANGLE).unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(f.critical_times(), &[int(0), int(1), int(2)]);
        assert_eq!(f.time_of(&s(&[0, 1, 2])), Some(&int(2)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_filtration("1 0 1"),
            Err(ComplexError::ClosureViolation { kind: ClosureKind::MissingFace, line: Some(1), .. })
        ));
        assert!(matches!(parse_filtration("0 0\n0 0"), Err(ComplexError::DuplicateSimplex { line: Some(2), .. })));
        assert!(matches!(
            parse_filtration("0 0\n0 1\n1 1 0\n0 0 1"),
            Err(ComplexError::DuplicateSimplex { line: Some(4), .. })
        ));
        assert!(matches!(
            parse_filtration("2 0\n0 1\n1 0 1"),
            Err(ComplexError::ClosureViolation { kind: ClosureKind::FaceLater, line: Some(3), .. })
        ));
        assert!(matches!(parse_filtration("x 0"), Err(ComplexError::NonRationalTime { line: 1, .. })));
        assert!(matches!(parse_filtration("1e2 0"), Err(ComplexError::NonRationalTime { .. })));
        assert!(matches!(parse_filtration("0 -9"), Err(ComplexError::MalformedLine { .. })));
        assert!(matches!(parse_filtration("0"), Err(ComplexError::MalformedLine { .. })));
        assert!(matches!(parse_filtration("0 1 1"), Err(ComplexError::MalformedLine { .. })));
    }

    #[test]
    fn error_messages_name_the_simplex() {
        let err = parse_filtration("0 0\n1 0 1").unwrap_err();
        assert_eq!(err.to_string(), "line 2: simplex [0 1] is missing its face [1]");
    }

    #[test]
    fn comments_rationals_and_vertex_order() {
        let f = parse_filtration("# header\n\n1/2 3\n0.5 1\n3/4 3 1\n").unwrap();
        assert_eq!(f.time_of(&s(&[1, 3])), Some(&ratio(3, 4)));
        assert_eq!(f.critical_times(), &[ratio(1, 2), ratio(3, 4)]);
    }

    #[test]
    fn json_matches_text() {
        let json = r#"{"simplices":[{"t":"0","v":[0]},{"t":0,"v":[1]},{"t":"3/2","v":[1,0]}]}"#;
        let a = parse_filtration_json(json).unwrap();
        let b = parse_filtration("0 0\n0 1\n3/2 0 1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_filtration_auto(json).unwrap(), b);
        assert!(matches!(parse_filtration_json("{"), Err(ComplexError::Json(_))));
    }

    #[test]
    fn boundary_matrix_examples() {
        let f = parse_filtration(TRIANGLE).unwrap();
        // columns ab, ac, bc ; rows a, b, c
        let d1 = f.boundary_matrix(1, &int(1));
        assert_eq!(d1, ExactMatrix::from_int_rows(3, &[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]));
        // ∂(abc) = bc - ac + ab
        let d2 = f.boundary_matrix(2, &int(2));
        assert_eq!(d2, ExactMatrix::from_int_rows(1, &[vec![1], vec![-1], vec![1]]));
        let d2_early = f.boundary_matrix(2, &int(1));
        assert_eq!((d2_early.nrows(), d2_early.ncols()), (3, 0));
        assert_eq!(f.boundary_matrix(0, &int(2)).nrows(), 0);
        assert_eq!(rank(&d1), 2);
    }

    #[test]
    fn coboundary_examples() {
        let f = parse_filtration(TRIANGLE).unwrap();
        let delta1 = f.coboundary_matrix(1, &int(2));
        assert_eq!(delta1, ExactMatrix::from_int_rows(3, &[vec![1, -1, 1]]));
        let early = f.coboundary_matrix(1, &int(1));
        assert_eq!((early.nrows(), early.ncols()), (0, 3));
        let delta0 = f.coboundary_matrix(0, &int(2));
        assert!(delta1.mul(&delta0).is_zero());
    }

    #[test]
    fn simplices_at_examples() {
        let f = parse_filtration(TRIANGLE).unwrap();
        assert!(f.simplices_at(1, &int(0)).is_empty());
        assert_eq!(f.simplices_at(1, &int(1)), vec![&s(&[0, 1]), &s(&[0, 2]), &s(&[1, 2])]);
        assert_eq!(f.simplices_at(2, &int(2)), vec![&s(&[0, 1, 2])]);
    }

    #[test]
    fn chain_boundary_and_vectors() {
        let f = parse_filtration(TRIANGLE).unwrap();
        let z = Chain::from_terms(1, [(s(&[0, 1]), int(1)), (s(&[1, 2]), int(1)), (s(&[0, 2]), int(-1))]);
        assert!(z.boundary().is_zero());
        assert_eq!(f.chain_vector(&z, &int(1)), Some(vec![int(1), int(-1), int(1)]));
        assert_eq!(f.chain_from_vector(1, &[int(1), int(-1), int(1)]), z);
        assert_eq!(f.chain_vector(&z, &int(0)), None);
        assert_eq!(f.support_time(&z), Some(int(1)));
        assert_eq!(z.dot(&z), int(3));
    }

    #[test]
    fn text_round_trip() {
        let f = parse_filtration(TRIANGLE).unwrap();
        assert_eq!(parse_filtration(&f.to_text()).unwrap(), f);
    }
}
