//! Finite abstract simplicial complexes over named vertices.
//!
//! A complex stores its full face-closed simplex set, so free-face queries and
//! certificate replay reduce to set lookups. Vertex identity is the name.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{parse_err, Error, Result};

/// A named vertex; names are nonempty tokens over `[A-Za-z0-9_]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(String);

impl Vertex {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_token(&name) {
            Ok(Self(name))
        } else {
            Err(Error::InvalidVertex(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A simplex: a strictly sorted, nonempty vertex set.
///
/// Ordering is lexicographic on the sorted vertex names, with a proper prefix
/// (a face) ordered before its extensions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedSimplex("empty vertex set".into()));
        }
        let mut sorted = vertices;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(format!("vertex {} repeated", w[0])));
        }
        Ok(Self(sorted))
    }

    /// Builds a simplex from whitespace separated names, or from a run of
    /// single-character names when there is no whitespace (`"wd"` is the edge
    /// `w d`).
    pub fn parse(text: &str) -> Result<Self> {
        let names: Vec<String> = if text.split_whitespace().count() > 1 {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.trim().chars().map(String::from).collect()
        };
        Self::from_names(names.iter().map(String::as_str))
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let vertices = names
            .into_iter()
            .map(Vertex::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains_vertex(v))
    }

    /// Faces of codimension one; empty for a vertex.
    pub fn boundary(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                let mut vs = self.0.clone();
                vs.remove(skip);
                Simplex(vs)
            })
            .collect()
    }

    /// Every nonempty face, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i].clone())
                        .collect(),
                )
            })
            .collect()
    }

    pub fn join_vertex(&self, v: &Vertex) -> Result<Simplex> {
        let mut vs = self.0.clone();
        vs.push(v.clone());
        Simplex::new(vs)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite simplicial complex, stored as its face-closed simplex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Face closure of the given simplices.
    pub fn build(name: impl Into<String>, maximal: impl IntoIterator<Item = Simplex>) -> Self {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            if simplices.contains(&s) {
                continue;
            }
            simplices.extend(s.faces());
        }
        Self {
            name: name.into(),
            simplices,
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self::build(name, std::iter::empty())
    }

    /// Wraps an already face-closed set. Callers inside the crate guarantee closure.
    pub(crate) fn from_closed(name: String, simplices: BTreeSet<Simplex>) -> Self {
        Self { name, simplices }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| &s.0[0])
    }

    pub fn has_vertex(&self, v: &Vertex) -> bool {
        self.simplices.contains(&Simplex::vertex(v.clone()))
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn is_single_vertex(&self) -> bool {
        self.simplices.len() == 1
    }

    /// Simplices that are not a proper face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.dim() == s.dim() + 1 && s.is_face_of(t))
            })
            .cloned()
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// True when every nonempty face of every member is a member.
    pub fn is_face_closed(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| s.boundary().iter().all(|f| self.simplices.contains(f)))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            name: format!("{}+{}", self.name, other.name),
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            name: format!("{}^{}", self.name, other.name),
            simplices: self
                .simplices
                .intersection(&other.simplices)
                .cloned()
                .collect(),
        }
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// The cone `K * apex`.
    pub fn cone(&self, apex: &Vertex) -> Result<SimplicialComplex> {
        if self.has_vertex(apex) {
            return Err(Error::ApexPresent(apex.to_string()));
        }
        let mut simplices = self.simplices.clone();
        simplices.insert(Simplex::vertex(apex.clone()));
        for s in &self.simplices {
            simplices.insert(s.join_vertex(apex)?);
        }
        Ok(SimplicialComplex {
            name: format!("cone({})", self.name),
            simplices,
        })
    }

    /// Parses the `.scx` format: `#` comments, one maximal simplex per line.
    pub fn parse_scx(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut maximal = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let simplex = Simplex::from_names(line.split_whitespace())
                .map_err(|e| parse_err(i + 1, e.to_string()))?;
            maximal.push(simplex);
        }
        Ok(Self::build(name, maximal))
    }

    /// Serializes the maximal simplices in `.scx` form.
    pub fn to_scx(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        for s in self.maximal_simplices() {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(rows: &[&str]) -> SimplicialComplex {
        SimplicialComplex::build("t", rows.iter().map(|s| Simplex::parse(s).unwrap()))
    }

    #[test]
    fn triangle_closure_has_seven_simplices() {
        let k = cx(&["abc"]);
        assert_eq!(k.len(), 7);
        assert_eq!(k.count_by_dim(), vec![3, 3, 1]);
        assert!(k.is_face_closed());
    }

    #[test]
    fn empty_build() {
        let k = cx(&[]);
        assert!(k.is_empty());
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn repeated_vertex_is_malformed() {
        let err = Simplex::from_names(["a", "b", "a"]).unwrap_err();
        assert!(matches!(err, Error::MalformedSimplex(_)));
        assert!(Vertex::new("a-b").is_err());
        assert!(Vertex::new("").is_err());
    }

    #[test]
    fn euler_small_cases() {
        assert_eq!(cx(&["a"]).euler_characteristic(), 1);
        assert_eq!(cx(&["ab", "bc", "ac"]).euler_characteristic(), 0);
        assert_eq!(cx(&["ab", "cd"]).euler_characteristic(), 2);
    }

    #[test]
    fn set_algebra_is_idempotent() {
        let k = cx(&["abc", "cd"]);
        assert_eq!(k.union(&k).simplices(), k.simplices());
        assert_eq!(k.intersection(&k).simplices(), k.simplices());
        assert!(cx(&["ab"]).is_subcomplex_of(&k));
        assert!(!cx(&["bd"]).is_subcomplex_of(&k));
    }

    #[test]
    fn cone_over_point_and_circle() {
        let apex = Vertex::new("z").unwrap();
        let edge = cx(&["a"]).cone(&apex).unwrap();
        assert_eq!(edge.simplices(), cx(&["az"]).simplices());
        let disk = cx(&["ab", "bc", "ac"]).cone(&apex).unwrap();
        assert_eq!(disk.euler_characteristic(), 1);
        assert!(disk.is_face_closed());
        assert!(matches!(
            cx(&["ab"]).cone(&Vertex::new("a").unwrap()),
            Err(Error::ApexPresent(_))
        ));
    }

    #[test]
    fn scx_roundtrip_and_comments() {
        let text = "# header\n\na b c\n  c d  \n";
        let k = SimplicialComplex::parse_scx("k", text).unwrap();
        assert_eq!(k.simplices(), cx(&["abc", "cd"]).simplices());
        let again = SimplicialComplex::parse_scx("k", &k.to_scx()).unwrap();
        assert_eq!(again, k);
        let bad = SimplicialComplex::parse_scx("k", "a b\nx x\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn simplex_order_puts_faces_first() {
        let a = Simplex::parse("a").unwrap();
        let ab = Simplex::parse("ab").unwrap();
        let ac = Simplex::parse("ac").unwrap();
        let b = Simplex::parse("b").unwrap();
        assert!(a < ab && ab < ac && ac < b);
        assert_eq!(
            Simplex::parse("w d").unwrap(),
            Simplex::parse("dw").unwrap()
        );
    }
}
