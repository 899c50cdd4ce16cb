//! Elementary collapses, certificate replay and collapsibility search.
//!
//! A free face determines its elementary collapse, so certificates store only
//! the free faces; the coface is recomputed at every replay step.

use std::collections::HashSet;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};

/// Default node budget for the exhaustive search.
pub const DEFAULT_MAX_NODES: u64 = 1_000_000;

/// Ordered free faces witnessing `K ↘ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub source_name: String,
    pub steps: Vec<Simplex>,
}

impl CollapseCertificate {
    pub fn new(source_name: impl Into<String>, steps: Vec<Simplex>) -> Self {
        Self {
            source_name: source_name.into(),
            steps,
        }
    }

    /// Parses the `.cert` format: `#` comments, one free face per line.
    pub fn parse(source_name: impl Into<String>, text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            steps.push(
                Simplex::from_names(line.split_whitespace())
                    .map_err(|e| parse_err(i + 1, e.to_string()))?,
            );
        }
        Ok(Self::new(source_name, steps))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# collapse certificate for {}\n", self.source_name);
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Order in which free faces are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest face by sorted vertex names, then dimension.
    #[default]
    Lexicographic,
    /// Highest-dimensional free face first, lexicographic within a dimension.
    HighestDimension,
}

impl std::str::FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" | "lexicographic" => Ok(Self::Lexicographic),
            "highdim" | "highest-dimension" => Ok(Self::HighestDimension),
            other => Err(Error::OutOfRange(format!(
                "unknown tie-break policy {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: u64,
    pub tie_break: TieBreak,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, tie_break: TieBreak) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::OutOfRange(
                "search budget must be at least one node".into(),
            ));
        }
        Ok(Self {
            max_nodes,
            tie_break,
        })
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_MAX_NODES,
            tie_break: TieBreak::Lexicographic,
        }
    }
}

/// All free faces of `k`, in lexicographic order.
pub fn free_faces(k: &SimplicialComplex) -> Vec<Simplex> {
    let engine = Engine::new(k);
    engine
        .free_faces(TieBreak::Lexicographic)
        .into_iter()
        .map(|i| engine.simplices[i].clone())
        .collect()
}

/// Removes the free face `face` together with its unique coface.
pub fn elementary_collapse(k: &SimplicialComplex, face: &Simplex) -> Result<SimplicialComplex> {
    let coface = unique_coface(k, face)?;
    let mut simplices = k.simplices().clone();
    simplices.remove(face);
    simplices.remove(&coface);
    Ok(SimplicialComplex::from_closed(
        k.name().to_owned(),
        simplices,
    ))
}

fn unique_coface(k: &SimplicialComplex, face: &Simplex) -> Result<Simplex> {
    if !k.contains(face) {
        return Err(Error::AbsentSimplex(face.to_string()));
    }
    let cofaces: Vec<&Simplex> = k
        .simplices()
        .iter()
        .filter(|s| s.dim() > face.dim() && face.is_face_of(s))
        .collect();
    match cofaces.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::NotFree {
            simplex: face.to_string(),
            cofaces: cofaces.len(),
        }),
    }
}

/// One applied step of a replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayStep {
    pub index: usize,
    pub face: Simplex,
    pub coface: Simplex,
    pub euler: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub final_complex: SimplicialComplex,
    pub trace: Vec<ReplayStep>,
}

impl Replay {
    /// Whether the replay ended at exactly one vertex.
    pub fn collapsed_to_point(&self) -> bool {
        self.final_complex.is_single_vertex()
    }
}

/// The first failing step of a replay.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplayFailure {
    pub index: usize,
    pub face: Simplex,
    pub reason: Error,
    pub trace: Vec<ReplayStep>,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} ({}): {}",
            self.index + 1,
            self.face,
            self.reason
        )
    }
}

/// Applies the certificate's collapses in order.
pub fn replay(
    k: &SimplicialComplex,
    cert: &CollapseCertificate,
) -> std::result::Result<Replay, ReplayFailure> {
    let mut current = k.clone();
    let mut trace = Vec::with_capacity(cert.steps.len());
    for (index, face) in cert.steps.iter().enumerate() {
        let coface = match unique_coface(&current, face) {
            Ok(c) => c,
            Err(reason) => {
                return Err(ReplayFailure {
                    index,
                    face: face.clone(),
                    reason,
                    trace,
                })
            }
        };
        current = elementary_collapse(&current, face).expect("coface checked above");
        trace.push(ReplayStep {
            index,
            face: face.clone(),
            coface,
            euler: current.euler_characteristic(),
        });
    }
    Ok(Replay {
        final_complex: current,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub cert: CollapseCertificate,
    pub residual: SimplicialComplex,
}

/// Collapses the tie-break-minimal free face until none is left.
pub fn greedy_collapse(k: &SimplicialComplex, budget: &SearchBudget) -> GreedyOutcome {
    let mut engine = Engine::new(k);
    let mut steps = Vec::new();
    let mut taken = 0u64;
    while taken < budget.max_nodes {
        let Some(&face) = engine.free_faces(budget.tie_break).first() else {
            break;
        };
        engine.collapse(face);
        steps.push(engine.simplices[face].clone());
        taken += 1;
    }
    GreedyOutcome {
        cert: CollapseCertificate::new(k.name(), steps),
        residual: engine.current(k.name()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(CollapseCertificate),
    No,
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown (budget exhausted)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub nodes: u64,
}

/// Depth-first search over free-face choices for a collapse to one vertex.
///
/// States already shown to be dead ends are memoized, so "no" means every
/// reachable state was visited. Results match sequential depth-first order
/// under the budget's tie-break.
pub fn is_collapsible(k: &SimplicialComplex, budget: &SearchBudget) -> SearchOutcome {
    if k.is_empty() {
        return SearchOutcome {
            verdict: Verdict::No,
            nodes: 0,
        };
    }
    let mut search = Search {
        engine: Engine::new(k),
        dead: HashSet::new(),
        path: Vec::new(),
        nodes: 0,
        budget: *budget,
    };
    let verdict = match search.run() {
        Some(true) => {
            let steps = search
                .path
                .iter()
                .map(|&i| search.engine.simplices[i].clone())
                .collect();
            assert_eq!(
                k.euler_characteristic(),
                1,
                "collapsible complex must have χ = 1"
            );
            Verdict::Yes(CollapseCertificate::new(k.name(), steps))
        }
        Some(false) => Verdict::No,
        None => Verdict::Unknown,
    };
    SearchOutcome {
        verdict,
        nodes: search.nodes,
    }
}

struct Search {
    engine: Engine,
    dead: HashSet<Vec<u64>>,
    path: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
}

impl Search {
    /// `Some(true)` on success, `Some(false)` on an exhausted subtree, `None`
    /// when the budget ran out.
    fn run(&mut self) -> Option<bool> {
        if self.engine.alive == 1 {
            return Some(true);
        }
        if self.dead.contains(&self.engine.present) {
            return Some(false);
        }
        if self.nodes >= self.budget.max_nodes {
            return None;
        }
        self.nodes += 1;
        for face in self.engine.free_faces(self.budget.tie_break) {
            let coface = self.engine.collapse(face);
            self.path.push(face);
            match self.run() {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            self.path.pop();
            self.engine.restore(face, coface);
        }
        self.dead.insert(self.engine.present.clone());
        Some(false)
    }
}

/// Indexed incidence structure with a presence bitset.
struct Engine {
    simplices: Vec<Simplex>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    present: Vec<u64>,
    live_cofaces: Vec<u32>,
    alive: usize,
}

impl Engine {
    fn new(k: &SimplicialComplex) -> Self {
        let simplices: Vec<Simplex> = k.simplices().iter().cloned().collect();
        let n = simplices.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for (i, s) in simplices.iter().enumerate() {
            for f in s.boundary() {
                let j = simplices.binary_search(&f).expect("complex is face-closed");
                faces[i].push(j);
                cofaces[j].push(i);
            }
        }
        let live_cofaces = cofaces.iter().map(|c| c.len() as u32).collect();
        let mut present = vec![0u64; n.div_ceil(64)];
        for i in 0..n {
            present[i / 64] |= 1 << (i % 64);
        }
        Self {
            simplices,
            faces,
            cofaces,
            present,
            live_cofaces,
            alive: n,
        }
    }

    fn is_present(&self, i: usize) -> bool {
        self.present[i / 64] & (1 << (i % 64)) != 0
    }

    fn set(&mut self, i: usize, on: bool) {
        if on {
            self.present[i / 64] |= 1 << (i % 64);
        } else {
            self.present[i / 64] &= !(1 << (i % 64));
        }
    }

    /// The unique live coface when `i` is free.
    fn free_coface(&self, i: usize) -> Option<usize> {
        if !self.is_present(i) || self.live_cofaces[i] != 1 {
            return None;
        }
        let c = *self.cofaces[i].iter().find(|&&c| self.is_present(c))?;
        (self.live_cofaces[c] == 0).then_some(c)
    }

    fn free_faces(&self, tie_break: TieBreak) -> Vec<usize> {
        let mut free: Vec<usize> = (0..self.simplices.len())
            .filter(|&i| self.free_coface(i).is_some())
            .collect();
        if tie_break == TieBreak::HighestDimension {
            free.sort_by_key(|&i| (std::cmp::Reverse(self.simplices[i].dim()), i));
        }
        free
    }

    fn collapse(&mut self, face: usize) -> usize {
        let coface = self.free_coface(face).expect("collapse of a non-free face");
        self.set(face, false);
        self.set(coface, false);
        for &f in &self.faces[coface] {
            self.live_cofaces[f] -= 1;
        }
        for &f in &self.faces[face] {
            self.live_cofaces[f] -= 1;
        }
        self.alive -= 2;
        coface
    }

    fn restore(&mut self, face: usize, coface: usize) {
        self.set(face, true);
        self.set(coface, true);
        for &f in &self.faces[coface] {
            self.live_cofaces[f] += 1;
        }
        for &f in &self.faces[face] {
            self.live_cofaces[f] += 1;
        }
        self.alive += 2;
    }

    fn current(&self, name: &str) -> SimplicialComplex {
        let simplices = (0..self.simplices.len())
            .filter(|&i| self.is_present(i))
            .map(|i| self.simplices[i].clone())
            .collect();
        SimplicialComplex::from_closed(name.to_owned(), simplices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(rows: &[&str]) -> SimplicialComplex {
        SimplicialComplex::build("t", rows.iter().map(|s| Simplex::parse(s).unwrap()))
    }

    fn faces(rows: &[&str]) -> Vec<Simplex> {
        rows.iter().map(|s| Simplex::parse(s).unwrap()).collect()
    }

    #[test]
    fn triangle_free_faces() {
        assert_eq!(free_faces(&cx(&["abc"])), faces(&["ab", "ac", "bc"]));
    }

    #[test]
    fn collapse_edge_of_triangle() {
        let l = elementary_collapse(&cx(&["abc"]), &Simplex::parse("bc").unwrap()).unwrap();
        assert_eq!(l.simplices(), cx(&["ab", "ac"]).simplices());
        assert_eq!(l.euler_characteristic(), 1);
        assert!(l.is_face_closed());
    }

    #[test]
    fn collapse_free_vertex_of_path() {
        let l = elementary_collapse(&cx(&["ab", "bc"]), &Simplex::parse("c").unwrap()).unwrap();
        assert_eq!(l.simplices(), cx(&["ab"]).simplices());
    }

    #[test]
    fn collapse_errors_name_the_violation() {
        let k = cx(&["abc"]);
        assert!(matches!(
            elementary_collapse(&k, &Simplex::parse("ad").unwrap()),
            Err(Error::AbsentSimplex(_))
        ));
        assert!(matches!(
            elementary_collapse(&k, &Simplex::parse("a").unwrap()),
            Err(Error::NotFree { cofaces: 3, .. })
        ));
    }

    #[test]
    fn empty_certificate_leaves_complex_unchanged() {
        let k = cx(&["abc", "cd"]);
        let r = replay(&k, &CollapseCertificate::new("t", vec![])).unwrap();
        assert_eq!(r.final_complex, k);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn replay_reports_first_failure() {
        let k = cx(&["abc"]);
        let cert = CollapseCertificate::new("t", faces(&["ab", "ab"]));
        let fail = replay(&k, &cert).unwrap_err();
        assert_eq!(fail.index, 1);
        assert!(matches!(fail.reason, Error::AbsentSimplex(_)));
        assert_eq!(fail.trace.len(), 1);
    }

    #[test]
    fn greedy_on_triangle_and_cone() {
        let out = greedy_collapse(&cx(&["abc"]), &SearchBudget::default());
        assert!(out.residual.is_single_vertex());
        let apex = crate::simplicial::Vertex::new("z").unwrap();
        let cone = cx(&["ab", "bc", "ac"]).cone(&apex).unwrap();
        let out = greedy_collapse(&cone, &SearchBudget::default());
        assert!(out.residual.is_single_vertex());
        assert!(replay(&cone, &out.cert).unwrap().collapsed_to_point());
    }

    #[test]
    fn full_tetrahedron_is_collapsible() {
        let k = cx(&["abcd"]);
        let out = is_collapsible(&k, &SearchBudget::default());
        let Verdict::Yes(cert) = out.verdict else {
            panic!("expected yes")
        };
        assert!(replay(&k, &cert).unwrap().collapsed_to_point());
    }

    #[test]
    fn circle_and_empty_are_not_collapsible() {
        let out = is_collapsible(&cx(&["ab", "bc", "ac"]), &SearchBudget::default());
        assert_eq!(out.verdict, Verdict::No);
        assert_eq!(
            is_collapsible(&cx(&[]), &SearchBudget::default()).verdict,
            Verdict::No
        );
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let k = cx(&["abcd", "defg"]);
        let budget = SearchBudget::new(1, TieBreak::Lexicographic).unwrap();
        assert_eq!(is_collapsible(&k, &budget).verdict, Verdict::Unknown);
        assert!(SearchBudget::new(0, TieBreak::Lexicographic).is_err());
    }

    #[test]
    fn highest_dimension_policy_prefers_edges_over_vertices() {
        let k = cx(&["ab", "bcd"]);
        let budget = SearchBudget::new(10, TieBreak::HighestDimension).unwrap();
        let out = greedy_collapse(&k, &budget);
        assert_eq!(out.cert.steps[0], Simplex::parse("bc").unwrap());
        let lex = greedy_collapse(&k, &SearchBudget::default());
        assert_eq!(lex.cert.steps[0], Simplex::parse("a").unwrap());
        assert!(out.residual.is_single_vertex());
        assert!(lex.residual.is_single_vertex());
    }

    #[test]
    fn cert_text_roundtrip() {
        let cert = CollapseCertificate::new("k", faces(&["wd", "d"]));
        let parsed = CollapseCertificate::parse("k", &cert.to_text()).unwrap();
        assert_eq!(parsed, cert);
    }
}
