//! The overlap (transition) digraph of a function class: vertices are the
//! length-(k-1) prefixes/suffixes of class members, and each class member
//! is an edge from its prefix to its suffix, labeled by the full k-word.
//!
//! On top of the graph sit the degree audit, connectivity decision,
//! Eulerian circuit extraction (which yields a U-cycle), and the cycle
//! decomposition used for the equitable non-existence argument.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::classes::{binary_imbalance, is_onto_word, ClassName, ClassSpec};
use crate::error::{Error, Result};
use crate::word::Word;

pub struct TransitionGraph {
    spec: ClassSpec,
    /// Sorted lexicographically; index order is the canonical vertex order.
    vertices: Vec<Word>,
    /// Per-vertex (appended symbol, target index), symbol-ascending.
    out_edges: Vec<Vec<(u8, u32)>>,
    in_degrees: Vec<u32>,
    edge_count: usize,
}

impl TransitionGraph {
    /// Builds the overlap digraph whose edges biject with the class members.
    pub fn build(spec: &ClassSpec) -> Result<Self> {
        let members = spec.enumerate()?;
        Self::assemble(spec, members)
    }

    /// Single-threaded construction, for benchmarking against `build`.
    pub fn build_sequential(spec: &ClassSpec) -> Result<Self> {
        let members = spec.enumerate_sequential()?;
        Self::assemble(spec, members)
    }

    fn assemble(spec: &ClassSpec, members: Vec<Word>) -> Result<Self> {
        let k = spec.k();
        if k < 2 {
            return Err(Error::Precondition(format!(
                "transition graph needs k >= 2, got k={k}"
            )));
        }
        if members.is_empty() {
            return Err(Error::EmptyClass);
        }

        let mut vertices: Vec<Word> = Vec::with_capacity(members.len() * 2);
        for m in &members {
            vertices.push(m.prefix(k - 1));
            vertices.push(m.suffix(k - 1));
        }
        vertices.sort_unstable();
        vertices.dedup();
        vertices.shrink_to_fit();

        let index = |w: &Word| -> u32 {
            vertices.binary_search(w).expect("prefix/suffix is a vertex") as u32
        };

        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_degrees = vec![0u32; vertices.len()];
        let edge_count = members.len();
        for m in &members {
            let src = index(&m.prefix(k - 1));
            let dst = index(&m.suffix(k - 1));
            let sym = m.symbols()[k - 1];
            // members arrive in lex order, so per-vertex pushes are
            // already symbol-ascending
            out_edges[src as usize].push((sym, dst));
            in_degrees[dst as usize] += 1;
        }

        Ok(TransitionGraph { spec: *spec, vertices, out_edges, in_degrees, edge_count })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn out_edges(&self, v: usize) -> &[(u8, u32)] {
        &self.out_edges[v]
    }

    /// Whether the edge `u -> u.shift_append(sym)` exists.
    pub fn has_edge(&self, u: &Word, sym: u8) -> bool {
        match self.vertex_index(u) {
            Some(i) => self.out_edges[i].iter().any(|&(s, _)| s == sym),
            None => false,
        }
    }

    /// The k-word labeling the edge out of vertex `v` on `sym`.
    pub fn edge_label(&self, v: usize, sym: u8) -> Word {
        self.vertices[v].appended(sym)
    }

    pub fn audit_degrees(&self) -> DegreeAudit {
        let mut per_class: BTreeMap<&'static str, DegreeSummary> = BTreeMap::new();
        let mut offenders = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let outd = self.out_edges[i].len() as u32;
            let ind = self.in_degrees[i];
            let class = vertex_class(&self.spec, v);
            per_class
                .entry(class)
                .and_modify(|s| s.observe(ind, outd))
                .or_insert_with(|| DegreeSummary::first(ind, outd));
            if ind != outd {
                offenders.push(UnbalancedVertex { vertex: v.clone(), in_degree: ind, out_degree: outd });
            }
        }
        DegreeAudit { balanced: offenders.is_empty(), per_class, offenders }
    }

    /// Weak connectivity over edge-incident vertices. For degree-balanced
    /// digraphs this coincides with strong connectivity, and the audit gates
    /// every Eulerian use anyway.
    pub fn connectivity(&self) -> Connectivity {
        let n = self.vertices.len();
        if n == 0 {
            return Connectivity { connected: true, witness: None };
        }
        let mut undirected = vec![Vec::new(); n];
        for (u, edges) in self.out_edges.iter().enumerate() {
            for &(_, v) in edges {
                undirected[u].push(v);
                undirected[v as usize].push(u as u32);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &undirected[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            None => Connectivity { connected: true, witness: None },
            Some(other) => Connectivity {
                connected: false,
                witness: Some((self.vertices[0].clone(), self.vertices[other].clone())),
            },
        }
    }

    /// Full Euler-condition verdict: balance first, then connectivity.
    pub fn existence(&self) -> ExistenceVerdict {
        let audit = self.audit_degrees();
        if let Some(off) = audit.offenders.first() {
            return ExistenceVerdict {
                spec: self.spec,
                exists: false,
                reason: VerdictReason::DegreeImbalance,
                witness: Some(Witness::Unbalanced(off.clone())),
            };
        }
        let conn = self.connectivity();
        if let Some((a, b)) = conn.witness {
            return ExistenceVerdict {
                spec: self.spec,
                exists: false,
                reason: VerdictReason::Disconnected,
                witness: Some(Witness::SeparateComponents(a, b)),
            };
        }
        ExistenceVerdict {
            spec: self.spec,
            exists: true,
            reason: VerdictReason::EulerianConnected,
            witness: None,
        }
    }

    /// Extracts an Eulerian circuit by Hierholzer edge splicing and collapses
    /// its overlapping edge labels into a U-cycle. Deterministic: starts at
    /// the lexicographically smallest vertex and consumes out-edges in
    /// symbol-ascending order.
    pub fn eulerian_circuit(&self) -> Result<UCycle> {
        let verdict = self.existence();
        if !verdict.exists {
            return Err(Error::NotEulerian(Box::new(verdict)));
        }

        let n = self.vertices.len();
        let mut next_edge = vec![0usize; n];
        let mut stack: Vec<u32> = Vec::with_capacity(self.edge_count + 1);
        let mut walk: Vec<u32> = Vec::with_capacity(self.edge_count + 1);
        stack.push(0);
        while let Some(&v) = stack.last() {
            let v = v as usize;
            if next_edge[v] < self.out_edges[v].len() {
                let (_, to) = self.out_edges[v][next_edge[v]];
                next_edge[v] += 1;
                stack.push(to);
            } else {
                walk.push(stack.pop().unwrap());
            }
        }
        walk.reverse();
        debug_assert_eq!(walk.len(), self.edge_count + 1);
        debug_assert_eq!(walk.first(), walk.last());

        // Walk string = start vertex (k-1 symbols) then one appended symbol
        // per edge; the cyclic word is its first edge_count symbols.
        let km1 = self.spec.k() - 1;
        let mut symbols = Vec::with_capacity(km1 + self.edge_count);
        symbols.extend_from_slice(self.vertices[walk[0] as usize].symbols());
        for &v in &walk[1..] {
            symbols.push(*self.vertices[v as usize].symbols().last().unwrap());
        }
        symbols.truncate(self.edge_count);
        let word = Word::new(symbols, self.spec.n())?;
        Ok(UCycle { spec: self.spec, symbols: word })
    }

    /// Partitions the edges of a 1-regular graph into directed cycles by
    /// successor-following.
    pub fn decompose_cycles(&self) -> Result<CycleDecomposition> {
        for (i, v) in self.vertices.iter().enumerate() {
            if self.out_edges[i].len() != 1 || self.in_degrees[i] != 1 {
                return Err(Error::Precondition(format!(
                    "cycle decomposition needs in=out=1 everywhere; vertex {v} has in={}, out={}",
                    self.in_degrees[i],
                    self.out_edges[i].len()
                )));
            }
        }
        let n = self.vertices.len();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        let mut length_histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut edges = Vec::new();
            let mut v = start;
            loop {
                visited[v] = true;
                let (sym, to) = self.out_edges[v][0];
                edges.push(self.edge_label(v, sym));
                v = to as usize;
                if v == start {
                    break;
                }
            }
            *length_histogram.entry(edges.len()).or_insert(0) += 1;
            cycles.push(edges);
        }
        let total_cycles = cycles.len();
        Ok(CycleDecomposition { cycles, length_histogram, total_cycles })
    }

    /// Graphviz DOT rendering; nodes and edges in lexicographic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph transition {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "    \"{v}\";");
        }
        for (i, edges) in self.out_edges.iter().enumerate() {
            for &(sym, to) in edges {
                let _ = writeln!(
                    out,
                    "    \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.vertices[i],
                    self.vertices[to as usize],
                    self.edge_label(i, sym)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Which role a vertex word plays in its graph, for degree reporting.
pub fn vertex_class(spec: &ClassSpec, v: &Word) -> &'static str {
    match spec.class() {
        ClassName::AllWords => "all-words",
        ClassName::Injective => "injective",
        ClassName::Onto | ClassName::AlmostOnto => {
            if is_onto_word(v) {
                "onto"
            } else {
                "almost-onto"
            }
        }
        ClassName::OneInequitable => {
            if binary_imbalance(v.symbols()) == 0 {
                "equitable"
            } else {
                "two-inequitable"
            }
        }
        ClassName::Equitable | ClassName::TwoInequitable => "one-inequitable",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub in_min: u32,
    pub in_max: u32,
    pub out_min: u32,
    pub out_max: u32,
    pub count: usize,
}

impl DegreeSummary {
    fn first(ind: u32, outd: u32) -> Self {
        DegreeSummary { in_min: ind, in_max: ind, out_min: outd, out_max: outd, count: 1 }
    }

    fn observe(&mut self, ind: u32, outd: u32) {
        self.in_min = self.in_min.min(ind);
        self.in_max = self.in_max.max(ind);
        self.out_min = self.out_min.min(outd);
        self.out_max = self.out_max.max(outd);
        self.count += 1;
    }

    /// True when every observed vertex of the class has exactly this
    /// (in, out) pair.
    pub fn is_exactly(&self, ind: u32, outd: u32) -> bool {
        self.in_min == ind && self.in_max == ind && self.out_min == outd && self.out_max == outd
    }
}

#[derive(Clone, Debug)]
pub struct UnbalancedVertex {
    pub vertex: Word,
    pub in_degree: u32,
    pub out_degree: u32,
}

pub struct DegreeAudit {
    pub balanced: bool,
    pub per_class: BTreeMap<&'static str, DegreeSummary>,
    pub offenders: Vec<UnbalancedVertex>,
}

pub struct Connectivity {
    pub connected: bool,
    pub witness: Option<(Word, Word)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictReason {
    EulerianConnected,
    DegreeImbalance,
    Disconnected,
    EmptyClass,
}

impl VerdictReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictReason::EulerianConnected => "eulerian-connected",
            VerdictReason::DegreeImbalance => "degree-imbalance",
            VerdictReason::Disconnected => "disconnected",
            VerdictReason::EmptyClass => "empty-class",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// Two vertices lying in different weak components.
    SeparateComponents(Word, Word),
    Unbalanced(UnbalancedVertex),
}

#[derive(Clone, Debug)]
pub struct ExistenceVerdict {
    pub spec: ClassSpec,
    pub exists: bool,
    pub reason: VerdictReason,
    pub witness: Option<Witness>,
}

impl ExistenceVerdict {
    pub fn describe(&self) -> String {
        match &self.witness {
            None => self.reason.as_str().to_string(),
            Some(Witness::SeparateComponents(a, b)) => {
                format!("{} (vertices {a} and {b} lie in different components)", self.reason.as_str())
            }
            Some(Witness::Unbalanced(u)) => format!(
                "{} (vertex {} has in-degree {} but out-degree {})",
                self.reason.as_str(),
                u.vertex,
                u.in_degree,
                u.out_degree
            ),
        }
    }
}

/// Decides U-cycle existence for a class, treating an empty class as its
/// own verdict rather than an error.
pub fn decide_existence(spec: &ClassSpec) -> Result<ExistenceVerdict> {
    match TransitionGraph::build(spec) {
        Ok(g) => Ok(g.existence()),
        Err(Error::EmptyClass) => Ok(ExistenceVerdict {
            spec: *spec,
            exists: false,
            reason: VerdictReason::EmptyClass,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// A cyclic symbol sequence whose length-k windows list the class exactly
/// once each.
#[derive(Clone, Debug)]
pub struct UCycle {
    spec: ClassSpec,
    symbols: Word,
}

impl UCycle {
    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn word(&self) -> &Word {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub struct VerifyReport {
    pub ok: bool,
    pub expected_length: usize,
    pub actual_length: usize,
    /// Class members never appearing as a window.
    pub missing: Vec<Word>,
    /// Windows appearing more often than once (with their counts), plus
    /// windows that are not class members at all.
    pub duplicated: Vec<(Word, usize)>,
}

/// Checks that the cyclic length-k windows of `candidate` enumerate the
/// class exactly once each.
pub fn verify_ucycle(spec: &ClassSpec, candidate: &Word) -> Result<VerifyReport> {
    let expected_length = spec
        .cardinality()
        .to_usize()
        .ok_or_else(|| Error::InvalidArgument("class too large to verify".into()))?;
    let actual_length = candidate.len();
    let k = spec.k();

    if candidate.alphabet() != spec.n() || actual_length != expected_length || actual_length < 1 {
        return Ok(VerifyReport {
            ok: false,
            expected_length,
            actual_length,
            missing: spec.enumerate()?,
            duplicated: Vec::new(),
        });
    }

    let mut counts: BTreeMap<Word, usize> = BTreeMap::new();
    for start in 0..actual_length {
        let win = if k <= actual_length {
            candidate.window(start, k)?
        } else {
            // cycle shorter than k: read wrapping as many times as needed
            let symbols: Vec<u8> =
                (0..k).map(|i| candidate.symbols()[(start + i) % actual_length]).collect();
            Word::new(symbols, candidate.alphabet())?
        };
        *counts.entry(win).or_insert(0) += 1;
    }

    let mut missing = Vec::new();
    for member in spec.enumerate()? {
        match counts.remove(&member) {
            Some(1) => {}
            Some(c) => missing.push((member, c)), // temporarily hold duplicates
            None => missing.push((member, 0)),
        }
    }
    let mut duplicated: Vec<(Word, usize)> =
        missing.iter().filter(|(_, c)| *c > 1).map(|(w, c)| (w.clone(), *c)).collect();
    let missing: Vec<Word> =
        missing.into_iter().filter(|(_, c)| *c == 0).map(|(w, _)| w).collect();
    // leftover windows are non-members
    for (w, c) in counts {
        duplicated.push((w, c));
    }
    duplicated.sort();

    let ok = missing.is_empty() && duplicated.is_empty();
    Ok(VerifyReport { ok, expected_length, actual_length, missing, duplicated })
}

pub struct CycleDecomposition {
    /// Each cycle as its edge labels in traversal order.
    pub cycles: Vec<Vec<Word>>,
    pub length_histogram: BTreeMap<usize, usize>,
    /// For equitable graphs this equals the census a_k.
    pub total_cycles: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassName;

    fn spec(class: ClassName, k: usize, n: u8) -> ClassSpec {
        ClassSpec::new(class, k, n).unwrap()
    }

    fn w(text: &str, n: u8) -> Word {
        Word::parse(text, n).unwrap()
    }

    #[test]
    fn de_bruijn_graph_shape() {
        let g = TransitionGraph::build(&spec(ClassName::AllWords, 3, 2)).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        let audit = g.audit_degrees();
        assert!(audit.balanced);
        assert!(audit.per_class["all-words"].is_exactly(2, 2));
    }

    #[test]
    fn onto_graph_shape_and_degree_dichotomy() {
        let g = TransitionGraph::build(&spec(ClassName::Onto, 6, 5)).unwrap();
        assert_eq!(g.vertex_count(), 1320);
        assert_eq!(g.edge_count(), 1800);
        let audit = g.audit_degrees();
        assert!(audit.balanced);
        assert_eq!(audit.per_class["onto"].count, 120);
        assert_eq!(audit.per_class["almost-onto"].count, 1200);
        assert!(audit.per_class["onto"].is_exactly(5, 5));
        assert!(audit.per_class["almost-onto"].is_exactly(1, 1));
    }

    #[test]
    fn equitable_graph_shape() {
        let g = TransitionGraph::build(&spec(ClassName::Equitable, 4, 2)).unwrap();
        // vertices are the 1-inequitable 3-words; there are 2*C(3,1) = 6
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn one_inequitable_degree_dichotomy() {
        let g = TransitionGraph::build(&spec(ClassName::OneInequitable, 5, 2)).unwrap();
        let audit = g.audit_degrees();
        assert!(audit.balanced);
        assert!(audit.per_class["equitable"].is_exactly(2, 2));
        assert!(audit.per_class["two-inequitable"].is_exactly(1, 1));
    }

    #[test]
    fn injective_k_equals_n_disconnects() {
        let g = TransitionGraph::build(&spec(ClassName::Injective, 3, 3)).unwrap();
        let conn = g.connectivity();
        assert!(!conn.connected);
        assert!(conn.witness.is_some());
        let verdict = g.existence();
        assert!(!verdict.exists);
        assert_eq!(verdict.reason, VerdictReason::Disconnected);
    }

    #[test]
    fn de_bruijn_is_connected() {
        let g = TransitionGraph::build(&spec(ClassName::AllWords, 3, 2)).unwrap();
        assert!(g.connectivity().connected);
    }

    #[test]
    fn eulerian_circuit_yields_verified_ucycle() {
        for s in [
            spec(ClassName::AllWords, 3, 2),
            spec(ClassName::Onto, 4, 3),
            spec(ClassName::OneInequitable, 3, 2),
        ] {
            let g = TransitionGraph::build(&s).unwrap();
            let cycle = g.eulerian_circuit().unwrap();
            assert_eq!(cycle.len(), g.edge_count());
            let report = verify_ucycle(&s, cycle.word()).unwrap();
            assert!(report.ok, "{s}: missing {:?}, dup {:?}", report.missing, report.duplicated);
        }
    }

    #[test]
    fn eulerian_circuit_rejects_disconnected_input() {
        let g = TransitionGraph::build(&spec(ClassName::Injective, 3, 3)).unwrap();
        match g.eulerian_circuit() {
            Err(Error::NotEulerian(v)) => assert_eq!(v.reason, VerdictReason::Disconnected),
            other => panic!("expected NotEulerian, got {other:?}", other = other.err()),
        }
    }

    #[test]
    fn verify_accepts_paper_cycle_and_rejects_mutation() {
        let s = spec(ClassName::AllWords, 3, 2);
        assert!(verify_ucycle(&s, &w("11100010", 2)).unwrap().ok);

        let bad = verify_ucycle(&s, &w("11110010", 2)).unwrap();
        assert!(!bad.ok);
        assert!(bad.duplicated.iter().any(|(word, c)| word == &w("111", 2) && *c == 2));
        assert!(!bad.missing.is_empty());

        let short = verify_ucycle(&s, &w("1110001", 2)).unwrap();
        assert!(!short.ok);
        assert_eq!(short.expected_length, 8);
        assert_eq!(short.actual_length, 7);
    }

    #[test]
    fn equitable_four_decomposes_into_the_two_cycles() {
        let g = TransitionGraph::build(&spec(ClassName::Equitable, 4, 2)).unwrap();
        let d = g.decompose_cycles().unwrap();
        assert_eq!(d.total_cycles, 2);
        assert_eq!(d.length_histogram, BTreeMap::from([(4, 1), (2, 1)]));
        let mut sets: Vec<Vec<String>> = d
            .cycles
            .iter()
            .map(|c| {
                let mut v: Vec<String> = c.iter().map(|e| e.to_string()).collect();
                v.sort();
                v
            })
            .collect();
        sets.sort();
        assert_eq!(
            sets,
            vec![
                vec!["0011".to_string(), "0110".to_string(), "1001".to_string(), "1100".to_string()],
                vec!["0101".to_string(), "1010".to_string()],
            ]
        );
    }

    #[test]
    fn equitable_six_has_four_cycles() {
        let g = TransitionGraph::build(&spec(ClassName::Equitable, 6, 2)).unwrap();
        assert!(!g.connectivity().connected);
        let d = g.decompose_cycles().unwrap();
        assert_eq!(d.total_cycles, 4);
    }

    #[test]
    fn decompose_rejects_higher_degrees() {
        let g = TransitionGraph::build(&spec(ClassName::AllWords, 3, 2)).unwrap();
        assert!(matches!(g.decompose_cycles(), Err(Error::Precondition(_))));
    }

    #[test]
    fn empty_class_verdict() {
        // two-inequitable k=2 over {0,1}: 00 and 11 both qualify, so pick a
        // genuinely empty case instead: there is none among valid specs with
        // k >= 2, so exercise the EmptyClass error path via assemble.
        let s = spec(ClassName::AllWords, 3, 2);
        assert!(matches!(
            TransitionGraph::assemble(&s, Vec::new()),
            Err(Error::EmptyClass)
        ));
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let g = TransitionGraph::build(&spec(ClassName::AllWords, 2, 2)).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot, g.to_dot());
        assert!(dot.starts_with("digraph transition {"));
        assert!(dot.contains("\"0\" -> \"1\" [label=\"01\"];"));
        assert_eq!(dot.matches("->").count(), g.edge_count());
    }

    #[test]
    fn edge_bijection_across_specs() {
        for s in [
            spec(ClassName::AllWords, 4, 3),
            spec(ClassName::Onto, 5, 3),
            spec(ClassName::Injective, 3, 4),
            spec(ClassName::OneInequitable, 7, 2),
            spec(ClassName::Equitable, 8, 2),
        ] {
            let g = TransitionGraph::build(&s).unwrap();
            assert_eq!(
                num_bigint::BigUint::from(g.edge_count()),
                s.cardinality(),
                "{s}"
            );
        }
    }
}
