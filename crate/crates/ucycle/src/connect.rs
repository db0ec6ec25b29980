//! Explicit path construction between vertices of the onto and
//! 1-inequitable transition graphs.
//!
//! Both graphs share the same vertex structure: "free" vertices from which
//! every appended symbol is legal (onto words, equitable words) and
//! "constrained" vertices of out-degree one (almost-onto words,
//! 2-inequitable words). The path builder is purely local: greedily append
//! the target's next symbol while legal; when stuck, run the forced
//! out-edges until a free vertex is reached, rotate that vertex until the
//! already-built target segment sits at the tail, and resume. Constrained
//! endpoints are handled by a forced pre-run from the source and a forced
//! backtrack from the target.

use std::collections::HashSet;
use std::fmt;

use crate::classes::{
    binary_imbalance, deficit_symbol, is_almost_onto_word, is_onto_word, missing_symbol,
    ClassName, ClassSpec,
};
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    BuildTarget,
    ForcedRun,
    Rotation,
    ReintroduceMissing,
    BacktrackDerived,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::BuildTarget => "build-target",
            Phase::ForcedRun => "forced-run",
            Phase::Rotation => "rotation",
            Phase::ReintroduceMissing => "reintroduce-missing",
            Phase::BacktrackDerived => "backtrack-derived",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vertex path through a transition graph, with each step annotated by
/// the proof phase that produced it. `phases[i]` describes the move that
/// arrived at `steps[i]`; the source anchor at index 0 carries build-target.
#[derive(Clone, Debug)]
pub struct PathTrace {
    pub spec: ClassSpec,
    pub steps: Vec<Word>,
    pub phases: Vec<Phase>,
}

impl PathTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Path between two vertices of the onto graph.
pub fn connect_onto(source: &Word, target: &Word, spec: &ClassSpec) -> Result<PathTrace> {
    if spec.class() != ClassName::Onto {
        return Err(Error::UnsupportedSpec(format!("connect_onto needs an onto spec, got {spec}")));
    }
    if spec.k() <= spec.n() as usize {
        return Err(Error::UnsupportedSpec(format!(
            "onto connectivity needs k > n, got {spec}"
        )));
    }
    connect(&Family::Onto, source, target, spec)
}

/// Path between two vertices of the 1-inequitable graph; reuses the
/// onto-case handling with the class predicates swapped.
pub fn connect_inequitable(source: &Word, target: &Word, spec: &ClassSpec) -> Result<PathTrace> {
    if spec.class() != ClassName::OneInequitable || spec.k().is_multiple_of(2) {
        return Err(Error::UnsupportedSpec(format!(
            "connect_inequitable needs a one-inequitable spec with odd k, got {spec}"
        )));
    }
    connect(&Family::Inequitable, source, target, spec)
}

/// True iff every consecutive step pair of the trace is an edge of `g`
/// (and a single-step trace names a vertex of `g`).
pub fn validate_trace(trace: &PathTrace, g: &TransitionGraph) -> bool {
    if trace.steps.is_empty() || trace.steps.len() != trace.phases.len() {
        return false;
    }
    if g.vertex_index(&trace.steps[0]).is_none() {
        return false;
    }
    trace.steps.windows(2).all(|pair| {
        let (u, v) = (&pair[0], &pair[1]);
        let sym = *v.symbols().last().unwrap();
        *v == u.shift_append(sym) && g.has_edge(u, sym)
    })
}

enum Family {
    Onto,
    Inequitable,
}

impl Family {
    fn is_free(&self, w: &Word) -> bool {
        match self {
            Family::Onto => is_onto_word(w),
            Family::Inequitable => binary_imbalance(w.symbols()) == 0,
        }
    }

    fn is_vertex(&self, w: &Word) -> bool {
        match self {
            Family::Onto => is_onto_word(w) || is_almost_onto_word(w),
            Family::Inequitable => binary_imbalance(w.symbols()) <= 2,
        }
    }

    /// The single legal appended symbol out of a constrained vertex.
    fn forced_append(&self, w: &Word) -> u8 {
        match self {
            Family::Onto => missing_symbol(w).expect("constrained onto vertex misses one symbol"),
            Family::Inequitable => {
                deficit_symbol(w).expect("constrained binary vertex has a deficit symbol")
            }
        }
    }

    /// The single legal prepended symbol into a constrained vertex.
    fn forced_prepend(&self, w: &Word) -> u8 {
        // same symbol in both families: the edge word must regain the
        // missing/deficit symbol regardless of which end supplies it
        self.forced_append(w)
    }

    /// Whether the edge word `w + sym` belongs to the edge class.
    fn edge_legal(&self, w: &Word, sym: u8) -> bool {
        match self {
            Family::Onto => {
                if is_onto_word(w) {
                    true
                } else {
                    missing_symbol(w) == Some(sym)
                }
            }
            Family::Inequitable => {
                match deficit_symbol(w) {
                    None => true, // equitable plus any symbol is 1-inequitable
                    Some(d) if binary_imbalance(w.symbols()) == 2 => sym == d,
                    Some(_) => false, // imbalance > 2: not a vertex at all
                }
            }
        }
    }
}

struct TraceBuilder<'a> {
    family: &'a Family,
    target: Word,
    steps: Vec<Word>,
    phases: Vec<Phase>,
}

impl<'a> TraceBuilder<'a> {
    fn current(&self) -> &Word {
        self.steps.last().unwrap()
    }

    /// Appends one symbol to the walk; returns true when the target has
    /// been reached.
    fn step(&mut self, sym: u8, phase: Phase) -> bool {
        let next = self.current().shift_append(sym);
        debug_assert!(self.family.edge_legal(self.current(), sym));
        self.steps.push(next);
        self.phases.push(phase);
        *self.current() == self.target
    }

    /// Forced out-edges until a free vertex is reached. The proof asserts
    /// termination; a revisited vertex is surfaced as a diagnostic error
    /// rather than assumed away.
    fn forced_run(&mut self, mark_arrival: bool) -> Result<bool> {
        let mut seen: HashSet<Word> = HashSet::new();
        seen.insert(self.current().clone());
        loop {
            let sym = self.family.forced_append(self.current());
            let next = self.current().shift_append(sym);
            let arriving_free = self.family.is_free(&next);
            let phase = if arriving_free && mark_arrival {
                Phase::ReintroduceMissing
            } else {
                Phase::ForcedRun
            };
            if self.step(sym, phase) {
                return Ok(true);
            }
            if arriving_free {
                return Ok(false);
            }
            if !seen.insert(self.current().clone()) {
                return Err(Error::InternalConsistency(format!(
                    "forced run revisited vertex {}",
                    self.current()
                )));
            }
        }
    }

    /// Greedy target construction between two free vertices: the core of
    /// the connectivity routing for both families.
    fn build_toward(&mut self, goal: &Word) -> Result<bool> {
        let m = goal.len();
        let mut built = 0; // symbols of `goal` realized at the tail
        while built < m {
            let want = goal.symbols()[built];
            if self.family.edge_legal(self.current(), want) {
                if self.step(want, Phase::BuildTarget) {
                    return Ok(true);
                }
                built += 1;
                continue;
            }
            // stuck at a constrained vertex: run the forced edges to the
            // next free vertex c
            if self.forced_run(false)? {
                return Ok(true);
            }
            if self.current() == goal {
                break;
            }
            // rotate c until the built goal segment is back at the tail
            let segment = goal.symbols()[..built].to_vec();
            let mut rotations = 0;
            while !self.current().ends_with(&segment) {
                let head = self.current().symbols()[0];
                if self.step(head, Phase::Rotation) {
                    return Ok(true);
                }
                rotations += 1;
                if rotations > m {
                    return Err(Error::InternalConsistency(format!(
                        "rotation failed to realign target segment at {}",
                        self.current()
                    )));
                }
            }
        }
        debug_assert_eq!(self.current(), goal);
        Ok(self.current() == &self.target)
    }
}

fn connect(family: &Family, source: &Word, target: &Word, spec: &ClassSpec) -> Result<PathTrace> {
    let m = spec.k() - 1;
    for (role, w) in [("source", source), ("target", target)] {
        if w.len() != m || w.alphabet() != spec.n() {
            return Err(Error::InvalidArgument(format!(
                "{role} {w} is not a length-{m} word over an alphabet of size {}",
                spec.n()
            )));
        }
        if !family.is_vertex(w) {
            return Err(Error::InvalidArgument(format!(
                "{role} {w} is not a vertex of the {} graph",
                spec.class()
            )));
        }
    }

    let mut builder = TraceBuilder {
        family,
        target: target.clone(),
        steps: vec![source.clone()],
        phases: vec![Phase::BuildTarget],
    };
    if source == target {
        return Ok(PathTrace { spec: *spec, steps: builder.steps, phases: builder.phases });
    }

    // constrained target: forced backtrack to the free vertex c from which
    // the target is reachable by forced edges alone
    let mut tail: Vec<Word> = Vec::new();
    let mut back = target.clone();
    {
        let mut seen: HashSet<Word> = HashSet::new();
        seen.insert(back.clone());
        while !family.is_free(&back) {
            tail.push(back.clone());
            back = back.shift_prepend(family.forced_prepend(&back));
            if !seen.insert(back.clone()) {
                return Err(Error::InternalConsistency(format!(
                    "backtrack revisited vertex {back}"
                )));
            }
        }
    }
    let free_target = back;

    // constrained source: forced pre-run to a free vertex, the last step
    // reintroducing the missing symbol
    let mut reached = false;
    if !family.is_free(source) {
        reached = builder.forced_run(true)?;
    }
    if !reached && builder.current() != &free_target {
        // the builder may stop early if it happens to hit the true target
        builder.target = target.clone();
        reached = builder.build_toward(&free_target)?;
    }
    if !reached {
        if builder.current() == target {
            reached = true;
        } else {
            debug_assert_eq!(builder.current(), &free_target);
            for w in tail.into_iter().rev() {
                builder.steps.push(w);
                builder.phases.push(Phase::BacktrackDerived);
            }
            reached = builder.current() == target;
        }
    }
    if !reached {
        return Err(Error::InternalConsistency(format!(
            "path construction stopped at {} short of {target}",
            builder.current()
        )));
    }
    Ok(PathTrace { spec: *spec, steps: builder.steps, phases: builder.phases })
}
