//! Dominated vertices and strong collapses.
//!
//! A vertex `v` is dominated by `v' ≠ v` when every facet containing `v` also
//! contains `v'`. Deleting a dominated vertex is an elementary strong collapse;
//! the complex left when no vertex is dominated is the core, unique up to
//! isomorphism.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::complex::{Complex, Simplex, VertexId};
use crate::error::{invalid, Result};
use crate::io::ComplexJson;
use crate::maps::SimplicialMap;

/// All pairs `(v, v')` with `v` dominated by `v'`, sorted.
pub fn dominated_vertices(k: &Complex) -> Vec<(VertexId, VertexId)> {
    dominations(k.facets(), &BitSet::full(k.num_vertices()))
}

fn dominations(facets: &[Simplex], alive: &BitSet) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for v in alive.iter() {
        let mut common: Option<BitSet> = None;
        for f in facets.iter().filter(|f| f.contains(v)) {
            match &mut common {
                None => common = Some(f.clone()),
                Some(c) => c.intersect_with(f),
            }
        }
        if let Some(mut c) = common {
            c.remove(v);
            out.extend(c.iter().map(|w| (VertexId::from_index(v), VertexId::from_index(w))));
        }
    }
    out
}

fn remove_from_facets(facets: &[Simplex], v: usize) -> Vec<Simplex> {
    let mut next: Vec<Simplex> = facets
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.remove(v);
            f
        })
        .filter(|f| !f.is_empty())
        .collect();
    next.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<Simplex> = Vec::with_capacity(next.len());
    for s in next {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept
}

/// One elementary strong collapse, in vertex ids of the starting complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub removed: VertexId,
    pub dominator: VertexId,
}

/// A replayable sequence of elementary strong collapses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseSequence {
    start: Complex,
    end: Complex,
    steps: Vec<CollapseStep>,
}

/// Collapses until no vertex is dominated, deleting the lowest-id dominated
/// vertex (towards its lowest-id dominator) at every step.
pub fn core(k: &Complex) -> CollapseSequence {
    collapse_with(k, |_| 0)
}

/// Collapses until no vertex is dominated. `pick` chooses which of the
/// currently dominated pairs (sorted) to collapse next.
pub fn collapse_with<F>(k: &Complex, mut pick: F) -> CollapseSequence
where
    F: FnMut(&[(VertexId, VertexId)]) -> usize,
{
    let mut facets = k.facets().to_vec();
    let mut alive = BitSet::full(k.num_vertices());
    let mut steps = Vec::new();
    while alive.len() > 1 {
        let dominated = dominations(&facets, &alive);
        if dominated.is_empty() {
            break;
        }
        let (removed, dominator) = dominated[pick(&dominated).min(dominated.len() - 1)];
        steps.push(CollapseStep { removed, dominator });
        facets = remove_from_facets(&facets, removed.index());
        alive.remove(removed.index());
    }
    let end = Complex::from_simplices(k.labels().to_vec(), facets).expect("a vertex always survives");
    CollapseSequence { start: k.clone(), end, steps }
}

pub fn is_strongly_collapsible(k: &Complex) -> bool {
    core(k).end().num_vertices() == 1
}

impl CollapseSequence {
    pub fn start(&self) -> &Complex {
        &self.start
    }

    /// The complex reached after all steps.
    pub fn end(&self) -> &Complex {
        &self.end
    }

    pub fn steps(&self) -> &[CollapseStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps from the start, checking that every deleted vertex is
    /// dominated by the recorded vertex when it is deleted, and returns the
    /// resulting complex.
    pub fn replay(&self) -> Result<Complex> {
        let mut facets = self.start.facets().to_vec();
        let mut alive = BitSet::full(self.start.num_vertices());
        for (i, step) in self.steps.iter().enumerate() {
            let (v, d) = (step.removed.index(), step.dominator.index());
            if v == d || !alive.contains(v) || !alive.contains(d) {
                return Err(invalid(format!("step {i} names a deleted or repeated vertex")));
            }
            if !facets.iter().filter(|f| f.contains(v)).all(|f| f.contains(d)) {
                return Err(invalid(format!(
                    "step {i}: {} is not dominated by {}",
                    self.start.label(step.removed),
                    self.start.label(step.dominator)
                )));
            }
            facets = remove_from_facets(&facets, v);
            alive.remove(v);
        }
        Complex::from_simplices(self.start.labels().to_vec(), facets)
    }

    /// Vertex images (start ids) of the composite retraction after `upto` steps.
    fn retraction_raw(&self, upto: usize) -> Vec<VertexId> {
        let mut m: Vec<VertexId> = self.start.vertices().collect();
        for step in &self.steps[..upto] {
            for x in m.iter_mut() {
                if *x == step.removed {
                    *x = step.dominator;
                }
            }
        }
        m
    }

    /// The retraction `start -> end` sending each deleted vertex, through the
    /// chain of dominators, to a surviving vertex.
    pub fn retraction(&self) -> SimplicialMap {
        let raw = self.retraction_raw(self.steps.len());
        let assignment = raw
            .iter()
            .map(|v| self.end.vertex(self.start.label(*v)).expect("survivor"))
            .collect();
        SimplicialMap::new_unchecked(self.start.clone(), self.end.clone(), assignment)
    }

    /// Maps `start -> start`: the identity followed by the composite retraction
    /// after each step. Consecutive maps are contiguous, since a deleted
    /// vertex and its dominator share every facet.
    pub fn retraction_chain(&self) -> Vec<SimplicialMap> {
        (0..=self.steps.len())
            .map(|i| {
                SimplicialMap::new_unchecked(
                    self.start.clone(),
                    self.start.clone(),
                    self.retraction_raw(i),
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> CollapseJson {
        CollapseJson {
            start: ComplexJson::from_complex(&self.start),
            steps: self
                .steps
                .iter()
                .map(|s| [self.start.label(s.removed).to_owned(), self.start.label(s.dominator).to_owned()])
                .collect(),
            end: ComplexJson::from_complex(&self.end),
        }
    }
}

/// Serialized collapse sequence, by labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseJson {
    pub start: ComplexJson,
    /// `[removed, dominator]` label pairs in order.
    pub steps: Vec<[String; 2]>,
    pub end: ComplexJson,
}

impl CollapseJson {
    /// Rebuilds the sequence and replays it; fails unless every step is a
    /// valid strong collapse and the replay ends at `end`.
    pub fn to_sequence(&self) -> Result<CollapseSequence> {
        let start = Complex::from_facets(&self.start.facets)?;
        let end_given = Complex::from_facets(&self.end.facets)?;
        let steps = self
            .steps
            .iter()
            .map(|[r, d]| {
                let id = |l: &str| start.vertex(l).ok_or_else(|| invalid(format!("unknown vertex {l:?}")));
                Ok(CollapseStep { removed: id(r)?, dominator: id(d)? })
            })
            .collect::<Result<Vec<_>>>()?;
        let seq = CollapseSequence { start, end: end_given.clone(), steps };
        let end = seq.replay()?;
        if crate::io::canonical_facets(&end) != crate::io::canonical_facets(&end_given) {
            return Err(invalid("replay does not end at the recorded complex"));
        }
        Ok(CollapseSequence { end, ..seq })
    }
}
