//! Simplicial maps, contiguity, and contiguity-class search.
//!
//! Two maps `f, g: K -> L` are contiguous when `f(F) ∪ g(F)` is a simplex of
//! `L` for every facet `F` of `K`; faces follow by monotonicity, so every check
//! here runs over facets only. A contiguity class is a connected component of
//! the graph whose nodes are all simplicial maps `K -> L` and whose edges are
//! contiguous pairs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::complex::{Complex, Simplex, VertexId};
use crate::error::{invalid, Error, Result};

/// Default bound on the number of distinct maps visited by one class search.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Three-valued answer of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<T> {
    Yes(T),
    No,
    /// The state budget ran out before the question was settled.
    Unknown,
}

impl<T> Decision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Decision<U> {
        match self {
            Decision::Yes(t) => Decision::Yes(f(t)),
            Decision::No => Decision::No,
            Decision::Unknown => Decision::Unknown,
        }
    }

    pub fn yes(self) -> Option<T> {
        match self {
            Decision::Yes(t) => Some(t),
            _ => None,
        }
    }
}

/// A vertex map between two complexes that sends simplices to simplices.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: Complex,
    codomain: Complex,
    assignment: Vec<VertexId>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.domain
                    .vertices()
                    .map(|v| (self.domain.label(v), self.codomain.label(self.apply(v)))),
            )
            .finish()
    }
}

impl SimplicialMap {
    /// Validates `assignment` as a simplicial map `domain -> codomain`.
    pub fn new(domain: Complex, codomain: Complex, assignment: Vec<VertexId>) -> Result<Self> {
        if assignment.len() != domain.num_vertices() {
            return Err(invalid(format!(
                "assignment has {} entries for {} vertices",
                assignment.len(),
                domain.num_vertices()
            )));
        }
        if let Some(v) = assignment.iter().find(|v| v.index() >= codomain.num_vertices()) {
            return Err(invalid(format!("image {v:?} is not a vertex of the codomain")));
        }
        let map = SimplicialMap { domain, codomain, assignment };
        for f in map.domain.facets() {
            if !map.codomain.is_simplex(&map.image(f)) {
                return Err(Error::NotSimplicial { facet: map.domain.simplex_labels(f) });
            }
        }
        Ok(map)
    }

    /// Builds a map from `(domain label, codomain label)` pairs.
    pub fn from_labels<S: AsRef<str>>(
        domain: Complex,
        codomain: Complex,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment = vec![None; domain.num_vertices()];
        for (a, b) in pairs {
            let v = domain
                .vertex(a.as_ref())
                .ok_or_else(|| invalid(format!("unknown vertex {:?}", a.as_ref())))?;
            let w = codomain
                .vertex(b.as_ref())
                .ok_or_else(|| invalid(format!("unknown vertex {:?}", b.as_ref())))?;
            assignment[v.index()] = Some(w);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| invalid(format!("vertex {:?} is unassigned", domain.labels()[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, assignment)
    }

    pub(crate) fn new_unchecked(domain: Complex, codomain: Complex, assignment: Vec<VertexId>) -> Self {
        debug_assert!(Self::new(domain.clone(), codomain.clone(), assignment.clone()).is_ok());
        SimplicialMap { domain, codomain, assignment }
    }

    pub(crate) fn from_raw(domain: &Complex, codomain: &Complex, raw: &[u32]) -> Self {
        Self::new_unchecked(
            domain.clone(),
            codomain.clone(),
            raw.iter().map(|&w| VertexId(w)).collect(),
        )
    }

    pub(crate) fn raw(&self) -> Vec<u32> {
        self.assignment.iter().map(|v| v.0).collect()
    }

    pub fn identity(k: &Complex) -> Self {
        SimplicialMap { domain: k.clone(), codomain: k.clone(), assignment: k.vertices().collect() }
    }

    pub fn constant(domain: &Complex, codomain: &Complex, v: VertexId) -> Result<Self> {
        if v.index() >= codomain.num_vertices() {
            return Err(invalid(format!("{v:?} is not a vertex of the codomain")));
        }
        Ok(SimplicialMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            assignment: vec![v; domain.num_vertices()],
        })
    }

    /// The inclusion of a subcomplex, matched by labels.
    pub fn inclusion(sub: &Complex, ambient: &Complex) -> Result<Self> {
        let emb = sub.embedding_into(ambient)?;
        Ok(SimplicialMap { domain: sub.clone(), codomain: ambient.clone(), assignment: emb })
    }

    pub fn domain(&self) -> &Complex {
        &self.domain
    }

    pub fn codomain(&self) -> &Complex {
        &self.codomain
    }

    pub fn assignment(&self) -> &[VertexId] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.assignment[v.index()]
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        s.iter().map(|v| self.assignment[v].index()).collect()
    }

    pub fn same_shape(&self, other: &SimplicialMap) -> bool {
        self.domain == other.domain && self.codomain == other.codomain
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    /// Restriction to a subcomplex of the domain.
    pub fn restrict(&self, sub: &Complex) -> Result<Self> {
        let emb = sub.embedding_into(&self.domain).map_err(|_| Error::DomainMismatch)?;
        let assignment = emb.iter().map(|v| self.apply(*v)).collect();
        Ok(SimplicialMap { domain: sub.clone(), codomain: self.codomain.clone(), assignment })
    }

    /// The same vertex map viewed with another codomain, matched by labels.
    pub fn with_codomain(&self, codomain: &Complex) -> Result<Self> {
        let assignment = self
            .assignment
            .iter()
            .map(|w| {
                let l = self.codomain.label(*w);
                codomain.vertex(l).ok_or_else(|| invalid(format!("{l:?} is not in the new codomain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.domain.clone(), codomain.clone(), assignment)
    }

    pub fn to_labels(&self) -> Vec<String> {
        self.assignment.iter().map(|w| self.codomain.label(*w).to_owned()).collect()
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &SimplicialMap, inner: &SimplicialMap) -> Result<SimplicialMap> {
    if inner.codomain != outer.domain {
        return Err(Error::DomainMismatch);
    }
    Ok(SimplicialMap {
        domain: inner.domain.clone(),
        codomain: outer.codomain.clone(),
        assignment: inner.assignment.iter().map(|v| outer.apply(*v)).collect(),
    })
}

/// True iff `f(F) ∪ g(F)` is a simplex of the codomain for every facet `F`.
pub fn are_contiguous(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if !f.same_shape(g) {
        return Err(Error::DomainMismatch);
    }
    Ok(f.domain.facets().iter().all(|facet| {
        let mut u = f.image(facet);
        u.union_with(&g.image(facet));
        f.codomain.is_simplex(&u)
    }))
}

/// A chain of simplicial maps with every consecutive pair contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContiguityWitness {
    steps: Vec<SimplicialMap>,
}

impl ContiguityWitness {
    pub fn new(steps: Vec<SimplicialMap>) -> Result<Self> {
        let first = steps.first().ok_or_else(|| invalid("a witness needs at least one map"))?;
        for s in &steps[1..] {
            if !s.same_shape(first) {
                return Err(Error::DomainMismatch);
            }
        }
        for (i, w) in steps.windows(2).enumerate() {
            if !are_contiguous(&w[0], &w[1])? {
                return Err(invalid(format!("steps {i} and {} are not contiguous", i + 1)));
            }
        }
        Ok(ContiguityWitness { steps })
    }

    pub fn single(f: SimplicialMap) -> Self {
        ContiguityWitness { steps: vec![f] }
    }

    pub fn steps(&self) -> &[SimplicialMap] {
        &self.steps
    }

    pub fn first(&self) -> &SimplicialMap {
        &self.steps[0]
    }

    pub fn last(&self) -> &SimplicialMap {
        self.steps.last().expect("nonempty")
    }

    /// Number of maps in the chain.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True iff the chain starts at `f` and ends at `g`.
    pub fn connects(&self, f: &SimplicialMap, g: &SimplicialMap) -> bool {
        self.first() == f && self.last() == g
    }

    pub fn reversed(&self) -> Self {
        ContiguityWitness { steps: self.steps.iter().rev().cloned().collect() }
    }

    /// Joins two chains whose end and start coincide.
    pub fn concat(&self, other: &ContiguityWitness) -> Result<Self> {
        if self.last() != other.first() {
            return Err(invalid("witnesses do not meet"));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps[1..].iter().cloned());
        Ok(ContiguityWitness { steps })
    }

    /// Restricts every step to a subcomplex of the common domain.
    pub fn restrict(&self, sub: &Complex) -> Result<Self> {
        let steps = self.steps.iter().map(|s| s.restrict(sub)).collect::<Result<Vec<_>>>()?;
        Ok(ContiguityWitness { steps })
    }

    /// Applies `f` to every step and revalidates the result.
    pub fn map_steps(&self, f: impl FnMut(&SimplicialMap) -> Result<SimplicialMap>) -> Result<Self> {
        Self::new(self.steps.iter().map(f).collect::<Result<Vec<_>>>()?)
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            domain: self.first().domain.labels().to_vec(),
            steps: self.steps.iter().map(SimplicialMap::to_labels).collect(),
        }
    }
}

/// Serialized witness: the domain labels once, then one array of image labels
/// per step, aligned with `domain`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub domain: Vec<String>,
    pub steps: Vec<Vec<String>>,
}

impl WitnessJson {
    /// Rebuilds and revalidates the witness against the given complexes.
    pub fn to_witness(&self, domain: &Complex, codomain: &Complex) -> Result<ContiguityWitness> {
        if self.domain.len() != domain.num_vertices() {
            return Err(invalid("witness domain does not match"));
        }
        let steps = self
            .steps
            .iter()
            .map(|images| {
                if images.len() != self.domain.len() {
                    return Err(invalid("witness step has the wrong length"));
                }
                let pairs: Vec<(&str, &str)> =
                    self.domain.iter().map(String::as_str).zip(images.iter().map(String::as_str)).collect();
                SimplicialMap::from_labels(domain.clone(), codomain.clone(), &pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        ContiguityWitness::new(steps)
    }
}

/// Precomputed incidence data for searching maps `domain -> codomain`.
pub(crate) struct MapSpace {
    pub domain: Complex,
    pub codomain: Complex,
    dom_facets: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    cod_facets: Vec<BitSet>,
}

impl MapSpace {
    pub fn new(domain: &Complex, codomain: &Complex) -> Self {
        let dom_facets: Vec<Vec<usize>> = domain.facets().iter().map(BitSet::to_vec).collect();
        let mut incident = vec![Vec::new(); domain.num_vertices()];
        for (i, f) in dom_facets.iter().enumerate() {
            for &v in f {
                incident[v].push(i);
            }
        }
        MapSpace {
            domain: domain.clone(),
            codomain: codomain.clone(),
            dom_facets,
            incident,
            cod_facets: codomain.facets().to_vec(),
        }
    }

    fn is_simplex(&self, s: &BitSet) -> bool {
        self.cod_facets.iter().any(|g| s.is_subset(g))
    }

    /// Union of the codomain facets containing `s`: the vertices `w` with
    /// `s ∪ {w}` a simplex.
    fn star_union(&self, s: &BitSet) -> BitSet {
        let mut u = BitSet::new();
        for g in &self.cod_facets {
            if s.is_subset(g) {
                u.union_with(g);
            }
        }
        u
    }

    fn images(&self, a: &[u32]) -> Vec<BitSet> {
        self.dom_facets
            .iter()
            .map(|f| f.iter().map(|&v| a[v] as usize).collect())
            .collect()
    }

    /// For each domain vertex, the images it may take in a map contiguous to `a`.
    fn candidates(&self, imgs: &[BitSet]) -> Vec<BitSet> {
        let stars: Vec<BitSet> = imgs.iter().map(|s| self.star_union(s)).collect();
        self.incident
            .iter()
            .map(|fs| {
                let mut c = stars[fs[0]].clone();
                for &f in &fs[1..] {
                    c.intersect_with(&stars[f]);
                }
                c
            })
            .collect()
    }

    pub fn contiguous(&self, a: &[u32], b: &[u32]) -> bool {
        self.dom_facets.iter().all(|f| {
            let u: BitSet = f.iter().flat_map(|&v| [a[v] as usize, b[v] as usize]).collect();
            self.is_simplex(&u)
        })
    }

    /// Maps contiguous to `a`, excluding `a`, in lexicographic order.
    pub fn contiguous_neighbors(&self, a: &[u32]) -> Vec<Vec<u32>> {
        let imgs = self.images(a);
        let cand: Vec<Vec<u32>> =
            self.candidates(&imgs).iter().map(|c| c.iter().map(|w| w as u32).collect()).collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; a.len()];
        let mut unions = imgs;
        self.extend(0, &cand, &mut current, &mut unions, &mut out);
        out.retain(|g| g.as_slice() != a);
        out
    }

    fn extend(
        &self,
        v: usize,
        cand: &[Vec<u32>],
        current: &mut Vec<u32>,
        unions: &mut Vec<BitSet>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if v == current.len() {
            out.push(current.clone());
            return;
        }
        for &w in &cand[v] {
            let saved: Vec<BitSet> = self.incident[v].iter().map(|&f| unions[f].clone()).collect();
            let mut ok = true;
            for &f in &self.incident[v] {
                unions[f].insert(w as usize);
                if !self.is_simplex(&unions[f]) {
                    ok = false;
                    break;
                }
            }
            if ok {
                current[v] = w;
                self.extend(v + 1, cand, current, unions, out);
            }
            for (&f, s) in self.incident[v].iter().zip(saved) {
                unions[f] = s;
            }
        }
    }

    /// Maps contiguous to `a` that differ from it at exactly one vertex. They
    /// generate the same components as the full contiguity relation.
    fn single_vertex_neighbors(&self, a: &[u32]) -> Vec<Vec<u32>> {
        let imgs = self.images(a);
        let cand = self.candidates(&imgs);
        let mut out = Vec::new();
        for (v, c) in cand.iter().enumerate() {
            for w in c.iter() {
                if w as u32 != a[v] {
                    let mut b = a.to_vec();
                    b[v] = w as u32;
                    out.push(b);
                }
            }
        }
        out
    }

    /// Breadth-first search from `start` for `target`. Returns the path of
    /// maps, `No` once the component of `start` is exhausted, or `Unknown`
    /// when more than `budget` distinct maps have been visited.
    pub fn search(&self, start: &[u32], target: &[u32], budget: usize) -> Decision<Vec<Vec<u32>>> {
        if start == target {
            return Decision::Yes(vec![start.to_vec()]);
        }
        let mut seen: IndexSet<Box<[u32]>> = IndexSet::new();
        let mut parent: Vec<usize> = Vec::new();
        seen.insert(start.into());
        parent.push(usize::MAX);
        let mut head = 0;
        while head < seen.len() {
            let cur = seen.get_index(head).expect("in range").clone();
            for nb in self.contiguous_neighbors(&cur) {
                let is_target = nb.as_slice() == target;
                let (idx, fresh) = seen.insert_full(nb.into_boxed_slice());
                if !fresh {
                    continue;
                }
                parent.push(head);
                if is_target {
                    let mut path = Vec::new();
                    let mut i = idx;
                    while i != usize::MAX {
                        path.push(seen[i].to_vec());
                        i = parent[i];
                    }
                    path.reverse();
                    return Decision::Yes(path);
                }
                if seen.len() > budget {
                    return Decision::Unknown;
                }
            }
            head += 1;
        }
        Decision::No
    }

    /// Single-vertex search from both ends at once. Each side expands the map
    /// closest in Hamming distance to the other side's origin, and the answer
    /// is `No` as soon as either side exhausts its component. Paths are not
    /// shortest. `budget` bounds the maps visited by both sides together.
    pub fn connect(&self, start: &[u32], target: &[u32], budget: usize) -> Decision<Vec<Vec<u32>>> {
        if start == target {
            return Decision::Yes(vec![start.to_vec()]);
        }
        let mut sides = [Frontier::new(start, target), Frontier::new(target, start)];
        loop {
            let s = usize::from(sides[1].seen.len() < sides[0].seen.len());
            let Some(cur) = sides[s].pop() else { return Decision::No };
            let node = sides[s].seen[cur].clone();
            for nb in self.single_vertex_neighbors(&node) {
                if let Some(j) = sides[1 - s].seen.get_index_of(nb.as_slice()) {
                    let mut ours = sides[s].trace(cur);
                    ours.reverse();
                    ours.push(nb);
                    let theirs = sides[1 - s].trace(j);
                    ours.extend(theirs.into_iter().skip(1));
                    if s == 1 {
                        ours.reverse();
                    }
                    return Decision::Yes(ours);
                }
                sides[s].push(nb, cur);
                if sides[0].seen.len() + sides[1].seen.len() > budget {
                    return Decision::Unknown;
                }
            }
        }
    }

    /// Drops intermediate maps of a chain while consecutive maps stay
    /// contiguous, jumping as far ahead as possible from each kept map.
    pub fn shortcut(&self, path: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < path.len() {
            out.push(path[i].clone());
            if i + 1 == path.len() {
                break;
            }
            let mut j = path.len() - 1;
            while j > i + 1 && !self.contiguous(&path[i], &path[j]) {
                j -= 1;
            }
            i = j;
        }
        out
    }

    pub fn to_map(&self, raw: &[u32]) -> SimplicialMap {
        SimplicialMap::from_raw(&self.domain, &self.codomain, raw)
    }
}

/// Simplicial maps contiguous to `f` and different from it.
pub fn neighbors(f: &SimplicialMap) -> impl Iterator<Item = SimplicialMap> {
    let space = MapSpace::new(&f.domain, &f.codomain);
    let raw = space.contiguous_neighbors(&f.raw());
    raw.into_iter().map(move |a| space.to_map(&a))
}

/// Decides whether `f` and `g` lie in the same contiguity class by
/// breadth-first search over the contiguity graph starting at `f`.
///
/// `Yes` carries a step-shortest witness from `f` to `g`. `No` is reported only
/// after the whole component of `f` has been visited.
pub fn same_contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: usize,
) -> Result<Decision<ContiguityWitness>> {
    if !f.same_shape(g) {
        return Err(Error::DomainMismatch);
    }
    let space = MapSpace::new(&f.domain, &f.codomain);
    Ok(match space.search(&f.raw(), &g.raw(), budget) {
        Decision::Yes(path) => {
            Decision::Yes(ContiguityWitness::new(path.iter().map(|a| space.to_map(a)).collect())?)
        }
        Decision::No => Decision::No,
        Decision::Unknown => Decision::Unknown,
    })
}

struct Frontier {
    goal: Box<[u32]>,
    seen: IndexSet<Box<[u32]>>,
    parent: Vec<usize>,
    queue: BinaryHeap<(Reverse<usize>, Reverse<usize>)>,
}

impl Frontier {
    fn new(origin: &[u32], goal: &[u32]) -> Self {
        let mut f = Frontier { goal: goal.into(), seen: IndexSet::new(), parent: Vec::new(), queue: BinaryHeap::new() };
        f.push(origin.to_vec(), usize::MAX);
        f
    }

    fn push(&mut self, a: Vec<u32>, parent: usize) {
        let dist = a.iter().zip(self.goal.iter()).filter(|(x, y)| x != y).count();
        let (idx, fresh) = self.seen.insert_full(a.into_boxed_slice());
        if fresh {
            self.parent.push(parent);
            self.queue.push((Reverse(dist), Reverse(idx)));
        }
    }

    fn pop(&mut self) -> Option<usize> {
        self.queue.pop().map(|(_, Reverse(i))| i)
    }

    /// Maps from `i` back to this side's origin.
    fn trace(&self, mut i: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        while i != usize::MAX {
            out.push(self.seen[i].to_vec());
            i = self.parent[i];
        }
        out
    }
}
