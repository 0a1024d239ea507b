//! Finite abstract simplicial complexes stored by their facets.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{invalid, Result};

/// Dense index of a vertex inside one complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        VertexId(i as u32)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A simplex is a set of vertex ids.
pub type Simplex = BitSet;

/// Characters that cannot appear in a vertex label. `|` is reserved for the
/// pair labels of product complexes.
pub const RESERVED_LABEL_CHARS: &[char] = &['|', '#'];

struct Inner {
    labels: Vec<String>,
    facets: Vec<Simplex>,
    index: HashMap<String, VertexId>,
}

/// A nonempty finite abstract simplicial complex.
///
/// Only the facets (inclusion-maximal simplices) are stored. Vertex ids are
/// dense `0..n` and every vertex belongs to at least one facet. Facets are kept
/// in canonical order (lexicographic on their sorted vertex ids). Cloning is
/// cheap; the data is shared.
#[derive(Clone)]
pub struct Complex(Arc<Inner>);

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.labels == other.0.labels && self.0.facets == other.0.facets)
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.facets().iter().map(|s| self.simplex_labels(s)))
            .finish()
    }
}

pub(crate) fn check_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(invalid("empty vertex label"));
    }
    if label.chars().any(|c| c.is_whitespace() || RESERVED_LABEL_CHARS.contains(&c)) {
        return Err(invalid(format!("vertex label {label:?} contains a reserved character")));
    }
    Ok(())
}

/// Keeps the inclusion-maximal members, deduplicated, in canonical order.
fn maximal_members(mut simplices: Vec<Simplex>) -> Vec<Simplex> {
    simplices.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut kept: Vec<Simplex> = Vec::with_capacity(simplices.len());
    for s in simplices {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort_by_cached_key(|s| s.to_vec());
    kept
}

impl Complex {
    /// Builds a complex from lists of vertex labels. Labels are interned to
    /// ids in sorted label order; non-maximal and repeated simplices are
    /// absorbed.
    pub fn from_facets<I, F, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let raw: Vec<Vec<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(|s| s.as_ref().to_owned()).collect())
            .collect();
        if raw.is_empty() {
            return Err(invalid("a complex needs at least one facet"));
        }
        let mut labels: Vec<String> = Vec::new();
        for facet in &raw {
            if facet.is_empty() {
                return Err(invalid("empty facet"));
            }
            for l in facet {
                check_label(l)?;
                labels.push(l.clone());
            }
        }
        labels.sort();
        labels.dedup();
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let simplices = raw
            .iter()
            .map(|f| f.iter().map(|l| index[l.as_str()]).collect())
            .collect();
        Self::from_simplices(labels, simplices)
    }

    /// Builds the complex generated by `simplices` over the given label table.
    /// Labels of vertices that appear in no simplex are dropped; the remaining
    /// ones keep their relative order.
    pub(crate) fn from_simplices(labels: Vec<String>, simplices: Vec<Simplex>) -> Result<Self> {
        let simplices: Vec<Simplex> = simplices.into_iter().filter(|s| !s.is_empty()).collect();
        if simplices.is_empty() {
            return Err(invalid("a complex needs at least one facet"));
        }
        let mut used = BitSet::new();
        for s in &simplices {
            used.union_with(s);
        }
        if let Some(max) = used.iter().last() {
            if max >= labels.len() {
                return Err(invalid(format!("vertex id {max} has no label")));
            }
        }
        let (labels, simplices) = if used.len() == labels.len() {
            (labels, simplices)
        } else {
            let mut remap = vec![usize::MAX; labels.len()];
            let mut kept = Vec::with_capacity(used.len());
            for (new, old) in used.iter().enumerate() {
                remap[old] = new;
                kept.push(labels[old].clone());
            }
            let simplices = simplices
                .iter()
                .map(|s| s.iter().map(|v| remap[v]).collect())
                .collect();
            (kept, simplices)
        };
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), VertexId::from_index(i)).is_some() {
                return Err(invalid(format!("duplicate vertex label {l:?}")));
            }
        }
        Ok(Complex(Arc::new(Inner { facets: maximal_members(simplices), labels, index })))
    }

    pub fn num_vertices(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.0.labels[v.index()]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.0.index.get(label).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId::from_index)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.0.facets
    }

    pub fn num_facets(&self) -> usize {
        self.0.facets.len()
    }

    pub fn dimension(&self) -> usize {
        self.facets().iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    /// Sorted labels of the vertices of `s`.
    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|i| self.0.labels[i].clone()).collect();
        v.sort();
        v
    }

    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex> {
        labels
            .iter()
            .map(|l| {
                self.vertex(l.as_ref())
                    .map(VertexId::index)
                    .ok_or_else(|| invalid(format!("unknown vertex {:?}", l.as_ref())))
            })
            .collect()
    }

    /// True iff `s` is contained in some facet.
    #[inline]
    pub fn is_simplex(&self, s: &Simplex) -> bool {
        self.0.facets.iter().any(|f| s.is_subset(f))
    }

    /// Indices of the facets containing vertex `v`.
    pub fn star_facets(&self, v: VertexId) -> impl Iterator<Item = usize> + '_ {
        self.facets()
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.contains(v.index()))
            .map(|(i, _)| i)
    }

    /// Connected component index of every vertex, numbered in order of the
    /// lowest vertex id of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in self.facets() {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                for v in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut ids = HashMap::new();
        (0..n)
            .map(|v| {
                let root = find(&mut parent, v);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// Connectivity of the 1-skeleton.
    pub fn is_edge_path_connected(&self) -> bool {
        self.num_components() == 1
    }

    /// The subcomplex generated by the given simplices of `self`, with the
    /// labels of `self`.
    pub fn subcomplex(&self, generators: &[Simplex]) -> Result<Complex> {
        for s in generators {
            if s.is_empty() || !self.is_simplex(s) {
                return Err(invalid(format!(
                    "{:?} is not a simplex of the ambient complex",
                    self.simplex_labels(s)
                )));
            }
        }
        Complex::from_simplices(self.0.labels.clone(), generators.to_vec())
    }

    /// The subcomplex generated by the facets whose indices are in `mask`.
    pub fn facet_subcomplex(&self, mask: &BitSet) -> Result<Complex> {
        let gens: Vec<Simplex> = mask.iter().map(|i| self.facets()[i].clone()).collect();
        Complex::from_simplices(self.0.labels.clone(), gens)
    }

    /// The full subcomplex on all vertices except `v`, or `None` when `v` is
    /// the only vertex.
    pub fn remove_vertex(&self, v: VertexId) -> Option<Complex> {
        let gens = self
            .facets()
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.remove(v.index());
                f
            })
            .collect();
        Complex::from_simplices(self.0.labels.clone(), gens).ok()
    }

    /// Every nonempty simplex, each once, in canonical order.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut all = std::collections::BTreeSet::new();
        for f in self.facets() {
            let verts = f.to_vec();
            for bits in 1u64..(1u64 << verts.len()) {
                let s: Simplex = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                all.insert((s.to_vec(), s));
            }
        }
        all.into_iter().map(|(_, s)| s).collect()
    }

    /// Vertex ids in `ambient` of the vertices of `self`, matched by label,
    /// after checking that `self` is a subcomplex of `ambient`.
    pub fn embedding_into(&self, ambient: &Complex) -> Result<Vec<VertexId>> {
        let emb = self
            .labels()
            .iter()
            .map(|l| {
                ambient
                    .vertex(l)
                    .ok_or_else(|| invalid(format!("vertex {l:?} is not in the ambient complex")))
            })
            .collect::<Result<Vec<_>>>()?;
        for f in self.facets() {
            let image: Simplex = f.iter().map(|v| emb[v].index()).collect();
            if !ambient.is_simplex(&image) {
                return Err(invalid(format!(
                    "{:?} is not a simplex of the ambient complex",
                    self.simplex_labels(f)
                )));
            }
        }
        Ok(emb)
    }

    pub fn is_subcomplex_of(&self, ambient: &Complex) -> bool {
        self.embedding_into(ambient).is_ok()
    }

    /// Facet indices of `ambient` that lie in `self` (as a subcomplex).
    pub fn covered_facets_of(&self, ambient: &Complex) -> Result<BitSet> {
        let emb = self.embedding_into(ambient)?;
        let mine: Vec<Simplex> = self
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| emb[v].index()).collect())
            .collect();
        Ok(ambient
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, g)| mine.iter().any(|m| g.is_subset(m)))
            .map(|(i, _)| i)
            .collect())
    }
}
