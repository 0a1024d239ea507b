//! The categorical square `K² = K Π K`.
//!
//! Vertices of `K²` are ordered pairs of vertices of `K`, and a vertex set is a
//! simplex iff both of its projections are simplices of `K`. Such a set lies in
//! `π₁(σ) × π₂(σ)`, which also satisfies the rule, so the facets of `K²` are
//! exactly the products `F₁ × F₂` of facets of `K`.

use crate::bitset::BitSet;
use crate::complex::{Complex, Simplex, VertexId};
use crate::error::{invalid, Error, Result};
use crate::maps::SimplicialMap;

/// Separator of the two coordinates in product vertex labels.
pub const PAIR_SEPARATOR: char = '|';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    First,
    Second,
}

/// `K²` together with its base. The product vertex `(u, v)` has id `u·n + v`
/// and label `"u|v"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductComplex {
    base: Complex,
    complex: Complex,
}

pub fn pair_label(u: &str, v: &str) -> String {
    format!("{u}{PAIR_SEPARATOR}{v}")
}

/// Builds `K²`.
pub fn categorical_square(k: &Complex) -> ProductComplex {
    let n = k.num_vertices();
    let mut labels = Vec::with_capacity(n * n);
    for u in k.labels() {
        for v in k.labels() {
            labels.push(pair_label(u, v));
        }
    }
    let mut facets = Vec::with_capacity(k.num_facets() * k.num_facets());
    for f1 in k.facets() {
        for f2 in k.facets() {
            let mut s = BitSet::new();
            for u in f1.iter() {
                for v in f2.iter() {
                    s.insert(u * n + v);
                }
            }
            facets.push(s);
        }
    }
    let complex = Complex::from_simplices(labels, facets).expect("products of facets are nonempty");
    ProductComplex { base: k.clone(), complex }
}

impl ProductComplex {
    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    #[inline]
    pub fn pair(&self, u: VertexId, v: VertexId) -> VertexId {
        VertexId::from_index(u.index() * self.base.num_vertices() + v.index())
    }

    #[inline]
    pub fn unpair(&self, w: VertexId) -> (VertexId, VertexId) {
        let n = self.base.num_vertices();
        (VertexId::from_index(w.index() / n), VertexId::from_index(w.index() % n))
    }

    /// Projections of a product simplex.
    pub fn project(&self, s: &Simplex) -> (Simplex, Simplex) {
        let n = self.base.num_vertices();
        (s.iter().map(|w| w / n).collect(), s.iter().map(|w| w % n).collect())
    }

    /// `(u, v) ↦ u` or `(u, v) ↦ v`.
    pub fn projection(&self, factor: Factor) -> SimplicialMap {
        let assignment = self
            .complex
            .vertices()
            .map(|w| {
                let (u, v) = self.unpair(w);
                match factor {
                    Factor::First => u,
                    Factor::Second => v,
                }
            })
            .collect();
        SimplicialMap::new_unchecked(self.complex.clone(), self.base.clone(), assignment)
    }

    /// `v ↦ (v, v)`.
    pub fn diagonal(&self) -> SimplicialMap {
        let assignment = self.base.vertices().map(|v| self.pair(v, v)).collect();
        SimplicialMap::new_unchecked(self.base.clone(), self.complex.clone(), assignment)
    }

    /// The map `Ω -> K²` with coordinates `(f, g)` for two maps `Ω -> K`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialMap> {
        if !f.same_shape(g) || *f.codomain() != self.base {
            return Err(Error::DomainMismatch);
        }
        let assignment = f
            .domain()
            .vertices()
            .map(|w| self.pair(f.apply(w), g.apply(w)))
            .collect();
        SimplicialMap::new(f.domain().clone(), self.complex.clone(), assignment)
    }

    /// The image of the diagonal: the subcomplex generated by `Δ(F)` for the
    /// facets `F` of the base.
    pub fn diagonal_subcomplex(&self) -> Complex {
        let d = self.diagonal();
        let gens: Vec<Simplex> = self.base.facets().iter().map(|f| d.image(f)).collect();
        self.complex.subcomplex(&gens).expect("diagonal images are simplices")
    }
}

/// `φ² = φ Π φ : K² -> L²`, `(v, w) ↦ (φ(v), φ(w))`.
pub fn square_map(phi: &SimplicialMap) -> SimplicialMap {
    let dom = categorical_square(phi.domain());
    let cod = categorical_square(phi.codomain());
    let assignment = dom
        .complex()
        .vertices()
        .map(|w| {
            let (u, v) = dom.unpair(w);
            cod.pair(phi.apply(u), phi.apply(v))
        })
        .collect();
    SimplicialMap::new_unchecked(dom.complex, cod.complex, assignment)
}

/// The subcomplex of the domain made of the simplices `σ` with `φ(σ) ∈ Ω`.
///
/// Each such `σ` lies in `F ∩ φ⁻¹(G)` for some facet `F` of the domain and
/// facet `G` of `Ω`, and those intersections qualify themselves, so they
/// generate the preimage.
pub fn preimage_subcomplex(phi: &SimplicialMap, omega: &Complex) -> Result<Complex> {
    let emb = omega.embedding_into(phi.codomain())?;
    let omega_facets: Vec<Simplex> = omega
        .facets()
        .iter()
        .map(|g| g.iter().map(|v| emb[v].index()).collect())
        .collect();
    let dom = phi.domain();
    let mut gens = Vec::new();
    for f in dom.facets() {
        for g in &omega_facets {
            let s: Simplex = f.iter().filter(|&v| g.contains(phi.apply(VertexId::from_index(v)).index())).collect();
            if !s.is_empty() {
                gens.push(s);
            }
        }
    }
    if gens.is_empty() {
        return Err(invalid("the preimage is empty"));
    }
    dom.subcomplex(&gens)
}
