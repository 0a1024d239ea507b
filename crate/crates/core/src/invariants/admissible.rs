//! Farber and categorical subcomplexes.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::complex::Complex;
use crate::error::{invalid, Result};
use crate::maps::{ContiguityWitness, Decision, SimplicialMap};
use crate::product::{Factor, ProductComplex};
use crate::reduction::contiguity_class;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmissibleKind {
    Farber,
    Categorical,
}

/// A subcomplex that passed its admissibility check, with the certificate.
///
/// For a Farber subcomplex `Ω ⊆ K²` the witness runs from `Δ ∘ σ` to the
/// inclusion `ι_Ω` (maps `Ω -> K²`) where the section is `σ = π₁|Ω`. For a
/// categorical subcomplex `L ⊆ K` it runs from the inclusion `ι_L` to a
/// constant map (maps `L -> K`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub kind: AdmissibleKind,
    /// Indices of the ambient facets lying in the subcomplex.
    pub facets: BitSet,
    pub subcomplex: Complex,
    pub witness: ContiguityWitness,
}

impl AdmissibleSet {
    /// The section `σ: Ω -> K` of a Farber set: the first coordinate of the
    /// first witness step.
    pub fn section(&self, product: &ProductComplex) -> Result<SimplicialMap> {
        if self.kind != AdmissibleKind::Farber {
            return Err(invalid("only Farber sets carry a section"));
        }
        product.projection(Factor::First).restrict(&self.subcomplex)
    }
}

/// Decides whether `omega ⊆ K²` is a Farber subcomplex.
///
/// Uses the projection criterion: `Ω` is Farber iff `π₁|Ω ~ π₂|Ω`. A chain
/// `π₁|Ω = h₀ ~ … ~ hₘ = π₂|Ω` gives the chain `(π₁|Ω, hⱼ)` of maps
/// `Ω -> K²`, from `Δ ∘ π₁|Ω` to `ι_Ω`.
pub fn is_farber(
    omega: &Complex,
    product: &ProductComplex,
    budget: usize,
) -> Result<Decision<AdmissibleSet>> {
    let facets = omega.covered_facets_of(product.complex())?;
    let p1 = product.projection(Factor::First).restrict(omega)?;
    let p2 = product.projection(Factor::Second).restrict(omega)?;
    Ok(match contiguity_class(&p1, &p2, budget)? {
        Decision::Yes(w) => {
            let witness = w.map_steps(|h| product.pairing(&p1, h))?;
            Decision::Yes(AdmissibleSet {
                kind: AdmissibleKind::Farber,
                facets,
                subcomplex: omega.clone(),
                witness,
            })
        }
        Decision::No => Decision::No,
        Decision::Unknown => Decision::Unknown,
    })
}

/// Decides whether `sub ⊆ ambient` is categorical: its inclusion lies in the
/// class of a constant map. One target vertex per connected component of the
/// ambient complex is tried, since constants into one component are all in
/// the same class.
pub fn is_categorical(
    sub: &Complex,
    ambient: &Complex,
    budget: usize,
) -> Result<Decision<AdmissibleSet>> {
    let facets = sub.covered_facets_of(ambient)?;
    let inc = SimplicialMap::inclusion(sub, ambient)?;
    let comps = ambient.components();
    let mut reps = Vec::new();
    for v in ambient.vertices() {
        if !reps.iter().any(|r: &crate::complex::VertexId| comps[r.index()] == comps[v.index()]) {
            reps.push(v);
        }
    }
    let mut unknown = false;
    for v in reps {
        let c = SimplicialMap::constant(sub, ambient, v)?;
        match contiguity_class(&inc, &c, budget)? {
            Decision::Yes(witness) => {
                return Ok(Decision::Yes(AdmissibleSet {
                    kind: AdmissibleKind::Categorical,
                    facets,
                    subcomplex: sub.clone(),
                    witness,
                }))
            }
            Decision::Unknown => unknown = true,
            Decision::No => {}
        }
    }
    Ok(if unknown { Decision::Unknown } else { Decision::No })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;
    use crate::maps::DEFAULT_BUDGET;
    use crate::product::categorical_square;

    fn boundary() -> Complex {
        Complex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap()
    }

    #[test]
    fn farber_examples() {
        let k = boundary();
        let p = categorical_square(&k);
        let diag = p.diagonal_subcomplex();
        let set = is_farber(&diag, &p, DEFAULT_BUDGET).unwrap().yes().unwrap();
        assert_eq!(set.witness.len(), 1);
        assert!(is_farber(p.complex(), &p, DEFAULT_BUDGET).unwrap().is_no());
        for f in p.complex().facets() {
            let one = p.complex().subcomplex(std::slice::from_ref(f)).unwrap();
            let set = is_farber(&one, &p, DEFAULT_BUDGET).unwrap().yes().unwrap();
            let sigma = set.section(&p).unwrap();
            let delta_sigma = crate::maps::compose(&p.diagonal(), &sigma).unwrap();
            assert_eq!(*set.witness.first(), delta_sigma);
            assert_eq!(*set.witness.last(), SimplicialMap::inclusion(&one, p.complex()).unwrap());
        }
    }

    #[test]
    fn categorical_examples() {
        let k = boundary();
        let pt = Complex::from_facets([["b"]]).unwrap();
        assert!(is_categorical(&pt, &k, DEFAULT_BUDGET).unwrap().is_yes());
        assert!(is_categorical(&k, &k, DEFAULT_BUDGET).unwrap().is_no());
        let path = Complex::from_facets([["a", "b"], ["b", "c"]]).unwrap();
        let set = is_categorical(&path, &k, DEFAULT_BUDGET).unwrap().yes().unwrap();
        assert!(set.witness.last().is_constant());
        assert_eq!(set.facets.len(), 2);
        let tri = Complex::from_facets([["a", "b", "c"]]).unwrap();
        assert!(is_categorical(&tri, &k, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn categorical_in_disconnected_ambient() {
        let k = Complex::from_facets(vec![vec!["a", "b"], vec!["c"]]).unwrap();
        let c = Complex::from_facets([["c"]]).unwrap();
        let set = is_categorical(&c, &k, DEFAULT_BUDGET).unwrap().yes().unwrap();
        assert_eq!(set.witness.last().apply(VertexId(0)), k.vertex("c").unwrap());
        assert!(is_categorical(&k, &k, DEFAULT_BUDGET).unwrap().is_no());
    }
}
