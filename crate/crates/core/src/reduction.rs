//! Contiguity-class decisions reduced to strong cores.
//!
//! Let `r: L -> core(L)` and `ρ: K -> core(K)` be the retractions of strong
//! collapse sequences. Each is in the contiguity class of the identity (as a
//! map into the ambient complex), so for `f, g: K -> L`
//!
//! ```text
//! f ~ g   iff   r ∘ f|core(K) ~ r ∘ g|core(K)   as maps core(K) -> core(L).
//! ```
//!
//! Searching the reduced space is exponentially cheaper, and any reduced
//! witness lifts back to a witness between `f` and `g` through the retraction
//! chains. Answers are exact: `No` means the reduced component was exhausted.

use crate::collapse::core;
use crate::error::{Error, Result};
use crate::maps::{compose, ContiguityWitness, Decision, MapSpace, SimplicialMap};

/// Decides `f ~ g`, returning a witness from `f` to `g` on `Yes`.
/// `budget` bounds the number of reduced maps visited.
pub fn contiguity_class(
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: usize,
) -> Result<Decision<ContiguityWitness>> {
    if !f.same_shape(g) {
        return Err(Error::DomainMismatch);
    }
    if f == g {
        return Ok(Decision::Yes(ContiguityWitness::single(f.clone())));
    }
    let (dom, cod) = (f.domain(), f.codomain());
    let dseq = core(dom);
    let cseq = core(cod);
    let (small_dom, small_cod) = (dseq.end(), cseq.end());

    let inc_dom = SimplicialMap::inclusion(small_dom, dom)?;
    let inc_cod = SimplicialMap::inclusion(small_cod, cod)?;
    let r = cseq.retraction();
    let rho = dseq.retraction();
    let reduce = |h: &SimplicialMap| -> Result<SimplicialMap> { compose(&r, &compose(h, &inc_dom)?) };
    let (fr, gr) = (reduce(f)?, reduce(g)?);

    let space = MapSpace::new(small_dom, small_cod);
    let path = match space.connect(&fr.raw(), &gr.raw(), budget) {
        Decision::Yes(path) => space.shortcut(path),
        Decision::No => return Ok(Decision::No),
        Decision::Unknown => return Ok(Decision::Unknown),
    };

    let cod_chain = cseq.retraction_chain();
    let dom_chain = dseq.retraction_chain();
    let r_full = cod_chain.last().expect("chain starts at the identity");
    let half = |h: &SimplicialMap| -> Result<Vec<SimplicialMap>> {
        let mut steps = Vec::new();
        for c in &cod_chain {
            steps.push(compose(c, h)?);
        }
        let rh = compose(r_full, h)?;
        for p in &dom_chain {
            steps.push(compose(&rh, p)?);
        }
        Ok(steps)
    };

    let mut steps = half(f)?;
    for raw in &path {
        let q = space.to_map(raw);
        steps.push(compose(&inc_cod, &compose(&q, &rho)?)?);
    }
    let mut back = half(g)?;
    back.reverse();
    steps.extend(back);
    steps.dedup();

    let full = MapSpace::new(dom, cod);
    let raw: Vec<Vec<u32>> = steps.iter().map(SimplicialMap::raw).collect();
    let steps = full.shortcut(raw).iter().map(|a| full.to_map(a)).collect();
    Ok(Decision::Yes(ContiguityWitness::new(steps)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Complex, VertexId};
    use crate::maps::{same_contiguity_class, DEFAULT_BUDGET};

    #[test]
    fn agrees_with_plain_search_on_small_cases() {
        let ks = [
            Complex::from_facets(vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap(),
            Complex::from_facets(vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"], vec!["c", "d"]]).unwrap(),
            Complex::from_facets(vec![vec!["a", "b", "c"], vec!["c", "d"]]).unwrap(),
            Complex::from_facets(vec![vec!["a"], vec!["b", "c"]]).unwrap(),
        ];
        for k in &ks {
            let id = SimplicialMap::identity(k);
            for v in k.vertices() {
                let c = SimplicialMap::constant(k, k, v).unwrap();
                let plain = same_contiguity_class(&id, &c, DEFAULT_BUDGET).unwrap();
                let reduced = contiguity_class(&id, &c, DEFAULT_BUDGET).unwrap();
                assert_eq!(plain.is_yes(), reduced.is_yes(), "{k:?} to {v:?}");
                assert_eq!(plain.is_no(), reduced.is_no());
                if let Decision::Yes(w) = reduced {
                    assert!(w.connects(&id, &c));
                }
            }
        }
    }

    #[test]
    fn lifts_through_both_cores() {
        // Domain and codomain both collapse onto a triangle boundary.
        let k = Complex::from_facets(vec![
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["a", "c"],
            vec!["c", "d", "e"],
        ])
        .unwrap();
        let id = SimplicialMap::identity(&k);
        let fold = SimplicialMap::from_labels(
            k.clone(),
            k.clone(),
            &[("a", "a"), ("b", "b"), ("c", "c"), ("d", "c"), ("e", "d")],
        )
        .unwrap();
        let w = contiguity_class(&id, &fold, DEFAULT_BUDGET).unwrap().yes().unwrap();
        assert!(w.connects(&id, &fold));
        let c = SimplicialMap::constant(&k, &k, VertexId(0)).unwrap();
        assert!(contiguity_class(&id, &c, DEFAULT_BUDGET).unwrap().is_no());
    }
}
