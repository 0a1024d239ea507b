//! Serialized certificates and their independent re-checking.
//!
//! Every certificate carries the input complex by labels. [`Certificate::verify`]
//! rebuilds everything from those labels and checks witnesses mechanically:
//! each step is simplicial, consecutive steps are contiguous, and the end
//! steps are the maps the claim is about. Claims that rest on exhaustion
//! (`No` verdicts, lower bounds) are re-derived with the recorded budget.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::collapse::{dominated_vertices, CollapseJson, CollapseSequence};
use crate::complex::{Complex, Simplex};
use crate::error::{Error, Result};
use crate::invariants::{
    is_categorical, is_farber, motion_plan, scat, tc, AdmissibleKind, AdmissibleSet, InvariantResult, MotionPlan,
    PlanJson, Status,
};
use crate::io::{canonical_facets, ComplexJson};
use crate::maps::{compose, same_contiguity_class, ContiguityWitness, Decision, SimplicialMap, WitnessJson};
use crate::product::{categorical_square, Factor, ProductComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl<T> From<&Decision<T>> for Verdict {
    fn from(d: &Decision<T>) -> Self {
        match d {
            Decision::Yes(_) => Verdict::Yes,
            Decision::No => Verdict::No,
            Decision::Unknown => Verdict::Unknown,
        }
    }
}

/// One member of a cover: the subcomplex by facets and its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub facets: Vec<Vec<String>>,
    pub witness: WitnessJson,
}

impl CoverEntry {
    fn from_set(set: &AdmissibleSet) -> Self {
        CoverEntry { facets: canonical_facets(&set.subcomplex), witness: set.witness.to_json() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCertificate {
    pub complex: ComplexJson,
    pub budget: usize,
    pub status: Status,
    pub value: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: Option<usize>,
    pub cover: Vec<CoverEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleCertificate {
    pub complex: ComplexJson,
    pub subcomplex: Vec<Vec<String>>,
    pub budget: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanCertificate {
    pub complex: ComplexJson,
    /// The Farber subcomplex the plan is read from.
    pub omega: Vec<Vec<String>>,
    pub witness: WitnessJson,
    pub plan: PlanJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContiguityCertificate {
    pub domain: ComplexJson,
    pub codomain: ComplexJson,
    /// Domain labels; `f` and `g` list images aligned with it.
    pub vertices: Vec<String>,
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub budget: usize,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    Tc(InvariantCertificate),
    Scat(InvariantCertificate),
    Core(CollapseJson),
    Farber(AdmissibleCertificate),
    Categorical(AdmissibleCertificate),
    Plan(PlanCertificate),
    Contiguity(ContiguityCertificate),
}

fn reject(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn rebuild(json: &ComplexJson) -> Result<Complex> {
    Complex::from_facets(&json.facets)
}

fn sub_by_labels(ambient: &Complex, facets: &[Vec<String>]) -> Result<Complex> {
    let gens = facets.iter().map(|f| ambient.simplex_from_labels(f)).collect::<Result<Vec<Simplex>>>()?;
    if gens.is_empty() {
        return Err(reject("empty subcomplex"));
    }
    ambient.subcomplex(&gens)
}

fn witness_of(json: &WitnessJson, domain: &Complex, codomain: &Complex) -> Result<ContiguityWitness> {
    if json.domain != domain.labels() {
        return Err(reject("witness domain labels do not match the subcomplex"));
    }
    json.to_witness(domain, codomain).map_err(|e| reject(format!("witness: {e}")))
}

/// Checks that `w` runs from `Δ ∘ π₁|Ω` to `ι_Ω`.
fn check_farber_witness(product: &ProductComplex, omega: &Complex, w: &ContiguityWitness) -> Result<()> {
    let sigma = product.projection(Factor::First).restrict(omega)?;
    if *w.first() != compose(&product.diagonal(), &sigma)? {
        return Err(reject("Farber witness does not start at the diagonal of the section"));
    }
    if *w.last() != SimplicialMap::inclusion(omega, product.complex())? {
        return Err(reject("Farber witness does not end at the inclusion"));
    }
    Ok(())
}

/// Checks that `w` runs from `ι_L` to a constant map.
fn check_categorical_witness(ambient: &Complex, sub: &Complex, w: &ContiguityWitness) -> Result<()> {
    if *w.first() != SimplicialMap::inclusion(sub, ambient)? {
        return Err(reject("categorical witness does not start at the inclusion"));
    }
    if !w.last().is_constant() {
        return Err(reject("categorical witness does not end at a constant map"));
    }
    Ok(())
}

impl Certificate {
    pub fn for_invariant(result: &InvariantResult, k: &Complex, budget: usize) -> Self {
        let cert = InvariantCertificate {
            complex: ComplexJson::from_complex(k),
            budget,
            status: result.status,
            value: result.value,
            lower_bound: result.lower_bound,
            upper_bound: result.upper_bound,
            cover: result.cover.iter().flatten().map(CoverEntry::from_set).collect(),
        };
        match result.kind {
            AdmissibleKind::Farber => Certificate::Tc(cert),
            AdmissibleKind::Categorical => Certificate::Scat(cert),
        }
    }

    pub fn for_core(seq: &CollapseSequence) -> Self {
        Certificate::Core(seq.to_json())
    }

    /// `sub` is `Ω ⊆ K²` for Farber checks and `L ⊆ K` for categorical ones.
    pub fn for_admissible(
        kind: AdmissibleKind,
        k: &Complex,
        sub: &Complex,
        decision: &Decision<AdmissibleSet>,
        budget: usize,
    ) -> Self {
        let cert = AdmissibleCertificate {
            complex: ComplexJson::from_complex(k),
            subcomplex: canonical_facets(sub),
            budget,
            verdict: decision.into(),
            witness: match decision {
                Decision::Yes(set) => Some(set.witness.to_json()),
                _ => None,
            },
        };
        match kind {
            AdmissibleKind::Farber => Certificate::Farber(cert),
            AdmissibleKind::Categorical => Certificate::Categorical(cert),
        }
    }

    pub fn for_plan(k: &Complex, set: &AdmissibleSet, plan: &MotionPlan) -> Self {
        Certificate::Plan(PlanCertificate {
            complex: ComplexJson::from_complex(k),
            omega: canonical_facets(&set.subcomplex),
            witness: set.witness.to_json(),
            plan: plan.to_json(k),
        })
    }

    pub fn for_contiguity(
        f: &SimplicialMap,
        g: &SimplicialMap,
        decision: &Decision<ContiguityWitness>,
        budget: usize,
    ) -> Self {
        Certificate::Contiguity(ContiguityCertificate {
            domain: ComplexJson::from_complex(f.domain()),
            codomain: ComplexJson::from_complex(f.codomain()),
            vertices: f.domain().labels().to_vec(),
            f: f.to_labels(),
            g: g.to_labels(),
            budget,
            verdict: decision.into(),
            witness: match decision {
                Decision::Yes(w) => Some(w.to_json()),
                _ => None,
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The verdict or status the certificate claims, as an exit decision:
    /// `true` for exact or decisive claims, `false` for bounded or unknown.
    pub fn is_decisive(&self) -> bool {
        match self {
            Certificate::Tc(c) | Certificate::Scat(c) => {
                matches!(c.status, Status::Exact | Status::NotCoverable)
            }
            Certificate::Farber(c) | Certificate::Categorical(c) => c.verdict != Verdict::Unknown,
            Certificate::Contiguity(c) => c.verdict != Verdict::Unknown,
            Certificate::Core(_) | Certificate::Plan(_) => true,
        }
    }

    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> Result<()> {
        match self {
            Certificate::Tc(c) => verify_invariant(c, AdmissibleKind::Farber),
            Certificate::Scat(c) => verify_invariant(c, AdmissibleKind::Categorical),
            Certificate::Core(c) => {
                let seq = c.to_sequence().map_err(|e| reject(format!("collapse sequence: {e}")))?;
                if !dominated_vertices(seq.end()).is_empty() {
                    return Err(reject("the final complex still has a dominated vertex"));
                }
                Ok(())
            }
            Certificate::Farber(c) => verify_admissible(c, AdmissibleKind::Farber),
            Certificate::Categorical(c) => verify_admissible(c, AdmissibleKind::Categorical),
            Certificate::Plan(c) => verify_plan(c),
            Certificate::Contiguity(c) => verify_contiguity(c),
        }
    }
}

fn verify_invariant(c: &InvariantCertificate, kind: AdmissibleKind) -> Result<()> {
    let k = rebuild(&c.complex)?;
    let product = categorical_square(&k);
    let ambient = match kind {
        AdmissibleKind::Farber => product.complex().clone(),
        AdmissibleKind::Categorical => k.clone(),
    };
    let mut covered = BitSet::new();
    for (i, entry) in c.cover.iter().enumerate() {
        let sub = sub_by_labels(&ambient, &entry.facets).map_err(|e| reject(format!("cover member {i}: {e}")))?;
        let w = witness_of(&entry.witness, &sub, &ambient)?;
        match kind {
            AdmissibleKind::Farber => check_farber_witness(&product, &sub, &w)?,
            AdmissibleKind::Categorical => check_categorical_witness(&ambient, &sub, &w)?,
        }
        covered.union_with(&sub.covered_facets_of(&ambient)?);
    }
    let consistent = match c.status {
        Status::Exact => c.value.is_some() && c.value == c.upper_bound && c.value == Some(c.lower_bound),
        Status::Bounded => c.value.is_none() && c.upper_bound.is_some_and(|u| c.lower_bound < u),
        Status::BudgetExhausted | Status::NotCoverable => c.value.is_none() && c.upper_bound.is_none(),
    };
    if !consistent {
        return Err(reject("status, value and bounds disagree"));
    }
    match c.upper_bound {
        Some(u) => {
            if c.cover.len() != u + 1 {
                return Err(reject(format!("cover has {} members, upper bound needs {}", c.cover.len(), u + 1)));
            }
            if covered != BitSet::full(ambient.num_facets()) {
                return Err(reject("cover misses a facet"));
            }
        }
        None if !c.cover.is_empty() => return Err(reject("cover given without an upper bound")),
        None => {}
    }
    // Lower bounds and non-coverability rest on exhaustive search; redo it.
    if c.lower_bound > 0 || c.status == Status::NotCoverable {
        let again = match kind {
            AdmissibleKind::Farber => tc(&k, c.budget)?,
            AdmissibleKind::Categorical => scat(&k, c.budget)?,
        };
        if c.status == Status::NotCoverable {
            if again.status != Status::NotCoverable {
                return Err(reject("recomputation finds a cover"));
            }
        } else if again.status == Status::NotCoverable || again.lower_bound < c.lower_bound {
            return Err(reject(format!("lower bound {} is not reproduced", c.lower_bound)));
        }
    }
    Ok(())
}

fn verify_admissible(c: &AdmissibleCertificate, kind: AdmissibleKind) -> Result<()> {
    let k = rebuild(&c.complex)?;
    let product = categorical_square(&k);
    let ambient = match kind {
        AdmissibleKind::Farber => product.complex(),
        AdmissibleKind::Categorical => &k,
    };
    let sub = sub_by_labels(ambient, &c.subcomplex)?;
    match (c.verdict, &c.witness) {
        (Verdict::Yes, Some(wj)) => {
            let w = witness_of(wj, &sub, ambient)?;
            match kind {
                AdmissibleKind::Farber => check_farber_witness(&product, &sub, &w),
                AdmissibleKind::Categorical => check_categorical_witness(ambient, &sub, &w),
            }
        }
        (Verdict::Yes, None) => Err(reject("yes verdict without a witness")),
        (_, Some(_)) => Err(reject("witness attached to a non-yes verdict")),
        (verdict, None) => {
            let again = match kind {
                AdmissibleKind::Farber => is_farber(&sub, &product, c.budget)?,
                AdmissibleKind::Categorical => is_categorical(&sub, &k, c.budget)?,
            };
            if Verdict::from(&again) != verdict {
                return Err(reject(format!("recomputed verdict is {:?}", Verdict::from(&again))));
            }
            Ok(())
        }
    }
}

fn verify_plan(c: &PlanCertificate) -> Result<()> {
    let k = rebuild(&c.complex)?;
    let product = categorical_square(&k);
    let omega = sub_by_labels(product.complex(), &c.omega)?;
    let w = witness_of(&c.witness, &omega, product.complex())?;
    check_farber_witness(&product, &omega, &w)?;
    let set = AdmissibleSet {
        kind: AdmissibleKind::Farber,
        facets: omega.covered_facets_of(product.complex())?,
        subcomplex: omega,
        witness: w,
    };
    let id = |l: &str| k.vertex(l).ok_or_else(|| reject(format!("unknown vertex {l:?}")));
    let path = c.plan.path.iter().map(|l| id(l)).collect::<Result<Vec<_>>>()?;
    let claimed = MotionPlan {
        from: id(&c.plan.from)?,
        to: id(&c.plan.to)?,
        midpoint: id(&c.plan.midpoint)?,
        pairs: Vec::new(),
        path,
    };
    claimed.validate(&k).map_err(|e| reject(format!("plan: {e}")))?;
    let expected = motion_plan(&product, &set, claimed.from, claimed.to)?;
    if expected.path != claimed.path || expected.midpoint != claimed.midpoint {
        return Err(reject("plan does not follow the witness"));
    }
    Ok(())
}

fn verify_contiguity(c: &ContiguityCertificate) -> Result<()> {
    let dom = rebuild(&c.domain)?;
    let cod = rebuild(&c.codomain)?;
    let map = |images: &[String]| -> Result<SimplicialMap> {
        if images.len() != c.vertices.len() {
            return Err(reject("map has the wrong number of images"));
        }
        let pairs: Vec<(&str, &str)> =
            c.vertices.iter().map(String::as_str).zip(images.iter().map(String::as_str)).collect();
        SimplicialMap::from_labels(dom.clone(), cod.clone(), &pairs)
    };
    let (f, g) = (map(&c.f)?, map(&c.g)?);
    match (c.verdict, &c.witness) {
        (Verdict::Yes, Some(wj)) => {
            let w = witness_of(wj, &dom, &cod)?;
            if !w.connects(&f, &g) {
                return Err(reject("witness does not connect the two maps"));
            }
            Ok(())
        }
        (Verdict::Yes, None) => Err(reject("yes verdict without a witness")),
        (_, Some(_)) => Err(reject("witness attached to a non-yes verdict")),
        (verdict, None) => {
            let again = same_contiguity_class(&f, &g, c.budget)?;
            if Verdict::from(&again) != verdict {
                return Err(reject(format!("recomputed verdict is {:?}", Verdict::from(&again))));
            }
            Ok(())
        }
    }
}

/// Flips one vertex image in the first witness step found, choosing a
/// different codomain vertex. Used to check that verification is not vacuous.
pub fn mutate_witness(json: &mut WitnessJson, codomain_labels: &[String], step: usize, vertex: usize) -> bool {
    let Some(images) = json.steps.get_mut(step) else { return false };
    let Some(image) = images.get_mut(vertex) else { return false };
    match codomain_labels.iter().find(|l| *l != image) {
        Some(other) => {
            *image = other.clone();
            true
        }
        None => false,
    }
}
