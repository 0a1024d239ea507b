//! Edge-path motion plans read off Farber witnesses.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, VertexId};
use crate::error::{invalid, Result};
use crate::product::ProductComplex;

use super::admissible::{AdmissibleKind, AdmissibleSet};

/// A discrete motion plan from `x` to `y`.
///
/// With witness `h₀ = Δ∘σ ~ … ~ hₘ = ι_Ω` and `hⱼ(x, y) = (xⱼ, yⱼ)`, the path
/// is `x = xₘ, …, x₀ = σ(x, y) = y₀, …, yₘ = y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotionPlan {
    pub from: VertexId,
    pub to: VertexId,
    /// `σ(x, y)`.
    pub midpoint: VertexId,
    /// `(xⱼ, yⱼ)` for `j = m, …, 0`.
    pub pairs: Vec<(VertexId, VertexId)>,
    /// The unfolded edge-path, `2m + 1` points.
    pub path: Vec<VertexId>,
}

/// Unfolds the witness of a Farber set at the product vertex `(x, y)`.
pub fn motion_plan(
    product: &ProductComplex,
    set: &AdmissibleSet,
    x: VertexId,
    y: VertexId,
) -> Result<MotionPlan> {
    if set.kind != AdmissibleKind::Farber {
        return Err(invalid("motion plans need a Farber set"));
    }
    let base = product.base();
    if x.index() >= base.num_vertices() || y.index() >= base.num_vertices() {
        return Err(invalid("query vertex out of range"));
    }
    let label = product.complex().label(product.pair(x, y));
    let omega_vertex = set
        .subcomplex
        .vertex(label)
        .ok_or_else(|| invalid(format!("({}, {}) is not a vertex of the Farber set", base.label(x), base.label(y))))?;
    let coords: Vec<(VertexId, VertexId)> = set
        .witness
        .steps()
        .iter()
        .map(|h| {
            let w = product.complex().vertex(h.codomain().label(h.apply(omega_vertex))).expect("product vertex");
            product.unpair(w)
        })
        .collect();
    let midpoint = set.section(product)?.apply(omega_vertex);
    let pairs: Vec<(VertexId, VertexId)> = coords.iter().rev().copied().collect();
    let mut path: Vec<VertexId> = pairs.iter().map(|p| p.0).collect();
    path.extend(coords.iter().skip(1).map(|p| p.1));
    Ok(MotionPlan { from: x, to: y, midpoint, pairs, path })
}

impl MotionPlan {
    /// Checks endpoints, the midpoint, and that consecutive points are equal
    /// or span an edge of `k`.
    pub fn validate(&self, k: &Complex) -> Result<()> {
        let (Some(&first), Some(&last)) = (self.path.first(), self.path.last()) else {
            return Err(invalid("empty path"));
        };
        if first != self.from || last != self.to {
            return Err(invalid("path endpoints do not match the query"));
        }
        if self.path.len().is_multiple_of(2) || self.path[self.path.len() / 2] != self.midpoint {
            return Err(invalid("midpoint is not σ(x, y)"));
        }
        for (i, w) in self.path.windows(2).enumerate() {
            let s = [w[0].index(), w[1].index()].into_iter().collect();
            if !k.is_simplex(&s) {
                return Err(invalid(format!("points {i} and {} do not span a simplex", i + 1)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, k: &Complex) -> PlanJson {
        let l = |v: VertexId| k.label(v).to_owned();
        PlanJson {
            from: l(self.from),
            to: l(self.to),
            midpoint: l(self.midpoint),
            path: self.path.iter().map(|v| l(*v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanJson {
    pub from: String,
    pub to: String,
    pub midpoint: String,
    pub path: Vec<String>,
}
