//! Discrete topological complexity `TC(K)` and simplicial LS-category
//! `scat(K)`, both normalized (a point has value 0).
//!
//! `TC(K)` is one less than the least number of Farber subcomplexes covering
//! `K²`; `scat(K)` is one less than the least number of categorical
//! subcomplexes covering `K`. Both are computed as minimum partitions of
//! the ambient facets into admissible facet sets.

mod admissible;
mod plan;
mod search;

use serde::{Deserialize, Serialize};

pub use admissible::{is_categorical, is_farber, AdmissibleKind, AdmissibleSet};
pub use plan::{motion_plan, MotionPlan, PlanJson};
pub use search::{min_cover, AdmissibleSearch, Criterion};


use crate::complex::Complex;
use crate::error::Result;
use crate::product::{categorical_square, ProductComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Lower and upper bounds meet.
    Exact,
    /// A cover was found but some checks ran out of budget, so the lower bound
    /// may be below it.
    Bounded,
    /// Checks ran out of budget and no cover was certified.
    BudgetExhausted,
    /// No admissible cover exists (e.g. `TC` of a disconnected complex).
    NotCoverable,
}

/// Outcome of a `tc` or `scat` computation.
#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub kind: AdmissibleKind,
    pub ambient: Complex,
    pub value: Option<usize>,
    pub lower_bound: usize,
    /// `None` when no finite bound is certified.
    pub upper_bound: Option<usize>,
    pub status: Status,
    /// A cover of size `upper_bound + 1`, when one was found.
    pub cover: Option<Vec<AdmissibleSet>>,
    /// Admissibility checks run.
    pub checks: usize,
}

impl InvariantResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

/// Minimum admissible cover of all facets of the search's ambient complex.
pub fn cover_invariant(search: &AdmissibleSearch) -> Result<InvariantResult> {
    let upper = search.min_partition(false)?;
    let lower = if search.saw_unknown() { search.min_partition(true)? } else { upper.clone() };
    let cover = match &upper {
        Some(parts) => Some(
            parts
                .iter()
                .map(|p| search.check(p).map(|d| d.yes().expect("part passed its check")))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let (value, lower_bound, upper_bound, status) = match (&lower, &upper) {
        (None, _) => (None, 0, None, Status::NotCoverable),
        (Some(l), Some(u)) if l.len() == u.len() => {
            (Some(u.len() - 1), u.len() - 1, Some(u.len() - 1), Status::Exact)
        }
        (Some(l), Some(u)) => (None, l.len() - 1, Some(u.len() - 1), Status::Bounded),
        (Some(l), None) => (None, l.len() - 1, None, Status::BudgetExhausted),
    };
    Ok(InvariantResult {
        kind: search.kind(),
        ambient: search.ambient().clone(),
        value,
        lower_bound,
        upper_bound,
        status,
        cover,
        checks: search.checks_run(),
    })
}

/// `TC(K)`: minimum Farber cover of `K²`.
pub fn tc(k: &Complex, budget: usize) -> Result<InvariantResult> {
    tc_with_product(&categorical_square(k), budget)
}

pub fn tc_with_product(product: &ProductComplex, budget: usize) -> Result<InvariantResult> {
    cover_invariant(&AdmissibleSearch::farber(product, budget))
}

/// `scat(K)`: minimum categorical cover of `K`.
pub fn scat(k: &Complex, budget: usize) -> Result<InvariantResult> {
    cover_invariant(&AdmissibleSearch::categorical(k, budget))
}
