//! Minimum admissible covers of the ambient facets.
//!
//! Admissibility is inherited by subcomplexes (restricting a witness step by
//! step gives a witness), so the admissible facet subsets form a down-set and
//! a minimum cover may be taken to be a partition. The partition search learns
//! minimal non-admissible sets lazily and hands the coloring problem they
//! define to a SAT solver. Maximal admissible sets are also available for
//! small ambients.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use varisat::{ExtendFormula, Lit, Solver};

use crate::bitset::BitSet;
use crate::complex::Complex;
use crate::error::Result;
use crate::maps::Decision;
use crate::product::ProductComplex;

use super::admissible::{is_categorical, is_farber, AdmissibleKind, AdmissibleSet};

/// Which admissibility check a search runs.
#[derive(Debug, Clone)]
pub enum Criterion {
    /// Farber subcomplexes of the square; the ambient is `product.complex()`.
    Farber(ProductComplex),
    /// Categorical subcomplexes of the ambient.
    Categorical,
}

impl Criterion {
    pub fn kind(&self) -> AdmissibleKind {
        match self {
            Criterion::Farber(_) => AdmissibleKind::Farber,
            Criterion::Categorical => AdmissibleKind::Categorical,
        }
    }
}

/// Memoized admissibility search over facet subsets of one ambient complex.
pub struct AdmissibleSearch {
    ambient: Complex,
    criterion: Criterion,
    budget: usize,
    memo: Mutex<HashMap<BitSet, Decision<AdmissibleSet>>>,
    checks: AtomicUsize,
}

impl AdmissibleSearch {
    pub fn new(ambient: &Complex, criterion: Criterion, budget: usize) -> Self {
        AdmissibleSearch {
            ambient: ambient.clone(),
            criterion,
            budget,
            memo: Mutex::new(HashMap::new()),
            checks: AtomicUsize::new(0),
        }
    }

    pub fn farber(product: &ProductComplex, budget: usize) -> Self {
        Self::new(product.complex(), Criterion::Farber(product.clone()), budget)
    }

    pub fn categorical(ambient: &Complex, budget: usize) -> Self {
        Self::new(ambient, Criterion::Categorical, budget)
    }

    pub fn ambient(&self) -> &Complex {
        &self.ambient
    }

    pub fn kind(&self) -> AdmissibleKind {
        self.criterion.kind()
    }

    /// Number of admissibility checks actually run (memo misses).
    pub fn checks_run(&self) -> usize {
        self.checks.load(Ordering::Relaxed)
    }

    /// True iff some check so far ran out of budget.
    pub fn saw_unknown(&self) -> bool {
        self.memo.lock().unwrap().values().any(|d| *d == Decision::Unknown)
    }

    /// Checks the subcomplex generated by the facets in `mask`.
    pub fn check(&self, mask: &BitSet) -> Result<Decision<AdmissibleSet>> {
        if let Some(d) = self.memo.lock().unwrap().get(mask) {
            return Ok(d.clone());
        }
        self.checks.fetch_add(1, Ordering::Relaxed);
        let sub = self.ambient.facet_subcomplex(mask)?;
        let decision = match &self.criterion {
            Criterion::Farber(p) => is_farber(&sub, p, self.budget)?,
            Criterion::Categorical => is_categorical(&sub, &self.ambient, self.budget)?,
        };
        let mut memo = self.memo.lock().unwrap();
        Ok(memo.entry(mask.clone()).or_insert(decision).clone())
    }

    fn passes(&self, mask: &BitSet, unknown_passes: bool) -> Result<bool> {
        Ok(match self.check(mask)? {
            Decision::Yes(_) => true,
            Decision::No => false,
            Decision::Unknown => unknown_passes,
        })
    }

    fn passing(
        &self,
        base: &BitSet,
        indices: impl IntoIterator<Item = usize>,
        unknown_passes: bool,
    ) -> Result<Vec<usize>> {
        let idx: Vec<usize> = indices.into_iter().filter(|j| !base.contains(*j)).collect();
        let flags = idx
            .par_iter()
            .map(|&j| {
                let mut m = base.clone();
                m.insert(j);
                self.passes(&m, unknown_passes)
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(idx.into_iter().zip(flags).filter(|(_, ok)| *ok).map(|(j, _)| j).collect())
    }

    /// All inclusion-maximal admissible facet subsets, sorted. Checks that run
    /// out of budget count as passing iff `unknown_passes`.
    ///
    /// Admissible sets are cliques of the graph joining facets that are
    /// admissible as a pair. Maximal cliques are enumerated first; a clique
    /// that fails as a whole is searched for its maximal admissible subsets.
    pub fn maximal_sets(&self, unknown_passes: bool) -> Result<Vec<BitSet>> {
        let n = self.ambient.num_facets();
        let full = BitSet::full(n);
        if self.passes(&full, unknown_passes)? {
            return Ok(vec![full]);
        }
        let singles: Vec<usize> = self.passing(&BitSet::new(), 0..n, unknown_passes)?;
        let pairs: Vec<(usize, usize)> =
            singles.iter().enumerate().flat_map(|(a, &i)| singles[a + 1..].iter().map(move |&j| (i, j))).collect();
        let ok = pairs
            .par_iter()
            .map(|&(i, j)| self.passes(&[i, j].into_iter().collect(), unknown_passes))
            .collect::<Result<Vec<bool>>>()?;
        let mut adjacency = vec![BitSet::new(); n];
        for (&(i, j), ok) in pairs.iter().zip(ok) {
            if ok {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
        let mut cliques = Vec::new();
        bron_kerbosch(&adjacency, BitSet::new(), singles.iter().copied().collect(), BitSet::new(), &mut cliques);
        let verdicts = cliques
            .par_iter()
            .map(|c| self.passes(c, unknown_passes))
            .collect::<Result<Vec<bool>>>()?;
        let mut found = Vec::new();
        for (clique, ok) in cliques.into_iter().zip(verdicts) {
            if ok {
                found.push(clique);
            } else {
                let pool = clique.to_vec();
                self.visit(&pool, BitSet::new(), 0, unknown_passes, &mut found)?;
            }
        }
        found.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut out: Vec<BitSet> = Vec::new();
        for s in found {
            if !out.iter().any(|m| s.is_subset(m)) {
                out.push(s);
            }
        }
        out.sort_by_cached_key(BitSet::to_vec);
        Ok(out)
    }

    /// Set-enumeration tree over subsets of `pool` whose new members come at
    /// or after position `start`. Pushes the subsets that are maximal within
    /// `pool`.
    fn visit(
        &self,
        pool: &[usize],
        set: BitSet,
        start: usize,
        unknown_passes: bool,
        out: &mut Vec<BitSet>,
    ) -> Result<()> {
        let cands = self.passing(&set, pool[start..].iter().copied(), unknown_passes)?;
        if cands.is_empty() {
            if !set.is_empty() && self.passing(&set, pool[..start].iter().copied(), unknown_passes)?.is_empty() {
                out.push(set);
            }
            return Ok(());
        }
        // Every admissible set below this node only adds candidates; if all of
        // them fit together that union is the only maximal set down here.
        let mut all = set.clone();
        for &j in &cands {
            all.insert(j);
        }
        if self.passes(&all, unknown_passes)? {
            if self.passing(&all, pool.iter().copied(), unknown_passes)?.is_empty() {
                out.push(all);
            }
            return Ok(());
        }
        for &j in &cands {
            let mut child = set.clone();
            child.insert(j);
            let next = pool.iter().position(|&p| p == j).expect("candidate from pool") + 1;
            self.visit(pool, child, next, unknown_passes, out)?;
        }
        Ok(())
    }
}

impl AdmissibleSearch {
    /// A cover of all ambient facets by the fewest admissible sets, as a
    /// partition, or `None` when some facet is not admissible on its own.
    ///
    /// Candidate partitions come from local search, then from a SAT
    /// encoding, both avoiding every known non-admissible set. A failing part is shrunk to a minimal
    /// non-admissible subset and added to that list. When no coloring with
    /// `c` parts exists, the collected sets show that `c` parts never suffice.
    pub fn min_partition(&self, unknown_passes: bool) -> Result<Option<Vec<BitSet>>> {
        let n = self.ambient.num_facets();
        let full = BitSet::full(n);
        if self.passes(&full, unknown_passes)? {
            return Ok(Some(vec![full]));
        }
        let singles = self.passing(&BitSet::new(), 0..n, unknown_passes)?;
        if singles.len() < n {
            return Ok(None);
        }
        let mut circuits = Circuits::new(n);
        let mut parts = 2;
        let mut colors = vec![0; n];
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        loop {
            let found = if circuits.repair(&mut colors, parts, &mut rng) {
                Some(groups_of(&colors, parts))
            } else {
                circuits.color(parts)
            };
            let Some(candidate) = found else {
                parts += 1;
                continue;
            };
            for (g, part) in candidate.iter().enumerate() {
                for f in part.iter() {
                    colors[f] = g;
                }
            }
            let verdicts = candidate
                .par_iter()
                .map(|part| self.passes(part, unknown_passes))
                .collect::<Result<Vec<bool>>>()?;
            if verdicts.iter().all(|ok| *ok) {
                return Ok(Some(candidate));
            }
            for (part, ok) in candidate.iter().zip(verdicts) {
                if !ok {
                    self.learn(part.clone(), unknown_passes, &mut circuits)?;
                }
            }
        }
    }

    /// Adds a few non-admissible subsets of a failing `part`, removing one
    /// member of each before looking for the next.
    fn learn(&self, mut part: BitSet, unknown_passes: bool, circuits: &mut Circuits) -> Result<()> {
        for _ in 0..4 {
            let c = self.shrink(part.clone(), unknown_passes)?;
            part.remove(c.iter().last().expect("nonempty circuit"));
            circuits.add(c);
            if self.passes(&part, unknown_passes)? {
                break;
            }
        }
        Ok(())
    }

    /// Deletes members while the set keeps failing.
    fn shrink(&self, mut set: BitSet, unknown_passes: bool) -> Result<BitSet> {
        for i in set.to_vec() {
            set.remove(i);
            if self.passes(&set, unknown_passes)? {
                set.insert(i);
            }
        }
        Ok(set)
    }
}

fn groups_of(colors: &[usize], parts: usize) -> Vec<BitSet> {
    let mut groups = vec![BitSet::new(); parts];
    for (f, &g) in colors.iter().enumerate() {
        groups[g].insert(f);
    }
    groups.retain(|g| !g.is_empty());
    groups
}

/// Known non-admissible facet sets, indexed by member.
struct Circuits {
    n: usize,
    all: Vec<BitSet>,
    by_member: Vec<Vec<BitSet>>,
    sat: Option<Partition>,
}

impl Circuits {
    fn new(n: usize) -> Self {
        Circuits { n, all: Vec::new(), by_member: vec![Vec::new(); n], sat: None }
    }

    fn add(&mut self, circuit: BitSet) {
        if circuit.iter().next().is_some_and(|f| self.by_member[f].contains(&circuit)) {
            return;
        }
        for f in circuit.iter() {
            self.by_member[f].push(circuit.clone());
        }
        self.all.push(circuit);
    }

    fn violated(c: &BitSet, colors: &[usize]) -> bool {
        let mut it = c.iter().map(|f| colors[f]);
        let first = it.next();
        it.all(|g| Some(g) == first)
    }

    /// Circuits through `f` that would lie inside one group with `f` in `g`.
    fn conflicts(&self, f: usize, g: usize, colors: &[usize]) -> usize {
        self.by_member[f].iter().filter(|c| c.iter().all(|h| h == f || colors[h] == g)).count()
    }

    /// Min-conflicts local search from `colors`, using groups `0..parts`.
    /// Cheap and incomplete; `color` is the exhaustive fallback.
    fn repair(&self, colors: &mut [usize], parts: usize, rng: &mut ChaCha8Rng) -> bool {
        for c in colors.iter_mut() {
            *c = (*c).min(parts - 1);
        }
        for _ in 0..50 * self.n.max(1) {
            let bad: Vec<&BitSet> = self.all.iter().filter(|c| Self::violated(c, colors)).collect();
            let Some(c) = bad.choose(rng) else { return true };
            let members = c.to_vec();
            if rng.gen_bool(0.1) {
                let f = *members.choose(rng).expect("nonempty");
                colors[f] = rng.gen_range(0..parts);
                continue;
            }
            let mut best = (isize::MAX, Vec::new());
            for &f in &members {
                let here = self.conflicts(f, colors[f], colors) as isize;
                for g in (0..parts).filter(|&g| g != colors[f]) {
                    let score = self.conflicts(f, g, colors) as isize - here;
                    if score < best.0 {
                        best = (score, vec![(f, g)]);
                    } else if score == best.0 {
                        best.1.push((f, g));
                    }
                }
            }
            if let Some(&(f, g)) = best.1.choose(rng) {
                colors[f] = g;
            }
        }
        false
    }

    /// A partition into at most `parts` sets, none containing a circuit.
    /// The solver for the current `parts` is kept and fed new circuits.
    fn color(&mut self, parts: usize) -> Option<Vec<BitSet>> {
        if self.sat.as_ref().is_none_or(|s| s.parts != parts) {
            self.sat = Some(Partition::new(self.n, parts));
        }
        let sat = self.sat.as_mut().expect("just set");
        for c in &self.all[sat.encoded..] {
            let lowest = c.iter().next().expect("nonempty circuit");
            for g in 0..parts.min(lowest + 1) {
                let clause: Vec<Lit> = c.iter().map(|f| !sat.lits[f][g]).collect();
                sat.solver.add_clause(&clause);
            }
        }
        sat.encoded = self.all.len();
        if !sat.solver.solve().expect("in-memory solve") {
            return None;
        }
        let model: HashSet<Lit> = sat.solver.model().expect("satisfiable").into_iter().collect();
        let mut groups = vec![BitSet::new(); parts];
        for (f, row) in sat.lits.iter().enumerate() {
            let g = row.iter().position(|l| model.contains(l)).expect("every facet has a group");
            groups[g].insert(f);
        }
        groups.retain(|g| !g.is_empty());
        Some(groups)
    }
}

/// Facet `f` in group `g` is `lits[f][g]`; facet `f` only uses groups
/// `0..=f`, which removes relabellings of the groups.
struct Partition {
    parts: usize,
    solver: Solver<'static>,
    lits: Vec<Vec<Lit>>,
    encoded: usize,
}

impl Partition {
    fn new(n: usize, parts: usize) -> Self {
        let mut solver = Solver::new();
        let lits: Vec<Vec<Lit>> = (0..n).map(|f| (0..parts.min(f + 1)).map(|_| solver.new_lit()).collect()).collect();
        for row in &lits {
            solver.add_clause(row);
        }
        Partition { parts, solver, lits, encoded: 0 }
    }
}

/// Maximal cliques with Tomita pivoting.
fn bron_kerbosch(adj: &[BitSet], r: BitSet, mut p: BitSet, mut x: BitSet, out: &mut Vec<BitSet>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| adj[u].intersection(&p).len())
        .expect("nonempty");
    for v in p.difference(&adj[pivot]).to_vec() {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(adj, r2, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        p.remove(v);
        x.insert(v);
    }
}

/// A minimum-cardinality subfamily of `sets` covering `universe`, as indices
/// into `sets`, or `None` when their union misses part of `universe`.
///
/// Branch and bound: a greedy cover seeds the incumbent, then the search
/// branches on the uncovered element with the fewest covering sets.
pub fn min_cover(universe: &BitSet, sets: &[BitSet]) -> Option<Vec<usize>> {
    let mut union = BitSet::new();
    for s in sets {
        union.union_with(s);
    }
    if !universe.is_subset(&union) {
        return None;
    }
    let mut best = greedy_cover(universe, sets);
    let mut chosen = Vec::new();
    branch(universe.clone(), sets, &mut chosen, &mut best);
    Some(best)
}

fn greedy_cover(universe: &BitSet, sets: &[BitSet]) -> Vec<usize> {
    let mut left = universe.clone();
    let mut chosen = Vec::new();
    while !left.is_empty() {
        let (i, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection(&left).len()))
            .max_by_key(|&(i, c)| (c, std::cmp::Reverse(i)))
            .expect("coverable");
        chosen.push(i);
        left.difference_with(&sets[i]);
    }
    chosen
}

fn branch(left: BitSet, sets: &[BitSet], chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    if left.is_empty() {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    if chosen.len() + 1 >= best.len() {
        return;
    }
    let widest = sets.iter().map(|s| s.intersection(&left).len()).max().unwrap_or(0);
    if widest == 0 || chosen.len() + left.len().div_ceil(widest) >= best.len() {
        return;
    }
    let pivot = left
        .iter()
        .min_by_key(|&e| sets.iter().filter(|s| s.contains(e)).count())
        .expect("nonempty");
    let mut options: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].contains(pivot)).collect();
    options.sort_by_key(|&i| std::cmp::Reverse(sets[i].intersection(&left).len()));
    for i in options {
        chosen.push(i);
        branch(left.difference(&sets[i]), sets, chosen, best);
        chosen.pop();
    }
}
