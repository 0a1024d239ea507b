//! Brute-force oracles and random instance generators shared by the
//! integration tests. Everything here works on plain `Vec<usize>` sets so it
//! shares no code with the library's bitset and search paths.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use dtc_core::{Complex, ProductComplex};
pub use rand::seq::SliceRandom;
pub use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complex as sorted vertex-id lists, one per facet.
#[derive(Debug, Clone)]
pub struct Naive {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl Naive {
    pub fn of(k: &Complex) -> Self {
        Naive { n: k.num_vertices(), facets: k.facets().iter().map(|f| f.to_vec()).collect() }
    }

    pub fn is_simplex(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| s.iter().all(|v| f.contains(v)))
    }
}

fn image(a: &[usize], f: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = f.iter().map(|&v| a[v]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn is_simplicial(dom: &Naive, cod: &Naive, a: &[usize]) -> bool {
    dom.facets.iter().all(|f| cod.is_simplex(&image(a, f)))
}

pub fn is_contiguous(dom: &Naive, cod: &Naive, a: &[usize], b: &[usize]) -> bool {
    dom.facets.iter().all(|f| {
        let mut u = image(a, f);
        u.extend(image(b, f));
        u.sort_unstable();
        u.dedup();
        cod.is_simplex(&u)
    })
}

/// Every simplicial vertex assignment `dom -> cod`, in lexicographic order.
pub fn all_simplicial_maps(dom: &Naive, cod: &Naive) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a = vec![0; dom.n];
    loop {
        if is_simplicial(dom, cod, &a) {
            out.push(a.clone());
        }
        let mut i = 0;
        loop {
            if i == dom.n {
                return out;
            }
            a[i] += 1;
            if a[i] < cod.n {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Contiguity class of `start`, exploring maps that differ in one vertex.
pub fn component_single(dom: &Naive, cod: &Naive, start: &[usize]) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(a) = queue.pop_front() {
        for v in 0..dom.n {
            for w in 0..cod.n {
                if w == a[v] {
                    continue;
                }
                let mut b = a.clone();
                b[v] = w;
                if !seen.contains(&b) && is_simplicial(dom, cod, &b) && is_contiguous(dom, cod, &a, &b) {
                    seen.insert(b.clone());
                    queue.push_back(b);
                }
            }
        }
    }
    seen
}

/// Contiguity class of `start` under the full relation, by scanning every
/// simplicial map. Quadratic; only for very small instances.
pub fn component_full(dom: &Naive, cod: &Naive, start: &[usize]) -> HashSet<Vec<usize>> {
    let all = all_simplicial_maps(dom, cod);
    let mut seen = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(a) = queue.pop_front() {
        for b in &all {
            if !seen.contains(b) && is_contiguous(dom, cod, &a, b) {
                seen.insert(b.clone());
                queue.push_back(b.clone());
            }
        }
    }
    seen
}

/// Section test by brute force: some simplicial `σ: Ω -> K` has `Δ∘σ` in
/// the contiguity class of the inclusion `Ω -> K²`.
pub fn farber_by_sections(product: &ProductComplex, omega: &Complex) -> bool {
    let k = Naive::of(product.base());
    let sq = Naive::of(product.complex());
    let om = Naive::of(omega);
    let n = k.n;
    let inclusion: Vec<usize> = omega
        .labels()
        .iter()
        .map(|l| product.complex().vertex(l).expect("subcomplex vertex").index())
        .collect();
    let class = component_single(&om, &sq, &inclusion);
    all_simplicial_maps(&om, &k).iter().any(|sigma| {
        let diag: Vec<usize> = sigma.iter().map(|&x| x * n + x).collect();
        class.contains(&diag)
    })
}

/// Projection test by brute force: `π₁|Ω ~ π₂|Ω` as maps `Ω -> K`.
pub fn farber_by_projections(product: &ProductComplex, omega: &Complex) -> bool {
    let k = Naive::of(product.base());
    let om = Naive::of(omega);
    let n = k.n;
    let ids: Vec<usize> = omega
        .labels()
        .iter()
        .map(|l| product.complex().vertex(l).expect("subcomplex vertex").index())
        .collect();
    let p1: Vec<usize> = ids.iter().map(|w| w / n).collect();
    let p2: Vec<usize> = ids.iter().map(|w| w % n).collect();
    component_single(&om, &k, &p1).contains(&p2)
}

/// Vertex labels `v0, v1, ...`.
pub fn label(i: usize) -> String {
    format!("v{i}")
}

/// Random complex on at most `n` vertices with `m` random generating
/// simplices of at most `max_size` vertices each.
pub fn random_complex(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Complex {
    let verts: Vec<usize> = (0..n).collect();
    let facets: Vec<Vec<String>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(n));
            verts.choose_multiple(rng, size).map(|&v| label(v)).collect()
        })
        .collect();
    Complex::from_facets(&facets).expect("valid labels")
}

/// Random edge-path connected complex, by rejection.
pub fn random_connected(rng: &mut impl Rng, n: usize, m: usize, max_size: usize) -> Complex {
    loop {
        let k = random_complex(rng, n, m, max_size);
        if k.is_edge_path_connected() {
            return k;
        }
    }
}

/// A random subcomplex generated by faces of randomly chosen facets.
pub fn random_subcomplex(rng: &mut impl Rng, k: &Complex, max_generators: usize) -> Complex {
    let g = rng.gen_range(1..=max_generators.max(1));
    let gens: Vec<Vec<String>> = (0..g)
        .map(|_| {
            let f = k.facets()[rng.gen_range(0..k.num_facets())].to_vec();
            let size = rng.gen_range(1..=f.len());
            f.choose_multiple(rng, size).map(|&v| k.labels()[v].clone()).collect()
        })
        .collect();
    let simplices: Vec<_> = gens.iter().map(|s| k.simplex_from_labels(s).unwrap()).collect();
    k.subcomplex(&simplices).unwrap()
}

/// `k` plus a new vertex `x` dominated by an existing vertex: `x` is coned
/// onto faces of facets through the dominator, each containing it.
pub fn strong_expansion(rng: &mut impl Rng, k: &Complex, x: &str) -> Complex {
    let v = rng.gen_range(0..k.num_vertices());
    let through: Vec<Vec<usize>> = k.facets().iter().filter(|f| f.contains(v)).map(|f| f.to_vec()).collect();
    let count = rng.gen_range(1..=through.len());
    let mut facets: Vec<Vec<String>> =
        k.facets().iter().map(|f| f.iter().map(|u| k.labels()[u].clone()).collect()).collect();
    let chosen: Vec<Vec<usize>> = through.choose_multiple(rng, count).cloned().collect();
    for f in chosen {
        let mut s: Vec<String> =
            f.iter().filter(|&&u| u != v && rng.gen_bool(0.5)).map(|&u| k.labels()[u].clone()).collect();
        s.push(k.labels()[v].clone());
        s.push(x.to_owned());
        facets.push(s);
    }
    Complex::from_facets(&facets).expect("valid labels")
}

/// Hand-picked small complexes with known shapes.
pub fn named_complexes() -> Vec<(&'static str, Complex)> {
    let c = |f: &[&[&str]]| Complex::from_facets(f.iter().map(|s| s.to_vec())).unwrap();
    vec![
        ("point", c(&[&["a"]])),
        ("edge", c(&[&["a", "b"]])),
        ("triangle", c(&[&["a", "b", "c"]])),
        ("tetrahedron", c(&[&["a", "b", "c", "d"]])),
        ("boundary of triangle", c(&[&["a", "b"], &["b", "c"], &["a", "c"]])),
        ("square cycle", c(&[&["a", "b"], &["b", "c"], &["c", "d"], &["a", "d"]])),
        ("boundary with whisker", c(&[&["a", "b"], &["b", "c"], &["a", "c"], &["c", "d"]])),
        ("path", c(&[&["a", "b"], &["b", "c"], &["c", "d"]])),
        ("two triangles on an edge", c(&[&["a", "b", "c"], &["b", "c", "d"]])),
        ("cone on boundary", c(&[&["a", "b", "x"], &["b", "c", "x"], &["a", "c", "x"]])),
        ("filled square", c(&[&["a", "b", "c"], &["a", "c", "d"]])),
        ("hollow tetrahedron", c(&[&["a", "b", "c"], &["a", "b", "d"], &["a", "c", "d"], &["b", "c", "d"]])),
        ("two points", c(&[&["a"], &["b"]])),
    ]
}
