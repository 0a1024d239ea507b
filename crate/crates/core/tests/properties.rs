mod common;

use std::collections::HashSet;

use common::*;
use dtc_core::invariants::{min_cover, AdmissibleSearch};
use dtc_core::io::{canonical_facets, complex_to_json};
use dtc_core::reduction::contiguity_class;
use dtc_core::*;
use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, ProptestConfig};

fn map_from(dom: &Complex, cod: &Complex, a: &[usize]) -> SimplicialMap {
    SimplicialMap::new(dom.clone(), cod.clone(), a.iter().map(|&v| VertexId::from_index(v)).collect()).unwrap()
}

fn random_map(r: &mut impl Rng, dom: &Complex, cod: &Complex) -> SimplicialMap {
    let all = all_simplicial_maps(&Naive::of(dom), &Naive::of(cod));
    map_from(dom, cod, all.choose(r).expect("constant maps exist"))
}

fn small(r: &mut impl Rng) -> Complex {
    let n = r.gen_range(1..=4);
    let m = r.gen_range(1..=4);
    random_complex(r, n, m, 3)
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn facets_form_an_antichain_and_faces_match_the_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small(&mut r);
        let naive = Naive::of(&k);
        for (i, f) in k.facets().iter().enumerate() {
            for (j, g) in k.facets().iter().enumerate() {
                prop_assert!(i == j || !f.to_vec().iter().all(|v| g.to_vec().contains(v)));
            }
        }
        for s in k.simplices() {
            prop_assert!(k.is_simplex(&s));
            prop_assert!(naive.is_simplex(&s.to_vec()));
        }
        let all: Vec<String> = (0..k.num_vertices()).map(|i| k.labels()[i].clone()).collect();
        let everything = k.simplex_from_labels(&all).unwrap();
        prop_assert_eq!(k.is_simplex(&everything), naive.is_simplex(&everything.to_vec()));
    }

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small(&mut r);
        let text = parse_complex(&serialize_complex(&k)).unwrap();
        let json = parse_complex(&complex_to_json(&k)).unwrap();
        prop_assert_eq!(canonical_facets(&text), canonical_facets(&k));
        prop_assert_eq!(canonical_facets(&json), canonical_facets(&k));
    }

    #[test]
    fn contiguity_is_reflexive_and_symmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l) = (small(&mut r), small(&mut r));
        let f = random_map(&mut r, &k, &l);
        let g = random_map(&mut r, &k, &l);
        prop_assert!(are_contiguous(&f, &f).unwrap());
        prop_assert_eq!(are_contiguous(&f, &g).unwrap(), are_contiguous(&g, &f).unwrap());
        let (nk, nl) = (Naive::of(&k), Naive::of(&l));
        let raw = |m: &SimplicialMap| m.assignment().iter().map(|v| v.index()).collect::<Vec<_>>();
        prop_assert_eq!(are_contiguous(&f, &g).unwrap(), is_contiguous(&nk, &nl, &raw(&f), &raw(&g)));
    }

    #[test]
    fn neighbors_match_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l) = (small(&mut r), small(&mut r));
        let f = random_map(&mut r, &k, &l);
        let (nk, nl) = (Naive::of(&k), Naive::of(&l));
        let fa: Vec<usize> = f.assignment().iter().map(|v| v.index()).collect();
        let expected: HashSet<Vec<usize>> = all_simplicial_maps(&nk, &nl)
            .into_iter()
            .filter(|g| *g != fa && is_contiguous(&nk, &nl, &fa, g))
            .collect();
        let got: HashSet<Vec<usize>> =
            neighbors(&f).map(|g| g.assignment().iter().map(|v| v.index()).collect()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn reduced_search_agrees_with_plain_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l) = (small(&mut r), small(&mut r));
        let f = random_map(&mut r, &k, &l);
        let g = random_map(&mut r, &k, &l);
        let plain = same_contiguity_class(&f, &g, DEFAULT_BUDGET).unwrap();
        let reduced = contiguity_class(&f, &g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(plain.is_yes(), reduced.is_yes());
        prop_assert_eq!(plain.is_no(), reduced.is_no());
        if let Decision::Yes(w) = reduced {
            prop_assert!(w.connects(&f, &g));
        }
    }

    #[test]
    fn witnesses_restrict_to_subcomplexes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l) = (small(&mut r), small(&mut r));
        let f = random_map(&mut r, &k, &l);
        let g = random_map(&mut r, &k, &l);
        if let Decision::Yes(w) = contiguity_class(&f, &g, DEFAULT_BUDGET).unwrap() {
            let sub = random_subcomplex(&mut r, &k, 2);
            let ws = w.restrict(&sub).unwrap();
            prop_assert!(ws.connects(&f.restrict(&sub).unwrap(), &g.restrict(&sub).unwrap()));
        }
    }

    #[test]
    fn constant_maps_share_a_class_on_connected_complexes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let k = random_connected(&mut r, n, 4, 3);
        let a = VertexId::from_index(r.gen_range(0..k.num_vertices()));
        let b = VertexId::from_index(r.gen_range(0..k.num_vertices()));
        let ca = SimplicialMap::constant(&k, &k, a).unwrap();
        let cb = SimplicialMap::constant(&k, &k, b).unwrap();
        let w = contiguity_class(&ca, &cb, DEFAULT_BUDGET).unwrap().yes();
        prop_assert!(w.is_some_and(|w| w.connects(&ca, &cb)));
    }

    #[test]
    fn squaring_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (k, l, m) = (small(&mut r), small(&mut r), small(&mut r));
        let phi = random_map(&mut r, &k, &l);
        let psi = random_map(&mut r, &l, &m);
        let composite = square_map(&compose(&psi, &phi).unwrap());
        prop_assert_eq!(composite, compose(&square_map(&psi), &square_map(&phi)).unwrap());
        let id = SimplicialMap::identity(&k);
        prop_assert_eq!(square_map(&id), SimplicialMap::identity(categorical_square(&k).complex()));
    }

    #[test]
    fn square_has_facet_pairs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = small(&mut r);
        let sq = categorical_square(&k);
        prop_assert_eq!(sq.complex().num_facets(), k.num_facets() * k.num_facets());
        prop_assert_eq!(sq.complex().num_vertices(), k.num_vertices() * k.num_vertices());
    }

    #[test]
    fn core_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let k = random_complex(&mut r, n, 5, 4);
        let seq = core(&k);
        prop_assert!(dominated_vertices(seq.end()).is_empty());
        prop_assert!(core(seq.end()).is_empty());
        prop_assert_eq!(canonical_facets(&seq.replay().unwrap()), canonical_facets(seq.end()));
    }

    #[test]
    fn admissibility_passes_to_subcomplexes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let k = random_complex(&mut r, n, 3, 3);
        let p = categorical_square(&k);
        let omega = random_subcomplex(&mut r, p.complex(), 3);
        if is_farber(&omega, &p, DEFAULT_BUDGET).unwrap().is_yes() {
            let smaller = random_subcomplex(&mut r, &omega, 2);
            prop_assert!(is_farber(&smaller, &p, DEFAULT_BUDGET).unwrap().is_yes());
        }
        let sub = random_subcomplex(&mut r, &k, 3);
        if is_categorical(&sub, &k, DEFAULT_BUDGET).unwrap().is_yes() {
            let smaller = random_subcomplex(&mut r, &sub, 2);
            prop_assert!(is_categorical(&smaller, &k, DEFAULT_BUDGET).unwrap().is_yes());
        }
    }

    #[test]
    fn partition_search_matches_cover_of_maximal_sets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let m = r.gen_range(2..=3);
        let k = random_complex(&mut r, n, m, 3);
        let p = categorical_square(&k);
        for search in [AdmissibleSearch::farber(&p, DEFAULT_BUDGET), AdmissibleSearch::categorical(&k, DEFAULT_BUDGET)] {
            let parts = search.min_partition(false).unwrap();
            let maximal = search.maximal_sets(false).unwrap();
            let universe = BitSet::full(search.ambient().num_facets());
            let cover = min_cover(&universe, &maximal);
            prop_assert_eq!(parts.as_ref().map(Vec::len), cover.as_ref().map(Vec::len));
            for part in parts.iter().flatten() {
                prop_assert!(search.check(part).unwrap().is_yes());
            }
        }
    }
}
