mod common;

use std::collections::{BTreeSet, HashMap};

use girthforge::constructions::{blow_up, classify_edges, ers_bound, verify_lemma8};
use girthforge::edgelist::{format_bipartite, format_edgelist, parse_blocks, parse_edgelist, ParsedGraph};
use girthforge::extraction::{
    alter, codegree_reduce, run_pipeline, sparsify_bounded_degree, validate_outcome, CodegreeSplit, ExtractionOutcome,
    Mode, SamplerConfig,
};
use girthforge::graph::{bipartize, count_c4, degeneracy, enumerate_c4, girth, is_c4_free, min_degree_peel, C4};
use girthforge::oracle::{best_c4free_avg_degree, shortest_cycle_reference, OracleBudget};
use girthforge::rational::{fmt_rational, int, parse_rational, rat};
use girthforge::{BipartiteGraph, Graph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut bits = mask.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if bits.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn sparse_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let edges: BTreeSet<_> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            let edges: Vec<_> = edges.into_iter().take(max_m).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn bipartite(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_side, 1..=max_side, any::<u64>(), 0.1f64..0.95)
        .prop_map(|(a, b, seed, p)| common::random_bipartite(&mut ChaCha8Rng::seed_from_u64(seed), a, b, p))
}

fn brute_c4(g: &Graph) -> BTreeSet<C4> {
    let n = g.n();
    let mut found = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for cyc in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if (0..4).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % 4])) {
                            found.insert(C4::canonical(cyc));
                        }
                    }
                }
            }
        }
    }
    found
}

fn assert_ceiling(g: &Graph) {
    assert!(is_c4_free(g));
    assert!(ers_bound(g.n() as u64).admits(g.m() as u64), "{} edges on {} vertices", g.m(), g.n());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bipartize_keeps_half_the_edges(g in graph(14)) {
        let bg = bipartize(&g);
        let h = bg.graph();
        prop_assert_eq!(h.n(), g.n());
        prop_assert!(2 * h.m() >= g.m());
        for (u, v) in h.edges() {
            prop_assert!(g.has_edge(u, v));
            prop_assert_ne!(bg.in_a(u), bg.in_a(v));
        }
        for v in 0..g.n() {
            prop_assert!(2 * h.degree(v) >= g.degree(v));
        }
    }

    #[test]
    fn c4_enumeration_matches_brute_force(g in graph(12)) {
        let fast: Vec<C4> = enumerate_c4(&g);
        let slow = brute_c4(&g);
        prop_assert_eq!(fast.len(), slow.len());
        prop_assert_eq!(fast.iter().copied().collect::<BTreeSet<_>>(), slow);
        prop_assert_eq!(count_c4(&g), fast.len() as u64);
        prop_assert_eq!(is_c4_free(&g), fast.is_empty());
        prop_assert!(fast.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn girth_agrees_with_reference(g in graph(10)) {
        prop_assert_eq!(girth(&g), shortest_cycle_reference(&g));
    }

    #[test]
    fn peel_leaves_the_threshold_core(g in graph(14), num in 0i128..12, den in 1i128..4) {
        let threshold = rat(num, den);
        let core = min_degree_peel(&g, &threshold);
        for v in 0..core.n() {
            prop_assert!(int(core.degree(v) as i128) >= threshold);
        }
        for (u, v) in core.origin_edges() {
            prop_assert!(g.has_edge(u, v));
        }
        // the core is an induced subgraph of the input
        let kept: BTreeSet<_> = core.origin().iter().copied().collect();
        let induced = g.induced(&kept.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(induced.m(), core.m());
    }

    #[test]
    fn degeneracy_order_certifies_value(g in graph(14)) {
        let (k, order) = degeneracy(&g);
        let pos: HashMap<_, _> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        prop_assert_eq!(pos.len(), g.n());
        let later = |v: usize| g.neighbors(v).iter().filter(|w| pos[w] > pos[&v]).count();
        prop_assert!((0..g.n()).all(|v| later(v) <= k));
        if g.m() > 0 {
            // the k-core is non-empty
            prop_assert!(min_degree_peel(&g, &int(k as i128)).n() > 0);
        }
    }

    #[test]
    fn edgelist_round_trip(g in graph(14)) {
        let text = format_edgelist(&g, None, &["round trip"]);
        prop_assert_eq!(parse_edgelist(&text).unwrap(), ParsedGraph::Plain(g.clone()));
        let bg = bipartize(&g);
        let text = format_bipartite(&bg, &[]);
        prop_assert_eq!(parse_edgelist(&text).unwrap(), ParsedGraph::Bipartite(bg));
    }

    #[test]
    fn parser_never_panics(text in "[0-9A: #\n-]{0,80}") {
        let _ = parse_edgelist(&text);
        let _ = parse_blocks(&text);
    }

    #[test]
    fn parser_never_panics_on_arbitrary_text(text in "\\PC{0,120}") {
        let _ = parse_edgelist(&text);
    }

    #[test]
    fn rational_strings_round_trip(p in -10_000i128..10_000, q in 1i128..10_000) {
        let r = rat(p, q);
        let s = fmt_rational(&r);
        prop_assert!(s.contains('/') && !s.contains('.'));
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }

    #[test]
    fn codegree_reduction_contract(bg in bipartite(16), lambda in 1i128..5) {
        let lambda = int(lambda);
        let d = bg.average_degree();
        match codegree_reduce(&bg, &lambda).unwrap() {
            CodegreeSplit::Witness(w) => {
                prop_assert!(w.density >= lambda);
                prop_assert!(validate_outcome(bg.graph(), &ExtractionOutcome::Witness(w)).is_ok());
            }
            CodegreeSplit::Spanning(s) => {
                prop_assert!(s.subgraph.average_degree() >= d / (lambda + int(1)));
                prop_assert!(int(s.subgraph.max_b_codegree() as i128) <= lambda);
                prop_assert!(s.subgraph.graph().edges().all(|(u, v)| bg.graph().has_edge(u, v)));
                for &(v, deg) in &s.history {
                    prop_assert_eq!(s.subgraph.graph().degree(v), deg);
                }
            }
        }
    }

    #[test]
    fn alteration_is_c4_free_and_frugal(g in graph(12)) {
        let h = alter(&g);
        assert_ceiling(&h);
        prop_assert!(h.edges().all(|(u, v)| g.has_edge(u, v)));
        // at most one edge is removed per 4-cycle of the input
        prop_assert!(g.m() - h.m() <= enumerate_c4(&g).len());
    }

    #[test]
    fn blow_up_counts(bg in bipartite(10), d in 1usize..=3) {
        let pb = blow_up(&bg, d);
        prop_assert_eq!(pb.n(), d * d * bg.graph().n());
        prop_assert_eq!(pb.bg.graph().m(), d.pow(4) * bg.graph().m());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extractors_never_beat_the_oracle(g in sparse_graph(9, 14), seed in any::<u64>()) {
        let (best, _) = best_c4free_avg_degree(&g, &OracleBudget::default()).unwrap();
        let cfg = SamplerConfig::new(seed).with_retries(4);
        let mut outs = vec![alter(&g).without_isolated(), sparsify_bounded_degree(&g, &cfg).subgraph];
        for mode in [Mode::Single, Mode::Double] {
            let (o, trace) = run_pipeline(&g, 2, mode, &cfg).unwrap();
            prop_assert!(validate_outcome(&g, &o).is_ok());
            if let Some(h) = &trace.harvest {
                prop_assert!(h.edges.iter().all(|&(x, y)| g.has_edge(x, y)));
            }
            outs.push(o.c4free().unwrap().subgraph.clone());
        }
        for h in &outs {
            assert_ceiling(h);
            prop_assert!(h.average_degree() <= best, "{} > oracle {}", h.average_degree(), best);
        }
    }

    #[test]
    fn pipeline_is_deterministic(bg in bipartite(14), seed in any::<u64>(), t in 2u64..4) {
        let cfg = SamplerConfig::new(seed).with_retries(3);
        let first = run_pipeline(bg.graph(), t, Mode::Single, &cfg).unwrap();
        let second = run_pipeline(bg.graph(), t, Mode::Single, &cfg).unwrap();
        prop_assert_eq!(&first, &second);
        prop_assert!(validate_outcome(bg.graph(), &first.0).is_ok());
        assert_ceiling(&first.0.c4free().unwrap().subgraph);
    }

    #[test]
    fn blow_up_subgraphs_respect_ceilings(host in bipartite(6), seed in any::<u64>()) {
        let pb = blow_up(&host, 2);
        let r = sparsify_bounded_degree(pb.bg.graph(), &SamplerConfig::new(seed).with_retries(2));
        let sub = Graph::from_edges(pb.n(), &r.subgraph.origin_edges()).unwrap();
        let report = verify_lemma8(&pb, &sub, 2).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        // a class-A vertex has at most one G2-neighbour in any opposite block
        let split = classify_edges(&pb, &sub, 2).unwrap();
        for a in pb.bg.class_a() {
            let mut per_block: HashMap<usize, usize> = HashMap::new();
            for &b in split.g2.neighbors(a) {
                *per_block.entry(pb.block_of[b]).or_default() += 1;
            }
            prop_assert!(per_block.values().all(|&c| c <= 1));
        }
    }
}
