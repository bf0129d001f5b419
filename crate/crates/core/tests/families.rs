use kft_core::audit::{check_tree_of_cliques_hypotheses, full_audit, recognize_min_1ft};
use kft_core::construct::{star_construction, tree_of_cliques, TemplateEdge, TreeTemplate};
use kft_core::verify::{verify_ft, verify_ft_with, VerifyOptions};
use kft_core::{Exec, FTParams, Graph};
use proptest::prelude::*;

fn template() -> impl Strategy<Value = TreeTemplate> {
    (1usize..=2, 3usize..=4, 1usize..=4).prop_flat_map(|(k, c, p)| {
        let parents: Vec<_> = (1..p).map(|i| (0..i, proptest::sample::subsequence((0..k + c).collect::<Vec<_>>(), k))).collect();
        parents.prop_map(move |choice| {
            let edges = choice
                .into_iter()
                .enumerate()
                .map(|(i, (parent, slots))| TemplateEdge { parent, child: i + 1, slots })
                .collect();
            TreeTemplate::new(p, k, c, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_trees_of_cliques_are_tight(t in template()) {
        let g = tree_of_cliques(t.k, t.c, &t).unwrap();
        let params = FTParams::new(t.k, t.p, t.c).unwrap();
        prop_assert_eq!(g.m() as u64, params.star_edge_count());
        prop_assert!(check_tree_of_cliques_hypotheses(&g, t.k, t.c).unwrap().passed);
        prop_assert!(verify_ft(&g, params).unwrap().holds);
        prop_assert!(full_audit(&g, params).unwrap().passed);
        let back: TreeTemplate = t.to_text().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn sequential_and_parallel_verdicts_match(seed in any::<u64>(), n in 5usize..=9) {
        let mut edges = Vec::new();
        let mut x = seed | 1;
        for u in 0..n {
            for v in u + 1..n {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                if x % 4 != 0 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        for (k, p, c) in [(1, 1, 3), (2, 1, 3), (1, 2, 3)] {
            let params = FTParams::new(k, p, c).unwrap();
            let seq = verify_ft_with(&g, params, &VerifyOptions { exec: Exec::Sequential, retain_witnesses: 3 }).unwrap();
            let par = verify_ft_with(&g, params, &VerifyOptions { exec: Exec::Parallel, retain_witnesses: 3 }).unwrap();
            prop_assert_eq!(seq, par);
        }
    }
}

/// Every graph on 7 vertices with 12 edges: recognition agrees with
/// verification, since a 1-FT(2K_3) graph on 7 vertices has at least 12 edges.
#[test]
fn recognition_matches_verification_on_all_12_edge_graphs() {
    let slots: Vec<(usize, usize)> = (0..7).flat_map(|u| (u + 1..7).map(move |v| (u, v))).collect();
    let params = FTParams::new(1, 2, 3).unwrap();
    let mut recognized = 0;
    for mask in 0u32..(1 << slots.len()) {
        if mask.count_ones() != 12 {
            continue;
        }
        let g = Graph::from_edges(7, slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
        let r = recognize_min_1ft(&g, 2, 3).recognized;
        assert_eq!(r, verify_ft(&g, params).unwrap().holds, "mask {mask:#x}");
        recognized += r as usize;
    }
    // two K_4 sharing a vertex: 7 choices of the shared vertex times C(6,3) / 2 splits
    assert_eq!(recognized, 70);
}

#[test]
fn star_is_the_unique_shape_for_one_part() {
    for (k, c) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
        let t = TreeTemplate::path(1, k, c).unwrap();
        assert_eq!(tree_of_cliques(k, c, &t).unwrap(), star_construction(k, 1, c).unwrap());
        assert_eq!(star_construction(k, 1, c).unwrap(), Graph::complete(k + c));
    }
}
