mod common;

use common::{chromatic_number_dp, normal_oracle, proper, random_parent_array, saturated_oracle, tree_secant_oracle};
use dicolor::harness::{gen_star_tree_instance, gen_tree, seeded, TreeShape};
use dicolor::star::{
    check_flattening, color_normal_nosecant_general, color_star0, color_star1_with, color_whip, flatten_to_star_like,
    four_color, GeneralOutcome, Star1Mode,
};
use dicolor::tree::{classify_star, saturate, RootedTree};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = TreeShape> {
    prop_oneof![
        Just(TreeShape::Random),
        Just(TreeShape::Path),
        Just(TreeShape::Whip),
        Just(TreeShape::Star(0)),
        Just(TreeShape::Star(1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn saturation_matches_the_oracle(n in 1usize..11, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let parent = random_parent_array(n, &mut rng);
        let t = RootedTree::new(0, parent.clone()).unwrap();
        let g = saturate(&t.as_graph(), &t).unwrap();
        prop_assert!(saturated_oracle(&g, &parent));
    }

    #[test]
    fn four_color_is_proper_and_tight(sh in shape(), n in 4usize..13, seed in any::<u64>()) {
        let (g, t) = gen_star_tree_instance(sh, n, &mut seeded(seed)).unwrap();
        prop_assume!(g.n() <= 16);
        let (c, _) = four_color(&g, &t).unwrap();
        prop_assert!(proper(&g, c.colors()));
        prop_assert!(c.palette() <= 4);
        prop_assert!(chromatic_number_dp(&g) <= c.colors_used());
    }

    #[test]
    fn flattening_keeps_the_instance_induced(sh in shape(), n in 4usize..12, seed in any::<u64>()) {
        let (g, t) = gen_star_tree_instance(sh, n, &mut seeded(seed)).unwrap();
        let f = flatten_to_star_like(&g, &t).unwrap();
        prop_assert!(check_flattening(&g, &t, &f).is_ok());
        prop_assert_eq!(classify_star(&f.tree).index(), Some(f.index));
        prop_assert!(normal_oracle(&f.graph, f.tree.parents()));
        prop_assert!(!tree_secant_oracle(&f.graph, f.tree.parents()));
        let old: Vec<usize> = (0..g.n()).collect();
        for &u in &old {
            for &v in &old {
                prop_assert_eq!(g.has_edge(u, v), f.graph.has_edge(f.correspondence[u], f.correspondence[v]));
            }
        }
        for v in 0..g.n() {
            for a in t.ancestors(v) {
                prop_assert!(f.tree.is_ancestor(f.correspondence[a], f.correspondence[v]));
            }
        }
    }
}

#[test]
fn dedicated_colorers_match_the_oracle() {
    let mut rng = seeded(41);
    for trial in 0..150 {
        let n = 5 + trial % 9;
        for (shape, which) in [(TreeShape::Whip, 0), (TreeShape::Star(0), 1), (TreeShape::Star(1), 2), (TreeShape::Star(1), 3)] {
            let (g, t) = gen_star_tree_instance(shape, n, &mut rng).unwrap();
            let c = match which {
                0 => color_whip(&g, &t).unwrap(),
                1 => color_star0(&g, &t).unwrap(),
                2 => color_star1_with(&g, &t, Star1Mode::Search).unwrap().0,
                _ => color_star1_with(&g, &t, Star1Mode::Strict).unwrap().0,
            };
            assert!(proper(&g, c.colors()), "trial {trial} shape {shape}");
            assert!(c.palette() <= 4, "trial {trial} shape {shape}");
        }
    }
}

#[test]
fn colorers_reject_unsaturated_or_wrong_shapes() {
    let mut rng = seeded(42);
    let t = gen_tree(TreeShape::Star(1), 10, &mut rng).unwrap();
    assert!(color_star0(&t.as_graph(), &t).is_err());
    let (g, t) = gen_star_tree_instance(TreeShape::Star(1), 10, &mut rng).unwrap();
    assert!(color_whip(&g, &t).is_err());
    assert!(color_star0(&g, &t).is_err());
}

#[test]
fn general_search_colors_random_trees() {
    let mut rng = seeded(43);
    for n in 4..14 {
        let (g, t) = gen_star_tree_instance(TreeShape::Random, n, &mut rng).unwrap();
        match color_normal_nosecant_general(&g, &t).unwrap() {
            GeneralOutcome::Colored { coloring, .. } => {
                assert!(proper(&g, coloring.colors()));
                assert!(coloring.palette() <= 4);
            }
            GeneralOutcome::Counterexample(r) => panic!("unexpected counterexample: {}", r.verdict),
        }
    }
}
