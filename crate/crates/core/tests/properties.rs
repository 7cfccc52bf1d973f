use proptest::prelude::*;
use sumfree::bits::{self, bit};
use sumfree::enumerate::SchurSystem;
use sumfree::graph::{are_isomorphic, check_isomorphism_map, Graph};
use sumfree::linkgraph::{link_family, link_graph_int};
use sumfree::miscount::{count_mis, enumerate_mis, strip_loops};
use sumfree::setcore::{
    addable_elements, is_maximal_sum_free, is_sum_free, schur_triple_count, sumset, GroundSet,
    IntSubset,
};

fn subset(n: u32) -> impl Strategy<Value = IntSubset> {
    prop::collection::vec(any::<bool>(), n as usize).prop_map(move |bits| {
        let g = GroundSet::new(n).unwrap();
        IntSubset::from_elems(g, (1..=n).filter(|&x| bits[x as usize - 1])).unwrap()
    })
}

fn sized_subset(max_n: u32) -> impl Strategy<Value = IntSubset> {
    (1..=max_n).prop_flat_map(subset)
}

/// Greedily thins `s` to a sum-free subset.
fn sum_free_part(s: &IntSubset) -> IntSubset {
    let mut out = IntSubset::empty(s.ground());
    for x in s.iter() {
        let with = out.with(x).unwrap();
        if is_sum_free(&with) {
            out = with;
        }
    }
    out
}

fn graph(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(prop::bool::weighted(0.3), n * (n - 1) / 2),
            prop::collection::vec(prop::bool::weighted(if loops { 0.2 } else { 0.0 }), n),
        )
            .prop_map(move |(edges, looped)| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for u in 0..n {
                    if looped[u] {
                        g.add_edge(u, u).unwrap();
                    }
                    for v in u + 1..n {
                        if edges[k] {
                            g.add_edge(u, v).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn maximal_implies_sum_free(s in sized_subset(30)) {
        if is_maximal_sum_free(&s) {
            prop_assert!(is_sum_free(&s));
        }
    }

    #[test]
    fn addable_elements_keep_sum_free(s in sized_subset(40)) {
        let s = sum_free_part(&s);
        for x in addable_elements(&s).unwrap().iter() {
            prop_assert!(is_sum_free(&s.with(x).unwrap()));
        }
        // maximal exactly when nothing is addable
        prop_assert_eq!(is_maximal_sum_free(&s), addable_elements(&s).unwrap().is_empty());
    }

    #[test]
    fn triple_count_zero_iff_sum_free(s in sized_subset(40)) {
        prop_assert_eq!(schur_triple_count(&s) == 0, is_sum_free(&s));
    }

    #[test]
    fn sumset_commutes(n in 1u32..40, a in any::<u64>(), b in any::<u64>()) {
        let g = GroundSet::new(n).unwrap();
        let a = IntSubset::from_mask(g, ((a as u128) << 1) & g.full_mask()).unwrap();
        let b = IntSubset::from_mask(g, ((b as u128) << 1) & g.full_mask()).unwrap();
        prop_assert_eq!(sumset(&a, &b), sumset(&b, &a));
    }

    #[test]
    fn engine_agrees_on_membership(s in sized_subset(24)) {
        let sys = SchurSystem::integers(s.n()).unwrap();
        prop_assert_eq!(sys.is_sum_free(s.mask()), is_sum_free(&s));
        prop_assert_eq!(sys.is_maximal(s.mask()), is_maximal_sum_free(&s));
    }

    #[test]
    fn product_sizes_and_degrees(g in graph(6, false), h in graph(6, false)) {
        let p = g.cartesian_product(&h).unwrap();
        prop_assert_eq!(p.n(), g.n() * h.n());
        for u in 0..g.n() {
            for v in 0..h.n() {
                prop_assert_eq!(p.degree(u * h.n() + v), g.degree(u) + h.degree(v));
            }
        }
    }

    #[test]
    fn loops_count_two_in_degrees(g in graph(20, true)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.degree_stats().edges);
    }

    #[test]
    fn explicit_map_implies_isomorphic(g in graph(10, true), seed in any::<u64>()) {
        // a pseudo-random relabelling
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let mut h = Graph::empty(n).unwrap();
        for u in 0..n {
            if g.has_loop(u) {
                h.add_edge(perm[u], perm[u]).unwrap();
            }
            for v in bits::ones(g.neighbors(u)).filter(|&v| v > u) {
                h.add_edge(perm[u], perm[v]).unwrap();
            }
        }
        prop_assert!(check_isomorphism_map(&g, &h, &perm).unwrap());
        prop_assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn mis_ignores_loop_vertices(g in graph(24, true)) {
        prop_assert_eq!(count_mis(&g).unwrap(), count_mis(&strip_loops(&g)).unwrap());
    }

    #[test]
    fn mis_count_matches_enumeration(g in graph(18, true)) {
        prop_assert_eq!(count_mis(&g).unwrap(), enumerate_mis(&g).unwrap().len() as u128);
    }

    #[test]
    fn mis_multiplies_over_components(g in graph(12, true), h in graph(12, true)) {
        let u = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(count_mis(&u).unwrap(), count_mis(&g).unwrap() * count_mis(&h).unwrap());
    }

    #[test]
    fn adding_loops_never_increases_mis(g in graph(24, false), loops in any::<u32>()) {
        let mut h = g.clone();
        for v in 0..g.n() {
            if loops & (1 << (v % 32)) != 0 {
                h.add_edge(v, v).unwrap();
            }
        }
        prop_assert!(count_mis(&h).unwrap() <= count_mis(&g).unwrap());
    }

    #[test]
    fn link_free_for_separated_sets(n in 4u32..60, split in 0.1f64..0.9, a in any::<u64>(), b in any::<u64>()) {
        let ground = GroundSet::new(n).unwrap();
        let cut = ((n as f64 * split) as u32).max(1);
        let s_raw = IntSubset::from_mask(ground, ((a as u128) << 1) & sumfree::bits::range_mask(1, cut as usize)).unwrap();
        let s = sum_free_part(&s_raw);
        let top = IntSubset::max(&s).unwrap_or(0) as usize;
        let b = IntSubset::from_mask(ground, ((b as u128) << 1) & sumfree::bits::range_mask(top + 1, n as usize)).unwrap();
        prop_assert!(link_graph_int(&s, &b).unwrap().is_triangle_free());
    }

    #[test]
    fn link_family_loops_on_sums(n in 8u32..64, m_frac in 0.0f64..1.0, a in any::<u64>()) {
        let ground = GroundSet::new(n).unwrap();
        let half = n / 2;
        let m = 1 + ((half - 1) as f64 * m_frac) as u32;
        let s = IntSubset::from_mask(ground, ((a as u128) << 1) & sumfree::bits::range_mask(1, half as usize)).unwrap();
        let g = link_family(n, m, &s).unwrap();
        let with_m = s.mask() | bit(m as usize);
        for x in s.iter() {
            for y in s.iter().chain([m]) {
                let z = (x + y) as i64;
                if z > half as i64 && z <= n as i64 {
                    let v = g.vertex_of(z).unwrap();
                    prop_assert!(g.has_loop(v), "no loop at {} for S ∪ {{m}} = {:?}", z, bits::ones(with_m).collect::<Vec<_>>());
                }
            }
        }
    }
}
