use proptest::prelude::*;

use polyflip::box_polytope::{
    bfs_box_distance, box_flip_neighbors, max_same_sum_partition, partition_from_path, pcfct_solution_from_partition,
    shortest_box_path, BoxInstance,
};
use polyflip::flip::{approx_flip_sequence, diff_count, distance_bounds, exact_distance, SearchOptions};
use polyflip::hypergraph::{
    apply_flip, codegree, flip_status, is_acyclic_orientation, max_codegree, FlipStatus, Hypergraph, Orientation,
};
use polyflip::polymatroid::{
    check_submodular, f_hypergraphic, greedy_vertex, orientation_of_vertex, vertex_of_orientation,
};

/// Hypergraph on `n` vertices with hyperedges of size 2 or 3.
fn hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_n).prop_flat_map(move |n| {
        let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=3);
        proptest::collection::vec(edge, 1..=max_edges)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

/// An acyclic orientation: every hyperedge is headed at its latest vertex
/// in a random linear order.
fn linear_orientation(h: &Hypergraph, rank: &[usize]) -> Orientation {
    let heads = h
        .edges()
        .iter()
        .map(|e| *e.iter().max_by_key(|&&v| rank[v]).unwrap())
        .collect();
    Orientation::new(h, heads).unwrap()
}

fn with_two_orientations(max_n: usize, max_edges: usize) -> impl Strategy<Value = (Hypergraph, Orientation, Orientation)> {
    hypergraph(max_n, max_edges).prop_flat_map(|h| {
        let n = h.n();
        let perm = || Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (Just(h), perm(), perm()).prop_map(|(h, r1, r2)| {
            let a = linear_orientation(&h, &r1);
            let b = linear_orientation(&h, &r2);
            (h, a, b)
        })
    })
}

fn any_orientation(max_n: usize, max_edges: usize) -> impl Strategy<Value = (Hypergraph, Orientation)> {
    hypergraph(max_n, max_edges).prop_flat_map(|h| {
        let picks: Vec<_> = h.edges().iter().map(|e| proptest::sample::select(e.clone())).collect();
        (Just(h), picks).prop_map(|(h, heads)| {
            let o = Orientation::new(&h, heads).unwrap();
            (h, o)
        })
    })
}

fn box_instance() -> impl Strategy<Value = BoxInstance> {
    (1usize..=8)
        .prop_flat_map(|n| (proptest::collection::vec(0i64..=6, n), proptest::collection::vec(0i64..=6, n)))
        .prop_filter_map("sums must match", |(a, mut b)| {
            // shift mass in b until the totals agree
            let mut gap = a.iter().sum::<i64>() - b.iter().sum::<i64>();
            for v in b.iter_mut() {
                let change = gap.clamp(-*v, 6 - *v);
                *v += change;
                gap -= change;
            }
            (gap == 0).then(|| BoxInstance::new(a, b).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flips_are_involutive_exclusive_and_local((h, o, _b) in with_two_orientations(6, 6), u in 0usize..6, v in 0usize..6) {
        prop_assume!(u < h.n() && v < h.n() && u != v);
        let flipped = apply_flip(&h, &o, u, v).unwrap();
        prop_assert!(flipped.validate(&h).is_ok());
        if flipped != o {
            prop_assert_eq!(&apply_flip(&h, &flipped, v, u).unwrap(), &o);
            prop_assert_eq!(&apply_flip(&h, &o, v, u).unwrap(), &o);
            let changed: Vec<usize> = (0..h.num_edges()).filter(|&i| flipped.head(i) != o.head(i)).collect();
            for &i in &changed {
                prop_assert!(h.edge_contains(i, u) && h.edge_contains(i, v));
            }
            prop_assert!(changed.len() <= codegree(&h, u, v).unwrap());
            prop_assert!(changed.len() <= max_codegree(&h));
        }
    }

    #[test]
    fn flips_keep_heads_inside_edges((h, o) in any_orientation(6, 6), u in 0usize..6, v in 0usize..6) {
        prop_assume!(u < h.n() && v < h.n() && u != v);
        prop_assert!(apply_flip(&h, &o, u, v).unwrap().validate(&h).is_ok());
    }

    #[test]
    fn flippable_means_acyclic_result((h, a, _b) in with_two_orientations(6, 6), u in 0usize..6, v in 0usize..6) {
        prop_assume!(u < h.n() && v < h.n() && u != v);
        let status = flip_status(&h, &a, u, v).unwrap();
        let flipped = apply_flip(&h, &a, u, v).unwrap();
        match status {
            FlipStatus::Flippable => prop_assert!(is_acyclic_orientation(&h, &flipped).unwrap()),
            FlipStatus::NotFlippable => prop_assert!(!is_acyclic_orientation(&h, &flipped).unwrap()),
            FlipStatus::Vacuous => prop_assert_eq!(flipped, a),
        }
    }

    #[test]
    fn approximation_is_sound_and_sandwiched((h, a, b) in with_two_orientations(6, 6)) {
        let seq = approx_flip_sequence(&h, &a, &b).unwrap();
        let visited = seq.replay(&h).unwrap();
        for w in visited.windows(2) {
            prop_assert!(diff_count(&h, &w[1], &b).unwrap() < diff_count(&h, &w[0], &b).unwrap());
        }
        let exact = exact_distance(&h, &a, &b, &SearchOptions::default()).unwrap();
        exact.sequence.replay(&h).unwrap();
        let (lower, diff) = distance_bounds(&h, &a, &b).unwrap();
        prop_assert!(lower <= exact.length);
        prop_assert!(exact.length <= seq.len());
        prop_assert!(seq.len() <= diff);
        prop_assert!(seq.len() <= max_codegree(&h).max(1) * exact.length);
    }

    #[test]
    fn hypergraphic_vertices_round_trip((h, a, _b) in with_two_orientations(7, 7)) {
        let x = vertex_of_orientation(&h, &a).unwrap();
        prop_assert_eq!(x.coords().iter().sum::<i64>(), h.num_edges() as i64);
        prop_assert_eq!(orientation_of_vertex(&h, &x).unwrap(), a);
    }

    #[test]
    fn greedy_vertices_lie_in_the_polytope((h, order) in hypergraph(6, 6).prop_flat_map(|h| {
        let order = Just((0..h.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(h), order)
    })) {
        let f = f_hypergraphic(&h).unwrap();
        prop_assert!(check_submodular(&f).unwrap().is_submodular());
        let x = greedy_vertex(&f, &order).unwrap();
        prop_assert_eq!(x.coords().iter().sum::<i64>(), f.ground_value());
        prop_assert!(x.lies_in_base_polytope(&f).unwrap());
    }

    #[test]
    fn box_paths_are_optimal(inst in box_instance()) {
        let path = shortest_box_path(&inst).unwrap();
        path.validate(&inst).unwrap();
        prop_assert_eq!(path.len(), bfs_box_distance(&inst, 1 << 22).unwrap());

        let p = inst.pcfct();
        let part = max_same_sum_partition(&p).unwrap();
        prop_assert_eq!(path.len(), p.size() - part.size());
        let sol = pcfct_solution_from_partition(&p, &part).unwrap();
        prop_assert_eq!(sol.nonzeros, p.size() - part.size());
        for (i, row) in sol.flows.iter().enumerate() {
            prop_assert_eq!(row.iter().sum::<i64>(), p.supplies[i]);
        }
        for (j, &t) in p.demands.iter().enumerate() {
            prop_assert_eq!(sol.flows.iter().map(|r| r[j]).sum::<i64>(), t);
        }
        prop_assert_eq!(partition_from_path(&inst, &path).unwrap().size(), part.size());
    }

    #[test]
    fn box_edges_are_parallel_to_root_directions(inst in box_instance()) {
        for (flip, y) in box_flip_neighbors(&inst, inst.a()).unwrap() {
            prop_assert!(flip.delta > 0);
            prop_assert!(inst.is_vertex(&y));
            for (k, (&before, &after)) in inst.a().iter().zip(&y).enumerate() {
                let expected = if k == flip.from { -flip.delta } else if k == flip.to { flip.delta } else { 0 };
                prop_assert_eq!(after - before, expected);
            }
        }
    }
}
