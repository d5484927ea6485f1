use proptest::prelude::*;
use swapshop::instance::{
    generate_grid, generate_random_euclidean, parse_instance, parse_solution, solution_to_text, Format,
    WeightModel,
};
use swapshop::{Error, Solution};

proptest! {
    #[test]
    fn grid_round_trip(w in 2usize..7, h in 1usize..7, seed in any::<u64>(), p in 1u32..4, f in proptest::option::of(0.5f64..20.0)) {
        let mut inst = generate_grid(w, h, WeightModel::Random { seed }).unwrap().with_p(p).unwrap();
        if let Some(f) = f {
            inst = inst.with_opening_cost(f).unwrap();
        }
        let text = inst.to_text();
        let back = parse_instance(&text, Format::EdgeList).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn points_round_trip(n in 1usize..40, d in 1usize..4, seed in any::<u64>()) {
        let inst = generate_random_euclidean(n, d, seed).unwrap();
        let back = parse_instance(&inst.to_text(), Format::PointsCsv).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn solution_round_trip(mut ids in proptest::collection::vec(0usize..1000, 1..20)) {
        let s = Solution::new(ids.clone()).unwrap();
        let back = parse_solution(&solution_to_text(&s)).unwrap();
        ids.sort_unstable();
        ids.dedup();
        prop_assert_eq!(back.centers(), &ids[..]);
    }
}

#[test]
fn rejects_bad_weights_and_disconnected_graphs() {
    let err = parse_instance("0 1 1\n1 2 -3\n", Format::EdgeList).unwrap_err();
    assert!(matches!(err, Error::NonPositiveWeight { line: 2, .. }), "{err}");
    let err = parse_instance("0 1 1\n2 3 1\n", Format::EdgeList).unwrap_err();
    assert!(matches!(err, Error::Disconnected { .. }), "{err}");
    let err = parse_instance("d=2\n0.0,1.0\n0.5\n", Format::PointsCsv).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { .. }), "{err}");
}

#[test]
fn header_roles_survive() {
    let text = "p=2\nf=4.0\nk=2\nclients=0,1,2\ncandidates=1,3\n0 1 1.0\n1 2 2.0\n2 3 1.5\n";
    let inst = parse_instance(text, Format::EdgeList).unwrap();
    assert_eq!(inst.p(), 2);
    assert_eq!(inst.opening_cost(), Some(4.0));
    assert_eq!(inst.k(), Some(2));
    assert_eq!(inst.clients(), &[0, 1, 2]);
    assert_eq!(inst.candidates(), &[1, 3]);
    assert_eq!(parse_instance(&inst.to_text(), Format::EdgeList).unwrap(), inst);
}
