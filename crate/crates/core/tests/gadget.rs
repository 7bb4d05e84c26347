use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twovc::gadget::{degree2_to_k4, lift_and_project, lift_solution};
use twovc::generate::{generate_instance, named, random_sparse_with_degree2, InstanceKind, LiftBase};
use twovc::oracle::opt_2vcss_bruteforce;
use twovc::{Error, Graph};

fn optimum_pair(g: &Graph) -> (usize, usize, usize) {
    let (lifted, map) = degree2_to_k4(g).unwrap();
    let opt = opt_2vcss_bruteforce(g, 20).unwrap();
    let opt_lifted = opt_2vcss_bruteforce(&lifted, 40).unwrap();

    let up = lift_solution(g, &lifted, &map, &opt.witness);
    assert_eq!(up.len(), opt.size + 3 * map.len());
    assert!(lifted.spanning_subgraph(&up).is_two_vertex_connected());

    let (down, consistent) = lift_and_project(g, &lifted, &map, &opt_lifted.witness).unwrap();
    assert!(consistent);
    assert!(down.len() + 3 * map.len() <= opt_lifted.size);
    (opt.size, opt_lifted.size, map.len())
}

#[test]
fn cycle_lifts() {
    let (lifted, map) = degree2_to_k4(&named::cycle(3)).unwrap();
    assert_eq!((lifted.n(), lifted.m(), map.len()), (12, 21, 3));
    assert_eq!(optimum_pair(&named::cycle(3)), (3, 12, 3));
    assert_eq!(optimum_pair(&named::cycle(4)), (4, 16, 4));
}

#[test]
fn lifted_optimum_adds_three_per_gadget() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 12 {
        let Ok(g) = random_sparse_with_degree2(5, 6 + checked % 3, &mut rng) else { continue };
        let (opt, opt_lifted, k) = optimum_pair(&g);
        assert_eq!(opt_lifted, opt + 3 * k, "{:?}", g.edges());
        checked += 1;
    }
}

#[test]
fn generator_delegates_to_the_lift() {
    let via_generator = generate_instance(&InstanceKind::GadgetLift(LiftBase::Cycle(4)), 0).unwrap();
    assert_eq!(via_generator, degree2_to_k4(&named::cycle(4)).unwrap().0);
}

#[test]
fn identity_without_degree_two() {
    let g = named::complete_bipartite(3, 3);
    let (lifted, map) = degree2_to_k4(&g).unwrap();
    assert!(map.is_empty());
    let all: Vec<usize> = (0..g.m()).collect();
    let (h, ok) = lift_and_project(&g, &lifted, &map, &all).unwrap();
    assert!(ok);
    assert_eq!(h, all);
}

#[test]
fn rejects_bad_inputs() {
    let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert!(matches!(degree2_to_k4(&path), Err(Error::NotTwoConnected)));
    let (lifted, map) = degree2_to_k4(&named::cycle(4)).unwrap();
    let err = lift_and_project(&named::cycle(5), &lifted, &map, &[]).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
}
