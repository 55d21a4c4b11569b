mod common;

use common::{random_duals, tiny_instance};
use mrp_core::oracle::{enumerate_routes, oracle_reduced_cost, EnumerationCaps};
use mrp_core::timegraph::build_augmented;
use mrp_core::{make_column, route_cost};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn columns_and_path_weights_agree(seed in any::<u64>()) {
        let inst = tiny_instance(seed);
        let duals = random_duals(&inst, seed);
        let graph = build_augmented(&inst, &duals);
        let cols = enumerate_routes(&inst, EnumerationCaps::exhaustive(&inst)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for col in cols.choose_multiple(&mut rng, 100) {
            let route = &col.route;
            let again = make_column(route, &inst).unwrap();
            prop_assert!(&again == col);

            let rewards: f64 = route.pickups.iter().map(|p| inst.items[p.item].reward_cost).sum();
            let cost = rewards + inst.theta1 * again.positions.len() as f64 + inst.theta2 * again.edges.len() as f64;
            prop_assert_eq!(route_cost(route, &inst).unwrap(), cost);
            prop_assert_eq!(again.positions.len() as u32, route.end_time() - route.start_time + 1);
            prop_assert!(again.edges.len() < again.positions.len());

            let seq = graph.encode_route(route).unwrap();
            let weight = graph.path_weight(&seq).unwrap();
            prop_assert!((weight - oracle_reduced_cost(&duals, col)).abs() < 1e-9);
        }
    }
}
