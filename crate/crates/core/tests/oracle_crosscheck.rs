mod common;

use common::{corridor, tiny_instance};
use mrp_core::oracle::{enumerate_routes, full_lp, solve_exact, solve_exact_over, validate_solution, EnumerationCaps};
use mrp_core::{solve, solve_no_collision, SolverConfig};

#[test]
fn engine_bounds_sandwich_the_exact_optimum() {
    let cfg = SolverConfig::default();
    let mut tight = 0;
    let n = 50;
    for seed in 0..n {
        let inst = tiny_instance(seed);
        let cols = enumerate_routes(&inst, EnumerationCaps::exhaustive(&inst)).unwrap();
        let lp = full_lp(&inst, &cols, true).unwrap();
        let opt = solve_exact_over(&inst, &cols, true).unwrap();
        let sol = solve(&inst, &cfg).unwrap();
        assert!((sol.lp_bound - lp).abs() < 1e-6, "seed {seed}: engine lp {} oracle lp {lp}", sol.lp_bound);
        assert!(sol.lp_bound <= opt.objective + 1e-6, "seed {seed}");
        assert!(opt.objective <= sol.ilp_objective + 1e-6, "seed {seed}");
        assert!(validate_solution(&inst, &sol.routes).is_valid(), "seed {seed}");
        if (sol.ilp_objective - opt.objective).abs() < 1e-6 {
            tight += 1;
        }
    }
    assert!(tight * 10 >= n * 8, "upper bound matched the optimum in {tight} of {n}");
}

#[test]
fn empty_instance_has_zero_optimum() {
    let mut inst = tiny_instance(3);
    inst.items.clear();
    inst.extant_robots.clear();
    assert_eq!(solve_exact(&inst).unwrap().objective, 0.0);
}

#[test]
fn single_item_optimum_is_the_best_round_trip() {
    let mut inst = corridor();
    inst.items.truncate(1);
    inst.fleet_size = 1;
    let cols = enumerate_routes(&inst, EnumerationCaps::exhaustive(&inst)).unwrap();
    let best = cols.iter().filter(|c| c.items == [0]).map(|c| c.cost).fold(f64::INFINITY, f64::min);
    // out three cells and back: seven positions, six moves
    assert_eq!(best, -50.0 + 7.0 + 6.0);
    assert_eq!(solve_exact(&inst).unwrap().objective, best);
}

#[test]
fn corridor_collisions_cost_something() {
    let inst = corridor();
    let cols = enumerate_routes(&inst, EnumerationCaps::exhaustive(&inst)).unwrap();
    let with = solve_exact_over(&inst, &cols, true).unwrap();
    let without = solve_exact_over(&inst, &cols, false).unwrap();
    assert_eq!(without.objective, -78.0);
    assert_eq!(with.objective, -41.0);

    let cfg = SolverConfig::default();
    let loose = solve_no_collision(&inst, &cfg).unwrap();
    assert!(!loose.conflicts.is_empty());
    let full = solve(&inst, &cfg).unwrap();
    assert!(full.conflicts.is_empty());
    assert!(validate_solution(&inst, &full.routes).is_valid());
    assert!(loose.lp_bound <= full.lp_bound + 1e-6);
}
