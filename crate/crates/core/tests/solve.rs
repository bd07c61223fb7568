use mcs_core::graph::{erdos_renyi, permuted_copy};
use mcs_core::oracle::{mcs_brute_force, verify_common_subgraph, OracleBudget};
use mcs_core::{solve_mcs, Graph, Method, SolveConfig};

#[test]
fn every_method_returns_a_valid_common_subgraph_no_larger_than_optimal() {
    for seed in 0..40u64 {
        let n1 = 2 + seed as usize % 4;
        let n2 = 2 + (seed as usize / 4) % 4;
        let p = [0.2, 0.5, 0.8][seed as usize % 3];
        let g1 = erdos_renyi(n1, p, seed).unwrap();
        let g2 = erdos_renyi(n2, p, 500 + seed).unwrap();
        let best = mcs_brute_force(&g1, &g2, OracleBudget::default()).unwrap().len();
        for method in Method::ALL {
            let r = solve_mcs(&g1, &g2, &SolveConfig::new(method, seed)).unwrap();
            assert!(verify_common_subgraph(&g1, &g2, &r.mapping));
            assert_eq!(r.size, r.mapping.len());
            assert!(r.size >= 1 && r.size <= best, "{method} seed {seed}: {} vs {best}", r.size);
        }
    }
}

#[test]
fn kernel_methods_report_kernel_statistics() {
    let g1 = erdos_renyi(8, 0.3, 1).unwrap();
    let g2 = erdos_renyi(8, 0.3, 2).unwrap();
    for method in [Method::KernelAih, Method::KernelRd] {
        let r = solve_mcs(&g1, &g2, &SolveConfig::new(method, 5)).unwrap();
        assert!(r.stats.kernel_size.unwrap() <= 64);
        assert!(r.stats.forced.is_some());
    }
    let r = solve_mcs(&g1, &g2, &SolveConfig::new(Method::Aih, 5)).unwrap();
    assert_eq!(r.stats.kernel_size, None);
    assert_eq!(r.stats.association_order, 64);
}

#[test]
fn sparse_isomorphic_copies_are_matched_in_full() {
    // a perfect matching has an association graph the linear-time rules
    // dissolve entirely
    let g = Graph::new(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
    let (h, _) = permuted_copy(&g, 3);
    for method in Method::ALL {
        let r = solve_mcs(&g, &h, &SolveConfig::new(method, 0)).unwrap();
        assert!(verify_common_subgraph(&g, &h, &r.mapping));
        assert!(r.size >= 4, "{method}: {}", r.size);
    }
}

#[test]
fn same_seed_same_result() {
    let g1 = erdos_renyi(12, 0.5, 10).unwrap();
    let g2 = erdos_renyi(12, 0.5, 11).unwrap();
    for method in Method::ALL {
        let cfg = SolveConfig::new(method, 99);
        assert_eq!(solve_mcs(&g1, &g2, &cfg).unwrap(), solve_mcs(&g1, &g2, &cfg).unwrap());
    }
}
