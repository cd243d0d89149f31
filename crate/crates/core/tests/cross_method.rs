//! Cross-method agreement on the heat benchmark: the closed-form gramian is
//! the oracle, and the generic linear, empirical, and direct-search paths
//! must all reproduce it.

use unobs_core::{
    direct_index_search, empirical_gramian, linear_gramian, unobservability_index,
    EstimationBasis, HeatModel, SearchConfig, SymMatrix,
};

/// Basis of the first s modes inside an n-mode heat model, S = I.
fn mode_basis(n: usize, s: usize) -> EstimationBasis {
    let vectors: Vec<Vec<f64>> = (0..s)
        .map(|i| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        })
        .collect();
    let labels = (1..=s).map(|k| format!("mode{k}")).collect();
    EstimationBasis::new(vectors, SymMatrix::identity(s).unwrap(), labels, None).unwrap()
}

#[test]
fn linear_gramian_matches_closed_form() {
    let mut model = HeatModel::benchmark(6).unwrap();
    // time-quadrature error is O(dt^2); resolve it below the 1e-8 target
    model.output_samples = 200_001;
    let basis = mode_basis(6, 4);
    let pair = linear_gramian(&model, &basis, 0.1).unwrap();
    let exact = model.gramian_closed_form();
    for i in 0..4 {
        for j in 0..4 {
            assert!(
                (pair.g[(i, j)] - exact[(i, j)]).abs() < 1e-8,
                "G[{i}][{j}]: {} vs {}",
                pair.g[(i, j)],
                exact[(i, j)]
            );
        }
    }
}

#[test]
fn empirical_equals_linear_for_all_rho() {
    let model = HeatModel::benchmark(5).unwrap();
    let basis = mode_basis(5, 3);
    let nominal = vec![0.3, -0.2, 0.1, 0.0, 0.5];
    let linear = linear_gramian(&model, &basis, 0.1).unwrap();
    for rho in [0.01, 0.1, 1.0] {
        let emp = empirical_gramian(&model, &nominal, &basis, rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (emp.g[(i, j)] - linear.g[(i, j)]).abs() < 1e-9,
                    "rho {rho}, G[{i}][{j}]"
                );
            }
        }
    }
}

#[test]
fn index_invariant_under_rho_for_linear_model() {
    let model = HeatModel::benchmark(4).unwrap();
    let basis = mode_basis(4, 3);
    let nominal = vec![0.0; 4];
    let index_at = |rho: f64| {
        let pair = empirical_gramian(&model, &nominal, &basis, rho).unwrap();
        unobservability_index(&pair, &basis).unwrap().index
    };
    let a = index_at(0.1);
    let b = index_at(1.0);
    assert!((a - b).abs() < 1e-9 * a, "{a} vs {b}");
}

#[test]
fn direct_search_matches_gramian_index() {
    let model = HeatModel::benchmark(3).unwrap();
    let basis = mode_basis(3, 3);
    let nominal = vec![0.0; 3];
    let rho = 0.1;
    let pair = linear_gramian(&model, &basis, rho).unwrap();
    let gram = unobservability_index(&pair, &basis).unwrap();
    let search = direct_index_search(
        &model,
        &nominal,
        &basis,
        rho,
        &SearchConfig::default(),
    )
    .unwrap();
    let rel = (search.index - gram.index).abs() / gram.index;
    assert!(rel < 1e-6, "direct {} vs gramian {} (rel {rel:.3e})", search.index, gram.index);
    // the search minimizes over the sphere, so it can never beat the gramian
    assert!(search.epsilon >= gram.epsilon - 1e-12 * gram.epsilon);
}

#[test]
fn congruence_invariance_of_sigma_min() {
    // same span expressed in a skewed basis with its Gram matrix as S
    let model = HeatModel::benchmark(4).unwrap();
    let ortho = mode_basis(4, 3);
    let skew_vectors = vec![
        vec![1.0, 0.0, 0.0, 0.0],
        vec![1.0, 1.0, 0.0, 0.0],
        vec![0.5, -1.0, 2.0, 0.0],
    ];
    let mut s = unobs_core::Mat::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            s[(i, j)] = skew_vectors[i]
                .iter()
                .zip(&skew_vectors[j])
                .map(|(a, b)| a * b)
                .sum();
        }
    }
    let skew = EstimationBasis::new(
        skew_vectors,
        SymMatrix::new(s).unwrap(),
        vec!["v1".into(), "v2".into(), "v3".into()],
        None,
    )
    .unwrap();
    let rho = 0.1;
    let a = unobservability_index(&linear_gramian(&model, &ortho, rho).unwrap(), &ortho)
        .unwrap()
        .sigma_min;
    let b = unobservability_index(&linear_gramian(&model, &skew, rho).unwrap(), &skew)
        .unwrap()
        .sigma_min;
    assert!((a - b).abs() < 1e-9 * a, "{a} vs {b}");
}

#[test]
fn worst_direction_attains_epsilon() {
    let model = HeatModel::benchmark(4).unwrap();
    let basis = mode_basis(4, 3);
    let rho = 0.1;
    let pair = linear_gramian(&model, &basis, rho).unwrap();
    let result = unobservability_index(&pair, &basis).unwrap();
    // integrate the worst perturbation and compare its output discrepancy
    let perturbed: Vec<f64> = result.worst_direction.iter().map(|x| x * rho).collect();
    let y = unobs_core::ObservedModel::output(&model, &perturbed).unwrap();
    let discrepancy = y.norm(); // nominal is the zero trajectory
    let rel = (discrepancy - result.epsilon).abs() / result.epsilon;
    assert!(rel < 0.01, "predicted {} vs attained {discrepancy}", result.epsilon);
}

#[test]
fn single_direction_search_is_two_point() {
    let model = HeatModel::benchmark(3).unwrap();
    let basis = mode_basis(3, 1);
    let rho = 0.2;
    let search =
        direct_index_search(&model, &[0.0; 3], &basis, rho, &SearchConfig::default()).unwrap();
    let pair = linear_gramian(&model, &basis, rho).unwrap();
    let gram = unobservability_index(&pair, &basis).unwrap();
    assert!((search.epsilon - gram.epsilon).abs() < 1e-9 * gram.epsilon);
}
