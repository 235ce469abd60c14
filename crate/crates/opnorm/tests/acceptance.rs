//! Acceptance suite: every closed form is exercised against independent
//! numerical oracles at desk scale, one test per criterion, one printed
//! PASS/FAIL line per criterion (run with `-- --nocapture` to see them).
//!
//! Two checks encode claims that are mathematically unattainable and fail
//! by design rather than being weakened; their tests carry the measured
//! counterexamples:
//!   * `composite_shear_suite_oracle_agreement` — the composite value is
//!     attained by its certificate (a valid lower bound) but the true norm
//!     is strictly larger, and the multistart oracle finds the excess.
//!   * `k_regular_suite_signed_odd_bidiagonal` — the alternating vector is
//!     infeasible on an odd cycle, so the signed circulant bidiagonal value
//!     2 is not attained there (at q = 2 the true value is 2cos(π/2n) < 2).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use opnorm::construct::{
    bidiagonal_toeplitz, circulant_k_regular, normalized_hadamard, orthogonal_with_first_column,
    random_k_regular, random_orthogonal, signed_bidiagonal,
};
use opnorm::oracle::{
    best_estimate, grid_lower_bound, multistart, vertex_search_q1, OracleConfig,
};
use opnorm::{
    composite_shear_norm, diagonal_norm, hadamard_upper_bound, k_regular_norm,
    nonzero_row_upper_bound, one_to_r_norm, orthogonal_svd_norm, permute, rank_one_norm,
    scaled_orthogonal_norm, shear_matrix, shear_norm, sigma_max, sign_row_orthonormal_norm,
    svd_class_norm, vandermonde_alignment_defect, vandermonde_build, vandermonde_norm,
    vector_norm, DenseMatrix, Exponent, KRegularSpec, NormQuery, OrthogonalSvdSpec,
    RankOneFactors, ScaledOrthogonalSpec, SvdClassSpec, VandermondeSpec,
};

fn e(v: f64) -> Exponent {
    Exponent::new(v).unwrap()
}

fn q(qv: f64, rv: f64) -> NormQuery {
    NormQuery::new(e(qv), e(rv))
}

/// 20 exponent pairs spanning q < r, q = r, and q > r, with both ends of
/// the extended range represented.
fn exponent_pairs() -> Vec<NormQuery> {
    vec![
        q(1.2, 2.0),
        q(1.5, 2.5),
        q(2.0, 3.0),
        q(2.0, 4.0),
        q(3.0, 5.0),
        NormQuery::new(e(2.0), Exponent::INF),
        NormQuery::new(e(1.5), Exponent::INF),
        q(4.0, 6.0),
        q(1.5, 1.5),
        q(2.0, 2.0),
        q(3.0, 3.0),
        q(7.0, 7.0),
        NormQuery::new(Exponent::INF, Exponent::INF),
        q(2.0, 1.5),
        q(3.0, 2.0),
        q(4.0, 2.0),
        q(2.5, 1.2),
        q(5.0, 1.5),
        NormQuery::new(Exponent::INF, e(2.0)),
        q(4.0, 3.0),
    ]
}

fn suite_config(seed: u64) -> OracleConfig {
    OracleConfig {
        restarts: 12,
        max_iters: 500,
        conv_tol: 1e-11,
        seed,
        grid_points: 200,
    }
}

fn report(name: &str, failures: &[String], checks: usize) {
    if failures.is_empty() {
        println!("acceptance: {name}: PASS ({checks} checks)");
    } else {
        println!(
            "acceptance: {name}: FAIL ({} of {checks} checks failed)",
            failures.len()
        );
        for f in failures.iter().take(8) {
            println!("    {f}");
        }
        panic!("{name}: {} failed checks", failures.len());
    }
}

#[test]
fn diagonal_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cfg = suite_config(101);
    let pairs = exponent_pairs();
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for case in 0..200 {
        let n = rng.gen_range(1..=8);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let matrix = DenseMatrix::from_diagonal(&a).unwrap();
        for query in &pairs {
            let query = *query;
            let exact = diagonal_norm(&a, query).unwrap();
            let est = best_estimate(&matrix, query, &cfg).unwrap();
            checks += 1;
            if est.value > exact.value * (1.0 + 1e-7)
                || (exact.value - est.value).abs() > 1e-4 * exact.value.max(1e-9)
            {
                failures.push(format!(
                    "case {case}: exact {} vs oracle {} at {query}, n={n}",
                    exact.value, est.value
                ));
            }
            if n <= 3 {
                checks += 1;
                let grid = grid_lower_bound(&matrix, query, &cfg).unwrap();
                if (exact.value - grid.value).abs() > 2e-3 * exact.value.max(1.0) {
                    failures.push(format!(
                        "case {case}: grid gap {:.3e} at {query}, n={n}",
                        (exact.value - grid.value).abs()
                    ));
                }
            }
        }
    }
    report("diagonal suite", &failures, checks);
}

#[test]
fn rank_one_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let cfg = suite_config(202);
    let pairs = exponent_pairs();
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for case in 0..200 {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=8);
        let u: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let factors = RankOneFactors::new(u, v);
        let a = factors.assemble().unwrap();
        for query in &pairs {
            let query = *query;
            let exact = rank_one_norm(&factors, query).unwrap();
            let est = best_estimate(&a, query, &cfg).unwrap();
            checks += 1;
            if est.value > exact.value * (1.0 + 1e-7)
                || (exact.value - est.value).abs() > 1e-4 * exact.value.max(1e-9)
            {
                failures.push(format!(
                    "case {case}: exact {} vs oracle {} at {query}",
                    exact.value, est.value
                ));
            }
        }
        // spectral cross-check at q = r = 2
        let spectral = rank_one_norm(&factors, q(2.0, 2.0)).unwrap();
        let sigma = sigma_max(&a);
        checks += 1;
        if (spectral.value - sigma).abs() > 1e-8 * sigma.max(1e-12) {
            failures.push(format!(
                "case {case}: rank-one 2->2 value {} vs sigma_max {}",
                spectral.value, sigma
            ));
        }
    }
    report("rank-one suite", &failures, checks);
}

#[test]
fn hadamard_suite() {
    let cfg = OracleConfig {
        restarts: 24,
        ..suite_config(303)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for n in [2usize, 4, 8] {
        let h = normalized_hadamard(n).unwrap();
        for qv in [2.0, 3.0, 4.0, 6.0] {
            for rv in [2.0, 3.0, 4.0] {
                let query = q(qv, rv);
                let exact = sign_row_orthonormal_norm(&h, query).unwrap();
                let expect = (n as f64).powf((qv - 2.0) / (2.0 * qv));
                let est = multistart(&h, query, &cfg).unwrap();
                let bound = hadamard_upper_bound(&h, query).unwrap();
                checks += 3;
                if (exact.value - expect).abs() > 1e-12 * expect {
                    failures.push(format!("n={n} {query}: value {} != n^((q-2)/2q)", exact.value));
                }
                if (exact.value - est.value).abs() > 1e-5 * exact.value {
                    failures.push(format!(
                        "n={n} {query}: oracle gap {:.3e}",
                        (exact.value - est.value).abs() / exact.value
                    ));
                }
                if bound < exact.value * (1.0 - 1e-12) {
                    failures.push(format!("n={n} {query}: bound {bound} below exact {}", exact.value));
                }
            }
        }
    }
    report("hadamard suite", &failures, checks);
}

#[test]
fn shear_suite() {
    let cfg = OracleConfig {
        restarts: 16,
        ..suite_config(404)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for gamma in [0.1, 0.5, 1.0, 2.0, 5.0] {
        for qv in [1.5, 2.0, 3.0, 5.0] {
            for n in [2usize, 4, 8] {
                let exact = shear_norm(gamma, n, e(qv)).unwrap();
                checks += 1;
                if let opnorm::ClassCertificate::Shear { lambda0, .. } = exact.certificate {
                    let params =
                        opnorm::solvers::solve_shear_lambda0(gamma, e(qv)).unwrap();
                    assert_eq!(params.lambda0, lambda0);
                    if params.residual() >= 1e-12 {
                        failures.push(format!(
                            "gamma={gamma} q={qv}: root residual {:.3e}",
                            params.residual()
                        ));
                    }
                } else {
                    failures.push("wrong certificate kind".into());
                }
                if qv == 2.0 {
                    checks += 1;
                    let sigma = sigma_max(&shear_matrix(n, gamma).unwrap());
                    if (exact.value - sigma).abs() > 1e-9 * sigma {
                        failures.push(format!(
                            "gamma={gamma} n={n}: q=2 value {} vs sigma_max {sigma}",
                            exact.value
                        ));
                    }
                }
                checks += 2;
                let a = shear_matrix(n, gamma).unwrap();
                let est = multistart(&a, q(qv, qv), &cfg).unwrap();
                if est.value > exact.value * (1.0 + 1e-7)
                    || (exact.value - est.value).abs() > 1e-4 * exact.value
                {
                    failures.push(format!(
                        "gamma={gamma} q={qv} n={n}: exact {} vs oracle {}",
                        exact.value, est.value
                    ));
                }
                if (vector_norm(&exact.maximizer, e(qv)) - 1.0).abs() > 1e-9 {
                    failures.push(format!("gamma={gamma} q={qv}: maximizer infeasible"));
                }
            }
        }
    }
    report("shear suite", &failures, checks);
}

fn random_composite_spec(n: usize, rng: &mut ChaCha8Rng) -> SvdClassSpec {
    let mut sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let scale = 1.0 / (n as f64).sqrt();
    let u = orthogonal_with_first_column(&vec![scale; n], rng).unwrap();
    let mut v_first = vec![0.0; n];
    v_first[0] = 1.0;
    let v = orthogonal_with_first_column(&v_first, rng).unwrap();
    SvdClassSpec::new(v, sigma, u, vec![1.0; n]).unwrap()
}

#[test]
fn composite_shear_suite_residual_and_feasibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for n in [2usize, 4] {
        for qv in [2.0, 3.0] {
            let spec = random_composite_spec(n, &mut rng);
            let query = q(qv, qv);
            let exact = composite_shear_norm(&spec, query).unwrap();
            checks += 3;
            if let opnorm::ClassCertificate::CompositeShear { gamma, xi, .. } = &exact.certificate
            {
                let g = opnorm::solvers::composite_gamma_equation(n, qv);
                if g(*gamma).abs() >= 1e-12 {
                    failures.push(format!(
                        "n={n} q={qv}: coupling residual {:.3e}",
                        g(*gamma).abs()
                    ));
                }
                // consistency: value = (1/xi) * aligned-SVD value of B
                let b_value = svd_class_norm(&spec, query).unwrap().value;
                if (exact.value - b_value / xi).abs() > 1e-12 * exact.value {
                    failures.push(format!("n={n} q={qv}: value != (1/xi) * B value"));
                }
            } else {
                failures.push("wrong certificate kind".into());
            }
            if (vector_norm(&exact.maximizer, e(qv)) - 1.0).abs() > 1e-9 {
                failures.push(format!("n={n} q={qv}: ||x*||_q != 1"));
            }
        }
    }
    report(
        "composite-shear suite (coupling residual + feasibility)",
        &failures,
        checks,
    );
}

#[test]
fn composite_shear_suite_oracle_agreement() {
    // The certificate attains the claimed value, so it is a valid lower
    // bound; but the upper-bound side of the argument requires the shear
    // factor to satisfy ||C||_{q->q} <= 1/xi, which fails for every gamma
    // solving the coupling equation (at n=2, q=2: ||C|| = 1.4851 > 1.3898
    // = 1/xi). The true norm is strictly larger and the oracle finds the
    // excess, so agreement at 1e-4 is unattainable.
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let cfg = OracleConfig {
        restarts: 24,
        ..suite_config(505)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for n in [2usize, 4] {
        for qv in [2.0, 3.0] {
            let spec = random_composite_spec(n, &mut rng);
            let query = q(qv, qv);
            let exact = composite_shear_norm(&spec, query).unwrap();
            let a = match &exact.certificate {
                opnorm::ClassCertificate::CompositeShear { assembled, .. } => assembled.clone(),
                _ => unreachable!(),
            };
            let est = multistart(&a, query, &cfg).unwrap();
            checks += 1;
            if (exact.value - est.value).abs() > 1e-4 * exact.value {
                failures.push(format!(
                    "n={n} q={qv}: certified {:.8} vs oracle {:.8} (oracle exceeds by {:.2}%)",
                    exact.value,
                    est.value,
                    100.0 * (est.value - exact.value) / exact.value
                ));
            }
        }
    }
    report("composite-shear suite (oracle agreement)", &failures, checks);
}

#[test]
fn k_regular_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let cfg = suite_config(606);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut matrices: Vec<(String, DenseMatrix)> = Vec::new();
    for n in [3usize, 5, 8, 10] {
        matrices.push((format!("toeplitz n={n}"), bidiagonal_toeplitz(n).unwrap()));
    }
    for k in [1usize, 2, 3] {
        for n in [4usize, 7, 10] {
            if k <= n {
                matrices.push((
                    format!("circulant n={n} k={k}"),
                    circulant_k_regular(n, k).unwrap(),
                ));
            }
        }
    }
    for k in [2usize, 3] {
        for n in [6usize, 9] {
            matrices.push((
                format!("random n={n} k={k}"),
                random_k_regular(n, k, &mut rng).unwrap(),
            ));
        }
    }
    // the signed circulant variant on even sizes reaches 2 at the
    // alternating vector
    for n in [4usize, 6, 8] {
        matrices.push((format!("signed n={n}"), signed_bidiagonal(n).unwrap()));
    }
    for (label, a) in &matrices {
        let spec = KRegularSpec::from_matrix(a, 1e-12).unwrap();
        for qv in [1.5, 2.0, 3.0, 7.0] {
            let exact = k_regular_norm(&spec, e(qv)).unwrap();
            let expect = if spec.signed_bidiagonal { 2.0 } else { spec.k as f64 };
            let est = multistart(a, q(qv, qv), &cfg).unwrap();
            checks += 2;
            if exact.value != expect {
                failures.push(format!("{label} q={qv}: value {} != {expect}", exact.value));
            }
            if est.value > exact.value * (1.0 + 1e-7)
                || (exact.value - est.value).abs() > 1e-5 * exact.value
            {
                failures.push(format!(
                    "{label} q={qv}: exact {} vs oracle {}",
                    exact.value, est.value
                ));
            }
        }
    }
    report("k-regular suite", &failures, checks);
}

#[test]
fn k_regular_suite_signed_odd_bidiagonal() {
    // Claimed: the signed circulant bidiagonal with odd n has value 2 at
    // the alternating maximizer. The alternating pattern is frustrated on
    // an odd cycle (the wrap row evaluates to zero), ||A x*||_q =
    // 2((n-1)/n)^{1/q} < 2, and the true norm is below 2 as well (at q = 2
    // it is 2cos(pi/2n)), so the certificate check rejects the value.
    let cfg = OracleConfig {
        restarts: 24,
        ..suite_config(707)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for n in [5usize, 7, 9] {
        let a = signed_bidiagonal(n).unwrap();
        let spec = KRegularSpec::from_matrix(&a, 1e-12).unwrap();
        for qv in [1.5, 2.0, 3.0] {
            checks += 1;
            match k_regular_norm(&spec, e(qv)) {
                Ok(exact) if (exact.value - 2.0).abs() <= 1e-12 => {}
                Ok(exact) => failures.push(format!(
                    "signed n={n} q={qv}: value {} != 2",
                    exact.value
                )),
                Err(err) => {
                    let est = multistart(&a, q(qv, qv), &cfg).unwrap();
                    failures.push(format!(
                        "signed n={n} q={qv}: {err}; oracle value {:.9} < 2",
                        est.value
                    ));
                }
            }
        }
    }
    report("k-regular suite (signed odd bidiagonal)", &failures, checks);
}

#[test]
fn scaled_orthogonal_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let cfg = OracleConfig {
        restarts: 16,
        ..suite_config(808)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut bases: Vec<(String, DenseMatrix)> = Vec::new();
    for n in [2usize, 4, 8] {
        bases.push((format!("hadamard n={n}"), normalized_hadamard(n).unwrap()));
    }
    for n in [3usize, 5] {
        bases.push((
            format!("random orthogonal n={n}"),
            random_orthogonal(n, &mut rng).unwrap(),
        ));
    }
    for (label, u) in &bases {
        for qv in [2.0, 3.0, 4.0] {
            let spec = ScaledOrthogonalSpec::new(u.clone(), 0, e(qv)).unwrap();
            let a = spec.assemble().unwrap();
            for rv in [2.0, 3.0] {
                let query = q(qv, rv);
                let exact = scaled_orthogonal_norm(&spec, query).unwrap();
                let est = multistart(&a, query, &cfg).unwrap();
                checks += 3;
                if exact.value != 1.0 {
                    failures.push(format!("{label} {query}: value {}", exact.value));
                }
                if est.value > 1.0 + 1e-7 || (1.0 - est.value).abs() > 1e-5 {
                    failures.push(format!("{label} {query}: oracle {}", est.value));
                }
                if (vector_norm(&exact.maximizer, e(qv)) - 1.0).abs() > 1e-9 {
                    failures.push(format!("{label} {query}: maximizer infeasible"));
                }
            }
        }
    }
    // orthogonal-SVD companion: random V (zero-free first row), leading
    // |Sigma| entry first
    for n in [2usize, 4] {
        for qv in [2.0, 3.0, 4.0] {
            let v = loop {
                let v = random_orthogonal(n, &mut rng).unwrap();
                if v.row(0).iter().all(|&x| x.abs() > 1e-3) {
                    break v;
                }
            };
            let mut sigma: Vec<f64> = (0..n)
                .map(|_| rng.gen_range(0.2..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
                .collect();
            sigma.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
            let mut u_first = vec![0.0; n];
            u_first[0] = 1.0;
            let u = orthogonal_with_first_column(&u_first, &mut rng).unwrap();
            let spec = OrthogonalSvdSpec::new(u, sigma.clone(), v, e(qv)).unwrap();
            let a = spec.assemble().unwrap();
            let query = q(qv, 2.0);
            let exact = orthogonal_svd_norm(&spec, query).unwrap();
            let est = multistart(&a, query, &cfg).unwrap();
            checks += 2;
            if (exact.value - sigma[0].abs()).abs() > 1e-12 * sigma[0].abs() {
                failures.push(format!("orth-svd n={n} q={qv}: value != lambda_max"));
            }
            if est.value > exact.value * (1.0 + 1e-7)
                || (exact.value - est.value).abs() > 1e-4 * exact.value
            {
                failures.push(format!(
                    "orth-svd n={n} q={qv}: exact {} vs oracle {}",
                    exact.value, est.value
                ));
            }
        }
    }
    report("scaled-orthogonal + orthogonal-svd suite", &failures, checks);
}

#[test]
fn one_to_r_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let cfg = suite_config(909);
    let rs = [e(1.0), e(2.0), e(2.5), e(4.0), Exponent::INF];
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for case in 0..200 {
        let m = rng.gen_range(1..=10);
        let n = rng.gen_range(1..=10);
        let data: Vec<f64> = (0..m * n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let a = DenseMatrix::new(m, n, data).unwrap();
        let r = rs[case % rs.len()];
        let exact = one_to_r_norm(&a, r).unwrap();
        let vertex = vertex_search_q1(&a, r);
        checks += 1;
        // the closed form and the vertex search perform the same
        // maximization: bitwise agreement, identical argmax
        if exact.value.to_bits() != vertex.value.to_bits()
            || exact.maximizer != vertex.candidate
        {
            failures.push(format!(
                "case {case}: one_to_r {} vs vertex {}",
                exact.value, vertex.value
            ));
        }
        if n <= 3 {
            checks += 1;
            let grid = grid_lower_bound(&a, NormQuery::new(e(1.0), r), &cfg).unwrap();
            if grid.value > exact.value * (1.0 + 1e-9) {
                failures.push(format!(
                    "case {case}: grid {} exceeds exact {}",
                    grid.value, exact.value
                ));
            }
        }
    }
    report("1->r suite", &failures, checks);
}

#[test]
fn vandermonde_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let cfg = suite_config(111);
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for case in 0..50 {
        let n = rng.gen_range(2..=5);
        let extra = rng.gen_range(1..=4);
        let a1: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.5..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let qv: f64 = rng.gen_range(1.3..5.0);
        let mut p_prime = Vec::new();
        let mut q_prime = Vec::new();
        for _ in 0..extra {
            let qp = rng.gen_range(1.05..qv.min(4.0));
            q_prime.push(e(qp));
            p_prime.push(e(qp).conjugate());
        }
        let spec = VandermondeSpec::new(a1, p_prime, q_prime, e(qv)).unwrap();
        let rv = rng.gen_range(1.2..4.0);
        let query = q(qv, rv);
        let a = vandermonde_build(&spec, query).unwrap();
        let exact = vandermonde_norm(&spec, query).unwrap();
        let bound = nonzero_row_upper_bound(&a, query, &spec.p_prime, &spec.q_prime).unwrap();
        let defect = vandermonde_alignment_defect(&a, &spec, query).unwrap();
        let est = multistart(&a, query, &cfg).unwrap();
        checks += 4;
        if defect >= 1e-10 {
            failures.push(format!("case {case}: alignment defect {defect:.3e}"));
        }
        if (exact.value - bound).abs() > 1e-10 * bound {
            failures.push(format!(
                "case {case}: norm {} vs bound {} (rel {:.3e})",
                exact.value,
                bound,
                (exact.value - bound).abs() / bound
            ));
        }
        if est.value > exact.value * (1.0 + 1e-7)
            || (exact.value - est.value).abs() > 1e-3 * exact.value
        {
            failures.push(format!(
                "case {case}: exact {} vs oracle {}",
                exact.value, est.value
            ));
        }
        if (vector_norm(&exact.maximizer, e(qv)) - 1.0).abs() > 1e-9 {
            failures.push(format!("case {case}: maximizer infeasible"));
        }
    }
    report("vandermonde suite", &failures, checks);
}

#[test]
fn duality_and_invariance_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(121);
    let cfg = OracleConfig {
        restarts: 24,
        ..suite_config(121)
    };
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for case in 0..50 {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(2..=6);
        let data: Vec<f64> = (0..m * n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let a = DenseMatrix::new(m, n, data).unwrap();
        let query = q(rng.gen_range(1.3..3.5), rng.gen_range(1.3..3.5));

        // transpose duality: ||A||_{q->r} = ||A^T||_{r*->q*}
        let primal = multistart(&a, query, &cfg).unwrap();
        let dual = multistart(&a.transpose(), query.transpose_dual(), &cfg).unwrap();
        checks += 1;
        if (primal.value - dual.value).abs() > 1e-4 * primal.value.max(1e-9) {
            failures.push(format!(
                "case {case}: primal {} vs dual {} at {query}",
                primal.value, dual.value
            ));
        }

        // permutation invariance of the estimates under a fixed seed schedule
        let mut row_perm: Vec<usize> = (0..m).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(row_perm.as_mut_slice(), &mut rng);
        rand::seq::SliceRandom::shuffle(col_perm.as_mut_slice(), &mut rng);
        let permuted = permute(&a, &row_perm, &col_perm).unwrap();
        let est_perm = multistart(&permuted, query, &cfg).unwrap();
        checks += 1;
        if (primal.value - est_perm.value).abs() > 1e-6 * primal.value.max(1e-9) {
            failures.push(format!(
                "case {case}: estimate changed under permutation: {} vs {}",
                primal.value, est_perm.value
            ));
        }
    }
    report("duality & permutation-invariance suite", &failures, checks);
}
