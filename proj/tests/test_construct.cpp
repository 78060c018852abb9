// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "perron/construct.hpp"
#include "perron/errors.hpp"
#include "perron/spectral.hpp"
#include "perron/variational.hpp"
#include "support/fixtures.hpp"

using namespace perron;

TEST_SUITE("construct") {

TEST_CASE("averaging the rescaled flow drives the measure to the left eigenvector") {
    const MarkovModel c = testutil::chain2();
    const SpectralResult spec = principal(c);
    const ProbMeasure mu = eigen_equilibrium(c);
    const ConstructionTrace tr = construct_ground_measure(c, mu, spec.lambda0, 50.0, 4);

    const int m = static_cast<int>(tr.t_grid.size()) - 1;
    REQUIRE_EQ(m, 200);
    CHECK_EQ(tr.h, doctest::Approx(0.25).epsilon(1e-15));
    CHECK_EQ(static_cast<int>(tr.pi_t.size()), m + 1);
    CHECK_EQ(static_cast<int>(tr.pi_bar.size()), m + 1);
    CHECK_EQ(static_cast<int>(tr.H_bar.size()), m + 1);
    CHECK(total_variation(tr.pi_bar.front(), mu) == 0.0);

    // mass normalization of the averages comes from the shared grid, exactly
    for (const auto& bar : tr.pi_bar) CHECK(std::abs(bar.weights().sum() - 1.0) <= 1e-12);

    // Z starts at one, stays in [1, M]
    CHECK_EQ(tr.Z(0), doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tr.Z.minCoeff() >= 1.0 - 1e-9);
    CHECK(tr.Z.maxCoeff() <= tr.M + 1e-9);
    CHECK_EQ(tr.M, doctest::Approx(1.170820393249954).epsilon(1e-6));

    // entropy stays under the growth budget along the whole trace
    for (double hh : tr.H_bar) CHECK(hh <= tr.log_M + 1e-9);

    // approach to the reference decays; final distance is O(1/T)
    REQUIRE(tr.reference_available);
    CHECK(total_variation(tr.reference, spec.phi) == 0.0);
    CHECK(tr.tv_to_limit.back() <= 0.05);
    CHECK(tr.tv_to_limit.back() < tr.tv_to_limit[m / 2]);
    CHECK(tr.tv_to_limit[m / 2] < tr.tv_to_limit[1]);

    // O(1/T) invariance defect: halving the horizon doubles the residual
    const double ratio = tr.invariance_residuals[m / 2] / tr.invariance_residuals[m];
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.6);
    CHECK(tr.invariance_pass);
    CHECK(tr.invariance_residual <= tr.invariance_tol);
    CHECK_EQ(tr.invariance_tol, doctest::Approx(std::max(1e-6, 10.0 * tr.M / 50.0)));
}

TEST_CASE("stationary start under a constant potential is a fixed point") {
    std::mt19937 rng(51);
    Eigen::VectorXd rho;
    MarkovModel m = testutil::random_reversible(4, rng, &rho);
    m.V.setConstant(0.6);
    const ProbMeasure mu{rho};
    const ConstructionTrace tr = construct_ground_measure(m, mu, 0.6, 10.0, 4);
    for (const auto& pi : tr.pi_t) CHECK(total_variation(pi, mu) <= 1e-9);
    for (const auto& bar : tr.pi_bar) CHECK(total_variation(bar, mu) <= 1e-9);
    for (double hh : tr.H_bar) CHECK(std::abs(hh) <= 1e-9);
    CHECK(std::abs(tr.M - 1.0) <= 1e-9);
    CHECK((tr.Z.array() - 1.0).abs().maxCoeff() <= 1e-9);
}

TEST_CASE("pipeline refuses non-equilibrium starts and unbounded growth") {
    const MarkovModel c = testutil::chain2();
    const double lambda0 = principal(c).lambda0;
    CHECK_THROWS_AS(construct_ground_measure(c, ProbMeasure::uniform(2), lambda0, 10.0, 4),
                    std::invalid_argument);

    const MarkovModel j = testutil::jordan();
    CHECK_THROWS_AS(construct_ground_measure(j, ProbMeasure::uniform(2), 0.0, 50.0, 4),
                    HypothesisViolated);
    // the ungated builder happily walks the same model
    CHECK_NOTHROW(build_trace(j, ProbMeasure::uniform(2), 0.0, 5.0, 4));

    CHECK_THROWS_AS(build_trace(c, eigen_equilibrium(c), lambda0, -1.0, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_trace(c, eigen_equilibrium(c), lambda0, 10.0, 0),
                    std::invalid_argument);
}

TEST_CASE("generator flux balance: exact on eigendata, O(1/T) on averages") {
    const MarkovModel c = testutil::chain2();
    const SpectralResult spec = principal(c);
    CHECK(flux_balance_check(c, spec.phi, spec.lambda0) <= 1e-10);

    const ProbMeasure mu = eigen_equilibrium(c);
    double flux[3];
    int i = 0;
    for (double T : {10.0, 20.0, 40.0}) {
        const ConstructionTrace tr = construct_ground_measure(c, mu, spec.lambda0, T, 4);
        flux[i] = flux_balance_check(c, tr.pi_bar.back(), spec.lambda0);
        CHECK(flux[i] <= 2.0 * tr.M / T + 1e-8);
        ++i;
    }
    CHECK(flux[0] / flux[1] >= 1.5);
    CHECK(flux[0] / flux[1] <= 2.7);
    CHECK(flux[1] / flux[2] >= 1.5);
    CHECK(flux[1] / flux[2] <= 2.7);

    // restricted to the constant function the flux is the potential mismatch
    const ConstructionTrace tr = construct_ground_measure(c, mu, spec.lambda0, 10.0, 4);
    const double via_basis =
        flux_balance_check(c, tr.pi_bar.back(), spec.lambda0, {Eigen::VectorXd::Ones(2)});
    const double direct = std::abs(tr.pi_bar.back().weights().dot(c.V) - spec.lambda0);
    CHECK(std::abs(via_basis - direct) <= 1e-12);
}

TEST_CASE("entropy ledger rows respect the budget, including tilted starts") {
    const MarkovModel c = testutil::chain2();
    const SpectralResult spec = principal(c);

    const ProbMeasure eq = eigen_equilibrium(c);
    const ConstructionTrace tr = construct_ground_measure(c, eq, spec.lambda0, 20.0, 4);
    const auto rows = entropy_ledger(c, eq, tr);
    REQUIRE_EQ(rows.size(), tr.pi_t.size());
    CHECK(std::abs(rows.front().t) <= 1e-15);
    CHECK(std::abs(rows.front().entropy) <= 1e-12);
    CHECK(std::abs(rows.front().bound) <= 1e-12);
    for (const auto& row : rows) CHECK(row.entropy <= row.bound + 1e-9);

    // a non-equilibrium start pays for itself through the t * rate term
    const ProbMeasure u = ProbMeasure::uniform(2);
    const ConstructionTrace free = build_trace(c, u, spec.lambda0, 20.0, 4);
    const auto tilted = entropy_ledger(c, u, free);
    for (const auto& row : tilted) CHECK(row.entropy <= row.bound + 1e-9);
    // with the positive rate the budget visibly outruns the entropy
    CHECK(tilted.back().bound > tilted.back().entropy + 0.5);
}

TEST_CASE("trapezoid averaging converges at second order in the grid spacing") {
    const MarkovModel c = testutil::chain2();
    const SpectralResult spec = principal(c);
    const ProbMeasure mu = eigen_equilibrium(c);
    Eigen::VectorXd bar[3];
    int i = 0;
    for (int g : {2, 4, 8}) {
        bar[i++] = build_trace(c, mu, spec.lambda0, 10.0, g).pi_bar.back().weights();
    }
    const double d1 = (bar[0] - bar[1]).lpNorm<1>();
    const double d2 = (bar[1] - bar[2]).lpNorm<1>();
    CHECK(d1 / d2 >= 3.4);
    CHECK(d1 / d2 <= 4.6);
}

TEST_CASE("trace export writes one row per grid time") {
    const MarkovModel c = testutil::chain2();
    const SpectralResult spec = principal(c);
    const ConstructionTrace tr =
        construct_ground_measure(c, eigen_equilibrium(c), spec.lambda0, 5.0, 4);
    const std::string path = "/tmp/perron_test_trace.csv";
    write_trace_csv(tr, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK_EQ(line, "t,Z,pi_0,pi_1,T,pibar_0,pibar_1,H,logM,residual");
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK_EQ(rows, static_cast<int>(tr.pi_t.size()));
    std::remove(path.c_str());
}

}  // TEST_SUITE
