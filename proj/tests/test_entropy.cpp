// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "perron/entropy.hpp"
#include "perron/spectral.hpp"
#include "support/fixtures.hpp"

using namespace perron;

TEST_SUITE("entropy") {

TEST_CASE("relative entropy of a measure against itself is zero") {
    std::mt19937 rng(41);
    const ProbMeasure mu = testutil::random_measure(4, rng);
    const EntropyResult dual = entropy_dual(mu, mu);
    const EntropyResult dens = entropy_density(mu, mu);
    CHECK(dual.finite);
    CHECK(dens.finite);
    CHECK(std::abs(dual.value) <= 1e-10);
    CHECK_EQ(dens.value, 0.0);
    CHECK(dual.maximizer_f.lpNorm<Eigen::Infinity>() <= 1e-5);
    CHECK_EQ(dual.method, EntropyMethod::dual);
    CHECK_EQ(dens.method, EntropyMethod::density);
}

TEST_CASE("point mass against the uniform law costs log of the cardinality") {
    const ProbMeasure delta = ProbMeasure::point_mass(2, 0);
    const ProbMeasure u = ProbMeasure::uniform(2);
    CHECK(std::abs(entropy_dual(delta, u).value - std::log(2.0)) <= 1e-9);
    CHECK(std::abs(entropy_density(delta, u).value - std::log(2.0)) <= 1e-9);
}

TEST_CASE("charging a null state is infinite through both routes") {
    const ProbMeasure u = ProbMeasure::uniform(2);
    const ProbMeasure delta = ProbMeasure::point_mass(2, 0);
    CHECK_FALSE(entropy_dual(u, delta).finite);
    CHECK_FALSE(entropy_density(u, delta).finite);
}

TEST_CASE("ray limits with finite value are not mistaken for infinite ones") {
    // the reference charges everything, so the value is finite even though the
    // dual optimizer runs off to -infinity in the second coordinate
    Eigen::VectorXd w(2);
    w << 0.9, 0.1;
    const ProbMeasure pi{w};
    const ProbMeasure delta = ProbMeasure::point_mass(2, 0);
    const EntropyResult dual = entropy_dual(delta, pi);
    const EntropyResult dens = entropy_density(delta, pi);
    CHECK(dual.finite);
    CHECK(dens.finite);
    CHECK(std::abs(dual.value - std::log(1.0 / 0.9)) <= 1e-9);
    CHECK(std::abs(dens.value - std::log(1.0 / 0.9)) <= 1e-9);
}

TEST_CASE("equilibrium against uniform on the symmetric chain") {
    const ProbMeasure eq = eigen_equilibrium(testutil::chain2());
    const double expected = 0.103632694824897;
    CHECK(std::abs(entropy_dual(eq, ProbMeasure::uniform(2)).value - expected) <= 1e-9);
    CHECK(std::abs(entropy_density(eq, ProbMeasure::uniform(2)).value - expected) <= 1e-9);
}

TEST_CASE("dual maximizer recovers the log density up to its gauge") {
    std::mt19937 rng(42);
    const ProbMeasure mu = testutil::random_measure(5, rng);
    const ProbMeasure pi = testutil::random_measure(5, rng);
    const EntropyResult dual = entropy_dual(mu, pi);
    REQUIRE(dual.finite);
    for (int x = 0; x < 5; ++x) {
        const double expected =
            std::log(mu[x] / pi[x]) - std::log(mu[0] / pi[0]);
        CHECK(std::abs(dual.maximizer_f(x) - expected) <= 1e-6);
    }
}

TEST_CASE("the two routes agree on random fully supported pairs") {
    std::mt19937 rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const ProbMeasure mu = testutil::random_measure(n, rng);
        const ProbMeasure pi = testutil::random_measure(n, rng);
        const EntropyResult dual = entropy_dual(mu, pi);
        const EntropyResult dens = entropy_density(mu, pi);
        CHECK_EQ(dual.finite, dens.finite);
        REQUIRE(dual.finite);
        CHECK(std::abs(dual.value - dens.value) <= 1e-7);
        CHECK(dual.value >= -1e-10);
        CHECK(dens.value >= 0.0);
    }
}

TEST_CASE("finiteness flags agree exactly on partially supported pairs") {
    std::mt19937 rng(44);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 3 + static_cast<int>(rng() % 3);
        Eigen::VectorXd wm = testutil::random_positive(n, rng);
        Eigen::VectorXd wp = testutil::random_positive(n, rng);
        // knock out independent random subsets of both supports
        for (int x = 0; x < n; ++x) {
            if (rng() % 3 == 0) wm(x) = 0.0;
            if (rng() % 3 == 0) wp(x) = 0.0;
        }
        if (wm.sum() == 0.0 || wp.sum() == 0.0) continue;
        const ProbMeasure mu = ProbMeasure::normalized_from(wm);
        const ProbMeasure pi = ProbMeasure::normalized_from(wp);
        bool escapes = false;
        for (int x = 0; x < n; ++x) escapes = escapes || (mu.charges(x) && !pi.charges(x));
        const EntropyResult dual = entropy_dual(mu, pi);
        const EntropyResult dens = entropy_density(mu, pi);
        CHECK_EQ(dual.finite, !escapes);
        CHECK_EQ(dens.finite, !escapes);
        if (!escapes) CHECK(std::abs(dual.value - dens.value) <= 1e-7);
    }
}

TEST_CASE("relative entropy is convex in its first argument") {
    std::mt19937 rng(45);
    for (int rep = 0; rep < 5; ++rep) {
        const ProbMeasure a = testutil::random_measure(4, rng);
        const ProbMeasure b = testutil::random_measure(4, rng);
        const ProbMeasure pi = testutil::random_measure(4, rng);
        const double theta = 0.3;
        const ProbMeasure mix{theta * a.weights() + (1.0 - theta) * b.weights()};
        const double lhs = entropy_density(mix, pi).value;
        const double rhs = theta * entropy_density(a, pi).value +
                           (1.0 - theta) * entropy_density(b, pi).value;
        CHECK(lhs <= rhs + 1e-10);
    }
}

TEST_CASE("entropy dominates the squared l1 distance") {
    std::mt19937 rng(46);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const ProbMeasure mu = testutil::random_measure(n, rng);
        const ProbMeasure pi = testutil::random_measure(n, rng);
        const double tv = total_variation(mu, pi);
        const double h = entropy_density(mu, pi).value;
        CHECK(h >= tv * tv / 2.0 - 1e-12);
        if (tv >= 1e-3) CHECK(h >= 5e-7);
    }
}

}  // TEST_SUITE
