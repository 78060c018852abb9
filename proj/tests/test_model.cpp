// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <cstdio>
#include <fstream>
#include <string>

#include "perron/errors.hpp"
#include "perron/model.hpp"
#include "support/fixtures.hpp"

using namespace perron;

namespace {

std::string fixture(const char* name) {
    return std::string(PERRON_FIXTURE_DIR) + "/" + name;
}

std::string temp_path(const char* name) {
    return std::string("/tmp/perron_test_") + name;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate accepts well formed generators") {
    CHECK(validate(testutil::jordan()).ok);
    CHECK(validate(testutil::chain2()).ok);
    Eigen::VectorXd V(3);
    V << -1, 0, 2;
    CHECK(validate(testutil::zero_generator(3, V)).ok);
}

TEST_CASE("validate flags a bad row sum with its row index") {
    MarkovModel m = testutil::chain2();
    m.L(0, 1) = 2.0;  // row 0 now sums to 1
    const ValidationReport rep = validate(m);
    CHECK_FALSE(rep.ok);
    REQUIRE(!rep.issues.empty());
    bool row0_flagged = false;
    for (const auto& issue : rep.issues) row0_flagged = row0_flagged || issue.row == 0;
    CHECK(row0_flagged);
}

TEST_CASE("validate flags negative off-diagonal rates with coordinates") {
    MarkovModel m = testutil::chain2();
    m.L(1, 0) = -0.5;
    m.L(1, 1) = 0.5;  // row sum stays zero, so only the sign should be flagged
    const ValidationReport rep = validate(m);
    CHECK_FALSE(rep.ok);
    bool found = false;
    for (const auto& issue : rep.issues) found = found || (issue.row == 1 && issue.col == 0);
    CHECK(found);
}

TEST_CASE("validate catches row sum drift just above the tolerance") {
    MarkovModel m = testutil::chain2();
    m.L(0, 0) += 1e-5;
    CHECK_FALSE(validate(m).ok);
}

TEST_CASE("validate reports shape mismatches before entry checks") {
    MarkovModel m;
    m.n = 3;
    m.L = Eigen::MatrixXd::Zero(2, 2);
    m.V = Eigen::VectorXd::Zero(3);
    const ValidationReport rep = validate(m);
    CHECK_FALSE(rep.ok);
    REQUIRE_EQ(rep.issues.size(), 1);
}

TEST_CASE("validate flags non-finite entries") {
    MarkovModel m = testutil::chain2();
    m.V(1) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(validate(m).ok);
}

TEST_CASE("irreducibility follows the directed support graph") {
    CHECK(is_irreducible(testutil::chain2()));
    CHECK_FALSE(is_irreducible(testutil::jordan()));  // state 0 is absorbing
    Eigen::VectorXd V = Eigen::VectorXd::Zero(2);
    CHECK_FALSE(is_irreducible(testutil::zero_generator(2, V)));
    CHECK(is_irreducible(testutil::zero_generator(1, Eigen::VectorXd::Zero(1))));
    std::mt19937 rng(11);
    CHECK(is_irreducible(testutil::random_irreducible(5, rng)));
}

TEST_CASE("probability measures reject bad weights") {
    Eigen::VectorXd w(2);
    w << 0.5, 0.6;
    CHECK_THROWS_AS(ProbMeasure{w}, std::invalid_argument);
    w << -0.1, 1.1;
    CHECK_THROWS_AS(ProbMeasure{w}, std::invalid_argument);
    w << 0.5, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ProbMeasure{w}, std::invalid_argument);
    CHECK_THROWS_AS(ProbMeasure{Eigen::VectorXd{}}, std::invalid_argument);
}

TEST_CASE("normalized_from rescales and guards against zero mass") {
    Eigen::VectorXd w(3);
    w << 2, 2, 4;
    const ProbMeasure mu = ProbMeasure::normalized_from(w);
    CHECK_EQ(mu[0], doctest::Approx(0.25));
    CHECK_EQ(mu[2], doctest::Approx(0.5));
    CHECK_THROWS_AS(ProbMeasure::normalized_from(Eigen::VectorXd::Zero(3)),
                    std::invalid_argument);
    w << 1, -1, 1;
    CHECK_THROWS_AS(ProbMeasure::normalized_from(w), std::invalid_argument);
}

TEST_CASE("point mass, support and charges are consistent") {
    const ProbMeasure delta = ProbMeasure::point_mass(4, 2);
    CHECK_EQ(delta[2], 1.0);
    CHECK(delta.charges(2));
    CHECK_FALSE(delta.charges(0));
    REQUIRE_EQ(delta.support().size(), 1);
    CHECK_EQ(delta.support()[0], 2);
    CHECK_THROWS_AS(ProbMeasure::point_mass(4, 4), std::invalid_argument);

    const ProbMeasure u = ProbMeasure::uniform(5);
    CHECK_EQ(u.support().size(), 5);
    Eigen::VectorXd f(5);
    f << 1, 2, 3, 4, 5;
    CHECK_EQ(u.integrate(f), doctest::Approx(3.0));
}

TEST_CASE("total variation is the l1 distance") {
    const ProbMeasure a = ProbMeasure::point_mass(2, 0);
    const ProbMeasure b = ProbMeasure::point_mass(2, 1);
    CHECK_EQ(total_variation(a, b), doctest::Approx(2.0));
    CHECK_EQ(total_variation(a, a), 0.0);
}

TEST_CASE("positive functions must be strictly positive everywhere") {
    Eigen::VectorXd v(2);
    v << 1.0, 0.0;
    CHECK_THROWS_AS(PositiveFunction{v}, std::invalid_argument);
    v << 1.0, 2.0;
    CHECK_EQ(PositiveFunction{v}[1], 2.0);
}

TEST_CASE("densities must integrate to one against their base") {
    const ProbMeasure base = ProbMeasure::uniform(2);
    Eigen::VectorXd good(2), bad(2);
    good << 0.5, 1.5;
    bad << 0.5, 1.6;
    CHECK_EQ(Density(good, base).values()(1), 1.5);
    CHECK_THROWS_AS(Density(bad, base), std::invalid_argument);
}

TEST_CASE("radon_nikodym reproduces mu and enforces absolute continuity") {
    std::mt19937 rng(7);
    const ProbMeasure mu = testutil::random_measure(4, rng);
    const ProbMeasure pi = testutil::random_measure(4, rng);
    const Density d = Density::radon_nikodym(mu, pi);
    for (int x = 0; x < 4; ++x) {
        CHECK_EQ(d.values()(x) * pi[x], doctest::Approx(mu[x]).epsilon(1e-14));
    }
    const ProbMeasure charging = ProbMeasure::point_mass(4, 1);
    Eigen::VectorXd hole(4);
    hole << 0.5, 0.0, 0.25, 0.25;
    const ProbMeasure null_at_1{hole};
    CHECK_THROWS_AS(Density::radon_nikodym(charging, null_at_1), AbsoluteContinuityViolation);
    // the reverse direction is fine: the density is simply zero at state 1
    const Density rev = Density::radon_nikodym(null_at_1, ProbMeasure::uniform(4));
    CHECK_EQ(rev.values()(1), 0.0);
}

TEST_CASE("model json round trip is exact") {
    std::mt19937 rng(13);
    MarkovModel m = testutil::random_irreducible(5, rng);
    ModelFile file;
    file.model = m;
    file.measures["probe"] = testutil::random_positive(5, rng);
    const std::string path = temp_path("roundtrip.json");
    save_model_file(file, path);
    const ModelFile back = load_model_file(path);
    CHECK_EQ(back.model.n, 5);
    CHECK_EQ((back.model.L - m.L).lpNorm<Eigen::Infinity>(), 0.0);
    CHECK_EQ((back.model.V - m.V).lpNorm<Eigen::Infinity>(), 0.0);
    REQUIRE_EQ(back.measures.count("probe"), 1);
    CHECK_EQ((back.measures.at("probe") - file.measures.at("probe")).lpNorm<Eigen::Infinity>(),
             0.0);
    std::remove(path.c_str());
}

TEST_CASE("fixture files load with their named measures") {
    const ModelFile jf = load_model_file(fixture("jordan.json"));
    CHECK_EQ(jf.model.n, 2);
    CHECK_EQ(jf.model.L(1, 0), 1.0);
    CHECK_EQ(jf.model.V(1), 1.0);
    CHECK_EQ(jf.measures.count("absorbed"), 1);

    const ModelFile cf = load_model_file(fixture("chain2.json"));
    CHECK_EQ(cf.model.L(0, 0), -1.0);
    CHECK_EQ(cf.measures.count("skew"), 1);
}

TEST_CASE("loader reports structural problems with context") {
    const std::string path = temp_path("bad_model.json");
    {
        std::ofstream out(path);
        out << R"({"n": 3, "L": [[-1, 1], [1, -1]], "V": [0, 1, 2]})";
    }
    CHECK_THROWS_AS(load_model(path), DimensionMismatch);
    {
        std::ofstream out(path);
        out << R"({"n": 2, "L": [[-1, 1], [1, -1]]})";
    }
    CHECK_THROWS_AS(load_model(path), ParseError);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_model(path), ParseError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_model("/nonexistent/nowhere.json"), ParseError);
}

}  // TEST_SUITE
