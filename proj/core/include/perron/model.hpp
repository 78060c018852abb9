// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "perron/errors.hpp"

namespace perron {

// Tolerances used by the value types below. Validation reports violations, it
// never repairs them; the constructors of the measure types are the only
// places that hard-reject bad data.
inline constexpr double kRowSumTol = 1e-12;     // generator rows must sum to zero
inline constexpr double kMeasureMassTol = 1e-12;  // probability weights must sum to one
inline constexpr double kDensityMassTol = 1e-10;  // density * base must integrate to one

// Continuous-time Markov generator L together with a potential V on the same
// finite state space {0, .., n-1}. Row-major convention: L(x, y) is the jump
// rate x -> y for x != y, and L(x, x) = -sum of the off-diagonal row entries.
struct MarkovModel {
    int n = 0;
    Eigen::MatrixXd L;
    Eigen::VectorXd V;

    // L + diag(V), the generator of the tilted (Feynman-Kac) semigroup.
    Eigen::MatrixXd tilted_generator() const;
    double min_V() const { return V.minCoeff(); }
    double max_V() const { return V.maxCoeff(); }
};

struct ValidationIssue {
    std::string message;
    int row = -1;  // -1 when not tied to a row
    int col = -1;  // -1 when not tied to a column
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
};

// Checks every structural invariant of the model (shape, finiteness, sign of
// off-diagonal rates, zero row sums) and lists each violation with indices.
ValidationReport validate(const MarkovModel& model);

// Strongly connected support graph of the off-diagonal rates.
bool is_irreducible(const MarkovModel& model);

// A probability vector. The constructor rejects anything that is not already
// normalized to total mass one (within kMeasureMassTol) or has a negative
// entry; use normalized_from for explicit renormalization.
class ProbMeasure {
public:
    explicit ProbMeasure(Eigen::VectorXd weights);
    static ProbMeasure normalized_from(const Eigen::VectorXd& weights);
    static ProbMeasure uniform(int n);
    static ProbMeasure point_mass(int n, int state);

    const Eigen::VectorXd& weights() const { return w_; }
    int dim() const { return static_cast<int>(w_.size()); }
    double operator[](int x) const { return w_(x); }
    // integral of f against the measure
    double integrate(const Eigen::VectorXd& f) const { return w_.dot(f); }
    std::vector<int> support() const;
    bool charges(int x) const { return w_(x) > 0.0; }

private:
    Eigen::VectorXd w_;
};

// l1 distance between two measures on the same space.
double total_variation(const ProbMeasure& a, const ProbMeasure& b);

// A strictly positive function on the state space.
class PositiveFunction {
public:
    explicit PositiveFunction(Eigen::VectorXd values);
    const Eigen::VectorXd& values() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double operator[](int x) const { return v_(x); }

private:
    Eigen::VectorXd v_;
};

// A density against a base probability measure: integral of values against
// the base must be one (within kDensityMassTol). Values are unconstrained off
// the support of the base and must be nonnegative on it.
class Density {
public:
    Density(Eigen::VectorXd values, ProbMeasure base);
    // dmu/dpi; zero where pi charges but mu does not. Throws
    // AbsoluteContinuityViolation when mu charges a pi-null state.
    static Density radon_nikodym(const ProbMeasure& mu, const ProbMeasure& pi);

    const Eigen::VectorXd& values() const { return v_; }
    const ProbMeasure& base() const { return base_; }
    int dim() const { return static_cast<int>(v_.size()); }

private:
    Eigen::VectorXd v_;
    ProbMeasure base_;
};

// On-disk model bundle: the model itself plus optional named measures.
struct ModelFile {
    MarkovModel model;
    std::map<std::string, Eigen::VectorXd> measures;
};

// JSON I/O. Reals are written with enough significant digits (up to 17) that
// save followed by load reproduces the model bit for bit. Structural problems
// raise ParseError / DimensionMismatch with file, field and index context;
// generator invariants are the job of validate(), not the loader.
ModelFile load_model_file(const std::string& path);
MarkovModel load_model(const std::string& path);
void save_model_file(const ModelFile& file, const std::string& path);
void save_model(const MarkovModel& model, const std::string& path);

}  // namespace perron
