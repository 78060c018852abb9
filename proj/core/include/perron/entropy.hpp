// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "perron/model.hpp"

namespace perron {

enum class EntropyMethod { dual, density };

// Relative entropy H(mu, pi) in nats. An infinite value (mu charging a
// pi-null state) is reported through the finite flag, never as a float
// infinity; value is meaningful only when finite is true.
struct EntropyResult {
    bool finite = true;
    double value = 0.0;
    Eigen::VectorXd maximizer_f;  // dual optimizer, gauge f[0] = 0
    EntropyMethod method = EntropyMethod::dual;
};

// H via its dual form sup_f (mu.f - log int e^f dpi), maximized by damped
// Newton in f with f[0] pinned. Unboundedness (the supremum growing along a
// coordinate ray) is detected by the coordinate cap at |f| = 40 together with
// an outward-pointing gradient, and reported as an infinite value.
EntropyResult entropy_dual(const ProbMeasure& mu, const ProbMeasure& pi);

// H via the density formula sum psi log(psi) dpi with psi = dmu/dpi and
// 0 log 0 = 0; infinite exactly when mu charges a pi-null state.
EntropyResult entropy_density(const ProbMeasure& mu, const ProbMeasure& pi);

}  // namespace perron
