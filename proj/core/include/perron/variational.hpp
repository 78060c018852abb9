// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "perron/model.hpp"

namespace perron {

// Result of evaluating a large-deviation rate function at a fixed measure.
// When the inner infimum is only approached along a ray (some component of g
// runs to -infinity, e.g. measures charging states with one-way escape) the
// optimizer caps the coordinate and reports converged=false with the capped
// value, which is accurate to e^{-40} scale.
struct RateResult {
    double value = 0.0;
    Eigen::VectorXd minimizer_g;  // log of the inner test function, gauge g[0] = 0
    bool converged = false;
    bool capped = false;
    int iterations = 0;
};

// Result of maximizing mu.V - I(mu) over the probability simplex.
struct DVResult {
    double lambda0 = 0.0;
    ProbMeasure maximizer_mu;
    double gap_to_spectral = 0.0;
    int iterations = 0;
    DVResult() : maximizer_mu(ProbMeasure::uniform(1)) {}
};

// Inner objective g -> sum_x mu_x sum_y L_xy e^{g_y - g_x}, a smooth convex
// function of g, invariant under adding a constant to g. Its negated infimum
// is the rate function. Exposed for direct finite-difference checks.
double rate_inner_objective(const MarkovModel& model, const ProbMeasure& mu,
                            const Eigen::VectorXd& g);
Eigen::VectorXd rate_inner_gradient(const MarkovModel& model, const ProbMeasure& mu,
                                    const Eigen::VectorXd& g);

// Rate function I(mu) = -inf_g of the inner objective, inf over g with g[0]=0.
RateResult rate_I(const MarkovModel& model, const ProbMeasure& mu);

// Tilted rate I^V(mu) = I(mu) - mu.V + lambda0. Nonnegative, zero exactly on
// equilibrium measures of the tilted dynamics.
RateResult rate_IV(const MarkovModel& model, const ProbMeasure& mu, double lambda0);

// Maximize mu.V - I(mu) over probability measures: mirror ascent in the
// exponential parametrization from deterministic multi-starts, then a
// monotone polish phase. gap_to_spectral is left 0; callers with a spectral
// value fill it in.
DVResult dv_supremum(const MarkovModel& model);

// Slack of the lower bound int log(e^{-lambda0 t} P_t^V u / u) dmu >= -t I^V(mu):
// returns LHS + t*I^V(mu), which is nonnegative up to numerics.
double log_inequality_check(const MarkovModel& model, const ProbMeasure& mu,
                            const PositiveFunction& u, double lambda0, double t);

struct LogPmBounds {
    double lhs = 0.0;  // t*I^V(mu) + int log_+(Qu/u) dmu
    double rhs = 0.0;  // int log_-(Qu/u) dmu
};

// Positive/negative-part split of the same bound through the psi-transformed
// kernel Q = e^{-lambda0 t} psi^{-1} P_t^V (psi .): lhs >= rhs up to numerics.
// psi must be positive on supp(mu).
LogPmBounds logpm_inequality_check(const MarkovModel& model, const ProbMeasure& mu,
                                   const Density& psi, const PositiveFunction& u,
                                   double lambda0, double t);

}  // namespace perron
