// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "perron/model.hpp"

namespace perron {

enum class KernelKind { Plain, Schrodinger, HTransform };

// Dense transition kernel at a fixed time. Plain kernels are stochastic;
// Schrodinger kernels have row sums between e^{t*minV} and e^{t*maxV};
// h-transform kernels are stochastic exactly when built from a ground state.
struct Kernel {
    double t = 0.0;
    KernelKind kind = KernelKind::Plain;
    Eigen::MatrixXd entries;

    Eigen::VectorXd row_sums() const { return entries.rowwise().sum(); }
    double min_entry() const { return entries.minCoeff(); }
    Eigen::VectorXd apply(const Eigen::VectorXd& f) const { return entries * f; }
    Eigen::VectorXd apply_left(const Eigen::VectorXd& mu) const {
        return entries.transpose() * mu;
    }
};

// e^{tL} (plain) or e^{t(L+diag V)} (Schrodinger), computed by uniformization:
// the matrix is shifted so the Poisson series has nonnegative substochastic
// terms, which keeps every intermediate entry in [0,1] and the result exactly
// nonnegative; the scalar e^{t*maxV} is restored at the end. Throws
// KernelOverflow when t*maxV > 700, std::invalid_argument for t < 0.
Kernel kernel(const MarkovModel& model, double t,
              KernelKind kind = KernelKind::Schrodinger);

// Solves the Volterra equation
//   u(t) = P_t f + integral_0^t P_{t-s} V u(s) ds
// by Picard iteration on a uniform grid with composite trapezoid quadrature
// (global error O(h^2)). Uses only plain kernels, so it is an independent
// route to the Schrodinger semigroup. Throws PicardDivergence when the sweep
// cap (200) is hit before the update drops below 1e-12 * (1 + |f|_inf).
Eigen::VectorXd duhamel_solve(const MarkovModel& model, double t, const Eigen::VectorXd& f,
                              int steps);

struct SandwichReport {
    bool ok = false;
    // worst signed margins, scaled by 1/(1+|middle|); negative means violated
    double lower_slack = 0.0;
    double upper_slack = 0.0;
};

// Checks e^{t*minV} P_t f <= P_t^V f <= e^{t*maxV} P_t f entrywise for f >= 0.
SandwichReport sandwich_check(const MarkovModel& model, double t, const Eigen::VectorXd& f,
                              double tol = 1e-9);

struct GrowthEstimate {
    double M = 1.0;    // sup over the sampled window of e^{-lambda0 t} |P_t^V|_inf
    bool unbounded = false;
    Eigen::VectorXd t;        // sample times
    Eigen::VectorXd norm;     // sampled rescaled norms
};

// Samples g(t) = e^{-lambda0 t} |P_t^V|_inf on a uniform grid of (0, t_max]
// and reports the sup. The unbounded flag is a heuristic tail test (strictly
// increasing over the last half-window with slope bounded away from zero),
// not a proof.
GrowthEstimate growth_constant(const MarkovModel& model, double lambda0, double t_max,
                               int samples = 200);

}  // namespace perron
