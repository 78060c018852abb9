// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

namespace perron::detail {

struct NewtonOptions {
    double cap = 40.0;        // coordinates are confined to [-cap, cap]
    double grad_tol = 1e-10;  // inf-norm of the free gradient at convergence
    int max_iterations = 120;
    std::vector<int> pinned;  // gauge coordinates, held at their start value
};

struct NewtonOutcome {
    Eigen::VectorXd x;
    bool converged = false;  // stationary in the interior at grad_tol
    bool capped = false;     // some non-pinned coordinate ended on the box edge
    int iterations = 0;
    double grad_norm = 0.0;  // final free-gradient inf-norm
    Eigen::VectorXd gradient;
};

// Damped Newton with a Levenberg fallback for smooth convex objectives, with
// one twist: objectives here can decrease forever along directions where a
// coordinate runs off to +-infinity (the infimum is a limit). Such
// coordinates are clamped at +-cap and treated as frozen while their gradient
// keeps pointing outward; the run then reports capped=true, converged=false,
// and the objective value at the clamp, which is within e^{-cap} scale of the
// limit for the exponential-sum objectives used in this library.
template <class Value, class Grad, class Hess>
NewtonOutcome minimize_capped(Value&& value, Grad&& grad, Hess&& hess, Eigen::VectorXd x0,
                              const NewtonOptions& opt = {}) {
    const int n = static_cast<int>(x0.size());
    std::vector<char> pinned(n, 0);
    for (int i : opt.pinned) pinned[i] = 1;

    auto clamp = [&](Eigen::VectorXd v) {
        for (int i = 0; i < n; ++i) {
            if (!pinned[i]) v(i) = std::min(opt.cap, std::max(-opt.cap, v(i)));
        }
        return v;
    };

    NewtonOutcome out;
    Eigen::VectorXd x = clamp(std::move(x0));
    double fx = value(x);

    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        out.iterations = iter;
        Eigen::VectorXd g = grad(x);

        // Free set: not pinned and not pressed against the box from inside.
        std::vector<int> free;
        bool capped_now = false;
        for (int i = 0; i < n; ++i) {
            if (pinned[i]) continue;
            const bool at_hi = x(i) >= opt.cap && g(i) < 0.0;
            const bool at_lo = x(i) <= -opt.cap && g(i) > 0.0;
            if (at_hi || at_lo) {
                capped_now = true;
            } else {
                free.push_back(i);
            }
        }

        double gn = 0.0;
        for (int i : free) gn = std::max(gn, std::abs(g(i)));
        out.grad_norm = gn;
        if (gn <= opt.grad_tol) {
            out.converged = !capped_now;
            out.capped = capped_now;
            out.x = x;
            out.gradient = std::move(g);
            return out;
        }
        if (free.empty()) {
            out.capped = capped_now;
            out.x = x;
            out.gradient = std::move(g);
            return out;
        }

        const int m = static_cast<int>(free.size());
        Eigen::MatrixXd H = hess(x);
        Eigen::MatrixXd Hff(m, m);
        Eigen::VectorXd gf(m);
        for (int a = 0; a < m; ++a) {
            gf(a) = g(free[a]);
            for (int b = 0; b < m; ++b) Hff(a, b) = H(free[a], free[b]);
        }

        // Levenberg damping until the system solves to a descent direction.
        Eigen::VectorXd d;
        double tau = 0.0;
        const double tau0 = 1e-12 * (1.0 + Hff.diagonal().cwiseAbs().maxCoeff());
        for (int attempt = 0; attempt < 60; ++attempt) {
            Eigen::MatrixXd Hd = Hff;
            Hd.diagonal().array() += tau;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Hd);
            if (ldlt.info() == Eigen::Success) {
                d = ldlt.solve(-gf);
                // A singular Hessian can pass the factorization yet drop the
                // inconsistent components of the step, so verify the solve.
                const double solve_err = (Hd * d + gf).lpNorm<Eigen::Infinity>();
                const bool solved = solve_err <= 1e-8 * (1.0 + gf.lpNorm<Eigen::Infinity>());
                if (d.allFinite() && solved && gf.dot(d) < 0.0) break;
            }
            d.resize(0);
            tau = (tau == 0.0) ? tau0 : tau * 10.0;
        }
        if (d.size() == 0) d = -gf;  // gradient fallback

        const double slope = gf.dot(d);
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
        for (int a = 0; a < m; ++a) dir(free[a]) = d(a);

        // Backtracking line search on the clamped trial point. While the raw
        // step is so long that the clamp saturates, halving alpha reproduces
        // the same corner point, so its value is computed once and reused.
        double alpha = 1.0;
        bool moved = false;
        Eigen::VectorXd prev_trial;
        double prev_ft = 0.0;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd trial = clamp(x + alpha * dir);
            double ft;
            if (prev_trial.size() != 0 && (trial - prev_trial).lpNorm<1>() == 0.0) {
                ft = prev_ft;
            } else {
                ft = value(trial);
                prev_trial = trial;
                prev_ft = ft;
            }
            if (ft <= fx + 1e-4 * alpha * slope || (ft < fx && (trial - x).lpNorm<1>() > 0.0)) {
                // Greedy doubling while the value keeps strictly dropping. On
                // a descent ray with no interior minimum (gradient and value
                // both flattening exponentially) this reaches the box in a
                // few doublings instead of letting the gradient test stop the
                // run short of the cap; at a genuine minimum the first
                // doubling fails and costs one evaluation.
                double beta = alpha * 2.0;
                for (int ex = 0; ex < 60; ++ex) {
                    Eigen::VectorXd wider = clamp(x + beta * dir);
                    if ((wider - trial).lpNorm<1>() == 0.0) break;
                    const double fw = value(wider);
                    if (!(fw < ft)) break;
                    trial = std::move(wider);
                    ft = fw;
                    beta *= 2.0;
                }
                x = std::move(trial);
                fx = ft;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) {  // stalled: report the best point found
            out.x = x;
            out.gradient = grad(x);
            double fg = 0.0;
            for (int i : free) fg = std::max(fg, std::abs(out.gradient(i)));
            out.grad_norm = fg;
            out.converged = fg <= opt.grad_tol && !capped_now;
            out.capped = capped_now;
            return out;
        }
    }

    out.x = x;
    out.gradient = grad(x);
    double gn = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!pinned[i]) gn = std::max(gn, std::abs(out.gradient(i)));
    }
    out.grad_norm = gn;
    return out;
}

}  // namespace perron::detail
