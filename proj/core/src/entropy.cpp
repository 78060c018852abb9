// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "capped_newton.hpp"

namespace perron {

namespace {

constexpr double kDivergenceGrad = 1e-9;  // outward gradient at the cap that marks a true ray

// log sum_x pi_x e^{f_x} over supp(pi), stabilized against overflow.
double log_partition(const ProbMeasure& pi, const Eigen::VectorXd& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < pi.dim(); ++x) {
        if (pi.charges(x)) m = std::max(m, f(x));
    }
    double s = 0.0;
    for (int x = 0; x < pi.dim(); ++x) {
        if (pi.charges(x)) s += pi[x] * std::exp(f(x) - m);
    }
    return m + std::log(s);
}

// softmax weights pi_x e^{f_x} / sum, zero off supp(pi)
Eigen::VectorXd gibbs_weights(const ProbMeasure& pi, const Eigen::VectorXd& f) {
    const int n = pi.dim();
    double m = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) {
        if (pi.charges(x)) m = std::max(m, f(x));
    }
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    double s = 0.0;
    for (int x = 0; x < n; ++x) {
        if (pi.charges(x)) {
            p(x) = pi[x] * std::exp(f(x) - m);
            s += p(x);
        }
    }
    return p / s;
}

}  // namespace

EntropyResult entropy_dual(const ProbMeasure& mu, const ProbMeasure& pi) {
    const int n = mu.dim();
    if (pi.dim() != n) throw DimensionMismatch("measures live on different spaces");

    // Minimize the negated dual objective -mu.f + log int e^f dpi.
    detail::NewtonOptions opt;
    opt.cap = 40.0;
    opt.grad_tol = 1e-10;
    opt.max_iterations = 200;
    opt.pinned = {0};
    auto outcome = detail::minimize_capped(
        [&](const Eigen::VectorXd& f) {
            return -mu.weights().dot(f) + log_partition(pi, f);
        },
        [&](const Eigen::VectorXd& f) {
            return Eigen::VectorXd(gibbs_weights(pi, f) - mu.weights());
        },
        [&](const Eigen::VectorXd& f) {
            const Eigen::VectorXd p = gibbs_weights(pi, f);
            Eigen::MatrixXd H = -p * p.transpose();
            H.diagonal() += p;
            return H;
        },
        Eigen::VectorXd::Zero(n), opt);

    EntropyResult r;
    r.method = EntropyMethod::dual;
    r.maximizer_f = outcome.x;

    // A capped coordinate whose gradient still points out of the box marks a
    // genuine ray along which the dual objective keeps growing.
    bool diverged = false;
    for (int x = 1; x < n; ++x) {
        const double g = outcome.gradient(x);
        const bool out_hi = outcome.x(x) >= opt.cap && g < -kDivergenceGrad;
        const bool out_lo = outcome.x(x) <= -opt.cap && g > kDivergenceGrad;
        if (out_hi || out_lo) diverged = true;
    }
    if (diverged) {
        r.finite = false;
        r.value = 0.0;
        return r;
    }
    r.value = mu.weights().dot(outcome.x) - log_partition(pi, outcome.x);
    return r;
}

EntropyResult entropy_density(const ProbMeasure& mu, const ProbMeasure& pi) {
    const int n = mu.dim();
    if (pi.dim() != n) throw DimensionMismatch("measures live on different spaces");

    EntropyResult r;
    r.method = EntropyMethod::density;
    r.maximizer_f = Eigen::VectorXd::Zero(n);

    for (int x = 0; x < n; ++x) {
        if (mu.charges(x) && !pi.charges(x)) {
            r.finite = false;
            r.value = 0.0;
            return r;
        }
    }
    double h = 0.0;
    for (int x = 0; x < n; ++x) {
        if (mu.charges(x) && pi.charges(x)) {
            h += mu[x] * std::log(mu[x] / pi[x]);
            r.maximizer_f(x) = std::clamp(std::log(mu[x] / pi[x]), -40.0, 40.0);
        } else if (pi.charges(x)) {
            r.maximizer_f(x) = -40.0;  // density is zero here, dual ray capped
        }
    }
    r.maximizer_f.array() -= r.maximizer_f(0);
    r.value = h;
    return r;
}

}  // namespace perron
