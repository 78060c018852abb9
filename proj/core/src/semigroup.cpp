// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/semigroup.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace perron {

namespace {

constexpr double kOverflowExponent = 700.0;  // e^700 is near the double limit
constexpr double kSeriesTail = 1e-17;        // Poisson mass left unsummed
constexpr double kMaxDirectQT = 200.0;       // beyond this, halve t and square

// e^{tA} for a Metzler matrix A (nonnegative off-diagonals) with row sums
// <= 0 after the caller's shift. Uniformization: A = q(P - I) with P
// substochastic, so every term of e^{-qt} sum (qt)^k/k! P^k is nonnegative
// and bounded by 1, and truncation only loses positive mass.
Eigen::MatrixXd sub_generator_exp(const Eigen::MatrixXd& A, double t) {
    const Eigen::Index n = A.rows();
    if (t == 0.0) return Eigen::MatrixXd::Identity(n, n);

    double q = 0.0;
    for (Eigen::Index x = 0; x < n; ++x) q = std::max(q, -A(x, x));
    if (q == 0.0) return Eigen::MatrixXd::Identity(n, n);  // A == 0 given the sign structure

    // Split t so the direct series stays short and well conditioned; squaring
    // a nonnegative substochastic matrix preserves both properties exactly.
    int squarings = 0;
    double tau = t;
    while (q * tau > kMaxDirectQT) {
        tau *= 0.5;
        ++squarings;
    }

    Eigen::MatrixXd P = A / q + Eigen::MatrixXd::Identity(n, n);
    const double qt = q * tau;
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    double w = std::exp(-qt);
    Eigen::MatrixXd E = w * term;
    double accumulated = w;
    for (int k = 1; accumulated < 1.0 - kSeriesTail; ++k) {
        term = term * P;
        w *= qt / k;
        E += w * term;
        accumulated += w;
        if (k > 10 * kMaxDirectQT + 100) break;  // cannot happen; guards an fp stall
    }
    for (int s = 0; s < squarings; ++s) E = E * E;
    return E;
}

}  // namespace

Kernel kernel(const MarkovModel& model, double t, KernelKind kind) {
    if (t < 0.0) throw std::invalid_argument("kernel time must be nonnegative");
    if (kind == KernelKind::HTransform) {
        throw std::invalid_argument("h-transform kernels are built by h_kernel, not kernel()");
    }

    Kernel K;
    K.t = t;
    K.kind = kind;
    if (kind == KernelKind::Plain) {
        K.entries = sub_generator_exp(model.L, t);
        return K;
    }

    const double shift = model.max_V();
    if (t * shift > kOverflowExponent) {
        std::ostringstream os;
        os << "e^{t*maxV} overflows: t*maxV = " << t * shift << " > " << kOverflowExponent;
        throw KernelOverflow(os.str());
    }
    Eigen::MatrixXd A = model.tilted_generator();
    A.diagonal().array() -= shift;  // row sums become V - maxV <= 0
    K.entries = std::exp(t * shift) * sub_generator_exp(A, t);
    return K;
}

Eigen::VectorXd duhamel_solve(const MarkovModel& model, double t, const Eigen::VectorXd& f,
                              int steps) {
    if (t < 0.0) throw std::invalid_argument("duhamel_solve time must be nonnegative");
    if (steps < 1) throw std::invalid_argument("duhamel_solve needs at least one step");
    if (f.size() != model.n) throw std::invalid_argument("duhamel_solve: f has wrong length");
    if (t == 0.0) return f;

    const double h = t / steps;
    const Eigen::MatrixXd P_h = kernel(model, h, KernelKind::Plain).entries;

    // Plain kernels at every grid time, built incrementally.
    std::vector<Eigen::MatrixXd> P(steps + 1);
    P[0] = Eigen::MatrixXd::Identity(model.n, model.n);
    for (int j = 1; j <= steps; ++j) P[j] = P[j - 1] * P_h;

    // G[i] approximates the solution at time i*h.
    std::vector<Eigen::VectorXd> G(steps + 1);
    for (int i = 0; i <= steps; ++i) G[i] = P[i] * f;

    const double tol = 1e-12 * (1.0 + f.lpNorm<Eigen::Infinity>());
    const int max_sweeps = 200;
    const Eigen::ArrayXd Varr = model.V.array();

    std::vector<Eigen::VectorXd> Vg(steps + 1);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int j = 0; j <= steps; ++j) Vg[j] = (Varr * G[j].array()).matrix();
        double delta = 0.0;
        for (int i = steps; i >= 1; --i) {
            Eigen::VectorXd acc = 0.5 * (P[i] * Vg[0] + Vg[i]);
            for (int j = 1; j < i; ++j) acc += P[i - j] * Vg[j];
            Eigen::VectorXd next = P[i] * f + h * acc;
            delta = std::max(delta, (next - G[i]).lpNorm<Eigen::Infinity>());
            G[i] = std::move(next);
        }
        if (delta <= tol) return G[steps];
    }
    std::ostringstream os;
    os << "Picard iteration did not contract after " << max_sweeps
       << " sweeps (t = " << t << ", steps = " << steps << "); refine the grid or reduce t";
    throw PicardDivergence(os.str());
}

SandwichReport sandwich_check(const MarkovModel& model, double t, const Eigen::VectorXd& f,
                              double tol) {
    if (f.size() != model.n) throw std::invalid_argument("sandwich_check: f has wrong length");
    if ((f.array() < 0.0).any()) {
        throw std::invalid_argument("sandwich_check requires f >= 0 entrywise");
    }
    const Eigen::VectorXd plain = kernel(model, t, KernelKind::Plain).apply(f);
    const Eigen::VectorXd mid = kernel(model, t, KernelKind::Schrodinger).apply(f);
    const double lo = std::exp(t * model.min_V());
    const double hi = std::exp(t * model.max_V());

    SandwichReport rep;
    rep.lower_slack = std::numeric_limits<double>::infinity();
    rep.upper_slack = std::numeric_limits<double>::infinity();
    for (int x = 0; x < model.n; ++x) {
        const double scale = 1.0 + std::abs(mid(x));
        rep.lower_slack = std::min(rep.lower_slack, (mid(x) - lo * plain(x)) / scale);
        rep.upper_slack = std::min(rep.upper_slack, (hi * plain(x) - mid(x)) / scale);
    }
    rep.ok = rep.lower_slack >= -tol && rep.upper_slack >= -tol;
    return rep;
}

GrowthEstimate growth_constant(const MarkovModel& model, double lambda0, double t_max,
                               int samples) {
    if (t_max <= 0.0) throw std::invalid_argument("growth_constant needs t_max > 0");
    if (samples < 8) throw std::invalid_argument("growth_constant needs at least 8 samples");

    const double h = t_max / samples;
    const Eigen::MatrixXd step = std::exp(-lambda0 * h) * kernel(model, h).entries;

    GrowthEstimate est;
    est.t.resize(samples + 1);
    est.norm.resize(samples + 1);
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(model.n, model.n);
    est.t(0) = 0.0;
    est.norm(0) = 1.0;
    est.M = 1.0;
    for (int j = 1; j <= samples; ++j) {
        B = B * step;
        est.t(j) = j * h;
        est.norm(j) = B.rowwise().sum().maxCoeff();
        est.M = std::max(est.M, est.norm(j));
    }

    // Tail heuristic: strictly increasing over the last half of the window
    // and a least-squares slope that is not vanishing relative to the level.
    const int mid = samples / 2;
    bool increasing = true;
    for (int j = mid + 1; j <= samples; ++j) {
        if (est.norm(j) <= est.norm(j - 1)) {
            increasing = false;
            break;
        }
    }
    if (increasing) {
        const int m = samples - mid + 1;
        double st = 0, sy = 0, stt = 0, sty = 0;
        for (int j = mid; j <= samples; ++j) {
            st += est.t(j);
            sy += est.norm(j);
            stt += est.t(j) * est.t(j);
            sty += est.t(j) * est.norm(j);
        }
        const double slope = (m * sty - st * sy) / (m * stt - st * st);
        const double level = std::max(1.0, est.norm(mid));
        est.unbounded = slope * t_max > 0.01 * level;
    }
    return est;
}

}  // namespace perron
