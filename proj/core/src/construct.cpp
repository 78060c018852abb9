// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "perron/entropy.hpp"
#include "perron/htransform.hpp"
#include "perron/semigroup.hpp"
#include "perron/spectral.hpp"
#include "perron/variational.hpp"

namespace perron {

ConstructionTrace build_trace(const MarkovModel& model, const ProbMeasure& mu, double lambda0,
                              double T_max, int grid_steps) {
    if (mu.dim() != model.n) throw DimensionMismatch("measure dimension mismatch");
    if (!(T_max > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (grid_steps < 1) throw std::invalid_argument("need at least one grid step per unit time");

    const int n = model.n;
    const int m = std::max(1, static_cast<int>(std::llround(T_max * grid_steps)));
    const double h = T_max / m;

    ConstructionTrace trace;
    trace.lambda0 = lambda0;
    trace.T_max = T_max;
    trace.h = h;
    trace.mu = mu;

    SpectralResult sr = principal(model);
    if (!sr.degenerate) {
        trace.reference_available = true;
        trace.reference = sr.phi;
    }

    // kernels at the spot-check times, rescaled once
    std::vector<Eigen::MatrixXd> checks;
    for (double t : kDefaultTSet) {
        checks.push_back(std::exp(-lambda0 * t) *
                         kernel(model, t, KernelKind::Schrodinger).entries);
    }
    auto invariance_defect = [&](const Eigen::VectorXd& p) {
        double r = 0.0;
        for (const auto& B : checks) {
            r = std::max(r, (B.transpose() * p - p).lpNorm<1>());
        }
        return r;
    };

    const Kernel step = kernel(model, h, KernelKind::Schrodinger);
    if (std::abs(lambda0) * h > 700.0) throw KernelOverflow("rescaling factor out of range");
    const double scale = std::exp(-lambda0 * h);

    Eigen::VectorXd w = mu.weights();
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd A = Eigen::VectorXd::Zero(n);

    trace.t_grid.resize(m + 1);
    trace.Z.resize(m + 1);
    trace.t_grid(0) = 0.0;
    trace.Z(0) = w.sum();
    trace.pi_t.push_back(mu);
    trace.pi_bar.push_back(mu);
    trace.H_bar.push_back(0.0);
    trace.tv_to_limit.push_back(
        trace.reference_available ? total_variation(mu, trace.reference) : 0.0);
    trace.invariance_residuals.push_back(invariance_defect(mu.weights()));
    trace.M = 1.0;  // B starts as the identity

    for (int k = 1; k <= m; ++k) {
        const Eigen::VectorXd w_prev = w;
        w = scale * step.apply_left(w);
        B = scale * (B * step.entries);
        trace.t_grid(k) = k * h;
        trace.Z(k) = w.sum();
        trace.M = std::max(trace.M, B.rowwise().sum().maxCoeff());

        A += 0.5 * h * (w_prev + w);
        const ProbMeasure pi_k = ProbMeasure::normalized_from(w);
        const ProbMeasure bar_k = ProbMeasure::normalized_from(A);
        trace.pi_t.push_back(pi_k);
        trace.pi_bar.push_back(bar_k);

        const EntropyResult H = entropy_density(mu, bar_k);
        trace.H_bar.push_back(H.finite ? H.value
                                       : std::numeric_limits<double>::infinity());
        trace.tv_to_limit.push_back(
            trace.reference_available ? total_variation(bar_k, trace.reference) : 0.0);
        trace.invariance_residuals.push_back(invariance_defect(bar_k.weights()));
    }
    trace.log_M = std::log(trace.M);

    trace.invariance_tol = std::max(1e-6, 10.0 * trace.M / T_max);
    PredicateCheck final_check = check_ground_measure(model, trace.pi_bar.back(), lambda0,
                                                      kDefaultTSet, trace.invariance_tol);
    trace.invariance_residual = final_check.residual;
    trace.invariance_pass = final_check.pass;
    return trace;
}

ConstructionTrace construct_ground_measure(const MarkovModel& model, const ProbMeasure& mu,
                                           double lambda0, double T_max, int grid_steps) {
    const double iv = rate_IV(model, mu, lambda0).value;
    if (!(iv <= 1e-6)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "starting measure is not an equilibrium measure (tilted rate %.3g)", iv);
        throw std::invalid_argument(buf);
    }
    const GrowthEstimate growth = growth_constant(model, lambda0, T_max);
    if (growth.unbounded) {
        throw HypothesisViolated(
            "bounded-growth hypothesis appears violated: rescaled semigroup norm keeps "
            "increasing over the sampled horizon (heuristic tail test, not a proof)");
    }
    return build_trace(model, mu, lambda0, T_max, grid_steps);
}

double flux_balance_check(const MarkovModel& model, const ProbMeasure& pi_bar, double lambda0,
                          const std::vector<Eigen::VectorXd>& f_basis) {
    if (pi_bar.dim() != model.n) throw DimensionMismatch("measure dimension mismatch");
    Eigen::MatrixXd A = model.tilted_generator();
    A.diagonal().array() -= lambda0;
    const Eigen::RowVectorXd flux = pi_bar.weights().transpose() * A;
    if (f_basis.empty()) {
        return flux.cwiseAbs().maxCoeff();
    }
    double r = 0.0;
    for (const auto& f : f_basis) {
        if (f.size() != model.n) throw DimensionMismatch("basis function dimension mismatch");
        r = std::max(r, std::abs(flux.dot(f)));
    }
    return r;
}

std::vector<EntropyLedgerRow> entropy_ledger(const MarkovModel& model, const ProbMeasure& mu,
                                             const ConstructionTrace& trace) {
    const double iv = rate_IV(model, mu, trace.lambda0).value;
    std::vector<EntropyLedgerRow> rows;
    rows.reserve(trace.pi_t.size());
    for (int k = 0; k < static_cast<int>(trace.pi_t.size()); ++k) {
        EntropyLedgerRow row;
        row.t = trace.t_grid(k);
        const EntropyResult H = entropy_density(mu, trace.pi_t[k]);
        row.entropy = H.finite ? H.value : std::numeric_limits<double>::infinity();
        row.bound = row.t * iv + std::log(trace.Z(k));
        rows.push_back(row);
    }
    return rows;
}

void write_trace_csv(const ConstructionTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open trace output file: " + path);
    const int n = trace.mu.dim();
    out << "t,Z";
    for (int i = 0; i < n; ++i) out << ",pi_" << i;
    out << ",T";
    for (int i = 0; i < n; ++i) out << ",pibar_" << i;
    out << ",H,logM,residual\n";

    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        out << buf;
    };
    for (int k = 0; k < static_cast<int>(trace.pi_t.size()); ++k) {
        put(trace.t_grid(k));
        out << ',';
        put(trace.Z(k));
        for (int i = 0; i < n; ++i) {
            out << ',';
            put(trace.pi_t[k][i]);
        }
        out << ',';
        put(trace.t_grid(k));
        for (int i = 0; i < n; ++i) {
            out << ',';
            put(trace.pi_bar[k][i]);
        }
        out << ',';
        put(trace.H_bar[k]);
        out << ',';
        put(trace.log_M);
        out << ',';
        put(trace.invariance_residuals[k]);
        out << '\n';
    }
}

}  // namespace perron
