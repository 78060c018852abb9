// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/htransform.hpp"

#include <algorithm>
#include <cmath>

#include "perron/entropy.hpp"
#include "perron/spectral.hpp"
#include "perron/variational.hpp"

namespace perron {

namespace {

Kernel transform_with(const MarkovModel& model, const Eigen::VectorXd& psi, double lambda0,
                      double t) {
    if (psi.size() != model.n) throw DimensionMismatch("transform function dimension mismatch");
    if (std::abs(lambda0) * t > 700.0) {
        throw KernelOverflow("rescaling factor exceeds double range");
    }
    Kernel base = kernel(model, t, KernelKind::Schrodinger);
    const double scale = std::exp(-lambda0 * t);
    Kernel out;
    out.t = t;
    out.kind = KernelKind::HTransform;
    out.entries.resize(model.n, model.n);
    for (int x = 0; x < model.n; ++x) {
        for (int y = 0; y < model.n; ++y) {
            out.entries(x, y) = scale * base.entries(x, y) * psi(y) / psi(x);
        }
    }
    return out;
}

// zero (or negative) entries of a density mark states its measure never
// visits; the transform is made harmless there by the psi := 1 convention
Eigen::VectorXd one_convention(const Eigen::VectorXd& psi) {
    Eigen::VectorXd out = psi;
    for (int x = 0; x < out.size(); ++x) {
        if (!(out(x) > 0.0)) out(x) = 1.0;
    }
    return out;
}

}  // namespace

Kernel h_kernel(const MarkovModel& model, const PositiveFunction& psi, double lambda0, double t) {
    return transform_with(model, psi.values(), lambda0, t);
}

Kernel h_kernel(const MarkovModel& model, const Density& psi, double lambda0, double t) {
    return transform_with(model, one_convention(psi.values()), lambda0, t);
}

Kernel h_kernel(const MarkovModel& model, const Density& psi, const ProbMeasure& mu,
                double lambda0, double t) {
    if (mu.dim() != psi.dim()) throw DimensionMismatch("measure dimension mismatch");
    for (int x : mu.support()) {
        if (!(psi.values()(x) > 0.0)) {
            throw ZeroDensityOnSupport("transform function vanishes on the support of mu");
        }
    }
    return transform_with(model, one_convention(psi.values()), lambda0, t);
}

PredicateCheck check_ground_state(const MarkovModel& model, const Eigen::VectorXd& psi,
                                  const ProbMeasure& mu, double lambda0,
                                  const std::vector<double>& t_set, double tol) {
    if (psi.size() != model.n || mu.dim() != model.n) {
        throw DimensionMismatch("input dimension mismatch");
    }
    const std::vector<int> supp = mu.support();
    double scale = 0.0;
    for (int x : supp) scale = std::max(scale, std::abs(psi(x)));

    double residual = 0.0;
    for (double t : t_set) {
        const Kernel K = kernel(model, t, KernelKind::Schrodinger);
        const Eigen::VectorXd Kpsi = std::exp(-lambda0 * t) * K.apply(psi);
        for (int x : supp) residual = std::max(residual, std::abs(Kpsi(x) - psi(x)));
    }
    PredicateCheck c;
    c.residual = residual;
    c.tolerance = tol * scale;
    c.pass = residual <= c.tolerance;
    return c;
}

PredicateCheck check_ground_measure(const MarkovModel& model, const ProbMeasure& pi,
                                    double lambda0, const std::vector<double>& t_set, double tol) {
    if (pi.dim() != model.n) throw DimensionMismatch("measure dimension mismatch");
    double residual = 0.0;
    for (double t : t_set) {
        const Kernel K = kernel(model, t, KernelKind::Schrodinger);
        const Eigen::VectorXd left = std::exp(-lambda0 * t) * K.apply_left(pi.weights());
        residual = std::max(residual, (left - pi.weights()).lpNorm<1>());
    }
    PredicateCheck c;
    c.residual = residual;
    c.tolerance = tol;
    c.pass = residual <= tol;
    return c;
}

bool contraction_check(const MarkovModel& model, const ProbMeasure& pi, double lambda0, double t,
                       const Eigen::VectorXd& f) {
    if (pi.dim() != model.n || f.size() != model.n) {
        throw DimensionMismatch("input dimension mismatch");
    }
    const Kernel K = kernel(model, t, KernelKind::Schrodinger);
    const Eigen::VectorXd Kf = std::exp(-lambda0 * t) * K.apply(f);
    double lhs = 0.0, rhs = 0.0;
    for (int x = 0; x < model.n; ++x) {
        lhs += pi[x] * std::abs(Kf(x));
        rhs += pi[x] * std::abs(f(x));
    }
    return lhs <= rhs + 1e-9;
}

TripleReport verify_triple(const MarkovModel& model, const ProbMeasure& pi, const ProbMeasure& mu,
                           const std::vector<double>& t_set, double tol_pred, double tol_impl,
                           double lambda0) {
    TripleReport report;
    if (std::isnan(lambda0)) lambda0 = principal(model).lambda0;
    report.lambda0 = lambda0;

    // throws AbsoluteContinuityViolation when mu is not absolutely continuous
    const Density psi = Density::radon_nikodym(mu, pi);

    report.ground_measure = check_ground_measure(model, pi, lambda0, t_set, tol_pred);
    report.ground_state =
        check_ground_state(model, psi.values(), mu, lambda0, t_set, tol_pred);

    RateResult iv = rate_IV(model, mu, lambda0);
    report.equilibrium.residual = iv.value;
    report.equilibrium.tolerance = tol_pred;
    report.equilibrium.pass = iv.value <= tol_pred;

    report.entropy_finite = entropy_density(mu, pi).finite;

    double inv = 0.0;
    for (double t : t_set) {
        const Kernel K = h_kernel(model, psi, mu, lambda0, t);
        inv = std::max(inv, (K.apply_left(mu.weights()) - mu.weights()).lpNorm<1>());
    }
    report.invariance_residual = inv;

    // conclusions are re-judged at the relaxed tolerance
    const bool gm_rel = report.ground_measure.residual <= tol_impl;
    const double gs_scale =
        report.ground_state.tolerance > 0.0 && tol_pred > 0.0
            ? report.ground_state.tolerance / tol_pred
            : 1.0;
    const bool gs_rel = report.ground_state.residual <= tol_impl * gs_scale;
    const bool eq_rel = report.equilibrium.residual <= tol_impl;

    auto implication = [](std::string name, bool p1, bool p2, bool concl) {
        TripleReport::Implication imp;
        imp.conclusion = std::move(name);
        imp.premises_pass = p1 && p2;
        imp.conclusion_pass = concl;
        imp.ok = !imp.premises_pass || concl;
        return imp;
    };
    report.implications.push_back(implication(
        "equilibrium", report.ground_measure.pass, report.ground_state.pass, eq_rel));
    report.implications.push_back(implication(
        "ground_state", report.ground_measure.pass, report.equilibrium.pass, gs_rel));
    report.implications.push_back(implication(
        "ground_measure", report.ground_state.pass, report.equilibrium.pass, gm_rel));
    return report;
}

}  // namespace perron
