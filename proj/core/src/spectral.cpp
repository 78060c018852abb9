// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "perron/semigroup.hpp"

namespace perron {

namespace {

constexpr double kTieTol = 1e-10;      // eigenvalues within this of the top tie
constexpr double kNonnegTol = 1e-8;    // entries below -this break nonnegativity
constexpr double kRealTol = 1e-9;      // |Im| below this counts as a real eigenvalue

// Sign-fix a candidate eigenvector: scale to max |entry| = 1, flip if the
// most negative entry dominates the most positive one.
Eigen::VectorXd sign_fix(Eigen::VectorXd v) {
    const double amax = v.cwiseAbs().maxCoeff();
    if (amax > 0.0) v /= amax;
    if (-v.minCoeff() > v.maxCoeff()) v = -v;
    return v;
}

bool essentially_nonnegative(const Eigen::VectorXd& v) { return v.minCoeff() >= -kNonnegTol; }

struct CandidatePick {
    int index = -1;
    Eigen::VectorXd vector;
    bool nonneg = false;
};

// Among eigenvalues tied for the maximal real part, pick one whose (real)
// eigenvector is nonnegative after sign fixing; fall back to the smallest
// index when none qualifies.
CandidatePick pick_candidate(const Eigen::VectorXcd& values, const Eigen::MatrixXcd& vectors,
                             double lambda0, double scale) {
    CandidatePick fallback;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i).real() < lambda0 - kTieTol) continue;
        if (std::abs(values(i).imag()) > kRealTol * std::max(1.0, scale)) continue;
        Eigen::VectorXd v = sign_fix(vectors.col(i).real());
        if (fallback.index < 0) {
            fallback.index = static_cast<int>(i);
            fallback.vector = v;
        }
        if (essentially_nonnegative(v)) {
            return {static_cast<int>(i), std::move(v), true};
        }
    }
    return fallback;
}

}  // namespace

SpectralResult principal(const MarkovModel& model) {
    const Eigen::MatrixXd M = model.tilted_generator();
    const double scale = M.cwiseAbs().rowwise().sum().maxCoeff();

    Eigen::EigenSolver<Eigen::MatrixXd> right(M);
    if (right.info() != Eigen::Success) {
        throw EigenSolverFailure("QR iteration failed on L + diag(V)");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> left(M.transpose());
    if (left.info() != Eigen::Success) {
        throw EigenSolverFailure("QR iteration failed on (L + diag(V))^T");
    }

    const Eigen::VectorXcd ev = right.eigenvalues();
    double lambda0 = ev(0).real();
    for (Eigen::Index i = 1; i < ev.size(); ++i) lambda0 = std::max(lambda0, ev(i).real());

    SpectralResult res;
    const CandidatePick rp = pick_candidate(ev, right.eigenvectors(), lambda0, scale);
    const CandidatePick lp = pick_candidate(left.eigenvalues(), left.eigenvectors(), lambda0,
                                            scale);
    if (rp.index < 0 || lp.index < 0) {
        // Perron theory guarantees a real top eigenvalue for this sign
        // structure, so this indicates the tie window caught only complex
        // pairs; report it as a degeneracy with context.
        res.degenerate = true;
        res.nonneg_failure = true;
        res.note = "no real eigenvalue found in the top tie window";
        res.lambda0 = lambda0;
        res.psi = Eigen::VectorXd::Ones(model.n);
        res.phi = ProbMeasure::uniform(model.n);
        return res;
    }

    res.lambda0 = ev(rp.index).real();
    if (!rp.nonneg || !lp.nonneg) {
        res.nonneg_failure = true;
        res.note = "top eigenspace has no nonnegative representative";
    }

    // Multiplicities of the top eigenvalue: algebraic from clustering the
    // computed spectrum, geometric from the numerical rank of M - lambda0 I.
    const double cluster = 1e-8 * std::max(1.0, scale);
    int alg = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i) - std::complex<double>(res.lambda0, 0.0)) <= cluster) ++alg;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        M - res.lambda0 * Eigen::MatrixXd::Identity(model.n, model.n));
    const Eigen::VectorXd sv = svd.singularValues();
    const double rank_tol = std::max(1e-10, model.n * 1e-15 * std::max(1.0, scale));
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > rank_tol) ++rank;
    }
    res.algebraic_multiplicity = std::max(alg, 1);
    res.geometric_multiplicity = std::max(model.n - rank, 1);
    res.defective = res.algebraic_multiplicity > res.geometric_multiplicity;
    res.degenerate = res.defective || res.nonneg_failure;

    // psi: clip the harmless residual negatives, normalize to max entry 1.
    Eigen::VectorXd psi = rp.vector.cwiseMax(0.0);
    const double pmax = psi.maxCoeff();
    if (pmax > 0.0) psi /= pmax;
    res.psi = psi;

    Eigen::VectorXd phi_raw = lp.vector.cwiseMax(0.0);
    if (phi_raw.sum() > 0.0) {
        res.phi = ProbMeasure::normalized_from(phi_raw);
    } else {
        res.phi = ProbMeasure::uniform(model.n);
        res.degenerate = true;
        res.note = "left eigenvector has zero nonnegative part";
    }

    res.psi_residual = (M * res.psi - res.lambda0 * res.psi).lpNorm<Eigen::Infinity>();
    res.phi_residual = (M.transpose() * res.phi.weights() - res.lambda0 * res.phi.weights())
                           .lpNorm<Eigen::Infinity>();
    return res;
}

double lambda0_growth(const MarkovModel& model, double t_max, int samples) {
    if (t_max <= 0.0) throw std::invalid_argument("lambda0_growth needs t_max > 0");
    if (samples < 8) throw std::invalid_argument("lambda0_growth needs at least 8 samples");
    if (t_max * model.max_V() > 700.0) {
        throw KernelOverflow("lambda0_growth window overflows e^{t*maxV}");
    }

    const double h = t_max / samples;
    const Eigen::MatrixXd step = kernel(model, h).entries;
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(model.n, model.n);
    double log_rescale = 0.0;

    std::vector<double> ts, ys;
    ts.reserve(samples);
    ys.reserve(samples);
    for (int j = 1; j <= samples; ++j) {
        B = B * step;
        double m = B.rowwise().sum().maxCoeff();
        if (m > 1e100 || m < 1e-100) {  // renormalize to keep powers in range
            B /= m;
            log_rescale += std::log(m);
            m = 1.0;
        }
        ts.push_back(j * h);
        ys.push_back(log_rescale + std::log(m));
    }

    // Least-squares slope over the last half of the window.
    const int from = samples / 2;
    double st = 0, sy = 0, stt = 0, sty = 0;
    int m = 0;
    for (int j = from; j < samples; ++j) {
        st += ts[j];
        sy += ys[j];
        stt += ts[j] * ts[j];
        sty += ts[j] * ys[j];
        ++m;
    }
    return (m * sty - st * sy) / (m * stt - st * st);
}

ProbMeasure eigen_equilibrium(const SpectralResult& spectral) {
    if (spectral.degenerate) {
        throw DegenerateSpectrum(
            "eigen_equilibrium requires a nondegenerate principal eigenpair" +
            (spectral.note.empty() ? std::string() : "; " + spectral.note));
    }
    const Eigen::VectorXd prod = spectral.phi.weights().cwiseProduct(spectral.psi);
    if (!(prod.sum() > 0.0)) {
        throw DegenerateSpectrum("left and right eigenvectors have disjoint supports");
    }
    return ProbMeasure::normalized_from(prod);
}

ProbMeasure eigen_equilibrium(const MarkovModel& model) {
    return eigen_equilibrium(principal(model));
}

}  // namespace perron
