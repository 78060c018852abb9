// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <string>

#include "perron/model.hpp"

namespace perron {

// Principal eigendata of L + diag(V). psi is the right eigenvector normalized
// to max entry 1, phi the left eigenvector normalized to total mass 1. The
// result is degenerate when the top eigenvalue is defective (algebraic
// multiplicity exceeds geometric) or no candidate eigenvector is nonnegative;
// lambda0 and best-effort vectors are still reported in that case.
struct SpectralResult {
    double lambda0 = 0.0;
    Eigen::VectorXd psi;
    ProbMeasure phi;
    bool degenerate = false;
    bool defective = false;
    bool nonneg_failure = false;
    int algebraic_multiplicity = 1;
    int geometric_multiplicity = 1;
    double psi_residual = 0.0;  // |(L+V)psi - lambda0 psi|_inf
    double phi_residual = 0.0;  // |phi^T (L+V) - lambda0 phi^T|_inf
    std::string note;

    SpectralResult() : phi(ProbMeasure::uniform(1)) {}
};

// Dense full-spectrum solve. Ties in max real part (within 1e-10) prefer an
// eigenvalue whose eigenspace contains a nonnegative vector, then the
// smallest index. Throws EigenSolverFailure if the QR iteration fails; solver
// failure is never reported as degeneracy.
SpectralResult principal(const MarkovModel& model);

// Growth-limit route: least-squares slope of log |P_t^V|_inf over the last
// half of a uniform sample of (0, t_max]. Independent of principal().
double lambda0_growth(const MarkovModel& model, double t_max, int samples = 200);

// Equilibrium measure from the eigendata: mu = (phi .* psi) / <phi, psi>.
// Throws DegenerateSpectrum when principal() reports degeneracy or the
// product has zero mass.
ProbMeasure eigen_equilibrium(const MarkovModel& model);
ProbMeasure eigen_equilibrium(const SpectralResult& spectral);

}  // namespace perron
