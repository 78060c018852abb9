// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "perron/model.hpp"
#include "perron/semigroup.hpp"

namespace perron {

// Default times at which the t-quantified definitions are spot checked. The
// definitions quantify over all t >= 0; three well separated times plus the
// semigroup law give practical coverage (a verification heuristic, not a
// proof).
inline const std::vector<double> kDefaultTSet = {0.25, 1.0, 3.0};

inline constexpr double kPredicateTol = 1e-7;
inline constexpr double kImplicationTol = 1e-6;

struct PredicateCheck {
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;  // the threshold residual was compared against
};

// Ground-state transform of the tilted kernel: entries
// e^{-lambda0 t} kernel(t)[x][y] psi[y] / psi[x]. Rows sum to one exactly when
// psi is a ground state, which is what turns the tilted dynamics back into a
// Markov one.
//
// The PositiveFunction overload requires full support. The Density overloads
// treat zero entries of psi as off the support of the measure mu = psi * base
// and replace them by one before transforming; verdicts about the transform
// only ever quantify over supp(mu), where this convention is invisible. The
// overload taking mu explicitly rejects a psi that vanishes where mu charges.
Kernel h_kernel(const MarkovModel& model, const PositiveFunction& psi, double lambda0, double t);
Kernel h_kernel(const MarkovModel& model, const Density& psi, double lambda0, double t);
Kernel h_kernel(const MarkovModel& model, const Density& psi, const ProbMeasure& mu,
                double lambda0, double t);

// Does e^{-lambda0 t} P_t^V psi = psi hold on supp(mu) at every t in t_set?
// residual is the worst absolute defect; pass compares it against
// tol * max of |psi| over supp(mu).
PredicateCheck check_ground_state(const MarkovModel& model, const Eigen::VectorXd& psi,
                                  const ProbMeasure& mu, double lambda0,
                                  const std::vector<double>& t_set = kDefaultTSet,
                                  double tol = kPredicateTol);

// Does e^{-lambda0 t} pi^T kernel(t) = pi^T hold at every t in t_set?
// residual is the worst l1 defect; pass compares it against tol.
PredicateCheck check_ground_measure(const MarkovModel& model, const ProbMeasure& pi,
                                    double lambda0, const std::vector<double>& t_set = kDefaultTSet,
                                    double tol = kPredicateTol);

// L1(pi) contraction of the rescaled tilted semigroup: checks
// sum pi|e^{-lambda0 t}(P_t^V f)| <= sum pi|f| + 1e-9 for the given signed f.
// Meaningful when pi passed check_ground_measure.
bool contraction_check(const MarkovModel& model, const ProbMeasure& pi, double lambda0, double t,
                       const Eigen::VectorXd& f);

// Joint report on (pi, mu, psi = dmu/dpi): the three defining predicates, the
// finiteness of H(mu,pi), the invariance of mu under the psi-transform, and
// the three two-imply-the-third closure checks (premises judged at tol_pred,
// conclusions at the relaxed tol_impl).
struct TripleReport {
    double lambda0 = 0.0;
    PredicateCheck ground_measure;
    PredicateCheck ground_state;
    PredicateCheck equilibrium;  // residual is the tilted rate value I^V(mu)
    bool entropy_finite = false;
    double invariance_residual = 0.0;  // worst l1 defect of mu^T h_kernel - mu^T over t_set

    struct Implication {
        std::string conclusion;  // name of the predicate being implied
        bool premises_pass = false;
        bool conclusion_pass = false;  // at the relaxed tolerance
        bool ok = false;               // vacuous or conclusion holds
    };
    std::vector<Implication> implications;
};

// lambda0 defaulting to NaN means: compute it from the spectral route.
TripleReport verify_triple(const MarkovModel& model, const ProbMeasure& pi, const ProbMeasure& mu,
                           const std::vector<double>& t_set = kDefaultTSet,
                           double tol_pred = kPredicateTol, double tol_impl = kImplicationTol,
                           double lambda0 = std::numeric_limits<double>::quiet_NaN());

}  // namespace perron
