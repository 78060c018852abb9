// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <random>

#include "perron/model.hpp"

namespace testutil {

// 2-state model with an absorbing state 0 whose tilted generator is a
// nilpotent Jordan block: L=[[0,0],[1,-1]], V=(0,1).
inline perron::MarkovModel jordan() {
    perron::MarkovModel m;
    m.n = 2;
    m.L.resize(2, 2);
    m.L << 0, 0, 1, -1;
    m.V.resize(2);
    m.V << 0, 1;
    return m;
}

// symmetric 2-state chain with rates a=b=1 and V=(0,1); principal eigenvalue
// (sqrt(5)-1)/2 with fully known eigendata
inline perron::MarkovModel chain2() {
    perron::MarkovModel m;
    m.n = 2;
    m.L.resize(2, 2);
    m.L << -1, 1, 1, -1;
    m.V.resize(2);
    m.V << 0, 1;
    return m;
}

inline perron::MarkovModel zero_generator(int n, const Eigen::VectorXd& V) {
    perron::MarkovModel m;
    m.n = n;
    m.L = Eigen::MatrixXd::Zero(n, n);
    m.V = V;
    return m;
}

// complete-graph rates U[0.1,3], potential U[-1,1]; always irreducible
inline perron::MarkovModel random_irreducible(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> rate(0.1, 3.0);
    std::uniform_real_distribution<double> pot(-1.0, 1.0);
    perron::MarkovModel m;
    m.n = n;
    m.L.setZero(n, n);
    m.V.resize(n);
    for (int x = 0; x < n; ++x) {
        double s = 0.0;
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            m.L(x, y) = rate(rng);
            s += m.L(x, y);
        }
        m.L(x, x) = -s;
        m.V(x) = pot(rng);
    }
    return m;
}

// detailed-balance chain: symmetric conductances w and positive weights rho
// with L_xy = w_xy / rho_x, so L is self-adjoint in l2(rho)
inline perron::MarkovModel random_reversible(int n, std::mt19937& rng, Eigen::VectorXd* rho_out) {
    std::uniform_real_distribution<double> cond(0.1, 3.0);
    std::uniform_real_distribution<double> mass(0.2, 1.0);
    std::uniform_real_distribution<double> pot(-1.0, 1.0);
    Eigen::VectorXd rho(n);
    for (int x = 0; x < n; ++x) rho(x) = mass(rng);
    rho /= rho.sum();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) w(x, y) = w(y, x) = cond(rng);
    }
    perron::MarkovModel m;
    m.n = n;
    m.L.setZero(n, n);
    m.V.resize(n);
    for (int x = 0; x < n; ++x) {
        double s = 0.0;
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            m.L(x, y) = w(x, y) / rho(x);
            s += m.L(x, y);
        }
        m.L(x, x) = -s;
        m.V(x) = pot(rng);
    }
    if (rho_out) *rho_out = rho;
    return m;
}

// interior random point of the simplex
inline perron::ProbMeasure random_measure(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    Eigen::VectorXd w(n);
    for (int x = 0; x < n; ++x) w(x) = u(rng);
    return perron::ProbMeasure::normalized_from(w);
}

inline Eigen::VectorXd random_positive(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.2, 2.0);
    Eigen::VectorXd v(n);
    for (int x = 0; x < n; ++x) v(x) = u(rng);
    return v;
}

// stationary distribution of the plain chain: the kernel of L^T intersected
// with the simplex, solved as a bordered linear system (independent of any
// eigensolver)
inline perron::ProbMeasure stationary_distribution(const perron::MarkovModel& m) {
    Eigen::MatrixXd A = m.L.transpose();
    A.row(m.n - 1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m.n);
    b(m.n - 1) = 1.0;
    Eigen::VectorXd pi = A.fullPivLu().solve(b);
    return perron::ProbMeasure::normalized_from(pi);
}

// Dirichlet-form value -<sqrt(f), L sqrt(f)>_rho with f = dmu/drho; for
// reversible L this is the rate function in closed quadratic form
inline double dirichlet_rate(const perron::MarkovModel& m, const Eigen::VectorXd& rho,
                             const perron::ProbMeasure& mu) {
    Eigen::VectorXd root(m.n);
    for (int x = 0; x < m.n; ++x) root(x) = std::sqrt(mu[x] / rho(x));
    const Eigen::VectorXd Lroot = m.L * root;
    double s = 0.0;
    for (int x = 0; x < m.n; ++x) s += rho(x) * root(x) * Lroot(x);
    return -s;
}

}  // namespace testutil
