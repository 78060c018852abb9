// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace perron {

// Input file could not be parsed; message carries file name and byte position.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Array sizes in an input file disagree with the declared state count.
class DimensionMismatch : public std::runtime_error {
public:
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// The dense eigensolver did not converge. Distinct from a degenerate result:
// degeneracy is a property of the operator, this is a numerical failure.
class EigenSolverFailure : public std::runtime_error {
public:
    explicit EigenSolverFailure(const std::string& what) : std::runtime_error(what) {}
};

// A principal eigenpair was requested from an operator whose top eigenvalue is
// defective or lacks a nonnegative eigenvector.
class DegenerateSpectrum : public std::runtime_error {
public:
    explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

// A density vanishes (or is negative) somewhere the reference measure charges.
class ZeroDensityOnSupport : public std::runtime_error {
public:
    explicit ZeroDensityOnSupport(const std::string& what) : std::runtime_error(what) {}
};

// mu charges a state that pi does not: mu is not absolutely continuous w.r.t. pi.
class AbsoluteContinuityViolation : public std::runtime_error {
public:
    explicit AbsoluteContinuityViolation(const std::string& what) : std::runtime_error(what) {}
};

// The bounded-growth hypothesis of the constructive pipeline fails: the
// rescaled semigroup norm keeps growing, so no growth constant exists.
class HypothesisViolated : public std::runtime_error {
public:
    explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

// e^{t*maxV} would overflow double precision (t*maxV > 700).
class KernelOverflow : public std::runtime_error {
public:
    explicit KernelOverflow(const std::string& what) : std::runtime_error(what) {}
};

// The Picard iteration for the Volterra equation did not contract within the
// sweep budget; the caller should refine the grid or reduce t.
class PicardDivergence : public std::runtime_error {
public:
    explicit PicardDivergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perron
