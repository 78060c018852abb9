// Copyright 2026 The perron Authors
// SPDX-License-Identifier: Apache-2.0

#include "perron/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace perron {

using nlohmann::json;

Eigen::MatrixXd MarkovModel::tilted_generator() const {
    Eigen::MatrixXd M = L;
    M.diagonal() += V;
    return M;
}

ValidationReport validate(const MarkovModel& model) {
    ValidationReport report;
    auto flag = [&report](std::string msg, int row, int col) {
        report.ok = false;
        report.issues.push_back({std::move(msg), row, col});
    };

    if (model.n < 1) {
        flag("state count must be at least 1, got " + std::to_string(model.n), -1, -1);
        return report;
    }
    if (model.L.rows() != model.n || model.L.cols() != model.n) {
        std::ostringstream os;
        os << "L must be " << model.n << "x" << model.n << ", got " << model.L.rows() << "x"
           << model.L.cols();
        flag(os.str(), -1, -1);
        return report;
    }
    if (model.V.size() != model.n) {
        flag("V must have length " + std::to_string(model.n) + ", got " +
                 std::to_string(model.V.size()),
             -1, -1);
        return report;
    }

    for (int x = 0; x < model.n; ++x) {
        for (int y = 0; y < model.n; ++y) {
            const double v = model.L(x, y);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "L(" << x << "," << y << ") is not finite";
                flag(os.str(), x, y);
            } else if (x != y && v < 0.0) {
                std::ostringstream os;
                os << "off-diagonal rate L(" << x << "," << y << ") = " << v << " is negative";
                flag(os.str(), x, y);
            }
        }
        const double rs = model.L.row(x).sum();
        if (std::isfinite(rs) && std::abs(rs) > kRowSumTol) {
            std::ostringstream os;
            os << "row " << x << " of L sums to " << rs << " (|sum| > " << kRowSumTol << ")";
            flag(os.str(), x, -1);
        }
    }
    for (int x = 0; x < model.n; ++x) {
        if (!std::isfinite(model.V(x))) {
            flag("V(" + std::to_string(x) + ") is not finite", x, -1);
        }
    }
    return report;
}

namespace {

// Reachability over the off-diagonal support from a start vertex, following
// edges forward (transpose=false) or backward.
std::vector<char> reachable(const Eigen::MatrixXd& L, int start, bool transpose) {
    const int n = static_cast<int>(L.rows());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y = 0; y < n; ++y) {
            if (y == x || seen[y]) continue;
            const double rate = transpose ? L(y, x) : L(x, y);
            if (rate > 0.0) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const MarkovModel& model) {
    if (model.n <= 1) return true;
    const auto fwd = reachable(model.L, 0, false);
    const auto bwd = reachable(model.L, 0, true);
    for (int x = 0; x < model.n; ++x) {
        if (!fwd[x] || !bwd[x]) return false;
    }
    return true;
}

ProbMeasure::ProbMeasure(Eigen::VectorXd weights) : w_(std::move(weights)) {
    if (w_.size() == 0) throw std::invalid_argument("probability measure on empty space");
    for (Eigen::Index x = 0; x < w_.size(); ++x) {
        if (!(w_(x) >= 0.0)) {  // catches negatives and NaN
            throw std::invalid_argument("probability weight " + std::to_string(x) +
                                        " is negative or not a number");
        }
    }
    const double mass = w_.sum();
    if (std::abs(mass - 1.0) > kMeasureMassTol) {
        std::ostringstream os;
        os << "weights sum to " << mass << ", not 1 (tolerance " << kMeasureMassTol
           << "); use ProbMeasure::normalized_from for explicit renormalization";
        throw std::invalid_argument(os.str());
    }
}

ProbMeasure ProbMeasure::normalized_from(const Eigen::VectorXd& weights) {
    for (Eigen::Index x = 0; x < weights.size(); ++x) {
        if (!(weights(x) >= 0.0)) {
            throw std::invalid_argument("cannot normalize: weight " + std::to_string(x) +
                                        " is negative or not a number");
        }
    }
    const double mass = weights.sum();
    if (!(mass > 0.0)) throw std::invalid_argument("cannot normalize: total mass is zero");
    return ProbMeasure(weights / mass);
}

ProbMeasure ProbMeasure::uniform(int n) {
    return ProbMeasure(Eigen::VectorXd::Constant(n, 1.0 / n));
}

ProbMeasure ProbMeasure::point_mass(int n, int state) {
    if (state < 0 || state >= n) throw std::invalid_argument("point mass state out of range");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w(state) = 1.0;
    return ProbMeasure(std::move(w));
}

std::vector<int> ProbMeasure::support() const {
    std::vector<int> s;
    for (Eigen::Index x = 0; x < w_.size(); ++x) {
        if (w_(x) > 0.0) s.push_back(static_cast<int>(x));
    }
    return s;
}

double total_variation(const ProbMeasure& a, const ProbMeasure& b) {
    return (a.weights() - b.weights()).lpNorm<1>();
}

PositiveFunction::PositiveFunction(Eigen::VectorXd values) : v_(std::move(values)) {
    if (v_.size() == 0) throw std::invalid_argument("positive function on empty space");
    for (Eigen::Index x = 0; x < v_.size(); ++x) {
        if (!(v_(x) > 0.0)) {
            throw std::invalid_argument("entry " + std::to_string(x) +
                                        " of a positive function is not > 0");
        }
    }
}

Density::Density(Eigen::VectorXd values, ProbMeasure base)
    : v_(std::move(values)), base_(std::move(base)) {
    if (v_.size() != base_.dim()) {
        throw std::invalid_argument("density and base measure have different dimensions");
    }
    double mass = 0.0;
    for (int x = 0; x < base_.dim(); ++x) {
        if (base_[x] > 0.0) {
            if (!(v_(x) >= 0.0)) {
                throw std::invalid_argument("density is negative (or NaN) at charged state " +
                                            std::to_string(x));
            }
            mass += v_(x) * base_[x];
        }
    }
    if (std::abs(mass - 1.0) > kDensityMassTol) {
        std::ostringstream os;
        os << "density integrates to " << mass << " against its base, not 1 (tolerance "
           << kDensityMassTol << ")";
        throw std::invalid_argument(os.str());
    }
}

Density Density::radon_nikodym(const ProbMeasure& mu, const ProbMeasure& pi) {
    if (mu.dim() != pi.dim()) {
        throw std::invalid_argument("measures live on different spaces");
    }
    Eigen::VectorXd v = Eigen::VectorXd::Zero(mu.dim());
    for (int x = 0; x < mu.dim(); ++x) {
        if (pi[x] > 0.0) {
            v(x) = mu[x] / pi[x];
        } else if (mu[x] > 0.0) {
            throw AbsoluteContinuityViolation("mu charges state " + std::to_string(x) +
                                              " but pi does not");
        }
    }
    return Density(std::move(v), pi);
}

namespace {

Eigen::VectorXd parse_vector(const json& arr, const std::string& field, int expected,
                             const std::string& path) {
    if (!arr.is_array()) {
        throw ParseError(path + ": field '" + field + "' must be an array of numbers");
    }
    if (static_cast<int>(arr.size()) != expected) {
        std::ostringstream os;
        os << path << ": field '" << field << "' has length " << arr.size() << ", expected "
           << expected;
        throw DimensionMismatch(os.str());
    }
    Eigen::VectorXd v(expected);
    for (int i = 0; i < expected; ++i) {
        if (!arr[i].is_number()) {
            std::ostringstream os;
            os << path << ": field '" << field << "' entry " << i << " is not a number";
            throw ParseError(os.str());
        }
        v(i) = arr[i].get<double>();
    }
    return v;
}

}  // namespace

ModelFile load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << path << ": parse error at byte " << e.byte << ": " << e.what();
        throw ParseError(os.str());
    }
    if (!doc.is_object()) throw ParseError(path + ": top-level value must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) {
        throw ParseError(path + ": field 'n' (integer state count) is required");
    }

    ModelFile file;
    file.model.n = doc["n"].get<int>();
    if (file.model.n < 1) throw ParseError(path + ": field 'n' must be >= 1");

    if (!doc.contains("L") || !doc["L"].is_array()) {
        throw ParseError(path + ": field 'L' (array of rows) is required");
    }
    const json& rows = doc["L"];
    if (static_cast<int>(rows.size()) != file.model.n) {
        std::ostringstream os;
        os << path << ": field 'L' has " << rows.size() << " rows, expected " << file.model.n;
        throw DimensionMismatch(os.str());
    }
    file.model.L.resize(file.model.n, file.model.n);
    for (int x = 0; x < file.model.n; ++x) {
        const Eigen::VectorXd row =
            parse_vector(rows[x], "L[" + std::to_string(x) + "]", file.model.n, path);
        file.model.L.row(x) = row.transpose();
    }

    if (!doc.contains("V")) throw ParseError(path + ": field 'V' (potential) is required");
    file.model.V = parse_vector(doc["V"], "V", file.model.n, path);

    if (doc.contains("measures")) {
        if (!doc["measures"].is_object()) {
            throw ParseError(path + ": field 'measures' must be an object of named arrays");
        }
        for (const auto& [name, arr] : doc["measures"].items()) {
            file.measures[name] = parse_vector(arr, "measures." + name, file.model.n, path);
        }
    }
    return file;
}

MarkovModel load_model(const std::string& path) { return load_model_file(path).model; }

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

}  // namespace

void save_model_file(const ModelFile& file, const std::string& path) {
    json doc;
    doc["n"] = file.model.n;
    json rows = json::array();
    for (int x = 0; x < file.model.n; ++x) {
        rows.push_back(vector_to_json(file.model.L.row(x).transpose()));
    }
    doc["L"] = rows;
    doc["V"] = vector_to_json(file.model.V);
    if (!file.measures.empty()) {
        json ms = json::object();
        for (const auto& [name, v] : file.measures) ms[name] = vector_to_json(v);
        doc["measures"] = ms;
    }

    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    // nlohmann serializes doubles with the shortest representation that parses
    // back to the same bits (<= 17 significant digits), so the round trip is exact.
    out << doc.dump(2) << "\n";
}

void save_model(const MarkovModel& model, const std::string& path) {
    save_model_file(ModelFile{model, {}}, path);
}

}  // namespace perron
