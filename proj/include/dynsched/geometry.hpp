#pragma once

// Geometric side of the SINR model: node positions or an explicit distance
// table, path-loss parameters, and per-link transmission powers.

#include <array>
#include <vector>

#include "dynsched/core.hpp"

namespace dynsched {

struct MetricWarning {
    enum class Kind { asymmetric, zero_off_diagonal, negative, triangle };
    Kind kind;
    int a;
    int b;
    int c;  // third point of a triangle violation, -1 otherwise
};

class GeometricInstance {
public:
    static GeometricInstance from_positions(std::vector<std::array<double, 2>> positions);
    // table must be square; only the values are taken on trust, validate_metric reports issues
    static GeometricInstance from_distance_table(std::vector<std::vector<double>> table);

    int point_count() const { return n_; }
    double distance(int a, int b) const;

    // Metric defects (asymmetry, zero or negative off-diagonal distances,
    // triangle-inequality violations) are reported as warnings, never errors.
    std::vector<MetricWarning> validate_metric(double tol = 1e-9) const;

private:
    GeometricInstance() = default;
    int n_ = 0;
    bool from_table_ = false;
    std::vector<std::array<double, 2>> positions_;
    std::vector<double> table_;  // row-major n x n
};

struct SinrParams {
    double alpha;  // path-loss exponent, > 0
    double beta;   // SINR threshold, > 0
    double nu;     // ambient noise, >= 0

    void validate() const;  // throws std::invalid_argument on a bad field
};

enum class PowerKind { uniform, linear, monotone_sublinear, custom };

struct PowerAssignment {
    std::vector<double> power;  // per link, strictly positive
    PowerKind kind = PowerKind::custom;

    static PowerAssignment uniform(int link_count, double level = 1.0);
};

double link_length(const NetworkInstance& net, const GeometricInstance& geo, LinkId e);

}  // namespace dynsched
