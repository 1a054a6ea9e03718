#include "dynsched/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace dynsched {

GeometricInstance GeometricInstance::from_positions(
    std::vector<std::array<double, 2>> positions) {
    GeometricInstance g;
    g.n_ = static_cast<int>(positions.size());
    g.from_table_ = false;
    g.positions_ = std::move(positions);
    return g;
}

GeometricInstance GeometricInstance::from_distance_table(
    std::vector<std::vector<double>> table) {
    GeometricInstance g;
    g.n_ = static_cast<int>(table.size());
    g.from_table_ = true;
    g.table_.reserve(static_cast<std::size_t>(g.n_) * static_cast<std::size_t>(g.n_));
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != g.n_)
            throw std::invalid_argument("distance table is not square");
        for (double d : row) g.table_.push_back(d);
    }
    return g;
}

double GeometricInstance::distance(int a, int b) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_)
        throw std::out_of_range("distance index out of range");
    if (from_table_)
        return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(b)];
    const auto& p = positions_[static_cast<std::size_t>(a)];
    const auto& q = positions_[static_cast<std::size_t>(b)];
    return std::hypot(p[0] - q[0], p[1] - q[1]);
}

std::vector<MetricWarning> GeometricInstance::validate_metric(double tol) const {
    std::vector<MetricWarning> warnings;
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            const double d = distance(a, b);
            if (d < -tol)
                warnings.push_back({MetricWarning::Kind::negative, a, b, -1});
            if (a != b && std::abs(d) <= tol)
                warnings.push_back({MetricWarning::Kind::zero_off_diagonal, a, b, -1});
            if (b > a && std::abs(d - distance(b, a)) > tol)
                warnings.push_back({MetricWarning::Kind::asymmetric, a, b, -1});
        }
    }
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c) {
                if (a == b || b == c || a == c) continue;
                if (distance(a, c) > distance(a, b) + distance(b, c) + tol)
                    warnings.push_back({MetricWarning::Kind::triangle, a, c, b});
            }
    return warnings;
}

void SinrParams::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (nu < 0.0) throw std::invalid_argument("nu must be nonnegative");
}

PowerAssignment PowerAssignment::uniform(int link_count, double level) {
    PowerAssignment p;
    p.power.assign(static_cast<std::size_t>(link_count), level);
    p.kind = PowerKind::uniform;
    return p;
}

double link_length(const NetworkInstance& net, const GeometricInstance& geo, LinkId e) {
    const Link& l = net.link(e);
    return geo.distance(l.sender, l.receiver);
}

}  // namespace dynsched
