#include "dynsched/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dynsched {

NetworkInstance::NetworkInstance(std::vector<std::string> node_names, std::vector<Link> links,
                                 int max_path_length)
    : nodes_(std::move(node_names)), links_(std::move(links)),
      max_path_length_(max_path_length) {
    if (max_path_length_ < 1)
        throw std::invalid_argument("max path length D must be at least 1");
    std::unordered_set<std::string> seen;
    for (const auto& name : nodes_) {
        if (name.empty()) throw std::invalid_argument("empty node name");
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate node name: " + name);
    }
    const int n = node_count();
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& l = links_[i];
        if (l.sender < 0 || l.sender >= n || l.receiver < 0 || l.receiver >= n)
            throw std::invalid_argument("link " + std::to_string(i) +
                                        " references an unknown node");
        if (l.sender == l.receiver)
            throw std::invalid_argument("link " + std::to_string(i) +
                                        " has identical endpoints");
    }
    size_ = std::max(link_count(), max_path_length_);
}

std::optional<int> NetworkInstance::node_index(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

void validate_path(const NetworkInstance& net, const RoutePath& path) {
    if (path.hops.empty()) throw std::invalid_argument("empty route path");
    if (path.length() > net.max_path_length())
        throw std::invalid_argument("path length " + std::to_string(path.length()) +
                                    " exceeds bound D = " +
                                    std::to_string(net.max_path_length()));
    for (std::size_t i = 0; i < path.hops.size(); ++i) {
        const LinkId e = path.hops[i];
        if (e < 0 || e >= net.link_count())
            throw std::invalid_argument("path hop " + std::to_string(i) +
                                        " uses unknown link " + std::to_string(e));
        if (i > 0) {
            const LinkId prev = path.hops[i - 1];
            if (net.link(prev).receiver != net.link(e).sender)
                throw std::invalid_argument("path breaks at hop " + std::to_string(i) +
                                            ": link " + std::to_string(prev) +
                                            " does not feed link " + std::to_string(e));
        }
    }
}

InterferenceMatrix::InterferenceMatrix(int link_count) : n_(link_count) {
    if (link_count < 0) throw std::invalid_argument("negative matrix size");
    rows_.resize(static_cast<std::size_t>(link_count));
}

InterferenceMatrix InterferenceMatrix::identity(int link_count) {
    InterferenceMatrix w(link_count);
    for (int e = 0; e < link_count; ++e) w.set(e, e, 1.0);
    return w;
}

InterferenceMatrix InterferenceMatrix::all_ones(int link_count) {
    InterferenceMatrix w(link_count);
    for (int r = 0; r < link_count; ++r)
        for (int c = 0; c < link_count; ++c) w.set(r, c, 1.0);
    return w;
}

void InterferenceMatrix::set(int row, int col, double value) {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::out_of_range("matrix index out of range");
    auto& r = rows_[static_cast<std::size_t>(row)];
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const MatrixEntry& e, int c) { return e.col < c; });
    if (it != r.end() && it->col == col) {
        if (value == 0.0)
            r.erase(it);
        else
            it->value = value;
    } else if (value != 0.0) {
        r.insert(it, MatrixEntry{col, value});
    }
}

double InterferenceMatrix::at(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_)
        throw std::out_of_range("matrix index out of range");
    const auto& r = rows_[static_cast<std::size_t>(row)];
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const MatrixEntry& e, int c) { return e.col < c; });
    if (it != r.end() && it->col == col) return it->value;
    return 0.0;
}

std::size_t InterferenceMatrix::nonzero_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total;
}

std::int64_t RequestVector::total() const {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

RequestVector request_vector(int link_count, std::span<const RoutePath> paths) {
    RequestVector r;
    r.counts.assign(static_cast<std::size_t>(link_count), 0);
    for (const auto& path : paths)
        for (LinkId e : path.hops) {
            if (e < 0 || e >= link_count)
                throw std::invalid_argument("request on unknown link " + std::to_string(e));
            ++r.counts[static_cast<std::size_t>(e)];
        }
    return r;
}

double interference_measure(const InterferenceMatrix& w, const RequestVector& r) {
    if (static_cast<int>(r.counts.size()) != w.size())
        throw std::invalid_argument("request vector length does not match matrix size");
    double best = 0.0;
    for (int row = 0; row < w.size(); ++row) {
        double sum = 0.0;
        for (const MatrixEntry& e : w.row(row))
            sum += e.value * static_cast<double>(r.counts[static_cast<std::size_t>(e.col)]);
        if (sum > best) best = sum;
    }
    return best;
}

double interference_measure(const InterferenceMatrix& w, std::span<const double> load) {
    if (static_cast<int>(load.size()) != w.size())
        throw std::invalid_argument("load vector length does not match matrix size");
    double best = 0.0;
    for (int row = 0; row < w.size(); ++row) {
        double sum = 0.0;
        for (const MatrixEntry& e : w.row(row))
            sum += e.value * load[static_cast<std::size_t>(e.col)];
        if (sum > best) best = sum;
    }
    return best;
}

MatrixValidation validate_matrix(const InterferenceMatrix& w, double tol) {
    MatrixValidation v;
    for (int row = 0; row < w.size(); ++row) {
        const double diag = w.at(row, row);
        if (std::abs(diag - 1.0) > tol) {
            v.ok = false;
            v.violations.push_back({MatrixViolation::Kind::diagonal, row, row, diag});
        }
        for (const MatrixEntry& e : w.row(row)) {
            if (e.value < -tol || e.value > 1.0 + tol) {
                v.ok = false;
                v.violations.push_back({MatrixViolation::Kind::range, row, e.col, e.value});
            }
        }
    }
    return v;
}

}  // namespace dynsched
