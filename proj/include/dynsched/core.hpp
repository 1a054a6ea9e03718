#pragma once

// Network model: links, routed packets, the interference matrix W and the
// load measure I = max_e sum_e' W[e,e'] * R(e').

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynsched {

using LinkId = int;

struct Link {
    int sender;
    int receiver;
};

class NetworkInstance {
public:
    // max_path_length is the bound D on route lengths; size() = max(|E|, D).
    NetworkInstance(std::vector<std::string> node_names, std::vector<Link> links,
                    int max_path_length);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int link_count() const { return static_cast<int>(links_.size()); }
    const Link& link(LinkId e) const { return links_[static_cast<std::size_t>(e)]; }
    const std::string& node_name(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
    std::optional<int> node_index(std::string_view name) const;
    int max_path_length() const { return max_path_length_; }
    int size() const { return size_; }

private:
    std::vector<std::string> nodes_;
    std::vector<Link> links_;
    int max_path_length_;
    int size_;
};

struct RoutePath {
    std::vector<LinkId> hops;  // consecutive links, hop i delivers to hop i+1's sender

    int length() const { return static_cast<int>(hops.size()); }
};

// Throws std::invalid_argument naming the offending hop if the path is empty,
// uses an unknown link, breaks the chain, or exceeds the length bound D.
void validate_path(const NetworkInstance& net, const RoutePath& path);

enum class PacketState { waiting, active, failed, delivered };

struct Packet {
    std::uint64_t id = 0;
    std::shared_ptr<const RoutePath> path;
    int hop_index = 1;  // next hop to cross, 1-based; delivered once hop_index == d + 1
    PacketState state = PacketState::waiting;
    std::int64_t injection_slot = 0;
    std::int64_t admission_frame = 0;
    std::optional<std::int64_t> delivery_slot;
    std::optional<std::int64_t> fail_slot;  // first failure, set once

    int path_length() const { return path->length(); }
    int remaining_hops() const { return path_length() - hop_index + 1; }
    bool delivered() const { return hop_index > path_length(); }
    LinkId next_hop() const { return path->hops[static_cast<std::size_t>(hop_index - 1)]; }
};

struct MatrixEntry {
    int col;
    double value;
};

// Row-sparse square matrix with entries expected in [0,1]. Zero assignments
// erase the entry so the stored form stays canonical.
class InterferenceMatrix {
public:
    explicit InterferenceMatrix(int link_count);

    static InterferenceMatrix identity(int link_count);
    static InterferenceMatrix all_ones(int link_count);

    int size() const { return n_; }
    void set(int row, int col, double value);
    double at(int row, int col) const;
    std::span<const MatrixEntry> row(int r) const {
        return rows_[static_cast<std::size_t>(r)];
    }
    std::size_t nonzero_count() const;

private:
    int n_;
    std::vector<std::vector<MatrixEntry>> rows_;
};

struct RequestVector {
    std::vector<std::int64_t> counts;  // per-link pending request counts

    std::int64_t total() const;
};

// Sums one count per path hop. Throws naming the offending link id if a hop
// falls outside [0, link_count).
RequestVector request_vector(int link_count, std::span<const RoutePath> paths);

// I = max over rows of the W-weighted load. Row sums run in ascending column
// order so results are reproducible addition-for-addition.
double interference_measure(const InterferenceMatrix& w, const RequestVector& r);
double interference_measure(const InterferenceMatrix& w, std::span<const double> load);

struct MatrixViolation {
    enum class Kind { diagonal, range };
    Kind kind;
    int row;
    int col;
    double value;
};

struct MatrixValidation {
    bool ok = true;
    std::vector<MatrixViolation> violations;
};

// Checks unit diagonal and entries within [0,1], both to absolute tolerance.
MatrixValidation validate_matrix(const InterferenceMatrix& w, double tol = 1e-9);

}  // namespace dynsched
