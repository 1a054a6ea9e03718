#include "dynsched/builders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dynsched {

namespace {

constexpr double kRelTol = 1e-9;

double received_power(double power, double dist, double alpha) {
    if (dist <= 0.0) return std::numeric_limits<double>::infinity();
    return power / std::pow(dist, alpha);
}

void check_power_size(const NetworkInstance& net, const PowerAssignment& power) {
    if (static_cast<int>(power.power.size()) != net.link_count())
        throw std::invalid_argument("power assignment size does not match link count");
    for (std::size_t i = 0; i < power.power.size(); ++i)
        if (!(power.power[i] > 0.0))
            throw std::invalid_argument("nonpositive power on link " + std::to_string(i));
}

// Length ties break by link index so exactly one of each pair counts as shorter.
bool shorter_link(const NetworkInstance& net, const GeometricInstance& geo, LinkId a,
                  LinkId b) {
    const double da = link_length(net, geo, a);
    const double db = link_length(net, geo, b);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

Affectance affectance(const NetworkInstance& net, const GeometricInstance& geo,
                      const SinrParams& params, const PowerAssignment& power,
                      LinkId source, LinkId victim) {
    if (source == victim) throw std::invalid_argument("affectance needs two distinct links");
    params.validate();
    const Link& src = net.link(source);
    const Link& vic = net.link(victim);
    const double own = received_power(power.power[static_cast<std::size_t>(victim)],
                                      geo.distance(vic.sender, vic.receiver), params.alpha);
    const double margin = own - params.beta * params.nu;
    if (!(margin > 0.0)) return {1.0, false};
    const double cross_dist = geo.distance(src.sender, vic.receiver);
    if (cross_dist <= 0.0) return {1.0, true};
    const double cross = received_power(power.power[static_cast<std::size_t>(source)],
                                        cross_dist, params.alpha);
    if (std::isinf(margin)) return {0.0, true};
    return {std::min(1.0, params.beta * cross / margin), true};
}

namespace {

std::vector<LinkId> infeasible_under(const NetworkInstance& net, const GeometricInstance& geo,
                                     const SinrParams& params, const PowerAssignment& power) {
    std::vector<LinkId> bad;
    for (LinkId e = 0; e < net.link_count(); ++e) {
        const Link& l = net.link(e);
        const double own = received_power(power.power[static_cast<std::size_t>(e)],
                                          geo.distance(l.sender, l.receiver), params.alpha);
        if (!(own - params.beta * params.nu > 0.0)) bad.push_back(e);
    }
    return bad;
}

}  // namespace

WBuild build_w_linear(const NetworkInstance& net, const GeometricInstance& geo,
                      const SinrParams& params, const PowerAssignment& power) {
    params.validate();
    check_power_size(net, power);
    // linear means every link receives its own signal at the same strength
    double ref = -1.0;
    int ref_link = -1;
    for (LinkId e = 0; e < net.link_count(); ++e) {
        const double d = link_length(net, geo, e);
        if (d <= 0.0)
            throw std::invalid_argument("zero-length link " + std::to_string(e) +
                                        " cannot carry a linear power assignment");
        const double ratio = power.power[static_cast<std::size_t>(e)] / std::pow(d, params.alpha);
        if (ref_link < 0) {
            ref = ratio;
            ref_link = e;
        } else if (std::abs(ratio - ref) > kRelTol * std::max(std::abs(ratio), std::abs(ref))) {
            throw std::invalid_argument(
                "powers are not linear: links " + std::to_string(ref_link) + " and " +
                std::to_string(e) + " receive their own signals at different strengths");
        }
    }
    WBuild out{InterferenceMatrix(net.link_count()), {}};
    out.infeasible_links = infeasible_under(net, geo, params, power);
    for (LinkId l = 0; l < net.link_count(); ++l) {
        out.w.set(l, l, 1.0);
        for (LinkId lp = 0; lp < net.link_count(); ++lp) {
            if (lp == l) continue;
            const double a = affectance(net, geo, params, power, lp, l).value;
            if (a != 0.0) out.w.set(l, lp, a);
        }
    }
    return out;
}

WBuild build_w_monotone(const NetworkInstance& net, const GeometricInstance& geo,
                        const SinrParams& params, const PowerAssignment& power) {
    params.validate();
    check_power_size(net, power);
    for (LinkId a = 0; a < net.link_count(); ++a) {
        for (LinkId b = 0; b < net.link_count(); ++b) {
            if (a == b || !shorter_link(net, geo, a, b)) continue;
            const double pa = power.power[static_cast<std::size_t>(a)];
            const double pb = power.power[static_cast<std::size_t>(b)];
            const double da = link_length(net, geo, a);
            const double db = link_length(net, geo, b);
            const double scale = std::max(pa, pb);
            if (pa > pb + kRelTol * scale)
                throw std::invalid_argument("powers are not monotone: link " +
                                            std::to_string(a) + " vs " + std::to_string(b));
            const double sa = received_power(pa, da, params.alpha);
            const double sb = received_power(pb, db, params.alpha);
            if (sa < sb - kRelTol * std::max(sa, sb))
                throw std::invalid_argument("powers are not sublinear: link " +
                                            std::to_string(a) + " vs " + std::to_string(b));
        }
    }
    WBuild out{InterferenceMatrix(net.link_count()), {}};
    out.infeasible_links = infeasible_under(net, geo, params, power);
    for (LinkId l = 0; l < net.link_count(); ++l) {
        out.w.set(l, l, 1.0);
        for (LinkId lp = 0; lp < net.link_count(); ++lp) {
            if (lp == l || !shorter_link(net, geo, l, lp)) continue;
            const double a1 = affectance(net, geo, params, power, l, lp).value;
            const double a2 = affectance(net, geo, params, power, lp, l).value;
            const double v = std::max(a1, a2);
            if (v != 0.0) out.w.set(l, lp, v);
        }
    }
    return out;
}

InterferenceMatrix build_w_power_control(const NetworkInstance& net,
                                         const GeometricInstance& geo,
                                         const SinrParams& params) {
    params.validate();
    InterferenceMatrix w(net.link_count());
    for (LinkId l = 0; l < net.link_count(); ++l) {
        w.set(l, l, 1.0);
        const Link& a = net.link(l);
        const double da = link_length(net, geo, l);
        for (LinkId lp = 0; lp < net.link_count(); ++lp) {
            if (lp == l || !shorter_link(net, geo, l, lp)) continue;
            const Link& b = net.link(lp);
            const double cross1 = geo.distance(a.sender, b.receiver);
            const double cross2 = geo.distance(b.sender, a.receiver);
            double v;
            if (cross1 <= 0.0 || cross2 <= 0.0) {
                v = 1.0;
            } else {
                const double num = std::pow(da, params.alpha);
                v = std::min(1.0, num / std::pow(cross1, params.alpha) +
                                      num / std::pow(cross2, params.alpha));
            }
            if (v != 0.0) w.set(l, lp, v);
        }
    }
    return w;
}

ConflictGraph::ConflictGraph(int link_count, std::vector<std::pair<LinkId, LinkId>> edges,
                             std::vector<int> pi, int rho)
    : n_(link_count), rho_(rho), pi_(std::move(pi)) {
    if (n_ < 0) throw std::invalid_argument("negative link count");
    if (rho_ < 1) throw std::invalid_argument("rho must be at least 1");
    if (pi_.empty()) {
        pi_.resize(static_cast<std::size_t>(n_));
        std::iota(pi_.begin(), pi_.end(), 0);
    }
    if (static_cast<int>(pi_.size()) != n_)
        throw std::invalid_argument("pi length does not match link count");
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int v : pi_) {
        if (v < 0 || v >= n_ || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("pi is not a permutation of the links");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    adjacency_.resize(static_cast<std::size_t>(n_));
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw std::invalid_argument("conflict edge references an unknown link");
        if (a == b) continue;
        adjacency_[static_cast<std::size_t>(a)].push_back(b);
        adjacency_[static_cast<std::size_t>(b)].push_back(a);
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
}

bool ConflictGraph::conflicts(LinkId a, LinkId b) const {
    if (a == b) return false;
    const auto& adj = adjacency_[static_cast<std::size_t>(a)];
    return std::binary_search(adj.begin(), adj.end(), b);
}

InterferenceMatrix build_w_conflict(const ConflictGraph& graph) {
    InterferenceMatrix w(graph.link_count());
    for (LinkId e = 0; e < graph.link_count(); ++e) {
        w.set(e, e, 1.0);
        for (LinkId ep : graph.neighbours(e))
            if (graph.pi(e) <= graph.pi(ep)) w.set(e, ep, 1.0);
    }
    return w;
}

InterferenceMatrix build_w_mac(int link_count) {
    return InterferenceMatrix::all_ones(link_count);
}

InterferenceMatrix build_w_identity(int link_count) {
    return InterferenceMatrix::identity(link_count);
}

InterferenceMatrix build_w_node_constraint(const NetworkInstance& net) {
    std::vector<std::pair<LinkId, LinkId>> edges;
    for (LinkId a = 0; a < net.link_count(); ++a)
        for (LinkId b = a + 1; b < net.link_count(); ++b) {
            const Link& la = net.link(a);
            const Link& lb = net.link(b);
            const bool share = la.sender == lb.sender || la.sender == lb.receiver ||
                               la.receiver == lb.sender || la.receiver == lb.receiver;
            if (share) edges.emplace_back(a, b);
        }
    // independent neighbours of a link touch distinct endpoints, so rho = 2
    ConflictGraph graph(net.link_count(), std::move(edges), {}, 2);
    return build_w_conflict(graph);
}

IndependenceCheck check_inductive_independence(const ConflictGraph& graph,
                                               int brute_force_cap) {
    IndependenceCheck result;
    if (graph.link_count() > brute_force_cap) {
        result.status = IndependenceCheck::Status::too_large;
        return result;
    }
    for (LinkId v = 0; v < graph.link_count(); ++v) {
        std::vector<LinkId> smaller;
        for (LinkId u : graph.neighbours(v))
            if (graph.pi(u) < graph.pi(v)) smaller.push_back(u);
        const int k = static_cast<int>(smaller.size());
        if (k <= graph.rho()) continue;
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j && graph.conflicts(smaller[static_cast<std::size_t>(i)],
                                              smaller[static_cast<std::size_t>(j)]))
                    adj[static_cast<std::size_t>(i)] |= (1u << j);
        const std::uint32_t all = (k >= 32) ? ~0u : ((1u << k) - 1);
        for (std::uint32_t mask = 1; mask <= all; ++mask) {
            if (std::popcount(mask) <= graph.rho()) continue;
            bool independent = true;
            for (std::uint32_t rest = mask; rest && independent;) {
                const int i = std::countr_zero(rest);
                rest &= rest - 1;
                if (adj[static_cast<std::size_t>(i)] & mask) independent = false;
            }
            if (independent) {
                result.status = IndependenceCheck::Status::violation;
                result.vertex = v;
                for (int i = 0; i < k; ++i)
                    if (mask & (1u << i)) result.witness.push_back(smaller[static_cast<std::size_t>(i)]);
                return result;
            }
        }
    }
    return result;
}

}  // namespace dynsched
