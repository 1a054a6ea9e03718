#pragma once

// Builders that lay concrete interference models into a single matrix W, plus
// the affectance kernel they share and the inductive-independence checker.

#include <utility>
#include <vector>

#include "dynsched/core.hpp"
#include "dynsched/geometry.hpp"

namespace dynsched {

struct Affectance {
    double value;          // clipped to [0,1]
    bool victim_feasible;  // false when the target link cannot decode even alone
};

// Impact of a transmission on `source` upon a simultaneous one on `victim`:
// min{1, beta * (p(source) received at victim's receiver) / victim's margin}.
// A nonpositive margin yields value 1 with victim_feasible = false.
Affectance affectance(const NetworkInstance& net, const GeometricInstance& geo,
                      const SinrParams& params, const PowerAssignment& power,
                      LinkId source, LinkId victim);

struct WBuild {
    InterferenceMatrix w;
    std::vector<LinkId> infeasible_links;  // links whose own signal margin is <= 0
};

// W[l,l'] = affectance of l' on l. Requires power.kind == linear, meaning
// p(e)/d(e)^alpha is the same for every link (relative tolerance 1e-9).
WBuild build_w_linear(const NetworkInstance& net, const GeometricInstance& geo,
                      const SinrParams& params, const PowerAssignment& power);

// W[l,l'] = max of the two affectances when l is the shorter link, else 0.
// Requires monotone sublinear powers: d(l) <= d(l') implies p(l) <= p(l') and
// p(l)/d(l)^alpha >= p(l')/d(l')^alpha. Length ties break by link index.
WBuild build_w_monotone(const NetworkInstance& net, const GeometricInstance& geo,
                        const SinrParams& params, const PowerAssignment& power);

// Power-control variant, powers chosen implicitly:
// W[l,l'] = min{1, d(l)^a / d(s,r')^a + d(l)^a / d(s',r)^a} when l is shorter.
InterferenceMatrix build_w_power_control(const NetworkInstance& net,
                                         const GeometricInstance& geo,
                                         const SinrParams& params);

class ConflictGraph {
public:
    // edges are undirected conflicts; pi must be a permutation of 0..n-1,
    // empty means link-index order. rho bounds independent sets among
    // lower-ranked neighbours.
    ConflictGraph(int link_count, std::vector<std::pair<LinkId, LinkId>> edges,
                  std::vector<int> pi = {}, int rho = 1);

    int link_count() const { return n_; }
    bool conflicts(LinkId a, LinkId b) const;
    const std::vector<LinkId>& neighbours(LinkId v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }
    int pi(LinkId v) const { return pi_[static_cast<std::size_t>(v)]; }
    int rho() const { return rho_; }

private:
    int n_;
    int rho_;
    std::vector<int> pi_;
    std::vector<std::vector<LinkId>> adjacency_;  // sorted, symmetric
};

// W[e,e'] = 1 iff e conflicts with e' and pi(e) <= pi(e'), plus unit diagonal.
InterferenceMatrix build_w_conflict(const ConflictGraph& graph);

// Multiple access channel: all-ones matrix, I counts every pending packet.
InterferenceMatrix build_w_mac(int link_count);

// Packet routing without interference: identity, I is the max edge congestion.
InterferenceMatrix build_w_identity(int link_count);

// Links conflict when they share an endpoint in any role; pi is index order.
InterferenceMatrix build_w_node_constraint(const NetworkInstance& net);

struct IndependenceCheck {
    enum class Status { ok, violation, too_large };
    Status status = Status::ok;
    LinkId vertex = -1;            // violating vertex when status == violation
    std::vector<LinkId> witness;   // independent set among its lower-ranked neighbours
};

// Exhaustively certifies that every vertex sees at most rho independent
// lower-ranked neighbours. Instances above brute_force_cap links are refused
// with status too_large rather than silently approximated.
IndependenceCheck check_inductive_independence(const ConflictGraph& graph,
                                               int brute_force_cap = 20);

}  // namespace dynsched
