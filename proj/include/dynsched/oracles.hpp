#pragma once

// Success oracles decide which attempts of a slot go through. Schedulers stay
// model-agnostic by only talking to this interface.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynsched/builders.hpp"
#include "dynsched/core.hpp"
#include "dynsched/geometry.hpp"

namespace dynsched {

struct Attempt {
    LinkId link;
    std::uint64_t request_id;
};

enum class ChannelState { silence, success, collision };

struct SlotFeedback {
    std::vector<char> success;  // parallel to the attempt span
    std::optional<ChannelState> channel_state;
};

class SuccessOracle {
public:
    virtual ~SuccessOracle() = default;

    // Attempts must use pairwise distinct links; duplicates are rejected with
    // std::invalid_argument. `out` is reused across slots by hot callers.
    virtual void evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const = 0;

    virtual bool provides_channel_state() const { return false; }

protected:
    static void require_distinct_links(std::span<const Attempt> attempts);
};

// Threshold test per attempt: own received power >= beta * (interference + nu),
// compared with absolute tolerance 1e-12 on the difference.
class SinrOracle final : public SuccessOracle {
public:
    SinrOracle(const NetworkInstance& net, const GeometricInstance& geo,
               SinrParams params, PowerAssignment power);
    void evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const override;

private:
    const NetworkInstance& net_;
    const GeometricInstance& geo_;
    SinrParams params_;
    PowerAssignment power_;
};

// An attempt succeeds iff no other attempted link conflicts with it.
class ConflictOracle final : public SuccessOracle {
public:
    explicit ConflictOracle(const ConflictGraph& graph) : graph_(graph) {}
    void evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const override;

private:
    const ConflictGraph& graph_;
};

// Shared channel: a lone attempt succeeds, two or more collide. Reports the
// slot-level channel state listeners can key protocols off.
class MacOracle final : public SuccessOracle {
public:
    void evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const override;
    bool provides_channel_state() const override { return true; }
};

// Unit edge capacities and nothing else: every well-formed attempt succeeds.
class EdgeCapacityOracle final : public SuccessOracle {
public:
    void evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const override;
};

}  // namespace dynsched
