#include "dynsched/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dynsched {

namespace {
constexpr double kSinrTol = 1e-12;

double received_power(double power, double dist, double alpha) {
    if (dist <= 0.0) return std::numeric_limits<double>::infinity();
    return power / std::pow(dist, alpha);
}
}  // namespace

void SuccessOracle::require_distinct_links(std::span<const Attempt> attempts) {
    for (std::size_t i = 0; i < attempts.size(); ++i)
        for (std::size_t j = i + 1; j < attempts.size(); ++j)
            if (attempts[i].link == attempts[j].link)
                throw std::invalid_argument("two attempts on link " +
                                            std::to_string(attempts[i].link) +
                                            " in one slot");
}

SinrOracle::SinrOracle(const NetworkInstance& net, const GeometricInstance& geo,
                       SinrParams params, PowerAssignment power)
    : net_(net), geo_(geo), params_(params), power_(std::move(power)) {
    params_.validate();
    if (static_cast<int>(power_.power.size()) != net.link_count())
        throw std::invalid_argument("power assignment size does not match link count");
}

void SinrOracle::evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const {
    require_distinct_links(attempts);
    out.success.assign(attempts.size(), 0);
    out.channel_state.reset();
    for (std::size_t i = 0; i < attempts.size(); ++i) {
        const Link& own = net_.link(attempts[i].link);
        const double signal =
            received_power(power_.power[static_cast<std::size_t>(attempts[i].link)],
                           geo_.distance(own.sender, own.receiver), params_.alpha);
        double interference = 0.0;
        for (std::size_t j = 0; j < attempts.size(); ++j) {
            if (j == i) continue;
            const Link& other = net_.link(attempts[j].link);
            interference +=
                received_power(power_.power[static_cast<std::size_t>(attempts[j].link)],
                               geo_.distance(other.sender, own.receiver), params_.alpha);
        }
        // NaN from inf - inf compares false, which fails the attempt
        const double diff = signal - params_.beta * (interference + params_.nu);
        out.success[i] = (diff >= -kSinrTol) ? 1 : 0;
    }
}

void ConflictOracle::evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const {
    require_distinct_links(attempts);
    out.success.assign(attempts.size(), 0);
    out.channel_state.reset();
    for (std::size_t i = 0; i < attempts.size(); ++i) {
        bool clear = true;
        for (std::size_t j = 0; j < attempts.size() && clear; ++j)
            if (j != i && graph_.conflicts(attempts[i].link, attempts[j].link)) clear = false;
        out.success[i] = clear ? 1 : 0;
    }
}

void MacOracle::evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const {
    require_distinct_links(attempts);
    out.success.assign(attempts.size(), 0);
    if (attempts.empty()) {
        out.channel_state = ChannelState::silence;
    } else if (attempts.size() == 1) {
        out.success[0] = 1;
        out.channel_state = ChannelState::success;
    } else {
        out.channel_state = ChannelState::collision;
    }
}

void EdgeCapacityOracle::evaluate(std::span<const Attempt> attempts, SlotFeedback& out) const {
    require_distinct_links(attempts);
    out.success.assign(attempts.size(), 1);
    out.channel_state.reset();
}

}  // namespace dynsched
