#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walklab/chain.hpp"

namespace walklab {

// One epoch of the allowed-killings schedule. `level` selects the regime:
//   -1        no killings allowed (epoch #infinity)
//    0        all ordered pairs allowed (epoch #0)
//    j >= 1   pairs A_{j-1} x (A_j u ... u A_m)
struct Epoch {
    std::int64_t start = 0;
    std::int64_t end = 0;  // exclusive; -1 means unbounded
    int level = 0;
};

// Epochs tile [0, inf); the partition A_0, ..., A_m covers particles
// 0..n-1 in consecutive index ranges with |A_i| = 2^i below the last block.
struct KillSchedule {
    std::vector<Epoch> epochs;
    std::vector<int> block_of;    // particle -> block index
    std::vector<int> block_size;  // |A_0|, ..., |A_m|
    int m = 0;
    std::int64_t bounded_horizon = 0;  // end of epoch #1; epoch #0 starts here

    int level_at(std::int64_t t) const;
    // allowed killing of a by b at time t; requires b < a
    bool allows(int b, int a, std::int64_t t) const {
        const int level = level_at(t);
        if (level < 0) return false;
        if (level == 0) return true;
        return block_of[b] == level - 1 && block_of[a] >= level;
    }
};

// Epoch schedule with t_m = 1 + ceil(2 t_mix) and per-epoch durations
// 1 + ceil((2^4 ln 5 / 2^j) t_hit), laid down from epoch #m to #1.
KillSchedule build_epoch_schedule(std::int64_t t_mix, double t_hit, int n);

// Full coalescence time of n lazy walkers, one per vertex, lower index
// surviving on collision. Deterministic given the seed; per-particle
// substreams use split_seed(seed, particle).
std::int64_t simulate_coalescence(const Chain& c, std::uint64_t seed,
                                  std::int64_t horizon_cap = 10'000'000);

struct CoalescenceEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    int replicas = 0;
    std::uint64_t seed = 0;
    double t_hit = 0.0;
    double ratio_to_thit = 0.0;
    bool degenerate_sample = false;     // single replica, stderr reported as 0
    std::int64_t horizon_exceeded_count = 0;
};

// Monte Carlo t_coal over `replicas` independent replicas; replica r runs
// with split_seed(seed, r). Replicas that exceed the cap are excluded from
// the mean and counted.
CoalescenceEstimate estimate_tcoal(const Chain& c, int replicas, std::uint64_t seed,
                                   std::int64_t horizon_cap = 10'000'000);

struct CoupledCoalescence {
    std::int64_t tau_coal = 0;
    // empty when the restricted process failed to coalesce below the cap
    std::optional<std::int64_t> tau_coal_restricted;
};

// Runs the unrestricted and the allowed-killings process on the same
// underlying trajectories and asserts the pathwise domination
// tau_coal <= tau_coal_restricted; a violation throws
// Error("domination_violated").
CoupledCoalescence simulate_with_allowed_killings(const Chain& c, const KillSchedule& sched,
                                                  std::uint64_t seed,
                                                  std::int64_t horizon_cap = 10'000'000);

} // namespace walklab
