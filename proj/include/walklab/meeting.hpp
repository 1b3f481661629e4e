#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "walklab/bound_check.hpp"
#include "walklab/chain.hpp"
#include "walklab/hitting.hpp"

namespace walklab {

// Deterministic target sequence h_0, h_1, ..., h_t.
struct Trajectory {
    std::vector<int> targets;

    std::int64_t horizon() const { return static_cast<std::int64_t>(targets.size()) - 1; }
};

enum class TrajectoryKind { fixed, random, greedy_adversarial, custom };

std::string trajectory_kind_name(TrajectoryKind k);

// Survival vs the (1 - 1/t_hit)^t estimate for one (trajectory, t).
struct SurvivalResult {
    std::string graph_label;
    TrajectoryKind kind = TrajectoryKind::custom;
    int index = 0;  // fixed: the vertex; random: the trial number
    std::int64_t t = 0;
    double probability = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // bound - probability
    bool pass = false;
};

// P_pi(X_s != h_s for all 0 <= s <= t) by the forward masked recursion.
double survival_probability(const Chain& c, const Trajectory& traj);

// Survival after each prefix: entry t covers h_0..h_t.
Vec survival_profile(const Chain& c, const Trajectory& traj);

// (1 - 1/t_hit)^t.
double meeting_bound(double t_hit, std::int64_t t);

// Largest eigenvalue of D_h P D_h via the symmetrized kernel with row and
// column h zeroed; lies in [0, 1) for an irreducible nonnegative chain.
double masked_operator_norm(const Chain& c, int h);

struct QuasistationaryResult {
    Vec distribution;           // over V, entry h = 0, sums to 1
    double expected_hit = 0.0;  // E_q[tau_h]
    double lambda = 0.0;        // largest masked eigenvalue
};

// Principal eigenvector of the masked operator mapped back to a plain
// distribution; asserts lambda = 1 - 1/E_q[tau_h] to 1e-7.
QuasistationaryResult quasistationary(const Chain& c, int h, const HittingProfile* hp = nullptr);

// h_0 = argmin pi; then each step picks the state whose masking removes the
// least surviving mass (ties to the lowest index).
Trajectory greedy_adversarial_trajectory(const Chain& c, std::int64_t t);

// Per-trajectory outcome of checking every prefix t <= horizon.
struct TrajectoryVerdict {
    TrajectoryKind kind;
    int index;
    bool all_pass;
    double min_margin;
    std::int64_t argmin_t;
};

struct MeetingReport {
    std::vector<SurvivalResult> survivals;  // sparse reporting grid
    std::vector<BoundCheck> checks;         // proof-step re-checks
    std::vector<TrajectoryVerdict> verdicts;
};

// Fixed targets (every vertex), `trials` seeded random trajectories and the
// greedy adversary; survival checked at every t <= horizon internally, with
// rows emitted on a sparse grid. Also re-checks the masked-norm step for
// every h and the per-trajectory operator-norm product bound chain.
MeetingReport verify_meeting_theorem(const Graph& g, const std::string& label,
                                     std::int64_t horizon, int trials, std::uint64_t seed);

// The non-lazy walk on two vertices with the alternating target sequence:
// survival stays 1/2 while the bound collapses to 0, so the inequality must
// fail. Built only as a negative control.
std::vector<SurvivalResult> nonlazy_two_state_control(std::int64_t horizon);

} // namespace walklab
