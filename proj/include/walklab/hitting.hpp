#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "walklab/bound_check.hpp"
#include "walklab/chain.hpp"

namespace walklab {

// Full matrix of expected hitting times for a chain.
struct HittingProfile {
    Matrix expected_hit;  // (y, x) = E_y[tau_x], zero diagonal
    Vec from_pi;          // E_pi[tau_x]
    double t_hit = 0.0;   // max over entries
};

// One absorbing linear solve (I - Q) h = 1 per target state.
HittingProfile hitting_times(const Chain& c);

// [P^0(x,x), ..., P^T(x,x)] by iterating row x of the kernel powers.
Vec return_prob_profile(const Chain& c, int x, std::int64_t t_max);

// g_t(x,x) = sum_{s<=t} P^s(x,x).
double green_function(const Chain& c, int x, std::int64_t t);

// P^t(x,x) - pi(x).
double return_gap(const Chain& c, int x, std::int64_t t);

// Closed form of g_t via the spectrum:
// (t+1) pi(x) + sum_{i>=2} pi(x) Psi_i(x)^2 (1 - lambda_i^{t+1}) / (1 - lambda_i).
double spectral_green(const Chain& c, const Spectrum& s, int x, std::int64_t t);

// Identity pi(x) E_pi[tau_x] = sum_{i>=2} pi(x) Psi_i(x)^2 / (1 - lambda_i),
// checked two-sided at 1e-7. Pass precomputed spectrum/profile to reuse work.
BoundCheck check_formula_1_1(const Chain& c, int x, const std::string& label = "",
                             const Spectrum* s = nullptr, const HittingProfile* hp = nullptr);

// All t in 0..min(horizon, 10*ceil(t_rel)) plus powers of 2 up to horizon.
std::vector<std::int64_t> verification_time_grid(std::int64_t horizon, double t_rel);

// t_hit <= 20 (d_avg/d_min) n sqrt(t_rel+1); the general reversible bound
// t_hit <= 2 max_x ((1-pi)/pi) t_rel; and the exact P* hitting statement
// pi(x) E_pi[tau_x] = (1-pi(x)) t_rel on the matched star chain.
std::vector<BoundCheck> verify_hitting_bounds(const Graph& g, const std::string& label);

// Per (x, t): the graph return bound with constant 10, the general spectral
// bound (1-1/t_rel)^t (1-pi(x)), and the prior-art 13 d_max/d_min comparison
// (report-only).
std::vector<BoundCheck> verify_return_bounds(const Graph& g, const std::string& label,
                                             std::int64_t horizon);

// The two averaged-return inequalities and the sqrt(t+1) bound on
// g_t(x,x)/pi(x) for t up to ceil(t_rel).
std::vector<BoundCheck> verify_green_lemmas(const Graph& g, const std::string& label);

} // namespace walklab
