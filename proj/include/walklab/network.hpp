#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "walklab/bound_check.hpp"
#include "walklab/chain.hpp"
#include "walklab/hitting.hpp"

namespace walklab {

// Electrical network under the conductance convention c(a,b) = pi(a) P(a,b).
// The conductance matrix has zero diagonal (self-loops carry no current);
// node_weight keeps c(a) = sum_b pi(a) P(a,b) = pi(a) for chain networks.
struct ConductanceNetwork {
    int n = 0;
    Matrix conductance;
    Vec node_weight;
};

// Throws Error("not_reversible") when detailed balance fails.
ConductanceNetwork chain_network(const Chain& c);

// Unit conductance per graph edge.
ConductanceNetwork unit_network(const Graph& g);

// Harmonic voltage problem: v = 1 at x, v = 0 on targets, Kirchhoff
// elsewhere; returns 1 / (current out of x).
double effective_resistance(const ConductanceNetwork& net, int x, const std::vector<int>& targets);

// Expected visits to x strictly before hitting `targets`, from x:
// g_{tau_A - 1}(x, x) via the absorbing-chain linear system.
double visits_before_hitting(const Chain& c, int x, const std::vector<int>& targets);

// The resistance identity g_{tau_A-1}(x,x)/pi(x) = R_eff(x <-> A) on sampled
// (x, A); both inequalities around the max commute time; the squared-ratio
// bound on escape visits; and the unit-resistance report rows.
std::vector<BoundCheck> verify_network_propositions(const Graph& g, const std::string& label,
                                                    std::uint64_t seed = 0);

} // namespace walklab
