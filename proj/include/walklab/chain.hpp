#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "walklab/graph.hpp"
#include "walklab/linalg.hpp"

namespace walklab {

// Finite reversible Markov chain: row-stochastic kernel plus its stationary
// distribution. For lazy walks pi is also kept exactly as d_x / 2|E|.
struct Chain {
    int n = 0;
    Matrix kernel;
    Vec pi;
    std::string label;

    // exact pi(x) = pi_num[x] / pi_den when available; pi_den == 0 otherwise
    std::vector<std::int64_t> pi_num;
    std::int64_t pi_den = 0;

    // false only for explicit negative controls (e.g. the non-lazy walk on a
    // bipartite graph), which are exempt from nonnegative-spectrum checks
    bool nonnegative_spectrum = true;
};

// Eigenvalues and pi-orthonormal eigenfunctions of a reversible kernel.
struct Spectrum {
    Vec eigenvalues;        // descending, eigenvalues[0] = 1
    Matrix eigenfunctions;  // column i = Psi_i, pi-orthonormal
    Vec inner_product_weights;
};

// Validates row sums, stationarity and reversibility (all at 1e-12) before
// accepting the chain.
Chain make_chain(Matrix kernel, Vec pi, std::string label, bool nonnegative_spectrum = true);

// Lazy random walk: holds with probability 1/2, else moves to a uniform
// neighbor; pi(x) = d_x / 2|E| exactly.
Chain lazy_walk_chain(const Graph& g, std::string label = "lrw");

// P* = (1-gamma) I + gamma Pi with Pi(x,y) = pi(y); spectrum {1, 1-gamma}.
Chain star_chain(const Vec& pi, double gamma, std::string label = "pstar");

// Eigensolve of the symmetrized kernel sqrt(pi(x)/pi(y)) P(x,y), mapped back
// to pi-orthonormal eigenfunctions.
Spectrum spectrum(const Chain& c);

// 1/(1 - lambda_2); throws Error("degenerate") when lambda_2 >= 1 - 1e-12.
double relaxation_time(const Spectrum& s);

// Row x of P^t by repeated vector-matrix multiplication.
Vec kernel_power_row(const Chain& c, int x, std::int64_t t);

double tv_distance(const Vec& a, const Vec& b);

// Smallest t with max_x TV(P^t(x,.), pi) <= 1/4; doubling plus binary search
// on cached squarings. Throws Error("budget_exceeded") past `budget`.
std::int64_t mixing_time(const Chain& c, std::int64_t budget = (std::int64_t{1} << 32));

// JSON {"n", "kernel", "pi", "label"} with floats at 17 significant digits.
std::string chain_to_json(const Chain& c);

} // namespace walklab
