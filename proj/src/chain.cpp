#include "walklab/chain.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "walklab/error.hpp"

namespace walklab {

namespace {

constexpr double kChainTol = 1e-12;

void validate(const Chain& c) {
    for (int x = 0; x < c.n; ++x) {
        double row = 0.0;
        for (int y = 0; y < c.n; ++y) {
            if (c.kernel(x, y) < -kChainTol)
                throw Error("invalid_chain", "negative kernel entry");
            row += c.kernel(x, y);
        }
        if (std::abs(row - 1.0) > kChainTol)
            throw Error("invalid_chain", "row " + std::to_string(x) + " does not sum to 1");
        if (c.pi[x] <= 0.0)
            throw Error("invalid_chain", "pi must be strictly positive");
    }
    for (int y = 0; y < c.n; ++y) {
        double mass = 0.0;
        for (int x = 0; x < c.n; ++x) mass += c.pi[x] * c.kernel(x, y);
        if (std::abs(mass - c.pi[y]) > kChainTol)
            throw Error("invalid_chain", "pi is not stationary at state " + std::to_string(y));
    }
    for (int x = 0; x < c.n; ++x)
        for (int y = x + 1; y < c.n; ++y)
            if (std::abs(c.pi[x] * c.kernel(x, y) - c.pi[y] * c.kernel(y, x)) > kChainTol)
                throw Error("invalid_chain", "detailed balance fails for (" + std::to_string(x) +
                                                 "," + std::to_string(y) + ")");
}

} // namespace

Chain make_chain(Matrix kernel, Vec pi, std::string label, bool nonnegative_spectrum) {
    Chain c;
    c.n = static_cast<int>(pi.size());
    c.kernel = std::move(kernel);
    c.pi = std::move(pi);
    c.label = std::move(label);
    c.nonnegative_spectrum = nonnegative_spectrum;
    validate(c);
    return c;
}

Chain lazy_walk_chain(const Graph& g, std::string label) {
    const std::int64_t two_e = 2LL * g.edge_count;
    Matrix kernel(g.n, g.n);
    Vec pi(g.n);
    std::vector<std::int64_t> pi_num(g.n);
    for (int x = 0; x < g.n; ++x) {
        const int dx = g.degree(x);
        kernel(x, x) = 0.5;
        for (int y : g.adjacency[x]) kernel(x, y) = 0.5 / dx;
        pi[x] = static_cast<double>(dx) / static_cast<double>(two_e);
        pi_num[x] = dx;
    }
    Chain c = make_chain(std::move(kernel), std::move(pi), std::move(label));
    c.pi_num = std::move(pi_num);
    c.pi_den = two_e;
    return c;
}

Chain star_chain(const Vec& pi, double gamma, std::string label) {
    const int n = static_cast<int>(pi.size());
    if (n < 1) throw Error("invalid_distribution", "empty distribution");
    double sum = 0.0;
    for (double p : pi) {
        if (p <= 0.0) throw Error("invalid_distribution", "pi must be strictly positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw Error("invalid_distribution", "pi must sum to 1");
    if (!(gamma > 0.0) || gamma > 1.0) throw Error("invalid_distribution", "gamma must lie in (0,1]");

    Matrix kernel(n, n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) kernel(x, y) = gamma * pi[y];
        kernel(x, x) += 1.0 - gamma;
    }
    return make_chain(std::move(kernel), pi, std::move(label));
}

Spectrum spectrum(const Chain& c) {
    const int n = c.n;
    Vec sqrt_pi(n);
    for (int x = 0; x < n; ++x) sqrt_pi[x] = std::sqrt(c.pi[x]);

    Matrix sym(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) sym(x, y) = c.kernel(x, y) * sqrt_pi[x] / sqrt_pi[y];

    const EigenDecomposition eig = jacobi_eigen(std::move(sym));

    Spectrum s;
    s.eigenvalues = eig.values;
    s.inner_product_weights = c.pi;
    s.eigenfunctions = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int x = 0; x < n; ++x) s.eigenfunctions(x, i) = eig.vectors(x, i) / sqrt_pi[x];
    return s;
}

double relaxation_time(const Spectrum& s) {
    if (s.eigenvalues.size() < 2) throw Error("degenerate", "chain has a single state");
    const double lambda2 = s.eigenvalues[1];
    if (lambda2 >= 1.0 - 1e-12) throw Error("degenerate", "lambda_2 >= 1 - 1e-12");
    return 1.0 / (1.0 - lambda2);
}

Vec kernel_power_row(const Chain& c, int x, std::int64_t t) {
    Vec mu(c.n, 0.0);
    mu[x] = 1.0;
    for (std::int64_t s = 0; s < t; ++s) mu = vec_mat(mu, c.kernel);
    return mu;
}

double tv_distance(const Vec& a, const Vec& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return 0.5 * sum;
}

namespace {

double worst_tv(const Matrix& power, const Vec& pi) {
    double worst = 0.0;
    for (std::size_t x = 0; x < power.rows(); ++x) {
        double sum = 0.0;
        const double* row = power.row_ptr(x);
        for (std::size_t y = 0; y < power.cols(); ++y) sum += std::abs(row[y] - pi[y]);
        worst = std::max(worst, 0.5 * sum);
    }
    return worst;
}

Matrix power_from_squarings(const std::vector<Matrix>& squarings, std::int64_t t, int n) {
    Matrix acc = Matrix::identity(n);
    for (std::size_t k = 0; k < squarings.size() && t != 0; ++k) {
        if (t & 1) acc = mat_mul(acc, squarings[k]);
        t >>= 1;
    }
    return acc;
}

} // namespace

std::int64_t mixing_time(const Chain& c, std::int64_t budget) {
    constexpr double kThreshold = 0.25;
    {
        double worst0 = 0.0;
        for (int x = 0; x < c.n; ++x) worst0 = std::max(worst0, 1.0 - c.pi[x]);
        if (worst0 <= kThreshold) return 0;
    }
    // worst-case TV to pi is non-increasing in t, so doubling + binary search
    std::vector<Matrix> squarings{c.kernel};
    std::int64_t t = 1;
    while (worst_tv(squarings.back(), c.pi) > kThreshold) {
        if (t > budget / 2) throw Error("budget_exceeded", "mixing time beyond horizon " + std::to_string(budget));
        squarings.push_back(mat_mul(squarings.back(), squarings.back()));
        t *= 2;
    }
    std::int64_t lo = t / 2;  // known > threshold (or 0)
    std::int64_t hi = t;      // known <= threshold
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        const Matrix p = power_from_squarings(squarings, mid, c.n);
        if (worst_tv(p, c.pi) <= kThreshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::string chain_to_json(const Chain& c) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "{\"n\":" << c.n << ",\"kernel\":[";
    for (int x = 0; x < c.n; ++x)
        for (int y = 0; y < c.n; ++y) {
            if (x != 0 || y != 0) out << ",";
            out << fmt(c.kernel(x, y));
        }
    out << "],\"pi\":[";
    for (int x = 0; x < c.n; ++x) {
        if (x != 0) out << ",";
        out << fmt(c.pi[x]);
    }
    out << "],\"label\":\"" << c.label << "\"}";
    return out.str();
}

} // namespace walklab
