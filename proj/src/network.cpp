#include "walklab/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "walklab/error.hpp"
#include "walklab/rng.hpp"

namespace walklab {

ConductanceNetwork chain_network(const Chain& c) {
    for (int x = 0; x < c.n; ++x)
        for (int y = x + 1; y < c.n; ++y)
            if (std::abs(c.pi[x] * c.kernel(x, y) - c.pi[y] * c.kernel(y, x)) > 1e-12)
                throw Error("not_reversible", "chain fails detailed balance");

    ConductanceNetwork net;
    net.n = c.n;
    net.conductance = Matrix(c.n, c.n);
    net.node_weight = c.pi;
    for (int x = 0; x < c.n; ++x)
        for (int y = 0; y < c.n; ++y)
            if (x != y) net.conductance(x, y) = c.pi[x] * c.kernel(x, y);
    return net;
}

ConductanceNetwork unit_network(const Graph& g) {
    ConductanceNetwork net;
    net.n = g.n;
    net.conductance = Matrix(g.n, g.n);
    net.node_weight = Vec(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        for (int w : g.adjacency[v]) net.conductance(v, w) = 1.0;
        net.node_weight[v] = g.degree(v);
    }
    return net;
}

double effective_resistance(const ConductanceNetwork& net, int x, const std::vector<int>& targets) {
    if (targets.empty()) throw Error("invalid_argument", "target set must be nonempty");
    std::vector<char> is_target(net.n, 0);
    for (int a : targets) is_target[a] = 1;
    if (is_target[x]) throw Error("invalid_argument", "x must lie outside the target set");

    std::vector<int> nodes;  // unknown voltages, x included (pinned by its row)
    std::vector<int> index(net.n, -1);
    for (int v = 0; v < net.n; ++v) {
        if (!is_target[v]) {
            index[v] = static_cast<int>(nodes.size());
            nodes.push_back(v);
        }
    }
    const int m = static_cast<int>(nodes.size());
    Matrix system(m, m);
    Vec rhs(m, 0.0);
    for (int r = 0; r < m; ++r) {
        const int a = nodes[r];
        if (a == x) {
            system(r, r) = 1.0;
            rhs[r] = 1.0;
            continue;
        }
        double total = 0.0;
        for (int b = 0; b < net.n; ++b) {
            if (b == a) continue;
            const double c = net.conductance(a, b);
            if (c == 0.0) continue;
            total += c;
            if (index[b] >= 0) system(r, index[b]) = -c;
        }
        system(r, r) = total;
    }
    const Vec v = lu_solve(std::move(system), std::move(rhs));

    double current = 0.0;
    for (int b = 0; b < net.n; ++b) {
        if (b == x) continue;
        const double c = net.conductance(x, b);
        if (c == 0.0) continue;
        const double vb = index[b] >= 0 ? v[index[b]] : 0.0;
        current += c * (1.0 - vb);
    }
    if (current <= 0.0) throw Error("singular_system", "no current out of source");
    return 1.0 / current;
}

double visits_before_hitting(const Chain& c, int x, const std::vector<int>& targets) {
    if (targets.empty()) throw Error("invalid_argument", "target set must be nonempty");
    std::vector<char> is_target(c.n, 0);
    for (int a : targets) is_target[a] = 1;
    if (is_target[x]) throw Error("invalid_argument", "x must lie outside the target set");

    std::vector<int> nodes;
    std::vector<int> index(c.n, -1);
    for (int v = 0; v < c.n; ++v) {
        if (!is_target[v]) {
            index[v] = static_cast<int>(nodes.size());
            nodes.push_back(v);
        }
    }
    const int m = static_cast<int>(nodes.size());
    Matrix system(m, m);
    for (int r = 0; r < m; ++r)
        for (int col = 0; col < m; ++col)
            system(r, col) = (r == col ? 1.0 : 0.0) - c.kernel(nodes[r], nodes[col]);
    Vec rhs(m, 0.0);
    rhs[index[x]] = 1.0;
    // column x of the fundamental matrix; entry at x is the expected visits
    const Vec z = lu_solve(std::move(system), std::move(rhs));
    return z[index[x]];
}

namespace {

struct SamplePair {
    int x;
    std::vector<int> targets;
};

std::vector<SamplePair> sample_pairs(const Graph& g, std::uint64_t seed) {
    std::vector<SamplePair> samples;
    // all singletons A = {y}, every x != y
    for (int y = 0; y < g.n; ++y)
        for (int x = 0; x < g.n; ++x)
            if (x != y) samples.push_back({x, {y}});

    // 20 seeded random sets per size in {1, ceil(n/4), ceil(n/2), n-1}
    SplitMix64 rng(split_seed(seed, 0x6e6574));
    std::set<int> sizes{1, (g.n + 3) / 4, (g.n + 1) / 2, g.n - 1};
    for (const int size : sizes) {
        if (size < 1 || size >= g.n) continue;
        for (int rep = 0; rep < 20; ++rep) {
            std::set<int> chosen;
            while (static_cast<int>(chosen.size()) < size)
                chosen.insert(static_cast<int>(rng.below(g.n)));
            std::vector<int> outside;
            for (int v = 0; v < g.n; ++v)
                if (!chosen.count(v)) outside.push_back(v);
            const int x = outside[rng.below(outside.size())];
            samples.push_back({x, {chosen.begin(), chosen.end()}});
        }
    }
    return samples;
}

} // namespace

std::vector<BoundCheck> verify_network_propositions(const Graph& g, const std::string& label,
                                                    std::uint64_t seed) {
    const Chain chain = lazy_walk_chain(g, label);
    const ConductanceNetwork net = chain_network(chain);
    const Spectrum s = spectrum(chain);
    const double t_rel = relaxation_time(s);
    const HittingProfile hp = hitting_times(chain);
    const DegreeStats ds = degree_stats(g);

    std::vector<BoundCheck> out;
    out.push_back(check_path_fact(g, label));

    // escape-visit identity and the squared-ratio escape bound on samples
    const double escape_rhs_base = 9.0 * std::pow(ds.d_avg() * g.n / ds.d_min, 2.0);
    for (const auto& sample : sample_pairs(g, seed)) {
        const double visits = visits_before_hitting(chain, sample.x, sample.targets);
        const double lhs = visits / chain.pi[sample.x];
        const double reff = effective_resistance(net, sample.x, sample.targets);
        const std::int64_t t_code = static_cast<std::int64_t>(sample.targets.size());
        out.push_back(check_identity("lpw9.6:visits_eq_reff", label, sample.x, t_code, lhs, reff, 1e-7));
        double pi_a = 0.0;
        for (int a : sample.targets) pi_a += chain.pi[a];
        out.push_back(check_le("prop3.4:escape_visits", label, sample.x, t_code, lhs,
                               escape_rhs_base * (1.0 - pi_a)));
    }

    // relaxation time vs max commute time vs the degree-ratio ceiling
    double commute = 0.0;
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            commute = std::max(commute, hp.expected_hit(x, y) + hp.expected_hit(y, x));
    out.push_back(check_le("prop3.3:trel_le_commute", label, -1, -1, t_rel, commute));
    out.push_back(check_le("prop3.3:commute_ceiling", label, -1, -1, commute,
                           6.0 * ds.d_avg() / ds.d_min * g.n * g.n - 4.0));

    // unit-resistance report: observed max two-point resistance against
    // sqrt(t_rel)/d_min; the ratio is the empirical universal constant
    const ConductanceNetwork unit = unit_network(g);
    double max_reff = 0.0;
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            max_reff = std::max(max_reff, effective_resistance(unit, x, {y}));
    out.push_back(report_row("cor1.6:unit_reff:report", label, -1, -1, max_reff,
                             std::sqrt(t_rel) / ds.d_min));
    return out;
}

} // namespace walklab
