#include "walklab/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "walklab/error.hpp"

namespace walklab {

HittingProfile hitting_times(const Chain& c) {
    const int n = c.n;
    HittingProfile hp;
    hp.expected_hit = Matrix(n, n);
    hp.from_pi = Vec(n, 0.0);

    for (int target = 0; target < n; ++target) {
        // absorbing system (I - Q) h = 1 with row/column `target` deleted
        Matrix system(n - 1, n - 1);
        for (int y = 0, r = 0; y < n; ++y) {
            if (y == target) continue;
            for (int z = 0, col = 0; z < n; ++z) {
                if (z == target) continue;
                system(r, col) = (y == z ? 1.0 : 0.0) - c.kernel(y, z);
                ++col;
            }
            ++r;
        }
        const Vec h = lu_solve(std::move(system), Vec(n - 1, 1.0));
        for (int y = 0, r = 0; y < n; ++y) {
            if (y == target) continue;
            hp.expected_hit(y, target) = h[r];
            hp.t_hit = std::max(hp.t_hit, h[r]);
            ++r;
        }
    }
    for (int target = 0; target < n; ++target) {
        double acc = 0.0;
        for (int y = 0; y < n; ++y) acc += c.pi[y] * hp.expected_hit(y, target);
        hp.from_pi[target] = acc;
    }
    return hp;
}

Vec return_prob_profile(const Chain& c, int x, std::int64_t t_max) {
    Vec mu(c.n, 0.0);
    mu[x] = 1.0;
    Vec out;
    out.reserve(static_cast<std::size_t>(t_max) + 1);
    out.push_back(1.0);
    for (std::int64_t s = 1; s <= t_max; ++s) {
        mu = vec_mat(mu, c.kernel);
        out.push_back(mu[x]);
    }
    return out;
}

double green_function(const Chain& c, int x, std::int64_t t) {
    const Vec profile = return_prob_profile(c, x, t);
    double sum = 0.0;
    for (double p : profile) sum += p;
    return sum;
}

double return_gap(const Chain& c, int x, std::int64_t t) {
    return return_prob_profile(c, x, t).back() - c.pi[x];
}

double spectral_green(const Chain& c, const Spectrum& s, int x, std::int64_t t) {
    double sum = static_cast<double>(t + 1) * c.pi[x];
    for (int i = 1; i < c.n; ++i) {
        const double lambda = s.eigenvalues[i];
        const double psi = s.eigenfunctions(x, i);
        sum += c.pi[x] * psi * psi * (1.0 - std::pow(lambda, static_cast<double>(t + 1))) / (1.0 - lambda);
    }
    return sum;
}

BoundCheck check_formula_1_1(const Chain& c, int x, const std::string& label,
                             const Spectrum* s, const HittingProfile* hp) {
    Spectrum local_s;
    HittingProfile local_hp;
    if (!s) {
        local_s = spectrum(c);
        s = &local_s;
    }
    if (!hp) {
        local_hp = hitting_times(c);
        hp = &local_hp;
    }
    const double lhs = c.pi[x] * hp->from_pi[x];
    double rhs = 0.0;
    for (int i = 1; i < c.n; ++i) {
        const double psi = s->eigenfunctions(x, i);
        rhs += c.pi[x] * psi * psi / (1.0 - s->eigenvalues[i]);
    }
    return check_identity("eq1.1:hit_return", label, x, -1, lhs, rhs, 1e-7);
}

std::vector<std::int64_t> verification_time_grid(std::int64_t horizon, double t_rel) {
    std::set<std::int64_t> grid;
    const std::int64_t dense_cap =
        std::min<std::int64_t>(horizon, 10 * static_cast<std::int64_t>(std::ceil(t_rel)));
    for (std::int64_t t = 0; t <= dense_cap; ++t) grid.insert(t);
    for (std::int64_t p = 1; p <= horizon && p > 0; p *= 2) grid.insert(p);
    return {grid.begin(), grid.end()};
}

std::vector<BoundCheck> verify_hitting_bounds(const Graph& g, const std::string& label) {
    const Chain chain = lazy_walk_chain(g, label);
    const Spectrum s = spectrum(chain);
    const double t_rel = relaxation_time(s);
    const HittingProfile hp = hitting_times(chain);
    const DegreeStats ds = degree_stats(g);

    std::vector<BoundCheck> out;
    out.push_back(check_le("thm1.2:t_hit", label, -1, -1, hp.t_hit,
                           20.0 * ds.d_avg() / ds.d_min * g.n * std::sqrt(t_rel + 1.0)));

    double worst_odds = 0.0;
    for (int x = 0; x < g.n; ++x)
        worst_odds = std::max(worst_odds, (1.0 - chain.pi[x]) / chain.pi[x]);
    out.push_back(check_le("eq1.2:t_hit_general", label, -1, -1, hp.t_hit, 2.0 * worst_odds * t_rel));

    // P* with the walk's pi and matched relaxation time: hitting statement is
    // exact, so check it two-sided
    const Chain pstar = star_chain(chain.pi, 1.0 / t_rel, label + ":pstar");
    const HittingProfile hps = hitting_times(pstar);
    for (int x = 0; x < g.n; ++x)
        out.push_back(check_identity("sec2.1:pstar_hitting", label, x, -1,
                                     pstar.pi[x] * hps.from_pi[x],
                                     (1.0 - pstar.pi[x]) * t_rel, 1e-7));
    return out;
}

std::vector<BoundCheck> verify_return_bounds(const Graph& g, const std::string& label,
                                             std::int64_t horizon) {
    const Chain chain = lazy_walk_chain(g, label);
    const Spectrum s = spectrum(chain);
    const double t_rel = relaxation_time(s);
    const DegreeStats ds = degree_stats(g);
    const auto grid = verification_time_grid(horizon, t_rel);
    const std::int64_t t_max = grid.back();

    std::vector<BoundCheck> out;
    for (int x = 0; x < g.n; ++x) {
        const Vec profile = return_prob_profile(chain, x, t_max);
        const double dx = g.degree(x);
        for (const std::int64_t t : grid) {
            const double lhs = profile[t] - chain.pi[x];
            const double sqrt_t1 = std::sqrt(static_cast<double>(t + 1));
            const double graph_rhs = 10.0 * dx / ds.d_min *
                                     std::min(1.0 / sqrt_t1,
                                              std::sqrt(t_rel + 1.0) / static_cast<double>(t + 1));
            out.push_back(check_le("thm1.3:return", label, x, t, lhs, graph_rhs));
            out.push_back(check_le("eq1.3:return_general", label, x, t, lhs,
                                   std::pow(1.0 - 1.0 / t_rel, static_cast<double>(t)) *
                                       (1.0 - chain.pi[x])));
            out.push_back(report_row("eq1.5:return_prior_art", label, x, t, lhs,
                                     13.0 * ds.d_max / ds.d_min / sqrt_t1));
        }
    }
    return out;
}

std::vector<BoundCheck> verify_green_lemmas(const Graph& g, const std::string& label) {
    const Chain chain = lazy_walk_chain(g, label);
    const Spectrum s = spectrum(chain);
    const double t_rel = relaxation_time(s);
    const std::int64_t ceil_trel = static_cast<std::int64_t>(std::ceil(t_rel));
    const DegreeStats ds = degree_stats(g);
    const auto grid = verification_time_grid(10 * ceil_trel, t_rel);
    const std::int64_t t_max = grid.back();
    const double euler_factor = std::exp(1.0) / (std::exp(1.0) - 1.0);

    std::vector<BoundCheck> out;
    for (int x = 0; x < g.n; ++x) {
        const Vec profile = return_prob_profile(chain, x, t_max);
        Vec green(profile.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < profile.size(); ++i) {
            acc += profile[i];
            green[i] = acc;
        }
        for (const std::int64_t t : grid) {
            const double gap = profile[t] - chain.pi[x];
            const double averaged = (green[t] - (t + 1) * chain.pi[x]) / static_cast<double>(t + 1);
            out.push_back(check_le("lem3.1:a", label, x, t, gap, averaged));
            const std::int64_t cut = std::min<std::int64_t>(ceil_trel - 1, t);
            out.push_back(check_le("lem3.1:b", label, x, t, averaged,
                                   euler_factor * green[cut] / static_cast<double>(t + 1)));
            if (t <= ceil_trel)
                out.push_back(check_le("lem3.2:green", label, x, t, green[t] / chain.pi[x],
                                       6.0 * ds.d_avg() * g.n / ds.d_min *
                                           std::sqrt(static_cast<double>(t + 1))));
        }
    }
    return out;
}

} // namespace walklab
