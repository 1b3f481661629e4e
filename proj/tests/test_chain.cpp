#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "walklab/chain.hpp"
#include "walklab/error.hpp"
#include "walklab/graph.hpp"
#include "walklab/rng.hpp"

using namespace walklab;

namespace {

Graph make_family(Family f, std::map<std::string, int> params, std::uint64_t seed = 0) {
    FamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    s.seed = seed;
    return generate(s);
}

void check_spectrum_invariants(const Chain& c, const Spectrum& s) {
    const int n = c.n;
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (int x = 0; x < n; ++x)
        CHECK(s.eigenfunctions(x, 0) == doctest::Approx(1.0).epsilon(1e-9));
    if (c.nonnegative_spectrum) CHECK(s.eigenvalues[n - 1] >= -1e-9);

    // pi-orthonormality
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double ip = 0.0;
            for (int x = 0; x < n; ++x)
                ip += c.pi[x] * s.eigenfunctions(x, i) * s.eigenfunctions(x, j);
            CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-8);
        }

    // kernel reconstruction P(x,y) = sum_i lambda_i Psi_i(x) Psi_i(y) pi(y)
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += s.eigenvalues[i] * s.eigenfunctions(x, i) * s.eigenfunctions(y, i) * c.pi[y];
            CHECK(std::abs(acc - c.kernel(x, y)) < 1e-8);
        }
}

} // namespace

TEST_CASE("lazy walk kernels and stationary masses") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    CHECK(k2.kernel(0, 0) == doctest::Approx(0.5));
    CHECK(k2.kernel(0, 1) == doctest::Approx(0.5));
    CHECK(k2.pi[0] == doctest::Approx(0.5));

    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    CHECK(p3.pi[0] == doctest::Approx(0.25));
    CHECK(p3.pi[1] == doctest::Approx(0.5));
    CHECK(p3.kernel(1, 0) == doctest::Approx(0.25));
    CHECK(p3.kernel(1, 1) == doctest::Approx(0.5));
    CHECK(p3.kernel(1, 2) == doctest::Approx(0.25));
    // exact rational masses d_x / 2|E|
    CHECK(p3.pi_den == 4);
    CHECK(p3.pi_num == std::vector<std::int64_t>{1, 2, 1});

    const Chain star = lazy_walk_chain(make_family(Family::star, {{"n", 4}}));
    CHECK(star.pi[0] == doctest::Approx(0.5));
    CHECK(star.pi[1] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("star chain construction") {
    const Vec uniform4(4, 0.25);
    const Chain c = star_chain(uniform4, 0.5);
    CHECK(c.kernel(0, 0) == doctest::Approx(5.0 / 8.0));
    CHECK(c.kernel(0, 1) == doctest::Approx(1.0 / 8.0));

    const Chain jump = star_chain(Vec{0.2, 0.3, 0.5}, 1.0);
    for (int x = 0; x < 3; ++x) {
        CHECK(jump.kernel(x, 0) == doctest::Approx(0.2));
        CHECK(jump.kernel(x, 1) == doctest::Approx(0.3));
        CHECK(jump.kernel(x, 2) == doctest::Approx(0.5));
    }

    CHECK_THROWS_WITH_AS(star_chain(Vec{0.5, 0.4}, 0.5), doctest::Contains("invalid_distribution"),
                         Error);
    CHECK_THROWS_WITH_AS(star_chain(Vec{0.5, 0.5}, 0.0), doctest::Contains("invalid_distribution"),
                         Error);
    CHECK_THROWS_WITH_AS(star_chain(Vec{0.5, 0.5}, 1.5), doctest::Contains("invalid_distribution"),
                         Error);

    // spectrum {1, 1-gamma with multiplicity n-1}
    const Spectrum s = spectrum(c);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("spectra against closed-form oracles") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    const auto [l1, l2] = oracles::two_state_eigs(k2.kernel);
    CHECK(l1 == doctest::Approx(1.0));
    CHECK(l2 == doctest::Approx(0.0));
    const Spectrum sk2 = spectrum(k2);
    CHECK(sk2.eigenvalues[0] == doctest::Approx(l1));
    CHECK(sk2.eigenvalues[1] == doctest::Approx(l2));

    // the non-lazy path on 3 vertices has spectrum {1, 0, -1}; laziness maps
    // lambda to (1+lambda)/2
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    const Spectrum sp3 = spectrum(p3);
    CHECK(sp3.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(sp3.eigenvalues[1] == doctest::Approx(0.5));
    CHECK(sp3.eigenvalues[2] == doctest::Approx(0.0));
}

TEST_CASE("spectrum invariants across chains") {
    check_spectrum_invariants(lazy_walk_chain(make_family(Family::path, {{"n", 6}})),
                              spectrum(lazy_walk_chain(make_family(Family::path, {{"n", 6}}))));
    const Chain star = lazy_walk_chain(make_family(Family::star, {{"n", 7}}));
    check_spectrum_invariants(star, spectrum(star));
    const Chain lolli = lazy_walk_chain(make_family(Family::lollipop, {{"d", 3}, {"n", 12}}, 8));
    check_spectrum_invariants(lolli, spectrum(lolli));
    const Chain pstar = star_chain(Vec{0.1, 0.2, 0.3, 0.4}, 0.7);
    check_spectrum_invariants(pstar, spectrum(pstar));
}

TEST_CASE("relaxation times") {
    CHECK(relaxation_time(spectrum(lazy_walk_chain(make_family(Family::complete, {{"n", 2}})))) ==
          doctest::Approx(1.0));
    CHECK(relaxation_time(spectrum(lazy_walk_chain(make_family(Family::path, {{"n", 3}})))) ==
          doctest::Approx(2.0));
    CHECK(relaxation_time(spectrum(star_chain(Vec(5, 0.2), 0.25))) == doctest::Approx(4.0));
    CHECK_THROWS_WITH_AS(relaxation_time(spectrum(star_chain(Vec(3, 1.0 / 3.0), 1e-13))),
                         doctest::Contains("degenerate"), Error);
}

TEST_CASE("kernel power rows") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    CHECK(kernel_power_row(k2, 0, 0) == Vec{1.0, 0.0});
    const Vec one = kernel_power_row(k2, 0, 1);
    CHECK(one[0] == doctest::Approx(0.5));
    const Vec three = kernel_power_row(k2, 0, 3);
    CHECK(three[0] == doctest::Approx(0.5));
    CHECK(three[1] == doctest::Approx(0.5));
}

TEST_CASE("Chapman-Kolmogorov on random small chains") {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(5));
        Vec pi(n);
        double total = 0.0;
        for (double& p : pi) total += (p = 0.1 + rng.uniform());
        for (double& p : pi) p /= total;
        const Chain c = star_chain(pi, 0.3 + 0.7 * rng.uniform());

        const int x = static_cast<int>(rng.below(n));
        const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(6));
        const std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(6));
        const Vec direct = kernel_power_row(c, x, s + t);
        Vec staged = kernel_power_row(c, x, s);
        for (std::int64_t step = 0; step < t; ++step) staged = vec_mat(staged, c.kernel);
        for (int y = 0; y < n; ++y) CHECK(std::abs(direct[y] - staged[y]) < 1e-9);
        double sum = 0.0;
        for (double v : direct) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("mixing times match the direct TV oracle") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    CHECK(mixing_time(k2) == 1);
    CHECK(mixing_time(k2) == oracles::tv_mixing_oracle(k2));

    const Chain jump = star_chain(Vec(6, 1.0 / 6.0), 1.0);
    CHECK(mixing_time(jump) == 1);

    for (const Chain& c : {lazy_walk_chain(make_family(Family::path, {{"n", 3}})),
                           lazy_walk_chain(make_family(Family::path, {{"n", 9}})),
                           lazy_walk_chain(make_family(Family::cycle, {{"n", 8}})),
                           lazy_walk_chain(make_family(Family::star, {{"n", 6}}))}) {
        CHECK(mixing_time(c) == oracles::tv_mixing_oracle(c));
    }
}

TEST_CASE("P* return gap is exactly geometric") {
    // the claim P*^t(x,x) - pi(x) = (1 - 1/t_rel)^t (1 - pi(x))
    const Chain star4 = star_chain(Vec(4, 0.25), 0.5);
    const Chain skewed = star_chain(Vec{0.05, 0.15, 0.35, 0.45}, 0.3);
    for (const Chain& c : {star4, skewed}) {
        const double t_rel = relaxation_time(spectrum(c));
        for (int x = 0; x < c.n; ++x) {
            Vec mu(c.n, 0.0);
            mu[x] = 1.0;
            for (std::int64_t t = 0; t <= 50; ++t) {
                const double expected =
                    std::pow(1.0 - 1.0 / t_rel, static_cast<double>(t)) * (1.0 - c.pi[x]);
                CHECK(std::abs((mu[x] - c.pi[x]) - expected) < 1e-9);
                mu = vec_mat(mu, c.kernel);
            }
        }
    }
}

TEST_CASE("lazy walks keep a nonnegative spectrum") {
    for (const auto& g : {make_family(Family::path, {{"n", 12}}),
                          make_family(Family::cycle, {{"n", 11}}),
                          make_family(Family::star, {{"n", 10}}),
                          make_family(Family::random_regular, {{"n", 14}, {"d", 3}}, 21)}) {
        const Spectrum s = spectrum(lazy_walk_chain(g));
        CHECK(s.eigenvalues.back() >= -1e-9);
    }
}

TEST_CASE("chain JSON uses 17 significant digits") {
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}), "p3");
    const std::string json = chain_to_json(p3);
    CHECK(json.find("\"label\":\"p3\"") != std::string::npos);
    CHECK(json.find("\"n\":3") != std::string::npos);
    CHECK(json.find("0.25") != std::string::npos);
}
