#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "walklab/graph.hpp"
#include "walklab/hitting.hpp"

using namespace walklab;

namespace {

Graph make_family(Family f, std::map<std::string, int> params, std::uint64_t seed = 0) {
    FamilySpec s;
    s.family = f;
    s.parameters = std::move(params);
    s.seed = seed;
    return generate(s);
}

void check_profile_invariants(const Chain& c, const HittingProfile& hp) {
    double worst_from_pi = 0.0;
    for (int x = 0; x < c.n; ++x) {
        CHECK(hp.expected_hit(x, x) == 0.0);
        double acc = 0.0;
        for (int y = 0; y < c.n; ++y) {
            CHECK(hp.expected_hit(y, x) >= 0.0);
            acc += c.pi[y] * hp.expected_hit(y, x);
        }
        CHECK(std::abs(acc - hp.from_pi[x]) < 1e-8);
        worst_from_pi = std::max(worst_from_pi, hp.from_pi[x]);
    }
    CHECK(hp.t_hit <= 2.0 * worst_from_pi + 1e-8);
}

} // namespace

TEST_CASE("hitting times against hand-solved systems") {
    // K2: geometric with escape probability 1/2
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    const HittingProfile hk2 = hitting_times(k2);
    CHECK(hk2.expected_hit(0, 1) == doctest::Approx(2.0));
    CHECK(hk2.t_hit == doctest::Approx(2.0));
    check_profile_invariants(k2, hk2);

    // P3: the 2x2 absorbing solve gives E_0[tau_2] = 8, E_1[tau_2] = 6
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    const HittingProfile hp3 = hitting_times(p3);
    CHECK(hp3.expected_hit(0, 2) == doctest::Approx(8.0));
    CHECK(hp3.expected_hit(1, 2) == doctest::Approx(6.0));
    CHECK(hp3.t_hit == doctest::Approx(8.0));
    check_profile_invariants(p3, hp3);

    // star on 4 vertices: first-step analysis gives leaf-to-leaf 12
    const Chain star = lazy_walk_chain(make_family(Family::star, {{"n", 4}}));
    const HittingProfile hs = hitting_times(star);
    CHECK(hs.expected_hit(1, 2) == doctest::Approx(12.0));
    CHECK(hs.t_hit == doctest::Approx(12.0));
    check_profile_invariants(star, hs);
}

TEST_CASE("green function values") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    CHECK(green_function(k2, 0, 0) == doctest::Approx(1.0));
    // P^s(0,0) = 1/2 for every s >= 1
    CHECK(green_function(k2, 0, 4) == doctest::Approx(3.0));

    // explicit matrix squares: P^2(0,0) = 3/8 and P^2(1,1) = 1/2 on P3
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    const auto p3_sq = oracles::matrix_power(p3.kernel, 2);
    CHECK(p3_sq(0, 0) == doctest::Approx(3.0 / 8.0));
    CHECK(p3_sq(1, 1) == doctest::Approx(0.5));
    CHECK(green_function(p3, 0, 2) == doctest::Approx(1.0 + 0.5 + 3.0 / 8.0));
    CHECK(green_function(p3, 1, 2) == doctest::Approx(2.0));
}

TEST_CASE("return gaps") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    for (std::int64_t t = 1; t <= 5; ++t) CHECK(std::abs(return_gap(k2, 0, t)) < 1e-15);

    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    CHECK(return_gap(p3, 1, 1) == doctest::Approx(0.0));

    const Chain pstar = star_chain(Vec(4, 0.25), 0.5);
    CHECK(return_gap(pstar, 0, 3) == doctest::Approx(3.0 / 32.0));
}

TEST_CASE("return gap is non-increasing for nonnegative-spectrum chains") {
    for (const auto& g : {make_family(Family::path, {{"n", 7}}),
                          make_family(Family::cycle, {{"n", 9}}),
                          make_family(Family::star, {{"n", 8}})}) {
        const Chain c = lazy_walk_chain(g);
        for (int x = 0; x < c.n; ++x) {
            const Vec profile = return_prob_profile(c, x, 100);
            for (std::size_t t = 1; t < profile.size(); ++t)
                CHECK(profile[t] <= profile[t - 1] + 1e-12);
            CHECK(profile.back() - c.pi[x] >= -1e-10);
        }
    }
}

TEST_CASE("spectral and iterative green agree") {
    for (const auto& g : {make_family(Family::path, {{"n", 8}}),
                          make_family(Family::star, {{"n", 9}}),
                          make_family(Family::lollipop, {{"d", 3}, {"n", 12}}, 5)}) {
        const Chain c = lazy_walk_chain(g);
        const Spectrum s = spectrum(c);
        for (int x = 0; x < c.n; x += 2)
            for (std::int64_t t : {0, 1, 2, 5, 17, 64})
                CHECK(std::abs(green_function(c, x, t) - spectral_green(c, s, x, t)) < 1e-7);
    }
}

TEST_CASE("hitting-return identity") {
    // K2: E_pi[tau_0] = 1, so both sides are 1/2
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    const BoundCheck ck2 = check_formula_1_1(k2, 0);
    CHECK(ck2.lhs == doctest::Approx(0.5));
    CHECK(ck2.rhs == doctest::Approx(0.5));
    CHECK(ck2.pass);

    // P* with uniform pi on 4 states and gamma = 1/2: (1 - 1/4) * 2 = 3/2
    const Chain pstar = star_chain(Vec(4, 0.25), 0.5);
    const BoundCheck cps = check_formula_1_1(pstar, 0);
    CHECK(cps.lhs == doctest::Approx(1.5));
    CHECK(cps.rhs == doctest::Approx(1.5));
    CHECK(cps.pass);

    // the two independent computations act as each other's oracle
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    for (int x = 0; x < 3; ++x) {
        const BoundCheck c = check_formula_1_1(p3, x);
        CHECK(std::abs(c.margin) < 1e-7);
        CHECK(c.pass);
    }
}

TEST_CASE("hitting bound checks") {
    const auto k2 = verify_hitting_bounds(make_family(Family::complete, {{"n", 2}}), "k2");
    REQUIRE(k2.size() >= 2);
    CHECK(k2[0].name == "thm1.2:t_hit");
    CHECK(k2[0].lhs == doctest::Approx(2.0));
    CHECK(k2[0].rhs == doctest::Approx(20.0 * 2.0 * std::sqrt(2.0)));
    CHECK(k2[0].pass);

    const auto p3 = verify_hitting_bounds(make_family(Family::path, {{"n", 3}}), "p3");
    CHECK(p3[0].lhs == doctest::Approx(8.0));
    CHECK(p3[0].rhs == doctest::Approx(80.0 * std::sqrt(3.0)));

    // C4: t_hit = 8 and t_rel = 2, so the general bound reads 8 <= 12
    const auto c4 = verify_hitting_bounds(make_family(Family::cycle, {{"n", 4}}), "c4");
    CHECK(c4[1].name == "eq1.2:t_hit_general");
    CHECK(c4[1].lhs == doctest::Approx(8.0));
    CHECK(c4[1].rhs == doctest::Approx(12.0));

    for (const auto& g : {make_family(Family::star, {{"n", 9}}),
                          make_family(Family::random_regular, {{"n", 12}, {"d", 3}}, 2)}) {
        for (const BoundCheck& c : verify_hitting_bounds(g, "g")) CHECK_MESSAGE(c.pass, c.name);
    }
}

TEST_CASE("return bound checks") {
    const auto k2 = verify_return_bounds(make_family(Family::complete, {{"n", 2}}), "k2", 32);
    bool found = false;
    for (const BoundCheck& c : k2) {
        CHECK_MESSAGE((c.pass || c.report_only), c.name);
        if (c.name == "thm1.3:return" && c.x == 0 && c.t == 1) {
            found = true;
            CHECK(c.lhs == doctest::Approx(0.0));
            CHECK(c.rhs == doctest::Approx(10.0 * std::min(1.0 / std::sqrt(2.0), std::sqrt(2.0) / 2.0)));
        }
    }
    CHECK(found);

    const auto p3 = verify_return_bounds(make_family(Family::path, {{"n", 3}}), "p3", 32);
    for (const BoundCheck& c : p3) {
        CHECK_MESSAGE((c.pass || c.report_only), c.name << " x=" << c.x << " t=" << c.t);
        if (c.name == "thm1.3:return" && c.x == 1 && c.t == 0) {
            CHECK(c.lhs == doctest::Approx(0.5));
            CHECK(c.rhs == doctest::Approx(20.0));
        }
        // the general bound is met with equality at t = 0
        if (c.name == "eq1.3:return_general" && c.t == 0) CHECK(std::abs(c.margin) < 1e-12);
    }
}

TEST_CASE("green lemma checks") {
    const auto k2 = verify_green_lemmas(make_family(Family::complete, {{"n", 2}}), "k2");
    bool found32 = false, found31 = false;
    for (const BoundCheck& c : k2) {
        CHECK_MESSAGE(c.pass, c.name);
        if (c.name == "lem3.2:green" && c.x == 0 && c.t == 0) {
            found32 = true;
            CHECK(c.lhs == doctest::Approx(2.0));
            CHECK(c.rhs == doctest::Approx(12.0));
        }
        if (c.name == "lem3.1:a" && c.t == 0) {
            found31 = true;
            CHECK(std::abs(c.margin) < 1e-12);  // equality at t = 0
        }
    }
    CHECK(found32);
    CHECK(found31);

    for (const auto& g : {make_family(Family::path, {{"n", 9}}),
                          make_family(Family::star, {{"n", 8}}),
                          make_family(Family::stretched_expander, {{"n0", 4}, {"k", 3}}, 6)}) {
        for (const BoundCheck& c : verify_green_lemmas(g, "g"))
            CHECK_MESSAGE(c.pass, c.name << " x=" << c.x << " t=" << c.t);
    }
}

TEST_CASE("verification time grid") {
    const auto grid = verification_time_grid(64, 1.5);
    // dense through 10 * ceil(1.5) = 20, then powers of two
    CHECK(std::find(grid.begin(), grid.end(), 0) != grid.end());
    CHECK(std::find(grid.begin(), grid.end(), 20) != grid.end());
    CHECK(std::find(grid.begin(), grid.end(), 21) == grid.end());
    CHECK(std::find(grid.begin(), grid.end(), 32) != grid.end());
    CHECK(std::find(grid.begin(), grid.end(), 64) != grid.end());
    CHECK(grid.front() == 0);
    CHECK(grid.back() == 64);
}
