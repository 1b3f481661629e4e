#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "walklab/error.hpp"
#include "walklab/graph.hpp"
#include "walklab/network.hpp"
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

} // namespace

TEST_CASE("chain network conductances") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    const ConductanceNetwork nk2 = chain_network(k2);
    CHECK(nk2.conductance(0, 1) == doctest::Approx(0.25));
    CHECK(nk2.conductance(0, 0) == 0.0);
    CHECK(nk2.node_weight[0] == doctest::Approx(0.5));

    // every LRW edge carries exactly 1/(4|E|)
    const Graph p3g = make_family(Family::path, {{"n", 3}});
    const ConductanceNetwork np3 = chain_network(lazy_walk_chain(p3g));
    CHECK(np3.conductance(0, 1) == doctest::Approx(1.0 / 8.0));
    CHECK(np3.conductance(1, 2) == doctest::Approx(1.0 / 8.0));

    const Chain jump = star_chain(Vec(3, 1.0 / 3.0), 1.0);
    const ConductanceNetwork nj = chain_network(jump);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) CHECK(nj.conductance(a, b) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("unit network") {
    const ConductanceNetwork n = unit_network(make_family(Family::cycle, {{"n", 4}}));
    CHECK(n.conductance(0, 1) == 1.0);
    CHECK(n.conductance(0, 2) == 0.0);
    CHECK(n.node_weight[0] == doctest::Approx(2.0));
}

TEST_CASE("effective resistance on solvable networks") {
    const ConductanceNetwork k2 = chain_network(lazy_walk_chain(make_family(Family::complete, {{"n", 2}})));
    CHECK(effective_resistance(k2, 0, {1}) == doctest::Approx(4.0));

    // two 8-ohm edges in series
    const ConductanceNetwork p3 = chain_network(lazy_walk_chain(make_family(Family::path, {{"n", 3}})));
    CHECK(effective_resistance(p3, 0, {2}) == doctest::Approx(16.0));

    // two length-2 unit paths in parallel
    const ConductanceNetwork c4 = unit_network(make_family(Family::cycle, {{"n", 4}}));
    CHECK(effective_resistance(c4, 0, {2}) == doctest::Approx(1.0));

    CHECK_THROWS_WITH_AS(effective_resistance(c4, 0, {}), doctest::Contains("invalid_argument"), Error);
    CHECK_THROWS_WITH_AS(effective_resistance(c4, 0, {0}), doctest::Contains("invalid_argument"), Error);
}

TEST_CASE("series and parallel laws are exact on paths and cycles") {
    for (int n = 3; n <= 12; ++n) {
        const ConductanceNetwork path = unit_network(make_family(Family::path, {{"n", n}}));
        CHECK(std::abs(effective_resistance(path, 0, {n - 1}) - (n - 1)) < 1e-9);

        const ConductanceNetwork cyc = unit_network(make_family(Family::cycle, {{"n", n}}));
        for (int k = 1; k < n; ++k) {
            const double expected = static_cast<double>(k) * (n - k) / n;
            CHECK(std::abs(effective_resistance(cyc, 0, {k}) - expected) < 1e-9);
        }
    }
}

TEST_CASE("two-point resistance is symmetric") {
    const Graph g = make_family(Family::lollipop, {{"d", 3}, {"n", 12}}, 17);
    const ConductanceNetwork net = unit_network(g);
    SplitMix64 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const int x = static_cast<int>(rng.below(g.n));
        int y = static_cast<int>(rng.below(g.n));
        if (x == y) continue;
        CHECK(std::abs(effective_resistance(net, x, {y}) - effective_resistance(net, y, {x})) < 1e-9);
    }
}

TEST_CASE("expected visits before hitting") {
    const Chain k2 = lazy_walk_chain(make_family(Family::complete, {{"n", 2}}));
    CHECK(visits_before_hitting(k2, 0, {1}) == doctest::Approx(2.0));

    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    CHECK(visits_before_hitting(p3, 0, {2}) == doctest::Approx(4.0));
    // escape from the middle: one absorbing state on each side
    CHECK(visits_before_hitting(p3, 1, {0, 2}) == doctest::Approx(2.0));
}

TEST_CASE("visits identity matches resistance") {
    const Chain p3 = lazy_walk_chain(make_family(Family::path, {{"n", 3}}));
    const ConductanceNetwork net = chain_network(p3);
    CHECK(visits_before_hitting(p3, 0, {2}) / p3.pi[0] == doctest::Approx(effective_resistance(net, 0, {2})));

    const Graph g = make_family(Family::random_regular, {{"n", 10}, {"d", 3}}, 33);
    const Chain c = lazy_walk_chain(g);
    const ConductanceNetwork cn = chain_network(c);
    SplitMix64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const int x = static_cast<int>(rng.below(g.n));
        const int y = static_cast<int>(rng.below(g.n));
        if (x == y) continue;
        CHECK(std::abs(visits_before_hitting(c, x, {y}) / c.pi[x] -
                       effective_resistance(cn, x, {y})) < 1e-7);
    }
}

TEST_CASE("Rayleigh monotonicity under edge deletion") {
    const Graph g = make_family(Family::random_regular, {{"n", 10}, {"d", 4}}, 12);
    const ConductanceNetwork full = unit_network(g);
    const auto edges = edge_list(g);
    SplitMix64 rng(9);
    int tested = 0;
    for (int trial = 0; trial < 30 && tested < 8; ++trial) {
        const auto& drop = edges[rng.below(edges.size())];
        std::vector<std::pair<int, int>> kept;
        for (const auto& e : edges)
            if (e != drop) kept.push_back(e);
        Graph smaller;
        try {
            smaller = build_graph(g.n, kept);
        } catch (const Error&) {
            continue;  // deletion disconnected the graph
        }
        const ConductanceNetwork reduced = unit_network(smaller);
        const int x = static_cast<int>(rng.below(g.n));
        const int y = static_cast<int>(rng.below(g.n));
        if (x == y) continue;
        CHECK(effective_resistance(reduced, x, {y}) >=
              effective_resistance(full, x, {y}) - 1e-9);
        ++tested;
    }
    CHECK(tested > 0);
}

TEST_CASE("network proposition checks") {
    const auto k2 = verify_network_propositions(make_family(Family::complete, {{"n", 2}}), "k2", 1);
    bool saw_commute = false;
    for (const BoundCheck& c : k2) {
        CHECK_MESSAGE((c.pass || c.report_only), c.name);
        if (c.name == "prop3.3:trel_le_commute") {
            saw_commute = true;
            CHECK(c.lhs == doctest::Approx(1.0));
            CHECK(c.rhs == doctest::Approx(4.0));
        }
        if (c.name == "prop3.3:commute_ceiling") {
            CHECK(c.lhs == doctest::Approx(4.0));
            CHECK(c.rhs == doctest::Approx(20.0));
        }
    }
    CHECK(saw_commute);

    const auto p3 = verify_network_propositions(make_family(Family::path, {{"n", 3}}), "p3", 1);
    bool saw_escape = false, saw_identity = false, saw_report = false;
    for (const BoundCheck& c : p3) {
        CHECK_MESSAGE((c.pass || c.report_only), c.name << " x=" << c.x);
        if (c.name == "prop3.4:escape_visits" && c.x == 0 && c.t == 1 && c.lhs > 15.0) {
            saw_escape = true;
            CHECK(c.lhs == doctest::Approx(16.0));
            CHECK(c.rhs == doctest::Approx(9.0 * 16.0 * 0.75));
        }
        if (c.name == "lpw9.6:visits_eq_reff") saw_identity = true;
        if (c.name == "cor1.6:unit_reff:report") {
            saw_report = true;
            CHECK(c.report_only);
        }
    }
    CHECK(saw_escape);
    CHECK(saw_identity);
    CHECK(saw_report);

    for (const auto& g : {make_family(Family::star, {{"n", 8}}),
                          make_family(Family::stretched_expander, {{"n0", 4}, {"k", 2}}, 3)}) {
        for (const BoundCheck& c : verify_network_propositions(g, "g", 5))
            CHECK_MESSAGE((c.pass || c.report_only), c.name << " x=" << c.x << " t=" << c.t);
    }
}
