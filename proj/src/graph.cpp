#include "walklab/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "walklab/error.hpp"
#include "walklab/rng.hpp"

namespace walklab {

namespace {

bool connected(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n;
}

int require_param(const FamilySpec& spec, const std::string& key) {
    auto it = spec.parameters.find(key);
    if (it == spec.parameters.end())
        throw Error("infeasible_spec", family_name(spec.family) + " requires parameter '" + key + "'");
    return it->second;
}

// Pairing (configuration) model attempt; empty result when the pairing
// produced a loop, a parallel edge, or a disconnected graph.
std::vector<std::pair<int, int>> pairing_model_attempt(int n, int d, SplitMix64& rng) {
    std::vector<int> stubs(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < d; ++s) stubs[static_cast<std::size_t>(v) * d + s] = v;
    // Fisher-Yates
    for (std::size_t i = stubs.size(); i-- > 1;) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(stubs[i], stubs[j]);
    }
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int a = stubs[i];
        int b = stubs[i + 1];
        if (a == b) return {};
        if (a > b) std::swap(a, b);
        if (!edges.insert({a, b}).second) return {};
    }
    std::vector<std::pair<int, int>> out(edges.begin(), edges.end());
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : out) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (!connected(n, adj)) return {};
    return out;
}

std::vector<std::pair<int, int>> random_regular_edges(int n, int d, SplitMix64& rng, int retry_budget) {
    if (n < 2 || d < 1 || d >= n || (static_cast<std::int64_t>(n) * d) % 2 != 0)
        throw Error("infeasible_spec", "random regular needs 1 <= d < n and n*d even");
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        auto edges = pairing_model_attempt(n, d, rng);
        if (!edges.empty()) return edges;
    }
    throw Error("generation_failed", "pairing model retry budget exhausted");
}

} // namespace

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 2) throw Error("too_small", "graphs need at least 2 vertices");
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw Error("invalid_edge", "endpoint outside [0, n)");
        if (a == b) throw Error("self_loop", "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
        const int lo = std::min(a, b);
        const int hi = std::max(a, b);
        if (!seen.insert({lo, hi}).second)
            throw Error("duplicate_edge", "edge (" + std::to_string(lo) + "," + std::to_string(hi) + ")");
        adj[lo].push_back(hi);
        adj[hi].push_back(lo);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    if (!connected(n, adj)) throw Error("disconnected", "graph has more than one BFS component");

    Graph g;
    g.n = n;
    g.adjacency = std::move(adj);
    g.edge_count = static_cast<int>(seen.size());
    return g;
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    s.d_min = g.n;
    s.d_max = 0;
    for (int v = 0; v < g.n; ++v) {
        const int d = g.degree(v);
        s.d_min = std::min(s.d_min, d);
        s.d_max = std::max(s.d_max, d);
    }
    s.d_avg_num = 2LL * g.edge_count;
    s.d_avg_den = g.n;
    return s;
}

std::vector<int> distances(const Graph& g, int source) {
    std::vector<int> dist(g.n, -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

int diameter(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.n; ++v) {
        const auto d = distances(g, v);
        best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
}

BoundCheck check_path_fact(const Graph& g, const std::string& label) {
    const auto stats = degree_stats(g);
    const double lhs = diameter(g);
    const double rhs = 3.0 * g.n / stats.d_min - 1.0;
    return check_le("factA.1:path_fact", label, -1, -1, lhs, rhs);
}

Graph generate(const FamilySpec& spec, int retry_budget) {
    SplitMix64 rng(spec.seed);
    switch (spec.family) {
        case Family::path: {
            const int n = require_param(spec, "n");
            if (n < 2) throw Error("infeasible_spec", "path needs n >= 2");
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
            return build_graph(n, edges);
        }
        case Family::cycle: {
            const int n = require_param(spec, "n");
            if (n < 3) throw Error("infeasible_spec", "cycle needs n >= 3");
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
            edges.push_back({0, n - 1});
            return build_graph(n, edges);
        }
        case Family::complete: {
            const int n = require_param(spec, "n");
            if (n < 2) throw Error("infeasible_spec", "complete needs n >= 2");
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
            return build_graph(n, edges);
        }
        case Family::star: {
            const int n = require_param(spec, "n");
            if (n < 2) throw Error("infeasible_spec", "star needs n >= 2");
            std::vector<std::pair<int, int>> edges;
            for (int i = 1; i < n; ++i) edges.push_back({0, i});
            return build_graph(n, edges);
        }
        case Family::random_regular: {
            const int n = require_param(spec, "n");
            const int d = require_param(spec, "d");
            return build_graph(n, random_regular_edges(n, d, rng, retry_budget));
        }
        case Family::lollipop: {
            // d-regular random body on n/2 vertices, resampled until
            // connected, plus a path of n/2 extra vertices hung off vertex 0.
            const int n = require_param(spec, "n");
            const int d = require_param(spec, "d");
            if (n < 4 || n % 2 != 0) throw Error("infeasible_spec", "lollipop needs even n >= 4");
            const int body = n / 2;
            auto edges = random_regular_edges(body, d, rng, retry_budget);
            edges.push_back({0, body});
            for (int i = body; i + 1 < n; ++i) edges.push_back({i, i + 1});
            return build_graph(n, edges);
        }
        case Family::stretched_expander: {
            // random 3-regular base on n0 vertices, each edge replaced by a
            // path of k edges; new vertices appended in edge order.
            const int n0 = require_param(spec, "n0");
            const int k = require_param(spec, "k");
            if (k < 1) throw Error("infeasible_spec", "stretched expander needs k >= 1");
            auto base = random_regular_edges(n0, 3, rng, retry_budget);
            std::sort(base.begin(), base.end());
            int next_vertex = n0;
            std::vector<std::pair<int, int>> edges;
            for (auto [a, b] : base) {
                int prev = a;
                for (int s = 1; s < k; ++s) {
                    edges.push_back({prev, next_vertex});
                    prev = next_vertex++;
                }
                edges.push_back({prev, b});
            }
            return build_graph(next_vertex, edges);
        }
    }
    throw Error("infeasible_spec", "unknown family");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::complete: return "complete";
        case Family::star: return "star";
        case Family::lollipop: return "lollipop";
        case Family::stretched_expander: return "stretched_expander";
        case Family::random_regular: return "random_regular";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "complete") return Family::complete;
    if (name == "star") return Family::star;
    if (name == "lollipop") return Family::lollipop;
    if (name == "stretched_expander") return Family::stretched_expander;
    if (name == "random_regular") return Family::random_regular;
    throw Error("infeasible_spec", "unknown family '" + name + "'");
}

std::string spec_label(const FamilySpec& spec) {
    std::ostringstream out;
    out << family_name(spec.family);
    for (const auto& [key, value] : spec.parameters) out << "_" << key << value;
    const bool randomized = spec.family == Family::lollipop ||
                            spec.family == Family::stretched_expander ||
                            spec.family == Family::random_regular;
    if (randomized) out << "_s" << spec.seed;
    return out.str();
}

std::vector<std::pair<int, int>> edge_list(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edge_count);
    for (int v = 0; v < g.n; ++v)
        for (int w : g.adjacency[v])
            if (v < w) edges.push_back({v, w});
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::string graph_to_json(const Graph& g) {
    std::ostringstream out;
    out << "{\"n\":" << g.n << ",\"edges\":[";
    bool first = true;
    for (auto [a, b] : edge_list(g)) {
        if (!first) out << ",";
        first = false;
        out << "[" << a << "," << b << "]";
    }
    out << "]}";
    return out.str();
}

Graph graph_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    return build_graph(j.at("n").get<int>(), edges);
}

} // namespace walklab
