#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "walklab/bound_check.hpp"

namespace walklab {

// Simple connected undirected graph. Adjacency lists are strictly increasing
// and never contain the owner; immutable after construction.
struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adjacency;
    int edge_count = 0;

    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
};

struct DegreeStats {
    int d_min = 0;
    int d_max = 0;
    std::int64_t d_avg_num = 0;  // 2|E|
    std::int64_t d_avg_den = 1;  // n

    double d_avg() const { return static_cast<double>(d_avg_num) / static_cast<double>(d_avg_den); }
};

enum class Family { path, cycle, complete, star, lollipop, stretched_expander, random_regular };

// Construction recipe for a graph family. `parameters` holds the family's
// integer knobs: n; or d and n; or n0 and k.
struct FamilySpec {
    Family family = Family::path;
    std::map<std::string, int> parameters;
    std::uint64_t seed = 0;  // only used by randomized families
};

// Validates and builds; throws Error with code `too_small`, `self_loop`,
// `duplicate_edge` or `disconnected`.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

DegreeStats degree_stats(const Graph& g);

// BFS distances from `source`; all finite by connectivity.
std::vector<int> distances(const Graph& g, int source);

int diameter(const Graph& g);

// Path Fact: for a connected simple graph, diameter <= 3n/d_min - 1.
BoundCheck check_path_fact(const Graph& g, const std::string& label = "");

// Deterministic for fixed spec + seed. Randomized families resample until
// connected/simple within a retry budget (default 1000), then throw
// Error("generation_failed"). Infeasible parameters throw
// Error("infeasible_spec").
Graph generate(const FamilySpec& spec, int retry_budget = 1000);

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Short stable label, e.g. "path_n8" or "random_regular_n16_d3_s7".
std::string spec_label(const FamilySpec& spec);

// Canonical edge list: i<j pairs in lexicographic order.
std::vector<std::pair<int, int>> edge_list(const Graph& g);

// Canonical JSON form {"n": int, "edges": [[i,j],...]}.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

} // namespace walklab
