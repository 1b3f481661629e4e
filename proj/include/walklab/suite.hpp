#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "walklab/graph.hpp"

namespace walklab {

// Verification-run configuration; mirrors the JSON config file. CLI flags
// override file values.
struct SuiteConfig {
    std::vector<FamilySpec> families;
    std::int64_t horizon = 256;
    int replicas = 200;
    std::uint64_t seed = 1;
    std::string output_dir = ".";
    std::set<std::string> checks = {"hitting", "return",  "green",    "network",
                                    "meeting", "coalescing", "sharpness"};
};

// Desk-scale default: paths/cycles 3..16, complete 2..8, stars 4..16,
// lollipops (3, {8,16,32}), stretched expanders (8, {2,4}), random regular
// (16,3) and (32,4). Randomized family seeds derive from the master seed.
SuiteConfig default_suite(std::uint64_t seed = 1);

SuiteConfig suite_config_from_json(const std::string& text);
std::string suite_config_to_json(const SuiteConfig& cfg);

struct VerifySummary {
    std::int64_t total_checks = 0;
    std::vector<std::string> failures;
    std::vector<std::string> expected_failures;
    double max_ratio_to_thit = 0.0;
    double max_cor17_ratio = 0.0;
    double max_unit_resistance_constant = 0.0;
};

// Runs every configured check family over every configured graph, writes one
// CSV per family plus summary.json under cfg.output_dir, and returns the
// summary. A nonzero number of (unexpected) failures means the run failed.
VerifySummary run_verify(const SuiteConfig& cfg);

struct SweepPoint {
    int parameter = 0;  // n for lollipops, k for stretched expanders
    int n = 0;
    double t_rel = 0.0;
    double t_hit = 0.0;
};

struct SweepReport {
    std::string kind;
    std::vector<SweepPoint> points;
    // lollipop: log t_rel vs log n, expected near 2
    double slope_trel = 0.0;
    // log t_hit vs log(d n sqrt(t_rel)) (lollipop) or log(n sqrt(t_rel))
    double slope_thit = 0.0;
};

// Sharpness sweeps; `sizes` are n values (lollipop, fixed d) or k values
// (stretched expander, fixed n0). Needs at least 3 sizes.
SweepReport sweep_sharpness(Family kind, const std::vector<int>& sizes, std::uint64_t seed,
                            int d = 3, int n0 = 8);

std::string sweep_report_csv(const SweepReport& report);

} // namespace walklab
