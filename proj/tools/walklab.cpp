// walklab — generate graphs, analyze walks, verify the bound suite, run
// coalescence simulations, and sweep graph families for scaling checks.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "walklab/chain.hpp"
#include "walklab/coalescing.hpp"
#include "walklab/error.hpp"
#include "walklab/graph.hpp"
#include "walklab/hitting.hpp"
#include "walklab/report.hpp"
#include "walklab/suite.hpp"

namespace {

struct FamilyFlags {
    std::string family;
    std::optional<int> n, d, n0, k;
    std::uint64_t seed = 0;
    std::string input_path;

    void attach(CLI::App* cmd, bool allow_input) {
        cmd->add_option("--family", family, "graph family: path, cycle, complete, star, lollipop, stretched_expander, random_regular");
        cmd->add_option("--n", n, "vertex count");
        cmd->add_option("--d", d, "regular degree (lollipop, random_regular)");
        cmd->add_option("--n0", n0, "base vertex count (stretched_expander)");
        cmd->add_option("--k", k, "subdivision length (stretched_expander)");
        cmd->add_option("--seed", seed, "seed for randomized families");
        if (allow_input) cmd->add_option("--in", input_path, "read graph JSON instead of generating");
    }

    walklab::FamilySpec spec() const {
        walklab::FamilySpec s;
        s.family = walklab::family_from_name(family);
        if (n) s.parameters["n"] = *n;
        if (d) s.parameters["d"] = *d;
        if (n0) s.parameters["n0"] = *n0;
        if (k) s.parameters["k"] = *k;
        s.seed = seed;
        return s;
    }

    std::pair<walklab::Graph, std::string> resolve() const {
        if (!input_path.empty()) {
            const walklab::Graph g = walklab::graph_from_json(walklab::read_text_file(input_path));
            return {g, std::filesystem::path(input_path).stem().string()};
        }
        if (family.empty()) throw walklab::Error("usage", "give either --in or --family");
        const auto s = spec();
        return {walklab::generate(s), walklab::spec_label(s)};
    }
};

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content << "\n";
    else
        walklab::write_text_file(out_path, content);
}

std::string analyze_json(const walklab::Graph& g, const std::string& label) {
    const walklab::Chain chain = walklab::lazy_walk_chain(g, label);
    const walklab::Spectrum s = walklab::spectrum(chain);
    const walklab::HittingProfile hp = walklab::hitting_times(chain);

    nlohmann::json j;
    j["graph_label"] = label;
    j["n"] = g.n;
    j["chain"] = nlohmann::json::parse(walklab::chain_to_json(chain));
    j["eigenvalues"] = s.eigenvalues;
    j["t_rel"] = walklab::relaxation_time(s);
    j["mixing_time"] = walklab::mixing_time(chain);
    j["t_hit"] = hp.t_hit;
    j["hitting_from_pi"] = hp.from_pi;
    auto rows = nlohmann::json::array();
    for (int y = 0; y < g.n; ++y) {
        auto row = nlohmann::json::array();
        for (int x = 0; x < g.n; ++x) row.push_back(hp.expected_hit(y, x));
        rows.push_back(std::move(row));
    }
    j["expected_hit"] = std::move(rows);
    return j.dump(2);
}

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-walk verification toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph and write canonical JSON");
    FamilyFlags gen_flags;
    gen_flags.attach(gen, false);
    std::string gen_out;
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "dump spectrum and hitting profile");
    FamilyFlags analyze_flags;
    analyze_flags.attach(analyze, true);
    std::string analyze_out;
    analyze->add_option("--out", analyze_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the bound/identity verification suite");
    std::string config_path, output_dir, checks_csv;
    std::optional<std::int64_t> horizon_flag;
    std::optional<int> replicas_flag;
    std::optional<std::uint64_t> seed_flag;
    verify->add_option("--config", config_path, "JSON config mirroring the suite settings");
    verify->add_option("--output-dir", output_dir, "directory for CSV/JSON reports");
    verify->add_option("--horizon", horizon_flag, "time grid cap");
    verify->add_option("--replicas", replicas_flag, "Monte Carlo replica count");
    verify->add_option("--seed", seed_flag, "master seed");
    verify->add_option("--checks", checks_csv,
                       "comma list from: hitting,return,green,network,meeting,coalescing,sharpness");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coalescence estimate");
    FamilyFlags sim_flags;
    sim_flags.attach(simulate, true);
    int sim_replicas = 1000;
    std::uint64_t sim_seed = 1;
    std::string sim_out;
    simulate->add_option("--replicas", sim_replicas, "replica count");
    simulate->add_option("--sim-seed", sim_seed, "master seed for replicas");
    simulate->add_option("--out", sim_out, "output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sharpness sweep over a graph family");
    std::string sweep_kind, sweep_sizes, sweep_out;
    std::uint64_t sweep_seed = 1;
    int sweep_d = 3, sweep_n0 = 8;
    sweep->add_option("--kind", sweep_kind, "lollipop or stretched_expander")->required();
    sweep->add_option("--sizes", sweep_sizes, "comma list of n (lollipop) or k values")->required();
    sweep->add_option("--seed", sweep_seed, "master seed");
    sweep->add_option("--d", sweep_d, "lollipop body degree");
    sweep->add_option("--n0", sweep_n0, "stretched expander base size");
    sweep->add_option("--out", sweep_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_flags.family.empty()) throw walklab::Error("usage", "gen requires --family");
            const auto spec = gen_flags.spec();
            emit(gen_out, walklab::graph_to_json(walklab::generate(spec)));
        } else if (analyze->parsed()) {
            const auto [g, label] = analyze_flags.resolve();
            emit(analyze_out, analyze_json(g, label));
        } else if (verify->parsed()) {
            walklab::SuiteConfig cfg;
            bool have_config = false;
            if (!config_path.empty()) {
                cfg = walklab::suite_config_from_json(walklab::read_text_file(config_path));
                have_config = true;
            }
            if (seed_flag) cfg.seed = *seed_flag;
            if (!have_config) cfg = walklab::default_suite(cfg.seed);
            if (seed_flag) cfg.seed = *seed_flag;
            if (horizon_flag) cfg.horizon = *horizon_flag;
            if (replicas_flag) cfg.replicas = *replicas_flag;
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            if (!checks_csv.empty()) {
                cfg.checks.clear();
                std::stringstream ss(checks_csv);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.checks.insert(item);
            }
            const walklab::VerifySummary summary = walklab::run_verify(cfg);
            std::cout << "total checks: " << summary.total_checks
                      << ", failures: " << summary.failures.size()
                      << ", expected failures: " << summary.expected_failures.size() << "\n";
            for (const std::string& f : summary.failures) std::cout << "FAIL " << f << "\n";
            return summary.failures.empty() ? 0 : 1;
        } else if (simulate->parsed()) {
            const auto [g, label] = sim_flags.resolve();
            const walklab::Chain chain = walklab::lazy_walk_chain(g, label);
            const auto est = walklab::estimate_tcoal(chain, sim_replicas, sim_seed);
            emit(sim_out, walklab::simulation_report_json(label, g.n, est));
        } else if (sweep->parsed()) {
            const auto kind = walklab::family_from_name(sweep_kind);
            const auto report = walklab::sweep_sharpness(kind, parse_sizes(sweep_sizes), sweep_seed,
                                                         sweep_d, sweep_n0);
            std::ostringstream out;
            out << walklab::sweep_report_csv(report);
            out << "slope_thit," << walklab::fmt_sig(report.slope_thit) << "\r\n";
            if (kind == walklab::Family::lollipop)
                out << "slope_trel," << walklab::fmt_sig(report.slope_trel) << "\r\n";
            emit(sweep_out, out.str());
        }
    } catch (const walklab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "usage" ? 64 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
