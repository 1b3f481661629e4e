#include "walklab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "walklab/error.hpp"

namespace walklab {

std::string fmt_sig(double v, int sig) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += "\r\n";
    return out;
}

std::string bound_checks_csv(const std::vector<BoundCheck>& checks) {
    std::string out = csv_line({"name", "graph_label", "x", "t", "lhs", "rhs", "margin", "pass"});
    for (const BoundCheck& c : checks) {
        out += csv_line({c.name, c.graph_label,
                         c.x < 0 ? "" : std::to_string(c.x),
                         c.t < 0 ? "" : std::to_string(c.t),
                         fmt_sig(c.lhs), fmt_sig(c.rhs), fmt_sig(c.margin),
                         c.pass ? "true" : "false"});
    }
    return out;
}

std::string survivals_csv(std::vector<SurvivalResult> rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const SurvivalResult& a, const SurvivalResult& b) {
        if (a.graph_label != b.graph_label) return a.graph_label < b.graph_label;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        if (a.t != b.t) return a.t < b.t;
        return a.index < b.index;
    });
    std::string out =
        csv_line({"graph_label", "kind", "t", "probability", "bound", "margin", "pass"});
    for (const SurvivalResult& r : rows) {
        out += csv_line({r.graph_label, trajectory_kind_name(r.kind), std::to_string(r.t),
                         fmt_sig(r.probability), fmt_sig(r.bound), fmt_sig(r.margin),
                         r.pass ? "true" : "false"});
    }
    return out;
}

std::string simulation_report_json(const std::string& graph_label, int n,
                                   const CoalescenceEstimate& est) {
    std::ostringstream out;
    out << "{\"graph_label\":\"" << graph_label << "\",\"n\":" << n
        << ",\"replicas\":" << est.replicas << ",\"seed\":" << est.seed
        << ",\"mean\":" << fmt_sig(est.mean, 17) << ",\"stderr\":" << fmt_sig(est.stderr_, 17)
        << ",\"t_hit\":" << fmt_sig(est.t_hit, 17)
        << ",\"ratio_to_thit\":" << fmt_sig(est.ratio_to_thit, 17)
        << ",\"horizon_exceeded_count\":" << est.horizon_exceeded_count;
    if (est.degenerate_sample) out << ",\"degenerate_sample\":true";
    out << "}";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io_error", "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("io_error", "short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io_error", "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace walklab
