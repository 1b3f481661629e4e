#pragma once

#include <cstdint>
#include <string>

namespace walklab {

// One verified inequality or identity instance. `margin` is rhs - lhs; an
// inequality passes when margin >= -tol, an identity when |margin| <= tol.
// Rows flagged report_only carry prior-art comparisons and never gate a run.
struct BoundCheck {
    std::string name;
    std::string graph_label;
    std::int64_t x = -1;  // vertex index, -1 when not applicable
    std::int64_t t = -1;  // time index, -1 when not applicable
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
    bool two_sided = false;
    bool report_only = false;
    double tol = 1e-9;
};

inline BoundCheck check_le(std::string name, std::string graph_label, std::int64_t x,
                           std::int64_t t, double lhs, double rhs, double tol = 1e-9) {
    BoundCheck c;
    c.name = std::move(name);
    c.graph_label = std::move(graph_label);
    c.x = x;
    c.t = t;
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.tol = tol;
    c.pass = c.margin >= -tol;
    return c;
}

inline BoundCheck check_identity(std::string name, std::string graph_label, std::int64_t x,
                                 std::int64_t t, double lhs, double rhs, double tol) {
    BoundCheck c = check_le(std::move(name), std::move(graph_label), x, t, lhs, rhs, tol);
    c.two_sided = true;
    c.pass = c.margin >= -tol && c.margin <= tol;
    return c;
}

inline BoundCheck report_row(std::string name, std::string graph_label, std::int64_t x,
                             std::int64_t t, double lhs, double rhs) {
    BoundCheck c = check_le(std::move(name), std::move(graph_label), x, t, lhs, rhs);
    c.report_only = true;
    return c;
}

} // namespace walklab
