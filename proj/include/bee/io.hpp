#pragma once

// CSV writers with fixed column schemas. Numbers use the shortest decimal
// form that round-trips, so reruns produce byte-identical files.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "bee/errors.hpp"
#include "bee/phase.hpp"

namespace bee::io {

inline constexpr const char* phase_header = "k,T1,T2";
inline constexpr const char* curves_header = "T_star,lambda_mic,lambda_can,s_inf,delta_inf,regime";
inline constexpr const char* trace_header = "step,edge_density,t_F,lambda_over_n";

inline std::string fmt(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

inline std::ofstream open_out(const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ResourceError("cannot open " + p.string() + " for writing");
    return f;
}

inline void write_phase_csv(std::ostream& out, const PhaseDiagram& pd) {
    out << phase_header << '\n';
    for (const PhaseRow& r : pd.rows) out << fmt(r.k) << ',' << fmt(r.T1) << ',' << fmt(r.T2) << '\n';
}

inline void write_curves_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
    out << curves_header << '\n';
    for (const CurveRow& r : rows) {
        out << fmt(r.T_star) << ',' << fmt(r.lambda_mic) << ',' << fmt(r.lambda_can) << ','
            << fmt(r.s_inf) << ',' << fmt(r.delta_inf) << ',' << to_string(r.regime) << '\n';
    }
}

/// T* grid "LO:HI[:N]": N points (default 200) in [LO, HI], both ends included.
/// Returns nullopt on malformed text.
inline std::optional<std::vector<double>> parse_grid(const std::string& spec, std::size_t default_n = 200) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = spec.find(':', start);
        parts.push_back(spec.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
    const auto num = [](const std::string& s, double& v) {
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        return r.ec == std::errc() && r.ptr == s.data() + s.size() && !s.empty();
    };
    double lo = 0.0, hi = 0.0, nd = double(default_n);
    if (!num(parts[0], lo) || !num(parts[1], hi)) return std::nullopt;
    if (parts.size() == 3 && !num(parts[2], nd)) return std::nullopt;
    const auto n = std::size_t(nd);
    if (!(hi >= lo) || double(n) != nd || n < 1 || (n == 1 && hi != lo)) return std::nullopt;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

} // namespace bee::io
