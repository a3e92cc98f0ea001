#pragma once

// Deterministic report assembly: fixed key order, every number printed with
// 17 significant digits, so two runs with the same seed produce identical
// bytes (modulo the optional timestamp).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oplab/canonical_product.hpp"
#include "oplab/checks.hpp"

namespace oplab::report {

inline constexpr const char* kVersion = "1.0.0";

inline std::string format_number(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Bare 17-digit form, for CSV cells.
inline std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

struct Config {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    int n = 0;
    std::vector<double> p_values;
    std::map<std::string, double> tolerances;
    std::string format = "json";  // json | csv
    bool with_timestamp = true;
    std::string timestamp;  // filled by the caller when enabled
};

struct Report {
    Config config;
    std::vector<verify::CheckResult> results;
    std::vector<verify::EnsembleStats> stats;
    // optional zero-set analysis section; present iff has_cartwright
    bool has_cartwright = false;
    entire::CartwrightReport cartwright;
};

namespace detail {

inline void write_map(std::ostringstream& os, const std::map<std::string, double>& m) {
    os << '{';
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) os << ',';
        first = false;
        os << quote(k) << ':' << format_number(v);
    }
    os << '}';
}

inline void write_pmap(std::ostringstream& os, const std::map<double, double>& m) {
    os << '{';
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) os << ',';
        first = false;
        os << '"' << format_cell(k) << "\":" << format_number(v);
    }
    os << '}';
}

inline void write_result(std::ostringstream& os, const verify::CheckResult& r) {
    os << "{\"check_id\":" << quote(r.check_id)
       << ",\"lhs\":" << format_number(r.lhs)
       << ",\"rhs\":" << format_number(r.rhs)
       << ",\"residual\":" << format_number(r.residual)
       << ",\"tolerance\":" << format_number(r.tolerance)
       << ",\"passed\":" << (r.passed ? "true" : "false")
       << ",\"skipped_points\":" << r.skipped_points
       << ",\"diagnostics\":";
    write_map(os, r.diagnostics);
    os << '}';
}

inline void write_stats(std::ostringstream& os, const verify::EnsembleStats& s) {
    os << "{\"check_id\":" << quote(s.check_id)
       << ",\"n_instances\":" << s.n_instances
       << ",\"seed\":" << s.seed
       << ",\"ratio_max\":" << format_number(s.ratio_max)
       << ",\"ratio_mean\":" << format_number(s.ratio_mean)
       << ",\"failures\":" << s.failures << '}';
}

inline void write_cartwright(std::ostringstream& os, const entire::CartwrightReport& c) {
    os << "{\"sigma\":" << format_number(c.sigma)
       << ",\"sigma_plus\":" << format_number(c.sigma_plus)
       << ",\"sigma_minus\":" << format_number(c.sigma_minus)
       << ",\"gamma_plus\":" << format_number(c.gamma_plus)
       << ",\"gamma_minus\":" << format_number(c.gamma_minus)
       << ",\"is_cartwright\":" << (c.is_cartwright ? "true" : "false")
       << ",\"alpha_p\":";
    write_pmap(os, c.alpha_p);
    os << ",\"alpha_inv_p\":";
    write_pmap(os, c.alpha_inv_p);
    os << ",\"gamma_p\":";
    write_pmap(os, c.gamma_p);
    os << ",\"residuals\":";
    write_map(os, c.residuals);
    os << '}';
}

}  // namespace detail

inline std::string to_json(const Report& rep) {
    std::ostringstream os;
    const Config& c = rep.config;
    os << "{\"config\":{\"command\":" << quote(c.command) << ",\"inputs\":[";
    for (size_t i = 0; i < c.inputs.size(); ++i)
        os << (i ? "," : "") << quote(c.inputs[i]);
    os << "],\"seed\":" << c.seed << ",\"n\":" << c.n << ",\"p_values\":[";
    for (size_t i = 0; i < c.p_values.size(); ++i)
        os << (i ? "," : "") << format_number(c.p_values[i]);
    os << "],\"tolerances\":";
    detail::write_map(os, c.tolerances);
    os << ",\"version\":" << quote(kVersion);
    if (c.with_timestamp) os << ",\"timestamp\":" << quote(c.timestamp);
    os << '}';
    if (rep.has_cartwright) {
        os << ",\"cartwright\":";
        detail::write_cartwright(os, rep.cartwright);
    }
    os << ",\"results\":[";
    for (size_t i = 0; i < rep.results.size(); ++i) {
        if (i) os << ',';
        detail::write_result(os, rep.results[i]);
    }
    os << "],\"stats\":[";
    for (size_t i = 0; i < rep.stats.size(); ++i) {
        if (i) os << ',';
        detail::write_stats(os, rep.stats[i]);
    }
    os << "]}\n";
    return os.str();
}

inline std::string to_csv(const Report& rep) {
    std::ostringstream os;
    os << "check_id,lhs,rhs,residual,tolerance,passed,skipped_points\n";
    for (const auto& r : rep.results)
        os << r.check_id << ',' << format_cell(r.lhs) << ',' << format_cell(r.rhs)
           << ',' << format_cell(r.residual) << ',' << format_cell(r.tolerance)
           << ',' << (r.passed ? "true" : "false") << ',' << r.skipped_points << '\n';
    if (!rep.stats.empty()) {
        os << "check_id,n_instances,seed,ratio_max,ratio_mean,failures\n";
        for (const auto& s : rep.stats)
            os << s.check_id << ',' << s.n_instances << ',' << s.seed << ','
               << format_cell(s.ratio_max) << ',' << format_cell(s.ratio_mean)
               << ',' << s.failures << '\n';
    }
    return os.str();
}

inline std::string render(const Report& rep) {
    return rep.config.format == "csv" ? to_csv(rep) : to_json(rep);
}

}  // namespace oplab::report
