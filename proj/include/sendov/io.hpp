#pragma once

// File formats: polynomial JSON, locale-free CSV, and key=value run configs.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sendov/poly.hpp"
#include "sendov/tolerances.hpp"

namespace sendov::io {

using nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("expected [re, im]");
    const Complex z{j[0].get<double>(), j[1].get<double>()};
    if (!is_finite(z)) throw FormatError("non-finite complex value");
    return z;
}

inline json to_json(std::span<const Complex> zs) {
    json arr = json::array();
    for (const auto& z : zs) arr.push_back(to_json(z));
    return arr;
}

inline std::vector<Complex> complex_list(const json& j) {
    if (!j.is_array()) throw FormatError("expected a list of [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

/// {"coeffs": [...]} holds a_0..a_{n-1} (monic implied); {"roots": [...]} the
/// zero multiset. Exactly one of the two keys must be present.
inline MonicPoly poly_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("polynomial: expected a JSON object");
    const bool has_c = j.contains("coeffs"), has_r = j.contains("roots");
    if (has_c == has_r) throw FormatError("polynomial: give exactly one of \"coeffs\" or \"roots\"");
    auto vals = complex_list(has_c ? j.at("coeffs") : j.at("roots"));
    if (vals.empty()) throw FormatError("polynomial: degree must be >= 1");
    return has_c ? MonicPoly::from_coeffs(std::move(vals)) : MonicPoly::from_roots(std::move(vals));
}

inline json poly_to_json(const MonicPoly& p) {
    json j;
    j["coeffs"] = to_json(p.coeffs());
    if (p.cached_roots()) j["roots_hint"] = to_json(*p.cached_roots());
    return j;
}

inline MonicPoly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    return poly_from_json(j);
}

/// 17 significant digits, '.' decimal point regardless of locale.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
}

inline double parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw FormatError("bad number: " + std::string(s));
    return v;
}

struct RunConfig {
    Tolerances tolerances;
    std::map<std::string, std::vector<double>> grids;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string format = "json";

    void validate() const {
        const double ts[] = {tolerances.root_residual_tol, tolerances.classify_tol,   tolerances.pos_sing_tol,
                             tolerances.crit_tie_tol,      tolerances.boundary_tol, tolerances.simple_root_tol};
        for (double t : ts)
            if (!(t > 0.0)) throw FormatError("tolerances must be positive");
        if (format != "json" && format != "csv") throw FormatError("format must be json or csv");
    }
};

inline double* tolerance_slot(Tolerances& t, std::string_view key) {
    if (key == "root_residual_tol") return &t.root_residual_tol;
    if (key == "classify_tol") return &t.classify_tol;
    if (key == "pos_sing_tol") return &t.pos_sing_tol;
    if (key == "crit_tie_tol") return &t.crit_tie_tol;
    if (key == "boundary_tol") return &t.boundary_tol;
    if (key == "simple_root_tol") return &t.simple_root_tol;
    return nullptr;
}

/// key = value lines; '#' starts a comment. Grids are "grid.<name> = v1, v2, ...".
inline RunConfig parse_config(std::istream& in, RunConfig cfg = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("config line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (double* slot = tolerance_slot(cfg.tolerances, key)) {
            *slot = parse_double(val);
        } else if (key == "seed") {
            std::uint64_t s = 0;
            const auto res = std::from_chars(val.data(), val.data() + val.size(), s);
            if (res.ec != std::errc{} || res.ptr != val.data() + val.size()) throw FormatError("bad seed: " + val);
            cfg.seed = s;
        } else if (key == "output") {
            cfg.output = val;
        } else if (key == "format") {
            cfg.format = val;
        } else if (key.rfind("grid.", 0) == 0) {
            std::vector<double> g;
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) g.push_back(parse_double(item));
            cfg.grids[key.substr(5)] = std::move(g);
        } else {
            throw FormatError("config line " + std::to_string(lineno) + ": unknown key " + key);
        }
    }
    cfg.validate();
    return cfg;
}

inline RunConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    return parse_config(in);
}

/// Explicit seed, else SENDOV_LAB_SEED, else the fallback.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::uint64_t fallback = 20240607) {
    if (explicit_seed) return *explicit_seed;
    if (const char* env = std::getenv("SENDOV_LAB_SEED")) {
        std::uint64_t s = 0;
        const std::string_view v(env);
        const auto res = std::from_chars(v.data(), v.data() + v.size(), s);
        if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) throw FormatError("bad SENDOV_LAB_SEED");
        return s;
    }
    return fallback;
}

}  // namespace sendov::io
