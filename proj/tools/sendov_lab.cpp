// sendov_lab: command-line front end. Exit codes: 0 success, 2 negative
// verdict or failed check, 1 error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sendov/acceptance.hpp"
#include "sendov/io.hpp"
#include "sendov/sendov.hpp"

namespace {

using namespace sendov;
using io::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

struct Globals {
    std::string config;
    std::string out;
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

void emit_text(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw io::FormatError("cannot write " + g.out);
    f << text;
}

void emit(const Globals& g, const json& j) { emit_text(g, j.dump(2) + "\n"); }

io::RunConfig load_config(const Globals& g) {
    io::RunConfig cfg = g.config.empty() ? io::RunConfig{} : io::read_config_file(g.config);
    if (g.seed) cfg.seed = g.seed;
    if (!g.out.empty()) cfg.output = g.out;
    cfg.validate();
    return cfg;
}

json spec_json(const ZeroMaximalSpec& s) {
    return {{"parity", s.parity == Parity::even ? "even" : "odd"}, {"m", s.m}, {"theta", s.theta}, {"lambda", s.lambda}};
}

int cmd_roots(const Globals& g, const std::string& in) {
    const auto p = io::read_poly_file(in);
    json j;
    j["roots"] = io::to_json(roots(p));
    if (p.degree() >= 2) j["critical_points"] = io::to_json(critical_points(p));
    emit(g, j);
    return kOk;
}

int cmd_delta(const Globals& g, const std::string& in, const std::string& against) {
    const auto p = io::read_poly_file(in), q = io::read_poly_file(against);
    const auto m = delta(p, q);
    emit(g, {{"value", m.value}, {"witness", m.permutation}});
    return kOk;
}

int cmd_sendov(const Globals& g, const std::string& in) {
    const auto v = sendov_d(io::read_poly_file(in));
    emit(g, {{"value", v.value}, {"witness", io::to_json(v.argmax_zero)}});
    return kOk;
}

int cmd_classify(const Globals& g, const std::string& in) {
    const auto cfg = load_config(g);
    const double tol = g.tol.value_or(cfg.tolerances.classify_tol);
    if (!(tol > 0.0)) throw io::FormatError("--tol must be positive");
    const auto c = classify_zero_maximal(io::read_poly_file(in), tol);
    json res = json::object();
    for (const auto& [name, v] : c.residuals) res[name] = v;
    emit(g, {{"verdict", to_string(c.verdict)},
             {"recovered", c.recovered ? spec_json(*c.recovered) : json(nullptr)},
             {"residuals", res}});
    return c.verdict == ZeroMaxVerdict::not_zero_maximal ? kNegative : kOk;
}

int cmd_inextensible(const Globals& g, const std::string& in) {
    auto cfg = load_config(g);
    if (g.tol) cfg.tolerances.pos_sing_tol = *g.tol;
    cfg.validate();
    const auto rep = classify_inextensible(io::read_poly_file(in), cfg.tolerances);
    json zeros = json::array();
    for (const auto& zc : rep.zeros) {
        json z{{"index", zc.zero_index},
               {"zero", io::to_json(zc.zero)},
               {"r", zc.matrix.r},
               {"rows", zc.matrix.a.rows()},
               {"certificate", to_string(zc.certificate.kind)},
               {"residual", zc.certificate.residual},
               {"lp_value", zc.certificate.lp_value}};
        if (zc.certificate.kind == CertificateKind::singular_weights)
            z["mu"] = zc.certificate.mu;
        else {
            z["x"] = io::to_json(zc.certificate.x);
            z["extension"] = io::to_json(zc.extension);
        }
        zeros.push_back(std::move(z));
    }
    emit(g, {{"verdict", to_string(rep.verdict)}, {"reason", rep.reason}, {"d", rep.d}, {"zeros", zeros}});
    return rep.verdict == Inextensibility::linearly_inextensible ? kOk : kNegative;
}

struct DeformArgs {
    std::string family;
    double a_min = 1e-3, a_max = 1e-2;
    int steps = 12;
};

int cmd_deform(const Globals& g, const DeformArgs& a) {
    const auto cfg = load_config(g);
    if (!(a.a_min > 0.0 && a.a_max > a.a_min && a.a_max <= 1.0) || a.steps < 2)
        throw io::FormatError("need 0 < --a-min < --a-max <= 1 and --steps >= 2");
    const DeformationFamily f = a.family == "quartic" ? quartic_family() : quintic_family().q;
    std::vector<double> grid = log_grid(a.a_min, a.a_max, a.steps);
    if (auto it = cfg.grids.find(a.family); it != cfg.grids.end()) grid = it->second;
    const auto ds = parallel_map(grid.size(), g.jobs, [&](std::size_t i) { return tracked_d(f, grid[i]); });
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double predicted = *f.predicted_c0 + *f.predicted_c2 * x * x;
        rows.push_back({x, ds[i], predicted, ds[i] - predicted});
    }
    std::ostringstream os;
    io::write_csv(os, {"a", "d", "predicted", "residual"}, rows);
    emit_text(g, os.str());
    return kOk;
}

int cmd_derive_quartic(const Globals& g) {
    const auto r = derive_quartic_coefficients();
    const auto& u = r.solution;
    json d = json::array();
    for (const auto& row : r.residuals.d) d.push_back(row);
    emit(g, {{"x1", u.x1},
             {"x2", u.x2},
             {"x3", u.x3},
             {"y1", u.y1},
             {"y2", u.y2},
             {"y3", u.y3},
             {"residuals", d},
             {"max_residual", r.residuals.max_abs()}});
    return kOk;
}

int cmd_push_scan(const Globals& g, int n, int grid) {
    const auto s = boundary_push_scan(n, grid, g.jobs);
    emit(g, {{"value", s.max_value}, {"witness", s.argmax_phi}, {"gap", s.gap}});
    return n >= 5 && !(s.gap > 0.0) ? kNegative : kOk;
}

int cmd_verify(const Globals& g, const std::string& suite) {
    const auto cfg = load_config(g);
    const std::uint64_t seed = io::resolve_seed(cfg.seed, 0);
    std::vector<int> wanted;
    if (suite != "all") {
        std::stringstream ss(suite);
        std::string item;
        while (std::getline(ss, item, ',')) wanted.push_back(std::stoi(item));
    }
    int failed = 0;
    std::ostringstream os;
    for (const auto& c : acceptance::criteria(seed)) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto r = acceptance::run(c);
        os << acceptance::format_line(r) << '\n';
        if (!r.passed) ++failed;
    }
    emit_text(g, os.str());
    return failed == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments on zeros and critical points of polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config, "key=value configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "write the result here instead of standard output");
    app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized checks (else SENDOV_LAB_SEED)");

    std::string in, against, suite = "all";
    DeformArgs deform;
    int push_n = 5, push_grid = 400;

    auto* roots_cmd = app.add_subcommand("roots", "zeros and critical points");
    roots_cmd->add_option("--in", in, "polynomial JSON")->required();
    auto* delta_cmd = app.add_subcommand("delta", "bottleneck distance between zero sets");
    delta_cmd->add_option("--in", in, "polynomial JSON")->required();
    delta_cmd->add_option("--against", against, "polynomial JSON")->required();
    auto* sendov_cmd = app.add_subcommand("sendov", "d(p) and a zero attaining it");
    sendov_cmd->add_option("--in", in, "polynomial JSON")->required();
    auto* classify_cmd = app.add_subcommand("classify", "classifiers");
    auto* zm_cmd = classify_cmd->add_subcommand("zero-maximal", "0-maximal classification");
    classify_cmd->require_subcommand(1);
    zm_cmd->add_option("--in", in, "polynomial JSON")->required();
    zm_cmd->add_option("--tol", g.tol, "classification tolerance");
    auto* inext_cmd = app.add_subcommand("inextensible", "linear inextensibility certificate");
    inext_cmd->add_option("--in", in, "polynomial JSON")->required();
    inext_cmd->add_option("--tol", g.tol, "positive-singularity tolerance");
    auto* deform_cmd = app.add_subcommand("deform", "d along a deformation family, as CSV");
    deform_cmd->add_option("family", deform.family, "quartic or quintic")
        ->required()
        ->check(CLI::IsMember({"quartic", "quintic"}));
    deform_cmd->add_option("--a-min", deform.a_min);
    deform_cmd->add_option("--a-max", deform.a_max);
    deform_cmd->add_option("--steps", deform.steps);
    auto* derive_cmd = app.add_subcommand("derive-quartic", "solve for the quartic deformation coefficients");
    auto* push_cmd = app.add_subcommand("push-scan", "boundary push scan for (z - zeta)(z^{n-1} - 1)");
    push_cmd->add_option("--n", push_n)->check(CLI::Range(3, 200));
    push_cmd->add_option("--grid", push_grid)->check(CLI::Range(2, 1000000));
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_option("--suite", suite, "all or a comma-separated list of criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    }

    try {
        if (*roots_cmd) return cmd_roots(g, in);
        if (*delta_cmd) return cmd_delta(g, in, against);
        if (*sendov_cmd) return cmd_sendov(g, in);
        if (*zm_cmd) return cmd_classify(g, in);
        if (*inext_cmd) return cmd_inextensible(g, in);
        if (*deform_cmd) return cmd_deform(g, deform);
        if (*derive_cmd) return cmd_derive_quartic(g);
        if (*push_cmd) return cmd_push_scan(g, push_n, push_grid);
        if (*verify_cmd) return cmd_verify(g, suite);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
