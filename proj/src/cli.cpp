#include "signcorr/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "signcorr/correlation.hpp"
#include "signcorr/eigenpair_io.hpp"
#include "signcorr/experiment.hpp"
#include "signcorr/parallel.hpp"
#include "signcorr/predictors.hpp"
#include "signcorr/schrodinger.hpp"
#include "signcorr/torus.hpp"

namespace signcorr::cli {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_real_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::string_view rest(text);
    while (true) {
        const std::size_t comma = rest.find(',');
        std::string_view part = rest.substr(0, comma);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
            throw UsageError(std::string("cannot parse ") + what + " list '" + text + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

// Ratios are p/q integer pairs or the word `irrational`; decimals are
// refused so a rounded value is never classified as rational.
std::optional<predict::RationalRatio> parse_ratio(const std::string& text)
{
    if (text == "irrational") return std::nullopt;
    try {
        return predict::RationalRatio::from(parse_fraction(text));
    } catch (const std::exception& e) {
        throw UsageError("ratio '" + text + "' must be p/q with nonzero integers or 'irrational': " + e.what());
    }
}

Rational parse_exact(const std::string& text, const char* what)
{
    try {
        return parse_exact_decimal(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string(what) + " '" + text + "' must be a terminating decimal or p/q: " + e.what());
    }
}

void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

struct PredictArgs {
    std::string method;
    std::string ratio;
    std::string theta = "0";
    std::int64_t m = 0;
    std::string x, y, r1, r2;
    int d = 0;
    std::string phases = "0,0.25";
    std::string weights;
};

json cmd_predict(const PredictArgs& a)
{
    json params = json::object();
    json out;
    auto need_ratio = [&]() {
        if (a.ratio.empty()) throw UsageError("--method " + a.method + " needs --ratio");
        params["ratio"] = a.ratio;
        return parse_ratio(a.ratio);
    };

    if (a.method == "theorem1") {
        const auto ratio = need_ratio();
        const double theta = lab::PointValue::parse(a.theta).value;
        params["theta"] = theta;
        if (!ratio) {
            out["limit"] = predict::theorem2_limit_irrational();
        } else {
            const auto r = predict::theorem1_limit(*ratio, theta);
            out["limit"] = r.limit;
            out["below_bound_regime"] = r.below_bound_regime;
        }
    } else if (a.method == "theorem2") {
        const auto ratio = need_ratio();
        out["limit"] = ratio ? predict::theorem2_limit(*ratio) : predict::theorem2_limit_irrational();
    } else if (a.method == "prop1") {
        if (a.m != 0) {
            params["m"] = a.m;
            out["limit"] = predict::hermite_limit(a.m);
        } else {
            if (a.x.empty() || a.y.empty()) throw UsageError("prop1 needs --m or both --x and --y");
            params["x"] = a.x;
            params["y"] = a.y;
            out["limit"] = predict::hermite_limit(parse_exact(a.x, "--x"), parse_exact(a.y, "--y"));
        }
    } else if (a.method == "prop2") {
        if (a.d == 0) throw UsageError("prop2 needs --d");
        params["d"] = a.d;
        if (!a.r1.empty() || !a.r2.empty()) {
            if (a.r1.empty() || a.r2.empty()) throw UsageError("prop2 needs both --r1 and --r2");
            params["r1"] = a.r1;
            params["r2"] = a.r2;
            out["limit"] = predict::laguerre_limit(parse_exact(a.r1, "--r1"), parse_exact(a.r2, "--r2"), a.d);
        } else {
            const auto ratio = need_ratio();
            if (!ratio) throw UsageError("prop2 needs a rational ratio r1/r2");
            out["limit"] = predict::laguerre_limit(*ratio, a.d);
        }
    } else if (a.method == "wkb") {
        const auto ratio = need_ratio();
        const std::vector<double> phases = parse_real_list(a.phases, "phase");
        std::vector<double> weights =
            a.weights.empty() ? std::vector<double>(phases.size(), 1.0 / static_cast<double>(phases.size()))
                              : parse_real_list(a.weights, "weight");
        if (weights.size() != phases.size()) throw UsageError("--phases and --weights differ in length");
        std::vector<predict::PhaseClass> classes;
        for (std::size_t i = 0; i < phases.size(); ++i) classes.push_back({phases[i], weights[i]});
        params["phases"] = phases;
        params["weights"] = weights;
        const predict::WkbFamily family(classes);
        out["limit"] = ratio ? predict::wkb_family_limit(*ratio, family) : predict::theorem2_limit_irrational();
    } else {
        throw UsageError("unknown method '" + a.method + "'");
    }
    json doc = {{"method", a.method}, {"params", params}};
    doc.update(out);
    return doc;
}

struct AverageArgs {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::string alpha = "0";
    std::string beta = "0";
};

json cmd_average(const AverageArgs& a)
{
    if (a.p == 0 || a.q == 0) throw UsageError("--p and --q must be nonzero integers");
    const lab::PointValue alpha = lab::PointValue::parse(a.alpha);
    const lab::PointValue beta = lab::PointValue::parse(a.beta);
    const torus::TorusRay ray(a.p, a.q, alpha.value, beta.value);
    const double closed = torus::ray_average_closed_form(ray);
    const double oracle = torus::ray_average_breakpoints(ray);
    json doc = {{"method", "average"},
                {"params", {{"p", a.p}, {"q", a.q}, {"alpha", alpha.value}, {"beta", beta.value}}},
                {"reduced", {{"p", ray.p()}, {"q", ray.q()}}},
                {"closed_form", closed},
                {"breakpoints", oracle},
                {"difference", std::abs(closed - oracle)},
                {"limit", closed}};
    if (alpha.exact && beta.exact) {
        const Rational exact = torus::ray_average_breakpoints(torus::ExactTorusRay(a.p, a.q, *alpha.exact, *beta.exact));
        doc["exact"] = exact.str();
    } else {
        doc["exact"] = nullptr;
    }
    return doc;
}

struct ExperimentArgs {
    std::string family;
    std::string x, y, r1, r2, angle, potential, eigenpairs;
    std::optional<int> d;
    std::optional<std::int64_t> ratio;
    std::uint64_t n = 0;
    unsigned threads = 0;
    std::string predictor = "auto";
    std::string target;
    std::uint64_t stride = 1;
    std::string out_json;
    std::string out_csv;
    std::string format = "json";
    schrodinger::SolverConfig solver;
};

lab::ExperimentConfig to_config(const ExperimentArgs& a, bool scan)
{
    lab::ExperimentConfig cfg;
    cfg.family = lab::parse_family(a.family);
    if (!a.x.empty()) cfg.x = lab::PointValue::parse(a.x);
    if (!a.y.empty()) cfg.y = lab::PointValue::parse(a.y);
    if (!a.r1.empty()) cfg.r1 = lab::PointValue::parse(a.r1);
    if (!a.r2.empty()) cfg.r2 = lab::PointValue::parse(a.r2);
    if (!a.angle.empty()) cfg.angle = a.angle;
    if (!a.potential.empty()) cfg.potential = parse_real_list(a.potential, "potential coefficient");
    if (!a.eigenpairs.empty()) cfg.eigenpairs_file = a.eigenpairs;
    cfg.dimension = a.d;
    cfg.ratio = a.ratio;
    cfg.n = a.n;
    cfg.threads = a.threads;
    cfg.predictor = a.predictor;
    cfg.scan = scan;
    if (!a.target.empty()) cfg.target = a.target;
    cfg.stride = a.stride;
    cfg.solver = a.solver;
    return cfg;
}

int cmd_experiment(const ExperimentArgs& a, bool scan, std::ostream& out)
{
    const lab::ExperimentConfig cfg = to_config(a, scan);
    const lab::ExperimentResult result = lab::run_experiment(cfg);
    const bool want_json = a.format == "json" || a.format == "both";
    const bool want_csv = a.format == "csv" || a.format == "both";
    const std::string report = result.report.dump(2) + "\n";
    const std::string csv = lab::remainder_csv(result.series, result.series_has_remainder);

    // Single writer, after all computation has finished.
    if (want_json && !a.out_json.empty()) write_file(a.out_json, report);
    if (want_csv && !a.out_csv.empty()) write_file(a.out_csv, csv);

    if (want_json && a.out_json.empty()) {
        out << report;
    } else if (want_csv && a.out_csv.empty()) {
        out << csv;
    } else {
        const json& r = result.report;
        json summary = {{"family", r["family"]},       {"mode", r["mode"]},
                        {"n", r["n"]},                 {"estimate", r["estimate"]},
                        {"zero_hits", r["zero_hits"]}, {"predictor", r["predictor"]},
                        {"prediction", r["prediction"]}, {"gap", r["gap"]},
                        {"max_abs_remainder", r["max_abs_remainder"]}};
        json files = json::array();
        if (want_json) files.push_back(a.out_json);
        if (want_csv) files.push_back(a.out_csv);
        summary["outputs"] = files;
        out << summary.dump(2) << "\n";
    }
    return kExitSuccess;
}

struct SolveArgs {
    std::string potential;
    schrodinger::SolverConfig solver;
    std::string out;
};

int cmd_solve(const SolveArgs& a, std::ostream& out)
{
    const schrodinger::PotentialSpec v = [&] {
        try {
            return schrodinger::PotentialSpec(parse_real_list(a.potential, "potential coefficient"));
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    const auto started = std::chrono::steady_clock::now();
    const schrodinger::EigenpairSet set = schrodinger::solve_eigenpairs(v, a.solver);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    json table = json::array();
    bool nodes_ok = true;
    for (const auto& p : set.pairs) {
        const int nodes = p.interior_nodes();
        nodes_ok = nodes_ok && nodes == p.n / 2;
        table.push_back({{"n", p.n},
                         {"parity", schrodinger::parity_name(p.parity)},
                         {"lambda", p.lambda},
                         {"semiclassical", schrodinger::semiclassical_eigenvalue(v, p.n)},
                         {"half_line_nodes", nodes}});
    }
    const std::string bytes = schrodinger::to_json(set).dump() + "\n";
    json doc = {{"method", "solve"},
                {"params",
                 {{"potential", v.coefficients()},
                  {"n_max", a.solver.n_max},
                  {"points_per_wavelength", a.solver.points_per_wavelength},
                  {"domain_margin", a.solver.domain_margin},
                  {"eigenvalue_tolerance", a.solver.eigenvalue_tolerance},
                  {"max_bisection_iterations", a.solver.max_bisection_iterations}}},
                {"domain_length", set.domain_length},
                {"grid_step", set.step},
                {"node_check", nodes_ok},
                {"content_hash", fnv1a_hex(bytes)},
                {"eigenpairs", table},
                {"meta", {{"version", lab::library_version()}, {"runtime_seconds", runtime}}}};
    if (!a.out.empty()) {
        write_file(a.out, bytes);
        doc["output"] = a.out;
    }
    out << doc.dump(2) << "\n";
    return kExitSuccess;
}

// Expands `--config FILE` into `--key value` tokens placed ahead of the
// remaining arguments. CLI11 only reads config files for the top-level app,
// so subcommand configs are handled here. Keys already given as flags are
// skipped so that the command line wins.
std::vector<std::string> expand_config(int argc, const char* const* argv)
{
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    std::size_t at = 0, width = 0;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            at = i;
            width = 2;
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            at = i;
            width = 1;
            break;
        }
    }
    if (width == 0) return args;

    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    const auto given = [&](const std::string& key) {
        for (const auto& a : args)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    const auto trim = [](std::string t) {
        const auto b = t.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = t.find_last_not_of(" \t\r");
        t = t.substr(b, e - b + 1);
        if (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) t = t.substr(1, t.size() - 2);
        return t;
    };
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
        const std::string body = trim(line);
        if (body.empty() || body[0] == '#' || body[0] == ';' || body[0] == '[') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw CLI::ConversionError("config line without '=': " + body);
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) throw CLI::ConversionError("config line without a key: " + body);
        if (given(key)) continue;
        injected.push_back("--" + key);
        injected.push_back(trim(body.substr(eq + 1)));
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(at), args.begin() + static_cast<std::ptrdiff_t>(at + width));
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
    return args;
}

void add_solver_options(CLI::App* app, schrodinger::SolverConfig& s)
{
    app->add_option("--ppw", s.points_per_wavelength, "Grid points per local wavelength")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--margin", s.domain_margin, "Domain cutoff: V(L) >= margin * lambda_max")
        ->capture_default_str()
        ->check(CLI::Range(1.0, 1e6));
    app->add_option("--tol", s.eigenvalue_tolerance, "Relative eigenvalue bracket width")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--max-iter", s.max_bisection_iterations, "Bisection iteration cap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_experiment_options(CLI::App* app, ExperimentArgs& a)
{
    app->add_option("--config", "Flat key = value file mirroring the flags; flags override it");
    app->add_option("--family", a.family, "hermite | laguerre | chebyshev | potential")
        ->required()
        ->check(CLI::IsMember({"hermite", "laguerre", "chebyshev", "potential"}));
    app->add_option("--x", a.x, "First point (hermite, potential)");
    app->add_option("--y", a.y, "Second point (hermite, potential)");
    app->add_option("--r1", a.r1, "First radius (laguerre)");
    app->add_option("--r2", a.r2, "Second radius (laguerre)");
    app->add_option("--d", a.d, "Dimension (laguerre)");
    app->add_option("--angle", a.angle, "Chebyshev angle: p/q, surd:a,b,c,d = (a+b*sqrt(c))/d, or fixed:<decimal>");
    app->add_option("--ratio", a.ratio, "Chebyshev multiplier k: second angle is k * angle");
    app->add_option("--potential", a.potential, "Even potential coefficients c0,c1,... of x^(2k)");
    app->add_option("--eigenpairs", a.eigenpairs, "Eigenpair cache written by `solve --out`");
    app->add_option("--n", a.n, "Number of indices N")->required()->check(CLI::PositiveNumber);
    app->add_option("--threads", a.threads, "Worker threads (0 = hardware, capped by SIGNCORR_THREADS)")
        ->capture_default_str();
    app->add_option("--predictor", a.predictor, "auto | none | prop1 | prop2 | theorem1 | theorem2 | orbit")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "none", "prop1", "prop2", "theorem1", "theorem2", "orbit"}));
    app->add_option("--target", a.target, "Remainder target: auto (the prediction) or a value in [0, 1]");
    app->add_option("--out-json", a.out_json, "Write the JSON report here instead of stdout");
    app->add_option("--out-csv", a.out_csv, "Write the CSV series here instead of stdout");
    app->add_option("--format", a.format, "json | csv | both")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv", "both"}));
    add_solver_options(app, a.solver);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sign-correlation laboratory: predictions, torus averages, measured sign correlations and "
                 "eigenpair solves.",
                 "signcorr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lab::library_version());

    PredictArgs pa;
    auto* predict_cmd = app.add_subcommand("predict", "Closed-form sign-correlation limit");
    predict_cmd->add_option("--method", pa.method, "theorem1 | theorem2 | prop1 | prop2 | wkb")
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2", "prop1", "prop2", "wkb"}));
    predict_cmd->add_option("--ratio", pa.ratio, "phi(x)/phi(y) as p/q, or `irrational`");
    predict_cmd->add_option("--theta", pa.theta, "Common phase offset (theorem1)")->capture_default_str();
    predict_cmd->add_option("--m", pa.m, "Integer y/x (prop1)");
    predict_cmd->add_option("--x", pa.x, "Exact first point (prop1)");
    predict_cmd->add_option("--y", pa.y, "Exact second point (prop1)");
    predict_cmd->add_option("--r1", pa.r1, "Exact first radius (prop2)");
    predict_cmd->add_option("--r2", pa.r2, "Exact second radius (prop2)");
    predict_cmd->add_option("--d", pa.d, "Dimension (prop2)");
    predict_cmd->add_option("--phases", pa.phases, "Phase classes (wkb)")->capture_default_str();
    predict_cmd->add_option("--weights", pa.weights, "Class weights (wkb; default uniform)");

    AverageArgs aa;
    auto* average_cmd = app.add_subcommand("average", "Average of sgn(cos 2pi x cos 2pi y) along a closed torus ray");
    average_cmd->add_option("--p", aa.p, "First direction component")->required();
    average_cmd->add_option("--q", aa.q, "Second direction component")->required();
    average_cmd->add_option("--alpha", aa.alpha, "First phase")->capture_default_str();
    average_cmd->add_option("--beta", aa.beta, "Second phase")->capture_default_str();

    ExperimentArgs ea;
    auto* estimate_cmd = app.add_subcommand("estimate", "Measure the sign-agreement frequency over N indices");
    add_experiment_options(estimate_cmd, ea);

    ExperimentArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "Remainder series agree(N) - target * N");
    add_experiment_options(scan_cmd, sa);
    scan_cmd->add_option("--stride", sa.stride, "Emit every stride-th N")->capture_default_str()->check(CLI::PositiveNumber);

    SolveArgs so;
    auto* solve_cmd = app.add_subcommand("solve", "Eigenpairs of an even polynomial potential");
    solve_cmd->add_option("--config", "Flat key = value file mirroring the flags; flags override it");
    solve_cmd->add_option("--potential", so.potential, "Even potential coefficients c0,c1,... of x^(2k)")->required();
    solve_cmd->add_option("--n-max", so.solver.n_max, "Highest index solved")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--threads", so.solver.threads, "Worker threads")->capture_default_str();
    solve_cmd->add_option("--out", so.out, "Write the eigenpair cache (JSON) here");
    add_solver_options(solve_cmd, so.solver);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::vector<const char*> ptrs;
        for (const auto& a : args) ptrs.push_back(a.c_str());
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (predict_cmd->parsed()) {
            out << cmd_predict(pa).dump(2) << "\n";
            return kExitSuccess;
        }
        if (average_cmd->parsed()) {
            out << cmd_average(aa).dump(2) << "\n";
            return kExitSuccess;
        }
        if (estimate_cmd->parsed()) return cmd_experiment(ea, false, out);
        if (scan_cmd->parsed()) return cmd_experiment(sa, true, out);
        if (solve_cmd->parsed()) return cmd_solve(so, out);
    } catch (const schrodinger::NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SourceError& e) {
        err << "source failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

} // namespace signcorr::cli
