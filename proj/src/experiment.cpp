#include "signcorr/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <memory>
#include <numbers>

#include "signcorr/eigenpair_io.hpp"
#include "signcorr/equidistribution.hpp"
#include "signcorr/parallel.hpp"
#include "signcorr/predictors.hpp"

#ifndef SIGNCORR_VERSION
#define SIGNCORR_VERSION "0.0.0"
#endif

namespace signcorr::lab {

using nlohmann::json;

const char* library_version() { return SIGNCORR_VERSION; }

Family parse_family(const std::string& name)
{
    if (name == "hermite") return Family::hermite;
    if (name == "laguerre") return Family::laguerre;
    if (name == "chebyshev") return Family::chebyshev;
    if (name == "potential") return Family::potential;
    throw ConfigError("unknown family '" + name + "' (hermite | laguerre | chebyshev | potential)");
}

const char* family_name(Family f)
{
    switch (f) {
    case Family::hermite: return "hermite";
    case Family::laguerre: return "laguerre";
    case Family::chebyshev: return "chebyshev";
    case Family::potential: return "potential";
    }
    return "?";
}

PointValue PointValue::parse(const std::string& text)
{
    PointValue out;
    out.text = text;
    try {
        out.exact = parse_exact_decimal(text);
        out.value = out.exact->to_double();
        return out;
    } catch (const std::exception&) {
    }
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out.value);
    if (ec != std::errc() || ptr != last || !std::isfinite(out.value))
        throw ConfigError("cannot parse '" + text + "' as a real number");
    return out;
}

special::AngleFraction parse_angle(const std::string& text)
{
    try {
        if (text.rfind("surd:", 0) == 0) {
            std::int64_t v[4];
            std::string_view rest(text);
            rest.remove_prefix(5);
            for (int i = 0; i < 4; ++i) {
                const std::size_t comma = rest.find(',');
                if ((comma == std::string_view::npos) != (i == 3)) throw ConfigError("surd angle needs a,b,c,d");
                const std::string_view part = rest.substr(0, comma);
                auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v[i]);
                if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
                    throw ConfigError("bad integer in surd angle '" + text + "'");
                if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
            }
            return special::AngleFraction(FixedPointFraction::from_quadratic_surd(v[0], v[1], v[2], v[3]));
        }
        if (text.rfind("fixed:", 0) == 0)
            return special::AngleFraction(FixedPointFraction::from_decimal(std::string_view(text).substr(6)));
        if (text.find('/') == std::string::npos)
            throw ConfigError("angle '" + text + "' must be p/q, surd:a,b,c,d or fixed:<decimal>");
        return special::AngleFraction(parse_fraction(text));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid angle '") + text + "': " + e.what());
    }
}

namespace {

const PointValue& require(const std::optional<PointValue>& v, const char* name, Family f)
{
    if (!v) throw ConfigError(std::string(family_name(f)) + " family needs --" + name);
    return *v;
}

json point_json(const PointValue& v)
{
    json j = {{"text", v.text}, {"value", v.value}};
    j["exact"] = v.exact ? json(v.exact->str()) : json(nullptr);
    return j;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double parse_target(const std::string& text)
{
    double v = 0.0;
    try {
        v = parse_exact_decimal(text).to_double();
    } catch (const std::exception&) {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw ConfigError("cannot parse target '" + text + "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("target must lie in [0, 1]");
    return v;
}

struct Prediction {
    std::string method;
    double value = 0.0;
    json details = json::object();
};

// Everything family specific: the source, its parameters, the predictor
// table and extra diagnostics computed before counting.
struct Setup {
    std::unique_ptr<SignPairSource> source;
    json params = json::object();
    json diagnostics = json::object();
    std::optional<Prediction> prediction;
    std::optional<special::AngleFraction> chebyshev_angle;
};

void reject_predictor(const std::string& predictor, Family f)
{
    throw ConfigError("predictor '" + predictor + "' does not apply to the " + family_name(f) + " family");
}

std::optional<Prediction> theorem2_prediction(const PointValue& x, const PointValue& y)
{
    if (!x.exact || !y.exact) throw ConfigError("theorem2 needs exact points (terminating decimals or p/q)");
    const predict::RationalRatio ratio = predict::RationalRatio::from(*x.exact / *y.exact);
    Prediction p{"theorem2", predict::theorem2_limit(ratio), {{"ratio", ratio.str()}}};
    return p;
}

Setup setup_hermite(const ExperimentConfig& cfg)
{
    const PointValue& x = require(cfg.x, "x", cfg.family);
    const PointValue& y = require(cfg.y, "y", cfg.family);
    if (x.value == 0.0 || y.value == 0.0) throw ConfigError("hermite points must be nonzero");
    Setup s;
    s.source = std::make_unique<PointPairSource>(
        std::make_unique<special::HermiteSignSequence>(special::HermitePoint(x.value)),
        std::make_unique<special::HermiteSignSequence>(special::HermitePoint(y.value)));
    s.params = {{"x", point_json(x)}, {"y", point_json(y)}};

    std::string predictor = cfg.predictor;
    if (predictor == "auto") {
        if (!x.exact || !y.exact) return s;
        predictor = (*y.exact / *x.exact).is_integer() ? "prop1" : "theorem2";
    }
    if (predictor == "none") return s;
    if (predictor == "prop1") {
        if (!x.exact || !y.exact) throw ConfigError("prop1 needs exact points (terminating decimals or p/q)");
        const Rational m = *y.exact / *x.exact;
        if (!m.is_integer()) throw ConfigError("prop1 needs y / x to be an integer, got " + m.str());
        s.prediction = Prediction{"prop1", predict::hermite_limit(*x.exact, *y.exact), {{"m", m.str()}}};
    } else if (predictor == "theorem2") {
        s.prediction = theorem2_prediction(x, y);
    } else {
        reject_predictor(predictor, cfg.family);
    }
    return s;
}

Setup setup_laguerre(const ExperimentConfig& cfg)
{
    const PointValue& r1 = require(cfg.r1, "r1", cfg.family);
    const PointValue& r2 = require(cfg.r2, "r2", cfg.family);
    if (!cfg.dimension) throw ConfigError("laguerre family needs --d (dimension)");
    const int d = *cfg.dimension;
    if (d < 1) throw ConfigError("dimension must be at least 1");
    if (!(r1.value > 0.0) || !(r2.value > 0.0)) throw ConfigError("laguerre radii must be positive");
    Setup s;
    const auto p1 = special::LaguerreParams::from_dimension(d, r1.value);
    const auto p2 = special::LaguerreParams::from_dimension(d, r2.value);
    s.source = std::make_unique<PointPairSource>(std::make_unique<special::LaguerreSignSequence>(p1),
                                                 std::make_unique<special::LaguerreSignSequence>(p2));
    s.params = {{"d", d}, {"nu", p1.nu()}, {"r1", point_json(r1)}, {"r2", point_json(r2)}};

    std::string predictor = cfg.predictor;
    if (predictor == "auto") {
        if (!r1.exact || !r2.exact) return s;
        predictor = "prop2";
    }
    if (predictor == "none") return s;
    if (predictor != "prop2") reject_predictor(predictor, cfg.family);
    if (!r1.exact || !r2.exact) throw ConfigError("prop2 needs exact radii (terminating decimals or p/q)");
    const predict::RationalRatio ratio = predict::RationalRatio::from(*r1.exact / *r2.exact);
    s.prediction = Prediction{"prop2", predict::laguerre_limit(*r1.exact, *r2.exact, d), {{"ratio", ratio.str()}}};
    return s;
}

Setup setup_chebyshev(const ExperimentConfig& cfg)
{
    if (!cfg.angle) throw ConfigError("chebyshev family needs --angle");
    if (!cfg.ratio) throw ConfigError("chebyshev family needs --ratio (integer multiplier k)");
    const std::int64_t k = *cfg.ratio;
    const special::AngleFraction a = parse_angle(*cfg.angle);
    std::optional<special::AngleFraction> ka;
    try {
        ka = a.scaled(k);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("chebyshev angle ") + a.str() + " times " + std::to_string(k) + ": " + e.what());
    }
    Setup s;
    s.chebyshev_angle = a;
    s.source = std::make_unique<PointPairSource>(std::make_unique<special::ChebyshevSignSequence>(a),
                                                 std::make_unique<special::ChebyshevSignSequence>(*ka));
    s.params = {{"angle", a.str()},
                {"angle_value", a.to_double()},
                {"ratio", k},
                {"y_angle", ka->str()},
                {"x", std::cos(2.0 * std::numbers::pi * a.to_double())},
                {"y", std::cos(2.0 * std::numbers::pi * ka->to_double())},
                {"rational_angle", a.is_rational()}};

    std::string predictor = cfg.predictor;
    if (predictor == "auto") predictor = a.is_rational() ? "orbit" : "theorem1";
    if (predictor == "none") return s;
    if (predictor == "orbit") {
        if (!a.is_rational()) throw ConfigError("orbit predictor needs a rational angle");
        const ChebyshevOrbit orbit = chebyshev_orbit(a.rational(), k);
        s.prediction = Prediction{"orbit", orbit.density.to_double(),
                                  {{"density", orbit.density.str()}, {"period", orbit.period}}};
    } else if (predictor == "theorem1") {
        const predict::RationalRatio ratio(1, k);
        const auto r = predict::theorem1_limit(ratio, 0.0);
        s.prediction = Prediction{"theorem1", r.limit,
                                  {{"ratio", ratio.str()}, {"theta", 0.0}, {"below_bound_regime", r.below_bound_regime}}};
    } else {
        reject_predictor(predictor, cfg.family);
    }
    return s;
}

json h2_json(const equidist::H2Report& r)
{
    auto cls = [](const equidist::ParityClassReport& c) {
        json cps = json::array();
        for (const auto& cp : c.checkpoints)
            cps.push_back({{"n", cp.n}, {"star_discrepancy", cp.star_discrepancy}, {"weyl_k1", cp.weyl_k1}});
        return json{{"parity", c.parity == 0 ? "even" : "odd"},
                    {"size", c.checkpoints.empty() ? 0 : c.checkpoints.back().n},
                    {"checkpoints", cps},
                    {"equidistribution_failure", c.equidistribution_failure}};
    };
    return {{"x", r.x}, {"even", cls(r.even)}, {"odd", cls(r.odd)}};
}

Setup setup_potential(const ExperimentConfig& cfg)
{
    const PointValue& x = require(cfg.x, "x", cfg.family);
    const PointValue& y = require(cfg.y, "y", cfg.family);
    if (x.value == 0.0 || y.value == 0.0) throw ConfigError("potential points must be nonzero");

    auto set = std::make_shared<schrodinger::EigenpairSet>();
    std::string content_hash;
    std::string origin;
    if (cfg.eigenpairs_file) {
        try {
            auto loaded = schrodinger::load_eigenpairs(*cfg.eigenpairs_file);
            *set = std::move(loaded.set);
            content_hash = loaded.content_hash;
        } catch (const std::exception& e) {
            throw ConfigError("cannot use eigenpair file '" + *cfg.eigenpairs_file + "': " + e.what());
        }
        if (!cfg.potential.empty() && schrodinger::PotentialSpec(cfg.potential).coefficients() != set->potential.coefficients())
            throw ConfigError("eigenpair file was solved for a different potential");
        origin = "file";
    } else {
        if (cfg.potential.empty()) throw ConfigError("potential family needs --potential or --eigenpairs");
        std::optional<schrodinger::PotentialSpec> v;
        try {
            v.emplace(cfg.potential);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        schrodinger::SolverConfig solver = cfg.solver;
        solver.n_max = static_cast<int>(std::max<std::uint64_t>(cfg.n, 1) - 1);
        solver.threads = cfg.threads;
        *set = schrodinger::solve_eigenpairs(*v, solver);
        content_hash = fnv1a_hex(schrodinger::to_json(*set).dump() + "\n");
        origin = "solved";
    }
    if (cfg.n > set->pairs.size())
        throw ConfigError("N = " + std::to_string(cfg.n) + " exceeds the " + std::to_string(set->pairs.size()) +
                          " available eigenpairs");
    if (std::abs(x.value) > set->domain_length || std::abs(y.value) > set->domain_length)
        throw ConfigError("points lie outside the solved domain [-L, L], L = " + std::to_string(set->domain_length));

    Setup s;
    s.source = schrodinger::eigenpair_sign_source(set, x.value, y.value);
    json coeffs = set->potential.coefficients();
    s.params = {{"x", point_json(x)},
                {"y", point_json(y)},
                {"potential", coeffs},
                {"eigenpairs", set->pairs.size()},
                {"eigenpairs_origin", origin},
                {"eigenpairs_hash", content_hash},
                {"domain_length", set->domain_length},
                {"grid_step", set->step}};

    std::vector<double> lambdas = set->eigenvalues();
    lambdas.resize(cfg.n);
    const auto split = equidist::split_by_parity(lambdas);
    s.diagnostics["h2"] = {
        {"certified", false},
        {"note", "empirical star discrepancy of {sqrt(lambda_n) x} per parity class; not a proof of equidistribution"},
        {"at_x", h2_json(equidist::h2_report(split, x.value))},
        {"at_y", h2_json(equidist::h2_report(split, y.value))}};

    std::string predictor = cfg.predictor;
    if (predictor == "auto") {
        if (!x.exact || !y.exact) return s;
        predictor = "theorem2";
    }
    if (predictor == "none") return s;
    if (predictor != "theorem2") reject_predictor(predictor, cfg.family);
    s.prediction = theorem2_prediction(x, y);
    return s;
}

void chebyshev_diagnostics(const ExperimentConfig& cfg, Setup& s, const CorrelationReport& est)
{
    const special::AngleFraction& a = *s.chebyshev_angle;
    const std::int64_t k = *cfg.ratio;
    json& diag = s.diagnostics;

    if (a.is_rational()) {
        const ChebyshevOrbit orbit = chebyshev_orbit(a.rational(), k);
        diag["orbit"] = {{"period", orbit.period},
                         {"agree_per_period", orbit.agree_per_period},
                         {"density", orbit.density.str()},
                         {"density_value", orbit.density.to_double()}};
        // Compare every prefix count against the residue enumeration.
        constexpr std::uint64_t kFullCheckLimit = 1000000;
        const std::uint64_t horizon = std::min(est.n, kFullCheckLimit);
        const RemainderScan scan = remainder_scan(*s.source, horizon, orbit.density.to_double(), 1, cfg.threads);
        bool match = true;
        std::uint64_t first_mismatch = 0;
        for (const auto& p : scan.series)
            if (p.agree != orbit.agree_count(p.n)) {
                match = false;
                first_mismatch = p.n;
                break;
            }
        for (const auto& cp : est.checkpoints)
            if (match && cp.agree != orbit.agree_count(cp.n)) {
                match = false;
                first_mismatch = cp.n;
            }
        diag["orbit"]["oracle_checked_through"] = horizon;
        diag["orbit"]["oracle_match"] = match;
        diag["orbit"]["first_mismatch_n"] = match ? json(nullptr) : json(first_mismatch);
        diag["orbit"]["max_abs_remainder"] = scan.max_abs_remainder;
        diag["equidistributed_angle"] = false;
    } else {
        diag["equidistributed_angle"] = true;
    }

    const auto ref = predict::theorem1_limit(predict::RationalRatio(1, k), 0.0);
    const std::uint64_t horizon = std::min(est.n, cfg.reference_horizon);
    const RemainderScan dev = remainder_scan(*s.source, horizon, ref.limit, 1, cfg.threads);
    const bool holds = dev.max_abs_remainder <= cfg.reference_bound;
    json r = {{"limit", ref.limit},
              {"horizon", horizon},
              {"max_abs_deviation", dev.max_abs_remainder},
              {"argmax_n", dev.argmax_n},
              {"claimed_bound", cfg.reference_bound},
              {"within_claimed_bound", holds}};
    if (a.is_rational())
        r["note"] = std::string("sign pattern is periodic with period ") + std::to_string(a.rational().den()) +
                    "; the count follows the orbit density " + diag["orbit"]["density"].get<std::string>() +
                    ", not the equidistributed reference" + (holds ? "" : " (claimed bound does not hold)");
    diag["reference"] = r;
}

json checkpoints_json(const CorrelationReport& r)
{
    json out = json::array();
    for (const auto& c : r.checkpoints) {
        json j = {{"n", c.n}, {"agree", c.agree}, {"estimate", c.estimate}};
        if (c.remainder) j["remainder"] = *c.remainder;
        out.push_back(j);
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    const auto started = std::chrono::steady_clock::now();
    if (cfg.n == 0) throw ConfigError("N must be at least 1");
    static const char* const kPredictors[] = {"auto", "none", "prop1", "prop2", "theorem1", "theorem2", "orbit"};
    if (std::find(std::begin(kPredictors), std::end(kPredictors), cfg.predictor) == std::end(kPredictors))
        throw ConfigError("unknown predictor '" + cfg.predictor + "'");

    Setup s;
    switch (cfg.family) {
    case Family::hermite: s = setup_hermite(cfg); break;
    case Family::laguerre: s = setup_laguerre(cfg); break;
    case Family::chebyshev: s = setup_chebyshev(cfg); break;
    case Family::potential: s = setup_potential(cfg); break;
    }

    std::optional<double> target;
    if (cfg.target && *cfg.target != "auto") {
        target = parse_target(*cfg.target);
    } else if (s.prediction) {
        target = s.prediction->value;
    } else if (cfg.target || cfg.scan) {
        throw ConfigError("no prediction available for target auto; give an explicit --target");
    }

    EstimateOptions opts;
    opts.threads = cfg.threads;
    opts.target = target;
    const CorrelationReport est = estimate_limit(*s.source, cfg.n, opts);

    ExperimentResult result;
    if (cfg.scan) {
        const RemainderScan scan = remainder_scan(*s.source, cfg.n, *target, cfg.stride, cfg.threads);
        result.series = scan.series;
    } else {
        for (const auto& c : est.checkpoints) result.series.push_back({c.n, c.agree, c.estimate, c.remainder.value_or(0.0)});
    }
    result.series_has_remainder = target.has_value();
    if (cfg.family == Family::chebyshev) chebyshev_diagnostics(cfg, s, est);

    json& rep = result.report;
    rep["family"] = family_name(cfg.family);
    rep["mode"] = cfg.scan ? "scan" : "estimate";
    rep["params"] = s.params;
    rep["n"] = est.n;
    rep["agree"] = est.agree;
    rep["disagree"] = est.disagree;
    rep["zero_hits"] = est.zero_hits;
    rep["estimate"] = est.estimate;
    if (s.prediction) {
        rep["predictor"] = s.prediction->method;
        rep["prediction"] = s.prediction->value;
        rep["prediction_details"] = s.prediction->details;
        rep["gap"] = std::abs(est.estimate - s.prediction->value);
    } else {
        rep["predictor"] = nullptr;
        rep["prediction"] = nullptr;
        rep["gap"] = nullptr;
    }
    rep["target"] = target ? json(*target) : json(nullptr);
    rep["max_abs_remainder"] = est.max_abs_remainder ? json(*est.max_abs_remainder) : json(nullptr);
    rep["argmax_remainder_n"] = est.max_abs_remainder ? json(est.argmax_remainder_n) : json(nullptr);
    if (cfg.scan) rep["stride"] = std::max<std::uint64_t>(cfg.stride, 1);
    rep["checkpoints"] = checkpoints_json(est);
    rep["diagnostics"] = s.diagnostics;

    json hashed = {{"family", rep["family"]}, {"mode", rep["mode"]}, {"params", rep["params"]},
                   {"n", cfg.n},            {"predictor", cfg.predictor}, {"target", rep["target"]},
                   {"stride", cfg.stride}};
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    rep["meta"] = {{"timestamp", utc_timestamp()},
                   {"version", library_version()},
                   {"config_hash", fnv1a_hex(hashed.dump())},
                   {"runtime_seconds", runtime},
                   {"threads", resolve_threads(cfg.threads)}};
    return result;
}

std::string deterministic_dump(const json& report)
{
    json copy = report;
    copy.erase("meta");
    return copy.dump(2);
}

} // namespace signcorr::lab
