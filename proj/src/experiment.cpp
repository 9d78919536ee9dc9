#include "horolab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "horolab/curvature.hpp"
#include "horolab/equidist.hpp"
#include "horolab/errors.hpp"
#include "horolab/fourier.hpp"
#include "horolab/homspace.hpp"
#include "horolab/poly.hpp"
#include "horolab/sl2.hpp"
#include "horolab/submanifold.hpp"

namespace horolab::experiment {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(where + "." + key, "missing field");
    return *it;
}

double as_num(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

std::int64_t as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

std::string as_str(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

double opt_num(const json& j, const std::string& key, double def, const std::string& where) {
    const auto it = j.find(key);
    return it == j.end() ? def : as_num(*it, where + "." + key);
}

std::int64_t opt_int(const json& j, const std::string& key, std::int64_t def,
                     const std::string& where) {
    const auto it = j.find(key);
    return it == j.end() ? def : as_int(*it, where + "." + key);
}

bool opt_bool(const json& j, const std::string& key, bool def, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) return def;
    if (!it->is_boolean()) fail(where + "." + key, "expected a boolean");
    return it->get<bool>();
}

std::vector<double> as_num_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty list of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(as_num(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

poly::Poly parse_poly(const json& j, int vars, const std::string& where) {
    if (!j.is_array()) fail(where, "expected a list of monomial terms");
    poly::Poly p(vars);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string wt = where + "[" + std::to_string(i) + "]";
        const json& e = need(j[i], "exp", wt);
        if (!e.is_array() || static_cast<int>(e.size()) != vars)
            fail(wt + ".exp", "expected " + std::to_string(vars) + " exponents");
        std::vector<int> exp;
        for (std::size_t k = 0; k < e.size(); ++k) {
            const std::int64_t v = as_int(e[k], wt + ".exp[" + std::to_string(k) + "]");
            if (v < 0) fail(wt + ".exp", "exponents must be nonnegative");
            exp.push_back(static_cast<int>(v));
        }
        p += poly::Poly::monomial(vars, std::move(exp),
                                  as_num(need(j[i], "coeff", wt), wt + ".coeff"));
    }
    return p;
}

submanifold::SurfaceMeasure parse_surface(const json& cfg) {
    const json& s = need(cfg, "submanifold", "config");
    const int m = static_cast<int>(as_int(need(s, "m", "submanifold"), "submanifold.m"));
    const int n = static_cast<int>(as_int(need(s, "n", "submanifold"), "submanifold.n"));
    if (s.contains("d") && as_int(s["d"], "submanifold.d") != m + n)
        fail("submanifold.d", "must equal m + n");
    const json& g = need(s, "graph", "submanifold");
    if (!g.is_array() || static_cast<int>(g.size()) != n)
        fail("submanifold.graph", "expected one polynomial per codimension");
    std::vector<poly::Poly> w;
    for (std::size_t r = 0; r < g.size(); ++r)
        w.push_back(parse_poly(g[r], m, "submanifold.graph[" + std::to_string(r) + "]"));
    poly::Poly density;
    if (s.contains("density")) density = parse_poly(s["density"], m, "submanifold.density");
    return submanifold::SurfaceMeasure(submanifold::PolyGraphMap(m, n, std::move(w)),
                                       std::move(density));
}

sl2::Mat2 parse_iwasawa(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected Iwasawa coordinates {n, a, k}");
    const double a = opt_num(j, "a", 1.0, where);
    if (!(a > 0.0)) fail(where + ".a", "diagonal part must be positive");
    return sl2::make_n(opt_num(j, "n", 0.0, where)) * sl2::make_a(a) *
           sl2::make_k(opt_num(j, "k", 0.0, where));
}

std::optional<homspace::AutoBumpFactor> parse_factor(const json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "one") return std::nullopt;
    homspace::AutoBumpFactor b;
    b.center = parse_iwasawa(need(j, "center", where), where + ".center");
    b.radius = opt_num(j, "radius", b.radius, where);
    b.amplitude = opt_num(j, "amplitude", b.amplitude, where);
    if (!(b.radius > 0.0)) fail(where + ".radius", "must be positive");
    return b;
}

homspace::FactorizableTestFn parse_testfn(const json& cfg, int d) {
    const json& f = need(cfg, "testfn", "config");
    if (!f.is_array() || static_cast<int>(f.size()) != d)
        fail("testfn", "expected " + std::to_string(d) + " factors");
    std::vector<std::optional<homspace::AutoBumpFactor>> factors;
    for (std::size_t i = 0; i < f.size(); ++i)
        factors.push_back(parse_factor(f[i], "testfn[" + std::to_string(i) + "]"));
    return homspace::FactorizableTestFn(std::move(factors));
}

homspace::GElem parse_x0(const json& cfg, int d) {
    if (!cfg.contains("x0")) return homspace::identity_elem(d);
    const json& x = cfg["x0"];
    if (!x.is_array() || static_cast<int>(x.size()) != d)
        fail("x0", "expected " + std::to_string(d) + " Iwasawa factors");
    homspace::GElem g = homspace::identity_elem(d);
    for (std::size_t i = 0; i < x.size(); ++i)
        g.factors[i] = parse_iwasawa(x[i], "x0[" + std::to_string(i) + "]");
    return g;
}

std::int64_t scaled(std::int64_t base, double scale) {
    return std::max<std::int64_t>(8, static_cast<std::int64_t>(std::llround(double(base) * scale)));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Row = std::vector<std::string>;

struct Outcome {
    std::string header;
    std::vector<Row> rows;
    json results;
    json thresholds = json::object();
    bool pass = true;
};

void check_range(Outcome& out, const json& th, const std::string& key, double value) {
    if (!th.contains(key)) return;
    const std::vector<double> r = as_num_list(th[key], "thresholds." + key);
    if (r.size() != 2) fail("thresholds." + key, "expected [lo, hi]");
    out.thresholds[key] = th[key];
    if (!(value >= r[0] && value <= r[1])) out.pass = false;
}

void check_min(Outcome& out, const json& th, const std::string& key, double value) {
    if (!th.contains(key)) return;
    out.thresholds[key] = th[key];
    if (!(value >= as_num(th[key], "thresholds." + key))) out.pass = false;
}

void check_max(Outcome& out, const json& th, const std::string& key, double value) {
    if (!th.contains(key)) return;
    out.thresholds[key] = th[key];
    if (!(value <= as_num(th[key], "thresholds." + key))) out.pass = false;
}

json thresholds_of(const json& cfg) {
    return cfg.contains("thresholds") ? cfg["thresholds"] : json::object();
}

const json& budgets_of(const json& cfg) {
    static const json empty = json::object();
    return cfg.contains("budgets") ? cfg["budgets"] : empty;
}

Outcome run_certify(const json& cfg, double /*scale*/, std::uint64_t /*seed*/) {
    const submanifold::SurfaceMeasure mu = parse_surface(cfg);
    const int m = mu.map().m();
    const double delta = opt_num(cfg, "delta", 0.1, "config");
    const int per_axis =
        static_cast<int>(opt_int(cfg, "t_grid_per_axis", 20, "config"));
    const double lo = opt_num(cfg, "t_lo", -0.9, "config");
    const double hi = opt_num(cfg, "t_hi", 0.9, "config");
    if (per_axis < 1 || !(lo < hi)) fail("t_grid_per_axis", "empty parameter grid");

    std::vector<std::vector<double>> grid;
    std::int64_t total = 1;
    for (int i = 0; i < m; ++i) total *= per_axis;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<double> t(static_cast<std::size_t>(m));
        std::int64_t rem = idx;
        for (int i = m - 1; i >= 0; --i) {
            const int c = static_cast<int>(rem % per_axis);
            rem /= per_axis;
            t[static_cast<std::size_t>(i)] =
                per_axis == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * double(c) / (per_axis - 1);
        }
        grid.push_back(std::move(t));
    }

    const curvature::RegionSummary rs = curvature::certify_region(mu.map(), grid, delta);

    Outcome out;
    out.header = "";
    for (int i = 0; i < m; ++i) out.header += "t" + std::to_string(i + 1) + ",";
    out.header += "e_star,coeff_system_min,primitive_dim,is_delta_curved";
    double min_e = 0.0, min_c = 0.0;
    bool first = true;
    for (const curvature::CurvatureReport& r : rs.reports) {
        Row row;
        for (double ti : r.t) row.push_back(fmt(ti));
        row.push_back(fmt(r.e_star));
        row.push_back(fmt(r.coeff_system_min));
        row.push_back(std::to_string(r.primitive_dim));
        row.push_back(r.is_delta_curved ? "1" : "0");
        out.rows.push_back(std::move(row));
        min_e = first ? r.e_star : std::min(min_e, r.e_star);
        min_c = first ? r.coeff_system_min : std::min(min_c, r.coeff_system_min);
        first = false;
    }
    out.results = {{"grid_points", rs.reports.size()},
                   {"delta", delta},
                   {"min_e_star", min_e},
                   {"min_coeff_system_min", min_c},
                   {"non_curved_fraction", rs.non_curved_fraction}};
    const json th = thresholds_of(cfg);
    check_min(out, th, "min_e_star", min_e);
    check_max(out, th, "max_non_curved_fraction", rs.non_curved_fraction);
    return out;
}

Outcome run_sublevel(const json& cfg, double scale, std::uint64_t seed) {
    const json& u = need(cfg, "u", "config");
    const int m = static_cast<int>(as_int(need(u, "m", "u"), "u.m"));
    const poly::Poly p = parse_poly(need(u, "terms", "u"), m, "u.terms");
    const std::vector<double> deltas = as_num_list(need(cfg, "delta_grid", "config"), "delta_grid");
    const std::int64_t samples =
        scaled(opt_int(budgets_of(cfg), "samples", 1'000'000, "budgets"), scale);

    const curvature::SublevelFit fit = curvature::sublevel_exponent(p, deltas, samples, seed);

    Outcome out;
    out.header = "delta,fraction,stderr";
    for (std::size_t i = 0; i < fit.deltas.size(); ++i) {
        const double f = fit.fractions[i];
        out.rows.push_back({fmt(fit.deltas[i]), fmt(f),
                            fmt(std::sqrt(std::max(f * (1.0 - f), 0.0) / double(samples)))});
    }
    out.results = {{"exponent", fit.exponent},
                   {"residual", fit.residual},
                   {"samples", samples},
                   {"kept_deltas", fit.deltas.size()}};
    check_range(out, thresholds_of(cfg), "exponent_range", fit.exponent);
    return out;
}

Outcome run_diagonalize(const json& cfg, double /*scale*/, std::uint64_t /*seed*/) {
    const std::vector<double> lambda = as_num_list(need(cfg, "lambda", "config"), "lambda");
    const int l = static_cast<int>(lambda.size());
    const json& ph = need(cfg, "phi", "config");
    if (!ph.is_array() || static_cast<int>(ph.size()) != l * l)
        fail("phi", "expected a row-major l x l polynomial table");
    std::vector<poly::Poly> phi;
    for (std::size_t i = 0; i < ph.size(); ++i)
        phi.push_back(parse_poly(ph[i], l, "phi[" + std::to_string(i) + "]"));
    const std::vector<double> deltas = as_num_list(need(cfg, "delta_grid", "config"), "delta_grid");
    const json& pts = need(cfg, "points", "config");
    if (!pts.is_array() || pts.empty()) fail("points", "expected a nonempty list of points");

    Outcome out;
    out.header = "delta,point,residual,jacobian_det";
    double max_res = 0.0, max_dev_ratio = 0.0;
    for (double delta : deltas) {
        for (std::size_t pi = 0; pi < pts.size(); ++pi) {
            const std::vector<double> x =
                as_num_list(pts[pi], "points[" + std::to_string(pi) + "]");
            if (static_cast<int>(x.size()) != l)
                fail("points[" + std::to_string(pi) + "]", "dimension mismatch with lambda");
            const curvature::DiagonalizationResult r =
                curvature::analytic_diagonalize(lambda, phi, delta, x);
            out.rows.push_back(
                {fmt(delta), std::to_string(pi), fmt(r.residual), fmt(r.jacobian_det)});
            max_res = std::max(max_res, r.residual);
            if (delta > 0.0)
                max_dev_ratio = std::max(max_dev_ratio, std::abs(r.jacobian_det - 1.0) / delta);
        }
    }
    out.results = {{"max_residual", max_res}, {"max_det_deviation_per_delta", max_dev_ratio}};
    const json th = thresholds_of(cfg);
    check_max(out, th, "max_residual", max_res);
    check_max(out, th, "max_det_slope", max_dev_ratio);
    return out;
}

fourier::FourierConfig parse_fourier_budgets(const json& cfg, double scale, std::uint64_t seed) {
    const json& b = budgets_of(cfg);
    fourier::FourierConfig fc;
    fc.seed = seed;
    fc.base_samples = scaled(opt_int(b, "base_samples", fc.base_samples, "budgets"), scale);
    fc.floor_samples = opt_int(b, "floor_samples", fc.floor_samples, "budgets");
    fc.max_samples = opt_int(b, "max_samples", fc.max_samples, "budgets");
    fc.replications = static_cast<int>(opt_int(b, "replications", fc.replications, "budgets"));
    return fc;
}

Outcome run_fourier_decay(const json& cfg, double scale, std::uint64_t seed) {
    const submanifold::SurfaceMeasure mu = parse_surface(cfg);
    const double beta = as_num(need(cfg, "beta", "config"), "beta");
    std::vector<double> t_center(static_cast<std::size_t>(mu.map().m()), 0.0);
    if (cfg.contains("t_center")) {
        t_center = as_num_list(cfg["t_center"], "t_center");
        if (static_cast<int>(t_center.size()) != mu.map().m())
            fail("t_center", "dimension mismatch with submanifold");
    }
    const submanifold::LocalizedMeasure loc =
        submanifold::localize(mu, mu.map().eval_graph(t_center), beta);
    const std::vector<double> Kgrid = as_num_list(need(cfg, "K_grid", "config"), "K_grid");
    const int shell_samples = static_cast<int>(
        scaled(opt_int(budgets_of(cfg), "shell_samples", 32, "budgets"), scale));

    const fourier::DecayFit fit =
        fourier::l2_shell_decay(loc, Kgrid, shell_samples, parse_fourier_budgets(cfg, scale, seed));

    Outcome out;
    out.header = "K,value,stderr";
    for (std::size_t i = 0; i < fit.K.size(); ++i)
        out.rows.push_back({fmt(fit.K[i]), fmt(fit.value[i]), fmt(fit.stderr_[i])});
    out.results = {{"slope", fit.slope}, {"residual", fit.residual}, {"beta", beta}};
    check_range(out, thresholds_of(cfg), "slope_range", fit.slope);
    return out;
}

void rate_rows(Outcome& out, const equidist::RateFit& fit) {
    out.header = "y,value,stderr,samples";
    for (std::size_t i = 0; i < fit.y.size(); ++i)
        out.rows.push_back(
            {fmt(fit.y[i]), fmt(fit.value[i]), fmt(fit.stderr_[i]), std::to_string(fit.samples[i])});
}

Outcome run_equidistribute(const json& cfg, double scale, std::uint64_t seed) {
    const json& b = budgets_of(cfg);
    submanifold::SurfaceMeasure mu = parse_surface(cfg);
    const int d = mu.map().d();
    equidist::TranslateExperiment exp{std::move(mu),
                                      parse_x0(cfg, d),
                                      parse_testfn(cfg, d),
                                      as_num_list(need(cfg, "y_grid", "config"), "y_grid"),
                                      seed};
    exp.base_samples = scaled(opt_int(b, "base_samples", 256, "budgets"), scale);
    exp.max_samples = opt_int(b, "max_samples", exp.max_samples, "budgets");
    exp.replications = static_cast<int>(opt_int(b, "replications", 8, "budgets"));

    const equidist::RateFit fit = equidist::discrepancy_curve(exp);

    Outcome out;
    rate_rows(out, fit);
    const double ratio = fit.value.front() > 0.0 ? fit.value.back() / fit.value.front() : 0.0;
    out.results = {{"c", fit.c},
                   {"ci_lo", fit.ci.lo},
                   {"ci_hi", fit.ci.hi},
                   {"final_ratio", ratio},
                   {"haar_target", homspace::haar_integral_quotient(exp.testfn)}};
    const json th = thresholds_of(cfg);
    if (opt_bool(th, "require_positive_rate", false, "thresholds")) {
        out.thresholds["require_positive_rate"] = true;
        if (!(fit.c > 0.0 && fit.ci.lo > 0.0)) out.pass = false;
    }
    if (opt_bool(th, "require_rate_near_zero", false, "thresholds")) {
        out.thresholds["require_rate_near_zero"] = true;
        if (!(std::abs(fit.c) < 0.05 && fit.ci.lo > -0.1 && fit.ci.hi < 0.1)) out.pass = false;
    }
    check_max(out, th, "max_final_ratio", ratio);
    return out;
}

Outcome run_mixing(const json& cfg, double scale, std::uint64_t seed) {
    const homspace::FactorizableTestFn f1(
        {parse_factor(need(cfg, "f1", "config"), "f1")});
    const homspace::FactorizableTestFn f2(
        {parse_factor(need(cfg, "f2", "config"), "f2")});
    const json& b = budgets_of(cfg);
    equidist::MixingConfig mc;
    mc.seed = seed;
    mc.samples = scaled(opt_int(b, "samples", mc.samples, "budgets"), scale);
    mc.replications = static_cast<int>(opt_int(b, "replications", mc.replications, "budgets"));

    const equidist::RateFit fit = equidist::mixing_probe(
        f1, f2, as_num_list(need(cfg, "y_grid", "config"), "y_grid"), mc);

    Outcome out;
    rate_rows(out, fit);
    const double drop = fit.value.back() > 0.0 ? fit.value.front() / fit.value.back() : 0.0;
    out.results = {{"c", fit.c}, {"ci_lo", fit.ci.lo}, {"ci_hi", fit.ci.hi}, {"drop", drop}};
    check_min(out, thresholds_of(cfg), "min_drop", drop);
    return out;
}

Outcome run_horocycle(const json& cfg, double /*scale*/, std::uint64_t /*seed*/) {
    const json& jf = need(cfg, "f0", "config");
    const std::optional<homspace::AutoBumpFactor> factor = parse_factor(jf, "f0");
    double mean = 0.0;
    if (opt_bool(cfg, "subtract_mean", false, "config")) {
        if (!factor) fail("subtract_mean", "constant f0 has nothing to subtract");
        mean = homspace::FactorizableTestFn({*factor}).haar_integral();
    }
    auto f0 = [factor, mean](const sl2::Mat2& g) {
        return (factor ? factor->automorphized(g) : 1.0) - mean;
    };
    const sl2::Mat2 x0 = cfg.contains("x0") ? parse_iwasawa(cfg["x0"], "x0") : sl2::make_a(1.0);

    equidist::RealBump psi;
    if (cfg.contains("psi")) {
        const json& jp = cfg["psi"];
        psi.center = opt_num(jp, "center", psi.center, "psi");
        psi.halfwidth = opt_num(jp, "halfwidth", psi.halfwidth, "psi");
        psi.amplitude = opt_num(jp, "amplitude", psi.amplitude, "psi");
    }
    const double c = opt_num(cfg, "character_c", 0.0, "config");
    const json& b = budgets_of(cfg);
    equidist::HorocycleConfig hc;
    hc.points_per_unit =
        static_cast<int>(opt_int(b, "points_per_unit", hc.points_per_unit, "budgets"));
    hc.max_nodes = opt_int(b, "max_nodes", hc.max_nodes, "budgets");

    const equidist::RateFit fit = equidist::horocycle_character_probe(
        f0, x0, psi, c, as_num_list(need(cfg, "y_grid", "config"), "y_grid"), hc);

    Outcome out;
    rate_rows(out, fit);
    const double drop = fit.value.back() > 0.0 ? fit.value.front() / fit.value.back() : 0.0;
    out.results = {{"c", fit.c}, {"character_c", c}, {"drop", drop}};
    check_min(out, thresholds_of(cfg), "min_drop", drop);
    return out;
}

constexpr const char* kKinds[] = {"certify-curvature", "sublevel",  "diagonalize-demo",
                                  "fourier-decay",     "equidistribute", "mixing",
                                  "horocycle"};

}  // namespace

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json cfg = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (cfg.is_discarded()) throw ConfigError("config: " + path + " is not valid JSON");
    const std::string kind = as_str(need(cfg, "kind", "config"), "config.kind");
    bool known = false;
    for (const char* k : kKinds) known = known || kind == k;
    if (!known) fail("config.kind", "unknown experiment kind '" + kind + "'");
    return cfg;
}

std::string config_hash(const json& cfg) {
    const std::string s = cfg.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(json cfg, const RunOptions& opts) {
    const std::string kind = as_str(need(cfg, "kind", "config"), "config.kind");
    if (opts.seed) cfg["seed"] = *opts.seed;
    if (opts.out_dir) cfg["out"] = *opts.out_dir;
    if (!cfg.contains("seed")) cfg["seed"] = 0;
    if (!cfg.contains("out")) cfg["out"] = ".";
    if (!cfg.contains("label")) cfg["label"] = kind;
    cfg["budget_scale"] = opts.budget_scale;
    if (!(opts.budget_scale > 0.0)) fail("budget_scale", "must be positive");

    const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
    Outcome out;
    if (kind == "certify-curvature") out = run_certify(cfg, opts.budget_scale, seed);
    else if (kind == "sublevel") out = run_sublevel(cfg, opts.budget_scale, seed);
    else if (kind == "diagonalize-demo") out = run_diagonalize(cfg, opts.budget_scale, seed);
    else if (kind == "fourier-decay") out = run_fourier_decay(cfg, opts.budget_scale, seed);
    else if (kind == "equidistribute") out = run_equidistribute(cfg, opts.budget_scale, seed);
    else if (kind == "mixing") out = run_mixing(cfg, opts.budget_scale, seed);
    else if (kind == "horocycle") out = run_horocycle(cfg, opts.budget_scale, seed);
    else fail("config.kind", "unknown experiment kind '" + kind + "'");

    const std::filesystem::path dir(as_str(cfg["out"], "config.out"));
    std::filesystem::create_directories(dir);
    const std::string label = as_str(cfg["label"], "config.label");

    std::ofstream csv(dir / (label + ".csv"), std::ios::binary);
    csv << out.header << "\n";
    for (const Row& row : out.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
        csv << "\n";
    }
    if (!csv) throw ResourceError("run: cannot write CSV under " + dir.string());

    const json summary = {{"kind", kind},          {"config", cfg},
                          {"config_hash", config_hash(cfg)}, {"results", out.results},
                          {"thresholds", out.thresholds},    {"pass", out.pass}};
    std::ofstream js(dir / (label + ".json"), std::ios::binary);
    js << summary.dump(2) << "\n";
    if (!js) throw ResourceError("run: cannot write summary under " + dir.string());
    return out.pass ? 0 : 2;
}

int run_file(const std::string& config_path, const RunOptions& opts) {
    return run(load_config(config_path), opts);
}

}  // namespace horolab::experiment
