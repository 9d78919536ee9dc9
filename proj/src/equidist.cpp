#include "horolab/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"
#include "horolab/rng.hpp"

namespace horolab::equidist {

namespace {

void validate(const TranslateExperiment& exp) {
    const int d = exp.measure.map().d();
    if (d != exp.x0.d() || d != exp.testfn.d())
        throw std::domain_error("TranslateExperiment: dimension mismatch");
    if (exp.ygrid.empty()) throw std::domain_error("TranslateExperiment: empty y grid");
    for (std::size_t i = 0; i < exp.ygrid.size(); ++i) {
        if (!(exp.ygrid[i] > 0.0 && exp.ygrid[i] <= 1.0))
            throw std::domain_error("TranslateExperiment: y must lie in (0, 1]");
        if (i > 0 && !(exp.ygrid[i] < exp.ygrid[i - 1]))
            throw std::domain_error("TranslateExperiment: y grid must decrease");
    }
    if (exp.replications < 2) throw std::domain_error("TranslateExperiment: replications < 2");
}

// per-replication means, shared by translate_integral and the bootstrap
std::vector<double> translate_replications(const TranslateExperiment& exp, double y,
                                           std::int64_t* n_out = nullptr) {
    if (!(y > 0.0 && y <= 1.0)) throw std::domain_error("translate_integral: y must be in (0, 1]");
    const int m = exp.measure.map().m();
    const int d = exp.measure.map().d();
    const std::int64_t total = sample_schedule(exp, y);
    const std::int64_t n = (total + exp.replications - 1) / exp.replications;
    if (n_out) *n_out = n * exp.replications;

    const qmc::Halton halton(m, rng::Stream(exp.seed, "equidist.translate"), exp.replications);
    const double vol = std::pow(2.0, m);
    const homspace::GElem ay = homspace::a_y(d, y);

    std::vector<double> rep_means(static_cast<std::size_t>(exp.replications));
    for (int r = 0; r < exp.replications; ++r) {
        const double sum = par::chunked_sum<double>(
            n,
            [&](std::int64_t i) {
                std::vector<double> t(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k)
                    t[static_cast<std::size_t>(k)] =
                        -1.0 + 2.0 * halton.coord(r, static_cast<std::uint64_t>(i), k);
                const double rho = exp.measure.density(t);
                if (rho == 0.0) return 0.0;
                const homspace::GElem u = homspace::u_t(exp.measure.map().eval_graph(t));
                return rho * exp.testfn.eval(homspace::translate(homspace::translate(exp.x0, u), ay));
            },
            /*chunk=*/1 << 9);
        rep_means[static_cast<std::size_t>(r)] = vol * sum / double(n);
    }
    return rep_means;
}

// weighted slope fit of log(value) against log(1/y) over the used mask;
// returns -slope so that value ~ y^c maps to c
double rate_exponent(const std::vector<double>& y, const std::vector<double>& value,
                     const std::vector<double>& weight, const std::vector<bool>& used) {
    std::vector<double> x, ly, w;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!used[i]) continue;
        x.push_back(std::log(1.0 / y[i]));
        ly.push_back(std::log(std::max(value[i], 1e-300)));
        w.push_back(weight[i]);
    }
    return -fit::fit_slope(x, ly, w).slope;
}

// pairs bootstrap over the y points, with the per-point QMC replications
// resampled inside each draw: the y-scatter around the power law dominates
// the replication noise, so resampling replications alone undercovers
template <class Stat>
fit::Interval bootstrap_interval(const std::vector<double>& y,
                                 const std::vector<std::vector<double>>& reps,
                                 const std::vector<double>& weight, const std::vector<bool>& used,
                                 Stat&& stat, const rng::Stream& bs) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (used[i]) idx.push_back(i);
    const std::size_t nu = idx.size();
    const int B = 400;
    std::vector<double> cs;
    cs.reserve(B);
    for (int b = 0; b < B; ++b) {
        std::vector<double> x, ly, w;
        for (std::size_t j = 0; j < nu; ++j) {
            const std::uint32_t slot = static_cast<std::uint32_t>(j);
            const auto pick = std::min(
                static_cast<std::size_t>(bs.uniform(static_cast<std::uint64_t>(b), slot) * nu),
                nu - 1);
            const std::size_t i = idx[pick];
            const std::size_t R = reps[i].size();
            double mean = 0.0;
            for (std::size_t r = 0; r < R; ++r) {
                const auto rp = std::min(
                    static_cast<std::size_t>(
                        bs.uniform(static_cast<std::uint64_t>(b),
                                   static_cast<std::uint32_t>(1000 + j * R + r)) *
                        R),
                    R - 1);
                mean += reps[i][rp];
            }
            x.push_back(std::log(1.0 / y[i]));
            ly.push_back(std::log(std::max(stat(mean / double(R)), 1e-300)));
            w.push_back(weight[i]);
        }
        // a draw collapsing to one y value carries no slope information
        bool degenerate = true;
        for (std::size_t j = 1; j < x.size(); ++j)
            if (x[j] != x[0]) degenerate = false;
        if (degenerate) continue;
        cs.push_back(-fit::fit_slope(x, ly, w).slope);
    }
    return fit::percentile_interval(std::move(cs));
}

}  // namespace

std::int64_t sample_schedule(const TranslateExperiment& exp, double y) {
    const int m_eff = std::min(exp.measure.map().m(), 2);
    double n = double(exp.base_samples);
    const double per_dim = std::ceil(1.0 / y);
    for (int i = 0; i < m_eff; ++i) n *= per_dim;
    return static_cast<std::int64_t>(std::min(n, double(exp.max_samples)));
}

qmc::Estimate translate_integral(const TranslateExperiment& exp, double y) {
    validate(exp);
    return qmc::combine(translate_replications(exp, y));
}

RateFit discrepancy_curve(const TranslateExperiment& exp) {
    validate(exp);
    const double target = homspace::haar_integral_quotient(exp.testfn);
    const std::size_t ny = exp.ygrid.size();

    RateFit out;
    out.y = exp.ygrid;
    std::vector<std::vector<double>> reps(ny);
    for (std::size_t i = 0; i < ny; ++i) {
        std::int64_t n = 0;
        reps[i] = translate_replications(exp, exp.ygrid[i], &n);
        const qmc::Estimate e = qmc::combine(reps[i]);
        out.value.push_back(std::abs(e.value - target));
        out.stderr_.push_back(e.stderr_);
        out.samples.push_back(n);
    }
    out.used.resize(ny);
    std::vector<double> weight(ny, 0.0);
    int usable = 0;
    for (std::size_t i = 0; i < ny; ++i) {
        out.used[i] = out.stderr_[i] < 0.25 * out.value[i];
        if (out.used[i]) {
            // variance of log D is (se/D)^2 plus a floor for the scatter of
            // D(y) around the power law, which dominates the sampling error
            const double rel = out.stderr_[i] / out.value[i];
            weight[i] = 1.0 / (rel * rel + 0.25);
            ++usable;
        }
    }
    if (usable < 4)
        throw std::domain_error("discrepancy_curve: fewer than 4 usable y points for the fit");
    out.c = rate_exponent(out.y, out.value, weight, out.used);
    out.ci = bootstrap_interval(out.y, reps, weight, out.used,
                                [target](double mean) { return std::abs(mean - target); },
                                rng::Stream(exp.seed, "equidist.bootstrap"));
    return out;
}

RateFit mixing_probe(const homspace::FactorizableTestFn& f1,
                     const homspace::FactorizableTestFn& f2, const std::vector<double>& ygrid,
                     const MixingConfig& cfg) {
    if (f1.d() != 1 || f2.d() != 1)
        throw std::domain_error("mixing_probe: single-factor test functions required");
    if (ygrid.empty()) throw std::domain_error("mixing_probe: empty y grid");
    if (cfg.replications < 2 || cfg.samples < cfg.replications)
        throw std::domain_error("mixing_probe: bad sampling configuration");

    homspace::QuotientSampler qs;
    qs.seed = cfg.seed;
    qs.d = 1;
    const int R = cfg.replications;
    const std::int64_t n = cfg.samples;

    struct Acc {
        std::vector<double> v;
        Acc& operator+=(const Acc& o) {
            if (v.empty()) v = o.v;
            else
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
            return *this;
        }
    };

    RateFit out;
    out.y = ygrid;
    std::vector<std::vector<double>> rep_covs(ygrid.size());
    for (std::size_t yi = 0; yi < ygrid.size(); ++yi) {
        const sl2::Mat2 a = sl2::make_a(ygrid[yi]);
        const Acc acc = par::chunked_sum<Acc>(
            n,
            [&](std::int64_t i) {
                Acc o;
                o.v.assign(static_cast<std::size_t>(4 * R), 0.0);
                homspace::GElem g = qs.point(static_cast<std::uint64_t>(i));
                homspace::GElem tg = g;
                tg.factors[0] = a * g.factors[0];
                const double v1 = f1.eval(tg);
                const double v2 = f2.eval(g);
                const std::size_t r = static_cast<std::size_t>(i % R);
                o.v[4 * r + 0] = v1;
                o.v[4 * r + 1] = v2;
                o.v[4 * r + 2] = v1 * v2;
                o.v[4 * r + 3] = 1.0;
                return o;
            },
            /*chunk=*/1 << 10);
        std::vector<double> covs(static_cast<std::size_t>(R));
        for (int r = 0; r < R; ++r) {
            const double cnt = acc.v[static_cast<std::size_t>(4 * r + 3)];
            const double m1 = acc.v[static_cast<std::size_t>(4 * r + 0)] / cnt;
            const double m2 = acc.v[static_cast<std::size_t>(4 * r + 1)] / cnt;
            const double m12 = acc.v[static_cast<std::size_t>(4 * r + 2)] / cnt;
            covs[static_cast<std::size_t>(r)] = m12 - m1 * m2;
        }
        const qmc::Estimate e = qmc::combine(covs);
        out.value.push_back(std::abs(e.value));
        out.stderr_.push_back(e.stderr_);
        out.samples.push_back(n);
        rep_covs[yi] = std::move(covs);
    }

    // fit against log ||a(y)|| = (1/2) log(1/y): same machinery, halved slope
    out.used.resize(ygrid.size());
    std::vector<double> weight(ygrid.size(), 0.0);
    int usable = 0;
    for (std::size_t i = 0; i < ygrid.size(); ++i) {
        out.used[i] = out.stderr_[i] < 0.25 * out.value[i];
        if (out.used[i]) {
            // variance of log D is (se/D)^2 plus a floor for the scatter of
            // D(y) around the power law, which dominates the sampling error
            const double rel = out.stderr_[i] / out.value[i];
            weight[i] = 1.0 / (rel * rel + 0.25);
            ++usable;
        }
    }
    if (usable >= 2) {
        out.c = 2.0 * rate_exponent(out.y, out.value, weight, out.used);
        const fit::Interval ci =
            bootstrap_interval(out.y, rep_covs, weight, out.used,
                               [](double mean) { return std::abs(mean); },
                               rng::Stream(cfg.seed, "equidist.mixing.bootstrap"));
        out.ci = {2.0 * ci.lo, 2.0 * ci.hi};
    }
    return out;
}

double RealBump::operator()(double t) const {
    const double s = (t - center) / halfwidth;
    return amplitude * submanifold::bump_window(s * s);
}

RateFit horocycle_character_probe(const std::function<double(const sl2::Mat2&)>& f0,
                                  const sl2::Mat2& x0, const RealBump& psi, double c,
                                  const std::vector<double>& ygrid,
                                  const HorocycleConfig& cfg) {
    if (ygrid.empty()) throw std::domain_error("horocycle_character_probe: empty y grid");
    if (!(psi.halfwidth > 0.0))
        throw std::domain_error("horocycle_character_probe: psi support must be an interval");

    const double lo = psi.center - psi.halfwidth, hi = psi.center + psi.halfwidth;
    auto simpson = [&](double y, std::int64_t nodes) {
        const sl2::Mat2 a = sl2::make_a(y);
        const double h = (hi - lo) / double(nodes);
        struct CAcc {
            std::complex<double> v{0.0, 0.0};
            CAcc& operator+=(const CAcc& o) {
                v += o.v;
                return *this;
            }
        };
        const CAcc acc = par::chunked_sum<CAcc>(
            nodes + 1,
            [&](std::int64_t i) {
                const double t = lo + h * double(i);
                const double w = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                const double amp = psi(t) * f0(a * sl2::make_u(t) * x0);
                const double ph = 2.0 * std::numbers::pi * c * t;
                return CAcc{w * amp * std::complex<double>(std::cos(ph), std::sin(ph))};
            },
            /*chunk=*/1 << 10);
        return acc.v * (h / 3.0);
    };

    RateFit out;
    out.y = ygrid;
    for (double y : ygrid) {
        if (!(y > 0.0 && y <= 1.0))
            throw std::domain_error("horocycle_character_probe: y must be in (0, 1]");
        double raw =
            2.0 * psi.halfwidth * double(cfg.points_per_unit) * (1.0 / y + std::abs(c) + 1.0);
        std::int64_t nodes = static_cast<std::int64_t>(std::ceil(raw / 2.0)) * 2;
        nodes = std::max<std::int64_t>(nodes, 16);
        if (nodes > cfg.max_nodes)
            throw ResourceError("horocycle_character_probe: quadrature resolution cap exceeded");
        const std::complex<double> fine = simpson(y, nodes);
        const std::complex<double> coarse = simpson(y, nodes / 2);
        out.value.push_back(std::abs(fine));
        out.stderr_.push_back(std::abs(fine - coarse));
        out.samples.push_back(nodes + 1);
    }

    out.used.resize(ygrid.size());
    std::vector<double> weight(ygrid.size(), 0.0);
    std::vector<double> x, ly, w;
    for (std::size_t i = 0; i < ygrid.size(); ++i) {
        out.used[i] = out.stderr_[i] < 0.25 * out.value[i] && out.value[i] > 0.0;
        if (!out.used[i]) continue;
        const double se_rel = std::max(out.stderr_[i] / out.value[i], 1e-6);
        weight[i] = 1.0 / (se_rel * se_rel);
        x.push_back(std::log(1.0 / ygrid[i]));
        ly.push_back(std::log(out.value[i]));
        w.push_back(weight[i]);
    }
    if (x.size() >= 2) {
        const fit::SlopeFit sf = fit::fit_slope(x, ly, w);
        out.c = -sf.slope;
        // parametric interval from the weighted fit
        double sw = 0.0, swx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sw += w[i];
            swx += w[i] * x[i];
        }
        const double xbar = swx / sw;
        double sxx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        const double se_slope =
            sxx > 0.0 ? sf.residual * std::sqrt(double(x.size()) / std::max(1.0, double(x.size()) - 2.0) / sxx)
                      : 0.0;
        out.ci = {out.c - 1.96 * se_slope, out.c + 1.96 * se_slope};
    }
    return out;
}

}  // namespace horolab::equidist
