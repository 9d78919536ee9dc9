#include "horolab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "horolab/errors.hpp"
#include "horolab/fit.hpp"
#include "horolab/parallel.hpp"
#include "horolab/poly.hpp"
#include "horolab/rng.hpp"

namespace horolab::fourier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double image_diameter(const submanifold::PolyGraphMap& map, const std::vector<double>& lo,
                      const std::vector<double>& hi) {
    const int m = map.m(), d = map.d();
    const int P = 9;
    std::int64_t total = 1;
    for (int i = 0; i < m; ++i) total *= P;
    std::vector<double> cmin(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
    std::vector<double> cmax(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
    std::vector<double> t(static_cast<std::size_t>(m));
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rem = idx;
        for (int i = 0; i < m; ++i) {
            const int k = static_cast<int>(rem % P);
            rem /= P;
            t[static_cast<std::size_t>(i)] =
                lo[static_cast<std::size_t>(i)] +
                (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) * k / (P - 1);
        }
        const std::vector<double> x = map.eval_graph(t);
        for (int j = 0; j < d; ++j) {
            cmin[static_cast<std::size_t>(j)] = std::min(cmin[static_cast<std::size_t>(j)],
                                                         x[static_cast<std::size_t>(j)]);
            cmax[static_cast<std::size_t>(j)] = std::max(cmax[static_cast<std::size_t>(j)],
                                                         x[static_cast<std::size_t>(j)]);
        }
    }
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
        const double r = cmax[static_cast<std::size_t>(j)] - cmin[static_cast<std::size_t>(j)];
        s += r * r;
    }
    return std::sqrt(s);
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::int64_t required_samples(const MeasureView& mu, double xi_norm, const FourierConfig& cfg) {
    // linear in the oscillation count: the Cranley-Patterson replications keep
    // the estimate unbiased with an honest stderr, so resolution (not bias)
    // sets the budget; a per-dimension power here would be unusable at high K
    const double need =
        std::max(double(cfg.base_samples) * (1.0 + xi_norm * mu.image_diam),
                 double(cfg.floor_samples));
    if (need > double(cfg.max_samples))
        throw ResourceError("measure_fourier: oscillation sample budget exceeded");
    return static_cast<std::int64_t>(need);
}

}  // namespace

MeasureView view(const submanifold::SurfaceMeasure& mu) {
    MeasureView v;
    v.map = &mu.map();
    v.density = [&mu](std::span<const double> t) { return mu.density(t); };
    v.lo.assign(static_cast<std::size_t>(mu.map().m()), -1.0);
    v.hi.assign(static_cast<std::size_t>(mu.map().m()), 1.0);
    v.image_diam = image_diameter(mu.map(), v.lo, v.hi);
    return v;
}

MeasureView view(const submanifold::LocalizedMeasure& mu) {
    MeasureView v;
    v.map = &mu.base().map();
    v.density = [&mu](std::span<const double> t) { return mu.density(t); };
    v.lo = mu.box_lo();
    v.hi = mu.box_hi();
    if (mu.empty()) {
        v.density = [](std::span<const double>) { return 0.0; };
        v.lo.assign(static_cast<std::size_t>(v.map->m()), 0.0);
        v.hi.assign(static_cast<std::size_t>(v.map->m()), 1e-6);
    }
    v.image_diam = image_diameter(*v.map, v.lo, v.hi);
    return v;
}

std::vector<qmc::EstimateC> fourier_batch(const MeasureView& mu,
                                          const std::vector<std::vector<double>>& xis,
                                          const FourierConfig& cfg) {
    const int m = mu.m(), d = mu.dim();
    const std::size_t nxi = xis.size();
    if (nxi == 0) return {};
    for (const auto& xi : xis)
        if (static_cast<int>(xi.size()) != d)
            throw std::domain_error("fourier_batch: frequency dimension mismatch");
    if (cfg.replications < 1) throw std::domain_error("fourier_batch: replications must be >= 1");

    double vol = 1.0;
    for (int i = 0; i < m; ++i)
        vol *= mu.hi[static_cast<std::size_t>(i)] - mu.lo[static_cast<std::size_t>(i)];

    // per-frequency per-replication sample counts; frequency k consumes the
    // first n[k] points so the batch agrees with standalone evaluation
    std::vector<std::int64_t> n(nxi);
    std::int64_t nmax = 0;
    for (std::size_t k = 0; k < nxi; ++k) {
        n[k] = (required_samples(mu, norm2(xis[k]), cfg) + cfg.replications - 1) / cfg.replications;
        nmax = std::max(nmax, n[k]);
    }

    qmc::Halton halton(m, rng::Stream(cfg.seed, "fourier.qmc"), cfg.replications);

    struct CVec {
        std::vector<std::complex<double>> v;
        CVec& operator+=(const CVec& o) {
            if (v.empty()) v = o.v;
            else
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
            return *this;
        }
    };

    std::vector<std::vector<std::complex<double>>> rep_means(
        static_cast<std::size_t>(cfg.replications));
    for (int r = 0; r < cfg.replications; ++r) {
        const CVec acc = par::chunked_sum<CVec>(
            nmax,
            [&](std::int64_t i) {
                CVec out;
                out.v.assign(nxi, {0.0, 0.0});
                std::vector<double> t(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k)
                    t[static_cast<std::size_t>(k)] =
                        mu.lo[static_cast<std::size_t>(k)] +
                        (mu.hi[static_cast<std::size_t>(k)] - mu.lo[static_cast<std::size_t>(k)]) *
                            halton.coord(r, static_cast<std::uint64_t>(i), k);
                const double rho = mu.density(t);
                if (rho == 0.0) return out;
                const std::vector<double> x = mu.map->eval_graph(t);
                for (std::size_t k = 0; k < nxi; ++k) {
                    if (i >= n[k]) continue;
                    double phase = 0.0;
                    for (int j = 0; j < d; ++j)
                        phase += xis[k][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                    phase *= -kTwoPi;
                    out.v[k] = rho * std::complex<double>(std::cos(phase), std::sin(phase));
                }
                return out;
            },
            /*chunk=*/1 << 10);
        rep_means[static_cast<std::size_t>(r)].resize(nxi);
        for (std::size_t k = 0; k < nxi; ++k)
            rep_means[static_cast<std::size_t>(r)][k] = vol * acc.v[k] / double(n[k]);
    }

    std::vector<qmc::EstimateC> out(nxi);
    std::vector<std::complex<double>> means(static_cast<std::size_t>(cfg.replications));
    for (std::size_t k = 0; k < nxi; ++k) {
        for (int r = 0; r < cfg.replications; ++r)
            means[static_cast<std::size_t>(r)] = rep_means[static_cast<std::size_t>(r)][k];
        out[k] = qmc::combine(means);
    }
    return out;
}

qmc::EstimateC measure_fourier(const MeasureView& mu, std::span<const double> xi,
                               const FourierConfig& cfg) {
    return fourier_batch(mu, {std::vector<double>(xi.begin(), xi.end())}, cfg).front();
}

qmc::EstimateC measure_fourier(const submanifold::SurfaceMeasure& mu, std::span<const double> xi,
                               const FourierConfig& cfg) {
    return measure_fourier(view(mu), xi, cfg);
}

qmc::EstimateC measure_fourier(const submanifold::LocalizedMeasure& mu,
                               std::span<const double> xi, const FourierConfig& cfg) {
    return measure_fourier(view(mu), xi, cfg);
}

namespace {

void validate_dyadic(const std::vector<double>& K, std::size_t min_points) {
    if (K.size() < min_points) throw std::domain_error("decay fit: need at least 5 dyadic K");
    for (std::size_t i = 1; i < K.size(); ++i) {
        if (!(K[i] > K[i - 1])) throw std::domain_error("decay fit: K grid must increase");
        if (std::abs(K[i] / K[i - 1] - 2.0) > 1e-9)
            throw std::domain_error("decay fit: K grid must be dyadic");
    }
}

}  // namespace

DecayFit l2_shell_decay(const submanifold::LocalizedMeasure& mu, const std::vector<double>& Kgrid,
                        int shell_samples, const FourierConfig& cfg) {
    validate_dyadic(Kgrid, 5);
    if (shell_samples < 8) throw std::domain_error("l2_shell_decay: too few shell samples");
    const MeasureView mv = view(mu);
    const int d = mv.dim();

    // fixed shell directions shared across K
    rng::Stream s(cfg.seed, "fourier.shell");
    std::vector<std::vector<double>> shell(static_cast<std::size_t>(shell_samples));
    for (int k = 0; k < shell_samples; ++k) {
        std::vector<double> xi(static_cast<std::size_t>(d));
        double nn = 0.0;
        for (int j = 0; j < d; ++j) {
            xi[static_cast<std::size_t>(j)] =
                rng::normal(s, static_cast<std::uint64_t>(k), static_cast<std::uint32_t>(j));
            nn += xi[static_cast<std::size_t>(j)] * xi[static_cast<std::size_t>(j)];
        }
        nn = std::sqrt(nn);
        const double u = s.uniform(static_cast<std::uint64_t>(k), 100);
        const double r = std::pow(1.0 + u * (std::pow(2.0, d) - 1.0), 1.0 / d);
        for (double& v : xi) v *= r / nn;
        shell[static_cast<std::size_t>(k)] = std::move(xi);
    }
    // volume of the shell 1 <= |xi| <= 2
    const double ball1 = std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
    const double shell_vol = (std::pow(2.0, d) - 1.0) * ball1;

    DecayFit fit;
    for (double K : Kgrid) {
        std::vector<std::vector<double>> xis = shell;
        for (auto& xi : xis)
            for (double& v : xi) v *= K;
        const auto est = fourier_batch(mv, xis, cfg);
        double mean2 = 0.0, mean4 = 0.0;
        for (const auto& e : est) {
            // E|est|^2 = |FT|^2 + Var(est): subtract the replication variance
            // so the norm does not flatten at the sampling noise floor
            const double a2 = std::max(0.0, std::norm(e.value) - e.stderr_ * e.stderr_);
            mean2 += a2;
            mean4 += a2 * a2;
        }
        mean2 /= shell_samples;
        mean4 /= shell_samples;
        const double se2 = std::sqrt(std::max(0.0, mean4 - mean2 * mean2) / shell_samples);
        const double norm = std::sqrt(shell_vol * mean2);
        fit.K.push_back(K);
        fit.value.push_back(norm);
        fit.stderr_.push_back(norm > 0.0 ? shell_vol * se2 / (2.0 * norm) : 0.0);
    }
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < fit.K.size(); ++i) {
        lx.push_back(std::log(fit.K[i]));
        ly.push_back(std::log(std::max(fit.value[i], 1e-300)));
    }
    const fit::SlopeFit sf = fit::fit_slope(lx, ly);
    fit.slope = sf.slope;
    fit.residual = sf.residual;
    return fit;
}

DecayFit stationary_scaling(const submanifold::LocalizedMeasure& mu,
                            const std::vector<double>& direction, const std::vector<double>& Kgrid,
                            const FourierConfig& cfg) {
    validate_dyadic(Kgrid, 5);
    const MeasureView mv = view(mu);
    const int d = mv.dim(), m = mv.m();
    if (static_cast<int>(direction.size()) != d)
        throw std::domain_error("stationary_scaling: direction dimension mismatch");
    std::vector<double> dir = direction;
    const double dn = norm2(dir);
    if (!(dn > 0.0)) throw std::domain_error("stationary_scaling: zero direction");
    for (double& v : dir) v /= dn;

    // angle to the normal space at the box center via the tangential component
    std::vector<double> tc(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        tc[static_cast<std::size_t>(i)] =
            0.5 * (mv.lo[static_cast<std::size_t>(i)] + mv.hi[static_cast<std::size_t>(i)]);
    poly::MatX J = mv.map->jacobian(tc);
    // Gram-Schmidt on the tangent columns
    std::vector<std::vector<double>> basis;
    for (int c = 0; c < m; ++c) {
        std::vector<double> v(static_cast<std::size_t>(d));
        for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] = J(r, c);
        for (const auto& b : basis) {
            double dot = 0.0;
            for (int r = 0; r < d; ++r)
                dot += v[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(r)];
            for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= dot * b[static_cast<std::size_t>(r)];
        }
        const double vn = norm2(v);
        if (vn > 1e-12) {
            for (double& x : v) x /= vn;
            basis.push_back(std::move(v));
        }
    }
    double tan2 = 0.0;
    for (const auto& b : basis) {
        double dot = 0.0;
        for (int r = 0; r < d; ++r) dot += dir[static_cast<std::size_t>(r)] * b[static_cast<std::size_t>(r)];
        tan2 += dot * dot;
    }
    DecayFit fit;
    fit.normal_aligned = std::asin(std::min(1.0, std::sqrt(tan2))) <= 0.2;

    std::vector<std::vector<double>> xis;
    for (double K : Kgrid) {
        std::vector<double> xi = dir;
        for (double& v : xi) v *= K;
        xis.push_back(std::move(xi));
    }
    const auto est = fourier_batch(mv, xis, cfg);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < Kgrid.size(); ++i) {
        fit.K.push_back(Kgrid[i]);
        fit.value.push_back(std::abs(est[i].value));
        fit.stderr_.push_back(est[i].stderr_);
        lx.push_back(std::log(Kgrid[i]));
        ly.push_back(std::log(std::max(std::abs(est[i].value), 1e-300)));
    }
    const fit::SlopeFit sf = fit::fit_slope(lx, ly);
    fit.slope = sf.slope;
    fit.residual = sf.residual;
    return fit;
}

double eta_profile(double r) {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const auto B = [](double s) { return std::exp(-1.0 / s); };
    return B(2.0 - r) / (B(2.0 - r) + B(r - 1.0));
}

FrequencyTestFn gaussian_wave(std::vector<double> center, double sigma,
                              std::vector<double> omega) {
    if (center.size() != omega.size() || !(sigma > 0.0))
        throw std::domain_error("gaussian_wave: bad parameters");
    const int d = static_cast<int>(center.size());
    FrequencyTestFn f;
    f.omega = omega;
    f.direct = [center, sigma, omega](std::span<const double> x) {
        double q = 0.0, ph = 0.0;
        for (std::size_t i = 0; i < center.size(); ++i) {
            const double u = x[i] - center[i];
            q += u * u;
            ph += omega[i] * x[i];
        }
        return std::exp(-q / (2.0 * sigma * sigma)) *
               std::complex<double>(std::cos(kTwoPi * ph), std::sin(kTwoPi * ph));
    };
    f.ft = [center, sigma, omega](std::span<const double> xi) {
        std::complex<double> v{1.0, 0.0};
        for (std::size_t i = 0; i < center.size(); ++i) {
            const double u = xi[i] - omega[i];
            const double amp = sigma * std::sqrt(kTwoPi) * std::exp(-2.0 * std::numbers::pi *
                                                                    std::numbers::pi * sigma *
                                                                    sigma * u * u);
            const double ph = -kTwoPi * u * center[i];
            v *= amp * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return v;
    };
    // erfc(x) <= exp(-x^2): per-dimension tail of |ft| is erfc(pi sigma sqrt2 L)
    f.tail_halfwidth = [sigma, d](double tol) {
        const double x = std::sqrt(std::log(std::max(4.0, double(d) / tol)));
        return x / (std::sqrt(2.0) * std::numbers::pi * sigma);
    };
    return f;
}

namespace {

double bump_psi(double v) { return v * v < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - v * v)) : 0.0; }

// 1-D transform of the standard bump: psi_hat(u) = int psi(v) cos(2 pi u v) dv
double bump_psi_ft(double u) {
    u = std::abs(u);
    const int N = std::max(128, 2 * static_cast<int>(16.0 * (1.0 + u)));
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double v = -1.0 + 2.0 * i / N;
        const double w = (i == 0 || i == N) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * bump_psi(v) * std::cos(kTwoPi * u * v);
    }
    return acc * (2.0 / N) / 3.0;
}

// tail integral of |psi_hat| from x to infinity, tabulated once
double bump_ft_tail(double x) {
    constexpr double kStep = 0.25;
    constexpr int kLen = 1600;  // out to u = 400; beyond that the tail is ~0
    static const std::vector<double> table = [] {
        std::vector<double> cell(kLen);
        par::for_each_chunk(kLen, [&](std::int64_t i) {
            // midpoint value of |psi_hat| on [i*step, (i+1)*step]
            cell[static_cast<std::size_t>(i)] =
                std::abs(bump_psi_ft((double(i) + 0.5) * kStep)) * kStep;
        });
        std::vector<double> tail(kLen + 1, 0.0);
        for (int i = kLen - 1; i >= 0; --i)
            tail[static_cast<std::size_t>(i)] =
                tail[static_cast<std::size_t>(i + 1)] + cell[static_cast<std::size_t>(i)];
        return tail;
    }();
    if (x <= 0.0) return 2.0 * table[0];
    const std::size_t idx = static_cast<std::size_t>(x / kStep);
    if (idx >= table.size() - 1) return 0.0;
    return 2.0 * table[idx];  // both tails
}

}  // namespace

FrequencyTestFn bump_wave(std::vector<double> center, double scale, std::vector<double> omega) {
    if (center.size() != omega.size() || !(scale > 0.0))
        throw std::domain_error("bump_wave: bad parameters");
    const int d = static_cast<int>(center.size());
    FrequencyTestFn f;
    f.omega = omega;
    f.direct = [center, scale, omega](std::span<const double> x) {
        double amp = 1.0, ph = 0.0;
        for (std::size_t i = 0; i < center.size(); ++i) {
            amp *= bump_psi((x[i] - center[i]) / scale);
            ph += omega[i] * x[i];
        }
        return amp * std::complex<double>(std::cos(kTwoPi * ph), std::sin(kTwoPi * ph));
    };
    f.ft = [center, scale, omega](std::span<const double> xi) {
        std::complex<double> v{1.0, 0.0};
        for (std::size_t i = 0; i < center.size(); ++i) {
            const double u = xi[i] - omega[i];
            const double amp = scale * bump_psi_ft(scale * u);
            const double ph = -kTwoPi * u * center[i];
            v *= amp * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return v;
    };
    f.tail_halfwidth = [scale, d](double tol) {
        // find x with the tabulated tail of |psi_hat| below tol/d, then unscale
        double x = 0.0;
        while (bump_ft_tail(x) > tol / d) {
            x += 0.25;
            if (x > 400.0) throw ResourceError("bump_wave: truncation tolerance unreachable");
        }
        return x / scale;
    };
    return f;
}

SplitResult split_eval(const MeasureView& mu, const FrequencyTestFn& f,
                       const FrequencySplit& split, const SplitConfig& cfg) {
    const int d = mu.dim();
    if (static_cast<int>(f.omega.size()) != d)
        throw std::domain_error("split_eval: test-function dimension mismatch");
    if (!(split.rho > 0.0 && split.rho < 1.0 && split.T > 1.0))
        throw std::domain_error("split_eval: need 0 < rho < 1 < T");

    // measure mass bounds |conj(FT_mu)| on the discarded tail
    const double mass =
        std::abs(measure_fourier(mu, std::vector<double>(static_cast<std::size_t>(d), 0.0),
                                 cfg.fourier)
                     .value);
    const double tail_tol = cfg.tail_tol / std::max(mass, 1e-9);
    const double L = f.tail_halfwidth(tail_tol);
    if (L > 1e4) throw ResourceError("split_eval: truncation box too large");

    const int P = cfg.grid_per_dim;
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= P;
    const double h = 2.0 * L / P;
    std::vector<std::vector<double>> xis(static_cast<std::size_t>(total));
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::vector<double> xi(static_cast<std::size_t>(d));
        std::int64_t rem = idx;
        for (int i = 0; i < d; ++i) {
            const int k = static_cast<int>(rem % P);
            rem /= P;
            xi[static_cast<std::size_t>(i)] =
                f.omega[static_cast<std::size_t>(i)] - L + (k + 0.5) * h;
        }
        xis[static_cast<std::size_t>(idx)] = std::move(xi);
    }
    const auto ft_mu = fourier_batch(mu, xis, cfg.fourier);

    SplitResult out;
    double w = 1.0;
    for (int i = 0; i < d; ++i) w *= h;
    for (std::size_t k = 0; k < xis.size(); ++k) {
        const std::complex<double> term =
            w * f.ft(xis[k]) * std::conj(ft_mu[k].value);
        const double r = norm2(xis[k]);
        out.low += term * split.eta_low(r);
        out.mid += term * split.eta_mid(r);
        out.high += term * split.eta_high(r);
    }
    out.truncation_residual = cfg.tail_tol;
    return out;
}

}  // namespace horolab::fourier
