#include "horolab/submanifold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horolab/parallel.hpp"

namespace horolab::submanifold {

namespace {

constexpr double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

// tensor Gauss-Legendre over [-1,1]^m, P panels per axis
double tensor_integrate(int m, int P, const std::function<double(std::span<const double>)>& F) {
    std::int64_t panels = 1;
    for (int i = 0; i < m; ++i) panels *= P;
    const double h = 2.0 / P;
    return par::chunked_sum<double>(panels, [&](std::int64_t idx) {
        std::vector<int> cell(static_cast<std::size_t>(m));
        std::int64_t rem = idx;
        for (int i = m - 1; i >= 0; --i) {
            cell[static_cast<std::size_t>(i)] = static_cast<int>(rem % P);
            rem /= P;
        }
        // iterate the 8^m node grid inside this panel
        std::int64_t nodes = 1;
        for (int i = 0; i < m; ++i) nodes *= 8;
        std::vector<double> t(static_cast<std::size_t>(m));
        double acc = 0.0;
        for (std::int64_t q = 0; q < nodes; ++q) {
            std::int64_t qr = q;
            double wgt = 1.0;
            for (int i = m - 1; i >= 0; --i) {
                const int j = static_cast<int>(qr % 8);
                qr /= 8;
                const double lo = -1.0 + cell[static_cast<std::size_t>(i)] * h;
                t[static_cast<std::size_t>(i)] = lo + 0.5 * h * (1.0 + kGlNode[j]);
                wgt *= 0.5 * h * kGlWeight[j];
            }
            acc += wgt * F(t);
        }
        return acc;
    }, /*chunk=*/8);
}

int norm_panels(int m) {
    switch (m) {
        case 1: return 256;
        case 2: return 48;
        case 3: return 14;
        default: return 6;
    }
}

// C_c^infty profile on (-1,1): exp(1 - 1/(1-s^2))
double profile1(double s) {
    const double s2 = s * s;
    return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0;
}

}  // namespace

double bump_window(double r2) { return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0; }

PolyGraphMap::PolyGraphMap(int m, int n, std::vector<poly::Poly> w)
    : m_(m), n_(n), w_(std::move(w)) {
    if (m_ < 1 || n_ < 1) throw std::domain_error("PolyGraphMap: m, n must be >= 1");
    if (static_cast<int>(w_.size()) != n_)
        throw std::domain_error("PolyGraphMap: need one polynomial per codimension");
    for (const poly::Poly& p : w_)
        if (p.vars() != m_ && !p.is_zero())
            throw std::domain_error("PolyGraphMap: polynomial arity mismatch");
    grad_.reserve(static_cast<std::size_t>(n_) * m_);
    hess_.reserve(static_cast<std::size_t>(n_) * m_ * m_);
    for (int r = 0; r < n_; ++r)
        for (int i = 0; i < m_; ++i) grad_.push_back(w_[static_cast<std::size_t>(r)].partial(i));
    for (int r = 0; r < n_; ++r)
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) hess_.push_back(grad(r, i).partial(j));
}

const poly::Poly& PolyGraphMap::grad(int r, int i) const {
    return grad_[static_cast<std::size_t>(r) * m_ + i];
}

const poly::Poly& PolyGraphMap::hess(int r, int i, int j) const {
    return hess_[(static_cast<std::size_t>(r) * m_ + i) * m_ + j];
}

void PolyGraphMap::check_t(std::span<const double> t) const {
    if (static_cast<int>(t.size()) != m_)
        throw std::domain_error("PolyGraphMap: parameter dimension mismatch");
}

std::vector<double> PolyGraphMap::eval_graph(std::span<const double> t) const {
    check_t(t);
    std::vector<double> x(t.begin(), t.end());
    x.resize(static_cast<std::size_t>(d()));
    for (int r = 0; r < n_; ++r)
        x[static_cast<std::size_t>(m_ + r)] = w_[static_cast<std::size_t>(r)].eval(t);
    return x;
}

poly::MatX PolyGraphMap::jacobian(std::span<const double> t) const {
    check_t(t);
    poly::MatX J(d(), m_);
    for (int i = 0; i < m_; ++i) J(i, i) = 1.0;
    for (int r = 0; r < n_; ++r)
        for (int i = 0; i < m_; ++i) J(m_ + r, i) = grad(r, i).eval(t);
    return J;
}

poly::MatX PolyGraphMap::hessian_z(std::span<const double> z, std::span<const double> t) const {
    check_t(t);
    if (static_cast<int>(z.size()) != n_)
        throw std::domain_error("PolyGraphMap: z dimension mismatch");
    poly::MatX H(m_, m_);
    for (int r = 0; r < n_; ++r) {
        const double zr = z[static_cast<std::size_t>(r)];
        if (zr == 0.0) continue;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) H(i, j) += zr * hess(r, i, j).eval(t);
    }
    // symmetrize away roundoff from the two evaluation orders
    for (int i = 0; i < m_; ++i)
        for (int j = i + 1; j < m_; ++j) {
            const double v = 0.5 * (H(i, j) + H(j, i));
            H(i, j) = H(j, i) = v;
        }
    return H;
}

double PolyGraphMap::gram(std::span<const double> t) const {
    check_t(t);
    poly::MatX G = poly::MatX::identity(m_);
    std::vector<double> dw(static_cast<std::size_t>(m_));
    for (int r = 0; r < n_; ++r) {
        for (int i = 0; i < m_; ++i) dw[static_cast<std::size_t>(i)] = grad(r, i).eval(t);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                G(i, j) += dw[static_cast<std::size_t>(i)] * dw[static_cast<std::size_t>(j)];
    }
    return std::sqrt(poly::det(G));
}

SurfaceMeasure::SurfaceMeasure(PolyGraphMap map, poly::Poly factor)
    : map_(std::move(map)), factor_(std::move(factor)) {
    if (!factor_.is_zero() && factor_.vars() != map_.m())
        throw std::domain_error("SurfaceMeasure: factor arity mismatch");
    norm_ = tensor_integrate(map_.m(), norm_panels(map_.m()),
                             [this](std::span<const double> t) { return unnormalized_density(t); });
    if (!(norm_ > 0.0)) throw std::domain_error("SurfaceMeasure: density has no mass");
}

double SurfaceMeasure::unnormalized_density(std::span<const double> t) const {
    double v = 1.0;
    for (double ti : t) {
        v *= profile1(ti);
        if (v == 0.0) return 0.0;
    }
    if (!factor_.is_zero()) {
        const double f = factor_.eval(t);
        if (f < 0.0) throw std::domain_error("SurfaceMeasure: density factor went negative");
        v *= f;
    }
    return v * map_.gram(t);
}

LocalizedMeasure::LocalizedMeasure(const SurfaceMeasure& base, std::vector<double> x0, double beta)
    : base_(&base), x0_(std::move(x0)), beta_(beta) {
    if (!(beta > 0.0 && beta <= 0.5))
        throw std::domain_error("LocalizedMeasure: beta must lie in (0, 1/2]");
    const int m = base.map().m();
    if (static_cast<int>(x0_.size()) != base.map().d())
        throw std::domain_error("LocalizedMeasure: x0 dimension mismatch");
    lo_.resize(static_cast<std::size_t>(m));
    hi_.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        lo_[static_cast<std::size_t>(i)] = std::max(-1.0, x0_[static_cast<std::size_t>(i)] - beta_);
        hi_[static_cast<std::size_t>(i)] = std::min(1.0, x0_[static_cast<std::size_t>(i)] + beta_);
        if (!(lo_[static_cast<std::size_t>(i)] < hi_[static_cast<std::size_t>(i)])) empty_ = true;
    }
}

double LocalizedMeasure::density(std::span<const double> t) const {
    const int m = base_->map().m();
    const std::vector<double> x = base_->map().eval_graph(t);
    double r2 = 0.0;
    for (int j = 0; j < base_->map().d(); ++j) {
        const double v = (x[static_cast<std::size_t>(j)] - x0_[static_cast<std::size_t>(j)]) / beta_;
        r2 += v * v;
        if (r2 >= 1.0) return 0.0;
    }
    return base_->density(t) * std::pow(beta_, -m) * bump_window(r2);
}

LocalizedMeasure localize(const SurfaceMeasure& mu, std::vector<double> x0, double beta) {
    return LocalizedMeasure(mu, std::move(x0), beta);
}

namespace {

// QMC estimate of integral over the box [lo, hi]^m of f(phi(t)) * density(t)
qmc::EstimateC qmc_integrate(const PolyGraphMap& map, const std::vector<double>& lo,
                             const std::vector<double>& hi,
                             const std::function<double(std::span<const double>)>& density,
                             const TestFunction& f, const QmcConfig& cfg) {
    const int m = map.m();
    double vol = 1.0;
    for (int i = 0; i < m; ++i) vol *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
    if (cfg.replications < 1 || cfg.samples < cfg.replications)
        throw std::domain_error("integrate_against: bad sampler config");
    const std::int64_t per_rep = cfg.samples / cfg.replications;
    qmc::Halton halton(m, rng::Stream(cfg.seed, "submanifold.qmc"), cfg.replications);
    std::vector<std::complex<double>> means(static_cast<std::size_t>(cfg.replications));
    for (int r = 0; r < cfg.replications; ++r) {
        const std::complex<double> sum = par::chunked_sum<std::complex<double>>(
            per_rep, [&](std::int64_t i) {
                std::vector<double> t(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k)
                    t[static_cast<std::size_t>(k)] =
                        lo[static_cast<std::size_t>(k)] +
                        (hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)]) *
                            halton.coord(r, static_cast<std::uint64_t>(i), k);
                const double rho = density(t);
                if (rho == 0.0) return std::complex<double>{};
                return rho * f(map.eval_graph(t));
            });
        means[static_cast<std::size_t>(r)] = vol * sum / double(per_rep);
    }
    return qmc::combine(means);
}

}  // namespace

qmc::EstimateC integrate_against(const SurfaceMeasure& mu, const TestFunction& f,
                                 const QmcConfig& cfg) {
    const int m = mu.map().m();
    const std::vector<double> lo(static_cast<std::size_t>(m), -1.0);
    const std::vector<double> hi(static_cast<std::size_t>(m), 1.0);
    return qmc_integrate(mu.map(), lo, hi,
                         [&](std::span<const double> t) { return mu.density(t); }, f, cfg);
}

qmc::EstimateC integrate_against(const LocalizedMeasure& mu, const TestFunction& f,
                                 const QmcConfig& cfg) {
    if (mu.empty()) return qmc::EstimateC{};
    return qmc_integrate(mu.base().map(), mu.box_lo(), mu.box_hi(),
                         [&](std::span<const double> t) { return mu.density(t); }, f, cfg);
}

}  // namespace horolab::submanifold
