#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "horolab/poly.hpp"
#include "horolab/qmc.hpp"
#include "horolab/rng.hpp"

namespace horolab::submanifold {

// Graph parametrization phi(t) = (t, w(t)) of an m-dimensional submanifold of
// R^d, d = m + n, with polynomial w.  All derivatives are exact coefficient
// tables, cached on construction.
class PolyGraphMap {
public:
    PolyGraphMap(int m, int n, std::vector<poly::Poly> w);

    int m() const { return m_; }
    int n() const { return n_; }
    int d() const { return m_ + n_; }

    const poly::Poly& w(int r) const { return w_[static_cast<std::size_t>(r)]; }
    const poly::Poly& grad(int r, int i) const;
    const poly::Poly& hess(int r, int i, int j) const;

    std::vector<double> eval_graph(std::span<const double> t) const;
    // d x m, top m x m block is the identity
    poly::MatX jacobian(std::span<const double> t) const;
    // Hessian of t -> z.w(t), m x m symmetric, linear in z
    poly::MatX hessian_z(std::span<const double> z, std::span<const double> t) const;
    // Gram volume element sqrt(det(I + Dw^T Dw)) >= 1
    double gram(std::span<const double> t) const;

private:
    void check_t(std::span<const double> t) const;
    int m_, n_;
    std::vector<poly::Poly> w_;
    std::vector<poly::Poly> grad_;  // [r*m + i]
    std::vector<poly::Poly> hess_;  // [(r*m + i)*m + j]
};

// Probability measure on the graph: density on (-1,1)^m is a C_c^infty bump
// profile times an optional polynomial factor times the Gram volume element,
// normalized to total mass 1.
class SurfaceMeasure {
public:
    explicit SurfaceMeasure(PolyGraphMap map, poly::Poly factor = poly::Poly());

    const PolyGraphMap& map() const { return map_; }
    double normalization() const { return norm_; }
    double unnormalized_density(std::span<const double> t) const;
    double density(std::span<const double> t) const { return unnormalized_density(t) / norm_; }

private:
    PolyGraphMap map_;
    poly::Poly factor_;
    double norm_ = 1.0;
};

// beta^{-m} psi((phi(t) - x0)/beta) against a SurfaceMeasure; psi is the
// standard bump supported in the unit ball.  Because the top block of phi is
// the identity, the t-support is the box x0[0..m) +- beta clipped to (-1,1)^m.
class LocalizedMeasure {
public:
    LocalizedMeasure(const SurfaceMeasure& base, std::vector<double> x0, double beta);

    const SurfaceMeasure& base() const { return *base_; }
    const std::vector<double>& x0() const { return x0_; }
    double beta() const { return beta_; }
    double density(std::span<const double> t) const;
    // clipped t-support box; empty() if the window misses (-1,1)^m entirely
    const std::vector<double>& box_lo() const { return lo_; }
    const std::vector<double>& box_hi() const { return hi_; }
    bool empty() const { return empty_; }

private:
    const SurfaceMeasure* base_;
    std::vector<double> x0_;
    double beta_;
    std::vector<double> lo_, hi_;
    bool empty_ = false;
};

LocalizedMeasure localize(const SurfaceMeasure& mu, std::vector<double> x0, double beta);

struct QmcConfig {
    std::uint64_t seed = 0;
    std::int64_t samples = std::int64_t(1) << 20;  // total across replications
    int replications = 8;
};

using TestFunction = std::function<std::complex<double>(std::span<const double>)>;

qmc::EstimateC integrate_against(const SurfaceMeasure& mu, const TestFunction& f,
                                 const QmcConfig& cfg = {});
qmc::EstimateC integrate_against(const LocalizedMeasure& mu, const TestFunction& f,
                                 const QmcConfig& cfg = {});

// the fixed window psi(v) = exp(1 - 1/(1 - |v|^2)) on |v| < 1
double bump_window(double r2);

}  // namespace horolab::submanifold
