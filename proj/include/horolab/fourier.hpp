#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "horolab/qmc.hpp"
#include "horolab/submanifold.hpp"

namespace horolab::fourier {

// uniform adapter over surface / localized measures: density on a t-box plus
// the graph map, with the image diameter cached for oscillation budgeting
struct MeasureView {
    const submanifold::PolyGraphMap* map = nullptr;
    std::function<double(std::span<const double>)> density;
    std::vector<double> lo, hi;  // t sampling box
    double image_diam = 0.0;     // diameter of phi(box) in R^d
    int m() const { return map->m(); }
    int dim() const { return map->d(); }
};

MeasureView view(const submanifold::SurfaceMeasure& mu);
MeasureView view(const submanifold::LocalizedMeasure& mu);

struct FourierConfig {
    std::uint64_t seed = 0;
    std::int64_t base_samples = 64;          // N(xi) >= base * (1 + |xi| diam)
    std::int64_t floor_samples = std::int64_t(1) << 14;  // accuracy floor at low |xi|
    std::int64_t max_samples = std::int64_t(1) << 23;    // per-frequency budget
    int replications = 8;
};

// FT_mu(xi) = integral of e(-xi . phi(t)) density(t) dt, e(s) = exp(2 pi i s)
qmc::EstimateC measure_fourier(const MeasureView& mu, std::span<const double> xi,
                               const FourierConfig& cfg = {});
qmc::EstimateC measure_fourier(const submanifold::SurfaceMeasure& mu, std::span<const double> xi,
                               const FourierConfig& cfg = {});
qmc::EstimateC measure_fourier(const submanifold::LocalizedMeasure& mu, std::span<const double> xi,
                               const FourierConfig& cfg = {});

// many frequencies off one QMC sweep; frequency k uses the first N(xi_k)
// points of the sequence, so each estimate matches a standalone evaluation
std::vector<qmc::EstimateC> fourier_batch(const MeasureView& mu,
                                          const std::vector<std::vector<double>>& xis,
                                          const FourierConfig& cfg = {});

struct DecayFit {
    std::vector<double> K;
    std::vector<double> value;    // L2 shell norm or |FT| magnitude per K
    std::vector<double> stderr_;
    double slope = 0.0;
    double residual = 0.0;
    bool normal_aligned = true;  // stationary_scaling only
};

// L2 norm of xi -> FT(K xi) over the shell 1 <= |xi| <= 2, per dyadic K
DecayFit l2_shell_decay(const submanifold::LocalizedMeasure& mu, const std::vector<double>& Kgrid,
                        int shell_samples, const FourierConfig& cfg = {});

// |FT(K direction)| vs K; normal_aligned reports whether the direction is
// within 0.2 rad of the normal space at the localization center
DecayFit stationary_scaling(const submanifold::LocalizedMeasure& mu,
                            const std::vector<double>& direction, const std::vector<double>& Kgrid,
                            const FourierConfig& cfg = {});

// smooth radial cutoff: 1 on r <= 1, 0 on r >= 2
double eta_profile(double r);

struct FrequencySplit {
    double rho = 0.25;  // low cutoff at rho T
    double T = 8.0;

    double eta_low(double r) const { return eta_profile(r / (rho * T)); }
    double eta_mid(double r) const { return eta_profile(r / T) - eta_profile(r / (rho * T)); }
    double eta_high(double r) const { return 1.0 - eta_profile(r / T); }
};

// test function given with a closed-form (or precomputed) frequency side
struct FrequencyTestFn {
    submanifold::TestFunction direct;
    std::function<std::complex<double>(std::span<const double>)> ft;
    std::vector<double> omega;  // modulation frequency: FT concentrates here
    // L with integral of |ft| outside the box omega +- L below tol
    std::function<double(double)> tail_halfwidth;
};

// f(x) = e(omega.x) prod_i exp(-(x_i - c_i)^2 / (2 sigma^2))
FrequencyTestFn gaussian_wave(std::vector<double> center, double sigma,
                              std::vector<double> omega);
// f(x) = e(omega.x) prod_i psi((x_i - c_i)/s), psi the standard bump
FrequencyTestFn bump_wave(std::vector<double> center, double scale, std::vector<double> omega);

struct SplitResult {
    std::complex<double> low{0.0, 0.0};
    std::complex<double> mid{0.0, 0.0};
    std::complex<double> high{0.0, 0.0};
    double truncation_residual = 0.0;
};

struct SplitConfig {
    FourierConfig fourier;
    int grid_per_dim = 24;      // frequency tensor-grid resolution
    double tail_tol = 1e-4;     // truncation residual bound -> ResourceError
};

// mu*(f) split by frequency: integral of ft_f(xi) conj(FT_mu(xi)) eta_*(|xi|)
// over a truncated frequency box around omega
SplitResult split_eval(const MeasureView& mu, const FrequencyTestFn& f,
                       const FrequencySplit& split, const SplitConfig& cfg = {});

}  // namespace horolab::fourier
