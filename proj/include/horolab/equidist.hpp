#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "horolab/fit.hpp"
#include "horolab/homspace.hpp"
#include "horolab/qmc.hpp"
#include "horolab/sl2.hpp"
#include "horolab/submanifold.hpp"

namespace horolab::equidist {

// one headline experiment: the a_y-translate of the submanifold measure,
// pushed to (SL2(R)/SL2(Z))^d through u_{phi(t)} x0, tested against f
struct TranslateExperiment {
    submanifold::SurfaceMeasure measure;  // phi maps into R^d = U+
    homspace::GElem x0;
    homspace::FactorizableTestFn testfn;
    std::vector<double> ygrid;  // strictly decreasing, in (0, 1]
    std::uint64_t seed = 0;
    std::int64_t base_samples = 256;        // N0 of the schedule
    std::int64_t max_samples = 1 << 22;     // schedule cap
    int replications = 8;
};

// N(y) = min(cap, N0 * ceil(1/y)^min(m,2)): the a_y flow expands each
// parameter direction by 1/y
std::int64_t sample_schedule(const TranslateExperiment& exp, double y);

// QMC average of f(a_y u_{phi(t)} x0) against the surface measure
qmc::Estimate translate_integral(const TranslateExperiment& exp, double y);

struct RateFit {
    std::vector<double> y;
    std::vector<double> value;    // D(y) or probe magnitude
    std::vector<double> stderr_;
    std::vector<std::int64_t> samples;
    std::vector<bool> used;       // stderr < 0.25 |value| gate
    double c = 0.0;               // decay exponent: log value fitted as -c log(1/y) + const
    fit::Interval ci;             // 95% interval for c
};

// D(y) = |translate_integral(y) - haar_integral_quotient(f)| with a weighted
// log-log fit and a bootstrap interval over the QMC replications
RateFit discrepancy_curve(const TranslateExperiment& exp);

struct MixingConfig {
    std::uint64_t seed = 0;
    std::int64_t samples = 1'000'000;
    int replications = 8;
};

// cov(f1(a(y) g), f2(g)) over Haar quotient samples, fitted against
// log ||a(y)|| = (1/2) log(1/y)
RateFit mixing_probe(const homspace::FactorizableTestFn& f1,
                     const homspace::FactorizableTestFn& f2, const std::vector<double>& ygrid,
                     const MixingConfig& cfg = {});

// compactly supported real bump on [center - halfwidth, center + halfwidth]
struct RealBump {
    double center = 0.0;
    double halfwidth = 1.0;
    double amplitude = 1.0;
    double operator()(double t) const;
};

struct HorocycleConfig {
    int points_per_unit = 16;             // x (1/y + |c| + 1) quadrature nodes
    std::int64_t max_nodes = 1 << 22;
};

// | integral of f0(a(y) u(t) x0) psi(t) e(ct) dt | per y, dense quadrature;
// f0 must be Gamma-invariant (e.g. an automorphized bump)
RateFit horocycle_character_probe(const std::function<double(const sl2::Mat2&)>& f0,
                                  const sl2::Mat2& x0, const RealBump& psi, double c,
                                  const std::vector<double>& ygrid,
                                  const HorocycleConfig& cfg = {});

}  // namespace horolab::equidist
