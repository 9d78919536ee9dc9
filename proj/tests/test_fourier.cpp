#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "horolab/errors.hpp"
#include "horolab/fourier.hpp"
#include "horolab/poly.hpp"
#include "horolab/rng.hpp"
#include "horolab/submanifold.hpp"

using namespace horolab;
using poly::Poly;
using submanifold::PolyGraphMap;
using submanifold::SurfaceMeasure;

namespace {

SurfaceMeasure parabola_measure() {
    return SurfaceMeasure(PolyGraphMap(1, 1, {Poly::monomial(1, {2}, 1.0)}));
}

SurfaceMeasure paraboloid_measure() {
    Poly w = Poly::monomial(2, {2, 0}, 1.0);
    w += Poly::monomial(2, {0, 2}, 1.0);
    return SurfaceMeasure(PolyGraphMap(2, 1, {w}));
}

// dense trapezoid oracle for the parabola transform
std::complex<double> parabola_ft_oracle(const SurfaceMeasure& mu, double xi0, double xi1,
                                        int N = 1'000'000) {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i <= N; ++i) {
        const double t = -1.0 + 2.0 * i / N;
        const double w = (i == 0 || i == N) ? 0.5 : 1.0;
        const double ph = -2.0 * std::numbers::pi * (xi0 * t + xi1 * t * t);
        acc += w * mu.density(std::vector<double>{t}) *
               std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc * (2.0 / N);
}

}  // namespace

TEST_CASE("zero frequency recovers the total mass") {
    const SurfaceMeasure mu = parabola_measure();
    fourier::FourierConfig cfg;
    cfg.seed = 5;
    const auto v = fourier::measure_fourier(mu, std::vector<double>{0.0, 0.0}, cfg);
    CHECK(std::abs(v.value - 1.0) < 1e-3);
    CHECK(std::abs(v.value - 1.0) < 3.0 * v.stderr_ + 1e-6);

    const auto loc = submanifold::localize(mu, {0.0, 0.0}, 0.4);
    const auto vm = fourier::measure_fourier(loc, std::vector<double>{0.0, 0.0}, cfg);
    submanifold::QmcConfig qcfg;
    qcfg.seed = 9;
    const auto mass = submanifold::integrate_against(
        loc, [](std::span<const double>) { return std::complex<double>{1.0, 0.0}; }, qcfg);
    CHECK(std::abs(vm.value - mass.value) < 3.0 * (vm.stderr_ + mass.stderr_) + 1e-6);
}

TEST_CASE("even measure: real transform, conjugate symmetry, mass bound") {
    const SurfaceMeasure mu = parabola_measure();
    fourier::FourierConfig cfg;
    cfg.seed = 5;
    // the phase is odd in t when xi only meets the linear coordinate
    const std::vector<double> xi{8.0, 0.0};
    const auto v = fourier::measure_fourier(mu, xi, cfg);
    CHECK(std::abs(v.value.imag()) < 3.0 * v.stderr_ + 1e-6);

    rng::Stream s(31, "fourier.massbound");
    for (std::uint64_t k = 0; k < 20; ++k) {
        const std::vector<double> z{50.0 * (2.0 * s.uniform(k, 0) - 1.0),
                                    50.0 * (2.0 * s.uniform(k, 1) - 1.0)};
        const std::vector<double> zn{-z[0], -z[1]};
        const auto a = fourier::measure_fourier(mu, z, cfg);
        const auto b = fourier::measure_fourier(mu, zn, cfg);
        CHECK(std::abs(b.value - std::conj(a.value)) < 1e-13);
        CHECK(std::abs(a.value) <= 1.0 + 3.0 * a.stderr_ + 1e-3);
    }
}

TEST_CASE("parabola transform matches the dense-quadrature oracle") {
    const SurfaceMeasure mu = parabola_measure();
    fourier::FourierConfig cfg;
    cfg.seed = 5;
    for (auto [x0, x1] : {std::pair{0.0, 8.0}, {3.0, 5.0}}) {
        const auto v = fourier::measure_fourier(mu, std::vector<double>{x0, x1}, cfg);
        const auto oracle = parabola_ft_oracle(mu, x0, x1);
        CHECK(std::abs(v.value - oracle) < 3.0 * v.stderr_ + 1e-5);
    }
}

TEST_CASE("frequency budget is refused, not under-resolved") {
    const SurfaceMeasure mu = parabola_measure();
    fourier::FourierConfig cfg;
    cfg.max_samples = 1 << 15;
    CHECK_THROWS_AS(fourier::measure_fourier(mu, std::vector<double>{0.0, 1e6}, cfg),
                    ResourceError);
}

TEST_CASE("decay fits validate their frequency grids") {
    const SurfaceMeasure mu = parabola_measure();
    const auto loc = submanifold::localize(mu, {0.0, 0.0}, 0.5);
    CHECK_THROWS_AS(fourier::l2_shell_decay(loc, {16, 32, 64, 128}, 16), std::domain_error);
    CHECK_THROWS_AS(fourier::l2_shell_decay(loc, {16, 32, 64, 128, 200}, 16), std::domain_error);
    CHECK_THROWS_AS(fourier::l2_shell_decay(loc, {16, 32, 64, 48, 96}, 16), std::domain_error);
    CHECK_THROWS_AS(fourier::l2_shell_decay(loc, {16, 32, 64, 128, 256}, 4), std::domain_error);
    CHECK_THROWS_AS(
        fourier::stationary_scaling(loc, {0.0, 0.0}, {16, 32, 64, 128, 256}),
        std::domain_error);
    CHECK_THROWS_AS(
        fourier::stationary_scaling(loc, {0.0, 1.0, 0.0}, {16, 32, 64, 128, 256}),
        std::domain_error);
}

TEST_CASE("shell decay: parabola -1/2, paraboloid -1, near-point-mass 0") {
    std::vector<double> K;
    for (double k = 16; k <= 1024; k *= 2) K.push_back(k);
    fourier::FourierConfig cfg;
    cfg.seed = 11;

    const SurfaceMeasure mu1 = parabola_measure();
    const auto loc1 = submanifold::localize(mu1, {0.0, 0.0}, 0.5);
    const auto f1 = fourier::l2_shell_decay(loc1, K, 64, cfg);
    CHECK(f1.slope > -0.8);
    CHECK(f1.slope < -0.2);

    const SurfaceMeasure mu2 = paraboloid_measure();
    const auto loc2 = submanifold::localize(mu2, {0.0, 0.0, 0.0}, 0.5);
    fourier::FourierConfig cfg2 = cfg;
    cfg2.base_samples = 1024;
    cfg2.max_samples = std::int64_t(1) << 26;
    const auto f2 = fourier::l2_shell_decay(loc2, K, 64, cfg2);
    CHECK(f2.slope > -1.3);
    CHECK(f2.slope < -0.7);

    // beta near 0: the support is nearly a point at these frequencies, so the
    // modulus stays at the mass
    const auto locp = submanifold::localize(mu1, {0.0, 0.0}, 0.01);
    const auto fp = fourier::l2_shell_decay(locp, {1, 2, 4, 8, 16}, 32, cfg);
    CHECK(std::abs(fp.slope) < 0.15);
}

TEST_CASE("shell decay is stable under more directions and a longer grid") {
    std::vector<double> K;
    for (double k = 16; k <= 1024; k *= 2) K.push_back(k);
    fourier::FourierConfig cfg;
    cfg.seed = 11;
    cfg.base_samples = 1024;
    cfg.max_samples = std::int64_t(1) << 26;
    const SurfaceMeasure mu2 = paraboloid_measure();
    const auto loc2 = submanifold::localize(mu2, {0.0, 0.0, 0.0}, 0.5);

    const auto a = fourier::l2_shell_decay(loc2, K, 64, cfg);
    const auto b = fourier::l2_shell_decay(loc2, K, 128, cfg);
    CHECK(std::abs(a.slope - b.slope) < 0.1);
    for (std::size_t i = 0; i < K.size(); ++i)
        CHECK(std::abs(a.value[i] - b.value[i]) < 2.0 * (a.stderr_[i] + b.stderr_[i]));

    std::vector<double> K2 = K;
    K2.push_back(2048);
    const auto c = fourier::l2_shell_decay(loc2, K2, 64, cfg);
    CHECK(std::abs(a.slope - c.slope) < 0.1);
}

TEST_CASE("stationary scaling along normal, tangential, and flat directions") {
    fourier::FourierConfig cfg;
    cfg.seed = 11;
    const SurfaceMeasure mu1 = parabola_measure();
    const SurfaceMeasure mu2 = paraboloid_measure();
    const auto loc1 = submanifold::localize(mu1, {0.0, 0.0}, 0.5);
    const auto loc2 = submanifold::localize(mu2, {0.0, 0.0, 0.0}, 0.5);

    // parabola apex normal: the classical -1/2 surface decay
    const auto n1 = fourier::stationary_scaling(loc1, {0.0, 1.0}, {16, 32, 64, 128, 256}, cfg);
    CHECK(n1.normal_aligned);
    CHECK(n1.slope > -0.8);
    CHECK(n1.slope < -0.2);

    // paraboloid normal over the oscillation onset: the near-flat directions
    // have not kicked in yet, leaving the -(m-n)/2 window
    const auto n2 = fourier::stationary_scaling(loc2, {0.0, 0.0, 1.0}, {0.5, 1, 2, 4, 8}, cfg);
    CHECK(n2.normal_aligned);
    CHECK(n2.slope > -0.8);
    CHECK(n2.slope < -0.2);
    // in the high-frequency regime the full -m/2 decay takes over
    const auto n3 = fourier::stationary_scaling(loc2, {0.0, 0.0, 1.0}, {2, 4, 8, 16, 32}, cfg);
    CHECK(n3.slope < -0.8);

    // tangential: no critical point, superpolynomial falloff
    const auto t1 = fourier::stationary_scaling(loc1, {1.0, 0.0}, {1, 2, 4, 8, 16}, cfg);
    CHECK_FALSE(t1.normal_aligned);
    CHECK(t1.slope < -1.5);
    fourier::FourierConfig cfg_t = cfg;
    cfg_t.floor_samples = std::int64_t(1) << 22;
    const auto t2 = fourier::stationary_scaling(loc2, {1.0, 0.0, 0.0}, {1, 2, 4, 8, 16}, cfg_t);
    CHECK(t2.slope < -1.5);

    // flat graph: the transform along the normal is constant below the window
    // scale
    const SurfaceMeasure flat(PolyGraphMap(1, 1, {Poly::constant(1, 0.0)}));
    const auto locf = submanifold::localize(flat, {0.0, 0.0}, 1.0 / 32.0);
    const auto nf = fourier::stationary_scaling(locf, {0.0, 1.0}, {2, 4, 8, 16, 32}, cfg);
    CHECK(nf.normal_aligned);
    CHECK(nf.slope > -0.2);
}

TEST_CASE("eta profile and the exact frequency partition") {
    CHECK(fourier::eta_profile(0.5) == 1.0);
    CHECK(fourier::eta_profile(1.0) == 1.0);
    CHECK(fourier::eta_profile(2.0) == 0.0);
    CHECK(fourier::eta_profile(3.0) == 0.0);
    CHECK(fourier::eta_profile(1.5) == doctest::Approx(0.5).epsilon(1e-12));
    double prev = 1.0;
    for (int i = 1; i <= 100; ++i) {
        const double v = fourier::eta_profile(1.0 + i / 100.0);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }

    const fourier::FrequencySplit sp;
    for (int i = 0; i < 10000; ++i) {
        const double r = 40.0 * i / 9999.0;
        const double sum = sp.eta_low(r) + sp.eta_mid(r) + sp.eta_high(r);
        REQUIRE(sum == 1.0);
    }
}

TEST_CASE("wave factories match dense transform oracles") {
    const auto g = fourier::gaussian_wave({0.3, -0.2}, 0.8, {1.0, -0.5});
    const auto b = fourier::bump_wave({0.3, -0.2}, 1.5, {1.0, -0.5});
    auto oracle = [](const fourier::FrequencyTestFn& f, const std::vector<double>& xi, double R) {
        const int N = 1200;
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const std::vector<double> x{-R + 2.0 * R * (i + 0.5) / N,
                                            -R + 2.0 * R * (j + 0.5) / N};
                const double ph = -2.0 * std::numbers::pi * (xi[0] * x[0] + xi[1] * x[1]);
                acc += f.direct(x) * std::complex<double>(std::cos(ph), std::sin(ph));
            }
        return acc * (2.0 * R / N) * (2.0 * R / N);
    };
    for (const auto& xi :
         {std::vector<double>{0.0, 0.0}, {1.2, -0.3}, {2.5, 1.0}}) {
        CHECK(std::abs(g.ft(xi) - oracle(g, xi, 8.0)) < 1e-4);
        CHECK(std::abs(b.ft(xi) - oracle(b, xi, 2.0)) < 1e-4);
    }

    // tail_halfwidth really bounds the discarded transform mass (1-D check)
    for (double tol : {1e-2, 1e-4}) {
        const auto g1 = fourier::gaussian_wave({0.0}, 0.8, {0.0});
        const double L = g1.tail_halfwidth(tol);
        double tail = 0.0;
        for (int i = 0; i < 200000; ++i) {
            const double u = L + 40.0 * (i + 0.5) / 200000;
            tail += 2.0 * std::abs(g1.ft(std::vector<double>{u})) * (40.0 / 200000);
        }
        CHECK(tail < tol);
    }
    {
        const auto b1 = fourier::bump_wave({0.0}, 1.5, {0.0});
        const double L = b1.tail_halfwidth(1e-3);
        double tail = 0.0;
        for (int i = 0; i < 50000; ++i) {
            const double u = L + 60.0 * (i + 0.5) / 50000;
            tail += 2.0 * std::abs(b1.ft(std::vector<double>{u})) * (60.0 / 50000);
        }
        CHECK(tail < 1e-3);
    }

    CHECK_THROWS_AS(fourier::gaussian_wave({0.0}, -1.0, {0.0}), std::domain_error);
    CHECK_THROWS_AS(fourier::bump_wave({0.0, 0.0}, 1.0, {0.0}), std::domain_error);
}

TEST_CASE("split_eval: sum identity, low-frequency dominance, refusals") {
    const SurfaceMeasure mu = parabola_measure();
    const auto mv = fourier::view(mu);
    const fourier::FrequencySplit sp;

    auto direct_val = [&](const fourier::FrequencyTestFn& f) {
        const int N = 2'000'000;
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i <= N; ++i) {
            const double t = -1.0 + 2.0 * i / N;
            const double w = (i == 0 || i == N) ? 0.5 : 1.0;
            const std::vector<double> x{t, t * t};
            acc += w * f.direct(x) * mu.density(std::vector<double>{t});
        }
        return acc * (2.0 / N);
    };

    {
        const auto f = fourier::gaussian_wave({0.0, 0.0}, 1.0, {0.7, 0.7});
        fourier::SplitConfig cfg;
        cfg.fourier.seed = 3;
        const auto r = fourier::split_eval(mv, f, sp, cfg);
        const auto d = direct_val(f);
        CHECK(std::abs(r.low + r.mid + r.high - d) < 1e-3 * std::abs(d));
        CHECK(r.truncation_residual <= cfg.tail_tol);
    }
    {
        const auto f = fourier::bump_wave({0.0, 0.0}, 3.0, {0.7, 0.7});
        fourier::SplitConfig cfg;
        cfg.fourier.seed = 3;
        cfg.grid_per_dim = 48;
        const auto r = fourier::split_eval(mv, f, sp, cfg);
        const auto d = direct_val(f);
        CHECK(std::abs(r.low + r.mid + r.high - d) < 1e-3 * std::abs(d));
    }
    {
        // transform concentrated at |xi| ~ rho T / 2: the low piece dominates
        const auto f = fourier::gaussian_wave({0.0, 0.0}, 2.0, {0.6, 0.8});
        fourier::SplitConfig cfg;
        cfg.fourier.seed = 3;
        const auto r = fourier::split_eval(mv, f, sp, cfg);
        CHECK(std::abs(r.mid) + std::abs(r.high) < 0.1 * std::abs(r.low));
    }

    CHECK_THROWS_AS(fourier::split_eval(mv, fourier::gaussian_wave({0.0}, 1.0, {0.0}), sp),
                    std::domain_error);
    fourier::FrequencySplit bad;
    bad.rho = 1.5;
    CHECK_THROWS_AS(
        fourier::split_eval(mv, fourier::gaussian_wave({0.0, 0.0}, 1.0, {0.0, 0.0}), bad),
        std::domain_error);
    // a near-delta factor needs an astronomically wide frequency box
    CHECK_THROWS_AS(
        fourier::split_eval(mv, fourier::gaussian_wave({0.0, 0.0}, 1e-5, {0.0, 0.0}), sp),
        ResourceError);
}
