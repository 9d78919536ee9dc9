#include "doctest.h"

#include <cmath>
#include <numbers>

#include "horolab/homspace.hpp"
#include "horolab/parallel.hpp"
#include "horolab/rng.hpp"
#include "horolab/sl2.hpp"

using namespace horolab;
using namespace horolab::homspace;
using sl2::Mat2;

namespace {

GElem random_point(const rng::Stream& s, std::uint64_t i, int d) {
    GElem g = identity_elem(d);
    for (int j = 0; j < d; ++j) {
        const double x = 2.0 * s.uniform(i, static_cast<std::uint32_t>(3 * j)) - 1.0;
        const double y = std::exp(2.0 * s.uniform(i, static_cast<std::uint32_t>(3 * j + 1)) - 1.0);
        const double th = 2.0 * std::numbers::pi * s.uniform(i, static_cast<std::uint32_t>(3 * j + 2));
        g.factors[static_cast<std::size_t>(j)] = sl2::make_n(x) * sl2::make_a(y) * sl2::make_k(th);
    }
    return g;
}

}  // namespace

TEST_CASE("translate basics and the commutation identity") {
    rng::Stream s(61, "hom.translate");
    const GElem x0 = random_point(s, 0, 3);
    const GElem same = translate(x0, a_y(3, 1.0));
    for (int j = 0; j < 3; ++j)
        CHECK(sl2::frob_dist(same.factors[static_cast<std::size_t>(j)],
                             x0.factors[static_cast<std::size_t>(j)]) < 1e-12);

    const std::vector<double> t{0.3, -1.2, 0.7};
    const double y = 2.4;
    const GElem lhs = translate(translate(x0, u_t(t)), a_y(3, y));
    for (int j = 0; j < 3; ++j) {
        const Mat2 want = sl2::make_a(y) * sl2::make_u(t[static_cast<std::size_t>(j)]) *
                          x0.factors[static_cast<std::size_t>(j)];
        CHECK(sl2::frob_dist(lhs.factors[static_cast<std::size_t>(j)], want) < 1e-12);
    }
    // a_y u_t = u_{t/y} a_y componentwise
    std::vector<double> t_over_y = t;
    for (double& v : t_over_y) v /= y;
    const GElem rhs = translate(translate(x0, a_y(3, y)), u_t(t_over_y));
    for (int j = 0; j < 3; ++j)
        CHECK(sl2::frob_dist(lhs.factors[static_cast<std::size_t>(j)],
                             rhs.factors[static_cast<std::size_t>(j)]) < 1e-12);

    CHECK_THROWS_AS(translate(x0, a_y(2, 2.0)), std::domain_error);
}

TEST_CASE("covolume matches the classical value") {
    const double v0 = covolume();
    CHECK(v0 == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi / 3.0).epsilon(1e-9));
    // the modular-domain double integral itself
    CHECK(v0 / (2.0 * std::numbers::pi) ==
          doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-6));
}

TEST_CASE("constant test function evaluates and integrates to 1") {
    const FactorizableTestFn f({std::nullopt, std::nullopt});
    rng::Stream s(67, "hom.const");
    for (std::uint64_t i = 0; i < 20; ++i) CHECK(f.eval(random_point(s, i, 2)) == 1.0);
    CHECK(haar_integral_quotient(f) == 1.0);
}

TEST_CASE("eval_testfn is Gamma-invariant") {
    AutoBumpFactor b;
    b.center = sl2::make_a(1.3);
    b.radius = 0.4;
    const FactorizableTestFn f({b, std::nullopt});
    rng::Stream s(71, "hom.gamma");
    const sl2::MatZ gam = sl2::MatZ(1, 2, 0, 1) * sl2::MatZ(1, 0, -3, 1);
    int nonzero = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        GElem p = random_point(s, i, 2);
        const double v = f.eval(p);
        GElem q = p;
        q.factors[0] = q.factors[0] * gam.to_mat2();
        CHECK(std::abs(f.eval(q) - v) < 1e-9);
        if (v > 0.0) ++nonzero;
    }
    CHECK(nonzero > 0);  // the bump is actually seen
}

TEST_CASE("small bump at a reduced point is the single-term value") {
    // a reduced representative well inside the fundamental domain
    const Mat2 rep = (sl2::make_n(0.1) * sl2::make_a(1.4)).inverse().inverse();
    AutoBumpFactor b;
    b.center = rep;
    b.radius = 0.2;
    b.amplitude = 2.5;
    GElem p = identity_elem(1);
    p.factors[0] = rep;
    const FactorizableTestFn f({b});
    CHECK(f.eval(p) == doctest::Approx(b.amplitude).epsilon(1e-12));
    // brute force over a wider enumeration radius finds no second term
    double brute = 0.0;
    for (const sl2::MatZ& gam : sl2::lattice_enumerate(rep, rep.frob() + 2.0))
        brute += b.bump(rep * gam.to_mat2());
    CHECK(f.eval(p) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("quotient sampler output lies in the fundamental domain, reproducibly") {
    QuotientSampler qs;
    qs.seed = 5;
    qs.d = 2;
    const auto pts = qs.sample(1000);
    for (const GElem& g : pts)
        for (const Mat2& m : g.factors) {
            const sl2::IwasawaCoords c = sl2::iwasawa_decompose(m.inverse());
            CHECK(std::abs(c.x) <= 0.5 + 1e-12);
            CHECK(c.x * c.x + c.y * c.y >= 1.0 - 1e-12);
        }
    for (std::uint64_t i : {0ull, 3ull, 999ull})
        for (int j = 0; j < 2; ++j)
            CHECK(sl2::frob_dist(pts[static_cast<std::size_t>(i)].factors[static_cast<std::size_t>(j)],
                                 qs.point(i).factors[static_cast<std::size_t>(j)]) == 0.0);
}

TEST_CASE("unfolding: Monte Carlo quotient average matches the exact Haar integral") {
    AutoBumpFactor b1;
    b1.center = sl2::make_a(1.3);
    b1.radius = 0.4;
    AutoBumpFactor b2;
    b2.center = sl2::make_u(0.3) * sl2::make_a(0.8);
    b2.radius = 0.35;
    b2.amplitude = 1.7;
    const FactorizableTestFn f({b1, b2});
    const double exact = haar_integral_quotient(f);
    CHECK(exact > 0.0);

    QuotientSampler qs;
    qs.seed = 12;
    qs.d = 2;
    const std::int64_t N = 1'000'000;
    struct Acc {
        double s = 0.0, s2 = 0.0;
        Acc& operator+=(const Acc& o) {
            s += o.s;
            s2 += o.s2;
            return *this;
        }
    };
    const Acc acc = par::chunked_sum<Acc>(N, [&](std::int64_t i) {
        const double v = f.eval(qs.point(static_cast<std::uint64_t>(i)));
        return Acc{v, v * v};
    });
    const double mean = acc.s / double(N);
    const double var = std::max(0.0, acc.s2 / double(N) - mean * mean);
    const double se = std::sqrt(var / double(N));
    CHECK(std::abs(mean - exact) < 3.0 * se);

    // single-factor form: factor integral over the quotient volume (half the
    // parameter-box volume, by the -I double cover)
    const FactorizableTestFn single({b1, std::nullopt});
    CHECK(haar_integral_quotient(single) ==
          doctest::Approx(b1.full_integral() / (covolume() / 2.0)).epsilon(1e-12));
}

TEST_CASE("full_integral is stable under quadrature refinement") {
    AutoBumpFactor b;
    b.center = sl2::make_a(1.3);
    b.radius = 0.4;
    // recompute over the same covering box at doubled resolution
    const double F = b.center.frob() + b.radius;
    const double F2 = F * F;
    const double disc = std::sqrt(F2 * F2 - 4.0);
    sl2::IwasawaBox box{-std::sqrt(F2 * F2 / 4.0 - 1.0), std::sqrt(F2 * F2 / 4.0 - 1.0),
                        (F2 - disc) / 2.0, (F2 + disc) / 2.0, 0.0, 2.0 * std::numbers::pi};
    const double fine =
        sl2::haar_integrate_sl2([&](const Mat2& g) { return b.bump(g); }, box, 32);
    CHECK(b.full_integral() == doctest::Approx(fine).epsilon(1e-4));
}

TEST_CASE("sobolev_estimate basics") {
    const FactorizableTestFn one({std::nullopt, std::nullopt});
    QuotientSampler qs;
    qs.seed = 3;
    qs.d = 2;
    const auto pts = qs.sample(50);
    CHECK(sobolev_estimate(one, 2, pts) == doctest::Approx(1.0).epsilon(1e-9));

    AutoBumpFactor b;
    b.center = sl2::make_a(1.3);
    b.radius = 0.3;
    b.amplitude = 2.0;
    const FactorizableTestFn f({b, std::nullopt});
    const double j0 = sobolev_estimate(f, 0, pts);
    CHECK(j0 <= b.amplitude + 1e-9);
    const double j1 = sobolev_estimate(f, 1, pts);
    const double j2 = sobolev_estimate(f, 2, pts);
    CHECK(j1 >= j0);
    CHECK(j2 >= j1);

    // scaling by c scales the estimate by c
    AutoBumpFactor bc = b;
    bc.amplitude *= 3.0;
    const FactorizableTestFn fc({bc, std::nullopt});
    CHECK(sobolev_estimate(fc, 2, pts) == doctest::Approx(3.0 * j2).epsilon(1e-9));

    CHECK_THROWS_AS(sobolev_estimate(f, 3, pts), std::domain_error);
}
