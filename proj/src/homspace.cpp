#include "horolab/homspace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "horolab/errors.hpp"
#include "horolab/rng.hpp"

namespace horolab::homspace {

using sl2::Mat2;

GElem identity_elem(int d) {
    if (d < 1) throw std::domain_error("identity_elem: d must be >= 1");
    GElem g;
    g.factors.assign(static_cast<std::size_t>(d), Mat2());
    return g;
}

GElem a_y(int d, double y) {
    GElem g = identity_elem(d);
    for (auto& f : g.factors) f = sl2::make_a(y);
    return g;
}

GElem u_t(const std::vector<double>& t) {
    GElem g = identity_elem(static_cast<int>(t.size()));
    for (std::size_t j = 0; j < t.size(); ++j) g.factors[j] = sl2::make_u(t[j]);
    return g;
}

GElem translate(const GElem& g, const GElem& by) {
    if (g.d() != by.d()) throw std::domain_error("translate: dimension mismatch");
    GElem out = g;
    for (std::size_t j = 0; j < out.factors.size(); ++j)
        out.factors[j] = by.factors[j] * g.factors[j];
    return out;
}

double AutoBumpFactor::bump(const Mat2& g) const {
    const double s = sl2::frob_dist(g, center) / radius;
    const double s2 = s * s;
    if (s2 >= 1.0) return 0.0;
    return amplitude * std::exp(profile * (1.0 - 1.0 / (1.0 - s2)));
}

double AutoBumpFactor::automorphized(const Mat2& g) const {
    // the Gamma-sum only sees the coset, so reduce first: the representative
    // has bounded norm, keeping the enumeration radius tame
    const sl2::ReducedPoint red = sl2::reduce(g);
    const double R = center.frob() + radius;
    // every coset element h satisfies frob(h)^2 >= Im(z): the orbit of a point
    // at height Y has all other heights <= 1/Y, and y + (1+x^2)/y >= Y in both
    // regimes; deep-cusp points therefore never meet the support
    if (red.z.imag() > R * R) return 0.0;
    double acc = 0.0;
    for (const sl2::MatZ& gamma : sl2::lattice_enumerate(red.rep, R))
        acc += bump(red.rep * gamma.to_mat2());
    return acc;
}

double AutoBumpFactor::full_integral() const {
    // support is the Frobenius ball; cover it with an Iwasawa box from
    // frob^2(n(x)a(y)k) = y + (1 + x^2)/y <= (|center| + radius)^2
    const double F = center.frob() + radius;
    const double F2 = F * F;
    const double disc = std::sqrt(std::max(0.0, F2 * F2 - 4.0));
    const double ylo = (F2 - disc) / 2.0, yhi = (F2 + disc) / 2.0;
    const double X = std::sqrt(std::max(0.0, F2 * F2 / 4.0 - 1.0));
    sl2::IwasawaBox box{-X, X, ylo, yhi, 0.0, 2.0 * std::numbers::pi};
    return sl2::haar_integrate_sl2([this](const Mat2& g) { return bump(g); }, box, 16);
}

FactorizableTestFn::FactorizableTestFn(std::vector<std::optional<AutoBumpFactor>> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::domain_error("FactorizableTestFn: empty factor list");
    // the (x, y, theta in [0, 2pi)) box double-covers G/Gamma because -I is in
    // Gamma: gamma and -gamma reduce to the same point with theta shifted by
    // pi.  The quotient volume is therefore covolume()/2.
    const double quotient_volume = covolume() / 2.0;
    for (const auto& f : factors_) {
        if (!f) continue;
        if (!(f->radius > 0.0)) throw std::domain_error("FactorizableTestFn: radius must be > 0");
        haar_integral_ *= f->full_integral() / quotient_volume;
    }
}

double FactorizableTestFn::eval(const GElem& p) const {
    if (p.d() != d()) throw std::domain_error("FactorizableTestFn: dimension mismatch");
    double v = 1.0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (!factors_[j]) continue;
        v *= factors_[j]->automorphized(p.factors[j]);
        if (v == 0.0) return 0.0;
    }
    return v;
}

namespace {

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fb, double fm,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) throw InternalError("covolume: adaptive quadrature recursion exhausted");
    if (std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, tol / 2.0, depth - 1);
}

double cusp_width(double x) { return 1.0 / std::sqrt(1.0 - x * x); }

}  // namespace

double covolume() {
    static const double value = [] {
        // integral over {|x| <= 1/2, x^2 + y^2 >= 1} of y^-2: the inner
        // y-integral is 1/sqrt(1 - x^2)
        const double fa = cusp_width(-0.5), fb = cusp_width(0.5), fm = cusp_width(0.0);
        const double base = adaptive_simpson(cusp_width, -0.5, 0.5, fa, fb, fm, 1e-12, 48);
        return 2.0 * std::numbers::pi * base;
    }();
    return value;
}

double haar_integral_quotient(const FactorizableTestFn& f) { return f.haar_integral(); }

GElem QuotientSampler::point(std::uint64_t index) const {
    GElem g = identity_elem(d);
    const rng::Stream base(seed, "homspace.quotient");
    for (int j = 0; j < d; ++j) {
        const rng::Stream s = base.substream(static_cast<std::uint64_t>(j));
        double x = 0.0, y = 0.0;
        for (std::uint32_t attempt = 0;; ++attempt) {
            if (attempt > 256) throw InternalError("QuotientSampler: rejection loop stuck");
            x = s.uniform(index, 3 * attempt) - 0.5;
            // inverse CDF of y^-2 restricted to y >= sqrt(3)/2
            y = (std::sqrt(3.0) / 2.0) / (1.0 - s.uniform(index, 3 * attempt + 1));
            if (x * x + y * y >= 1.0) break;
        }
        const double theta = 2.0 * std::numbers::pi * s.uniform(index, 2);
        // z = x + iy is the fundamental-domain point of the inverse lift
        g.factors[static_cast<std::size_t>(j)] =
            (sl2::make_n(x) * sl2::make_a(y) * sl2::make_k(theta)).inverse();
    }
    return g;
}

std::vector<GElem> QuotientSampler::sample(std::uint64_t count) const {
    std::vector<GElem> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(point(i));
    return out;
}

namespace {

// one-parameter generator flows used for directional derivatives
Mat2 flow(int gen, double s) {
    switch (gen) {
        case 0: return sl2::make_a(std::exp(s));
        case 1: return sl2::make_u(s);
        default: return sl2::make_n(s);
    }
}

GElem left_mul_factor(const GElem& p, int j, const Mat2& m) {
    GElem out = p;
    out.factors[static_cast<std::size_t>(j)] = m * p.factors[static_cast<std::size_t>(j)];
    return out;
}

}  // namespace

double sobolev_estimate(const FactorizableTestFn& f, int j, std::span<const GElem> points,
                        double h) {
    if (j < 0 || j > 2)
        throw std::domain_error("sobolev_estimate: only j <= 2 supported (finite differences)");
    if (points.empty()) throw std::domain_error("sobolev_estimate: no sample points");
    const int d = f.d();
    const int ngen = 3 * d;

    double total = 0.0;
    double sup0 = 0.0;
    for (const GElem& p : points) sup0 = std::max(sup0, std::abs(f.eval(p)));
    total += sup0;

    if (j >= 1) {
        for (int g = 0; g < ngen; ++g) {
            const int fac = g / 3, gen = g % 3;
            double sup = 0.0;
            for (const GElem& p : points) {
                const double fp = f.eval(left_mul_factor(p, fac, flow(gen, h)));
                const double fm = f.eval(left_mul_factor(p, fac, flow(gen, -h)));
                sup = std::max(sup, std::abs(fp - fm) / (2.0 * h));
            }
            total += sup;
        }
    }
    if (j >= 2) {
        for (int g1 = 0; g1 < ngen; ++g1)
            for (int g2 = 0; g2 < ngen; ++g2) {
                const int f1 = g1 / 3, e1 = g1 % 3, f2 = g2 / 3, e2 = g2 % 3;
                double sup = 0.0;
                for (const GElem& p : points) {
                    auto shifted = [&](double s1, double s2) {
                        return f.eval(left_mul_factor(left_mul_factor(p, f2, flow(e2, s2)), f1,
                                                      flow(e1, s1)));
                    };
                    const double v = (shifted(h, h) - shifted(h, -h) - shifted(-h, h) +
                                      shifted(-h, -h)) /
                                     (4.0 * h * h);
                    sup = std::max(sup, std::abs(v));
                }
                total += sup;
            }
    }
    return total;
}

}  // namespace horolab::homspace
