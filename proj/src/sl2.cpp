#include "horolab/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "horolab/errors.hpp"
#include "horolab/parallel.hpp"
#include "horolab/policy.hpp"

namespace horolab::sl2 {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

// 8-point Gauss-Legendre on [-1,1]
constexpr double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
}  // namespace

Mat2::Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)))
        throw std::domain_error("Mat2: non-finite entries");
    if (std::abs(det() - 1.0) > policy().structural_tol * std::max(1.0, frob_sq()))
        throw std::domain_error("Mat2: determinant is not 1");
}

double Mat2::frob() const { return std::sqrt(frob_sq()); }

double Mat2::op_norm() const {
    const double f2 = frob_sq();
    const double disc = std::max(0.0, f2 * f2 - 4.0);
    return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

double Mat2::op_norm_inv() const { return 1.0 / op_norm(); }

double frob_dist(const Mat2& x, const Mat2& y) {
    const double da = x.a - y.a, db = x.b - y.b, dc = x.c - y.c, dd = x.d - y.d;
    return std::sqrt(da * da + db * db + dc * dc + dd * dd);
}

bool approx_equal(const Mat2& x, const Mat2& y, double tol) { return frob_dist(x, y) <= tol; }

Mat2 make_a(double y) {
    if (!(y > 0.0) || !std::isfinite(y)) throw std::domain_error("make_a: y must be positive");
    const double s = std::sqrt(y);
    return Mat2(s, 0.0, 0.0, 1.0 / s);
}

Mat2 make_u(double t) { return Mat2(1.0, 0.0, t, 1.0); }

Mat2 make_n(double x) { return Mat2(1.0, x, 0.0, 1.0); }

Mat2 make_k(double theta) {
    return Mat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
}

std::complex<double> moebius(const Mat2& g, std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !(z.imag() > 0.0))
        throw std::domain_error("moebius: z must be in the upper half-plane");
    return (g.a * z + g.b) / (g.c * z + g.d);
}

IwasawaCoords iwasawa_decompose(const Mat2& g) {
    const std::complex<double> z = moebius(g, kI);
    IwasawaCoords c;
    c.x = z.real();
    c.y = z.imag();
    const Mat2 k = make_a(c.y).inverse() * (make_n(c.x).inverse() * g);
    c.theta = std::atan2(k.c, k.a);
    if (c.theta < 0.0) c.theta += 2.0 * std::numbers::pi;
    return c;
}

Mat2 iwasawa_recompose(const IwasawaCoords& c) {
    return make_n(c.x) * make_a(c.y) * make_k(c.theta);
}

ReducedPoint reduce(const Mat2& g) {
    std::complex<double> z = moebius(g.inverse(), kI);
    MatZ gamma;
    const int cap = policy().reduce_iteration_cap;
    for (int iter = 0; iter < cap; ++iter) {
        const double n = std::round(z.real());
        if (n != 0.0) {
            gamma = gamma * MatZ(1, static_cast<std::int64_t>(n), 0, 1);
            z -= n;
        }
        if (std::norm(z) < 1.0 - 1e-14) {
            gamma = gamma * MatZ(0, -1, 1, 0);
            z = -1.0 / z;
        } else {
            ReducedPoint out;
            out.gamma = gamma;
            out.rep = g * gamma.to_mat2();
            out.z = z;
            return out;
        }
    }
    throw InternalError("reduce: iteration cap exceeded");
}

std::vector<MatZ> lattice_enumerate(const Mat2& g, double R) {
    if (!(R >= 0.0)) throw std::domain_error("lattice_enumerate: R must be nonnegative");
    std::vector<MatZ> out;
    const double R2 = R * R;
    if (R2 < 2.0 - 1e-9) return out;

    // columns of gamma satisfy ||col|| <= sigma_max(g^{-1}) * R
    const double bound = g.inverse().op_norm() * R + 1e-12;
    const auto cap = policy().enumeration_cap;
    const auto B = static_cast<std::int64_t>(std::floor(bound));
    std::int64_t candidates = (2 * B + 1) * (2 * B + 1);
    if (candidates > cap)
        throw ResourceError("lattice_enumerate: entry bound exceeds configured cap");

    const double tol = 1e-9;
    for (std::int64_t p = -B; p <= B; ++p) {
        for (std::int64_t r = -B; r <= B; ++r) {
            if (p == 0 && r == 0) continue;
            if (std::gcd(std::abs(p), std::abs(r)) != 1) continue;
            // first column u1 = g (p, r)^T
            const double u1x = g.a * double(p) + g.b * double(r);
            const double u1y = g.c * double(p) + g.d * double(r);
            const double c1 = u1x * u1x + u1y * u1y;
            if (c1 > R2 + tol) continue;
            // particular solution of p*d0 - r*b0 = 1
            std::int64_t u = 0, v = 0;
            {
                std::int64_t old_r = p, rr = r, old_s = 1, s = 0, old_t = 0, t = 1;
                while (rr != 0) {
                    const std::int64_t q = old_r / rr;
                    std::int64_t tmp = old_r - q * rr; old_r = rr; rr = tmp;
                    tmp = old_s - q * s; old_s = s; s = tmp;
                    tmp = old_t - q * t; old_t = t; t = tmp;
                }
                // old_r = +-1 = p*old_s + r*old_t
                if (old_r == 1) { u = old_s; v = old_t; }
                else { u = -old_s; v = -old_t; }
            }
            const std::int64_t d0 = u, b0 = -v;  // p*d0 - r*b0 = 1
            // second column g(b0 + k p, d0 + k r)^T = u0 + k u1
            const double u0x = g.a * double(b0) + g.b * double(d0);
            const double u0y = g.c * double(b0) + g.d * double(d0);
            const double qa = c1;
            const double qb = 2.0 * (u0x * u1x + u0y * u1y);
            const double qc = u0x * u0x + u0y * u0y + c1 - R2 - tol;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            const auto klo = static_cast<std::int64_t>(std::ceil((-qb - sq) / (2.0 * qa) - 1e-12));
            const auto khi = static_cast<std::int64_t>(std::floor((-qb + sq) / (2.0 * qa) + 1e-12));
            candidates += khi - klo + 1;
            if (candidates > cap)
                throw ResourceError("lattice_enumerate: candidate cap exceeded");
            for (std::int64_t k = klo; k <= khi; ++k) {
                const std::int64_t b = b0 + k * p;
                const std::int64_t d = d0 + k * r;
                const double vx = u0x + double(k) * u1x;
                const double vy = u0y + double(k) * u1y;
                if (c1 + vx * vx + vy * vy <= R2 + tol) out.emplace_back(p, b, r, d);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const MatZ& x, const MatZ& y) {
        return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    });
    return out;
}

double quotient_norm(const Mat2& g) {
    const ReducedPoint red = reduce(g);
    const double R = red.rep.frob() + 0.5;
    double best = red.rep.frob();
    for (const MatZ& gamma : lattice_enumerate(red.rep, R)) {
        const Mat2 h = red.rep * gamma.to_mat2();
        best = std::min(best, h.frob());
    }
    return best;
}

double haar_integrate_sl2(const std::function<double(const Mat2&)>& F, const IwasawaBox& box,
                          int resolution) {
    if (!(box.y0 > 0.0)) throw std::domain_error("haar_integrate_sl2: box requires y > 0");
    if (resolution < 1) throw std::domain_error("haar_integrate_sl2: resolution must be >= 1");
    const int P = resolution;
    const double hx = (box.x1 - box.x0) / P;
    const double hy = (box.y1 - box.y0) / P;
    const double ht = (box.th1 - box.th0) / P;
    const std::int64_t panels = static_cast<std::int64_t>(P) * P * P;
    return par::chunked_sum<double>(
        panels,
        [&](std::int64_t idx) {
            const int pi = static_cast<int>(idx / (P * P));
            const int pj = static_cast<int>((idx / P) % P);
            const int pk = static_cast<int>(idx % P);
            const double x0 = box.x0 + pi * hx, y0 = box.y0 + pj * hy, t0 = box.th0 + pk * ht;
            double acc = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double x = x0 + 0.5 * hx * (1.0 + kGlNode[i]);
                for (int j = 0; j < 8; ++j) {
                    const double y = y0 + 0.5 * hy * (1.0 + kGlNode[j]);
                    const Mat2 na = make_n(x) * make_a(y);
                    for (int k = 0; k < 8; ++k) {
                        const double th = t0 + 0.5 * ht * (1.0 + kGlNode[k]);
                        acc += kGlWeight[i] * kGlWeight[j] * kGlWeight[k] *
                               F(na * make_k(th)) / (y * y);
                    }
                }
            }
            return acc * 0.125 * hx * hy * ht;
        },
        /*chunk=*/4);
}

}  // namespace horolab::sl2
