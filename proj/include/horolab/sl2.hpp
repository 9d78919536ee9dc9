#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace horolab::sl2 {

// Unit-determinant 2x2 real matrix.  Constructors and products validate
// |det - 1| against the structural tolerance.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_);

    double det() const { return a * d - b * c; }
    double frob_sq() const { return a * a + b * b + c * c + d * d; }
    double frob() const;
    double op_norm() const;      // largest singular value
    double op_norm_inv() const;  // smallest singular value
    Mat2 inverse() const { return Mat2(d, -b, -c, a); }
    Mat2 transpose() const { return Mat2(a, c, b, d); }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                    x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
};

double frob_dist(const Mat2& x, const Mat2& y);
bool approx_equal(const Mat2& x, const Mat2& y, double tol);

Mat2 make_a(double y);  // diag(sqrt(y), 1/sqrt(y)), y > 0
Mat2 make_u(double t);  // lower unipotent [[1,0],[t,1]]
Mat2 make_n(double x);  // upper unipotent [[1,x],[0,1]]
Mat2 make_k(double theta);  // rotation

// Moebius action z -> (az+b)/(cz+d) on the upper half-plane.
std::complex<double> moebius(const Mat2& g, std::complex<double> z);

struct IwasawaCoords {
    double x = 0;
    double y = 1;      // > 0
    double theta = 0;  // [0, 2pi)
};

// g = n(x) a(y) k(theta)
IwasawaCoords iwasawa_decompose(const Mat2& g);
Mat2 iwasawa_recompose(const IwasawaCoords& c);

// Integer unimodular matrix, exact arithmetic.
struct MatZ {
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    MatZ() = default;
    MatZ(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : a(a_), b(b_), c(c_), d(d_) {}
    std::int64_t det() const { return a * d - b * c; }
    Mat2 to_mat2() const { return Mat2(double(a), double(b), double(c), double(d)); }
    friend MatZ operator*(const MatZ& x, const MatZ& y) {
        return MatZ(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                    x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
    friend bool operator==(const MatZ&, const MatZ&) = default;
};

struct ReducedPoint {
    Mat2 rep;                   // g * gamma
    MatZ gamma;                 // integer unimodular
    std::complex<double> z;     // fundamental-domain point of the coset (see reduce)
};

// Reduces the coset g SL2(Z): finds gamma with the hyperbolic point
// z = (g gamma)^{-1} . i in the closed fundamental domain
// |Re z| <= 1/2, |z| >= 1.  Right multiplication by T^n translates that point,
// by S inverts it, which is what the classical algorithm needs.
ReducedPoint reduce(const Mat2& g);

// All gamma in SL2(Z) with ||g * gamma||_F <= R, in lexicographic (a,b,c,d) order.
std::vector<MatZ> lattice_enumerate(const Mat2& g, double R);

// min over gamma of ||g * gamma||_F; always >= sqrt(2).
double quotient_norm(const Mat2& g);

struct IwasawaBox {
    double x0 = 0, x1 = 1;
    double y0 = 1, y1 = 2;
    double th0 = 0, th1 = 1;
};

// Tensor Gauss-Legendre quadrature of F over the box in Iwasawa coordinates
// with Haar weight y^{-2} dx dy dtheta; resolution = panels per dimension.
double haar_integrate_sl2(const std::function<double(const Mat2&)>& F, const IwasawaBox& box,
                          int resolution);

}  // namespace horolab::sl2
