#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "horolab/sl2.hpp"

namespace horolab::homspace {

// point of G = SL2(R)^d (or of G/Gamma, represented by any lift)
struct GElem {
    std::vector<sl2::Mat2> factors;
    int d() const { return static_cast<int>(factors.size()); }
};

GElem identity_elem(int d);
GElem a_y(int d, double y);                    // (a(y), ..., a(y))
GElem u_t(const std::vector<double>& t);       // factor j = u(t_j)
GElem translate(const GElem& g, const GElem& by);  // componentwise by_j * g_j

// smooth bump on SL2(R): amplitude * exp(profile * (1 - 1/(1 - s^2))) with
// s = frob_dist(g, center)/radius, supported in the Frobenius ball
struct AutoBumpFactor {
    sl2::Mat2 center;
    double radius = 0.4;
    double amplitude = 1.0;
    double profile = 1.0;

    double bump(const sl2::Mat2& g) const;
    // I(F)(g Gamma) = sum_gamma F(g gamma); reduces first, then enumerates
    double automorphized(const sl2::Mat2& g) const;
    // integral of the plain bump over SL2(R) (Haar, weight y^-2 dx dy dtheta)
    double full_integral() const;
};

// product of automorphized bump factors and constant-one factors
class FactorizableTestFn {
public:
    explicit FactorizableTestFn(std::vector<std::optional<AutoBumpFactor>> factors);

    int d() const { return static_cast<int>(factors_.size()); }
    const std::optional<AutoBumpFactor>& factor(int j) const {
        return factors_[static_cast<std::size_t>(j)];
    }
    double eval(const GElem& p) const;
    // exact Haar expectation on G/Gamma by unfolding, cached on construction
    double haar_integral() const { return haar_integral_; }

private:
    std::vector<std::optional<AutoBumpFactor>> factors_;
    double haar_integral_ = 1.0;
};

// covolume of SL2(Z) in SL2(R) under the y^-2 dx dy dtheta normalization:
// 2*pi * integral over the modular fundamental domain = 2*pi^2/3; cached
double covolume();

double haar_integral_quotient(const FactorizableTestFn& f);

// i.i.d. Haar points of G/Gamma, counter-indexed: point(i) is a pure function
// of (seed, i), so parallel consumers reproduce the serial stream
struct QuotientSampler {
    std::uint64_t seed = 0;
    int d = 1;

    GElem point(std::uint64_t index) const;
    std::vector<GElem> sample(std::uint64_t count) const;
};

// sampled lower bound on the S^j Sobolev norm: sum over monomials of degree
// <= j in the per-factor generators (geodesic flow a(e^s), the two unipotent
// flows) of the sup over sample points of central finite differences
double sobolev_estimate(const FactorizableTestFn& f, int j, std::span<const GElem> points,
                        double h = 1e-3);

}  // namespace horolab::homspace
