#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "horolab/fit.hpp"
#include "horolab/poly.hpp"
#include "horolab/submanifold.hpp"

namespace horolab::curvature {

// coefficients of det(lambda I - H): s[j] multiplies lambda^j, leading 1 implicit
struct CharPolyCoeffs {
    std::vector<double> s;
};

CharPolyCoeffs char_poly_coeffs(const poly::MatX& H);

// absolute values of the eigenvalues, ascending: beta_1 <= ... <= beta_m
std::vector<double> eigen_abs_sorted(const poly::MatX& H);

struct SphereSearchConfig {
    int grid_points = 2048;   // coarse unit-sphere grid (n >= 2)
    int refine_rounds = 40;   // coordinate-descent refinement passes
    double flag_threshold = 0.10;  // refinement moving the value by more flags the report
};

struct SphereMin {
    double value = 0.0;
    std::vector<double> argmin_z;
    bool refinement_moved = false;
};

// min over unit z of beta_n(H_z(t)); upper bound from grid + refinement
SphereMin e_star(const submanifold::PolyGraphMap& map, std::span<const double> t,
                 const SphereSearchConfig& cfg = {});

// min over unit z of sum_{j<n} s_j(H_z(t))^2
SphereMin coeff_system_min(const submanifold::PolyGraphMap& map, std::span<const double> t,
                           const SphereSearchConfig& cfg = {});

// maximal k such that every k-subset of the d component gradients has rank k
int primitive_dimension(const submanifold::PolyGraphMap& map, std::span<const double> t);

struct CurvatureReport {
    std::vector<double> t;
    double e_star = 0.0;
    std::vector<double> argmin_z;
    double coeff_system_min = 0.0;
    double delta = 0.0;
    bool is_delta_curved = false;
    int primitive_dim = 0;
    bool refinement_flag = false;
};

struct RegionSummary {
    std::vector<CurvatureReport> reports;
    double non_curved_fraction = 0.0;
};

RegionSummary certify_region(const submanifold::PolyGraphMap& map,
                             const std::vector<std::vector<double>>& grid, double delta,
                             const SphereSearchConfig& cfg = {});

struct SublevelFit {
    std::vector<double> deltas;     // kept delta values
    std::vector<double> fractions;  // MC fraction with |u| < delta
    double exponent = 0.0;          // slope of log fraction vs log delta
    double residual = 0.0;
};

SublevelFit sublevel_exponent(const poly::Poly& u, std::vector<double> deltas,
                              std::int64_t samples, std::uint64_t seed = 0);

struct DiagonalizationResult {
    std::vector<double> x;
    std::vector<double> y;
    double residual = 0.0;      // |F(x) - sum lambda_i y_i^2|
    double jacobian_det = 0.0;  // finite-difference det D(psi)(x)
};

// F(x) = sum lambda_i x_i^2 + 2 delta sum_{i<=j} x_i x_j phi_ij(x); phi passed
// row-major l x l, entries with i <= j used.  Throws domain_error when a
// completing-the-square denominator drops below half the spectral gap.
DiagonalizationResult analytic_diagonalize(const std::vector<double>& lambda,
                                           const std::vector<poly::Poly>& phi, double delta,
                                           const std::vector<double>& x);

}  // namespace horolab::curvature
