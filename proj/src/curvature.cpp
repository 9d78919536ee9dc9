#include "horolab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "horolab/parallel.hpp"
#include "horolab/rng.hpp"

namespace horolab::curvature {

namespace {

poly::MatX matpow_step(const poly::MatX& a, const poly::MatX& h) { return a * h; }

double trace(const poly::MatX& a) {
    double t = 0.0;
    for (int i = 0; i < a.rows; ++i) t += a(i, i);
    return t;
}

// coarse unit-sphere grid in R^n (n in [2,4])
std::vector<std::vector<double>> sphere_grid(int n, int points) {
    std::vector<std::vector<double>> out;
    if (n == 2) {
        for (int k = 0; k < points; ++k) {
            const double th = 2.0 * std::numbers::pi * k / points;
            out.push_back({std::cos(th), std::sin(th)});
        }
    } else if (n == 3) {
        // Fibonacci sphere
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < points; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / points;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            out.push_back({r * std::cos(ga * k), r * std::sin(ga * k), z});
        }
    } else {
        // product grid in spherical angles
        const int P = std::max(4, static_cast<int>(std::cbrt(double(points))) + 1);
        for (int i = 0; i < P; ++i)
            for (int j = 0; j < P; ++j)
                for (int k = 0; k < 2 * P; ++k) {
                    const double t1 = std::numbers::pi * (i + 0.5) / P;
                    const double t2 = std::numbers::pi * (j + 0.5) / P;
                    const double t3 = std::numbers::pi * k / P;
                    out.push_back({std::cos(t1), std::sin(t1) * std::cos(t2),
                                   std::sin(t1) * std::sin(t2) * std::cos(t3),
                                   std::sin(t1) * std::sin(t2) * std::sin(t3)});
                }
    }
    return out;
}

void normalize_unit(std::vector<double>& z) {
    double s = 0.0;
    for (double v : z) s += v * v;
    s = std::sqrt(s);
    for (double& v : z) v /= s;
}

SphereMin sphere_minimize(int n, const std::function<double(std::span<const double>)>& obj,
                          const SphereSearchConfig& cfg) {
    if (n > 4) throw std::domain_error("sphere search unsupported for n > 4");
    SphereMin out;
    if (n == 1) {
        out.argmin_z = {1.0};
        out.value = obj(out.argmin_z);
        return out;
    }
    const auto grid = sphere_grid(n, cfg.grid_points);
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> bz;
    for (const auto& z : grid) {
        const double v = obj(z);
        if (v < best) {
            best = v;
            bz = z;
        }
    }
    const double coarse = best;
    // coordinate descent on the sphere with a shrinking step
    double step = 4.0 / std::sqrt(double(cfg.grid_points));
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        bool moved = false;
        for (int i = 0; i < n; ++i)
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> z = bz;
                z[static_cast<std::size_t>(i)] += sgn * step;
                normalize_unit(z);
                const double v = obj(z);
                if (v < best) {
                    best = v;
                    bz = z;
                    moved = true;
                }
            }
        if (!moved) step *= 0.6;
    }
    out.value = best;
    out.argmin_z = bz;
    out.refinement_moved = coarse - best > cfg.flag_threshold * std::max(std::abs(coarse), 1e-12);
    return out;
}

}  // namespace

CharPolyCoeffs char_poly_coeffs(const poly::MatX& H) {
    if (H.rows != H.cols) throw std::domain_error("char_poly_coeffs: square matrices only");
    if (H.max_asymmetry() > 1e-9) throw std::domain_error("char_poly_coeffs: H not symmetric");
    const int m = H.rows;
    // power traces p_k = tr(H^k), then Newton's identities for e_k
    std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
    poly::MatX Hk = H;
    for (int k = 1; k <= m; ++k) {
        p[static_cast<std::size_t>(k)] = trace(Hk);
        if (k < m) Hk = matpow_step(Hk, H);
    }
    std::vector<double> e(static_cast<std::size_t>(m) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i)
            acc += (i % 2 == 1 ? 1.0 : -1.0) * e[static_cast<std::size_t>(k - i)] *
                   p[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    CharPolyCoeffs out;
    out.s.resize(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k)
        out.s[static_cast<std::size_t>(m - k)] = (k % 2 == 0 ? 1.0 : -1.0) * e[static_cast<std::size_t>(k)];
    return out;
}

std::vector<double> eigen_abs_sorted(const poly::MatX& H) {
    if (H.max_asymmetry() > 1e-9) throw std::domain_error("eigen_abs_sorted: H not symmetric");
    std::vector<double> eig = poly::jacobi_eigenvalues(H);
    for (double& v : eig) v = std::abs(v);
    std::sort(eig.begin(), eig.end());
    return eig;
}

SphereMin e_star(const submanifold::PolyGraphMap& map, std::span<const double> t,
                 const SphereSearchConfig& cfg) {
    const int n = map.n();
    const int idx = std::min(n, map.m()) - 1;
    return sphere_minimize(n, [&](std::span<const double> z) {
        return eigen_abs_sorted(map.hessian_z(z, t))[static_cast<std::size_t>(idx)];
    }, cfg);
}

SphereMin coeff_system_min(const submanifold::PolyGraphMap& map, std::span<const double> t,
                           const SphereSearchConfig& cfg) {
    const int n = map.n();
    const int top = std::min(n, map.m());
    return sphere_minimize(n, [&](std::span<const double> z) {
        const CharPolyCoeffs c = char_poly_coeffs(map.hessian_z(z, t));
        double acc = 0.0;
        for (int j = 0; j < top; ++j)
            acc += c.s[static_cast<std::size_t>(j)] * c.s[static_cast<std::size_t>(j)];
        return acc;
    }, cfg);
}

int primitive_dimension(const submanifold::PolyGraphMap& map, std::span<const double> t) {
    const int m = map.m(), d = map.d();
    if (d > 12) throw std::domain_error("primitive_dimension: d > 12 unsupported");
    // component gradients: e_i for the chart block, grad w_r above it
    std::vector<std::vector<double>> v(static_cast<std::size_t>(d),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    for (int r = 0; r < map.n(); ++r)
        for (int i = 0; i < m; ++i)
            v[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(i)] =
                map.grad(r, i).eval(t);

    auto subset_full_rank = [&](const std::vector<int>& sel) {
        const int k = static_cast<int>(sel.size());
        poly::MatX G(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                double dot = 0.0;
                for (int i = 0; i < m; ++i)
                    dot += v[static_cast<std::size_t>(sel[static_cast<std::size_t>(a)])]
                            [static_cast<std::size_t>(i)] *
                           v[static_cast<std::size_t>(sel[static_cast<std::size_t>(b)])]
                            [static_cast<std::size_t>(i)];
                G(a, b) = dot;
            }
        const std::vector<double> eig = eigen_abs_sorted(G);
        return eig.front() > 1e-8;
    };

    int best = 0;
    for (int k = 1; k <= m; ++k) {
        // all k-subsets of {0..d-1} via a selection mask
        std::vector<int> sel(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) sel[static_cast<std::size_t>(i)] = i;
        bool all_ok = true;
        while (true) {
            if (!subset_full_rank(sel)) {
                all_ok = false;
                break;
            }
            int i = k - 1;
            while (i >= 0 && sel[static_cast<std::size_t>(i)] == d - k + i) --i;
            if (i < 0) break;
            ++sel[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
        }
        if (!all_ok) break;
        best = k;
    }
    return best;
}

RegionSummary certify_region(const submanifold::PolyGraphMap& map,
                             const std::vector<std::vector<double>>& grid, double delta,
                             const SphereSearchConfig& cfg) {
    RegionSummary out;
    out.reports.resize(grid.size());
    par::for_each_chunk(static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
        const auto& t = grid[static_cast<std::size_t>(i)];
        CurvatureReport r;
        r.t = t;
        const SphereMin es = e_star(map, t, cfg);
        r.e_star = es.value;
        r.argmin_z = es.argmin_z;
        r.refinement_flag = es.refinement_moved;
        const SphereMin cm = coeff_system_min(map, t, cfg);
        r.coeff_system_min = cm.value;
        r.refinement_flag = r.refinement_flag || cm.refinement_moved;
        r.delta = delta;
        r.is_delta_curved = r.e_star > delta;
        r.primitive_dim = primitive_dimension(map, t);
        out.reports[static_cast<std::size_t>(i)] = std::move(r);
    });
    std::size_t bad = 0;
    for (const auto& r : out.reports)
        if (!r.is_delta_curved) ++bad;
    out.non_curved_fraction = grid.empty() ? 0.0 : double(bad) / double(grid.size());
    return out;
}

SublevelFit sublevel_exponent(const poly::Poly& u, std::vector<double> deltas,
                              std::int64_t samples, std::uint64_t seed) {
    if (u.is_zero()) throw std::domain_error("sublevel_exponent: u is identically zero");
    if (deltas.empty() || samples < 1)
        throw std::domain_error("sublevel_exponent: empty delta grid or no samples");
    std::sort(deltas.begin(), deltas.end());
    const int m = u.vars();
    const rng::Stream s(seed, "curvature.sublevel");

    struct Counts {
        std::vector<std::int64_t> c;
        Counts& operator+=(const Counts& o) {
            if (c.empty()) c = o.c;
            else
                for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
            return *this;
        }
    };
    const Counts counts = par::chunked_sum<Counts>(samples, [&](std::int64_t i) {
        std::vector<double> x(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            x[static_cast<std::size_t>(k)] =
                2.0 * s.uniform(static_cast<std::uint64_t>(i), static_cast<std::uint32_t>(k)) - 1.0;
        const double val = std::abs(u.eval(x));
        Counts out;
        out.c.assign(deltas.size(), 0);
        for (std::size_t j = 0; j < deltas.size(); ++j)
            if (val < deltas[j]) out.c[j] = 1;
        return out;
    });

    SublevelFit fit;
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (counts.c[j] < 100) continue;  // slope stability: too few hits
        const double frac = double(counts.c[j]) / double(samples);
        fit.deltas.push_back(deltas[j]);
        fit.fractions.push_back(frac);
        lx.push_back(std::log(deltas[j]));
        ly.push_back(std::log(frac));
    }
    if (lx.size() < 2) throw std::domain_error("sublevel_exponent: not enough resolved deltas");
    const fit::SlopeFit sf = fit::fit_slope(lx, ly);
    fit.exponent = sf.slope;
    fit.residual = sf.residual;
    return fit;
}

DiagonalizationResult analytic_diagonalize(const std::vector<double>& lambda,
                                           const std::vector<poly::Poly>& phi, double delta,
                                           const std::vector<double>& x) {
    const int l = static_cast<int>(lambda.size());
    if (l < 1) throw std::domain_error("analytic_diagonalize: empty system");
    if (static_cast<int>(phi.size()) != l * l)
        throw std::domain_error("analytic_diagonalize: phi must be l x l row-major");
    if (static_cast<int>(x.size()) != l)
        throw std::domain_error("analytic_diagonalize: point dimension mismatch");
    double gamma = std::numeric_limits<double>::infinity();
    for (double lv : lambda) gamma = std::min(gamma, std::abs(lv));
    if (!(gamma > 0.0)) throw std::domain_error("analytic_diagonalize: lambda has a zero entry");

    using Fn = std::function<double(std::span<const double>)>;
    auto at = [l](int i, int j) { return static_cast<std::size_t>(i) * l + j; };

    // stage[i] holds the phi family before eliminating coordinate i; each
    // completing-the-square step rewrites the lower-right block in terms of
    // the previous stage (closures over the original point)
    std::vector<std::vector<Fn>> stage(static_cast<std::size_t>(l));
    stage[0].resize(static_cast<std::size_t>(l * l));
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            const poly::Poly p = phi[at(i, j)];
            if (!p.is_zero() && p.vars() != l)
                throw std::domain_error("analytic_diagonalize: phi arity mismatch");
            stage[0][at(i, j)] = [p](std::span<const double> v) {
                return p.is_zero() ? 0.0 : p.eval(v);
            };
        }
    for (int i = 0; i + 1 < l; ++i) {
        stage[static_cast<std::size_t>(i + 1)].resize(static_cast<std::size_t>(l * l));
        const auto& prev = stage[static_cast<std::size_t>(i)];
        const double li = lambda[static_cast<std::size_t>(i)];
        const Fn pii = prev[at(i, i)];
        for (int j = i + 1; j < l; ++j)
            for (int k = j; k < l; ++k) {
                const Fn pjk = prev[at(j, k)], pij = prev[at(i, j)], pik = prev[at(i, k)];
                const double half = (j == k) ? 0.5 : 1.0;
                stage[static_cast<std::size_t>(i + 1)][at(j, k)] =
                    [=](std::span<const double> v) {
                        return pjk(v) -
                               half * delta * pij(v) * pik(v) / (li + 2.0 * delta * pii(v));
                    };
            }
    }

    auto apply = [&](std::span<const double> pt) {
        std::vector<double> y(static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i) {
            const auto& fam = stage[static_cast<std::size_t>(i)];
            const double li = lambda[static_cast<std::size_t>(i)];
            const double denom = li + 2.0 * delta * fam[at(i, i)](pt);
            if (std::abs(denom) < 0.5 * gamma || denom / li <= 0.0)
                throw std::domain_error("analytic_diagonalize: delta too large");
            double cross = 0.0;
            for (int j = i + 1; j < l; ++j)
                cross += pt[static_cast<std::size_t>(j)] * fam[at(i, j)](pt);
            const double xstar = pt[static_cast<std::size_t>(i)] + delta * cross / denom;
            y[static_cast<std::size_t>(i)] = xstar * std::sqrt(denom / li);
        }
        return y;
    };

    DiagonalizationResult out;
    out.x = x;
    out.y = apply(x);

    double F = 0.0;
    for (int i = 0; i < l; ++i) {
        F += lambda[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] *
             x[static_cast<std::size_t>(i)];
        for (int j = i; j < l; ++j)
            F += 2.0 * delta * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] *
                 stage[0][at(i, j)](x);
    }
    double Q = 0.0;
    for (int i = 0; i < l; ++i)
        Q += lambda[static_cast<std::size_t>(i)] * out.y[static_cast<std::size_t>(i)] *
             out.y[static_cast<std::size_t>(i)];
    out.residual = std::abs(F - Q);

    const double h = 1e-6;
    poly::MatX J(l, l);
    for (int j = 0; j < l; ++j) {
        std::vector<double> xp = x, xm = x;
        xp[static_cast<std::size_t>(j)] += h;
        xm[static_cast<std::size_t>(j)] -= h;
        const std::vector<double> yp = apply(xp), ym = apply(xm);
        for (int i = 0; i < l; ++i)
            J(i, j) = (yp[static_cast<std::size_t>(i)] - ym[static_cast<std::size_t>(i)]) /
                      (2.0 * h);
    }
    out.jacobian_det = poly::det(J);
    return out;
}

}  // namespace horolab::curvature
