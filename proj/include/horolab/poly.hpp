#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace horolab::poly {

// Sparse multivariate polynomial: sum of coeff * prod x_i^{exp_i}.
struct Term {
    std::vector<int> exp;  // one exponent per variable
    double coeff = 0.0;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(int vars) : vars_(vars) {}
    Poly(int vars, std::vector<Term> terms);

    static Poly constant(int vars, double c);
    static Poly variable(int vars, int index);  // x_index
    static Poly monomial(int vars, std::vector<int> exp, double coeff);

    int vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    double eval(std::span<const double> x) const;
    Poly partial(int var) const;

    Poly& operator+=(const Poly& o);
    Poly& operator*=(double s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, double s) { return a *= s; }

private:
    void normalize();
    int vars_ = 0;
    std::vector<Term> terms_;
};

// Small dense matrix, row-major.
struct MatX {
    int rows = 0, cols = 0;
    std::vector<double> a;

    MatX() = default;
    MatX(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    static MatX identity(int n);
    MatX transpose() const;
    friend MatX operator*(const MatX& x, const MatX& y);
    double max_asymmetry() const;  // for square matrices
};

// det via LU with partial pivoting (small matrices)
double det(MatX m);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations; throws
// InternalError if the off-diagonal norm does not reach the tolerance.
std::vector<double> jacobi_eigenvalues(MatX h, double off_tol = 1e-12, int max_sweeps = 64);

}  // namespace horolab::poly
