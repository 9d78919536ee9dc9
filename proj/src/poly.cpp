#include "horolab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "horolab/errors.hpp"

namespace horolab::poly {

Poly::Poly(int vars, std::vector<Term> terms) : vars_(vars), terms_(std::move(terms)) {
    for (const Term& t : terms_) {
        if (static_cast<int>(t.exp.size()) != vars_)
            throw std::domain_error("Poly: exponent arity mismatch");
        for (int e : t.exp)
            if (e < 0) throw std::domain_error("Poly: negative exponent");
    }
    normalize();
}

Poly Poly::constant(int vars, double c) {
    if (c == 0.0) return Poly(vars);
    return Poly(vars, {Term{std::vector<int>(static_cast<std::size_t>(vars), 0), c}});
}

Poly Poly::variable(int vars, int index) {
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    e.at(static_cast<std::size_t>(index)) = 1;
    return Poly(vars, {Term{std::move(e), 1.0}});
}

Poly Poly::monomial(int vars, std::vector<int> exp, double coeff) {
    return Poly(vars, {Term{std::move(exp), coeff}});
}

int Poly::degree() const {
    int d = 0;
    for (const Term& t : terms_) {
        int s = 0;
        for (int e : t.exp) s += e;
        d = std::max(d, s);
    }
    return d;
}

double Poly::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != vars_) throw std::domain_error("Poly::eval: arity mismatch");
    double sum = 0.0;
    for (const Term& t : terms_) {
        double v = t.coeff;
        for (int i = 0; i < vars_; ++i) {
            const int e = t.exp[static_cast<std::size_t>(i)];
            for (int k = 0; k < e; ++k) v *= x[static_cast<std::size_t>(i)];
        }
        sum += v;
    }
    return sum;
}

Poly Poly::partial(int var) const {
    Poly out(vars_);
    for (const Term& t : terms_) {
        const int e = t.exp[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Term d = t;
        d.coeff *= e;
        d.exp[static_cast<std::size_t>(var)] = e - 1;
        out.terms_.push_back(std::move(d));
    }
    out.normalize();
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (vars_ == 0 && terms_.empty()) vars_ = o.vars_;
    if (o.vars_ != vars_) throw std::domain_error("Poly: arity mismatch");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Poly& Poly::operator*=(double s) {
    for (Term& t : terms_) t.coeff *= s;
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.vars_ != b.vars_) throw std::domain_error("Poly: arity mismatch");
    Poly out(a.vars_);
    for (const Term& ta : a.terms_)
        for (const Term& tb : b.terms_) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.exp.resize(ta.exp.size());
            for (std::size_t i = 0; i < t.exp.size(); ++i) t.exp[i] = ta.exp[i] + tb.exp[i];
            out.terms_.push_back(std::move(t));
        }
    out.normalize();
    return out;
}

void Poly::normalize() {
    std::map<std::vector<int>, double> acc;
    for (Term& t : terms_) acc[t.exp] += t.coeff;
    terms_.clear();
    for (auto& [exp, c] : acc)
        if (c != 0.0) terms_.push_back(Term{exp, c});
}

MatX MatX::identity(int n) {
    MatX m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

MatX MatX::transpose() const {
    MatX t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatX operator*(const MatX& x, const MatX& y) {
    if (x.cols != y.rows) throw std::domain_error("MatX: shape mismatch");
    MatX out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += v * y(k, j);
        }
    return out;
}

double MatX::max_asymmetry() const {
    if (rows != cols) throw std::domain_error("max_asymmetry: square matrices only");
    double m = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

double det(MatX m) {
    if (m.rows != m.cols) throw std::domain_error("det: square matrices only");
    const int n = m.rows;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

std::vector<double> jacobi_eigenvalues(MatX h, double off_tol, int max_sweeps) {
    if (h.rows != h.cols) throw std::domain_error("jacobi_eigenvalues: square matrices only");
    const int n = h.rows;
    double scale = 0.0;
    for (double v : h.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
    const double tol = off_tol * scale;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += h(p, q) * h(p, q);
        if (std::sqrt(2.0 * off) <= tol) {
            std::vector<double> eig(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = h(i, i);
            return eig;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = h(p, q);
                if (std::abs(apq) <= tol * 1e-4) continue;
                const double theta = (h(q, q) - h(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double hkp = h(k, p), hkq = h(k, q);
                    h(k, p) = c * hkp - s * hkq;
                    h(k, q) = s * hkp + c * hkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double hpk = h(p, k), hqk = h(q, k);
                    h(p, k) = c * hpk - s * hqk;
                    h(q, k) = s * hpk + c * hqk;
                }
            }
    }
    throw InternalError("jacobi_eigenvalues: no convergence within sweep cap");
}

}  // namespace horolab::poly
