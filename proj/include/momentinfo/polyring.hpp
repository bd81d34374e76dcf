#pragma once

#include <vector>

#include "momentinfo/errors.hpp"

namespace momentinfo {

/// Variable tag: S for the channel variable s = sqrt(t), T for the SNR t.
enum class Var { S, T };

/// Dense univariate polynomial, coefficients in increasing degree order.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Var var, std::vector<double> coeffs);
    static Polynomial constant(Var var, double c);

    Var var() const { return var_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const;
    bool is_zero() const { return coeffs_.empty(); }
    double max_abs_coeff() const;
    /// Highest index with |coeff| above tol * max_abs_coeff (-1 if none).
    int effective_degree(double rel_tol) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(double c) const;
    Polynomial derivative() const;
    double eval(double x) const;
    /// sum c_k w^(degree - k): the reversed-coefficient value, so that
    /// p(t) = t^degree * eval_reversed(1/t).
    double eval_reversed(double w) const;

private:
    void trim();
    Var var_ = Var::T;
    std::vector<double> coeffs_;  // empty means the zero polynomial
};

/// Square matrix of polynomials sharing one variable tag.
struct PolyMatrix {
    int size = 0;
    Var var = Var::S;
    std::vector<Polynomial> entries;  // row-major

    const Polynomial& at(int i, int j) const { return entries[static_cast<size_t>(i) * size + j]; }
    Polynomial& at(int i, int j) { return entries[static_cast<size_t>(i) * size + j]; }
};

inline constexpr int kPolyMatDetCap = 13;

/// Determinant via dynamic-programming Laplace expansion over column subsets:
/// exact and division-free, O(2^k * k) polynomial operations for size k.
Polynomial polymat_det(const PolyMatrix& M);

/// Keeps even-degree coefficients of a polynomial in s, reindexed to t.
/// Odd residue above rel_tol * max|coeff| throws InternalConsistency.
Polynomial even_part(const Polynomial& p, double rel_tol = 1e-9);

/// num(t) / den(t), evaluated through 1/t beyond t = 1 so that high-degree
/// ratios stay finite where t^deg alone would overflow.
inline double rational_eval(const Polynomial& num, const Polynomial& den, double t) {
    if (t <= 1.0) return num.eval(t) / den.eval(t);
    const double w = 1.0 / t;
    double ratio = num.eval_reversed(w) / den.eval_reversed(w);
    for (int k = num.degree(); k < den.degree(); ++k) ratio *= w;
    return ratio;
}

} // namespace momentinfo
