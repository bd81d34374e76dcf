#pragma once

#include <string>
#include <vector>

#include "momentinfo/moments.hpp"
#include "momentinfo/polyring.hpp"

namespace momentinfo {

/// Cross moments E[X Y^k], k = 0..n, plus E[X^2].
struct CrossMoments {
    std::vector<double> e_xy;
    double e_x2 = 0.0;
};

/// Coefficients c_0..c_n of the degree-n least-squares estimate of X from Y.
struct PmmseEstimate {
    int n = 0;
    std::vector<double> coeffs;

    double eval(double y) const;
};

/// pmmse_n(X,t) as a ratio of polynomials in the SNR t, normalized so the
/// denominator's constant term is 1. Denominator degree d_n = C(n+1,2);
/// numerator degree <= d_n - 1 (the t^{d_n} coefficient vanishes and is
/// truncated). For inputs with |supp| <= n the leading coefficients vanish
/// and the effective degrees drop; effective_* record what remains.
struct PmmseRational {
    int n = 0;
    int d_n = 0;
    Polynomial num;  // in t
    Polynomial den;  // in t, coeff(0) == 1
    double sigma2 = 0.0;
    double truncated_top_coeff = 0.0;  // |a^{n,d_n}| relative to max|num|, diagnostic
    int effective_num_degree = 0;
    int effective_den_degree = 0;

    double value_at(double t) const { return rational_eval(num, den, t); }
};

inline int pairs_degree(int n) { return n * (n + 1) / 2; }  // d_n = C(n+1,2)

PmmseEstimate pmmse_estimate(const CrossMoments& cm, const HankelMatrix& H);

double pmmse_value(const CrossMoments& cm, const HankelMatrix& H);

/// Moment matrix of sX + N as polynomials in s: entry (i,j) has coefficient
/// of s^k equal to C(i+j,k) mu_k E[N^{i+j-k}].
PolyMatrix channel_poly_matrix(const MomentVector& mv, int n);

/// Exact rational pmmse_n(X,t). Denominator from the channel moment matrix
/// determinant; numerator from the bordered determinant det E[Z Z^T] with
/// Z = (1, Y, ..., Y^n, X), Y = sX + N.
PmmseRational channel_rational(const MomentVector& mv, int n);

/// pmmse_n(X,t) by a single numeric linear solve at this t.
double channel_pmmse_at(const MomentVector& mv, int n, double t);

/// Pointwise-stable evaluation of the channel quantities entering the
/// entropy integrand: pmmse_n(X,t) and d/dt log det M(t) from one Cholesky
/// factorization per t. Unlike the global polynomial coefficients, these
/// stay accurate at every n the Hankel factorization supports.
class ScalarChannel {
public:
    ScalarChannel(const MomentVector& mv, int n);
    void evaluate(double t, double* pmmse, double* logdet_deriv) const;
    int degree() const { return d_n_; }

private:
    int n_, d_n_;
    double mu2_;
    std::vector<double> mu_;  // mu_0..mu_2n
};

MomentVector affine_transform_moments(const MomentVector& mv, double a, double b);

inline int multivariate_degree(int n, int m) {
    // d_{n,m} = m * C(n+m, m+1)
    double v = binomial(n + m, m + 1);
    return m * static_cast<int>(v + 0.5);
}

inline constexpr int kMultivariateBasisCap = 100;

/// Numeric evaluation of moment matrices of sqrt(t) V + N over the monomial
/// basis of total degree <= n, plus the quantities pmmse_n(V,t) and
/// d/dt log det M(t) needed by the entropy integrands. Expansions over the
/// moment table are precomputed once; per-t evaluation is a table walk plus
/// one Cholesky factorization.
class MultivariateChannel {
public:
    MultivariateChannel(const MultiMomentTable& table, int n, int m);

    int basis_size() const { return static_cast<int>(basis_.size()); }
    int degree() const { return d_nm_; }
    double trace_sigma() const { return trace_sigma_; }

    double pmmse_at(double t) const;
    double logdet_derivative_at(double t) const;
    /// Both quantities from one factorization of M(t).
    void evaluate(double t, double* pmmse, double* logdet_deriv) const;
    /// log det M(t) (used for the multivariate entropy constant at t = 0).
    double logdet_at(double t) const;

private:
    struct Term {
        double coeff;    // prod C(gamma_j, k_j) * prod E[N^{gamma_j - k_j}]
        int half_power;  // |k|: power of s = sqrt(t)
        double moment;   // E[prod V^{k}]
    };
    std::vector<double> entry_eval(double s) const;   // M(t) row-major
    std::vector<double> entry_deriv(double t) const;  // dM/dt row-major

    int n_, m_, d_nm_;
    double trace_sigma_;
    std::vector<std::vector<int>> basis_;
    std::vector<std::vector<Term>> entry_terms_;              // per (i,j), i <= j
    std::vector<std::vector<std::vector<Term>>> cross_terms_; // per coordinate, per basis row
    std::vector<double> coord_second_moment_;
};

double multivariate_channel_pmmse_at(const MultiMomentTable& table, int n, int m, double t);

double logdet_derivative_at(const MultiMomentTable& table, int n, int m, double t);

} // namespace momentinfo
