#pragma once

#include <functional>
#include <vector>

#include "momentinfo/pmmse.hpp"
#include "momentinfo/quadrature.hpp"

namespace momentinfo {

/// Entropy value in nats with its split into the closed-form log-det part and
/// the quadrature part. value = logdet_part + integral_part + sum log(scale).
struct EntropyEstimate {
    double value = 0.0;
    int n = 0;
    double logdet_part = 0.0;
    double integral_part = 0.0;
    double quad_err = 0.0;
    std::vector<Standardization> standardization;  // per coordinate; empty = identity

    double log_scale_total() const;
};

/// The stabilized entropy integrand rho(t) = (num(t) - den'(t)/d_n) / (2 den(t)),
/// which vanishes at 0 and decays like 1/t^2, plus the closed-form constant
/// (1/2) log(2 pi e (det M_X / det M_N)^(1/d_n)). The numerator difference is
/// formed coefficientwise: its constant and leading terms cancel exactly in
/// theory, so float residues there are zeroed to keep the t^-2 tail clean.
struct RhoFunction {
    PmmseRational rational;
    Polynomial rho_num;  // num - den'/d_n, residue-cleaned
    double logdet_constant = 0.0;

    double operator()(double t) const {
        return 0.5 * rational_eval(rho_num, rational.den, t);
    }
};

RhoFunction rho(const MomentVector& mv, int n);

EntropyEstimate h_n_from_moments(const MomentVector& mv, int n, const QuadConfig& cfg = {});

EntropyEstimate h_hat(std::span<const double> samples, int n, const QuadConfig& cfg = {});

/// Multivariate h_n over the degree-n monomial basis. The caller standardizes
/// per coordinate; the integrand is (1/2)(pmmse(t) - (m/d_{n,m}) d/dt log det M(t)).
EntropyEstimate h_n_multivariate(const MultiMomentTable& table, int n, int m,
                                 const QuadConfig& cfg = {});

EntropyEstimate h_hat_multivariate(const std::vector<std::vector<double>>& samples,
                                   int n, int m, const QuadConfig& cfg = {});

} // namespace momentinfo
