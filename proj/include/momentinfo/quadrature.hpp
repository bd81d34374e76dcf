#pragma once

#include <functional>

#include "momentinfo/errors.hpp"

namespace momentinfo {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    int panel_order = 15;  // nested Gauss-Kronrod 7-15
    // Integrands here decay like C/t^2 + D/t^3; past this point the tail is
    // completed from that model instead of sampling f where float noise in
    // the C/t^2 term would dominate. 0 disables the completion.
    double tail_model_start = 1e6;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

/// Integrates f over [0, inf) for integrands decaying at least O(t^-2),
/// via the substitution t = u/(1-u) and adaptive bisection on [0,1) with
/// nested 7-15 panels. Deterministic; throws QuadratureFailure (carrying the
/// partial value) when the subdivision budget runs out.
QuadResult integrate_halfline(const std::function<double(double)>& f,
                              const QuadConfig& cfg = {});

/// Adaptive integration over a finite interval [a, b] (same rule).
QuadResult integrate_finite(const std::function<double(double)>& f,
                            double a, double b, const QuadConfig& cfg = {});

} // namespace momentinfo
