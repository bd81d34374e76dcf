#pragma once

#include <string>
#include <vector>

#include "momentinfo/entropy.hpp"

namespace momentinfo {

/// Conditional moment data for a discrete-continuous pair: one moment vector
/// per class of X, plus the marginal moments of Y. A class may be recorded in
/// its own affine frame (Y|X=x = scale * Z + shift with mv the moments of Z);
/// sample-built classes stay well-conditioned that way, and the frame is
/// undone exactly through the shift-invariance and scale-equivariance of the
/// determinant and of rho.
struct DiscreteClass {
    std::string label;
    double weight = 0.0;
    MomentVector mv;
    double shift = 0.0;
    double scale = 1.0;
};

struct DiscreteConditionalMoments {
    std::vector<DiscreteClass> classes;
    MomentVector marginal;

    void validate() const;  // weights positive and sum to 1, orders match
};

struct ClassDiagnostic {
    std::string label;
    double weight = 0.0;
    double logdet = 0.0;  // log det of the class Hankel matrix (standardized scale)
};

struct MiEstimate {
    double value = 0.0;
    int n = 0;
    double logdet_part = 0.0;
    double integral_part = 0.0;
    double quad_err = 0.0;
    double filtered_fraction = 0.0;
    std::vector<ClassDiagnostic> per_class;
};

/// I_n(X;Y) for discrete X, continuous Y via the log-det + integral split:
/// (1/(n(n+1))) log(det M_Y / prod det M_{Y(x)}^{P(x)}) + int (rho_Y - E_X rho_{Y(X)}).
MiEstimate i_n_discrete(const DiscreteConditionalMoments& dcm, int n,
                        const QuadConfig& cfg = {});

/// Plug-in estimator: drops labels occurring at most n times, re-normalizes
/// empirical weights over the filtered set, standardizes Y globally.
MiEstimate i_hat(const std::vector<std::pair<std::string, double>>& labeled_samples,
                 int n, const QuadConfig& cfg = {});

/// Continuous-continuous I_n = h_n(X) + h_n(Y) - h_n((X,Y)). Default degree 3
/// keeps the joint basis small (10 elements for m = 2).
MiEstimate i_n_continuous(const MomentVector& x_mv, const MomentVector& y_mv,
                          const MultiMomentTable& joint, int n = 3,
                          const QuadConfig& cfg = {});

/// Joint-moment table of (a_j V_j + b_j) from the table of V (binomial expansion).
MultiMomentTable affine_transform_table(const MultiMomentTable& table,
                                        const std::vector<double>& a,
                                        const std::vector<double>& b);

} // namespace momentinfo
