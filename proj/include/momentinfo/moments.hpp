#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "momentinfo/errors.hpp"

namespace momentinfo {

/// Raw moments mu_1..mu_{2n} of a scalar variable; mu_0 == 1 is implicit.
struct MomentVector {
    int order = 0;               // even, >= 2
    std::vector<double> values;  // values[k-1] = mu_k, k = 1..order

    double mu(int k) const;      // mu(0) == 1
};

/// Affine normalization x = scale * x' + shift with scale > 0.
struct Standardization {
    double shift = 0.0;
    double scale = 1.0;
};

/// (n+1)x(n+1) matrix with entries[i][j] = mu_{i+j}; symmetric, constant
/// skew-diagonals, positive semidefinite for genuine moment sequences.
struct HankelMatrix {
    int n = 0;
    std::vector<double> entries;  // row-major, (n+1)*(n+1)

    double at(int i, int j) const { return entries[static_cast<size_t>(i) * (n + 1) + j]; }
    double& at(int i, int j) { return entries[static_cast<size_t>(i) * (n + 1) + j]; }
    int size() const { return n + 1; }
};

/// Cholesky factorization H = L L^T of a symmetric positive-definite matrix,
/// with the determinant tracked in both linear and log space.
struct SymmetricFactor {
    int size = 0;
    std::vector<double> lower;  // row-major lower triangle (full storage)
    double det = 0.0;
    double logdet = 0.0;

    double at(int i, int j) const { return lower[static_cast<size_t>(i) * size + j]; }
    /// Solves (L L^T) x = b.
    std::vector<double> solve(std::span<const double> b) const;
};

/// Joint moments E[prod V_j^{alpha_j}] for all |alpha| <= order.
struct MultiMomentTable {
    int dim = 0;
    int order = 0;
    std::map<std::vector<int>, double> values;

    double at(const std::vector<int>& alpha) const;
};

MomentVector sample_moments(std::span<const double> samples, int order);

std::pair<std::vector<double>, Standardization> standardize(std::span<const double> samples);

/// k-th moment of N(0,1): (k-1)!! for even k, 0 for odd k.
double gaussian_moment(int k);

/// prod_j gaussian_moment(alpha_j).
double gaussian_joint_moment(const std::vector<int>& alpha);

HankelMatrix hankel(const MomentVector& mv, int n);

/// Cholesky-factors H, throwing DegenerateSupport when a pivot falls below
/// 1e-12 times its diagonal entry (|supp| <= n).
SymmetricFactor det_and_factor(const HankelMatrix& H);

/// Same factorization for a general symmetric positive-definite matrix
/// (row-major, size x size). pivot_rel_tol = 0 demands positivity only;
/// channel moment matrices are provably nondegenerate at every SNR and are
/// factored that way even when pivots decay with t.
SymmetricFactor factor_spd(std::span<const double> matrix, int size,
                           double pivot_rel_tol = 1e-12);

MultiMomentTable joint_sample_moments(const std::vector<std::vector<double>>& samples,
                                      int dim, int order);

/// Multi-indices with |alpha| <= max_total, ordered by total degree then
/// reverse-lexicographically in the exponents.
std::vector<std::vector<int>> multi_index_basis(int dim, int max_total);

double binomial(int n, int k);

/// log(det M_{N,n}) = sum_{k=1..n} log k!  (Barnes G(n+2) in log space).
double log_gaussian_hankel_det(int n);

} // namespace momentinfo
