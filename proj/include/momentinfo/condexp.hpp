#pragma once

#include <cstdint>
#include <vector>

#include "momentinfo/errors.hpp"

namespace momentinfo {

/// Partition of r into parts >= 2, encoded by part multiplicities:
/// multiplicity[i] is the count of part i+2, and sum (i+2)*multiplicity[i] = r.
struct PartitionMultiplicity {
    std::vector<int> multiplicity;  // index 0 <-> part 2; trailing entry nonzero
    int r = 0;
    int parts = 0;                  // total number of parts
};

/// All partitions of r into parts >= 2 (r >= 2).
std::vector<PartitionMultiplicity> enumerate_partitions(int r);

/// c_lambda = (1/m) * multinomial(m; lambda_2,...) * r! / prod (i!)^{lambda_i}:
/// the number of cyclically-invariant ordered set-partitions of an r-set with
/// the given block-size multiplicities. Exact integer.
std::int64_t c_lambda(const PartitionMultiplicity& lambda);

/// e_lambda = (-1)^(parts-1) c_lambda.
std::int64_t e_lambda(const PartitionMultiplicity& lambda);

/// C_r = sum_{k=1..r} (k-1)! * #(set partitions into k blocks of size >= 2),
/// via Stirling numbers of the second kind.
std::int64_t C_r_closed_form(int r);

/// Finitely supported input to the unit-SNR Gaussian channel Y = X + N.
struct DiscreteInput {
    std::vector<double> atoms;
    std::vector<double> probs;

    void validate() const;
};

/// f(y) = E[X | Y=y] and the central conditional moments
/// g_k(y) = E[(X - f(y))^k | Y=y], k = 0..k_max. Log-sum-exp over atoms.
struct CondExpResult {
    double f = 0.0;
    std::vector<double> g;  // g[0] = 1, g[1] = 0
};

CondExpResult cond_exp_and_central_moments(const DiscreteInput& input, double y, int k_max);

/// f^{(r-1)}(y) = sum over partitions of r of e_lambda * prod g_i^{lambda_i}(y),
/// for 2 <= r <= 8.
double cond_exp_derivative(const DiscreteInput& input, double y, int r);

} // namespace momentinfo
