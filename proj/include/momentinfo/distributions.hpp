#pragma once

#include <optional>
#include <string>
#include <vector>

#include "momentinfo/moments.hpp"
#include "momentinfo/rng.hpp"

namespace momentinfo {

enum class DistKind {
    Semicircle,
    Semicircle2d,
    GaussMix1d,
    GaussMix2d,
    ZeroInflatedPoissonPair,
    BernoulliUniformPair,
    Gaussian,
    RayleighChi2,
    Uniform,
    Rademacher,
};

/// A benchmark distribution with its parameters. Defaults reproduce the
/// benchmark configurations (mixture weights/means/sigmas, the 2-D mixture
/// covariances, zero-inflation probability 0.15, Unif[0,2] pair).
struct DistributionSpec {
    DistKind kind = DistKind::Gaussian;
    std::uint64_t seed = 0;

    double mean = 0.0;
    double sigma = 1.0;
    double lo = -1.7320508075688772, hi = 1.7320508075688772;  // uniform bounds
    std::vector<double> mix_weights{0.1, 0.2, 0.3, 0.4};
    std::vector<double> mix_means{-2.0, 0.0, 1.0, 5.0};
    std::vector<double> mix_sigmas{1.5, 1.0, 2.0, 1.0};
    double zero_inflation = 0.15;
    double bernoulli_p = 0.5;
    double pair_lo = 0.0, pair_hi = 2.0;

    int dimension() const;
    bool is_pair() const;  // (label, y) output rather than coordinates
    void validate() const;
};

DistKind parse_dist_kind(const std::string& name);
std::string dist_kind_name(DistKind kind);

/// m i.i.d. draws; row layout is one sample per row, dimension() columns
/// (pair kinds emit the label in column 0).
std::vector<std::vector<double>> sample(const DistributionSpec& spec, int m, SplitMix64& rng);

struct GroundTruth {
    double value = 0.0;
    std::string provenance;  // "paper", "analytic", or "none"
};

/// Reference value in nats for kinds with a known truth; provenance "none"
/// (and value NaN) otherwise.
GroundTruth ground_truth(const DistributionSpec& spec);

/// Exact raw moments for the analytic scalar kinds.
MomentVector exact_moments(const DistributionSpec& spec, int order);

/// Exact joint moments for the 2-D kinds (semicircle2d, gauss_mix_2d).
MultiMomentTable exact_joint_moments(const DistributionSpec& spec, int order);

} // namespace momentinfo
