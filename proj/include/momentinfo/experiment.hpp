#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "momentinfo/distributions.hpp"
#include "momentinfo/quadrature.hpp"

namespace momentinfo {

enum class EstimatorKind { HHat, HHatMultivariate, IHat };

struct ExperimentConfig {
    DistributionSpec distribution;
    EstimatorKind estimator = EstimatorKind::HHat;
    int n = 10;
    int m = 1;  // dimension for the multivariate estimator
    std::vector<int> sample_sizes{800, 1600, 2400, 3200, 4000};
    int trials = 50;
    int bootstrap_resamples = 1000;
    std::string output_path;  // empty: caller writes the report
    QuadConfig quad;
    std::uint64_t seed = 1;
    double y_scale = 1.0;  // scales the continuous coordinate before estimating

    void validate() const;
};

struct TrialRow {
    std::string estimator;  // empty: the report's own estimator
    int sample_size = 0;
    int trial = 0;
    bool failed = false;
    std::string error;
    double estimate = 0.0;
    double abs_error = 0.0;        // |estimate - truth| when truth is known
    double rel_abs_error_pct = 0.0;
};

struct SizeSummary {
    std::string estimator;  // empty: the report's own estimator
    int sample_size = 0;
    int trials_ok = 0;
    double mean_error = 0.0;  // rel-% when truth != 0, abs nats otherwise
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct TrialReport {
    std::string estimator_name;
    GroundTruth truth;
    std::vector<TrialRow> rows;
    std::vector<SizeSummary> summaries;

    void write_csv(std::ostream& out) const;
};

std::string estimator_name(EstimatorKind kind, int n, int m);

/// Runs trials across a worker pool (MOMENT_INFO_THREADS caps the pool);
/// deterministic for a fixed seed via per-(seed, size, trial) substreams.
TrialReport run_experiment(const ExperimentConfig& cfg);

/// Appends externally computed estimates (CSV columns estimator, sample_size,
/// trial, estimate) to the report, with errors against the same ground truth.
void merge_baseline_csv(TrialReport& report, const std::string& path,
                        int bootstrap_resamples, std::uint64_t seed);

} // namespace momentinfo
