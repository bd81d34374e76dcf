#include "momentinfo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <thread>

#include "momentinfo/csv.hpp"
#include "momentinfo/entropy.hpp"
#include "momentinfo/mutual_info.hpp"

namespace momentinfo {

void ExperimentConfig::validate() const {
    distribution.validate();
    if (trials < 1) throw ConfigError("ExperimentConfig: trials must be >= 1");
    if (sample_sizes.empty()) throw ConfigError("ExperimentConfig: no sample sizes");
    for (int s : sample_sizes)
        if (s < 1) throw ConfigError("ExperimentConfig: sample sizes must be positive");
    if (bootstrap_resamples < 1) throw ConfigError("ExperimentConfig: bootstrap_resamples must be >= 1");
    if (estimator == EstimatorKind::IHat && !distribution.is_pair())
        throw ConfigError("ExperimentConfig: i_hat needs a (label, y) pair distribution");
    if (estimator != EstimatorKind::IHat && distribution.is_pair())
        throw ConfigError("ExperimentConfig: entropy estimators need coordinate samples");
}

std::string estimator_name(EstimatorKind kind, int n, int m) {
    switch (kind) {
        case EstimatorKind::HHat: return "h_hat" + std::to_string(n);
        case EstimatorKind::HHatMultivariate:
            return "h_hat" + std::to_string(n) + "_m" + std::to_string(m);
        case EstimatorKind::IHat: return "i_hat" + std::to_string(n);
    }
    throw ConfigError("unknown estimator kind");
}

namespace {

int worker_pool_size(int tasks) {
    unsigned hw = std::thread::hardware_concurrency();
    int threads = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("MOMENT_INFO_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) threads = std::min(threads, cap);
    }
    return std::max(1, std::min(threads, tasks));
}

double run_one_trial(const ExperimentConfig& cfg, int size, int trial) {
    SplitMix64 rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(size),
                                           static_cast<std::uint64_t>(trial));
    auto rows = sample(cfg.distribution, size, rng);
    switch (cfg.estimator) {
        case EstimatorKind::HHat: {
            std::vector<double> xs(rows.size());
            for (size_t i = 0; i < rows.size(); ++i) xs[i] = rows[i][0] * cfg.y_scale;
            return h_hat(xs, cfg.n, cfg.quad).value;
        }
        case EstimatorKind::HHatMultivariate: {
            if (cfg.y_scale != 1.0)
                for (auto& r : rows)
                    for (double& v : r) v *= cfg.y_scale;
            return h_hat_multivariate(rows, cfg.n, cfg.m, cfg.quad).value;
        }
        case EstimatorKind::IHat: {
            std::vector<std::pair<std::string, double>> pairs(rows.size());
            for (size_t i = 0; i < rows.size(); ++i)
                pairs[i] = {format_double(rows[i][0]), rows[i][1] * cfg.y_scale};
            return i_hat(pairs, cfg.n, cfg.quad).value;
        }
    }
    throw ConfigError("unknown estimator kind");
}

// Percentile with linear interpolation on the sorted resample means.
double percentile(std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * (static_cast<double>(sorted.size()) - 1.0);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

} // namespace

TrialReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    TrialReport report;
    report.estimator_name = estimator_name(cfg.estimator, cfg.n, cfg.m);
    report.truth = ground_truth(cfg.distribution);
    const bool truth_known = report.truth.provenance != "none";
    const bool relative = truth_known && report.truth.value != 0.0;

    const int total = static_cast<int>(cfg.sample_sizes.size()) * cfg.trials;
    report.rows.assign(static_cast<size_t>(total), TrialRow{});

    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            int size = cfg.sample_sizes[static_cast<size_t>(idx) / cfg.trials];
            int trial = idx % cfg.trials;
            TrialRow row;
            row.sample_size = size;
            row.trial = trial;
            try {
                row.estimate = run_one_trial(cfg, size, trial);
                if (truth_known) {
                    row.abs_error = std::abs(row.estimate - report.truth.value);
                    row.rel_abs_error_pct =
                        relative ? 100.0 * row.abs_error / std::abs(report.truth.value) : 0.0;
                }
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            report.rows[static_cast<size_t>(idx)] = std::move(row);
        }
    };
    const int pool = worker_pool_size(total);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(pool));
    for (int i = 0; i < pool; ++i) threads.emplace_back(work);
    for (auto& t : threads) t.join();

    for (size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
        const int size = cfg.sample_sizes[si];
        std::vector<double> errors;
        for (int t = 0; t < cfg.trials; ++t) {
            const TrialRow& row = report.rows[si * static_cast<size_t>(cfg.trials) +
                                              static_cast<size_t>(t)];
            if (!row.failed) errors.push_back(relative ? row.rel_abs_error_pct : row.abs_error);
        }
        SizeSummary sum;
        sum.sample_size = size;
        sum.trials_ok = static_cast<int>(errors.size());
        if (!errors.empty()) {
            double mean = 0.0;
            for (double e : errors) mean += e;
            mean /= static_cast<double>(errors.size());
            sum.mean_error = mean;
            SplitMix64 boot = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(size),
                                                    0xB007B007ull);
            std::vector<double> means(static_cast<size_t>(cfg.bootstrap_resamples));
            for (int b = 0; b < cfg.bootstrap_resamples; ++b) {
                double acc = 0.0;
                for (size_t k = 0; k < errors.size(); ++k)
                    acc += errors[boot.next_u64() % errors.size()];
                means[static_cast<size_t>(b)] = acc / static_cast<double>(errors.size());
            }
            std::sort(means.begin(), means.end());
            sum.ci_low = percentile(means, 0.025);
            sum.ci_high = percentile(means, 0.975);
        }
        report.summaries.push_back(sum);
    }
    return report;
}

void TrialReport::write_csv(std::ostream& out) const {
    out << "kind,estimator,sample_size,trial,estimate,abs_error,rel_abs_error_pct,"
           "mean_error,ci_low,ci_high\n";
    for (const auto& row : rows) {
        const std::string& name = row.estimator.empty() ? estimator_name : row.estimator;
        out << "data," << name << ',' << row.sample_size << ',' << row.trial << ',';
        if (row.failed) {
            out << "failed:" << row.error << ",,";
        } else {
            out << format_double(row.estimate) << ',' << format_double(row.abs_error) << ','
                << format_double(row.rel_abs_error_pct);
        }
        out << ",,,\n";
    }
    for (const auto& s : summaries) {
        const std::string& name = s.estimator.empty() ? estimator_name : s.estimator;
        out << "summary," << name << ',' << s.sample_size << ',' << s.trials_ok
            << ",,,," << format_double(s.mean_error) << ',' << format_double(s.ci_low) << ','
            << format_double(s.ci_high) << '\n';
    }
}

void merge_baseline_csv(TrialReport& report, const std::string& path,
                        int bootstrap_resamples, std::uint64_t seed) {
    auto rows = read_csv(path);
    const bool truth_known = report.truth.provenance != "none";
    const bool relative = truth_known && report.truth.value != 0.0;
    std::map<std::pair<std::string, int>, std::vector<double>> errors_by_key;

    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != 4) {
            if (r == 0) continue;  // header
            throw ConfigError("baseline CSV needs columns estimator,sample_size,trial,estimate");
        }
        char* end = nullptr;
        double est = std::strtod(rows[r][3].c_str(), &end);
        if (end == rows[r][3].c_str()) {
            if (r == 0) continue;
            throw ConfigError("baseline CSV: non-numeric estimate");
        }
        TrialRow row;
        row.estimator = rows[r][0];
        row.sample_size = std::atoi(rows[r][1].c_str());
        row.trial = std::atoi(rows[r][2].c_str());
        row.estimate = est;
        if (truth_known) {
            row.abs_error = std::abs(est - report.truth.value);
            row.rel_abs_error_pct =
                relative ? 100.0 * row.abs_error / std::abs(report.truth.value) : 0.0;
        }
        errors_by_key[{row.estimator, row.sample_size}].push_back(
            relative ? row.rel_abs_error_pct : row.abs_error);
        report.rows.push_back(std::move(row));
    }
    for (auto& [key, errs] : errors_by_key) {
        SizeSummary sum;
        sum.estimator = key.first;
        sum.sample_size = key.second;
        sum.trials_ok = static_cast<int>(errs.size());
        double mean = 0.0;
        for (double e : errs) mean += e;
        mean /= static_cast<double>(errs.size());
        sum.mean_error = mean;
        SplitMix64 boot =
            SplitMix64::substream(seed, static_cast<std::uint64_t>(key.second), 0xBA5EBA5Eull);
        std::vector<double> means(static_cast<size_t>(bootstrap_resamples));
        for (int b = 0; b < bootstrap_resamples; ++b) {
            double acc = 0.0;
            for (size_t k = 0; k < errs.size(); ++k) acc += errs[boot.next_u64() % errs.size()];
            means[static_cast<size_t>(b)] = acc / static_cast<double>(errs.size());
        }
        std::sort(means.begin(), means.end());
        sum.ci_low = percentile(means, 0.025);
        sum.ci_high = percentile(means, 0.975);
        report.summaries.push_back(sum);
    }
}

} // namespace momentinfo
