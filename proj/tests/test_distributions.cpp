#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "momentinfo/csv.hpp"
#include "momentinfo/distributions.hpp"
#include "momentinfo/experiment.hpp"

using namespace momentinfo;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double semicircle_pdf(double x) {
    double r = 1.0 - x * x;
    return r <= 0.0 ? 0.0 : 2.0 / M_PI * std::sqrt(r);
}

double gauss_mix_pdf(const DistributionSpec& s, double x) {
    double acc = 0.0;
    for (size_t i = 0; i < s.mix_weights.size(); ++i) {
        double z = (x - s.mix_means[i]) / s.mix_sigmas[i];
        acc += s.mix_weights[i] * std::exp(-0.5 * z * z) /
               (s.mix_sigmas[i] * std::sqrt(2.0 * M_PI));
    }
    return acc;
}

} // namespace

TEST_CASE("samples respect their supports") {
    SplitMix64 rng(1);
    DistributionSpec sc;
    sc.kind = DistKind::Semicircle;
    for (const auto& row : sample(sc, 500, rng)) {
        CHECK(row[0] >= -1.0);
        CHECK(row[0] <= 1.0);
    }
    DistributionSpec bu;
    bu.kind = DistKind::BernoulliUniformPair;
    for (const auto& row : sample(bu, 500, rng)) {
        CHECK((row[0] == 0.0 || row[0] == 1.0));
        CHECK(row[1] >= 0.0);
        CHECK(row[1] <= 2.0);
    }
    DistributionSpec rad;
    rad.kind = DistKind::Rademacher;
    for (const auto& row : sample(rad, 100, rng)) CHECK(std::abs(row[0]) == 1.0);
}

TEST_CASE("exact moments of the reference kinds") {
    DistributionSpec rad;
    rad.kind = DistKind::Rademacher;
    auto mv = exact_moments(rad, 6);
    CHECK(mv.values == std::vector<double>{0, 1, 0, 1, 0, 1});

    DistributionSpec u;
    u.kind = DistKind::Uniform;
    mv = exact_moments(u, 4);
    CHECK(mv.mu(1) == doctest::Approx(0.0));
    CHECK(mv.mu(2) == doctest::Approx(1.0));
    CHECK(mv.mu(3) == doctest::Approx(0.0));
    CHECK(mv.mu(4) == doctest::Approx(9.0 / 5.0));

    DistributionSpec g;
    g.kind = DistKind::Gaussian;
    mv = exact_moments(g, 6);
    CHECK(mv.values == std::vector<double>{0, 1, 0, 3, 0, 15});
}

TEST_CASE("semicircle moments are scaled Catalan numbers, checked by quadrature") {
    DistributionSpec sc;
    sc.kind = DistKind::Semicircle;
    auto mv = exact_moments(sc, 12);
    for (int k = 1; k <= 12; ++k) {
        double oracle =
            simpson([k](double x) { return std::pow(x, k) * semicircle_pdf(x); }, -1.0, 1.0, 20000);
        CHECK(mv.mu(k) == doctest::Approx(oracle).epsilon(1e-6));
    }
    CHECK(mv.mu(2) == doctest::Approx(0.25));
    CHECK(mv.mu(4) == doctest::Approx(2.0 / 16.0));  // Catalan(2)/4^2
}

TEST_CASE("rayleigh moments match the gamma-integral oracle") {
    DistributionSpec r;
    r.kind = DistKind::RayleighChi2;
    auto mv = exact_moments(r, 10);
    for (int k = 1; k <= 10; ++k) {
        double oracle = simpson(
            [k](double x) { return std::pow(x, k) * x * std::exp(-0.5 * x * x); }, 0.0, 25.0,
            40000);
        CHECK(mv.mu(k) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("analytic moments agree with large-sample estimates") {
    const DistKind kinds[] = {DistKind::Semicircle, DistKind::Gaussian, DistKind::RayleighChi2,
                              DistKind::Uniform, DistKind::Rademacher, DistKind::GaussMix1d};
    const int m = 1000000;
    for (DistKind kind : kinds) {
        SplitMix64 rng(17);
        DistributionSpec spec;
        spec.kind = kind;
        auto mv = exact_moments(spec, 6);
        auto full = exact_moments(spec, 12);
        auto rows = sample(spec, m, rng);
        std::vector<double> xs(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) xs[i] = rows[i][0];
        auto emp = sample_moments(xs, 6);
        for (int k = 1; k <= 6; ++k) {
            // 5-sigma Monte Carlo band, Var(X^k) from the analytic moments
            double sd = std::sqrt(std::max(0.0, full.mu(2 * k) - full.mu(k) * full.mu(k)) /
                                  static_cast<double>(m));
            CHECK(std::abs(emp.mu(k) - mv.mu(k)) <= 5.0 * sd + 1e-12);
        }
    }
}

TEST_CASE("ground truths against density-quadrature oracles") {
    DistributionSpec sc;
    sc.kind = DistKind::Semicircle;
    auto gt = ground_truth(sc);
    CHECK(gt.provenance == "paper");
    // closed form log(pi) - 1/2, and the differential entropy integral
    CHECK(gt.value == doctest::Approx(std::log(M_PI) - 0.5).epsilon(1e-4));
    double oracle = simpson(
        [](double x) {
            double p = semicircle_pdf(x);
            return p > 1e-300 ? -p * std::log(p) : 0.0;
        },
        -1.0, 1.0, 200000);
    CHECK(gt.value == doctest::Approx(oracle).epsilon(2e-4));

    DistributionSpec mix;
    mix.kind = DistKind::GaussMix1d;
    gt = ground_truth(mix);
    oracle = simpson(
        [&mix](double x) {
            double p = gauss_mix_pdf(mix, x);
            return p > 1e-300 ? -p * std::log(p) : 0.0;
        },
        -14.0, 16.0, 200000);
    CHECK(gt.value == doctest::Approx(2.34249).epsilon(1e-6));
    CHECK(gt.value == doctest::Approx(oracle).epsilon(1e-4));

    DistributionSpec pair;
    pair.kind = DistKind::ZeroInflatedPoissonPair;
    CHECK(ground_truth(pair).value == doctest::Approx(0.25606));
    DistributionSpec bu;
    bu.kind = DistKind::BernoulliUniformPair;
    CHECK(ground_truth(bu).value == 0.0);

    DistributionSpec g;
    g.kind = DistKind::Gaussian;
    g.sigma = 2.0;
    CHECK(ground_truth(g).value ==
          doctest::Approx(0.5 * std::log(2.0 * M_PI * M_E * 4.0)).epsilon(1e-12));
}

TEST_CASE("2-D gaussian mixture entropy oracle") {
    // density quadrature over a wide box, against the reference 3.22406
    auto pdf = [](double x, double y) {
        auto comp = [x, y](double mx, double my, double a, double b, double c) {
            // covariance [[a, b], [b, c]]
            double det = a * c - b * b;
            double dx = x - mx, dy = y - my;
            double q = (c * dx * dx - 2.0 * b * dx * dy + a * dy * dy) / det;
            return std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
        };
        return 0.5 * comp(-1.0, -1.0, 1.0, 0.5, 1.0) + 0.5 * comp(1.0, 1.0, 1.0, 0.0, 1.0);
    };
    const int grid = 400;
    const double lo = -8.0, hi = 8.0, h = (hi - lo) / grid;
    double acc = 0.0;
    for (int i = 0; i <= grid; ++i) {
        double wx = (i == 0 || i == grid) ? 0.5 : 1.0;
        for (int j = 0; j <= grid; ++j) {
            double wy = (j == 0 || j == grid) ? 0.5 : 1.0;
            double p = pdf(lo + i * h, lo + j * h);
            if (p > 1e-300) acc -= wx * wy * p * std::log(p) * h * h;
        }
    }
    DistributionSpec mix2;
    mix2.kind = DistKind::GaussMix2d;
    CHECK(ground_truth(mix2).value == doctest::Approx(3.22406).epsilon(1e-6));
    CHECK(ground_truth(mix2).value == doctest::Approx(acc).epsilon(2e-3));
}

TEST_CASE("exact joint moments for the 2-D kinds") {
    DistributionSpec sc2;
    sc2.kind = DistKind::Semicircle2d;
    auto t = exact_joint_moments(sc2, 6);
    DistributionSpec sc;
    sc.kind = DistKind::Semicircle;
    auto mv = exact_moments(sc, 6);
    CHECK(t.at({2, 4}) == doctest::Approx(mv.mu(2) * mv.mu(4)));
    CHECK(t.at({1, 3}) == 0.0);

    DistributionSpec mix2;
    mix2.kind = DistKind::GaussMix2d;
    auto jt = exact_joint_moments(mix2, 4);
    // sampling sanity at 10^6 draws, 5-sigma bands
    SplitMix64 rng(99);
    auto rows = sample(mix2, 1000000, rng);
    for (const auto& alpha : multi_index_basis(2, 4)) {
        double acc = 0.0;
        for (const auto& rrow : rows)
            acc += std::pow(rrow[0], alpha[0]) * std::pow(rrow[1], alpha[1]);
        acc /= static_cast<double>(rows.size());
        double m2 = 0.0;
        for (const auto& rrow : rows)
            m2 += std::pow(rrow[0], 2 * alpha[0]) * std::pow(rrow[1], 2 * alpha[1]);
        m2 /= static_cast<double>(rows.size());
        double sd = std::sqrt(std::max(0.0, m2 - acc * acc) / static_cast<double>(rows.size()));
        CHECK(std::abs(jt.at(alpha) - acc) <= 5.0 * sd + 1e-12);
    }
}

TEST_CASE("experiment report schema and determinism") {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::Gaussian;
    cfg.estimator = EstimatorKind::HHat;
    cfg.n = 4;
    cfg.sample_sizes = {100};
    cfg.trials = 1;
    cfg.seed = 5;
    auto report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 1);
    REQUIRE(report.summaries.size() == 1);
    CHECK(!report.rows[0].failed);
    CHECK(report.summaries[0].trials_ok == 1);

    std::ostringstream a, b;
    report.write_csv(a);
    run_experiment(cfg).write_csv(b);
    CHECK(a.str() == b.str());  // byte-identical under a fixed seed

    std::istringstream header_check(a.str());
    std::string header;
    std::getline(header_check, header);
    CHECK(header ==
          "kind,estimator,sample_size,trial,estimate,abs_error,rel_abs_error_pct,"
          "mean_error,ci_low,ci_high");
}

TEST_CASE("bootstrap interval brackets the mean error") {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::Gaussian;
    cfg.estimator = EstimatorKind::HHat;
    cfg.n = 4;
    cfg.sample_sizes = {200};
    cfg.trials = 12;
    cfg.seed = 9;
    auto report = run_experiment(cfg);
    const auto& s = report.summaries[0];
    CHECK(s.ci_low <= s.mean_error);
    CHECK(s.mean_error <= s.ci_high);
    CHECK(s.ci_low < s.ci_high);
}

TEST_CASE("estimator failures are recorded per trial and the run continues") {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::Rademacher;  // 2 atoms: h_hat(4) must fail
    cfg.estimator = EstimatorKind::HHat;
    cfg.n = 4;
    cfg.sample_sizes = {50};
    cfg.trials = 3;
    cfg.seed = 2;
    auto report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        CHECK(row.failed);
        CHECK(!row.error.empty());
    }
    CHECK(report.summaries[0].trials_ok == 0);
}

TEST_CASE("baseline CSV merge") {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::Gaussian;
    cfg.estimator = EstimatorKind::HHat;
    cfg.n = 4;
    cfg.sample_sizes = {100};
    cfg.trials = 2;
    cfg.seed = 5;
    auto report = run_experiment(cfg);

    const std::string path = "baseline_test_tmp.csv";
    {
        std::ofstream out(path);
        out << "estimator,sample_size,trial,estimate\n";
        out << "ksg,100,0,1.40\nksg,100,1,1.45\n";
    }
    merge_baseline_csv(report, path, 100, 5);
    std::remove(path.c_str());

    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[2].estimator == "ksg");
    bool found = false;
    for (const auto& s : report.summaries)
        if (s.estimator == "ksg") {
            found = true;
            CHECK(s.trials_ok == 2);
        }
    CHECK(found);
}

TEST_CASE("CSV helpers") {
    const std::string path = "csv_helper_tmp.csv";
    {
        std::ofstream out(path);
        out << "x,y\n1.5,2\n-0.25,3\n";
    }
    auto rows = read_numeric_csv(path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 1.5);
    CHECK(rows[1][1] == 3.0);
    auto labeled = read_labeled_csv(path);  // header skipped: y cell not numeric
    REQUIRE(labeled.size() == 2);
    CHECK(labeled[0].first == "1.5");
    CHECK(labeled[0].second == 2.0);
    std::remove(path.c_str());
}

TEST_CASE("zero-inflated pair layout") {
    SplitMix64 rng(12);
    DistributionSpec spec;
    spec.kind = DistKind::ZeroInflatedPoissonPair;
    auto rows = sample(spec, 2000, rng);
    int zeros = 0;
    for (const auto& row : rows) {
        CHECK(row[0] == std::floor(row[0]));  // integer labels
        CHECK(row[1] > 0.0);                  // Exp(1) draws
        if (row[0] == 0.0) ++zeros;
    }
    // X = 0 with probability 0.15 + Poisson mass at 0
    CHECK(zeros > 0.2 * 2000);
    CHECK(zeros < 0.6 * 2000);
}

TEST_CASE("scaled companion runs match trial by trial") {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::ZeroInflatedPoissonPair;
    cfg.estimator = EstimatorKind::IHat;
    cfg.n = 5;
    cfg.sample_sizes = {400};
    cfg.trials = 3;
    cfg.seed = 21;
    auto base = run_experiment(cfg);
    cfg.y_scale = 1e4;
    auto scaled = run_experiment(cfg);
    REQUIRE(base.rows.size() == scaled.rows.size());
    for (size_t i = 0; i < base.rows.size(); ++i) {
        REQUIRE(!base.rows[i].failed);
        REQUIRE(!scaled.rows[i].failed);
        CHECK(std::abs(base.rows[i].estimate - scaled.rows[i].estimate) <= 1e-9);
    }
}

TEST_CASE("semicircle sampler inverts its CDF") {
    SplitMix64 rng(3);
    DistributionSpec sc;
    sc.kind = DistKind::Semicircle;
    auto cdf = [](double x) {
        return 0.5 + (x * std::sqrt(std::max(0.0, 1.0 - x * x)) + std::asin(x)) / M_PI;
    };
    // empirical CDF of the samples should match the analytic one
    auto rows = sample(sc, 20000, rng);
    for (double x : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        int below = 0;
        for (const auto& r : rows)
            if (r[0] <= x) ++below;
        double emp = static_cast<double>(below) / static_cast<double>(rows.size());
        CHECK(std::abs(emp - cdf(x)) < 0.02);
    }
}
