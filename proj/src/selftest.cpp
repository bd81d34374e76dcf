#include "momentinfo/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "momentinfo/condexp.hpp"
#include "momentinfo/distributions.hpp"
#include "momentinfo/entropy.hpp"
#include "momentinfo/experiment.hpp"
#include "momentinfo/mutual_info.hpp"
#include "momentinfo/pmmse.hpp"
#include "momentinfo/rng.hpp"

namespace momentinfo::selftest {

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<void(std::ostringstream&)> body;  // throws on failure
};

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

double rel_diff(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

// Random standardized moment vectors from small Gaussian mixtures.
MomentVector random_standardized_moments(SplitMix64& rng, int order) {
    DistributionSpec spec;
    spec.kind = DistKind::GaussMix1d;
    int comps = 2 + static_cast<int>(rng.next_u64() % 3);
    spec.mix_weights.assign(static_cast<size_t>(comps), 0.0);
    spec.mix_means.assign(static_cast<size_t>(comps), 0.0);
    spec.mix_sigmas.assign(static_cast<size_t>(comps), 0.0);
    double total = 0.0;
    for (int i = 0; i < comps; ++i) {
        spec.mix_weights[static_cast<size_t>(i)] = 0.2 + rng.uniform();
        spec.mix_means[static_cast<size_t>(i)] = -2.0 + 4.0 * rng.uniform();
        spec.mix_sigmas[static_cast<size_t>(i)] = 0.5 + 1.5 * rng.uniform();
        total += spec.mix_weights[static_cast<size_t>(i)];
    }
    for (double& w : spec.mix_weights) w /= total;
    // Force the weight sum to 1 exactly.
    double acc = 0.0;
    for (size_t i = 0; i + 1 < spec.mix_weights.size(); ++i) acc += spec.mix_weights[i];
    spec.mix_weights.back() = 1.0 - acc;
    MomentVector mv = exact_moments(spec, order);
    double mean = mv.mu(1);
    double sd = std::sqrt(mv.mu(2) - mean * mean);
    return affine_transform_moments(mv, 1.0 / sd, -mean / sd);
}

// Independent oracle: E[X^a Y^b] for centered bivariate Gaussian with unit
// variances and correlation rho, by exhaustive Isserlis pairing enumeration.
double isserlis_moment(int a, int b, double rho) {
    const int total = a + b;
    if (total % 2 == 1) return 0.0;
    if (total == 0) return 1.0;
    std::vector<int> type(static_cast<size_t>(total));
    for (int i = 0; i < a; ++i) type[static_cast<size_t>(i)] = 0;
    for (int i = a; i < total; ++i) type[static_cast<size_t>(i)] = 1;
    std::vector<bool> used(static_cast<size_t>(total), false);
    std::function<double()> rec = [&]() -> double {
        int first = -1;
        for (int i = 0; i < total; ++i)
            if (!used[static_cast<size_t>(i)]) { first = i; break; }
        if (first < 0) return 1.0;
        used[static_cast<size_t>(first)] = true;
        double acc = 0.0;
        for (int j = first + 1; j < total; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            used[static_cast<size_t>(j)] = true;
            double cov = (type[static_cast<size_t>(first)] == type[static_cast<size_t>(j)]) ? 1.0 : rho;
            acc += cov * rec();
            used[static_cast<size_t>(j)] = false;
        }
        used[static_cast<size_t>(first)] = false;
        return acc;
    };
    return rec();
}

// Independent oracle: 4th-order central finite differences for the k-th
// derivative, step swept over one decade, best step taken.
double fd_derivative(const std::function<double(double)>& f, double y, int k) {
    struct Stencil {
        std::vector<double> weights;
        int radius;
        double scale;
    };
    static const std::vector<Stencil> stencils = {
        {{1, -8, 0, 8, -1}, 2, 12.0},                    // k=1
        {{-1, 16, -30, 16, -1}, 2, 12.0},                // k=2
        {{1, -8, 13, 0, -13, 8, -1}, 3, 8.0},            // k=3
        {{-1, 12, -39, 56, -39, 12, -1}, 3, 6.0},        // k=4
        {{1, -9, 26, -29, 0, 29, -26, 9, -1}, 4, 6.0},   // k=5
    };
    const Stencil& st = stencils[static_cast<size_t>(k) - 1];
    double best = 0.0, best_spread = HUGE_VAL;
    double prev = HUGE_VAL;
    for (int step = 0; step < 10; ++step) {
        double h = 1e-2 * std::max(1.0, std::abs(y)) * std::pow(10.0, -step / 9.0);
        double acc = 0.0;
        for (int j = 0; j < static_cast<int>(st.weights.size()); ++j)
            acc += st.weights[static_cast<size_t>(j)] * f(y + (j - st.radius) * h);
        double val = acc / (st.scale * std::pow(h, k));
        if (prev != HUGE_VAL && std::abs(val - prev) < best_spread) {
            best_spread = std::abs(val - prev);
            best = val;
        }
        prev = val;
    }
    return best;
}

// Coefficientwise proportionality check via cross multiplication.
void check_cross_proportional(const Polynomial& num, const Polynomial& den,
                              const std::vector<double>& num_ref,
                              const std::vector<double>& den_ref, double tol) {
    Polynomial nr(Var::T, num_ref), dr(Var::T, den_ref);
    Polynomial lhs = num * dr;
    Polynomial rhs = den * nr;
    Polynomial diff = lhs - rhs;
    double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
    require(scale > 0.0, "cross proportionality: degenerate scale");
    for (int k = 0; k <= diff.degree(); ++k)
        require(std::abs(diff.coeff(k)) <= tol * scale,
                "cross proportionality: coefficient mismatch at degree " + std::to_string(k));
}

void criterion_rademacher_rational(std::ostringstream& detail) {
    DistributionSpec spec;
    spec.kind = DistKind::Rademacher;
    MomentVector mv = exact_moments(spec, 10);
    PmmseRational rat = channel_rational(mv, 5);
    check_cross_proportional(rat.num, rat.den, {45, 360, 675, 300},
                             {45, 405, 1035, 1005, 450, 96, 8}, 1e-8);
    detail << "effective degrees " << rat.effective_num_degree << "/" << rat.effective_den_degree;
}

void criterion_coefficient_identities(std::ostringstream& detail) {
    SplitMix64 rng(2024);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        MomentVector mv = random_standardized_moments(rng, 12);
        for (int n = 1; n <= 6; ++n) {
            PmmseRational rat = channel_rational(mv, n);
            const int d = rat.d_n;
            worst = std::max(worst, rel_diff(rat.den.coeff(0), 1.0));
            worst = std::max(worst, rel_diff(rat.den.coeff(1), static_cast<double>(d)));
            worst = std::max(worst, rel_diff(rat.num.coeff(0), 1.0));
            worst = std::max(worst, rel_diff(rat.num.coeff(d - 1), rat.den.coeff(d)));
            require(rat.truncated_top_coeff <= 1e-8, "a^{d_n} residue above tolerance");
        }
    }
    require(worst <= 1e-8, "coefficient identity error " + std::to_string(worst));
    detail << "worst relative error " << worst;
}

void criterion_n2_closed_form(std::ostringstream& detail) {
    SplitMix64 rng(7);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        MomentVector mv = random_standardized_moments(rng, 4);
        double x3 = mv.mu(3), x4 = mv.mu(4);
        double c = x4 - x3 * x3 - 1.0;
        PmmseRational rat = channel_rational(mv, 2);
        // Reference normalized so the constant denominator coefficient is 1.
        std::vector<double> num_ref{1.0, 2.0, c / 2.0};
        std::vector<double> den_ref{1.0, 3.0, (x4 + 3.0) / 2.0, c / 2.0};
        for (int k = 0; k <= 2; ++k) worst = std::max(worst, std::abs(rat.num.coeff(k) - num_ref[static_cast<size_t>(k)]));
        for (int k = 0; k <= 3; ++k) worst = std::max(worst, std::abs(rat.den.coeff(k) - den_ref[static_cast<size_t>(k)]));
    }
    require(worst <= 1e-10, "closed-form mismatch " + std::to_string(worst));
    detail << "worst coefficient error " << worst;
}

void criterion_gaussian_fixed_point(std::ostringstream& detail) {
    double worst = 0.0;
    for (double sigma : {0.5, 1.0, 3.0}) {
        DistributionSpec spec;
        spec.kind = DistKind::Gaussian;
        spec.sigma = sigma;
        MomentVector mv = exact_moments(spec, 16);
        const double expected = 0.5 * std::log(2.0 * M_PI * M_E * sigma * sigma);
        for (int n = 1; n <= 8; ++n) {
            EntropyEstimate est = h_n_from_moments(mv, n);
            worst = std::max(worst, std::abs(est.value - expected));
        }
    }
    require(worst <= 1e-8, "gaussian fixed point error " + std::to_string(worst));
    detail << "worst |h_n - h| " << worst;
}

void criterion_rayleigh_ladder(std::ostringstream& detail) {
    DistributionSpec spec;
    spec.kind = DistKind::RayleighChi2;
    MomentVector mv = exact_moments(spec, 20);
    const double h_true = 1.0 + std::log(1.0 / std::sqrt(2.0)) +
                          0.57721566490153286060651209008240243 / 2.0;
    double prev = HUGE_VAL;
    double h10 = 0.0;
    for (int n = 1; n <= 10; ++n) {
        EntropyEstimate est = h_n_from_moments(mv, n);
        require(est.value <= prev + 1e-8, "ladder not monotone at n=" + std::to_string(n));
        prev = est.value;
        if (n == 10) h10 = est.value;
    }
    require(h10 - h_true > 0.0, "h_10 below the true entropy");
    require(h10 - h_true < 1e-3, "h_10 gap above 1e-3 nats");
    detail << "h_10 - h = " << (h10 - h_true);
}

void criterion_uniform_worked_example(std::ostringstream& detail) {
    DistributionSpec spec;
    spec.kind = DistKind::Uniform;
    MomentVector mv = exact_moments(spec, 4);
    EntropyEstimate est = h_n_from_moments(mv, 2);
    auto integ = integrate_halfline(
        [](double t) { return t / (5.0 + 15.0 * t + 12.0 * t * t + 2.0 * t * t * t); });
    const double expected =
        0.5 * std::log(2.0 * M_PI * M_E / std::cbrt(2.5)) + integ.value;
    require(std::abs(est.value - expected) <= 1e-9,
            "h_2 differs from the worked closed form");
    require(est.value > 0.5 * std::log(12.0), "h_2 does not exceed the true entropy");
    detail << "h_2 = " << est.value << ", true = " << 0.5 * std::log(12.0);
}

void criterion_gaussian_mi(std::ostringstream& detail) {
    const double rho_corr = 0.5;
    const double expected = -0.5 * std::log(1.0 - rho_corr * rho_corr);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        MultiMomentTable joint;
        joint.dim = 2;
        joint.order = 2 * n;
        for (const auto& alpha : multi_index_basis(2, 2 * n))
            joint.values[alpha] = isserlis_moment(alpha[0], alpha[1], rho_corr);
        MomentVector xm, ym;
        xm.order = ym.order = 2 * n;
        xm.values.assign(static_cast<size_t>(2 * n), 0.0);
        for (int k = 1; k <= 2 * n; ++k) xm.values[static_cast<size_t>(k) - 1] = gaussian_moment(k);
        ym = xm;
        MiEstimate mi = i_n_continuous(xm, ym, joint, n);
        worst = std::max(worst, std::abs(mi.value - expected));
    }
    require(worst <= 1e-5, "gaussian MI error " + std::to_string(worst));
    detail << "worst |I_n - I| " << worst;
}

void criterion_scaling_resilience(std::ostringstream& detail) {
    DistributionSpec spec;
    spec.kind = DistKind::ZeroInflatedPoissonPair;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        SplitMix64 rng = SplitMix64::substream(99, 800, static_cast<std::uint64_t>(trial));
        auto rows = sample(spec, 800, rng);
        std::vector<std::pair<std::string, double>> plain(rows.size()), scaled(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            char label[32];
            std::snprintf(label, sizeof(label), "%g", rows[i][0]);
            plain[i] = {label, rows[i][1]};
            scaled[i] = {label, rows[i][1] * 1e4};
        }
        double a = i_hat(plain, 5).value;
        double b = i_hat(scaled, 5).value;
        worst = std::max(worst, std::abs(a - b));
    }
    std::ostringstream w;
    w << worst;
    require(worst <= 1e-9, "scaling delta " + w.str());
    detail << "max per-trial delta " << worst;
}

void criterion_semicircle_experiment(std::ostringstream& detail) {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::Semicircle;
    cfg.estimator = EstimatorKind::HHat;
    cfg.n = 10;
    cfg.sample_sizes = {800, 2400, 4000};
    cfg.trials = 50;
    cfg.seed = 11;
    TrialReport report = run_experiment(cfg);
    require(report.summaries.size() == 3, "missing summaries");
    for (const auto& s : report.summaries)
        require(s.trials_ok == cfg.trials, "failed trials present");
    double e800 = report.summaries[0].mean_error;
    double e2400 = report.summaries[1].mean_error;
    double e4000 = report.summaries[2].mean_error;
    require(e800 > e2400 && e2400 > e4000, "mean relative error not strictly decreasing");
    require(e4000 < 5.0, "mean relative error at m=4000 not below 5%");
    detail << "mean rel err % = " << e800 << " / " << e2400 << " / " << e4000;
}

void criterion_independence_experiment(std::ostringstream& detail) {
    ExperimentConfig cfg;
    cfg.distribution.kind = DistKind::BernoulliUniformPair;
    cfg.estimator = EstimatorKind::IHat;
    cfg.n = 5;
    cfg.sample_sizes = {800, 3200};
    cfg.trials = 50;
    cfg.seed = 13;
    TrialReport report = run_experiment(cfg);
    double e800 = report.summaries[0].mean_error;
    double e3200 = report.summaries[1].mean_error;
    require(e3200 < e800, "mean |I_5| not decreasing in m");
    require(e3200 < 0.02, "mean |I_5| at m=3200 not below 0.02 nats");
    detail << "mean |I_5| nats = " << e800 << " -> " << e3200;
}

void criterion_partition_combinatorics(std::ostringstream& detail) {
    const std::vector<std::int64_t> expected{1, 1, 4, 11, 56, 267};
    for (int r = 2; r <= 7; ++r) {
        std::int64_t via_sum = 0;
        for (const auto& lambda : enumerate_partitions(r)) via_sum += c_lambda(lambda);
        std::int64_t via_closed = C_r_closed_form(r);
        require(via_sum == expected[static_cast<size_t>(r) - 2], "C_r summation mismatch");
        require(via_closed == expected[static_cast<size_t>(r) - 2], "C_r closed form mismatch");
    }
    detail << "C_2..C_7 = 1,1,4,11,56,267 via both routes";
}

void criterion_derivative_formula(std::ostringstream& detail) {
    DiscreteInput rademacher{{-1.0, 1.0}, {0.5, 0.5}};
    double worst = 0.0;
    for (int r = 2; r <= 6; ++r) {
        for (double y : {-2.0, -1.0, 0.0, 1.0, 3.0}) {
            double formula = cond_exp_derivative(rademacher, y, r);
            double fd = fd_derivative(
                [&](double u) { return cond_exp_and_central_moments(rademacher, u, 0).f; }, y,
                r - 1);
            double err = std::abs(formula - fd) / std::max(1e-12, std::abs(fd));
            worst = std::max(worst, err);
        }
    }
    require(worst <= 1e-5, "finite-difference mismatch " + std::to_string(worst));
    // Symbolic identities f''' = g4 - 3 g2^2 and f'''' = g5 - 10 g2 g3.
    for (double y : {-1.5, 0.3, 2.0}) {
        auto ce = cond_exp_and_central_moments(rademacher, y, 5);
        require(rel_diff(cond_exp_derivative(rademacher, y, 4),
                         ce.g[4] - 3.0 * ce.g[2] * ce.g[2]) <= 1e-12,
                "r=4 identity");
        require(rel_diff(cond_exp_derivative(rademacher, y, 5),
                         ce.g[5] - 10.0 * ce.g[2] * ce.g[3]) <= 1e-12,
                "r=5 identity");
    }
    detail << "worst FD relative error " << worst;
}

void criterion_property_suites(std::ostringstream& detail) {
    SplitMix64 rng(31337);

    // Rational/numeric agreement on a t grid.
    for (int rep = 0; rep < 5; ++rep) {
        MomentVector mv = random_standardized_moments(rng, 12);
        for (int n = 1; n <= 6; ++n) {
            PmmseRational rat = channel_rational(mv, n);
            for (double t : {0.0, 0.1, 1.0, 10.0, 100.0})
                require(rel_diff(rat.value_at(t), channel_pmmse_at(mv, n, t)) <= 1e-9,
                        "rational/numeric disagreement");
        }
    }

    // Monotone ladder in n on the grid.
    {
        MomentVector mv = random_standardized_moments(rng, 14);
        for (double t : {0.0, 0.5, 2.0, 50.0}) {
            double prev = HUGE_VAL;
            for (int n = 1; n <= 7; ++n) {
                double v = channel_pmmse_at(mv, n, t);
                require(v <= prev + 1e-12, "pmmse not monotone in n");
                prev = v;
            }
        }
    }

    // Shift invariance of the rational coefficients.
    for (int rep = 0; rep < 3; ++rep) {
        MomentVector mv = random_standardized_moments(rng, 10);
        double shift = -2.0 + 4.0 * rng.uniform();
        MomentVector shifted = affine_transform_moments(mv, 1.0, shift);
        for (int n = 1; n <= 5; ++n) {
            PmmseRational a = channel_rational(mv, n);
            PmmseRational b = channel_rational(shifted, n);
            for (int k = 0; k <= a.d_n; ++k) {
                require(std::abs(a.den.coeff(k) - b.den.coeff(k)) <=
                            1e-8 * std::max(1.0, a.den.max_abs_coeff()),
                        "denominator not shift-invariant");
                require(std::abs(a.num.coeff(k) - b.num.coeff(k)) <=
                            1e-8 * std::max(1.0, a.num.max_abs_coeff()),
                        "numerator not shift-invariant");
            }
        }
    }

    // Scale equivariance pmmse_n(aX, t) = a^2 pmmse_n(X, a^2 t).
    for (int rep = 0; rep < 3; ++rep) {
        MomentVector mv = random_standardized_moments(rng, 8);
        double a = 0.5 + 2.0 * rng.uniform();
        MomentVector scaled = affine_transform_moments(mv, a, 0.0);
        for (int n = 1; n <= 4; ++n)
            for (double t : {0.1, 1.0, 10.0})
                require(rel_diff(channel_pmmse_at(scaled, n, t),
                                 a * a * channel_pmmse_at(mv, n, a * a * t)) <= 1e-9,
                        "scale equivariance violated");
    }

    // Symmetric-input collapse: n = 2k matches n = 2k-1.
    for (DistKind kind : {DistKind::Rademacher, DistKind::Uniform}) {
        DistributionSpec spec;
        spec.kind = kind;
        if (kind == DistKind::Uniform) { spec.lo = -1.0; spec.hi = 1.0; }
        MomentVector mv = exact_moments(spec, 12);
        for (int k = 1; k <= 3; ++k)
            for (double t : {0.2, 1.0, 5.0})
                require(std::abs(channel_pmmse_at(mv, 2 * k, t) -
                                 channel_pmmse_at(mv, 2 * k - 1, t)) <= 1e-10,
                        "symmetric-input collapse violated");
    }

    // Orthogonality and total expectation of the fitted estimate.
    {
        SplitMix64 srng(4242);
        const int m = 400;
        std::vector<double> xs(m), ys(m);
        for (int i = 0; i < m; ++i) {
            double y = srng.normal();
            ys[static_cast<size_t>(i)] = y;
            xs[static_cast<size_t>(i)] = y * y + 0.3 * srng.normal();
        }
        const int n = 3;
        MomentVector ymv = sample_moments(ys, 2 * n);
        CrossMoments cm;
        cm.e_xy.assign(static_cast<size_t>(n) + 1, 0.0);
        cm.e_x2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double p = 1.0;
            for (int k = 0; k <= n; ++k) {
                cm.e_xy[static_cast<size_t>(k)] += xs[static_cast<size_t>(i)] * p;
                p *= ys[static_cast<size_t>(i)];
            }
            cm.e_x2 += xs[static_cast<size_t>(i)] * xs[static_cast<size_t>(i)];
        }
        for (double& v : cm.e_xy) v /= m;
        cm.e_x2 /= m;
        PmmseEstimate est = pmmse_estimate(cm, hankel(ymv, n));
        for (int k = 0; k <= n; ++k) {
            double dot = 0.0;
            for (int i = 0; i < m; ++i) {
                double resid = xs[static_cast<size_t>(i)] - est.eval(ys[static_cast<size_t>(i)]);
                dot += resid * std::pow(ys[static_cast<size_t>(i)], k);
            }
            require(std::abs(dot / m) <= 1e-9, "orthogonality violated");
        }
    }

    // Brute-force determinant identity for small finitely supported laws.
    {
        std::vector<double> atoms{-1.0, 0.0, 1.0, 2.5};
        std::vector<double> probs{0.1, 0.3, 0.4, 0.2};
        for (int n = 1; n <= 3; ++n) {
            MomentVector mv;
            mv.order = 2 * n;
            mv.values.assign(static_cast<size_t>(2 * n), 0.0);
            for (int k = 1; k <= 2 * n; ++k) {
                double acc = 0.0;
                for (size_t i = 0; i < atoms.size(); ++i) acc += probs[i] * std::pow(atoms[i], k);
                mv.values[static_cast<size_t>(k) - 1] = acc;
            }
            // (1/(n+1)!) E[prod_{i<j} (Z_i - Z_j)^2] over (n+1) i.i.d. copies.
            double expected = 0.0;
            std::vector<size_t> idx(static_cast<size_t>(n) + 1, 0);
            auto enumerate = [&](auto&& self, int pos) -> void {
                if (pos == n + 1) {
                    double w = 1.0, prod = 1.0;
                    for (int i = 0; i <= n; ++i) w *= probs[idx[static_cast<size_t>(i)]];
                    for (int i = 0; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j) {
                            double d = atoms[idx[static_cast<size_t>(i)]] - atoms[idx[static_cast<size_t>(j)]];
                            prod *= d * d;
                        }
                    expected += w * prod;
                    return;
                }
                for (size_t a = 0; a < atoms.size(); ++a) {
                    idx[static_cast<size_t>(pos)] = a;
                    self(self, pos + 1);
                }
            };
            enumerate(enumerate, 0);
            double fact = 1.0;
            for (int i = 2; i <= n + 1; ++i) fact *= i;
            expected /= fact;
            double det = det_and_factor(hankel(mv, n)).det;
            require(rel_diff(det, expected) <= 1e-12, "Vandermonde determinant oracle mismatch");
        }
    }

    // Least-squares normal equations recover the same coefficients.
    {
        SplitMix64 srng(777);
        const int m = 60, n = 2;
        std::vector<double> xs(m), ys(m);
        for (int i = 0; i < m; ++i) {
            ys[static_cast<size_t>(i)] = srng.normal();
            xs[static_cast<size_t>(i)] =
                1.0 + 2.0 * ys[static_cast<size_t>(i)] + 0.5 * srng.normal();
        }
        MomentVector ymv = sample_moments(ys, 2 * n);
        CrossMoments cm;
        cm.e_xy.assign(static_cast<size_t>(n) + 1, 0.0);
        for (int i = 0; i < m; ++i) {
            double p = 1.0;
            for (int k = 0; k <= n; ++k) {
                cm.e_xy[static_cast<size_t>(k)] += xs[static_cast<size_t>(i)] * p;
                p *= ys[static_cast<size_t>(i)];
            }
        }
        for (double& v : cm.e_xy) v /= m;
        PmmseEstimate est = pmmse_estimate(cm, hankel(ymv, n));
        // Normal equations (Y^T Y) beta = Y^T X solved by Gaussian elimination.
        std::vector<std::vector<double>> A(static_cast<size_t>(n) + 1,
                                           std::vector<double>(static_cast<size_t>(n) + 2, 0.0));
        for (int i = 0; i < m; ++i) {
            std::vector<double> row(static_cast<size_t>(n) + 1);
            double p = 1.0;
            for (int k = 0; k <= n; ++k) { row[static_cast<size_t>(k)] = p; p *= ys[static_cast<size_t>(i)]; }
            for (int r = 0; r <= n; ++r) {
                for (int c = 0; c <= n; ++c) A[static_cast<size_t>(r)][static_cast<size_t>(c)] += row[static_cast<size_t>(r)] * row[static_cast<size_t>(c)];
                A[static_cast<size_t>(r)][static_cast<size_t>(n) + 1] += row[static_cast<size_t>(r)] * xs[static_cast<size_t>(i)];
            }
        }
        for (int col = 0; col <= n; ++col) {
            int piv = col;
            for (int r = col + 1; r <= n; ++r)
                if (std::abs(A[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
                    std::abs(A[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                    piv = r;
            std::swap(A[static_cast<size_t>(col)], A[static_cast<size_t>(piv)]);
            for (int r = 0; r <= n; ++r) {
                if (r == col) continue;
                double f = A[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                           A[static_cast<size_t>(col)][static_cast<size_t>(col)];
                for (int c = col; c <= n + 1; ++c)
                    A[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                        f * A[static_cast<size_t>(col)][static_cast<size_t>(c)];
            }
        }
        for (int k = 0; k <= n; ++k) {
            double beta = A[static_cast<size_t>(k)][static_cast<size_t>(n) + 1] /
                          A[static_cast<size_t>(k)][static_cast<size_t>(k)];
            require(std::abs(beta - est.coeffs[static_cast<size_t>(k)]) <= 1e-9,
                    "normal-equation coefficients differ");
        }
    }

    detail << "all property groups green";
}

} // namespace

int run_acceptance(std::ostream& out) {
    std::vector<Criterion> criteria = {
        {1, "Rademacher rational n=5 matches the reference polynomials", criterion_rademacher_rational},
        {2, "coefficient identities across random standardized mixtures", criterion_coefficient_identities},
        {3, "n=2 closed form on zero-mean unit-variance inputs", criterion_n2_closed_form},
        {4, "Gaussian fixed point of h_n", criterion_gaussian_fixed_point},
        {5, "Rayleigh ladder and h_10 gap", criterion_rayleigh_ladder},
        {6, "uniform h_2 worked example", criterion_uniform_worked_example},
        {7, "bivariate Gaussian mutual information", criterion_gaussian_mi},
        {8, "scaling resilience of i_hat", criterion_scaling_resilience},
        {9, "semicircle h_hat10 error trend", criterion_semicircle_experiment},
        {10, "independence i_hat5 error trend", criterion_independence_experiment},
        {11, "partition combinatorics C_r", criterion_partition_combinatorics},
        {12, "conditional-expectation derivative formula", criterion_derivative_formula},
        {13, "property suites", criterion_property_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::ostringstream detail;
        bool ok = true;
        std::string err;
        try {
            c.body(detail);
        } catch (const std::exception& e) {
            ok = false;
            err = e.what();
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name;
        if (ok && detail.str().size()) out << " (" << detail.str() << ")";
        if (!ok) out << " -- " << err;
        out << " [" << secs << "s]\n";
        if (!ok) ++failures;
    }
    return failures;
}

} // namespace momentinfo::selftest
