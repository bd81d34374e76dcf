#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "momentinfo/csv.hpp"
#include "momentinfo/distributions.hpp"
#include "momentinfo/entropy.hpp"
#include "momentinfo/experiment.hpp"
#include "momentinfo/mutual_info.hpp"
#include "momentinfo/pmmse.hpp"
#include "momentinfo/selftest.hpp"

namespace mi = momentinfo;

namespace {

std::vector<int> parse_sizes(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

mi::MomentVector moments_from_arg(const std::string& arg, int order) {
    // Either a named analytic kind or a comma-separated list mu_1,...,mu_{2n}.
    if (arg.find(',') == std::string::npos && !arg.empty() && !std::isdigit(arg[0]) &&
        arg[0] != '-' && arg[0] != '.') {
        mi::DistributionSpec spec;
        spec.kind = mi::parse_dist_kind(arg);
        return mi::exact_moments(spec, order);
    }
    mi::MomentVector mv;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) mv.values.push_back(std::stod(item));
    mv.order = static_cast<int>(mv.values.size());
    if (mv.order < order)
        throw mi::ConfigError("need at least " + std::to_string(order) + " moments");
    return mv;
}

int run(int argc, char** argv) {
    CLI::App app{"moment-based information measures"};
    app.require_subcommand(1);

    // entropy
    auto* cmd_entropy = app.add_subcommand("entropy", "differential entropy from sample CSV");
    int e_n = 10, e_dim = 1;
    std::string e_input;
    double e_abs_tol = 1e-10, e_rel_tol = 1e-9;
    cmd_entropy->add_option("--n", e_n, "estimator degree")->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--dim", e_dim, "sample dimension")->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--input", e_input, "sample CSV, one column per coordinate")->required();
    cmd_entropy->add_option("--abs-tol", e_abs_tol, "quadrature absolute tolerance");
    cmd_entropy->add_option("--rel-tol", e_rel_tol, "quadrature relative tolerance");

    // mi
    auto* cmd_mi = app.add_subcommand("mi", "mutual information from labeled CSV (label, y)");
    int m_n = 5;
    std::string m_input;
    double m_abs_tol = 1e-10, m_rel_tol = 1e-9;
    cmd_mi->add_option("--n", m_n, "estimator degree")->check(CLI::PositiveNumber);
    cmd_mi->add_option("--input", m_input, "two-column CSV: label, y")->required();
    cmd_mi->add_option("--abs-tol", m_abs_tol, "quadrature absolute tolerance");
    cmd_mi->add_option("--rel-tol", m_rel_tol, "quadrature relative tolerance");

    // pmmse-rational
    auto* cmd_rat = app.add_subcommand("pmmse-rational",
                                       "numerator/denominator of pmmse_n(X,t)");
    int r_n = 5;
    std::string r_moments = "rademacher";
    cmd_rat->add_option("--n", r_n, "degree")->check(CLI::PositiveNumber);
    cmd_rat->add_option("--moments", r_moments,
                        "named kind (rademacher, gaussian, uniform, semicircle, rayleigh_chi2, "
                        "gauss_mix_1d) or comma-separated mu_1..mu_2n");

    // experiment
    auto* cmd_exp = app.add_subcommand("experiment", "estimator benchmark with bootstrap CIs");
    std::string x_dist = "semicircle", x_estimator = "h_hat", x_sizes = "800,1600,2400,3200,4000";
    std::string x_output, x_baseline;
    int x_n = 10, x_dim = 1, x_trials = 50;
    std::uint64_t x_seed = 1;
    double x_scale = 1.0, x_abs_tol = 1e-10, x_rel_tol = 1e-9;
    cmd_exp->add_option("--dist", x_dist, "distribution kind");
    cmd_exp->add_option("--estimator", x_estimator, "h_hat, h_hat_multivariate, or i_hat");
    cmd_exp->add_option("--n", x_n, "estimator degree")->check(CLI::PositiveNumber);
    cmd_exp->add_option("--dim", x_dim, "dimension for h_hat_multivariate");
    cmd_exp->add_option("--sizes", x_sizes, "comma-separated sample sizes");
    cmd_exp->add_option("--trials", x_trials, "trials per size")->check(CLI::PositiveNumber);
    cmd_exp->add_option("--seed", x_seed, "rng seed");
    cmd_exp->add_option("--y-scale", x_scale, "scale the continuous coordinate before estimating");
    cmd_exp->add_option("--output", x_output, "report CSV path (stdout when omitted)");
    cmd_exp->add_option("--baseline-csv", x_baseline,
                        "merge external results (estimator,sample_size,trial,estimate)");
    cmd_exp->add_option("--abs-tol", x_abs_tol, "quadrature absolute tolerance");
    cmd_exp->add_option("--rel-tol", x_rel_tol, "quadrature relative tolerance");

    auto* cmd_selftest = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    if (cmd_entropy->parsed()) {
        mi::QuadConfig quad;
        quad.abs_tol = e_abs_tol;
        quad.rel_tol = e_rel_tol;
        auto rows = mi::read_numeric_csv(e_input);
        if (static_cast<int>(rows[0].size()) < e_dim)
            throw mi::ConfigError("CSV has fewer columns than --dim");
        mi::EntropyEstimate est;
        if (e_dim == 1) {
            std::vector<double> xs(rows.size());
            for (size_t i = 0; i < rows.size(); ++i) xs[i] = rows[i][0];
            est = mi::h_hat(xs, e_n, quad);
        } else {
            for (auto& r : rows) r.resize(static_cast<size_t>(e_dim));
            est = mi::h_hat_multivariate(rows, e_n, e_dim, quad);
        }
        std::cout << "h_" << e_n << " = " << mi::format_double(est.value) << " nats\n"
                  << "logdet_part = " << mi::format_double(est.logdet_part)
                  << "\nintegral_part = " << mi::format_double(est.integral_part)
                  << "\nquad_err = " << mi::format_double(est.quad_err)
                  << "\nlog_scale_correction = " << mi::format_double(est.log_scale_total())
                  << "\n";
        return 0;
    }

    if (cmd_mi->parsed()) {
        mi::QuadConfig quad;
        quad.abs_tol = m_abs_tol;
        quad.rel_tol = m_rel_tol;
        auto pairs = mi::read_labeled_csv(m_input);
        mi::MiEstimate est = mi::i_hat(pairs, m_n, quad);
        std::cout << "I_" << m_n << " = " << mi::format_double(est.value) << " nats\n"
                  << "logdet_part = " << mi::format_double(est.logdet_part)
                  << "\nintegral_part = " << mi::format_double(est.integral_part)
                  << "\nquad_err = " << mi::format_double(est.quad_err)
                  << "\nfiltered_fraction = " << mi::format_double(est.filtered_fraction)
                  << "\nclasses = " << est.per_class.size() << "\n";
        return 0;
    }

    if (cmd_rat->parsed()) {
        mi::MomentVector mv = moments_from_arg(r_moments, 2 * r_n);
        mi::PmmseRational rat = mi::channel_rational(mv, r_n);
        std::cout << "n = " << r_n << ", d_n = " << rat.d_n << "\nnum:";
        for (int k = 0; k <= rat.num.degree(); ++k)
            std::cout << ' ' << mi::format_double(rat.num.coeff(k));
        std::cout << "\nden:";
        for (int k = 0; k <= rat.den.degree(); ++k)
            std::cout << ' ' << mi::format_double(rat.den.coeff(k));
        std::cout << "\neffective degrees: num " << rat.effective_num_degree << ", den "
                  << rat.effective_den_degree << "\n";
        return 0;
    }

    if (cmd_exp->parsed()) {
        mi::ExperimentConfig cfg;
        cfg.distribution.kind = mi::parse_dist_kind(x_dist);
        if (x_estimator == "h_hat") cfg.estimator = mi::EstimatorKind::HHat;
        else if (x_estimator == "h_hat_multivariate") cfg.estimator = mi::EstimatorKind::HHatMultivariate;
        else if (x_estimator == "i_hat") cfg.estimator = mi::EstimatorKind::IHat;
        else throw mi::ConfigError("unknown estimator: " + x_estimator);
        cfg.n = x_n;
        cfg.m = x_dim;
        cfg.sample_sizes = parse_sizes(x_sizes);
        cfg.trials = x_trials;
        cfg.seed = x_seed;
        cfg.y_scale = x_scale;
        cfg.quad.abs_tol = x_abs_tol;
        cfg.quad.rel_tol = x_rel_tol;
        mi::TrialReport report = mi::run_experiment(cfg);
        if (!x_baseline.empty())
            mi::merge_baseline_csv(report, x_baseline, cfg.bootstrap_resamples, cfg.seed);
        if (x_output.empty()) {
            report.write_csv(std::cout);
        } else {
            std::ofstream out(x_output, std::ios::binary);
            if (!out) throw mi::ConfigError("cannot open output file: " + x_output);
            report.write_csv(out);
            std::cout << "wrote " << x_output << "\n";
        }
        return 0;
    }

    if (cmd_selftest->parsed()) {
        int failures = mi::selftest::run_acceptance(std::cout);
        return failures == 0 ? 0 : 3;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
