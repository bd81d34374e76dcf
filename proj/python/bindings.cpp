#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "momentinfo/condexp.hpp"
#include "momentinfo/distributions.hpp"
#include "momentinfo/entropy.hpp"
#include "momentinfo/experiment.hpp"
#include "momentinfo/mutual_info.hpp"
#include "momentinfo/pmmse.hpp"
#include "momentinfo/rng.hpp"
#include "momentinfo/selftest.hpp"

namespace py = pybind11;
using namespace momentinfo;

namespace {

MomentVector to_moment_vector(const std::vector<double>& moments) {
    MomentVector mv;
    mv.order = static_cast<int>(moments.size());
    mv.values = moments;
    if (mv.order < 2 || mv.order % 2 != 0)
        throw ConfigError("moment list must have even length >= 2");
    return mv;
}

QuadConfig quad_config(double abs_tol, double rel_tol) {
    QuadConfig cfg;
    cfg.abs_tol = abs_tol;
    cfg.rel_tol = rel_tol;
    return cfg;
}

py::dict entropy_dict(const EntropyEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["n"] = est.n;
    d["logdet_part"] = est.logdet_part;
    d["integral_part"] = est.integral_part;
    d["quad_err"] = est.quad_err;
    d["log_scale"] = est.log_scale_total();
    return d;
}

py::dict mi_dict(const MiEstimate& est) {
    py::dict d;
    d["value"] = est.value;
    d["n"] = est.n;
    d["logdet_part"] = est.logdet_part;
    d["integral_part"] = est.integral_part;
    d["quad_err"] = est.quad_err;
    d["filtered_fraction"] = est.filtered_fraction;
    d["num_classes"] = est.per_class.size();
    return d;
}

} // namespace

PYBIND11_MODULE(_momentinfo, m) {
    m.doc() = "moment-based information measures: polynomial MMSE, differential "
              "entropy, and mutual information computed from moments";

    py::register_exception<DegenerateSupport>(m, "DegenerateSupportError");
    py::register_exception<QuadratureFailure>(m, "QuadratureFailureError");
    py::register_exception<EmptyAfterFilter>(m, "EmptyAfterFilterError");
    py::register_exception<InternalConsistency>(m, "InternalConsistencyError");
    py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);

    m.def("sample_moments",
          [](const std::vector<double>& xs, int order) {
              return sample_moments(xs, order).values;
          },
          py::arg("samples"), py::arg("order"),
          "Raw moments mu_1..mu_order of a sample set.");

    m.def("standardize",
          [](const std::vector<double>& xs) {
              auto [out, st] = standardize(xs);
              return py::make_tuple(out, st.shift, st.scale);
          },
          py::arg("samples"), "Returns (standardized samples, shift, scale).");

    m.def("gaussian_moment", &gaussian_moment, py::arg("k"),
          "k-th moment of a standard normal: (k-1)!! for even k, else 0.");

    m.def("hankel_det",
          [](const std::vector<double>& moments, int n) {
              return det_and_factor(hankel(to_moment_vector(moments), n)).det;
          },
          py::arg("moments"), py::arg("n"),
          "Determinant of the (n+1)x(n+1) Hankel moment matrix.");

    m.def("channel_rational",
          [](const std::vector<double>& moments, int n) {
              auto rat = channel_rational(to_moment_vector(moments), n);
              py::dict d;
              d["n"] = rat.n;
              d["d_n"] = rat.d_n;
              d["num"] = rat.num.coeffs();
              d["den"] = rat.den.coeffs();
              d["effective_num_degree"] = rat.effective_num_degree;
              d["effective_den_degree"] = rat.effective_den_degree;
              return d;
          },
          py::arg("moments"), py::arg("n"),
          "pmmse_n(X,t) as numerator/denominator coefficients in t, "
          "denominator normalized to constant term 1.");

    m.def("channel_pmmse",
          [](const std::vector<double>& moments, int n, double t) {
              return channel_pmmse_at(to_moment_vector(moments), n, t);
          },
          py::arg("moments"), py::arg("n"), py::arg("t"),
          "pmmse_n(X,t) evaluated numerically at one SNR.");

    m.def("entropy_from_moments",
          [](const std::vector<double>& moments, int n, double abs_tol, double rel_tol) {
              return entropy_dict(
                  h_n_from_moments(to_moment_vector(moments), n, quad_config(abs_tol, rel_tol)));
          },
          py::arg("moments"), py::arg("n"), py::arg("abs_tol") = 1e-10,
          py::arg("rel_tol") = 1e-9, "h_n in nats from exact or sample moments.");

    m.def("entropy",
          [](const std::vector<double>& samples, int n, double abs_tol, double rel_tol) {
              return entropy_dict(h_hat(samples, n, quad_config(abs_tol, rel_tol)));
          },
          py::arg("samples"), py::arg("n") = 10, py::arg("abs_tol") = 1e-10,
          py::arg("rel_tol") = 1e-9,
          "Differential entropy estimate h_hat_n from scalar samples (nats).");

    m.def("entropy_multivariate",
          [](const std::vector<std::vector<double>>& rows, int n, int dim, double abs_tol,
             double rel_tol) {
              return entropy_dict(h_hat_multivariate(rows, n, dim, quad_config(abs_tol, rel_tol)));
          },
          py::arg("samples"), py::arg("n") = 6, py::arg("dim") = 2, py::arg("abs_tol") = 1e-10,
          py::arg("rel_tol") = 1e-9,
          "Differential entropy estimate for vector samples (one row per draw).");

    m.def("mutual_information",
          [](const std::vector<std::string>& labels, const std::vector<double>& ys, int n,
             double abs_tol, double rel_tol) {
              if (labels.size() != ys.size())
                  throw ConfigError("labels and ys must have equal length");
              std::vector<std::pair<std::string, double>> pairs(labels.size());
              for (size_t i = 0; i < labels.size(); ++i) pairs[i] = {labels[i], ys[i]};
              return mi_dict(i_hat(pairs, n, quad_config(abs_tol, rel_tol)));
          },
          py::arg("labels"), py::arg("ys"), py::arg("n") = 5, py::arg("abs_tol") = 1e-10,
          py::arg("rel_tol") = 1e-9,
          "Mutual information estimate I_hat_n between a categorical X and a "
          "continuous Y (nats). Labels occurring at most n times are dropped.");

    m.def("enumerate_partition_count",
          [](int r) { return enumerate_partitions(r).size(); }, py::arg("r"),
          "Number of partitions of r into parts >= 2.");

    m.def("c_r", &C_r_closed_form, py::arg("r"),
          "Total count of cyclically-invariant ordered set partitions with "
          "blocks of size >= 2.");

    m.def("cond_exp",
          [](const std::vector<double>& atoms, const std::vector<double>& probs, double y,
             int k_max) {
              auto r = cond_exp_and_central_moments(DiscreteInput{atoms, probs}, y, k_max);
              return py::make_tuple(r.f, r.g);
          },
          py::arg("atoms"), py::arg("probs"), py::arg("y"), py::arg("k_max") = 2,
          "E[X | X+N = y] and central conditional moments g_0..g_k for a "
          "finitely supported X.");

    m.def("cond_exp_derivative",
          [](const std::vector<double>& atoms, const std::vector<double>& probs, double y,
             int r) { return cond_exp_derivative(DiscreteInput{atoms, probs}, y, r); },
          py::arg("atoms"), py::arg("probs"), py::arg("y"), py::arg("r"),
          "(r-1)-th derivative of y -> E[X | X+N = y] via the partition expansion.");

    m.def("sample",
          [](const std::string& kind, int m, std::uint64_t seed) {
              DistributionSpec spec;
              spec.kind = parse_dist_kind(kind);
              SplitMix64 rng(seed);
              return sample(spec, m, rng);
          },
          py::arg("kind"), py::arg("m"), py::arg("seed") = 0,
          "Draws m samples from a named benchmark distribution (rows).");

    m.def("ground_truth",
          [](const std::string& kind) {
              DistributionSpec spec;
              spec.kind = parse_dist_kind(kind);
              auto gt = ground_truth(spec);
              return py::make_tuple(gt.value, gt.provenance);
          },
          py::arg("kind"), "Reference value in nats plus its provenance tag.");

    m.def("exact_moments",
          [](const std::string& kind, int order) {
              DistributionSpec spec;
              spec.kind = parse_dist_kind(kind);
              return exact_moments(spec, order).values;
          },
          py::arg("kind"), py::arg("order"),
          "Analytic raw moments mu_1..mu_order for the analytic kinds.");

    m.def("run_experiment",
          [](const std::string& kind, const std::string& estimator, int n, int dim,
             const std::vector<int>& sizes, int trials, std::uint64_t seed, double y_scale) {
              ExperimentConfig cfg;
              cfg.distribution.kind = parse_dist_kind(kind);
              if (estimator == "h_hat") cfg.estimator = EstimatorKind::HHat;
              else if (estimator == "h_hat_multivariate")
                  cfg.estimator = EstimatorKind::HHatMultivariate;
              else if (estimator == "i_hat") cfg.estimator = EstimatorKind::IHat;
              else throw ConfigError("unknown estimator: " + estimator);
              cfg.n = n;
              cfg.m = dim;
              cfg.sample_sizes = sizes;
              cfg.trials = trials;
              cfg.seed = seed;
              cfg.y_scale = y_scale;
              auto report = run_experiment(cfg);
              std::ostringstream out;
              report.write_csv(out);
              return out.str();
          },
          py::arg("kind"), py::arg("estimator"), py::arg("n"), py::arg("dim") = 1,
          py::arg("sizes") = std::vector<int>{800, 1600, 2400, 3200, 4000},
          py::arg("trials") = 50, py::arg("seed") = 1, py::arg("y_scale") = 1.0,
          "Runs the benchmark harness; returns the report CSV as a string.");

    m.def("selftest",
          []() {
              std::ostringstream out;
              int failures = selftest::run_acceptance(out);
              return py::make_tuple(failures, out.str());
          },
          "Runs the acceptance suite; returns (failure count, report text).");
}
