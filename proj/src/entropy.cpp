#include "momentinfo/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace momentinfo {

namespace {
constexpr double kTwoPiE = 2.0 * M_PI * M_E;
}

double EntropyEstimate::log_scale_total() const {
    double s = 0.0;
    for (const auto& st : standardization) s += std::log(st.scale);
    return s;
}

RhoFunction rho(const MomentVector& mv, int n) {
    // Nondegeneracy at degree n; also supplies log det M_{X,n}.
    auto H = hankel(mv, n);
    auto factor = det_and_factor(H);

    RhoFunction r;
    r.rational = channel_rational(mv, n);
    const double d_n = static_cast<double>(r.rational.d_n);

    // rho(0) = 0 and the 1/t tail coefficient a^{d_n-1} - b^{d_n} = 0 hold
    // exactly; where the subtraction cancels to roundoff (relative to the two
    // terms combined at that index) the residue is dropped, so the
    // transformed integrand stays smooth out to t = infinity.
    const Polynomial den_deriv = r.rational.den.derivative();
    const int top = std::max(r.rational.num.degree(), den_deriv.degree());
    std::vector<double> cleaned(static_cast<size_t>(top) + 1, 0.0);
    for (int k = 0; k <= top; ++k) {
        const double a = r.rational.num.coeff(k);
        const double b = den_deriv.coeff(k) / d_n;
        const double diff = a - b;
        cleaned[static_cast<size_t>(k)] =
            (std::abs(diff) <= 1e-9 * std::max(std::abs(a), std::abs(b))) ? 0.0 : diff;
    }
    r.rho_num = Polynomial(Var::T, std::move(cleaned));

    r.logdet_constant =
        0.5 * (std::log(kTwoPiE) + (factor.logdet - log_gaussian_hankel_det(n)) / d_n);
    return r;
}

namespace {

// h_n for moments that are already well-conditioned (standardized upstream).
// The integrand (pmmse_n(t) - (1/d_n) d/dt log det M(t)) / 2 equals rho(t);
// it is evaluated pointwise through the Cholesky factorization, which stays
// accurate at degrees where the global polynomial coefficients lose precision.
EntropyEstimate h_n_core(const MomentVector& mv, int n, const QuadConfig& cfg) {
    auto factor = det_and_factor(hankel(mv, n));  // degeneracy gate + log det
    ScalarChannel chan(mv, n);
    const double d_n = static_cast<double>(chan.degree());
    QuadResult q = integrate_halfline(
        [&chan, d_n](double t) {
            double p = 0.0, d = 0.0;
            chan.evaluate(t, &p, &d);
            return 0.5 * (p - d / d_n);
        },
        cfg);
    EntropyEstimate est;
    est.n = n;
    est.logdet_part =
        0.5 * (std::log(kTwoPiE) + (factor.logdet - log_gaussian_hankel_det(n)) / d_n);
    est.integral_part = q.value;
    est.quad_err = q.err_estimate;
    est.value = est.logdet_part + est.integral_part;
    return est;
}

} // namespace

EntropyEstimate h_n_from_moments(const MomentVector& mv, int n, const QuadConfig& cfg) {
    // Condition through the exact affine law: standardize the moment vector,
    // compute there, and add log(scale) back.
    const double mean = mv.mu(1);
    const double var = mv.mu(2) - mean * mean;
    if (!(var > 0.0)) throw DegenerateSupport("h_n_from_moments: zero variance");
    const double sd = std::sqrt(var);
    MomentVector std_mv = affine_transform_moments(mv, 1.0 / sd, -mean / sd);
    EntropyEstimate est = h_n_core(std_mv, n, cfg);
    est.standardization = {Standardization{mean, sd}};
    est.value += std::log(sd);
    return est;
}

EntropyEstimate h_hat(std::span<const double> samples, int n, const QuadConfig& cfg) {
    std::set<double> distinct(samples.begin(), samples.end());
    if (static_cast<int>(distinct.size()) < n + 1)
        throw DegenerateSupport("h_hat: fewer than n+1 distinct sample values");
    auto [std_samples, st] = standardize(samples);
    MomentVector mv = sample_moments(std_samples, 2 * n);
    EntropyEstimate est = h_n_from_moments(mv, n, cfg);
    est.standardization.insert(est.standardization.begin(), st);
    est.value += std::log(st.scale);
    return est;
}

EntropyEstimate h_n_multivariate(const MultiMomentTable& table, int n, int m,
                                 const QuadConfig& cfg) {
    MultivariateChannel chan(table, n, m);
    const double md = static_cast<double>(m) / chan.degree();

    // Diagnostic: integrand must vanish at t = 0 (centered input).
    {
        double p0 = 0.0, d0 = 0.0;
        chan.evaluate(0.0, &p0, &d0);
        if (std::abs(0.5 * (p0 - md * d0)) > 1e-6 * std::max(1.0, static_cast<double>(m)))
            throw InternalConsistency("h_n_multivariate: integrand nonzero at t=0 "
                                      "(input not standardized per coordinate)");
    }

    // Determinants of the input and Gaussian-reference moment matrices over
    // the same basis; factoring the input first is also the degeneracy gate.
    const int K = chan.basis_size();
    const auto basis = multi_index_basis(m, n);
    std::vector<double> MV(static_cast<size_t>(K) * K, 0.0);
    std::vector<double> MN(static_cast<size_t>(K) * K, 0.0);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            std::vector<int> gamma(static_cast<size_t>(m));
            for (int c = 0; c < m; ++c)
                gamma[static_cast<size_t>(c)] = basis[static_cast<size_t>(i)][static_cast<size_t>(c)] +
                                                basis[static_cast<size_t>(j)][static_cast<size_t>(c)];
            MV[static_cast<size_t>(i) * K + j] = table.at(gamma);
            MN[static_cast<size_t>(i) * K + j] = gaussian_joint_moment(gamma);
        }
    }
    const double logdet_input = factor_spd(MV, K).logdet;
    const double logdet_gauss = factor_spd(MN, K).logdet;

    QuadResult q = integrate_halfline(
        [&chan, md](double t) {
            double p = 0.0, d = 0.0;
            chan.evaluate(t, &p, &d);
            return 0.5 * (p - md * d);
        },
        cfg);

    EntropyEstimate est;
    est.n = n;
    est.logdet_part =
        0.5 * (m * std::log(kTwoPiE) + md * (logdet_input - logdet_gauss));
    est.integral_part = q.value;
    est.quad_err = q.err_estimate;
    est.value = est.logdet_part + est.integral_part;
    return est;
}

EntropyEstimate h_hat_multivariate(const std::vector<std::vector<double>>& samples,
                                   int n, int m, const QuadConfig& cfg) {
    if (samples.empty()) throw ConfigError("h_hat_multivariate: empty sample set");
    std::vector<std::vector<double>> cols(static_cast<size_t>(m));
    for (auto& c : cols) c.reserve(samples.size());
    for (const auto& row : samples) {
        if (static_cast<int>(row.size()) != m)
            throw ConfigError("h_hat_multivariate: sample row width mismatch");
        for (int c = 0; c < m; ++c) cols[static_cast<size_t>(c)].push_back(row[static_cast<size_t>(c)]);
    }
    std::vector<Standardization> sts;
    std::vector<std::vector<double>> std_rows(samples.size(), std::vector<double>(static_cast<size_t>(m)));
    for (int c = 0; c < m; ++c) {
        auto [sc, st] = standardize(cols[static_cast<size_t>(c)]);
        sts.push_back(st);
        for (size_t j = 0; j < samples.size(); ++j) std_rows[j][static_cast<size_t>(c)] = sc[j];
    }
    MultiMomentTable table = joint_sample_moments(std_rows, m, 2 * n);
    EntropyEstimate est = h_n_multivariate(table, n, m, cfg);
    est.standardization = sts;
    est.value += est.log_scale_total();
    return est;
}

} // namespace momentinfo
