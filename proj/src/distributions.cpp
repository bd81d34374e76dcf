#include "momentinfo/distributions.hpp"

#include <cmath>

namespace momentinfo {

int DistributionSpec::dimension() const {
    switch (kind) {
        case DistKind::Semicircle2d:
        case DistKind::GaussMix2d:
        case DistKind::ZeroInflatedPoissonPair:
        case DistKind::BernoulliUniformPair:
            return 2;
        default:
            return 1;
    }
}

bool DistributionSpec::is_pair() const {
    return kind == DistKind::ZeroInflatedPoissonPair || kind == DistKind::BernoulliUniformPair;
}

void DistributionSpec::validate() const {
    if (sigma <= 0.0) throw ConfigError("DistributionSpec: sigma must be positive");
    if (kind == DistKind::Uniform && !(hi > lo)) throw ConfigError("DistributionSpec: invalid uniform bounds");
    if (kind == DistKind::GaussMix1d) {
        if (mix_weights.size() != mix_means.size() || mix_weights.size() != mix_sigmas.size() ||
            mix_weights.empty())
            throw ConfigError("DistributionSpec: mixture parameter lengths differ");
        double total = 0.0;
        for (double w : mix_weights) {
            if (!(w > 0.0)) throw ConfigError("DistributionSpec: mixture weights must be positive");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) throw ConfigError("DistributionSpec: mixture weights must sum to 1");
        for (double s : mix_sigmas)
            if (!(s > 0.0)) throw ConfigError("DistributionSpec: mixture sigmas must be positive");
    }
    if (zero_inflation < 0.0 || zero_inflation >= 1.0)
        throw ConfigError("DistributionSpec: zero_inflation must be in [0,1)");
    if (bernoulli_p <= 0.0 || bernoulli_p >= 1.0)
        throw ConfigError("DistributionSpec: bernoulli_p must be in (0,1)");
    if (!(pair_hi > pair_lo)) throw ConfigError("DistributionSpec: invalid pair bounds");
}

DistKind parse_dist_kind(const std::string& name) {
    if (name == "semicircle") return DistKind::Semicircle;
    if (name == "semicircle2d") return DistKind::Semicircle2d;
    if (name == "gauss_mix_1d") return DistKind::GaussMix1d;
    if (name == "gauss_mix_2d") return DistKind::GaussMix2d;
    if (name == "zero_inflated_poisson_pair") return DistKind::ZeroInflatedPoissonPair;
    if (name == "bernoulli_uniform_pair") return DistKind::BernoulliUniformPair;
    if (name == "gaussian") return DistKind::Gaussian;
    if (name == "rayleigh_chi2") return DistKind::RayleighChi2;
    if (name == "uniform") return DistKind::Uniform;
    if (name == "rademacher") return DistKind::Rademacher;
    throw ConfigError("unknown distribution kind: " + name);
}

std::string dist_kind_name(DistKind kind) {
    switch (kind) {
        case DistKind::Semicircle: return "semicircle";
        case DistKind::Semicircle2d: return "semicircle2d";
        case DistKind::GaussMix1d: return "gauss_mix_1d";
        case DistKind::GaussMix2d: return "gauss_mix_2d";
        case DistKind::ZeroInflatedPoissonPair: return "zero_inflated_poisson_pair";
        case DistKind::BernoulliUniformPair: return "bernoulli_uniform_pair";
        case DistKind::Gaussian: return "gaussian";
        case DistKind::RayleighChi2: return "rayleigh_chi2";
        case DistKind::Uniform: return "uniform";
        case DistKind::Rademacher: return "rademacher";
    }
    throw ConfigError("unknown distribution kind");
}

namespace {

// Inverse CDF of the radius-1 semicircle law by bisection on
// F(x) = 1/2 + (x sqrt(1-x^2) + asin x) / pi.
double semicircle_inverse_cdf(double u) {
    auto cdf = [](double x) {
        return 0.5 + (x * std::sqrt(std::max(0.0, 1.0 - x * x)) + std::asin(x)) / M_PI;
    };
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double sample_gauss_mix_1d(const DistributionSpec& spec, SplitMix64& rng) {
    double u = rng.uniform();
    size_t idx = 0;
    double acc = 0.0;
    for (size_t i = 0; i < spec.mix_weights.size(); ++i) {
        acc += spec.mix_weights[i];
        if (u < acc) { idx = i; break; }
        idx = i;
    }
    return spec.mix_means[idx] + spec.mix_sigmas[idx] * rng.normal();
}

} // namespace

std::vector<std::vector<double>> sample(const DistributionSpec& spec, int m, SplitMix64& rng) {
    if (m < 1) throw ConfigError("sample: m must be >= 1");
    spec.validate();
    std::vector<std::vector<double>> out(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        auto& row = out[static_cast<size_t>(i)];
        switch (spec.kind) {
            case DistKind::Semicircle:
                row = {semicircle_inverse_cdf(rng.uniform())};
                break;
            case DistKind::Semicircle2d:
                row = {semicircle_inverse_cdf(rng.uniform()), semicircle_inverse_cdf(rng.uniform())};
                break;
            case DistKind::GaussMix1d:
                row = {sample_gauss_mix_1d(spec, rng)};
                break;
            case DistKind::GaussMix2d: {
                // Components: N((-1,-1), [[1,.5],[.5,1]]) and N((1,1), I), equal weights.
                double z1 = rng.normal(), z2 = rng.normal();
                if (rng.uniform() < 0.5) {
                    row = {-1.0 + z1, -1.0 + 0.5 * z1 + std::sqrt(0.75) * z2};
                } else {
                    row = {1.0 + z1, 1.0 + z2};
                }
                break;
            }
            case DistKind::ZeroInflatedPoissonPair: {
                double y = rng.exponential();
                double x = (rng.uniform() < spec.zero_inflation)
                               ? 0.0
                               : static_cast<double>(rng.poisson(y));
                row = {x, y};
                break;
            }
            case DistKind::BernoulliUniformPair: {
                double x = (rng.uniform() < spec.bernoulli_p) ? 1.0 : 0.0;
                double y = spec.pair_lo + (spec.pair_hi - spec.pair_lo) * rng.uniform();
                row = {x, y};
                break;
            }
            case DistKind::Gaussian:
                row = {spec.mean + spec.sigma * rng.normal()};
                break;
            case DistKind::RayleighChi2:
                row = {spec.sigma * std::sqrt(-2.0 * std::log(rng.uniform_pos()))};
                break;
            case DistKind::Uniform:
                row = {spec.lo + (spec.hi - spec.lo) * rng.uniform()};
                break;
            case DistKind::Rademacher:
                row = {rng.uniform() < 0.5 ? -1.0 : 1.0};
                break;
        }
    }
    return out;
}

GroundTruth ground_truth(const DistributionSpec& spec) {
    switch (spec.kind) {
        case DistKind::Semicircle: return {0.64473, "paper"};
        case DistKind::Semicircle2d: return {1.28946, "paper"};
        case DistKind::GaussMix1d: return {2.34249, "paper"};
        case DistKind::GaussMix2d: return {3.22406, "paper"};
        case DistKind::ZeroInflatedPoissonPair: return {0.25606, "paper"};
        case DistKind::BernoulliUniformPair: return {0.0, "analytic"};
        case DistKind::Gaussian:
            return {0.5 * std::log(2.0 * M_PI * M_E * spec.sigma * spec.sigma), "analytic"};
        case DistKind::RayleighChi2:
            // 1 + ln(sigma/sqrt(2)) + gamma/2
            return {1.0 + std::log(spec.sigma / std::sqrt(2.0)) +
                        0.57721566490153286060651209008240243 / 2.0,
                    "analytic"};
        case DistKind::Uniform: return {std::log(spec.hi - spec.lo), "analytic"};
        default: return {std::nan(""), "none"};
    }
}

MomentVector exact_moments(const DistributionSpec& spec, int order) {
    if (order < 2 || order % 2 != 0) throw ConfigError("exact_moments: order must be even and >= 2");
    MomentVector mv;
    mv.order = order;
    mv.values.assign(static_cast<size_t>(order), 0.0);
    auto set = [&mv](int k, double v) { mv.values[static_cast<size_t>(k) - 1] = v; };
    switch (spec.kind) {
        case DistKind::Semicircle:
            // mu_{2k} = Catalan(k) / 4^k
            for (int k = 2; k <= order; k += 2) {
                int half = k / 2;
                double catalan = binomial(2 * half, half) / (half + 1.0);
                set(k, catalan / std::pow(4.0, half));
            }
            break;
        case DistKind::Gaussian:
            for (int k = 1; k <= order; ++k) {
                double acc = 0.0;
                for (int j = 0; j <= k; ++j)
                    acc += binomial(k, j) * std::pow(spec.mean, k - j) *
                           std::pow(spec.sigma, j) * gaussian_moment(j);
                set(k, acc);
            }
            break;
        case DistKind::RayleighChi2:
            for (int k = 1; k <= order; ++k)
                set(k, std::pow(spec.sigma, k) * std::pow(2.0, k / 2.0) *
                           std::tgamma(1.0 + k / 2.0));
            break;
        case DistKind::Uniform:
            for (int k = 1; k <= order; ++k)
                set(k, (std::pow(spec.hi, k + 1) - std::pow(spec.lo, k + 1)) /
                           ((k + 1.0) * (spec.hi - spec.lo)));
            break;
        case DistKind::Rademacher:
            for (int k = 2; k <= order; k += 2) set(k, 1.0);
            break;
        case DistKind::GaussMix1d:
            for (int k = 1; k <= order; ++k) {
                double acc = 0.0;
                for (size_t i = 0; i < spec.mix_weights.size(); ++i) {
                    double comp = 0.0;
                    for (int j = 0; j <= k; ++j)
                        comp += binomial(k, j) * std::pow(spec.mix_means[i], k - j) *
                                std::pow(spec.mix_sigmas[i], j) * gaussian_moment(j);
                    acc += spec.mix_weights[i] * comp;
                }
                set(k, acc);
            }
            break;
        default:
            throw ConfigError("exact_moments: no analytic moments for this kind");
    }
    return mv;
}

MultiMomentTable exact_joint_moments(const DistributionSpec& spec, int order) {
    MultiMomentTable table;
    table.dim = 2;
    table.order = order;
    const auto basis = multi_index_basis(2, order);
    if (spec.kind == DistKind::Semicircle2d) {
        DistributionSpec sc;
        sc.kind = DistKind::Semicircle;
        MomentVector mv = exact_moments(sc, order);
        for (const auto& alpha : basis)
            table.values[alpha] = mv.mu(alpha[0]) * mv.mu(alpha[1]);
        return table;
    }
    if (spec.kind == DistKind::GaussMix2d) {
        // Component 1: mean (-1,-1), X1 = -1 + z1, X2 = -1 + 0.5 z1 + sqrt(.75) z2.
        // Component 2: mean (1,1), identity covariance. Equal weights.
        auto component = [&](double m1, double m2, double l11, double l21, double l22,
                             int a, int b) {
            double acc = 0.0;
            for (int i = 0; i <= a; ++i) {
                double ca = binomial(a, i) * std::pow(m1, a - i) * std::pow(l11, i);
                if (ca == 0.0) continue;
                for (int j = 0; j <= b; ++j) {
                    for (int k = 0; j + k <= b; ++k) {
                        int l = b - j - k;
                        double cb = std::tgamma(b + 1.0) /
                                    (std::tgamma(j + 1.0) * std::tgamma(k + 1.0) *
                                     std::tgamma(l + 1.0)) *
                                    std::pow(l21, j) * std::pow(l22, k) * std::pow(m2, l);
                        if (cb == 0.0) continue;
                        acc += ca * cb * gaussian_moment(i + j) * gaussian_moment(k);
                    }
                }
            }
            return acc;
        };
        const double s75 = std::sqrt(0.75);
        for (const auto& alpha : basis) {
            double c1 = component(-1.0, -1.0, 1.0, 0.5, s75, alpha[0], alpha[1]);
            double c2 = component(1.0, 1.0, 1.0, 0.0, 1.0, alpha[0], alpha[1]);
            table.values[alpha] = 0.5 * c1 + 0.5 * c2;
        }
        return table;
    }
    throw ConfigError("exact_joint_moments: no analytic joint moments for this kind");
}

} // namespace momentinfo
