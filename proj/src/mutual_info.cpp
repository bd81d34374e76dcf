#include "momentinfo/mutual_info.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace momentinfo {

void DiscreteConditionalMoments::validate() const {
    if (classes.empty()) throw ConfigError("DiscreteConditionalMoments: no classes");
    double total = 0.0;
    for (const auto& c : classes) {
        if (!(c.weight > 0.0)) throw ConfigError("DiscreteConditionalMoments: non-positive weight");
        if (c.mv.order != marginal.order)
            throw ConfigError("DiscreteConditionalMoments: class/marginal order mismatch");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("DiscreteConditionalMoments: weights must sum to 1");
}

MiEstimate i_n_discrete(const DiscreteConditionalMoments& dcm, int n, const QuadConfig& cfg) {
    dcm.validate();
    if (dcm.marginal.order < 2 * n) throw ConfigError("i_n_discrete: moment order below 2n");

    // Standardize everything by the marginal's shift and scale; I_n is exactly
    // invariant and the channel polynomials stay well-conditioned.
    const double mean = dcm.marginal.mu(1);
    const double var = dcm.marginal.mu(2) - mean * mean;
    if (!(var > 0.0)) throw DegenerateSupport("i_n_discrete: zero marginal variance");
    const double sd = std::sqrt(var);

    MomentVector marg = affine_transform_moments(dcm.marginal, 1.0 / sd, -mean / sd);

    ScalarChannel marg_chan(marg, n);
    double logdet_marg = det_and_factor(hankel(marg, n)).logdet;

    // Each class is reduced to its fully standardized moments; the affine
    // frame re-enters exactly via det M_{aZ+b} = a^{n(n+1)} det M_Z and
    // rho_{aZ+b}(t) = a^2 rho_Z(a^2 t). Clustered classes (few samples far
    // from the marginal mean) would otherwise shred the moment pipeline.
    struct ClassChannel {
        double weight;
        double scale2;  // squared scale relative to the standardized marginal
        ScalarChannel chan;
    };
    std::vector<ClassChannel> class_chans;
    MiEstimate est;
    est.n = n;
    double logdet_classes = 0.0;
    for (const auto& c : dcm.classes) {
        try {
            const double cmean = c.mv.mu(1);
            const double cvar = c.mv.mu(2) - cmean * cmean;
            if (!(cvar > 0.0)) throw DegenerateSupport("zero class variance");
            const double csd = std::sqrt(cvar);
            MomentVector cmv = affine_transform_moments(c.mv, 1.0 / csd, -cmean / csd);
            const double s_x = c.scale * csd / sd;  // class sd in marginal units
            auto f = det_and_factor(hankel(cmv, n));
            const double logdet_x = n * (n + 1.0) * std::log(s_x) + f.logdet;
            logdet_classes += c.weight * logdet_x;
            class_chans.push_back({c.weight, s_x * s_x, ScalarChannel(cmv, n)});
            est.per_class.push_back({c.label, c.weight, logdet_x});
        } catch (const DegenerateSupport&) {
            throw DegenerateSupport("i_n_discrete: degenerate class '" + c.label + "'");
        }
    }

    est.logdet_part = (logdet_marg - logdet_classes) / (n * (n + 1.0));

    // Integrand rho_Y(t) - E_X[rho_{Y(X)}(t)], each rho evaluated pointwise
    // as (pmmse - dlogdet/d_n)/2 on the standardized class moments.
    const double d_n = static_cast<double>(marg_chan.degree());
    auto rho_at = [d_n](const ScalarChannel& chan, double t) {
        double p = 0.0, d = 0.0;
        chan.evaluate(t, &p, &d);
        return 0.5 * (p - d / d_n);
    };
    QuadResult q = integrate_halfline(
        [&](double t) {
            double v = rho_at(marg_chan, t);
            for (const auto& cc : class_chans)
                v -= cc.weight * cc.scale2 * rho_at(cc.chan, cc.scale2 * t);
            return v;
        },
        cfg);
    est.integral_part = q.value;
    est.quad_err = q.err_estimate;
    est.value = est.logdet_part + est.integral_part;
    return est;
}

MiEstimate i_hat(const std::vector<std::pair<std::string, double>>& labeled_samples,
                 int n, const QuadConfig& cfg) {
    if (labeled_samples.empty()) throw ConfigError("i_hat: empty sample set");
    std::map<std::string, int> counts;
    for (const auto& [label, y] : labeled_samples) counts[label]++;

    std::vector<std::pair<std::string, double>> kept;
    kept.reserve(labeled_samples.size());
    for (const auto& s : labeled_samples)
        if (counts[s.first] > n) kept.push_back(s);
    if (kept.empty()) throw EmptyAfterFilter("i_hat: no label occurs more than n times");

    const double filtered_fraction =
        1.0 - static_cast<double>(kept.size()) / static_cast<double>(labeled_samples.size());

    std::vector<double> ys;
    ys.reserve(kept.size());
    for (const auto& s : kept) ys.push_back(s.second);
    auto [std_ys, st] = standardize(ys);

    std::map<std::string, std::vector<double>> by_class;
    for (size_t i = 0; i < kept.size(); ++i) by_class[kept[i].first].push_back(std_ys[i]);

    DiscreteConditionalMoments dcm;
    dcm.marginal = sample_moments(std_ys, 2 * n);
    for (auto& [label, values] : by_class) {
        std::set<double> distinct(values.begin(), values.end());
        if (static_cast<int>(distinct.size()) <= n)
            throw DegenerateSupport("i_hat: class '" + label + "' has at most n distinct values");
        DiscreteClass c;
        c.label = label;
        c.weight = static_cast<double>(values.size()) / static_cast<double>(kept.size());
        // Momentize each class in its own standardized frame; moments of a
        // re-centered binomial expansion of offset classes are not stable.
        auto [class_std, class_frame] = standardize(values);
        c.mv = sample_moments(class_std, 2 * n);
        c.shift = class_frame.shift;
        c.scale = class_frame.scale;
        dcm.classes.push_back(std::move(c));
    }

    MiEstimate est = i_n_discrete(dcm, n, cfg);
    est.filtered_fraction = filtered_fraction;
    return est;
}

MultiMomentTable affine_transform_table(const MultiMomentTable& table,
                                        const std::vector<double>& a,
                                        const std::vector<double>& b) {
    if (static_cast<int>(a.size()) != table.dim || static_cast<int>(b.size()) != table.dim)
        throw ConfigError("affine_transform_table: coefficient length mismatch");
    MultiMomentTable out;
    out.dim = table.dim;
    out.order = table.order;
    const int m = table.dim;
    for (const auto& [alpha, unused] : table.values) {
        (void)unused;
        // E[prod (a_j V_j + b_j)^{alpha_j}] expanded per coordinate.
        std::vector<int> k(static_cast<size_t>(m), 0);
        double acc = 0.0;
        auto rec = [&](auto&& self, int pos, double coeff) -> void {
            if (pos == m) {
                acc += coeff * table.at(k);
                return;
            }
            for (int kj = 0; kj <= alpha[static_cast<size_t>(pos)]; ++kj) {
                k[static_cast<size_t>(pos)] = kj;
                double c = binomial(alpha[static_cast<size_t>(pos)], kj) *
                           std::pow(a[static_cast<size_t>(pos)], kj) *
                           std::pow(b[static_cast<size_t>(pos)],
                                    alpha[static_cast<size_t>(pos)] - kj);
                if (c != 0.0) self(self, pos + 1, coeff * c);
            }
            k[static_cast<size_t>(pos)] = 0;
        };
        rec(rec, 0, 1.0);
        out.values[alpha] = acc;
    }
    return out;
}

MiEstimate i_n_continuous(const MomentVector& x_mv, const MomentVector& y_mv,
                          const MultiMomentTable& joint, int n, const QuadConfig& cfg) {
    if (joint.dim != 2) throw ConfigError("i_n_continuous: joint table must be 2-dimensional");
    if (joint.order < 2 * n) throw ConfigError("i_n_continuous: joint order below 2n");

    const double mx = x_mv.mu(1), my = y_mv.mu(1);
    const double vx = x_mv.mu(2) - mx * mx, vy = y_mv.mu(2) - my * my;
    if (!(vx > 0.0) || !(vy > 0.0)) throw DegenerateSupport("i_n_continuous: zero variance");
    const double sx = std::sqrt(vx), sy = std::sqrt(vy);

    // Per-coordinate standardization; the log-scale corrections cancel in
    // h_n(X) + h_n(Y) - h_n(W) exactly.
    MomentVector xs = affine_transform_moments(x_mv, 1.0 / sx, -mx / sx);
    MomentVector ys = affine_transform_moments(y_mv, 1.0 / sy, -my / sy);
    MultiMomentTable ws = affine_transform_table(joint, {1.0 / sx, 1.0 / sy},
                                                 {-mx / sx, -my / sy});

    EntropyEstimate hx = h_n_from_moments(xs, n, cfg);
    EntropyEstimate hy = h_n_from_moments(ys, n, cfg);
    EntropyEstimate hw = h_n_multivariate(ws, n, 2, cfg);

    MiEstimate est;
    est.n = n;
    est.logdet_part = hx.logdet_part + hy.logdet_part - hw.logdet_part;
    est.integral_part = hx.integral_part + hy.integral_part - hw.integral_part;
    est.quad_err = hx.quad_err + hy.quad_err + hw.quad_err;
    est.value = hx.value + hy.value - hw.value;
    return est;
}

} // namespace momentinfo
