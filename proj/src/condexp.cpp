#include "momentinfo/condexp.hpp"

#include <algorithm>
#include <cmath>

namespace momentinfo {

std::vector<PartitionMultiplicity> enumerate_partitions(int r) {
    if (r < 2) throw ConfigError("enumerate_partitions: r must be >= 2");
    std::vector<PartitionMultiplicity> out;
    // multiplicities of parts 2..r
    std::vector<int> mult(static_cast<size_t>(r) - 1, 0);
    auto rec = [&](auto&& self, int part, int remaining) -> void {
        if (remaining == 0) {
            PartitionMultiplicity p;
            p.r = r;
            p.multiplicity = mult;
            while (!p.multiplicity.empty() && p.multiplicity.back() == 0)
                p.multiplicity.pop_back();
            for (int c : p.multiplicity) p.parts += c;
            out.push_back(std::move(p));
            return;
        }
        if (part > remaining) return;
        self(self, part + 1, remaining);  // skip this part size
        for (int cnt = 1; cnt * part <= remaining; ++cnt) {
            mult[static_cast<size_t>(part) - 2] = cnt;
            self(self, part + 1, remaining - cnt * part);
        }
        mult[static_cast<size_t>(part) - 2] = 0;
    };
    rec(rec, 2, r);
    return out;
}

namespace {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

std::int64_t c_lambda(const PartitionMultiplicity& lambda) {
    const int m = lambda.parts;
    if (m <= 0) throw ConfigError("c_lambda: empty partition");
    // (1/m) * (m! / prod lambda_i!) * (r! / prod (i!)^{lambda_i}); only the
    // combined ratio is an integer, so divide once at the end.
    std::int64_t num = factorial(m) * factorial(lambda.r);
    std::int64_t den = m;
    for (size_t i = 0; i < lambda.multiplicity.size(); ++i) {
        const int count = lambda.multiplicity[i];
        den *= factorial(count);
        const std::int64_t part_fact = factorial(static_cast<int>(i) + 2);
        for (int c = 0; c < count; ++c) den *= part_fact;
    }
    if (num % den != 0) throw InternalConsistency("c_lambda: non-integer ratio");
    return num / den;
}

std::int64_t e_lambda(const PartitionMultiplicity& lambda) {
    return (lambda.parts % 2 == 1) ? c_lambda(lambda) : -c_lambda(lambda);
}

std::int64_t C_r_closed_form(int r) {
    if (r < 2) throw ConfigError("C_r_closed_form: r must be >= 2");
    // Stirling numbers of the second kind S(i, j), i <= r.
    std::vector<std::vector<std::int64_t>> S(static_cast<size_t>(r) + 1,
                                             std::vector<std::int64_t>(static_cast<size_t>(r) + 1, 0));
    S[0][0] = 1;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= i; ++j)
            S[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                S[static_cast<size_t>(i) - 1][static_cast<size_t>(j) - 1] +
                static_cast<std::int64_t>(j) * S[static_cast<size_t>(i) - 1][static_cast<size_t>(j)];
    std::int64_t total = 0;
    for (int k = 1; k <= r; ++k) {
        // number of partitions of an r-set into k blocks each of size >= 2
        std::int64_t blocks_ge2 = 0;
        for (int j = 0; j <= k; ++j) {
            std::int64_t choose = factorial(r) / (factorial(j) * factorial(r - j));
            std::int64_t term = choose * S[static_cast<size_t>(r - j)][static_cast<size_t>(k - j)];
            blocks_ge2 += (j % 2 == 0) ? term : -term;
        }
        total += factorial(k - 1) * blocks_ge2;
    }
    return total;
}

void DiscreteInput::validate() const {
    if (atoms.empty() || atoms.size() != probs.size())
        throw ConfigError("DiscreteInput: atoms/probs size mismatch");
    double total = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw ConfigError("DiscreteInput: non-positive probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("DiscreteInput: probabilities must sum to 1");
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i] == atoms[j]) throw ConfigError("DiscreteInput: atoms must be distinct");
}

CondExpResult cond_exp_and_central_moments(const DiscreteInput& input, double y, int k_max) {
    input.validate();
    // Posterior weights w_i proportional to p_i exp(-(x_i - y)^2 / 2),
    // computed with a max-shift so far-from-atom y values do not underflow.
    const size_t k = input.atoms.size();
    std::vector<double> logw(k);
    double lmax = -HUGE_VAL;
    for (size_t i = 0; i < k; ++i) {
        double d = input.atoms[i] - y;
        logw[i] = std::log(input.probs[i]) - 0.5 * d * d;
        lmax = std::max(lmax, logw[i]);
    }
    std::vector<double> w(k);
    double wsum = 0.0;
    for (size_t i = 0; i < k; ++i) {
        w[i] = std::exp(logw[i] - lmax);
        wsum += w[i];
    }
    for (double& wi : w) wi /= wsum;

    CondExpResult res;
    for (size_t i = 0; i < k; ++i) res.f += w[i] * input.atoms[i];
    res.g.assign(static_cast<size_t>(std::max(k_max, 1)) + 1, 0.0);
    res.g[0] = 1.0;
    for (int r = 2; r <= k_max; ++r) {
        double acc = 0.0;
        for (size_t i = 0; i < k; ++i) {
            double d = input.atoms[i] - res.f;
            acc += w[i] * std::pow(d, r);
        }
        res.g[static_cast<size_t>(r)] = acc;
    }
    return res;
}

double cond_exp_derivative(const DiscreteInput& input, double y, int r) {
    if (r < 2 || r > 8) throw ConfigError("cond_exp_derivative: r must be in [2, 8]");
    auto ce = cond_exp_and_central_moments(input, y, r);
    double total = 0.0;
    for (const auto& lambda : enumerate_partitions(r)) {
        double prod = static_cast<double>(e_lambda(lambda));
        for (size_t i = 0; i < lambda.multiplicity.size(); ++i)
            for (int c = 0; c < lambda.multiplicity[i]; ++c)
                prod *= ce.g[i + 2];
        total += prod;
    }
    return total;
}

} // namespace momentinfo
