#include "momentinfo/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace momentinfo {

double MomentVector::mu(int k) const {
    if (k == 0) return 1.0;
    if (k < 0 || k > order) throw ConfigError("moment index out of range");
    return values[static_cast<size_t>(k) - 1];
}

double MultiMomentTable::at(const std::vector<int>& alpha) const {
    auto it = values.find(alpha);
    if (it == values.end()) throw ConfigError("joint moment index not in table");
    return it->second;
}

namespace {

// Pairwise summation; deterministic regardless of accumulation threading.
double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

} // namespace

MomentVector sample_moments(std::span<const double> samples, int order) {
    if (samples.empty()) throw ConfigError("sample_moments: empty sample set");
    if (order < 2 || order % 2 != 0) throw ConfigError("sample_moments: order must be even and >= 2");
    MomentVector mv;
    mv.order = order;
    mv.values.assign(static_cast<size_t>(order), 0.0);
    std::vector<double> current(samples.begin(), samples.end());
    for (int k = 1; k <= order; ++k) {
        mv.values[static_cast<size_t>(k) - 1] =
            pairwise_sum(current) / static_cast<double>(samples.size());
        if (k < order) {
            for (size_t j = 0; j < current.size(); ++j) current[j] *= samples[j];
        }
    }
    return mv;
}

std::pair<std::vector<double>, Standardization> standardize(std::span<const double> samples) {
    if (samples.empty()) throw ConfigError("standardize: empty sample set");
    const double m = static_cast<double>(samples.size());
    double mean = pairwise_sum(samples) / m;
    std::vector<double> centered(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) centered[i] = (samples[i] - mean) * (samples[i] - mean);
    double var = pairwise_sum(centered) / m;
    if (!(var > 0.0)) throw DegenerateSupport("standardize: zero sample variance");
    double sd = std::sqrt(var);
    std::vector<double> out(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) out[i] = (samples[i] - mean) / sd;
    return {std::move(out), Standardization{mean, sd}};
}

double gaussian_moment(int k) {
    if (k < 0) throw ConfigError("gaussian_moment: negative order");
    if (k % 2 == 1) return 0.0;
    double v = 1.0;
    for (int j = k - 1; j >= 2; j -= 2) v *= j;
    return v;
}

double gaussian_joint_moment(const std::vector<int>& alpha) {
    double v = 1.0;
    for (int a : alpha) v *= gaussian_moment(a);
    return v;
}

HankelMatrix hankel(const MomentVector& mv, int n) {
    if (mv.order < 2 * n) throw ConfigError("hankel: moment order below 2n");
    HankelMatrix H;
    H.n = n;
    H.entries.assign(static_cast<size_t>(n + 1) * (n + 1), 0.0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) H.at(i, j) = mv.mu(i + j);
    return H;
}

SymmetricFactor factor_spd(std::span<const double> matrix, int size, double pivot_rel_tol) {
    SymmetricFactor f;
    f.size = size;
    f.lower.assign(static_cast<size_t>(size) * size, 0.0);

    // Degeneracy cutoff per pivot, relative to the matrix diagonal: a pivot is
    // the squared distance of basis element j to the span of the previous
    // ones, so |supp| <= n makes one vanish. The per-pivot form of the
    // det >= 1e-12 * prod(diag) rule; the product form rejects legitimate
    // inputs once n is large (det / prod(diag) ~ 1e-17 already for a standard
    // normal at n = 10).
    double det = 1.0, logdet = 0.0;
    for (int j = 0; j < size; ++j) {
        const double diag = matrix[static_cast<size_t>(j) * size + j];
        double d = diag;
        for (int k = 0; k < j; ++k) d -= f.at(j, k) * f.at(j, k);
        if (!(d > pivot_rel_tol * diag) || !(d > 0.0))
            throw DegenerateSupport("factor_spd: pivot below degeneracy threshold (support <= n)");
        double ljj = std::sqrt(d);
        f.lower[static_cast<size_t>(j) * size + j] = ljj;
        det *= d;
        logdet += std::log(d);
        for (int i = j + 1; i < size; ++i) {
            double s = matrix[static_cast<size_t>(i) * size + j];
            for (int k = 0; k < j; ++k) s -= f.at(i, k) * f.at(j, k);
            f.lower[static_cast<size_t>(i) * size + j] = s / ljj;
        }
    }
    f.det = det;
    f.logdet = logdet;
    return f;
}

SymmetricFactor det_and_factor(const HankelMatrix& H) {
    return factor_spd(H.entries, H.n + 1);
}

std::vector<double> SymmetricFactor::solve(std::span<const double> b) const {
    std::vector<double> y(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) {
        double s = b[static_cast<size_t>(i)];
        for (int k = 0; k < i; ++k) s -= at(i, k) * y[static_cast<size_t>(k)];
        y[static_cast<size_t>(i)] = s / at(i, i);
    }
    for (int i = size - 1; i >= 0; --i) {
        double s = y[static_cast<size_t>(i)];
        for (int k = i + 1; k < size; ++k) s -= at(k, i) * y[static_cast<size_t>(k)];
        y[static_cast<size_t>(i)] = s / at(i, i);
    }
    return y;
}

std::vector<std::vector<int>> multi_index_basis(int dim, int max_total) {
    // Degree class by class; within a class, descending lexicographic order of
    // the exponent tuple.
    std::vector<std::vector<int>> basis;
    for (int total = 0; total <= max_total; ++total) {
        std::vector<std::vector<int>> cls;
        // generate all alpha with |alpha| == total
        std::vector<int> cur(static_cast<size_t>(dim), 0);
        auto rec = [&](auto&& self, int pos, int remaining) -> void {
            if (pos == dim - 1) {
                cur[static_cast<size_t>(pos)] = remaining;
                cls.push_back(cur);
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                cur[static_cast<size_t>(pos)] = v;
                self(self, pos + 1, remaining - v);
            }
        };
        if (dim == 0) break;
        rec(rec, 0, total);
        for (auto& a : cls) basis.push_back(std::move(a));
    }
    return basis;
}

MultiMomentTable joint_sample_moments(const std::vector<std::vector<double>>& samples,
                                      int dim, int order) {
    if (samples.empty()) throw ConfigError("joint_sample_moments: empty sample set");
    if (dim < 1) throw ConfigError("joint_sample_moments: dim must be >= 1");
    for (const auto& row : samples)
        if (static_cast<int>(row.size()) != dim)
            throw ConfigError("joint_sample_moments: sample row width mismatch");

    MultiMomentTable table;
    table.dim = dim;
    table.order = order;
    const auto basis = multi_index_basis(dim, order);
    const double m = static_cast<double>(samples.size());
    std::vector<double> acc(samples.size());
    for (const auto& alpha : basis) {
        for (size_t j = 0; j < samples.size(); ++j) {
            double p = 1.0;
            for (int c = 0; c < dim; ++c) {
                double x = samples[j][static_cast<size_t>(c)];
                for (int e = 0; e < alpha[static_cast<size_t>(c)]; ++e) p *= x;
            }
            acc[j] = p;
        }
        table.values[alpha] = pairwise_sum(acc) / m;
    }
    return table;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

double log_gaussian_hankel_det(int n) {
    double s = 0.0;
    for (int k = 2; k <= n; ++k)
        s += std::lgamma(static_cast<double>(k) + 1.0);
    return s;
}

} // namespace momentinfo
