#include "momentinfo/pmmse.hpp"

#include <algorithm>
#include <cmath>

namespace momentinfo {

double PmmseEstimate::eval(double y) const {
    double v = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * y + coeffs[k];
    return v;
}

PmmseEstimate pmmse_estimate(const CrossMoments& cm, const HankelMatrix& H) {
    if (static_cast<int>(cm.e_xy.size()) != H.n + 1)
        throw ConfigError("pmmse_estimate: cross-moment length must be n+1");
    auto factor = det_and_factor(H);
    PmmseEstimate est;
    est.n = H.n;
    est.coeffs = factor.solve(cm.e_xy);
    return est;
}

double pmmse_value(const CrossMoments& cm, const HankelMatrix& H) {
    if (static_cast<int>(cm.e_xy.size()) != H.n + 1)
        throw ConfigError("pmmse_value: cross-moment length must be n+1");
    auto factor = det_and_factor(H);
    auto c = factor.solve(cm.e_xy);
    double quad = 0.0;
    for (size_t i = 0; i < c.size(); ++i) quad += c[i] * cm.e_xy[i];
    return cm.e_x2 - quad;
}

PolyMatrix channel_poly_matrix(const MomentVector& mv, int n) {
    if (mv.order < 2 * n) throw ConfigError("channel_poly_matrix: moment order below 2n");
    PolyMatrix M;
    M.size = n + 1;
    M.var = Var::S;
    M.entries.assign(static_cast<size_t>(M.size) * M.size, Polynomial());
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const int ell = i + j;
            std::vector<double> c(static_cast<size_t>(ell) + 1, 0.0);
            for (int k = 0; k <= ell; ++k) {
                double gm = gaussian_moment(ell - k);
                if (gm == 0.0) continue;
                c[static_cast<size_t>(k)] = binomial(ell, k) * mv.mu(k) * gm;
            }
            M.at(i, j) = Polynomial(Var::S, std::move(c));
        }
    }
    return M;
}

namespace {

// E[X (sX+N)^i] as a polynomial in s: coefficient of s^k is C(i,k) mu_{k+1} E[N^{i-k}].
Polynomial channel_cross_poly(const MomentVector& mv, int i) {
    std::vector<double> c(static_cast<size_t>(i) + 1, 0.0);
    for (int k = 0; k <= i; ++k) {
        double gm = gaussian_moment(i - k);
        if (gm == 0.0) continue;
        c[static_cast<size_t>(k)] = binomial(i, k) * mv.mu(k + 1) * gm;
    }
    return Polynomial(Var::S, std::move(c));
}

double barnes_g(int n) {
    // G(n+2) = prod_{k=1..n} k!
    double g = 1.0, fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        g *= fact;
    }
    return g;
}

} // namespace

PmmseRational channel_rational(const MomentVector& mv, int n) {
    if (n < 1) throw ConfigError("channel_rational: n must be >= 1");
    if (n + 2 > kPolyMatDetCap)
        throw ConfigError("channel_rational: n above the rational-path cap");
    if (mv.order < 2 * n) throw ConfigError("channel_rational: moment order below 2n");

    const PolyMatrix M = channel_poly_matrix(mv, n);
    Polynomial den_s = polymat_det(M);

    // Bordered matrix E[Z Z^T], Z = (1, Y, ..., Y^n, X): its determinant is
    // den * pmmse by the Schur-complement identity.
    PolyMatrix B;
    B.size = n + 2;
    B.var = Var::S;
    B.entries.assign(static_cast<size_t>(B.size) * B.size, Polynomial());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) B.at(i, j) = M.at(i, j);
    for (int i = 0; i <= n; ++i) {
        Polynomial v = channel_cross_poly(mv, i);
        B.at(i, n + 1) = v;
        B.at(n + 1, i) = v;
    }
    B.at(n + 1, n + 1) = Polynomial::constant(Var::S, mv.mu(2));
    Polynomial num_s = polymat_det(B);

    Polynomial den_t = even_part(den_s);
    Polynomial num_t = even_part(num_s);

    const double g = barnes_g(n);
    den_t = den_t.scaled(1.0 / g);
    num_t = num_t.scaled(1.0 / g);

    PmmseRational rat;
    rat.n = n;
    rat.d_n = pairs_degree(n);
    rat.sigma2 = mv.mu(2) - mv.mu(1) * mv.mu(1);

    // a^{n,d_n} = 0 in exact arithmetic; truncate the float residue.
    const double num_max = num_t.max_abs_coeff();
    const double top = num_t.coeff(rat.d_n);
    rat.truncated_top_coeff = (num_max > 0.0) ? std::abs(top) / num_max : 0.0;
    if (rat.truncated_top_coeff > 1e-8)
        throw InternalConsistency("channel_rational: numerator t^{d_n} coefficient above tolerance");

    // Both leading coefficients equal det M_{X,n} (0 when |supp| <= n). The
    // Laplace expansion loses relative precision there for heavy-tailed
    // moments, so anchor them to the Cholesky determinant.
    double det_anchor = 0.0;
    bool degenerate = false;
    try {
        det_anchor = det_and_factor(hankel(mv, n)).det / g;
    } catch (const DegenerateSupport&) {
        degenerate = true;
    }
    std::vector<double> nc(num_t.coeffs());
    std::vector<double> dc(den_t.coeffs());
    nc.resize(static_cast<size_t>(rat.d_n), 0.0);           // drop t^{d_n} residue
    dc.resize(static_cast<size_t>(rat.d_n) + 1, 0.0);
    nc[static_cast<size_t>(rat.d_n) - 1] = det_anchor;
    dc[static_cast<size_t>(rat.d_n)] = det_anchor;
    if (degenerate) {
        // Genuine degree drop: strip the trailing expansion residues.
        auto strip = [](std::vector<double>& c) {
            double m = 0.0;
            for (double x : c) m = std::max(m, std::abs(x));
            while (!c.empty() && std::abs(c.back()) <= 1e-9 * m) c.pop_back();
        };
        strip(nc);
        strip(dc);
    }
    num_t = Polynomial(Var::T, std::move(nc));
    den_t = Polynomial(Var::T, std::move(dc));

    rat.effective_num_degree = num_t.degree();
    rat.effective_den_degree = den_t.degree();
    rat.num = std::move(num_t);
    rat.den = std::move(den_t);
    return rat;
}

double channel_pmmse_at(const MomentVector& mv, int n, double t) {
    if (t < 0.0) throw ConfigError("channel_pmmse_at: t must be >= 0");
    if (mv.order < 2 * n) throw ConfigError("channel_pmmse_at: moment order below 2n");
    const double s = std::sqrt(t);
    const int size = n + 1;
    std::vector<double> M(static_cast<size_t>(size) * size, 0.0);
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            const int ell = i + j;
            double acc = 0.0;
            double sk = 1.0;
            for (int k = 0; k <= ell; ++k) {
                double gm = gaussian_moment(ell - k);
                if (gm != 0.0) acc += binomial(ell, k) * mv.mu(k) * gm * sk;
                sk *= s;
            }
            M[static_cast<size_t>(i) * size + j] = acc;
            M[static_cast<size_t>(j) * size + i] = acc;
        }
    }
    std::vector<double> v(static_cast<size_t>(size), 0.0);
    for (int i = 0; i <= n; ++i) {
        double acc = 0.0;
        double sk = 1.0;
        for (int k = 0; k <= i; ++k) {
            double gm = gaussian_moment(i - k);
            if (gm != 0.0) acc += binomial(i, k) * mv.mu(k + 1) * gm * sk;
            sk *= s;
        }
        v[static_cast<size_t>(i)] = acc;
    }
    auto factor = factor_spd(M, size, 0.0);
    auto x = factor.solve(v);
    double quad = 0.0;
    for (int i = 0; i <= n; ++i) quad += x[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    return mv.mu(2) - quad;
}

ScalarChannel::ScalarChannel(const MomentVector& mv, int n) : n_(n), d_n_(pairs_degree(n)) {
    if (mv.order < 2 * n) throw ConfigError("ScalarChannel: moment order below 2n");
    mu_.resize(static_cast<size_t>(2 * n) + 1);
    for (int k = 0; k <= 2 * n; ++k) mu_[static_cast<size_t>(k)] = mv.mu(k);
    mu2_ = mv.mu(2);
}

void ScalarChannel::evaluate(double t, double* pmmse, double* logdet_deriv) const {
    if (t < 0.0) throw ConfigError("ScalarChannel: t must be >= 0");
    const double s = std::sqrt(t);
    const int size = n_ + 1;
    std::vector<double> M(static_cast<size_t>(size) * size, 0.0);
    std::vector<double> D(static_cast<size_t>(size) * size, 0.0);
    std::vector<double> spow(static_cast<size_t>(2 * n_) + 1, 1.0);
    for (size_t p = 1; p < spow.size(); ++p) spow[p] = spow[p - 1] * s;
    for (int i = 0; i <= n_; ++i) {
        for (int j = i; j <= n_; ++j) {
            const int ell = i + j;
            double acc = 0.0, dacc = 0.0;
            for (int k = ell % 2; k <= ell; k += 2) {
                // only k with ell - k even survive E[N^{ell-k}]
                const double c = binomial(ell, k) * mu_[static_cast<size_t>(k)] *
                                 gaussian_moment(ell - k);
                acc += c * spow[static_cast<size_t>(k)];
                if (k >= 2) dacc += c * 0.5 * k * spow[static_cast<size_t>(k) - 2];
                else if (k == 1) dacc += (t > 0.0) ? c * 0.5 / s : 0.0;
            }
            M[static_cast<size_t>(i) * size + j] = M[static_cast<size_t>(j) * size + i] = acc;
            D[static_cast<size_t>(i) * size + j] = D[static_cast<size_t>(j) * size + i] = dacc;
        }
    }
    auto factor = factor_spd(M, size, 0.0);

    if (pmmse) {
        std::vector<double> v(static_cast<size_t>(size), 0.0);
        for (int i = 0; i <= n_; ++i) {
            double acc = 0.0;
            for (int k = 0; k <= i; ++k) {
                double gm = gaussian_moment(i - k);
                if (gm != 0.0)
                    acc += binomial(i, k) * mu_[static_cast<size_t>(k) + 1] * gm *
                           spow[static_cast<size_t>(k)];
            }
            v[static_cast<size_t>(i)] = acc;
        }
        auto x = factor.solve(v);
        double quad = 0.0;
        for (int i = 0; i <= n_; ++i) quad += x[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        *pmmse = mu2_ - quad;
    }
    if (logdet_deriv) {
        double tr = 0.0;
        std::vector<double> col(static_cast<size_t>(size));
        for (int j = 0; j < size; ++j) {
            for (int i = 0; i < size; ++i) col[static_cast<size_t>(i)] = D[static_cast<size_t>(i) * size + j];
            auto x = factor.solve(col);
            tr += x[static_cast<size_t>(j)];
        }
        *logdet_deriv = tr;
    }
}

MomentVector affine_transform_moments(const MomentVector& mv, double a, double b) {
    if (a == 0.0) throw ConfigError("affine_transform_moments: a must be nonzero");
    MomentVector out;
    out.order = mv.order;
    out.values.assign(static_cast<size_t>(mv.order), 0.0);
    for (int k = 1; k <= mv.order; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j)
            acc += binomial(k, j) * std::pow(a, j) * std::pow(b, k - j) * mv.mu(j);
        out.values[static_cast<size_t>(k) - 1] = acc;
    }
    return out;
}

MultivariateChannel::MultivariateChannel(const MultiMomentTable& table, int n, int m)
    : n_(n), m_(m) {
    if (m < 1) throw ConfigError("MultivariateChannel: m must be >= 1");
    if (table.dim != m) throw ConfigError("MultivariateChannel: table dimension mismatch");
    if (table.order < 2 * n) throw ConfigError("MultivariateChannel: table order below 2n");
    basis_ = multi_index_basis(m, n);
    if (static_cast<int>(basis_.size()) > kMultivariateBasisCap)
        throw ConfigError("MultivariateChannel: basis size above cap");
    d_nm_ = multivariate_degree(n, m);

    const int K = static_cast<int>(basis_.size());
    entry_terms_.resize(static_cast<size_t>(K) * K);

    // Expansion of E[prod_j (s V_j + N_j)^{gamma_j}]: sum over k <= gamma of
    // prod C(gamma_j,k_j) E[prod V^k] prod E[N^{gamma_j-k_j}] s^{|k|}.
    auto expand = [&](const std::vector<int>& gamma, int extra_coord) {
        std::vector<Term> terms;
        std::vector<int> k(static_cast<size_t>(m), 0);
        auto rec = [&](auto&& self, int pos, double coeff, int total) -> void {
            if (pos == m) {
                std::vector<int> idx = k;
                if (extra_coord >= 0) idx[static_cast<size_t>(extra_coord)] += 1;
                double mom = table.at(idx);
                if (coeff != 0.0) terms.push_back({coeff, total, mom});
                return;
            }
            for (int kj = 0; kj <= gamma[static_cast<size_t>(pos)]; ++kj) {
                double gm = gaussian_moment(gamma[static_cast<size_t>(pos)] - kj);
                if (gm == 0.0) continue;
                k[static_cast<size_t>(pos)] = kj;
                self(self, pos + 1,
                     coeff * binomial(gamma[static_cast<size_t>(pos)], kj) * gm, total + kj);
            }
            k[static_cast<size_t>(pos)] = 0;
        };
        rec(rec, 0, 1.0, 0);
        return terms;
    };

    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) {
            std::vector<int> gamma(static_cast<size_t>(m));
            for (int c = 0; c < m; ++c)
                gamma[static_cast<size_t>(c)] =
                    basis_[static_cast<size_t>(i)][static_cast<size_t>(c)] +
                    basis_[static_cast<size_t>(j)][static_cast<size_t>(c)];
            entry_terms_[static_cast<size_t>(i) * K + j] = expand(gamma, -1);
        }
    }

    cross_terms_.resize(static_cast<size_t>(m));
    coord_second_moment_.resize(static_cast<size_t>(m));
    trace_sigma_ = 0.0;
    for (int c = 0; c < m; ++c) {
        cross_terms_[static_cast<size_t>(c)].resize(static_cast<size_t>(K));
        for (int i = 0; i < K; ++i)
            cross_terms_[static_cast<size_t>(c)][static_cast<size_t>(i)] =
                expand(basis_[static_cast<size_t>(i)], c);
        std::vector<int> e2(static_cast<size_t>(m), 0), e1(static_cast<size_t>(m), 0);
        e2[static_cast<size_t>(c)] = 2;
        e1[static_cast<size_t>(c)] = 1;
        coord_second_moment_[static_cast<size_t>(c)] = table.at(e2);
        double mean = table.at(e1);
        trace_sigma_ += table.at(e2) - mean * mean;
    }
}

std::vector<double> MultivariateChannel::entry_eval(double s) const {
    const int K = basis_size();
    std::vector<double> M(static_cast<size_t>(K) * K, 0.0);
    std::vector<double> spow(static_cast<size_t>(2 * n_) + 1, 1.0);
    for (size_t p = 1; p < spow.size(); ++p) spow[p] = spow[p - 1] * s;
    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) {
            double acc = 0.0;
            for (const Term& t : entry_terms_[static_cast<size_t>(i) * K + j])
                acc += t.coeff * t.moment * spow[static_cast<size_t>(t.half_power)];
            M[static_cast<size_t>(i) * K + j] = acc;
            M[static_cast<size_t>(j) * K + i] = acc;
        }
    }
    return M;
}

std::vector<double> MultivariateChannel::entry_deriv(double t) const {
    // d/dt of sum coeff * moment * t^{p/2} = sum coeff * moment * (p/2) t^{p/2-1}.
    // At t = 0 only p == 2 contributes; p == 1 terms carry first moments,
    // which vanish for the standardized inputs this is used with.
    const int K = basis_size();
    std::vector<double> D(static_cast<size_t>(K) * K, 0.0);
    const double s = std::sqrt(t);
    for (int i = 0; i < K; ++i) {
        for (int j = i; j < K; ++j) {
            double acc = 0.0;
            for (const Term& term : entry_terms_[static_cast<size_t>(i) * K + j]) {
                if (term.half_power == 0) continue;
                double contrib;
                if (t == 0.0) {
                    if (term.half_power == 2) contrib = term.coeff * term.moment;
                    else if (term.half_power == 1 && std::abs(term.moment) > 1e-9)
                        throw InternalConsistency(
                            "entry_deriv: sqrt(t) term at t=0 (input not centered)");
                    else contrib = 0.0;
                } else {
                    contrib = term.coeff * term.moment * 0.5 * term.half_power *
                              std::pow(s, term.half_power - 2);
                }
                acc += contrib;
            }
            D[static_cast<size_t>(i) * K + j] = acc;
            D[static_cast<size_t>(j) * K + i] = acc;
        }
    }
    return D;
}

void MultivariateChannel::evaluate(double t, double* pmmse, double* logdet_deriv) const {
    if (t < 0.0) throw ConfigError("MultivariateChannel: t must be >= 0");
    const int K = basis_size();
    const double s = std::sqrt(t);
    auto M = entry_eval(s);
    auto factor = factor_spd(M, K, 0.0);

    if (pmmse) {
        double total = 0.0;
        std::vector<double> w(static_cast<size_t>(K));
        std::vector<double> spow(static_cast<size_t>(2 * n_) + 2, 1.0);
        for (size_t p = 1; p < spow.size(); ++p) spow[p] = spow[p - 1] * s;
        for (int c = 0; c < m_; ++c) {
            for (int i = 0; i < K; ++i) {
                double acc = 0.0;
                for (const Term& term : cross_terms_[static_cast<size_t>(c)][static_cast<size_t>(i)])
                    acc += term.coeff * term.moment * spow[static_cast<size_t>(term.half_power)];
                w[static_cast<size_t>(i)] = acc;
            }
            auto x = factor.solve(w);
            double quad = 0.0;
            for (int i = 0; i < K; ++i) quad += x[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
            total += coord_second_moment_[static_cast<size_t>(c)] - quad;
        }
        *pmmse = total;
    }

    if (logdet_deriv) {
        auto D = entry_deriv(t);
        // tr(M^{-1} D) via one solve per column.
        double tr = 0.0;
        std::vector<double> col(static_cast<size_t>(K));
        for (int j = 0; j < K; ++j) {
            for (int i = 0; i < K; ++i) col[static_cast<size_t>(i)] = D[static_cast<size_t>(i) * K + j];
            auto x = factor.solve(col);
            tr += x[static_cast<size_t>(j)];
        }
        *logdet_deriv = tr;
    }
}

double MultivariateChannel::pmmse_at(double t) const {
    double p = 0.0;
    evaluate(t, &p, nullptr);
    return p;
}

double MultivariateChannel::logdet_derivative_at(double t) const {
    double d = 0.0;
    evaluate(t, nullptr, &d);
    return d;
}

double MultivariateChannel::logdet_at(double t) const {
    auto M = entry_eval(std::sqrt(t));
    return factor_spd(M, basis_size(), 0.0).logdet;
}

double multivariate_channel_pmmse_at(const MultiMomentTable& table, int n, int m, double t) {
    return MultivariateChannel(table, n, m).pmmse_at(t);
}

double logdet_derivative_at(const MultiMomentTable& table, int n, int m, double t) {
    return MultivariateChannel(table, n, m).logdet_derivative_at(t);
}

} // namespace momentinfo
