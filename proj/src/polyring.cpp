#include "momentinfo/polyring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace momentinfo {

Polynomial::Polynomial(Var var, std::vector<double> coeffs)
    : var_(var), coeffs_(std::move(coeffs)) {
    trim();
}

Polynomial Polynomial::constant(Var var, double c) {
    return Polynomial(var, {c});
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(k)];
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

int Polynomial::effective_degree(double rel_tol) const {
    const double cut = rel_tol * max_abs_coeff();
    for (int k = degree(); k >= 0; --k)
        if (std::abs(coeffs_[static_cast<size_t>(k)]) > cut) return k;
    return -1;
}

namespace {
void check_var(const Polynomial& a, const Polynomial& b) {
    if (a.var() != b.var())
        throw InternalConsistency("polynomial variable-tag mismatch");
}
} // namespace

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_var(*this, o);
    std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Polynomial(var_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_var(*this, o);
    std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
    return Polynomial(var_, std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_var(*this, o);
    if (is_zero() || o.is_zero()) return Polynomial(var_, {});
    std::vector<double> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(var_, std::move(c));
}

Polynomial Polynomial::scaled(double c) const {
    std::vector<double> out(coeffs_);
    for (double& x : out) x *= c;
    return Polynomial(var_, std::move(out));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial(var_, {});
    std::vector<double> out(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
        out[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(var_, std::move(out));
}

double Polynomial::eval(double x) const {
    double v = 0.0;
    for (size_t k = coeffs_.size(); k-- > 0;) v = v * x + coeffs_[k];
    return v;
}

double Polynomial::eval_reversed(double w) const {
    double v = 0.0;
    for (double c : coeffs_) v = v * w + c;
    return v;
}

Polynomial polymat_det(const PolyMatrix& M) {
    const int k = M.size;
    if (k < 1) throw ConfigError("polymat_det: empty matrix");
    if (k > kPolyMatDetCap) throw ConfigError("polymat_det: size above cap (exponential cost)");
    for (const auto& e : M.entries)
        if (e.var() != M.var) throw InternalConsistency("polymat_det: variable-tag mismatch");

    // dp[mask] = det of the submatrix formed by rows 0..popcount(mask)-1 and
    // the column set encoded by mask.
    const uint32_t full = (1u << k) - 1u;
    std::vector<Polynomial> dp(static_cast<size_t>(full) + 1);
    dp[0] = Polynomial::constant(M.var, 1.0);
    for (uint32_t mask = 1; mask <= full; ++mask) {
        const int r = std::popcount(mask) - 1;  // row being expanded
        Polynomial acc(M.var, {});
        double sign = (r % 2 == 0) ? 1.0 : -1.0;  // cofactor sign (-1)^(r+pos)
        for (int j = 0; j < k; ++j) {
            if (!(mask & (1u << j))) continue;
            const Polynomial& entry = M.at(r, j);
            if (!entry.is_zero())
                acc = acc + (entry * dp[mask & ~(1u << j)]).scaled(sign);
            sign = -sign;
        }
        dp[mask] = std::move(acc);
    }
    return dp[full];
}

Polynomial even_part(const Polynomial& p, double rel_tol) {
    if (p.var() != Var::S) throw InternalConsistency("even_part: expected a polynomial in s");
    const double cut = rel_tol * p.max_abs_coeff();
    std::vector<double> out;
    for (int j = 0; j <= p.degree(); j += 2) out.push_back(p.coeff(j));
    for (int j = 1; j <= p.degree(); j += 2)
        if (std::abs(p.coeff(j)) > cut)
            throw InternalConsistency("even_part: odd coefficient above tolerance");
    return Polynomial(Var::T, std::move(out));
}

} // namespace momentinfo
