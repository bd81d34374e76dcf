#include "doctest.h"

#include <cmath>
#include <vector>

#include "momentinfo/polyring.hpp"
#include "momentinfo/rng.hpp"

using namespace momentinfo;

namespace {

// Independent naive cofactor expansion, first row.
Polynomial cofactor_det(const PolyMatrix& M) {
    if (M.size == 1) return M.at(0, 0);
    Polynomial acc(M.var, {});
    for (int j = 0; j < M.size; ++j) {
        PolyMatrix minor;
        minor.size = M.size - 1;
        minor.var = M.var;
        minor.entries.reserve(static_cast<size_t>(minor.size) * minor.size);
        for (int r = 1; r < M.size; ++r)
            for (int c = 0; c < M.size; ++c)
                if (c != j) minor.entries.push_back(M.at(r, c));
        Polynomial term = M.at(0, j) * cofactor_det(minor);
        acc = acc + term.scaled(j % 2 == 0 ? 1.0 : -1.0);
    }
    return acc;
}

Polynomial random_poly(SplitMix64& rng, Var var, int max_degree) {
    std::vector<double> c(static_cast<size_t>(max_degree) + 1);
    for (auto& x : c) x = rng.normal();
    return Polynomial(var, std::move(c));
}

} // namespace

TEST_CASE("polynomial arithmetic") {
    Polynomial a(Var::T, {1.0, 1.0});   // 1 + t
    Polynomial b(Var::T, {1.0, -1.0});  // 1 - t
    Polynomial p = a * b;
    CHECK(p.coeff(0) == 1.0);
    CHECK(p.coeff(1) == 0.0);
    CHECK(p.coeff(2) == -1.0);
    CHECK(p.degree() == 2);

    Polynomial q(Var::T, {5.0, 15.0, 12.0, 2.0});
    Polynomial dq = q.derivative();
    CHECK(dq.coeff(0) == 15.0);
    CHECK(dq.coeff(1) == 24.0);
    CHECK(dq.coeff(2) == 6.0);
    CHECK(dq.degree() == 2);

    Polynomial r(Var::T, {1.0, 2.5});  // 1 + sigma^2 t with sigma^2 = 2.5
    CHECK(r.eval(0.0) == 1.0);
    CHECK(r.eval(2.0) == doctest::Approx(6.0));

    Polynomial s(Var::S, {1.0});
    CHECK_THROWS_AS((void)(a + s), InternalConsistency);
}

TEST_CASE("eval_reversed matches direct evaluation") {
    Polynomial p(Var::T, {2.0, -1.0, 0.0, 3.0});
    for (double t : {2.0, 10.0, 1e3}) {
        double direct = p.eval(t);
        double reversed = p.eval_reversed(1.0 / t) * std::pow(t, p.degree());
        CHECK(reversed == doctest::Approx(direct).epsilon(1e-14));
    }
    // rational_eval survives where direct evaluation would overflow
    std::vector<double> big(56, 0.0);
    big[0] = 1.0;
    big[55] = 1e-3;
    Polynomial den(Var::T, std::move(big));
    std::vector<double> nc(55, 0.0);
    nc[0] = 1.0;
    nc[54] = 1e-3;
    Polynomial num(Var::T, std::move(nc));
    double v = rational_eval(num, den, 1e14);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(1e-14).epsilon(1e-6));
}

TEST_CASE("polymat_det on reference matrices") {
    PolyMatrix one;
    one.size = 1;
    one.var = Var::S;
    one.entries = {Polynomial(Var::S, {3.0, 1.0})};
    auto d = polymat_det(one);
    CHECK(d.coeff(0) == 3.0);
    CHECK(d.coeff(1) == 1.0);

    // [[1, s], [s, s^2 + 1]] -> 1
    PolyMatrix m;
    m.size = 2;
    m.var = Var::S;
    m.entries = {Polynomial(Var::S, {1.0}), Polynomial(Var::S, {0.0, 1.0}),
                 Polynomial(Var::S, {0.0, 1.0}), Polynomial(Var::S, {1.0, 0.0, 1.0})};
    d = polymat_det(m);
    CHECK(d.degree() == 0);
    CHECK(d.coeff(0) == doctest::Approx(1.0));

    // channel matrix for unit-variance zero-mean X at n = 1:
    // [[1, s mu1], [s mu1, s^2 mu2 + 1]] with mu1 = 0, mu2 = sigma^2
    const double sigma2 = 1.7;
    PolyMatrix ch;
    ch.size = 2;
    ch.var = Var::S;
    ch.entries = {Polynomial(Var::S, {1.0}), Polynomial(Var::S, {}),
                  Polynomial(Var::S, {}), Polynomial(Var::S, {1.0, 0.0, sigma2})};
    d = polymat_det(ch);
    CHECK(d.coeff(0) == doctest::Approx(1.0));
    CHECK(d.coeff(2) == doctest::Approx(sigma2));
}

TEST_CASE("polymat_det agrees with the cofactor oracle") {
    SplitMix64 rng(99);
    for (int size : {3, 4}) {
        for (int rep = 0; rep < 5; ++rep) {
            PolyMatrix M;
            M.size = size;
            M.var = Var::T;
            for (int i = 0; i < size * size; ++i) M.entries.push_back(random_poly(rng, Var::T, 3));
            Polynomial fast = polymat_det(M);
            Polynomial slow = cofactor_det(M);
            Polynomial diff = fast - slow;
            double scale = std::max(fast.max_abs_coeff(), slow.max_abs_coeff());
            for (int k = 0; k <= diff.degree(); ++k)
                CHECK(std::abs(diff.coeff(k)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("polymat_det of a constant matrix equals the numeric determinant") {
    // known 3x3: det [[2,1,0],[1,3,1],[0,1,4]] = 2*(12-1) - 1*(4-0) = 18
    PolyMatrix M;
    M.size = 3;
    M.var = Var::T;
    const double vals[9] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
    for (double v : vals) M.entries.push_back(Polynomial::constant(Var::T, v));
    auto d = polymat_det(M);
    CHECK(d.degree() == 0);
    CHECK(d.coeff(0) == doctest::Approx(18.0));
}

TEST_CASE("polymat_det is multilinear in rows") {
    SplitMix64 rng(5);
    PolyMatrix M;
    M.size = 3;
    M.var = Var::T;
    for (int i = 0; i < 9; ++i) M.entries.push_back(random_poly(rng, Var::T, 2));
    Polynomial base = polymat_det(M);
    const double c = 2.5;
    PolyMatrix scaled = M;
    for (int j = 0; j < 3; ++j) scaled.at(1, j) = scaled.at(1, j).scaled(c);
    Polynomial got = polymat_det(scaled);
    Polynomial want = base.scaled(c);
    Polynomial diff = got - want;
    CHECK(diff.max_abs_coeff() <= 1e-12 * std::max(1.0, want.max_abs_coeff()));
}

TEST_CASE("polymat_det size cap") {
    PolyMatrix M;
    M.size = kPolyMatDetCap + 1;
    M.var = Var::T;
    M.entries.assign(static_cast<size_t>(M.size) * M.size, Polynomial::constant(Var::T, 1.0));
    CHECK_THROWS_AS(polymat_det(M), ConfigError);
}

TEST_CASE("even_part reindexes and checks odd residue") {
    Polynomial p(Var::S, {1.0, 0.0, 3.0, 0.0, 1.0});  // 1 + 3s^2 + s^4
    Polynomial q = even_part(p);
    CHECK(q.var() == Var::T);
    CHECK(q.coeff(0) == 1.0);
    CHECK(q.coeff(1) == 3.0);
    CHECK(q.coeff(2) == 1.0);

    Polynomial s2(Var::S, {0.0, 0.0, 1.0});
    q = even_part(s2);
    CHECK(q.degree() == 1);
    CHECK(q.coeff(1) == 1.0);

    // small odd residue is tolerated
    Polynomial noisy(Var::S, {1.0, 1e-15, 1.0});
    q = even_part(noisy);
    CHECK(q.coeff(0) == 1.0);
    CHECK(q.coeff(1) == 1.0);

    Polynomial bad(Var::S, {1.0, 0.5, 1.0});
    CHECK_THROWS_AS(even_part(bad), InternalConsistency);
}
