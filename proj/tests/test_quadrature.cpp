#include "doctest.h"

#include <cmath>

#include "momentinfo/quadrature.hpp"

using namespace momentinfo;

namespace {

// Independent high-resolution composite Simpson on the transformed interval.
double simpson_halfline(const std::function<double(double)>& f, int panels) {
    auto g = [&f](double u) {
        double w = 1.0 - u;
        return f(u / w) / (w * w);
    };
    const double b = 1.0 - 1e-13;
    const double h = b / panels;
    double acc = g(0.0) + g(b);
    for (int i = 1; i < panels; ++i) acc += g(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

double lmmse_difference(double t) {
    const double a = 2.0, b = 1.0;
    return a / (1.0 + a * t) - b / (1.0 + b * t);
}

double inv_square(double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); }

double cubic_tail(double t) { return t / (5.0 + 15.0 * t + 12.0 * t * t + 2.0 * t * t * t); }

} // namespace

TEST_CASE("difference of LMMSE curves integrates to log(a/b)") {
    auto r = integrate_halfline(lmmse_difference);
    CHECK(r.value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("1/(1+t)^2 integrates to 1") {
    auto r = integrate_halfline(inv_square);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cubic-tail integrand matches the Simpson oracle") {
    auto r = integrate_halfline(cubic_tail);
    double oracle = simpson_halfline(cubic_tail, 200000);
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("deterministic results") {
    auto a = integrate_halfline(cubic_tail);
    auto b = integrate_halfline(cubic_tail);
    CHECK(a.value == b.value);
    CHECK(a.err_estimate == b.err_estimate);
}

TEST_CASE("error estimates are conservative on the example integrands") {
    struct Case {
        double (*f)(double);
        double truth;
    };
    const Case cases[] = {
        {lmmse_difference, std::log(2.0)},
        {inv_square, 1.0},
        {cubic_tail, simpson_halfline(cubic_tail, 400000)},
    };
    for (const auto& c : cases) {
        auto r = integrate_halfline(c.f);
        CHECK(std::abs(r.value - c.truth) <= r.err_estimate + 1e-13);
    }
}

TEST_CASE("subdivision budget failure carries the partial result") {
    QuadConfig cfg;
    cfg.max_subdivisions = 2;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-14;
    bool threw = false;
    try {
        integrate_halfline([](double t) { return std::cos(20.0 * t) / (1.0 + t * t); }, cfg);
    } catch (const QuadratureFailure& e) {
        threw = true;
        CHECK(std::isfinite(e.partial_value));
        CHECK(e.error_estimate > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("config validation") {
    QuadConfig bad;
    bad.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate_halfline(inv_square, bad), ConfigError);
    QuadConfig order;
    order.panel_order = 21;
    CHECK_THROWS_AS(integrate_halfline(inv_square, order), ConfigError);
}

TEST_CASE("finite-interval integration") {
    auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}
