#include "momentinfo/quadrature.hpp"

#include <cmath>
#include <vector>

namespace momentinfo {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1]; column layout
// {abscissa, Gauss weight, Kronrod weight}, Gauss weight 0 on Kronrod-only nodes.
constexpr double kNodes[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

struct Panel {
    double a, b;
    double value, err;
    bool splittable = true;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double y0 = f(mid);
    double g7 = kNodes[0][1] * y0;
    double k15 = kNodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i][0];
        const double ys = f(mid + dx) + f(mid - dx);
        g7 += kNodes[i][1] * ys;
        k15 += kNodes[i][2] * ys;
    }
    g7 *= half;
    k15 *= half;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

// Globally adaptive: split the worst panel until the summed error estimate
// meets the tolerance. Worst-first with a deterministic tie-break keeps
// results bit-identical for identical inputs.
QuadResult adaptive(const std::function<double(double)>& f, double a, double b,
                    const QuadConfig& cfg) {
    if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0)
        throw ConfigError("quadrature: tolerances must be positive");
    if (cfg.panel_order != 15)
        throw ConfigError("quadrature: only the 7-15 nested rule is supported");

    const double total_width = b - a;
    std::vector<Panel> panels{eval_panel(f, a, b)};
    int splits = 0;
    for (;;) {
        double value = 0.0, err = 0.0;
        for (const Panel& p : panels) {
            value += p.value;
            err += p.err;
        }
        if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value)))
            return QuadResult{value, err};

        int worst = -1;
        for (size_t i = 0; i < panels.size(); ++i) {
            if (!panels[i].splittable) continue;
            if (worst < 0 || panels[i].err > panels[static_cast<size_t>(worst)].err ||
                (panels[i].err == panels[static_cast<size_t>(worst)].err &&
                 panels[i].a < panels[static_cast<size_t>(worst)].a))
                worst = static_cast<int>(i);
        }
        if (worst < 0 || splits >= cfg.max_subdivisions)
            throw QuadratureFailure("quadrature: subdivision budget exhausted", value, err);

        Panel p = panels[static_cast<size_t>(worst)];
        const double mid = 0.5 * (p.a + p.b);
        Panel left = eval_panel(f, p.a, mid);
        Panel right = eval_panel(f, mid, p.b);
        if (p.b - p.a < 1e-13 * total_width) {
            left.splittable = false;
            right.splittable = false;
        }
        panels[static_cast<size_t>(worst)] = left;
        panels.push_back(right);
        ++splits;
    }
}

} // namespace

QuadResult integrate_finite(const std::function<double(double)>& f,
                            double a, double b, const QuadConfig& cfg) {
    return adaptive(f, a, b, cfg);
}

QuadResult integrate_halfline(const std::function<double(double)>& f,
                              const QuadConfig& cfg) {
    auto transformed = [&f](double u) {
        const double w = 1.0 - u;
        return f(u / w) / (w * w);
    };
    if (cfg.tail_model_start <= 0.0) return adaptive(transformed, 0.0, 1.0, cfg);

    const double T = cfg.tail_model_start;
    // Fit t^2 f(t) = C + D/t from two sample points and integrate the model
    // over (T, inf): C/T + D/(2 T^2). The fit residual is carried as error.
    const double c1 = T * T * f(T);
    const double c2 = (T / 4.0) * (T / 4.0) * f(T / 4.0);
    const double D = (c2 - c1) * T / 3.0;
    const double C = c1 - D / T;
    const double tail_value = C / T + D / (2.0 * T * T);
    const double tail_err = std::abs(D) / (2.0 * T * T);

    const double u_max = T / (1.0 + T);
    QuadResult head;
    try {
        head = adaptive(transformed, 0.0, u_max, cfg);
    } catch (const QuadratureFailure& e) {
        throw QuadratureFailure(e.what(), e.partial_value + tail_value,
                                e.error_estimate + tail_err);
    }
    return QuadResult{head.value + tail_value, head.err_estimate + tail_err};
}

} // namespace momentinfo
