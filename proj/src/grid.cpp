#include "qball/grid.hpp"

#include "qball/errors.hpp"

#include <cmath>
#include <numbers>

namespace qball {

GridPtr make_grid(double r_max, int n) {
    if (r_max <= 0.0 || n < 2) throw Error("make_grid: need r_max > 0 and n >= 2");
    auto g = std::make_shared<RadialGrid>();
    g->r_max = r_max;
    g->n = n;
    g->h = r_max / n;
    const double h = g->h;
    const double pi = std::numbers::pi;
    g->r.resize(n + 1);
    g->w.resize(n + 1);
    g->ah.resize(n);
    for (int i = 0; i <= n; ++i) {
        g->r[i] = i * h;
        g->w[i] = 4.0 * pi * g->r[i] * g->r[i] * h;
    }
    g->w[0] = pi * h * h * h / 6.0; // half-cell volume moment at the origin
    g->w[n] *= 0.5;                 // trapezoid end weight
    for (int i = 0; i < n; ++i) {
        const double rh = (i + 0.5) * h;
        g->ah[i] = rh * rh;
    }
    return g;
}

double integrate(const RadialField& f) {
    const auto& w = f.grid->w;
    double acc = 0.0;
    for (size_t i = 0; i < f.v.size(); ++i) acc += w[i] * f.v[i];
    return acc;
}

double dot_w(const RadialField& f, const RadialField& g) {
    const auto& w = f.grid->w;
    double acc = 0.0;
    for (size_t i = 0; i < f.v.size(); ++i) acc += w[i] * f.v[i] * g.v[i];
    return acc;
}

double norm_w(const RadialField& f) { return std::sqrt(dot_w(f, f)); }

bool all_finite(const RadialField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace qball
