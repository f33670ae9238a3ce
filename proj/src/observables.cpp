#include "qball/observables.hpp"

#include "qball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qball {

namespace {

const double kPi = std::numbers::pi;

// 1/2 int |grad f|^2 dx in the midpoint-flux form matched to the stencil;
// tail_coulomb adds the analytic 1/r continuation beyond r_max (potentials).
double half_grad_sq(const RadialField& f, bool tail_coulomb) {
    const auto& g = *f.grid;
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double df = (f[i + 1] - f[i]) / g.h;
        acc += 4.0 * kPi * g.ah[i] * g.h * df * df;
    }
    acc *= 0.5;
    if (tail_coulomb) acc += 2.0 * kPi * g.r[g.n] * f[g.n] * f[g.n];
    return acc;
}

} // namespace

EnergyBreakdown energy(const ReducedState& s, const Potential& p) {
    EnergyBreakdown b;
    b.grad_u_term = half_grad_sq(s.u, false);
    const int n = s.u.n();
    const auto& w = s.u.grid->w;
    double mass = 0.0, th = 0.0, nn = 0.0;
    for (int i = 0; i <= n; ++i) {
        mass += w[i] * s.u[i] * s.u[i];
        th += w[i] * s.theta[i] * s.theta[i];
        nn += w[i] * eval_N(p, s.u[i]);
    }
    b.mass_term = 0.5 * p.m * p.m * mass;
    b.theta_term = 0.5 * th;
    b.efield_term = half_grad_sq(s.phi, true);
    b.n_term = nn;
    return b;
}

double charge(const ReducedState& s) {
    const auto& w = s.u.grid->w;
    double acc = 0.0;
    for (int i = 0; i <= s.u.n(); ++i) acc += w[i] * s.theta[i] * s.u[i];
    return acc;
}

double hylenic_ratio(const ReducedState& s, const Potential& p) {
    const double e = energy(s, p).total();
    const double c = charge(s);
    if (std::abs(c) < kZeroChargeEps * (1.0 + e))
        throw ZeroChargeError("hylenic ratio undefined: |C| = " + std::to_string(std::abs(c)));
    return e / std::abs(c);
}

double j_delta(const ReducedState& s, const Potential& p, double delta) {
    if (delta <= 0.0) throw Error("j_delta: delta must be positive");
    const double e = energy(s, p).total();
    const double c = charge(s);
    if (std::abs(c) < kZeroChargeEps * (1.0 + e))
        throw ZeroChargeError("j_delta undefined: |C| = " + std::to_string(std::abs(c)));
    return e / std::abs(c) + delta * e;
}

RadialField binding_energy_density(const ReducedState& s, const Potential& p, double lambda0) {
    if (lambda0 <= 0.0) throw Error("binding_energy_density: lambda0 must be positive");
    const auto& g = *s.u.grid;
    const int n = g.n;
    RadialField beta(s.u.grid);
    auto gradsq = [&](const RadialField& f, int i) {
        if (i == 0) return 0.0; // even extension: f'(0) = 0
        if (i == n) {
            const double d = (f[n] - f[n - 1]) / g.h;
            return d * d;
        }
        const double d = (f[i + 1] - f[i - 1]) / (2.0 * g.h);
        return d * d;
    };
    for (int i = 0; i <= n; ++i) {
        const double rho_e = 0.5 * (gradsq(s.u, i) + p.m * p.m * s.u[i] * s.u[i] +
                                    s.theta[i] * s.theta[i] + gradsq(s.phi, i)) +
                             eval_N(p, s.u[i]);
        const double rho_c = s.theta[i] * s.u[i];
        beta[i] = std::max(0.0, lambda0 * std::abs(rho_c) - rho_e);
    }
    return beta;
}

std::vector<std::pair<double, double>> support_region(const RadialField& beta, double tol) {
    if (tol < 0.0) throw Error("support_region: tol must be >= 0");
    const auto& g = *beta.grid;
    double mx = 0.0;
    for (int i = 0; i <= g.n; ++i) mx = std::max(mx, beta[i]);
    std::vector<std::pair<double, double>> out;
    if (mx <= 0.0) return out;
    const double thr = tol * mx;
    int start = -1;
    for (int i = 0; i <= g.n; ++i) {
        const bool on = beta[i] > thr;
        if (on && start < 0) start = i;
        if ((!on || i == g.n) && start >= 0) {
            const int end = on ? i : i - 1;
            out.emplace_back(g.r[start], g.r[end]);
            start = -1;
        }
    }
    return out;
}

double sharp_seminorm(const RadialField& u, double r_exp, double q_exp) {
    const auto& w = u.grid->w;
    double sr = 0.0, sq = 0.0;
    for (int i = 0; i <= u.n(); ++i) {
        const double a = std::abs(u[i]);
        sr += w[i] * std::pow(a, r_exp);
        sq += w[i] * std::pow(a, q_exp);
    }
    return std::max(std::pow(sr, 1.0 / r_exp), std::pow(sq, 1.0 / q_exp));
}

double star_norm(const RadialField& u) {
    const auto& g = *u.grid;
    const int n = g.n;
    const int stride = std::max(1, n / 512);
    double best = 0.0;
    for (int ic = 0; ic <= n; ic += stride) {
        const double d = g.r[ic];
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double r = g.r[i];
            double frac;
            if (d + r <= 1.0) {
                frac = 1.0;
            } else if (std::abs(d - r) >= 1.0) {
                frac = 0.0;
            } else {
                // fraction of the shell of radius r inside the unit ball at
                // distance d: spherical cap with cos(theta*) = (d^2+r^2-1)/(2dr)
                const double ct = std::clamp((d * d + r * r - 1.0) / (2.0 * d * r), -1.0, 1.0);
                frac = 0.5 * (1.0 - ct);
            }
            if (frac > 0.0) acc += g.w[i] * std::abs(u[i]) * frac;
        }
        best = std::max(best, acc);
    }
    return best;
}

} // namespace qball
