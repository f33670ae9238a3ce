#include "qball/dynamics.hpp"

#include "qball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qball {

namespace {

const double kPi = std::numbers::pi;

RadialField charge_density(const DynamicState& s) {
    RadialField rho(s.psi_re.grid);
    for (int i = 0; i <= rho.n(); ++i)
        rho[i] = s.psi_im[i] * s.pi_re[i] - s.psi_re[i] * s.pi_im[i];
    return rho;
}

// exp(-i q phi a) rotation applied pointwise to (psi, pi)
void gauge_rotate(DynamicState& s, double q, double a) {
    if (q == 0.0) return;
    for (int i = 0; i <= s.psi_re.n(); ++i) {
        const double ang = q * s.phi[i] * a;
        const double c = std::cos(ang), sn = std::sin(ang);
        double re = s.psi_re[i], im = s.psi_im[i];
        s.psi_re[i] = c * re + sn * im;
        s.psi_im[i] = c * im - sn * re;
        re = s.pi_re[i];
        im = s.pi_im[i];
        s.pi_re[i] = c * re + sn * im;
        s.pi_im[i] = c * im - sn * re;
    }
}

void kick(DynamicState& s, const Potential& p, double dt) {
    const RadialField lre = laplacian_radial(s.psi_re, Bc::dirichlet);
    const RadialField lim = laplacian_radial(s.psi_im, Bc::dirichlet);
    const int n = s.psi_re.n();
    for (int i = 0; i < n; ++i) {
        const double mag = std::hypot(s.psi_re[i], s.psi_im[i]);
        const double wp = eval_W_prime_over_s(p, mag);
        s.pi_re[i] += dt * (lre[i] - wp * s.psi_re[i]);
        s.pi_im[i] += dt * (lim[i] - wp * s.psi_im[i]);
    }
}

void drift(DynamicState& s, double dt) {
    const int n = s.psi_re.n();
    for (int i = 0; i < n; ++i) {
        s.psi_re[i] += dt * s.pi_re[i];
        s.psi_im[i] += dt * s.pi_im[i];
    }
}

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

double resolve_dt(const EvolutionConfig& cfg, double h) {
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.5 * cfg.cfl_safety * h;
    if (!(dt > 0.0) || dt > cfg.cfl_safety * h)
        throw Error("time step violates the stability bound dt <= cfl_safety * h");
    return dt;
}

} // namespace

DynamicState embed_soliton(const ReducedState& s, double q) {
    DynamicState d;
    d.psi_re = s.u;
    d.psi_im = RadialField(s.u.grid);
    d.pi_re = RadialField(s.u.grid);
    d.pi_im = s.theta;
    for (int i = 0; i <= d.pi_im.n(); ++i) d.pi_im[i] = -s.theta[i];
    d.phi = poisson_solve(charge_density(d), q);
    d.t = 0.0;
    return d;
}

DynamicState gaussian_pulse(double amplitude, const GridPtr& grid, double q) {
    DynamicState d;
    d.psi_re = RadialField(grid);
    d.psi_im = RadialField(grid);
    d.pi_re = RadialField(grid);
    d.pi_im = RadialField(grid);
    for (int i = 0; i < grid->n; ++i)
        d.psi_re[i] = amplitude * std::exp(-grid->r[i] * grid->r[i]);
    d.phi = poisson_solve(charge_density(d), q);
    d.t = 0.0;
    return d;
}

void step(DynamicState& s, const EvolutionConfig& cfg, const Potential& p) {
    const double dt = resolve_dt(cfg, s.psi_re.grid->h);
    gauge_rotate(s, cfg.q, 0.5 * dt);
    kick(s, p, 0.5 * dt);
    drift(s, dt);
    kick(s, p, 0.5 * dt);
    if (!all_finite(s.psi_re) || !all_finite(s.psi_im) || !all_finite(s.pi_re) ||
        !all_finite(s.pi_im))
        throw NumericAbortError("non-finite field values at t = " + std::to_string(s.t));
    s.phi = poisson_solve(charge_density(s), cfg.q);
    gauge_rotate(s, cfg.q, 0.5 * dt);
    s.t += dt;
    if (!all_finite(s.psi_re) || !all_finite(s.psi_im) || !all_finite(s.pi_re) ||
        !all_finite(s.pi_im) || !all_finite(s.phi))
        throw NumericAbortError("non-finite field values at t = " + std::to_string(s.t));
}

double conserved_energy(const DynamicState& s, const Potential& p) {
    const auto& w = s.psi_re.grid->w;
    double kin = 0.0, pot = 0.0;
    for (int i = 0; i <= s.psi_re.n(); ++i) {
        kin += w[i] * (s.pi_re[i] * s.pi_re[i] + s.pi_im[i] * s.pi_im[i]);
        pot += w[i] * eval_W(p, std::hypot(s.psi_re[i], s.psi_im[i]));
    }
    return 0.5 * kin + half_grad_sq(s.psi_re, false) + half_grad_sq(s.psi_im, false) + pot +
           half_grad_sq(s.phi, true);
}

double conserved_charge(const DynamicState& s) { return integrate(charge_density(s)); }

double liapunov_v(const DynamicState& s, double e_target, double c_target, const Potential& p) {
    const double de = conserved_energy(s, p) - e_target;
    const double dc = std::abs(conserved_charge(s)) - c_target;
    return de * de + dc * dc;
}

double orbit_distance(const DynamicState& s, const ReducedState& sol) {
    const auto& g = *s.psi_re.grid;
    const int n = g.n;
    auto dist2 = [&](double chi) {
        const double c = std::cos(chi), sn = std::sin(chi);
        double mass = 0.0, grad = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double dre = s.psi_re[i] - sol.u[i] * c;
            const double dim = s.psi_im[i] - sol.u[i] * sn;
            const double dpr = s.pi_re[i] - sol.theta[i] * sn;
            const double dpi = s.pi_im[i] + sol.theta[i] * c;
            mass += g.w[i] * (dre * dre + dim * dim + dpr * dpr + dpi * dpi);
            if (i < n) {
                const double gre = (s.psi_re[i + 1] - sol.u[i + 1] * c - dre) / g.h;
                const double gim = (s.psi_im[i + 1] - sol.u[i + 1] * sn - dim) / g.h;
                grad += 4.0 * kPi * g.ah[i] * g.h * (gre * gre + gim * gim);
            }
        }
        return mass + grad;
    };
    // coarse scan over the phase circle, then golden-section refinement
    double best_chi = 0.0, best = dist2(0.0);
    for (int k = 1; k < 64; ++k) {
        const double chi = 2.0 * kPi * k / 64.0;
        const double d = dist2(chi);
        if (d < best) {
            best = d;
            best_chi = chi;
        }
    }
    double a = best_chi - 2.0 * kPi / 64.0, b = best_chi + 2.0 * kPi / 64.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = dist2(c), fd = dist2(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = dist2(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = dist2(d);
        }
    }
    return std::sqrt(std::min({best, fc, fd}));
}

StabilityReport stability_probe(const SolitonSolution& sol, double rel_perturbation,
                                const EvolutionConfig& cfg, const Potential& p) {
    DynamicState s = embed_soliton(sol.state, cfg.q);
    const double f = 1.0 + rel_perturbation;
    for (int i = 0; i <= s.psi_re.n(); ++i) {
        s.psi_re[i] *= f;
        s.psi_im[i] *= f;
        s.pi_re[i] *= f;
        s.pi_im[i] *= f;
    }
    s.phi = poisson_solve(charge_density(s), cfg.q);

    const double e0 = conserved_energy(s, p);
    const double c0 = conserved_charge(s);

    StabilityReport rep;
    rep.initial_distance = orbit_distance(s, sol.state);
    rep.max_distance = rep.initial_distance;
    rep.distance_series.emplace_back(0.0, rep.initial_distance);

    const double dt = resolve_dt(cfg, s.psi_re.grid->h);
    const long long steps = (long long)std::ceil(cfg.t_final / dt - 1e-12);
    for (long long k = 1; k <= steps; ++k) {
        step(s, cfg, p);
        if (k % cfg.snapshot_stride == 0 || k == steps) {
            const double d = orbit_distance(s, sol.state);
            rep.max_distance = std::max(rep.max_distance, d);
            rep.distance_series.emplace_back(s.t, d);
            rep.e_drift_rel = std::max(rep.e_drift_rel,
                                       std::abs(conserved_energy(s, p) - e0) / (1.0 + std::abs(e0)));
            rep.c_drift_rel = std::max(rep.c_drift_rel,
                                       std::abs(conserved_charge(s) - c0) / (1.0 + std::abs(c0)));
            rep.v_max = std::max(rep.v_max, liapunov_v(s, e0, std::abs(c0), p));
        }
    }
    return rep;
}

std::vector<std::pair<double, double>> star_norm_series(DynamicState s,
                                                        const EvolutionConfig& cfg,
                                                        const Potential& p) {
    std::vector<std::pair<double, double>> out;
    auto sample = [&] {
        RadialField mag(s.psi_re.grid);
        for (int i = 0; i <= mag.n(); ++i) mag[i] = std::hypot(s.psi_re[i], s.psi_im[i]);
        out.emplace_back(s.t, star_norm(mag));
    };
    sample();
    const double dt = resolve_dt(cfg, s.psi_re.grid->h);
    const long long steps = (long long)std::ceil(cfg.t_final / dt - 1e-12);
    for (long long k = 1; k <= steps; ++k) {
        step(s, cfg, p);
        if (k % cfg.snapshot_stride == 0 || k == steps) sample();
    }
    return out;
}

std::vector<std::pair<double, double>> dispersion_probe(double amplitude,
                                                        const EvolutionConfig& cfg,
                                                        const Potential& p) {
    const GridPtr grid = make_grid(cfg.r_max, cfg.n);
    return star_norm_series(gaussian_pulse(amplitude, grid, cfg.q), cfg, p);
}

} // namespace qball
