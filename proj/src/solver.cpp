#include "qball/solver.hpp"

#include "qball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qball {

namespace {

struct WorkState {
    ReducedState s;
    double e = 0.0;
    double c = 0.0;
};

ReducedState initial_state(const SolverConfig& cfg, const GridPtr& grid, double m) {
    ReducedState s;
    if (!cfg.init_u.empty()) {
        if ((int)cfg.init_u.size() != grid->n + 1)
            throw Error("initial profile size does not match the grid");
        s.u = RadialField(grid, cfg.init_u);
    } else {
        s.u = RadialField(grid);
        for (int i = 0; i <= grid->n; ++i) {
            const double x = grid->r[i] / cfg.init_width;
            s.u[i] = cfg.init_amplitude * std::exp(-x * x);
        }
    }
    if (!cfg.init_theta.empty()) {
        if ((int)cfg.init_theta.size() != grid->n + 1)
            throw Error("initial profile size does not match the grid");
        s.theta = RadialField(grid, cfg.init_theta);
    } else {
        s.theta = RadialField(grid);
        for (int i = 0; i <= grid->n; ++i) s.theta[i] = m * s.u[i];
    }
    s.u[grid->n] = 0.0;
    s.theta[grid->n] = 0.0;
    return project_gauss(s, cfg.q);
}

void energy_gradients(const ReducedState& s, const Potential& p, double q, RadialField& geu,
                      RadialField& get) {
    const RadialField lap = laplacian_radial(s.u, Bc::dirichlet);
    const int n = s.u.n();
    for (int i = 0; i <= n; ++i) {
        geu[i] = -lap[i] + eval_W_prime(p, s.u[i]) + q * s.phi[i] * s.theta[i];
        get[i] = s.theta[i] + q * s.phi[i] * s.u[i];
    }
}

double sup_abs(const RadialField& f) {
    double mx = 0.0;
    for (double x : f.v) mx = std::max(mx, std::abs(x));
    return mx;
}

SolitonSolution finish(const ReducedState& s, const Potential& p, const SolverConfig& cfg,
                       double j, int iters) {
    const ElResidual res = el_residual(s, p, cfg.q, cfg.u_floor);
    SolitonSolution sol;
    sol.state = s;
    sol.omega = res.omega;
    sol.energy = energy(s, p).total();
    sol.charge = charge(s);
    sol.lambda_ratio = sol.energy / std::abs(sol.charge);
    sol.j_value = j;
    sol.el_residual = res.stat1;
    sol.gauss_residual = res.gauss;
    sol.multiplier_residual = res.multiplier;
    sol.iterations = iters;
    return sol;
}

} // namespace

SolitonSolution minimize_j_delta(const SolverConfig& cfg, const Potential& p) {
    if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta))
        throw Error("minimize_j_delta: delta must be a positive number");
    const GridPtr grid = make_grid(cfg.r_max, cfg.n);
    const int n = grid->n;
    const double m = p.m;

    ReducedState s = initial_state(cfg, grid, m);
    double e = energy(s, p).total();
    double c = charge(s);
    if (std::abs(c) < kZeroChargeEps * (1.0 + e))
        throw ZeroChargeError("initial state carries no charge");
    double j = e / std::abs(c) + cfg.delta * e;

    RadialField geu(grid), get(grid), ru(grid), rt(grid);
    double tau = cfg.step_init;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const double ca = std::abs(c);
        const double lam = e / ca;
        const double sgn = c >= 0.0 ? 1.0 : -1.0;
        energy_gradients(s, p, cfg.q, geu, get);
        const double fac = 1.0 / ca + cfg.delta;
        // scaled so that at a stationary point these equal the EL residuals
        const double scale = ca / (1.0 + cfg.delta * ca);
        for (int i = 0; i < n; ++i) {
            ru[i] = scale * (fac * geu[i] - lam / ca * sgn * s.theta[i]);
            rt[i] = scale * (fac * get[i] - lam / ca * sgn * s.u[i]);
        }
        ru[n] = rt[n] = 0.0;
        const double gsup = std::max(sup_abs(ru), sup_abs(rt));
        const double amp = std::max(sup_abs(s.u), sup_abs(s.theta));
        if (amp > 0.0 && gsup < cfg.grad_tol * amp) {
            if (lam >= m)
                throw CollapseError("descent converged to a state with Lambda = " +
                                    std::to_string(lam) + " >= m: no nonvanishing minimizer");
            return finish(s, p, cfg, j, it);
        }
        // Vanishing-branch detector: states with Lambda >= m that are already
        // near-stationary in the amplitude-relative sense can only drift to
        // zero (their J limit stays above m); genuine minimizers sit strictly
        // below m.  Waiting for the norm floor would take unbounded time (the
        // decay along this branch is algebraic, not exponential).
        if (amp > 0.0 && lam >= m && gsup < 1e3 * cfg.grad_tol * amp)
            throw CollapseError("flow entered the vanishing branch: Lambda = " +
                                std::to_string(lam) +
                                " >= m with a near-stationary scaled gradient at iteration " +
                                std::to_string(it));

        const RadialField du = invert_shifted_laplacian(ru, m * m);
        bool accepted = false;
        ReducedState s2;
        double e2 = 0.0, c2 = 0.0, j2 = 0.0;
        for (int bt = 0; bt < 60; ++bt) {
            s2.u = RadialField(grid);
            s2.theta = RadialField(grid);
            for (int i = 0; i < n; ++i) {
                s2.u[i] = std::abs(s.u[i] - tau * du[i]);
                s2.theta[i] = s.theta[i] - tau * rt[i];
            }
            s2 = project_gauss(s2, cfg.q);
            e2 = energy(s2, p).total();
            c2 = charge(s2);
            if (std::abs(c2) < kZeroChargeEps * (1.0 + e2)) {
                tau *= 0.5;
                continue;
            }
            j2 = e2 / std::abs(c2) + cfg.delta * e2;
            if (std::isfinite(j2) && j2 <= j) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted)
            throw NoConvergenceError("line search stalled at iteration " + std::to_string(it) +
                                     " with gradient " + std::to_string(gsup));
        s = std::move(s2);
        e = e2;
        c = c2;
        j = j2;
        if (!all_finite(s.u) || !all_finite(s.theta) || !std::isfinite(j))
            throw NumericAbortError("non-finite iterate at iteration " + std::to_string(it));
        if (norm_w(s.u) < cfg.collapse_tol)
            throw CollapseError("iterate vanished (||u|| < collapse_tol) at iteration " +
                                std::to_string(it) + ", J = " + std::to_string(j));
        tau = std::min(tau * 1.1, 4.0);
    }
    throw NoConvergenceError("no convergence within " + std::to_string(cfg.max_iters) +
                             " iterations");
}

SolitonSolution minimize_e_fixed_c(double c_target, const SolverConfig& cfg, const Potential& p) {
    if (!(std::abs(c_target) > 0.0) || !std::isfinite(c_target))
        throw Error("minimize_e_fixed_c: charge target must be nonzero");
    const GridPtr grid = make_grid(cfg.r_max, cfg.n);
    const int n = grid->n;
    const double m = p.m;

    auto reproject = [&](ReducedState st) {
        st = project_gauss(st, cfg.q);
        const double c0 = charge(st);
        const double e0 = energy(st, p).total();
        if (std::abs(c0) < kZeroChargeEps * (1.0 + e0))
            throw ZeroChargeError("projection onto the charge constraint is degenerate");
        const double f = c_target / c0;
        // phi is linear in theta, so the Gauss solve rescales along
        for (int i = 0; i <= n; ++i) {
            st.theta[i] *= f;
            st.phi[i] *= f;
        }
        return st;
    };

    ReducedState s = reproject(initial_state(cfg, grid, m));
    double e = energy(s, p).total();

    RadialField geu(grid), get(grid), ru(grid), rt(grid);
    double tau = cfg.step_init;
    for (int it = 0; it < cfg.max_iters; ++it) {
        energy_gradients(s, p, cfg.q, geu, get);
        // Lagrange fit: at a constrained stationary point gE = omega * gC
        // with gC = (theta, u); project that component out.
        double num = 0.0, den = 0.0;
        const auto& w = grid->w;
        for (int i = 0; i <= n; ++i) {
            num += w[i] * (geu[i] * s.theta[i] + get[i] * s.u[i]);
            den += w[i] * (s.theta[i] * s.theta[i] + s.u[i] * s.u[i]);
        }
        const double om = den > 0.0 ? num / den : 0.0;
        for (int i = 0; i < n; ++i) {
            ru[i] = geu[i] - om * s.theta[i];
            rt[i] = get[i] - om * s.u[i];
        }
        ru[n] = rt[n] = 0.0;
        const double gsup = std::max(sup_abs(ru), sup_abs(rt));
        const double amp = std::max(sup_abs(s.u), sup_abs(s.theta));
        if (amp > 0.0 && gsup < cfg.grad_tol * amp) {
            const double lam = e / std::abs(c_target);
            if (lam >= m)
                throw CollapseError("constrained descent converged with Lambda = " +
                                    std::to_string(lam) + " >= m");
            return finish(s, p, cfg, lam, it);
        }

        const RadialField du = invert_shifted_laplacian(ru, m * m);
        bool accepted = false;
        ReducedState s2;
        double e2 = 0.0;
        for (int bt = 0; bt < 60; ++bt) {
            s2.u = RadialField(grid);
            s2.theta = RadialField(grid);
            for (int i = 0; i < n; ++i) {
                s2.u[i] = std::abs(s.u[i] - tau * du[i]);
                s2.theta[i] = s.theta[i] - tau * rt[i];
            }
            bool degenerate = false;
            try {
                s2 = reproject(std::move(s2));
            } catch (const ZeroChargeError&) {
                degenerate = true;
            }
            if (!degenerate) {
                e2 = energy(s2, p).total();
                if (std::isfinite(e2) && e2 <= e) {
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
        }
        if (!accepted)
            throw NoConvergenceError("line search stalled at iteration " + std::to_string(it) +
                                     " with gradient " + std::to_string(gsup));
        s = std::move(s2);
        e = e2;
        if (!all_finite(s.u) || !all_finite(s.theta) || !std::isfinite(e))
            throw NumericAbortError("non-finite iterate at iteration " + std::to_string(it));
        if (norm_w(s.u) < cfg.collapse_tol)
            throw CollapseError("iterate vanished (||u|| < collapse_tol) at iteration " +
                                std::to_string(it));
        tau = std::min(tau * 1.1, 4.0);
    }
    throw NoConvergenceError("no convergence within " + std::to_string(cfg.max_iters) +
                             " iterations");
}

ElResidual el_residual(const ReducedState& s, const Potential& p, double q, double u_floor) {
    const auto& g = *s.u.grid;
    const int n = g.n;

    int used = 0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= n; ++i) {
        if (s.u[i] > u_floor) {
            ++used;
            num += g.w[i] * s.u[i] * (s.theta[i] + q * s.phi[i] * s.u[i]);
            den += g.w[i] * s.u[i] * s.u[i];
        }
    }
    if (used < 10)
        throw DegenerateFitError("multiplier fit has only " + std::to_string(used) +
                                 " nodes above the amplitude floor");
    ElResidual out;
    out.omega = num / den;

    const RadialField lap_u = laplacian_radial(s.u, Bc::dirichlet);
    const RadialField lap_phi = laplacian_radial(s.phi, Bc::robin_coulomb);
    for (int i = 0; i < n; ++i) {
        const double eff = out.omega - q * s.phi[i];
        out.stat1 = std::max(out.stat1,
                             std::abs(-lap_u[i] + eval_W_prime(p, s.u[i]) - eff * eff * s.u[i]));
        out.gauss = std::max(out.gauss, std::abs(lap_phi[i] + q * s.theta[i] * s.u[i]));
        out.multiplier = std::max(out.multiplier, std::abs(s.theta[i] - eff * s.u[i]));
    }
    return out;
}

namespace {

// one RK4 step of u' = p, p' = F(u) - 2 p / r
void rk4_step(const Potential& p, double om2, double& r, double& u, double& pr, double dr) {
    auto fp = [&](double uu, double pp, double rr) {
        const double f = eval_W_prime(p, std::abs(uu)) * (uu < 0.0 ? -1.0 : 1.0) - om2 * uu;
        return rr > 0.0 ? f - 2.0 * pp / rr : f / 3.0;
    };
    const double k1u = pr, k1p = fp(u, pr, r);
    const double k2u = pr + 0.5 * dr * k1p, k2p = fp(u + 0.5 * dr * k1u, pr + 0.5 * dr * k1p, r + 0.5 * dr);
    const double k3u = pr + 0.5 * dr * k2p, k3p = fp(u + 0.5 * dr * k2u, pr + 0.5 * dr * k2p, r + 0.5 * dr);
    const double k4u = pr + dr * k3p, k4p = fp(u + dr * k3u, pr + dr * k3p, r + dr);
    u += dr / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    pr += dr / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    r += dr;
}

// +1: overshoot (u crossed zero), -1: undershoot (u turned back up or survived
// to r_max positive).  Also reports the minimum of u along the trajectory.
int classify_shot(double a, const Potential& p, double om2, double r_max, double dr,
                  double* min_u = nullptr) {
    double r = 0.0, u = a, pr = 0.0, mn = a;
    while (r < r_max) {
        rk4_step(p, om2, r, u, pr, dr);
        mn = std::min(mn, u);
        if (u < 0.0) {
            if (min_u) *min_u = mn;
            return +1;
        }
        if (pr > 0.0) break;
    }
    if (min_u) *min_u = mn;
    return -1;
}

} // namespace

RadialField shooting_oracle_q0(double omega, const Potential& p, const GridPtr& grid) {
    const double om2 = omega * omega;
    const PotentialReport rep = check_assumptions(p, 10.0 / p.m, 20000);
    if (!(om2 > rep.alpha0) || !(om2 < p.m * p.m))
        throw NoGroundStateError("omega^2 = " + std::to_string(om2) +
                                 " outside the admissible window (" + std::to_string(rep.alpha0) +
                                 ", " + std::to_string(p.m * p.m) + ")");

    const double r_max = grid->r_max;
    const double dr = std::min(grid->h, 0.005);

    // coarse multiplicative scan for an (undershoot, overshoot) bracket
    double lo = 0.0, hi = 0.0;
    {
        double prev_a = 0.0;
        int prev_cls = 0;
        double best_a = 0.0, best_min = 1e300;
        for (double a = 0.01 * rep.s_star; a < 50.0; a *= 1.1) {
            double mn = 0.0;
            const int cls = classify_shot(a, p, om2, r_max, dr, &mn);
            if (prev_cls == -1 && cls == +1) {
                lo = prev_a;
                hi = a;
                break;
            }
            if (cls == -1 && mn < best_min) {
                best_min = mn;
                best_a = a;
            }
            prev_a = a;
            prev_cls = cls;
        }
        if (hi == 0.0 && best_a > 0.0) {
            // refine around the shallowest undershoot
            for (double a = best_a / 1.1; a < best_a * 1.1; a += best_a * 0.002) {
                const int cls = classify_shot(a, p, om2, r_max, dr);
                if (cls == +1) {
                    hi = a;
                    lo = a - best_a * 0.002;
                    break;
                }
            }
        }
        if (hi == 0.0)
            throw NoGroundStateError("shooting bracket not found for omega = " +
                                     std::to_string(omega));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (classify_shot(mid, p, om2, r_max, dr) == +1 ? hi : lo) = mid;
    }
    const double a = 0.5 * (lo + hi);

    // final pass: sample at the grid nodes, clamp the analytic tail once the
    // amplitude is negligible
    const double kappa = std::sqrt(p.m * p.m - om2);
    const int sub = std::max(1, (int)std::ceil(grid->h / dr));
    const double step = grid->h / sub;
    RadialField out(grid);
    out[0] = a;
    double r = 0.0, u = a, pr = 0.0;
    bool tail = false;
    double r_star = 0.0, u_star = 0.0;
    for (int i = 1; i <= grid->n; ++i) {
        if (!tail) {
            for (int k = 0; k < sub; ++k) rk4_step(p, om2, r, u, pr, step);
            if (u < 1e-8 * a || pr > 0.0) {
                tail = true;
                r_star = grid->r[i - 1];
                u_star = out[i - 1];
            }
        }
        if (tail) {
            const double rr = grid->r[i];
            out[i] = r_star > 0.0 ? u_star * (r_star / rr) * std::exp(-kappa * (rr - r_star)) : 0.0;
        } else {
            out[i] = u;
        }
    }
    out[grid->n] = 0.0;
    return out;
}

} // namespace qball
