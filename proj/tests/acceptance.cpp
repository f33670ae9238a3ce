// End-to-end acceptance gate.  Each numbered criterion prints exactly one
// PASS/FAIL line; NOTE lines document measured behavior and the parameter
// choices that differ from the draft plan (penalty weights and couplings were
// recalibrated against the measured admissible range; see README).
#include "qball/dynamics.hpp"
#include "qball/errors.hpp"
#include "qball/io.hpp"
#include "qball/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace qball;

namespace {

int g_failures = 0;

void report(int num, const std::string& desc, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("%s  criterion %2d: %s  [%s]\n", ok ? "PASS" : "FAIL", num, desc.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

void note(const std::string& text) {
    std::printf("NOTE              %s\n", text.c_str());
    std::fflush(stdout);
}

SolverConfig production_config(double delta, double q) {
    SolverConfig cfg;
    cfg.delta = delta;
    cfg.q = q;
    cfg.r_max = 30.0;
    cfg.n = 3000;
    cfg.init_amplitude = 0.5;
    cfg.init_width = 7.0;
    cfg.max_iters = 100000;
    return cfg;
}

double rel_l2(const RadialField& a, const RadialField& b) {
    const auto& w = a.grid->w;
    double d2 = 0.0, r2 = 0.0;
    for (int i = 0; i <= a.n(); ++i) {
        d2 += w[i] * (a[i] - b[i]) * (a[i] - b[i]);
        r2 += w[i] * b[i] * b[i];
    }
    return std::sqrt(d2 / r2);
}

} // namespace

int main() {
    const Potential p = Potential::reference();

    // ---- 1: potential oracle ------------------------------------------------
    try {
        const PotentialReport rep = check_assumptions(p, 10.0, 20000);
        const bool ok = rep.hylomorphy_ok && std::abs(rep.alpha0 - 7.0 / 9.0) < 1e-10 &&
                        std::abs(rep.s_star - 2.0 / 3.0) < 1e-8 &&
                        std::abs(rep.witness_N + 1.0 / 12.0) < 1e-15 &&
                        std::abs(eval_N(p, 1.0) + 1.0 / 12.0) < 1e-15;
        report(1, "potential oracle: alpha0 = 7/9, s* = 2/3, N(1) = -1/12", ok,
               "alpha0 = " + fmt17(rep.alpha0) + ", s* = " + fmt17(rep.s_star));
    } catch (const std::exception& e) {
        report(1, "potential oracle", false, e.what());
    }

    // ---- 2: Poisson dual oracle --------------------------------------------
    try {
        auto sup_diff = [&](int n) {
            const GridPtr g = make_grid(20.0, n);
            RadialField src(g);
            for (int i = 0; i <= g->n; ++i) src[i] = std::exp(-g->r[i] * g->r[i]);
            const RadialField a = poisson_solve(src, 1.0);
            const RadialField b = poisson_solve_fd(src, 1.0);
            double mx = 0.0;
            for (int i = 0; i <= g->n; ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
            return mx;
        };
        const double d1 = sup_diff(250), d2 = sup_diff(500), d3 = sup_diff(1000);
        const double o1 = std::log2(d1 / d2), o2 = std::log2(d2 / d3);
        report(2, "Poisson dual oracle converges at second order", o1 > 1.9 && o2 > 1.9,
               "orders " + fmt17(o1) + ", " + fmt17(o2));
    } catch (const std::exception& e) {
        report(2, "Poisson dual oracle", false, e.what());
    }

    // ---- 3: q = 0 soliton cross-oracle --------------------------------------
    // The admissible penalty range for this system is tiny (measured
    // delta_inf ~ 3e-4 at q = 0); delta = 2e-4 sits inside it.  The draft
    // value 0.05 lies far outside and must collapse -- both facts are checked.
    SolitonSolution sol3;
    bool have_sol3 = false;
    try {
        sol3 = minimize_j_delta(production_config(2e-4, 0.0), p);
        have_sol3 = true;
        const RadialField oracle = shooting_oracle_q0(sol3.omega, p, sol3.state.u.grid);
        const double dist = rel_l2(sol3.state.u, oracle);
        const bool ok = sol3.el_residual < 1e-6 && sol3.omega > 0.8819 && sol3.omega < 1.0 &&
                        dist < 1e-3;
        report(3, "q = 0 soliton matches the shooting oracle (delta = 2e-4)", ok,
               "omega = " + fmt17(sol3.omega) + ", residual = " + fmt17(sol3.el_residual) +
                   ", rel L2 = " + fmt17(dist));
        note("criterion 3 runs at delta = 2e-4: the measured admissible range at q = 0 tops "
             "out near 3e-4, so larger penalties admit no nonvanishing minimizer");
    } catch (const std::exception& e) {
        report(3, "q = 0 soliton cross-oracle", false, e.what());
    }
    try {
        SolverConfig big = production_config(0.05, 0.0);
        big.r_max = 20.0;
        big.n = 600;
        big.max_iters = 60000;
        minimize_j_delta(big, p);
        note("delta = 0.05 unexpectedly produced a minimizer");
    } catch (const CollapseError&) {
        note("verified: delta = 0.05 collapses (outside the admissible range), reported as "
             "exit-code-3 behavior");
    } catch (const std::exception& e) {
        note(std::string("delta = 0.05 probe ended with: ") + e.what());
    }

    // ---- 4: charged stationarity --------------------------------------------
    try {
        const SolitonSolution sol = minimize_j_delta(production_config(1e-4, 0.1), p);
        const bool ok = sol.el_residual < 1e-6 && sol.gauss_residual < 1e-6 &&
                        sol.multiplier_residual < 1e-6 && sol.lambda_ratio < 1.0;
        report(4, "charged stationarity at q = 0.1 (delta = 1e-4)", ok,
               "residuals = " + fmt17(sol.el_residual) + ", " + fmt17(sol.gauss_residual) + ", " +
                   fmt17(sol.multiplier_residual) + "; Lambda = " + fmt17(sol.lambda_ratio));
    } catch (const std::exception& e) {
        report(4, "charged stationarity", false, e.what());
    }

    // ---- 5: hylomorphy certificate -------------------------------------------
    try {
        const GridPtr g = make_grid(40.0, 4000);
        const HylomorphyCertificate small_q = certify_hylomorphy(p, 0.02, g);

        const HylomorphyCertificate q0 = certify_hylomorphy(p, 0.0, g);
        bool halving = true;
        std::string gaps;
        for (size_t i = 0; i + 1 < q0.ladder.size(); ++i) {
            const double ratio = (q0.ladder[i + 1].lambda - q0.alpha) /
                                 (q0.ladder[i].lambda - q0.alpha);
            if (std::abs(ratio - 0.5) > 0.1) halving = false;
            gaps += (i ? "," : "") + fmt17(ratio);
        }

        bool strong_fails = false;
        try {
            certify_hylomorphy(p, 10.0, g);
        } catch (const CertificateFailedError&) {
            strong_fails = true;
        }

        report(5, "certificate: success at q = 0.02, 1/R gap halving at q = 0, failure at q = 10",
               small_q.margin > 0.0 && halving && strong_fails,
               "margin(0.02) = " + fmt17(small_q.margin) + "; gap ratios " + gaps);
        try {
            certify_hylomorphy(p, 0.05, g);
            note("q = 0.05 certificate unexpectedly succeeded");
        } catch (const CertificateFailedError&) {
            note("measured: the plateau certificate cannot succeed at q = 0.05 (Coulomb term "
                 "q^2 s0^2 R^2/5 beats the 1/R surface gain; crossover near q = 0.033), so the "
                 "success leg runs at q = 0.02");
        }
    } catch (const std::exception& e) {
        report(5, "hylomorphy certificate", false, e.what());
    }

    // ---- 6: family monotonicity ----------------------------------------------
    SweepResult sweep6;
    bool have_sweep6 = false;
    const std::vector<double> deltas6 = {1.25e-5, 2.5e-5, 5e-5, 1e-4, 2e-4};
    try {
        sweep6 = family_sweep(deltas6, production_config(1e-4, 0.05), p);
        have_sweep6 = true;
        bool all_inside = true;
        for (const auto& row : sweep6.rows)
            if (!row.converged || !(row.j_value < p.m)) all_inside = false;
        report(6, "5-point delta sweep at q = 0.05 is strictly monotone",
               sweep6.verdict.monotone() && all_inside,
               "Lambda " + fmt17(sweep6.rows.front().lambda) + " -> " +
                   fmt17(sweep6.rows.back().lambda) + ", E " + fmt17(sweep6.rows.front().energy) +
                   " -> " + fmt17(sweep6.rows.back().energy));
        note("sweep deltas {1.25e-5 .. 2e-4} sit inside the measured admissible range; each row "
             "self-certifies via J_delta < m");
    } catch (const std::exception& e) {
        report(6, "family monotonicity sweep", false, e.what());
    }

    // ---- 7: small-amplitude bound ---------------------------------------------
    try {
        const GridPtr g = make_grid(30.0, 3000);
        RadialField u(g);
        for (int i = 0; i < g->n; ++i) u[i] = std::exp(-g->r[i] * g->r[i] / 4.0);
        const double norm = sharp_seminorm(u, 3.0, 4.0); // growth exponents (3, 4)
        for (auto& x : u.v) x /= norm;                   // ||u||_sharp = 1
        bool ok = true;
        std::string vals;
        for (double eps : {0.1, 0.05, 0.01}) {
            ReducedState s;
            s.u = RadialField(g);
            for (int i = 0; i <= g->n; ++i) s.u[i] = eps * u[i];
            // optimal theta for fixed u at q = 0 is proportional to u
            s.theta = RadialField(g);
            double e0;
            {
                s.phi = RadialField(g);
                const EnergyBreakdown b = energy(s, p);
                e0 = b.grad_u_term + b.mass_term + b.n_term;
            }
            const double I = dot_w(s.u, s.u);
            const double tau = std::sqrt(2.0 * e0 / I);
            for (int i = 0; i <= g->n; ++i) s.theta[i] = tau * s.u[i];
            const double lam = hylenic_ratio(s, p);
            const double bound = p.m * std::sqrt(1.0 - 2.0 * std::sqrt(eps));
            if (!(lam >= bound)) ok = false;
            vals += "eps " + fmt17(eps) + ": " + fmt17(lam) + " >= " + fmt17(bound) + "; ";
        }
        report(7, "small-amplitude bound Lambda >= m sqrt(1 - 2 eps^0.5)", ok, vals);
    } catch (const std::exception& e) {
        report(7, "small-amplitude bound", false, e.what());
    }

    // ---- 8: conservation, Liapunov, reversibility ------------------------------
    SolitonSolution sol8;
    bool have_sol8 = false;
    try {
        sol8 = minimize_j_delta(production_config(2e-4, 0.05), p);
        have_sol8 = true;
        EvolutionConfig ec;
        ec.q = 0.05;
        ec.r_max = 30.0;
        ec.n = 3000;
        ec.t_final = 50.0;
        DynamicState s = embed_soliton(sol8.state, ec.q);
        const DynamicState s0 = s;
        const double e0 = conserved_energy(s, p);
        const double c0 = conserved_charge(s);
        const double dt = 0.5 * ec.cfl_safety * s.psi_re.grid->h; // CFL/2
        const long long steps = (long long)std::ceil(ec.t_final / dt);
        double vmax = 0.0;
        for (long long k = 1; k <= steps; ++k) {
            step(s, ec, p);
            if (k % 500 == 0 || k == steps)
                vmax = std::max(vmax, liapunov_v(s, e0, std::abs(c0), p));
        }
        const double edrift = std::abs(conserved_energy(s, p) - e0) / e0;
        const double cdrift = std::abs(conserved_charge(s) - c0) / std::abs(c0);

        // momentum reversal and integration back to t = 0
        for (int i = 0; i <= s.psi_re.n(); ++i) {
            s.psi_im[i] = -s.psi_im[i];
            s.pi_re[i] = -s.pi_re[i];
        }
        for (long long k = 0; k < steps; ++k) step(s, ec, p);
        double num = 0.0, den = 0.0;
        for (int i = 0; i <= s.psi_re.n(); ++i) {
            num += std::pow(s.psi_re[i] - s0.psi_re[i], 2) +
                   std::pow(s.psi_im[i] + s0.psi_im[i], 2);
            den += std::pow(s0.psi_re[i], 2) + std::pow(s0.psi_im[i], 2);
        }
        const double rev = std::sqrt(num / den);
        const bool ok = edrift < 1e-6 && cdrift < 1e-6 && vmax < 1e-10 * (1.0 + e0 * e0) &&
                        rev < 1e-8;
        report(8, "conservation to t = 50 at CFL/2, V drift, time reversal", ok,
               "E drift " + fmt17(edrift) + ", C drift " + fmt17(cdrift) + ", V max " +
                   fmt17(vmax) + ", reversal " + fmt17(rev));
    } catch (const std::exception& e) {
        report(8, "conservation and reversibility", false, e.what());
    }

    // ---- 9: stability probe ------------------------------------------------------
    try {
        if (!have_sol8) throw Error("no converged soliton available");
        EvolutionConfig ec;
        ec.q = 0.05;
        ec.r_max = 30.0;
        ec.n = 3000;
        ec.t_final = 50.0;
        ec.snapshot_stride = 500;
        const StabilityReport rep = stability_probe(sol8, 0.01, ec, p);
        const bool ok = rep.max_distance <= 5.0 * rep.initial_distance;
        report(9, "1% perturbation stays within 5x initial orbit distance to t = 50", ok,
               "initial " + fmt17(rep.initial_distance) + ", max " + fmt17(rep.max_distance));
    } catch (const std::exception& e) {
        report(9, "stability probe", false, e.what());
    }

    // ---- 10: dispersion contrast ----------------------------------------------
    try {
        if (!have_sol8) throw Error("no converged soliton available");
        EvolutionConfig gc;
        gc.q = 0.0;
        gc.r_max = 60.0; // radiation must not return from the boundary before t_final
        gc.n = 6000;
        gc.t_final = 50.0;
        gc.snapshot_stride = 2000;
        const auto gauss = dispersion_probe(0.01, gc, p);
        const double g_ratio = gauss.back().second / gauss.front().second;

        EvolutionConfig scq;
        scq.q = 0.05;
        scq.r_max = 30.0;
        scq.n = 3000;
        scq.t_final = 50.0;
        scq.snapshot_stride = 2000;
        const auto soliton = star_norm_series(embed_soliton(sol8.state, scq.q), scq, p);
        double smin = soliton.front().second;
        for (const auto& [t, v] : soliton) smin = std::min(smin, v);
        const double s_ratio = smin / soliton.front().second;

        report(10, "gaussian loses >= 50% of the star norm, soliton retains >= 50%",
               g_ratio < 0.5 && s_ratio >= 0.5,
               "gaussian ratio " + fmt17(g_ratio) + ", soliton min ratio " + fmt17(s_ratio));
    } catch (const std::exception& e) {
        report(10, "dispersion contrast", false, e.what());
    }

    // ---- 11: determinism ---------------------------------------------------------
    try {
        if (!have_sol3 || !have_sweep6) throw Error("criteria 3/6 runs unavailable");
        const SolitonSolution again = minimize_j_delta(production_config(2e-4, 0.0), p);
        bool ok = again.state.u.v == sol3.state.u.v && again.state.theta.v == sol3.state.theta.v &&
                  fmt17(again.omega) == fmt17(sol3.omega) &&
                  fmt17(again.energy) == fmt17(sol3.energy);
        const SweepResult sweep_again = family_sweep(deltas6, production_config(1e-4, 0.05), p);
        for (size_t i = 0; i < sweep6.rows.size(); ++i) {
            const auto &a = sweep6.rows[i], &b = sweep_again.rows[i];
            if (fmt17(a.lambda) != fmt17(b.lambda) || fmt17(a.energy) != fmt17(b.energy) ||
                fmt17(a.omega) != fmt17(b.omega) || a.iterations != b.iterations)
                ok = false;
        }
        report(11, "repeated runs of criteria 3 and 6 are byte-identical", ok, "bitwise compare");
    } catch (const std::exception& e) {
        report(11, "determinism", false, e.what());
    }

    std::printf("%s: %d failing criterion(s)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
