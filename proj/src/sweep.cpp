#include "qball/sweep.hpp"

#include "qball/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qball {

SweepResult family_sweep(const std::vector<double>& deltas, const SolverConfig& cfg,
                         const Potential& p) {
    if (deltas.empty()) throw Error("family_sweep: empty delta list");
    for (size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] > deltas[i - 1])) throw Error("family_sweep: deltas must be ascending");

    SweepResult out;
    SolverConfig run = cfg;
    std::vector<double> warm_u, warm_theta;
    for (double d : deltas) {
        SweepRow row;
        row.delta = d;
        run.delta = d;
        run.init_u = warm_u;
        run.init_theta = warm_theta;
        try {
            const SolitonSolution sol = minimize_j_delta(run, p);
            row.omega = sol.omega;
            row.energy = sol.energy;
            row.charge_abs = std::abs(sol.charge);
            row.lambda = sol.lambda_ratio;
            row.j_value = sol.j_value;
            row.residual = std::max({sol.el_residual, sol.gauss_residual, sol.multiplier_residual});
            row.iterations = sol.iterations;
            row.converged = true;
            warm_u = sol.state.u.v;
            warm_theta = sol.state.theta.v;
        } catch (const Error& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }

    // strict monotonicity over converged rows, with a small relative slack
    auto& v = out.verdict;
    v.lambda_increasing = v.charge_decreasing = v.energy_decreasing = v.j_increasing = true;
    const SweepRow* prev = nullptr;
    for (const auto& row : out.rows) {
        if (!row.converged) continue;
        ++v.rows_used;
        if (prev) {
            const double eps = 1e-9;
            if (!(row.lambda > prev->lambda - eps * std::abs(prev->lambda)))
                v.lambda_increasing = false;
            if (!(row.charge_abs < prev->charge_abs + eps * prev->charge_abs))
                v.charge_decreasing = false;
            if (!(row.energy < prev->energy + eps * std::abs(prev->energy)))
                v.energy_decreasing = false;
            if (!(row.j_value > prev->j_value - eps * std::abs(prev->j_value)))
                v.j_increasing = false;
        }
        prev = &row;
    }
    if (v.rows_used < 2)
        v.lambda_increasing = v.charge_decreasing = v.energy_decreasing = v.j_increasing = false;
    return out;
}

RadialField build_test_profile(double R, double s0, const GridPtr& grid) {
    if (R <= 0.0 || R + 1.0 > grid->r_max)
        throw Error("build_test_profile: need 0 < R and R + 1 <= r_max");
    RadialField u(grid);
    for (int i = 0; i <= grid->n; ++i) {
        const double r = grid->r[i];
        if (r <= R)
            u[i] = s0;
        else if (r < R + 1.0)
            u[i] = s0 * (R + 1.0 - r);
        else
            u[i] = 0.0;
    }
    u[grid->n] = 0.0;
    return u;
}

HylomorphyCertificate certify_hylomorphy(const Potential& p, double q, const GridPtr& grid,
                                         int threads) {
    const PotentialReport rep = check_assumptions(p, 10.0 / p.m, 20000);
    if (!rep.hylomorphy_ok)
        throw CertificateFailedError("potential fails the hylomorphy inequality: alpha0 = " +
                                     std::to_string(rep.alpha0));
    const double s0 = rep.s_star;
    const double alpha = std::sqrt(2.0 * eval_W(p, s0) / (s0 * s0));

    std::vector<double> radii;
    for (double k : {2.0, 4.0, 8.0, 16.0, 32.0}) {
        const double R = k / p.m;
        if (R + 1.0 <= grid->r_max) radii.push_back(R);
    }
    if (radii.empty()) throw Error("certify_hylomorphy: grid too small for the radius ladder");

    std::vector<LadderPoint> ladder(radii.size());
    auto eval_point = [&](size_t idx) {
        ReducedState s;
        s.u = build_test_profile(radii[idx], s0, grid);
        s.theta = RadialField(grid);
        for (int i = 0; i <= grid->n; ++i) s.theta[i] = alpha * s.u[i];
        s = project_gauss(s, q);
        LadderPoint pt;
        pt.R = radii[idx];
        pt.energy = energy(s, p).total();
        pt.charge_abs = std::abs(charge(s));
        pt.lambda = pt.energy / pt.charge_abs;
        pt.margin = p.m - pt.lambda;
        pt.delta_inf_lower = pt.margin > 0.0 ? pt.margin / pt.energy : 0.0;
        ladder[idx] = pt;
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        const int nt = std::min<int>(threads, (int)radii.size());
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (size_t i = next++; i < radii.size(); i = next++) eval_point(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < radii.size(); ++i) eval_point(i);
    }

    const LadderPoint* best = nullptr;
    for (const auto& pt : ladder)
        if (pt.margin > 0.0 && (!best || pt.delta_inf_lower > best->delta_inf_lower)) best = &pt;
    if (!best)
        throw CertificateFailedError(
            "no radius on the ladder achieves Lambda < m at q = " + std::to_string(q) +
            " (smallest Lambda = " +
            std::to_string(std::min_element(ladder.begin(), ladder.end(),
                                            [](const LadderPoint& a, const LadderPoint& b) {
                                                return a.lambda < b.lambda;
                                            })
                               ->lambda) +
            ")");

    HylomorphyCertificate cert;
    cert.R = best->R;
    cert.q = q;
    cert.alpha = alpha;
    cert.s0 = s0;
    cert.lambda_measured = best->lambda;
    cert.margin = best->margin;
    cert.delta_inf_lower = best->delta_inf_lower;
    cert.ladder = std::move(ladder);
    return cert;
}

} // namespace qball
