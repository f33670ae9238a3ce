#include "qball/runner.hpp"

#include "qball/dynamics.hpp"
#include "qball/errors.hpp"
#include "qball/io.hpp"
#include "qball/sweep.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

namespace qball {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_manifest(const Config& cfg, const std::string& out_dir, const std::string& command) {
    std::filesystem::create_directories(out_dir);
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    JsonWriter j;
    j.begin_object()
        .field("command", command)
        .field("version", std::string("1.0.0"))
        .field("config_hash", fnv1a64_hex(cfg.raw_text()))
        .field("timestamp_unix",
               (long long)std::chrono::duration_cast<std::chrono::seconds>(now).count());
    j.begin_object("grid")
        .field("r_max", cfg.get_num("grid.r_max", 30.0))
        .field("n", cfg.get_int("grid.n", 3000))
        .end_object();
    j.end_object();
    write_text_file(join(out_dir, "manifest.json"), j.str() + "\n");
}

SolverConfig solver_config(const Config& cfg) {
    SolverConfig sc;
    sc.q = cfg.get_num("coupling.q", 0.0);
    sc.r_max = cfg.get_num("grid.r_max", sc.r_max);
    sc.n = cfg.get_int("grid.n", sc.n);
    if (cfg.has("solver.delta")) sc.delta = cfg.req_num("solver.delta");
    if (cfg.has("solver.charge_target")) sc.charge_target = cfg.req_num("solver.charge_target");
    sc.max_iters = cfg.get_int("solver.max_iters", sc.max_iters);
    sc.step_init = cfg.get_num("solver.step_init", sc.step_init);
    sc.grad_tol = cfg.get_num("solver.grad_tol", sc.grad_tol);
    sc.collapse_tol = cfg.get_num("solver.collapse_tol", sc.collapse_tol);
    sc.u_floor = cfg.get_num("solver.u_floor", sc.u_floor);
    sc.init_amplitude = cfg.get_num("solver.init_amplitude", sc.init_amplitude);
    sc.init_width = cfg.get_num("solver.init_width", sc.init_width);
    if (cfg.has("solver.init_profile")) {
        const auto cols = read_csv_columns(cfg.req_str("solver.init_profile"), 4);
        if ((int)cols[0].size() != sc.n + 1)
            throw ConfigError("solver.init_profile: row count does not match grid.n + 1");
        sc.init_u = cols[1];
        sc.init_theta = cols[2];
    }
    return sc;
}

EvolutionConfig evolution_config(const Config& cfg) {
    EvolutionConfig ec;
    ec.q = cfg.get_num("coupling.q", 0.0);
    ec.r_max = cfg.get_num("grid.r_max", ec.r_max);
    ec.n = cfg.get_int("grid.n", ec.n);
    ec.dt = cfg.get_num("dynamics.dt", ec.dt);
    ec.t_final = cfg.get_num("dynamics.t_final", ec.t_final);
    ec.snapshot_stride = cfg.get_int("dynamics.snapshot_stride", ec.snapshot_stride);
    ec.cfl_safety = cfg.get_num("dynamics.cfl_safety", ec.cfl_safety);
    if (ec.snapshot_stride < 1) throw ConfigError("dynamics.snapshot_stride must be >= 1");
    return ec;
}

void write_solution(const SolitonSolution& sol, const Potential& p, const std::string& out_dir) {
    const auto& g = *sol.state.u.grid;
    std::vector<std::vector<double>> rows;
    rows.reserve(g.n + 1);
    for (int i = 0; i <= g.n; ++i)
        rows.push_back({g.r[i], sol.state.u[i], sol.state.theta[i], sol.state.phi[i]});
    write_csv(join(out_dir, "solution.csv"), "r,u,theta,phi", rows);

    const EnergyBreakdown b = energy(sol.state, p);
    JsonWriter j;
    j.begin_object()
        .field("omega", sol.omega)
        .field("energy", sol.energy)
        .field("charge", sol.charge)
        .field("lambda", sol.lambda_ratio)
        .field("j_value", sol.j_value)
        .field("el_residual", sol.el_residual)
        .field("gauss_residual", sol.gauss_residual)
        .field("multiplier_residual", sol.multiplier_residual)
        .field("iterations", sol.iterations);
    j.begin_object("breakdown")
        .field("grad_u_term", b.grad_u_term)
        .field("mass_term", b.mass_term)
        .field("theta_term", b.theta_term)
        .field("efield_term", b.efield_term)
        .field("n_term", b.n_term)
        .end_object();
    j.end_object();
    write_text_file(join(out_dir, "solution.json"), j.str() + "\n");
}

} // namespace

int run_check_potential(const Config& cfg, const std::string& out_dir) {
    write_manifest(cfg, out_dir, "check-potential");
    const Potential p = cfg.potential();
    const PotentialReport rep =
        check_assumptions(p, cfg.get_num("potential.scan_max", 10.0 / p.m),
                          cfg.get_int("potential.n_scan", 20000));
    JsonWriter j;
    j.begin_object()
        .field("positivity_ok", rep.positivity_ok)
        .field("nondegeneracy_ok", rep.nondegeneracy_ok)
        .field("hylomorphy_ok", rep.hylomorphy_ok)
        .field("growth_ok", rep.growth_ok)
        .field("alpha0", rep.alpha0)
        .field("s_star", rep.s_star)
        .field("witness_s0", rep.witness_s0)
        .field("witness_N", rep.witness_N)
        .field("growth_r", rep.growth_r)
        .field("growth_q", rep.growth_q)
        .field("violation", rep.violation)
        .end_object();
    write_text_file(join(out_dir, "potential_report.json"), j.str() + "\n");
    return rep.hylomorphy_ok ? kExitOk : kExitFailure;
}

int run_solve(const Config& cfg, const std::string& out_dir) {
    write_manifest(cfg, out_dir, "solve");
    if (cfg.has("solver.delta") == cfg.has("solver.charge_target"))
        throw ConfigError("exactly one of solver.delta / solver.charge_target must be set");
    const Potential p = cfg.potential();
    const SolverConfig sc = solver_config(cfg);
    const SolitonSolution sol = cfg.has("solver.delta")
                                    ? minimize_j_delta(sc, p)
                                    : minimize_e_fixed_c(sc.charge_target, sc, p);
    write_solution(sol, p, out_dir);
    return kExitOk;
}

int run_sweep(const Config& cfg, const std::string& out_dir) {
    write_manifest(cfg, out_dir, "sweep");
    const Potential p = cfg.potential();
    const SolverConfig sc = solver_config(cfg);
    const std::vector<double> deltas = cfg.get_num_list("sweep.deltas");
    if (deltas.empty()) throw ConfigError("sweep.deltas must be a nonempty ascending list");
    const SweepResult res = family_sweep(deltas, sc, p);

    std::vector<std::vector<double>> rows;
    for (const auto& r : res.rows)
        rows.push_back({r.delta, r.omega, r.energy, r.charge_abs, r.lambda, r.j_value, r.residual,
                        (double)r.iterations});
    write_csv(join(out_dir, "sweep.csv"),
              "delta,omega,energy,charge_abs,lambda,j_value,residual,iterations", rows);

    JsonWriter j;
    j.begin_object()
        .field("lambda_increasing", res.verdict.lambda_increasing)
        .field("charge_decreasing", res.verdict.charge_decreasing)
        .field("energy_decreasing", res.verdict.energy_decreasing)
        .field("j_increasing", res.verdict.j_increasing)
        .field("monotone", res.verdict.monotone())
        .field("rows_used", res.verdict.rows_used);
    j.begin_array("failures");
    // failures array carries strings, emitted as quoted elements
    for (const auto& r : res.rows)
        if (!r.converged) {
            j.begin_object().field("delta", r.delta).field("error", r.error).end_object();
        }
    j.end_array();
    j.end_object();
    write_text_file(join(out_dir, "verdict.json"), j.str() + "\n");
    if (res.verdict.rows_used == 0) throw NoConvergenceError("no sweep row converged");
    return kExitOk;
}

int run_certify(const Config& cfg, const std::string& out_dir, int threads) {
    write_manifest(cfg, out_dir, "certify");
    const Potential p = cfg.potential();
    const GridPtr grid = make_grid(cfg.get_num("grid.r_max", 40.0), cfg.get_int("grid.n", 4000));
    const double q = cfg.get_num("coupling.q", 0.0);
    const HylomorphyCertificate cert = certify_hylomorphy(p, q, grid, threads);

    JsonWriter j;
    j.begin_object()
        .field("R", cert.R)
        .field("q", cert.q)
        .field("alpha", cert.alpha)
        .field("s0", cert.s0)
        .field("lambda_measured", cert.lambda_measured)
        .field("margin", cert.margin)
        .field("delta_inf_lower", cert.delta_inf_lower);
    j.begin_array("ladder");
    for (const auto& pt : cert.ladder) {
        j.begin_object()
            .field("R", pt.R)
            .field("lambda", pt.lambda)
            .field("margin", pt.margin)
            .field("energy", pt.energy)
            .field("charge_abs", pt.charge_abs)
            .field("delta_inf_lower", pt.delta_inf_lower)
            .end_object();
    }
    j.end_array();
    j.end_object();
    write_text_file(join(out_dir, "certificate.json"), j.str() + "\n");
    return kExitOk;
}

namespace {

DynamicState initial_dynamic_state(const Config& cfg, const EvolutionConfig& ec) {
    const GridPtr grid = make_grid(ec.r_max, ec.n);
    if (cfg.has("dynamics.init_profile")) {
        const auto cols = read_csv_columns(cfg.req_str("dynamics.init_profile"), 4);
        if ((int)cols[0].size() != ec.n + 1)
            throw ConfigError("dynamics.init_profile: row count does not match grid.n + 1");
        ReducedState s;
        s.u = RadialField(grid, cols[1]);
        s.theta = RadialField(grid, cols[2]);
        return embed_soliton(project_gauss(s, ec.q), ec.q);
    }
    return gaussian_pulse(cfg.get_num("dynamics.amplitude", 0.01), grid, ec.q);
}

} // namespace

int run_evolve(const Config& cfg, const std::string& out_dir) {
    write_manifest(cfg, out_dir, "evolve");
    const Potential p = cfg.potential();
    const EvolutionConfig ec = evolution_config(cfg);
    DynamicState s = initial_dynamic_state(cfg, ec);

    const double e0 = conserved_energy(s, p);
    const double c0 = conserved_charge(s);
    const double dt = ec.dt > 0.0 ? ec.dt : 0.5 * ec.cfl_safety * s.psi_re.grid->h;
    const long long steps = (long long)std::ceil(ec.t_final / dt - 1e-12);

    std::vector<std::vector<double>> snap;
    auto record = [&] {
        const auto& g = *s.psi_re.grid;
        for (int i = 0; i <= g.n; ++i)
            snap.push_back({s.t, g.r[i], s.psi_re[i], s.psi_im[i], s.phi[i]});
    };
    record();
    for (long long k = 1; k <= steps; ++k) {
        step(s, ec, p);
        if (k % ec.snapshot_stride == 0 || k == steps) record();
    }
    write_csv(join(out_dir, "snapshots.csv"), "t,r,re,im,phi", snap);

    const double e1 = conserved_energy(s, p);
    const double c1 = conserved_charge(s);
    JsonWriter j;
    j.begin_object()
        .field("t_final", s.t)
        .field("dt", dt)
        .field("steps", steps)
        .field("energy_initial", e0)
        .field("energy_final", e1)
        .field("energy_drift_rel", std::abs(e1 - e0) / (1.0 + std::abs(e0)))
        .field("charge_initial", c0)
        .field("charge_final", c1)
        .field("charge_drift_rel", std::abs(c1 - c0) / (1.0 + std::abs(c0)))
        .end_object();
    write_text_file(join(out_dir, "evolve_summary.json"), j.str() + "\n");
    return kExitOk;
}

int run_stability(const Config& cfg, const std::string& out_dir) {
    write_manifest(cfg, out_dir, "stability");
    if (cfg.has("solver.delta") == cfg.has("solver.charge_target"))
        throw ConfigError("exactly one of solver.delta / solver.charge_target must be set");
    const Potential p = cfg.potential();
    const SolverConfig sc = solver_config(cfg);
    const SolitonSolution sol = cfg.has("solver.delta")
                                    ? minimize_j_delta(sc, p)
                                    : minimize_e_fixed_c(sc.charge_target, sc, p);
    write_solution(sol, p, out_dir);

    const EvolutionConfig ec = evolution_config(cfg);
    if (ec.r_max != sc.r_max || ec.n != sc.n)
        throw ConfigError("stability: dynamics grid must match the solver grid");
    const double pert = cfg.get_num("dynamics.perturbation", 0.01);
    const StabilityReport rep = stability_probe(sol, pert, ec, p);

    JsonWriter j;
    j.begin_object()
        .field("perturbation", pert)
        .field("initial_distance", rep.initial_distance)
        .field("max_distance", rep.max_distance)
        .field("energy_drift_rel", rep.e_drift_rel)
        .field("charge_drift_rel", rep.c_drift_rel)
        .field("v_max", rep.v_max);
    j.begin_array("time");
    for (const auto& [t, d] : rep.distance_series) j.element(t);
    j.end_array();
    j.begin_array("distance");
    for (const auto& [t, d] : rep.distance_series) j.element(d);
    j.end_array();
    j.end_object();
    write_text_file(join(out_dir, "stability.json"), j.str() + "\n");
    return kExitOk;
}

int dispatch(const std::string& command, const Config& cfg, const std::string& out_dir,
             int threads) {
    try {
        if (command == "check-potential") return run_check_potential(cfg, out_dir);
        if (command == "solve") return run_solve(cfg, out_dir);
        if (command == "sweep") return run_sweep(cfg, out_dir);
        if (command == "certify") return run_certify(cfg, out_dir, threads);
        if (command == "evolve") return run_evolve(cfg, out_dir);
        if (command == "stability") return run_stability(cfg, out_dir);
        std::cerr << "unknown command: " << command << "\n";
        return kExitFailure;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CollapseError& e) {
        std::cerr << "collapse: " << e.what() << "\n";
        return kExitCollapse;
    } catch (const NoConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const CertificateFailedError& e) {
        std::cerr << "certificate failed: " << e.what() << "\n";
        return kExitCertificateFailed;
    } catch (const NumericAbortError& e) {
        std::cerr << "numeric abort: " << e.what() << "\n";
        return kExitNumericAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace qball
