#pragma once

#include "qball/observables.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qball {

struct SolverConfig {
    double delta = std::nan("");         // penalty weight (J-minimization runs)
    double charge_target = std::nan(""); // fixed-charge runs (minimize_e_fixed_c)
    double q = 0.0;                      // gauge coupling
    double r_max = 30.0;
    int n = 3000;
    int max_iters = 200000;
    double step_init = 0.5;
    double grad_tol = 1e-7;     // stopping: sup-norm of the scaled gradient,
                                // relative to the iterate amplitude
    double collapse_tol = 1e-6; // minimum ||u||_w before declaring collapse
    double u_floor = 1e-6;      // amplitude floor for the multiplier fit
    // Initial profile: gaussian amplitude * exp(-(r/width)^2), or explicit
    // samples (takes precedence when non-empty; must match the grid).
    double init_amplitude = 1.0;
    double init_width = 2.0;
    std::vector<double> init_u;
    std::vector<double> init_theta;
};

struct SolitonSolution {
    ReducedState state;
    double omega = 0.0;  // frequency multiplier
    double energy = 0.0;
    double charge = 0.0; // signed
    double lambda_ratio = 0.0;
    double j_value = 0.0;
    double el_residual = 0.0;         // sup |-Delta u + W'(u) - (omega - q phi)^2 u|
    double gauss_residual = 0.0;      // sup |Delta phi + q theta u|
    double multiplier_residual = 0.0; // sup |theta - (omega - q phi) u|
    int iterations = 0;
};

struct ElResidual {
    double stat1 = 0.0;
    double gauss = 0.0;
    double multiplier = 0.0;
    double omega = 0.0;
};

// Gradient-flow descent on (u, theta) for J_delta = E/|C| + delta E, with phi
// eliminated through the Gauss solve every step.  The u-direction uses the
// (-Delta + m^2)^{-1} preconditioned gradient (a metric choice; the flow is
// still plain descent with backtracking on J).  u >= 0 is enforced by taking
// the modulus after each step.  Deterministic: fixed iteration order, no RNG.
SolitonSolution minimize_j_delta(const SolverConfig& cfg, const Potential& p);

// Projected descent on E at fixed |C| = |c_target|: after each step theta is
// rescaled by c_target/C and phi re-projected.
SolitonSolution minimize_e_fixed_c(double c_target, const SolverConfig& cfg, const Potential& p);

// Residuals of the stationary system.  The multiplier omega is extracted by
// weighted least squares from theta = (omega - q phi) u over nodes with
// u > u_floor (DegenerateFitError when fewer than 10 such nodes), and the
// singular theta^2/u term is evaluated as (omega - q phi)^2 u.
ElResidual el_residual(const ReducedState& s, const Potential& p, double q, double u_floor = 1e-6);

// Independent oracle for the q = 0 reduction: solves the radial ODE
//   u'' + (2/r) u' = W'(u) - omega^2 u,  u'(0) = 0,  u(inf) = 0
// by bisection on u(0) (monotone-decay ground state), RK4 in r, with the
// analytic exponential tail clamped beyond the matching point.
// Requires omega^2 in (alpha0, m^2); throws NoGroundStateError otherwise.
RadialField shooting_oracle_q0(double omega, const Potential& p, const GridPtr& grid);

} // namespace qball
