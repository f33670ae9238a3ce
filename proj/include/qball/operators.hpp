#pragma once

#include "qball/grid.hpp"

namespace qball {

// Outer boundary treatment for the radial Laplacian.
enum class Bc {
    dirichlet,     // matter fields: f(r_max) = 0, ghost value 0 beyond
    robin_coulomb, // potentials: d_r phi + phi/r = 0 at r_max (1/r tail)
};

// Conservative second-order stencil for Delta = d_rr + (2/r) d_r:
//   (Delta f)_i = [a_{i+1/2}(f_{i+1}-f_i) - a_{i-1/2}(f_i-f_{i-1})] / (r_i^2 h^2)
// with a_{i+1/2} = r_{i+1/2}^2, and the regularized origin row
//   (Delta f)_0 = 6 (f_1 - f_0)/h^2   (= 3 f''(0) by even extension).
RadialField laplacian_radial(const RadialField& f, Bc bc);

// Electrostatic potential of the charge density q*source, with source = theta*u:
// solves -Delta phi = q*source with phi -> 0 at infinity.  Enclosed-charge
// construction on half-nodes:
//   Q_{i+1/2} = sum_{j<=i} w_j q s_j,   E_{i+1/2} = Q_{i+1/2}/(4 pi r_{i+1/2}^2),
//   phi_n = Q_tot/(4 pi r_n),           phi_i = phi_{i+1} + h E_{i+1/2}.
// This inverts the conservative stencil exactly (interior residual at roundoff)
// and carries the analytic Coulomb tail Q_tot/(4 pi r) beyond the grid.
RadialField poisson_solve(const RadialField& source, double q_coupling);

// Independent cross-check: direct tridiagonal finite-difference solve of
// -Delta phi = q*source with the Robin closure at r_max.  Agrees with
// poisson_solve to O(h^2); used as the dual-method oracle.
RadialField poisson_solve_fd(const RadialField& source, double q_coupling);

// Screened radial solve (Delta - c) phi = g with c >= 0 pointwise and the
// Robin closure at r_max (the screening vanishes in the tail, leaving 1/r).
RadialField helmholtz_solve(const RadialField& c, const RadialField& g);

// Tridiagonal solve of (-Delta + shift) x = g with Dirichlet at r_max.
// Used as the descent preconditioner and for Newton-type linearizations.
RadialField invert_shifted_laplacian(const RadialField& g, double shift);

// Static gauge-invariant triple: matter amplitude u >= 0, charge-density
// variable theta, electrostatic potential phi (E = -grad phi).
struct ReducedState {
    RadialField u;
    RadialField theta;
    RadialField phi;
};

// Replaces phi by the Gauss solve for the pair (u, theta); u, theta unchanged.
// Idempotent: phi depends only on (u, theta).
ReducedState project_gauss(const ReducedState& s, double q);

} // namespace qball
