#pragma once

#include "qball/operators.hpp"
#include "qball/potential.hpp"

#include <utility>
#include <vector>

namespace qball {

// Additive decomposition of the static energy
//   E = 1/2 int (|grad u|^2 + m^2 u^2 + theta^2 + |grad phi|^2) dx + int N(u) dx.
struct EnergyBreakdown {
    double grad_u_term = 0.0;
    double mass_term = 0.0;
    double theta_term = 0.0;
    double efield_term = 0.0;
    double n_term = 0.0;

    double total() const { return grad_u_term + mass_term + theta_term + efield_term + n_term; }
};

// Relative threshold below which |C| counts as zero: |C| < eps * (1 + E).
inline constexpr double kZeroChargeEps = 1e-12;

EnergyBreakdown energy(const ReducedState& s, const Potential& p);

// C = int theta u dx.  May be negative.
double charge(const ReducedState& s);

// Lambda = E / |C|.  Throws ZeroChargeError when |C| < kZeroChargeEps (1 + E).
double hylenic_ratio(const ReducedState& s, const Potential& p);

// J_delta = Lambda + delta E.
double j_delta(const ReducedState& s, const Potential& p, double delta);

// Pointwise positive part of lambda0 |theta u| - rho_E, where rho_E is the
// energy density.  Its integral bounds lambda0 |C| - E from above.
RadialField binding_energy_density(const ReducedState& s, const Potential& p, double lambda0);

// Maximal radial intervals where beta > tol * max(beta).
std::vector<std::pair<double, double>> support_region(const RadialField& beta, double tol);

// max(||u||_{L^r}, ||u||_{L^q}).
double sharp_seminorm(const RadialField& u, double r_exp, double q_exp);

// ||u||_* = sup over centers x0 of int_{B_1(x0)} |u| dx.  For radial fields the
// sup is attained on a ray; centers are scanned along one axis and the angular
// integral is the exact spherical-cap fraction at each shell radius.
double star_norm(const RadialField& u);

} // namespace qball
