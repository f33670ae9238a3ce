#pragma once

#include "qball/solver.hpp"

#include <utility>
#include <vector>

namespace qball {

// Radial state for time evolution in the electrostatic gauge (A = 0).
// psi is the complex matter field; pi is the gauge-covariant momentum
// pi = (d_t + i q phi) psi, so the plain time derivative is pi - i q phi psi.
// Storing pi keeps the charge density -Im(conj(psi) pi) independent of phi,
// which the splitting below conserves to roundoff.
struct DynamicState {
    RadialField psi_re, psi_im;
    RadialField pi_re, pi_im;
    RadialField phi;
    double t = 0.0;
};

struct EvolutionConfig {
    double dt = 0.0;       // 0 selects cfl_safety * h / 2
    double t_final = 50.0;
    double q = 0.0;
    double r_max = 30.0;
    int n = 3000;
    int snapshot_stride = 200;
    double cfl_safety = 0.5; // dt must satisfy dt <= cfl_safety * h
};

// Standing-wave embedding of a static solution: psi = u, pi = -i theta,
// phi from the Gauss solve.
DynamicState embed_soliton(const ReducedState& s, double q);

// Gaussian pulse psi = amplitude * exp(-r^2), pi = 0 (zero charge data).
DynamicState gaussian_pulse(double amplitude, const GridPtr& grid, double q);

// One time step of the reversible splitting
//   G(dt/2) . [phi solve] . B(dt/2) A(dt) B(dt/2) . G(dt/2)
// where G rotates (psi, pi) by exp(-i q phi dt/2), B kicks pi by
// Delta psi - W'(|psi|) psi/|psi| (smooth W'(s)/s form), A drifts psi by pi,
// and phi is re-solved from Gauss's law for the current charge density.
// Exactly time-reversible under (psi, pi) -> (conj psi, -conj pi); conserves
// the charge integral to roundoff.  Throws NumericAbortError on non-finite
// values.
void step(DynamicState& s, const EvolutionConfig& cfg, const Potential& p);

// E = int [ 1/2 |pi|^2 + 1/2 |grad psi|^2 + W(|psi|) + 1/2 |grad phi|^2 ] dx.
double conserved_energy(const DynamicState& s, const Potential& p);

// C = int ( -Im(conj(psi) d_t psi) - q phi |psi|^2 ) dx = -int Im(conj(psi) pi) dx.
double conserved_charge(const DynamicState& s);

// V = (E - e_target)^2 + (|C| - c_target)^2.
double liapunov_v(const DynamicState& s, double e_target, double c_target, const Potential& p);

// Distance to the phase orbit of the standing wave (u, theta): minimum over
// chi of the energy-norm distance to (u e^{i chi}, -i theta e^{i chi}),
// via a 64-point scan refined by golden section.
double orbit_distance(const DynamicState& s, const ReducedState& sol);

struct StabilityReport {
    double initial_distance = 0.0;
    double max_distance = 0.0;
    double e_drift_rel = 0.0;
    double c_drift_rel = 0.0;
    double v_max = 0.0;
    std::vector<std::pair<double, double>> distance_series; // (t, distance)
};

// Evolves the soliton scaled by (1 + rel_perturbation) to t_final and tracks
// orbit distance and conservation drift at every snapshot stride.
StabilityReport stability_probe(const SolitonSolution& sol, double rel_perturbation,
                                const EvolutionConfig& cfg, const Potential& p);

// Evolves a gaussian pulse and samples ||psi(t)||_* at the snapshot stride.
std::vector<std::pair<double, double>> dispersion_probe(double amplitude,
                                                        const EvolutionConfig& cfg,
                                                        const Potential& p);

// ||psi(t)||_* samples for arbitrary initial data (used for soliton retention).
std::vector<std::pair<double, double>> star_norm_series(DynamicState s,
                                                        const EvolutionConfig& cfg,
                                                        const Potential& p);

} // namespace qball
