#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qball {

// Nonlinear potential W(s) = (1/2) m^2 s^2 + N(s) with polynomial
// N(s) = sum_k a_k s^k, every exponent k > 2, evaluated for s >= 0
// (the matter amplitude is a modulus).
struct Potential {
    double m = 1.0;
    std::vector<std::pair<int, double>> coeffs; // (exponent, coefficient)

    // m = 1, N(s) = -s^3/3 + s^4/4.  Used by the test suite throughout.
    static Potential reference();
};

// Structural checks on W over a finite scan domain.
struct PotentialReport {
    bool positivity_ok = false;    // W(s) >= 0 at all scan points and for s -> inf
    bool nondegeneracy_ok = false; // W(0) = W'(0) = 0, W''(0) = m^2 > 0
    bool hylomorphy_ok = false;    // alpha0 < m^2, equivalently N < 0 somewhere
    double witness_s0 = 0.0;       // minimizer of N over the scan (N(s0) < 0 when hylomorphic)
    double witness_N = 0.0;        // N(witness_s0)
    int growth_r = 0;              // smallest exponent of N (0 when N empty)
    int growth_q = 0;              // largest exponent of N
    bool growth_ok = false;        // all exponents strictly between 2 and 6
    double alpha0 = 0.0;           // inf_{s>0} W(s) / (s^2/2)
    double s_star = 0.0;           // argmin of that ratio
    std::string violation;         // first failed check, empty when all pass
};

double eval_W(const Potential& p, double s);
double eval_W_prime(const Potential& p, double s);
double eval_W_second(const Potential& p, double s);

// W'(s)/s extended continuously to s = 0 (limit m^2).  This is the smooth
// factor multiplying the field wherever W'(psi) psi/|psi| appears.
double eval_W_prime_over_s(const Potential& p, double s);

// N(s) alone (the non-quadratic part).
double eval_N(const Potential& p, double s);

// Dense scan over (0, scan_max] followed by golden-section refinement of the
// ratio minimum to relative tolerance 1e-12.  Requires n_scan >= 1000.
PotentialReport check_assumptions(const Potential& p, double scan_max, int n_scan);

} // namespace qball
