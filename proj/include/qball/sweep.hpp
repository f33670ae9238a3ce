#pragma once

#include "qball/solver.hpp"

#include <string>
#include <vector>

namespace qball {

struct SweepRow {
    double delta = 0.0;
    double omega = 0.0;
    double energy = 0.0;
    double charge_abs = 0.0;
    double lambda = 0.0;
    double j_value = 0.0;
    double residual = 0.0; // max of the three stationarity residuals
    int iterations = 0;
    bool converged = false;
    std::string error; // failure reason for excluded rows
};

struct SweepVerdict {
    bool lambda_increasing = false;
    bool charge_decreasing = false;
    bool energy_decreasing = false;
    bool j_increasing = false;
    int rows_used = 0;
    bool monotone() const {
        return lambda_increasing && charge_decreasing && energy_decreasing && j_increasing;
    }
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepVerdict verdict;
};

// Sequential solves over an ascending delta list, each warm-started from the
// previous converged profile.  Individual failures are recorded per row; the
// verdict checks strict monotonicity (Lambda and J_delta increasing, E and |C|
// decreasing) over converged rows with slack 1e-9 * scale.
SweepResult family_sweep(const std::vector<double>& deltas, const SolverConfig& cfg,
                         const Potential& p);

// Plateau profile: s0 for r < R, linear ramp to 0 on (R, R+1), 0 beyond.
RadialField build_test_profile(double R, double s0, const GridPtr& grid);

struct LadderPoint {
    double R = 0.0;
    double lambda = 0.0;
    double margin = 0.0; // m - lambda
    double energy = 0.0;
    double charge_abs = 0.0;
    double delta_inf_lower = 0.0; // margin / energy when margin > 0, else 0
};

struct HylomorphyCertificate {
    double R = 0.0; // radius of the strongest certified point
    double q = 0.0;
    double alpha = 0.0; // sqrt(2 W(s0) / s0^2)
    double s0 = 0.0;    // plateau amplitude (ratio minimizer s_star)
    double lambda_measured = 0.0;
    double margin = 0.0;          // m - lambda_measured, > 0 for a valid certificate
    double delta_inf_lower = 0.0; // certified lower bound on the admissible delta range
    std::vector<LadderPoint> ladder;
};

// Builds the plateau test state (u_R, theta = alpha u_R, phi = Gauss solve)
// over the ladder R in {2,4,8,16,32}/m clipped to the grid, measures Lambda
// through the observables, and returns the point with the largest certified
// delta range.  Ladder points may be evaluated concurrently (threads > 1).
// Throws CertificateFailedError when no scanned R has positive margin.
HylomorphyCertificate certify_hylomorphy(const Potential& p, double q, const GridPtr& grid,
                                         int threads = 1);

} // namespace qball
