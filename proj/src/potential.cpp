#include "qball/potential.hpp"

#include "qball/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qball {

Potential Potential::reference() {
    Potential p;
    p.m = 1.0;
    p.coeffs = {{3, -1.0 / 3.0}, {4, 0.25}};
    return p;
}

static void check_s(double s) {
    if (s < 0.0) throw Error("potential evaluated at negative amplitude s = " + std::to_string(s));
}

double eval_N(const Potential& p, double s) {
    check_s(s);
    double acc = 0.0;
    for (const auto& [k, a] : p.coeffs) acc += a * std::pow(s, k);
    return acc;
}

double eval_W(const Potential& p, double s) {
    check_s(s);
    return 0.5 * p.m * p.m * s * s + eval_N(p, s);
}

double eval_W_prime(const Potential& p, double s) {
    check_s(s);
    double acc = p.m * p.m * s;
    for (const auto& [k, a] : p.coeffs) acc += k * a * std::pow(s, k - 1);
    return acc;
}

double eval_W_second(const Potential& p, double s) {
    check_s(s);
    double acc = p.m * p.m;
    for (const auto& [k, a] : p.coeffs) acc += k * (k - 1) * a * std::pow(s, k - 2);
    return acc;
}

double eval_W_prime_over_s(const Potential& p, double s) {
    check_s(s);
    double acc = p.m * p.m;
    // every exponent is > 2, so each term is a positive power of s: smooth at 0
    for (const auto& [k, a] : p.coeffs) acc += k * a * std::pow(s, k - 2);
    return acc;
}

namespace {

// golden-section minimization of f on [a, b] to relative width tol
template <class F>
double golden_min(F f, double a, double b, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * (std::abs(a) + std::abs(b) + 1e-300)) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

PotentialReport check_assumptions(const Potential& p, double scan_max, int n_scan) {
    if (scan_max <= 0.0) throw Error("check_assumptions: scan_max must be positive");
    if (n_scan < 1000) throw Error("check_assumptions: n_scan must be >= 1000");

    PotentialReport rep;
    const double m2 = p.m * p.m;
    rep.nondegeneracy_ok = m2 > 0.0;
    if (!rep.nondegeneracy_ok) rep.violation = "W''(0) = m^2 is not positive";

    // growth exponents of N
    if (!p.coeffs.empty()) {
        int lo = p.coeffs.front().first, hi = lo;
        for (const auto& [k, a] : p.coeffs) {
            (void)a;
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        rep.growth_r = lo;
        rep.growth_q = hi;
        rep.growth_ok = lo > 2 && hi < 6;
        if (!rep.growth_ok && rep.violation.empty())
            rep.violation = "growth exponents (" + std::to_string(lo) + ", " + std::to_string(hi) +
                            ") outside the open interval (2, 6)";
    } else {
        rep.growth_ok = true; // vacuous
    }

    const double ds = scan_max / n_scan;
    auto ratio = [&](double s) { return eval_W(p, s) / (0.5 * s * s); };

    // positivity scan + ratio minimum + N minimum in a single pass
    rep.positivity_ok = true;
    double best_ratio = m2; // s -> 0 limit
    double best_s = 0.0;
    double best_N = 0.0, best_N_s = 0.0;
    for (int i = 1; i <= n_scan; ++i) {
        const double s = i * ds;
        const double Ws = eval_W(p, s);
        if (Ws < 0.0 && rep.positivity_ok) {
            rep.positivity_ok = false;
            if (rep.violation.empty())
                rep.violation = "W(" + std::to_string(s) + ") = " + std::to_string(Ws) + " < 0";
        }
        const double rat = Ws / (0.5 * s * s);
        if (rat < best_ratio) { best_ratio = rat; best_s = s; }
        const double Ns = Ws - 0.5 * m2 * s * s;
        if (Ns < best_N) { best_N = Ns; best_N_s = s; }
    }
    // leading behaviour for s -> inf: highest-exponent coefficient decides
    if (!p.coeffs.empty()) {
        double lead = 0.0;
        int kmax = 0;
        for (const auto& [k, a] : p.coeffs)
            if (k > kmax) { kmax = k; lead = a; }
            else if (k == kmax) lead += a;
        if (lead < 0.0) {
            rep.positivity_ok = false;
            if (rep.violation.empty()) rep.violation = "leading coefficient of N is negative (W -> -inf)";
        }
    }

    if (best_s > 0.0) {
        const double a = std::max(best_s - ds, ds * 1e-6);
        const double b = std::min(best_s + ds, scan_max);
        rep.s_star = golden_min(ratio, a, b, 1e-14);
        rep.alpha0 = ratio(rep.s_star);
    } else {
        rep.s_star = 0.0;
        rep.alpha0 = m2;
    }

    rep.hylomorphy_ok = rep.alpha0 < m2;
    if (rep.hylomorphy_ok) {
        auto Nf = [&](double s) { return eval_N(p, s); };
        const double a = std::max(best_N_s - ds, ds * 1e-6);
        const double b = std::min(best_N_s + ds, scan_max);
        rep.witness_s0 = golden_min(Nf, a, b, 1e-14);
        rep.witness_N = eval_N(p, rep.witness_s0);
    }
    return rep;
}

} // namespace qball
