#include "qball/operators.hpp"

#include "qball/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace qball {

RadialField laplacian_radial(const RadialField& f, Bc bc) {
    const auto& g = *f.grid;
    const int n = g.n;
    const double h2 = g.h * g.h;
    RadialField out(f.grid);
    out[0] = 6.0 * (f[1] - f[0]) / h2;
    for (int i = 1; i < n; ++i) {
        out[i] = (g.ah[i] * (f[i + 1] - f[i]) - g.ah[i - 1] * (f[i] - f[i - 1])) /
                 (g.r[i] * g.r[i] * h2);
    }
    // ghost value beyond r_max
    double ghost;
    if (bc == Bc::dirichlet) {
        ghost = 0.0;
    } else {
        // centered discretization of d_r f + f/r = 0 at r_n
        ghost = f[n - 1] - 2.0 * g.h * f[n] / g.r[n];
    }
    const double an = (g.r[n] + 0.5 * g.h) * (g.r[n] + 0.5 * g.h);
    out[n] = (an * (ghost - f[n]) - g.ah[n - 1] * (f[n] - f[n - 1])) / (g.r[n] * g.r[n] * h2);
    return out;
}

RadialField poisson_solve(const RadialField& source, double q_coupling) {
    const auto& g = *source.grid;
    const int n = g.n;
    if (!all_finite(source)) throw Error("poisson_solve: source contains non-finite values");
    const double pi = std::numbers::pi;

    // running enclosed charge at half nodes
    std::vector<double> Eh(n);
    double Q = 0.0;
    for (int i = 0; i < n; ++i) {
        Q += g.w[i] * q_coupling * source[i];
        Eh[i] = Q / (4.0 * pi * g.ah[i]);
    }
    const double Qtot = Q + g.w[n] * q_coupling * source[n];

    RadialField phi(source.grid);
    phi[n] = Qtot / (4.0 * pi * g.r[n]);
    for (int i = n - 1; i >= 0; --i) phi[i] = phi[i + 1] + g.h * Eh[i];
    return phi;
}

namespace {

// Thomas algorithm; diagonals a (sub), b (main), c (super), rhs d; in-place safe.
std::vector<double> thomas(const std::vector<double>& a, std::vector<double> b,
                           const std::vector<double>& c, std::vector<double> d) {
    const size_t n = d.size();
    for (size_t i = 1; i < n; ++i) {
        const double m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

// Assembles rows of (-Delta + screen) x = rhs over all n+1 nodes, with the
// Robin 1/r closure at r_max (screen may be zero).
RadialField solve_screened(const RadialField& screen, const RadialField& rhs) {
    const auto& g = *rhs.grid;
    const int n = g.n;
    const double h2 = g.h * g.h;
    std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0), c(n + 1, 0.0), d(n + 1, 0.0);
    b[0] = 6.0 / h2 + screen[0];
    c[0] = -6.0 / h2;
    d[0] = rhs[0];
    for (int i = 1; i < n; ++i) {
        const double s = g.r[i] * g.r[i] * h2;
        a[i] = -g.ah[i - 1] / s;
        b[i] = (g.ah[i] + g.ah[i - 1]) / s + screen[i];
        c[i] = -g.ah[i] / s;
        d[i] = rhs[i];
    }
    // last row with the ghost phi_{n+1} = phi_{n-1} - 2h phi_n / r_n eliminated
    const double an = (g.r[n] + 0.5 * g.h) * (g.r[n] + 0.5 * g.h);
    const double s = g.r[n] * g.r[n] * h2;
    a[n] = -(an + g.ah[n - 1]) / s;
    b[n] = (an + g.ah[n - 1]) / s + an * 2.0 * g.h / (g.r[n] * s) + screen[n];
    c[n] = 0.0;
    d[n] = rhs[n];
    return RadialField(rhs.grid, thomas(a, std::move(b), c, std::move(d)));
}

} // namespace

RadialField poisson_solve_fd(const RadialField& source, double q_coupling) {
    if (!all_finite(source)) throw Error("poisson_solve_fd: source contains non-finite values");
    RadialField zero(source.grid);
    RadialField rhs(source.grid);
    for (int i = 0; i <= source.n(); ++i) rhs[i] = q_coupling * source[i];
    return solve_screened(zero, rhs);
}

RadialField helmholtz_solve(const RadialField& c, const RadialField& g) {
    // (Delta - c) phi = g  <=>  (-Delta + c) phi = -g
    RadialField rhs(g.grid);
    for (int i = 0; i <= g.n(); ++i) rhs[i] = -g[i];
    return solve_screened(c, rhs);
}

RadialField invert_shifted_laplacian(const RadialField& g, double shift) {
    const auto& gr = *g.grid;
    const int n = gr.n;
    const double h2 = gr.h * gr.h;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    b[0] = 6.0 / h2 + shift;
    c[0] = -6.0 / h2;
    d[0] = g[0];
    for (int i = 1; i < n; ++i) {
        const double s = gr.r[i] * gr.r[i] * h2;
        a[i] = -gr.ah[i - 1] / s;
        b[i] = (gr.ah[i] + gr.ah[i - 1]) / s + shift;
        c[i] = -gr.ah[i] / s;
        d[i] = g[i];
    }
    auto x = thomas(a, std::move(b), c, std::move(d));
    x.push_back(0.0); // Dirichlet node
    return RadialField(g.grid, std::move(x));
}

ReducedState project_gauss(const ReducedState& s, double q) {
    RadialField src(s.u.grid);
    for (int i = 0; i <= s.u.n(); ++i) src[i] = s.theta[i] * s.u[i];
    ReducedState out;
    out.u = s.u;
    out.theta = s.theta;
    out.phi = poisson_solve(src, q);
    return out;
}

} // namespace qball
