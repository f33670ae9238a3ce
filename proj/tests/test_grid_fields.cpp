#include "qball/errors.hpp"
#include "qball/operators.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qball;

namespace {
const double kPi = std::numbers::pi;

RadialField sample(const GridPtr& g, double (*f)(double)) {
    RadialField out(g);
    for (int i = 0; i <= g->n; ++i) out[i] = f(g->r[i]);
    return out;
}
} // namespace

TEST_CASE("grid construction invariants") {
    const GridPtr g = make_grid(20.0, 400);
    CHECK(g->h == doctest::Approx(0.05));
    CHECK(g->r.front() == 0.0);
    CHECK(g->r.back() == doctest::Approx(20.0));
    CHECK(g->w[0] == doctest::Approx(kPi * 0.05 * 0.05 * 0.05 / 6.0));
    CHECK(g->w[400] == doctest::Approx(2.0 * kPi * 400.0 * 0.05));
    CHECK_THROWS_AS(make_grid(-1.0, 100), Error);
    CHECK_THROWS_AS(make_grid(10.0, 1), Error);
}

TEST_CASE("quadrature integrates a gaussian to the analytic volume integral") {
    const GridPtr g = make_grid(25.0, 2500);
    const RadialField f = sample(g, +[](double r) { return std::exp(-r * r); });
    // int exp(-r^2) dx = pi^{3/2}
    CHECK(integrate(f) == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-6));
}

TEST_CASE("laplacian matches the analytic value for a gaussian") {
    const GridPtr g = make_grid(15.0, 3000);
    const RadialField f = sample(g, +[](double r) { return std::exp(-r * r); });
    const RadialField lap = laplacian_radial(f, Bc::dirichlet);
    // Delta e^{-r^2} = (4 r^2 - 6) e^{-r^2}
    // pointwise accuracy is O(h^2) away from the axis (the conservative form
    // trades pointwise order near r ~ h for exact self-adjointness)
    for (int i : {0, 200, 1000, 2000}) {
        const double r = g->r[i];
        const double exact = (4.0 * r * r - 6.0) * std::exp(-r * r);
        CHECK(lap[i] == doctest::Approx(exact).epsilon(5e-4));
    }
}

TEST_CASE("laplacian is self-adjoint in the volume inner product") {
    const GridPtr g = make_grid(12.0, 600);
    RadialField f(g), h(g);
    for (int i = 0; i < g->n; ++i) {
        const double r = g->r[i];
        f[i] = std::exp(-r * r / 4.0) * (1.0 + 0.3 * r);
        h[i] = std::cos(r) * std::exp(-r / 2.0);
    }
    f[g->n] = h[g->n] = 0.0;
    const double a = dot_w(laplacian_radial(f, Bc::dirichlet), h);
    const double b = dot_w(f, laplacian_radial(h, Bc::dirichlet));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("poisson solve reproduces the uniform-ball potential") {
    const GridPtr g = make_grid(20.0, 2000);
    // unit-density ball of radius 1: phi(r) = (3 - r^2)/6 inside, 1/(3r) outside
    RadialField src(g);
    for (int i = 0; i <= g->n; ++i) src[i] = g->r[i] <= 1.0 ? 1.0 : 0.0;
    const RadialField phi = poisson_solve(src, 1.0);
    // the sharp surface is smeared over one cell: O(h) bias on the totals
    CHECK(phi[0] == doctest::Approx(0.5).epsilon(2e-2));
    for (int i : {400, 1000, 1900}) {
        const double r = g->r[i];
        CHECK(phi[i] == doctest::Approx(1.0 / (3.0 * r)).epsilon(2e-2));
    }
}

TEST_CASE("poisson solve inverts the discrete laplacian exactly") {
    const GridPtr g = make_grid(10.0, 500);
    const RadialField src = sample(g, +[](double r) { return std::exp(-r * r) * (1.0 + r); });
    const RadialField phi = poisson_solve(src, 0.7);
    const RadialField lap = laplacian_radial(phi, Bc::robin_coulomb);
    for (int i = 0; i < g->n; ++i) CHECK(lap[i] + 0.7 * src[i] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("dual poisson oracles agree at second order") {
    auto sup_diff = [](int n) {
        const GridPtr g = make_grid(20.0, n);
        const RadialField src = sample(g, +[](double r) { return std::exp(-r * r); });
        const RadialField a = poisson_solve(src, 1.0);
        const RadialField b = poisson_solve_fd(src, 1.0);
        double mx = 0.0;
        for (int i = 0; i <= g->n; ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
        return mx;
    };
    const double d1 = sup_diff(250), d2 = sup_diff(500), d3 = sup_diff(1000);
    CHECK(std::log2(d1 / d2) > 1.9);
    CHECK(std::log2(d2 / d3) > 1.9);
}

TEST_CASE("helmholtz solve matches the screened analytic kernel") {
    // (Delta - 1) phi = -delta-like source: use phi = e^{-r}/r smeared;
    // instead verify the residual of the returned solution directly.
    const GridPtr g = make_grid(15.0, 1500);
    RadialField c(g), rhs(g);
    for (int i = 0; i <= g->n; ++i) {
        c[i] = 1.0 + 0.1 * g->r[i];
        rhs[i] = std::exp(-g->r[i]);
    }
    const RadialField phi = helmholtz_solve(c, rhs);
    const RadialField lap = laplacian_radial(phi, Bc::robin_coulomb);
    for (int i = 0; i < g->n; ++i)
        CHECK(lap[i] - c[i] * phi[i] - rhs[i] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("shifted-laplacian preconditioner inverts its operator") {
    const GridPtr g = make_grid(10.0, 400);
    RadialField rhs = sample(g, +[](double r) { return std::sin(r) * std::exp(-r); });
    rhs[g->n] = 0.0;
    const RadialField x = invert_shifted_laplacian(rhs, 1.0);
    CHECK(x[g->n] == 0.0);
    const RadialField lap = laplacian_radial(x, Bc::dirichlet);
    for (int i = 0; i < g->n; ++i)
        CHECK(-lap[i] + x[i] == doctest::Approx(rhs[i]).epsilon(1e-9));
}

TEST_CASE("gauss projection leaves u and theta untouched") {
    const GridPtr g = make_grid(10.0, 300);
    ReducedState s;
    s.u = sample(g, +[](double r) { return std::exp(-r * r); });
    s.theta = sample(g, +[](double r) { return 0.9 * std::exp(-r * r); });
    const ReducedState out = project_gauss(s, 0.05);
    CHECK(out.u.v == s.u.v);
    CHECK(out.theta.v == s.theta.v);
    RadialField src(g);
    for (int i = 0; i <= g->n; ++i) src[i] = s.theta[i] * s.u[i];
    const RadialField lap = laplacian_radial(out.phi, Bc::robin_coulomb);
    for (int i = 0; i < g->n; ++i)
        CHECK(lap[i] + 0.05 * src[i] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("non-finite sources are rejected") {
    const GridPtr g = make_grid(5.0, 100);
    RadialField src(g);
    src[3] = std::nan("");
    CHECK_FALSE(all_finite(src));
    CHECK_THROWS_AS(poisson_solve(src, 1.0), Error);
}
