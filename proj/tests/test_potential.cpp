#include "qball/errors.hpp"
#include "qball/potential.hpp"

#include <doctest.h>

#include <cmath>

using namespace qball;

TEST_CASE("reference potential pointwise values") {
    const Potential p = Potential::reference();
    CHECK(eval_N(p, 0.0) == 0.0);
    CHECK(eval_N(p, 1.0) == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));
    CHECK(eval_W(p, 1.0) == doctest::Approx(0.5 - 1.0 / 12.0).epsilon(1e-15));
    CHECK(eval_W(p, 2.0 / 3.0) == doctest::Approx(14.0 / 81.0).epsilon(1e-14));
    CHECK(eval_W_prime(p, 0.0) == 0.0);
    // W'(s) = s - s^2 + s^3
    CHECK(eval_W_prime(p, 0.5) == doctest::Approx(0.5 - 0.25 + 0.125).epsilon(1e-15));
    CHECK(eval_W_second(p, 0.0) == doctest::Approx(1.0));
    CHECK(eval_W_prime_over_s(p, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("W'(s)/s is the smooth extension of W'/s") {
    const Potential p = Potential::reference();
    for (double s : {1e-8, 1e-4, 0.3, 1.7}) {
        CHECK(eval_W_prime_over_s(p, s) ==
              doctest::Approx(eval_W_prime(p, s) / s).epsilon(1e-12));
    }
}

TEST_CASE("derivative consistency (central differences)") {
    const Potential p = Potential::reference();
    const double h = 1e-6;
    for (double s : {0.2, 0.7, 1.5, 3.0}) {
        const double fd1 = (eval_W(p, s + h) - eval_W(p, s - h)) / (2 * h);
        CHECK(eval_W_prime(p, s) == doctest::Approx(fd1).epsilon(1e-7));
        const double fd2 = (eval_W_prime(p, s + h) - eval_W_prime(p, s - h)) / (2 * h);
        CHECK(eval_W_second(p, s) == doctest::Approx(fd2).epsilon(1e-7));
    }
}

TEST_CASE("negative amplitude is rejected") {
    const Potential p = Potential::reference();
    CHECK_THROWS_AS(eval_W(p, -0.1), Error);
    CHECK_THROWS_AS(eval_N(p, -1e-9), Error);
}

TEST_CASE("assumption report for the reference potential") {
    const Potential p = Potential::reference();
    const PotentialReport rep = check_assumptions(p, 10.0, 20000);
    CHECK(rep.positivity_ok);
    CHECK(rep.nondegeneracy_ok);
    CHECK(rep.hylomorphy_ok);
    CHECK(rep.growth_ok);
    CHECK(rep.growth_r == 3);
    CHECK(rep.growth_q == 4);
    CHECK(rep.alpha0 == doctest::Approx(7.0 / 9.0).epsilon(1e-12));
    CHECK(rep.s_star == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    // N attains its minimum -1/12 at s = 1
    CHECK(rep.witness_s0 == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(rep.witness_N == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("pure mass term is not hylomorphic") {
    Potential p;
    p.m = 1.0;
    p.coeffs = {};
    const PotentialReport rep = check_assumptions(p, 5.0, 2000);
    CHECK(rep.positivity_ok);
    CHECK_FALSE(rep.hylomorphy_ok);
    CHECK(rep.alpha0 == doctest::Approx(1.0));
}

TEST_CASE("sign-flipped cubic loses positivity") {
    Potential p;
    p.m = 1.0;
    p.coeffs = {{3, -2.0}}; // W -> -inf as s -> inf
    const PotentialReport rep = check_assumptions(p, 10.0, 5000);
    CHECK_FALSE(rep.positivity_ok);
    CHECK_FALSE(rep.violation.empty());
}

TEST_CASE("quadratic-degenerate mass is flagged") {
    Potential p;
    p.m = 0.0;
    p.coeffs = {{4, 0.25}};
    const PotentialReport rep = check_assumptions(p, 5.0, 2000);
    CHECK_FALSE(rep.nondegeneracy_ok);
}

TEST_CASE("growth window rejects exponents outside (2, 6)") {
    Potential p;
    p.m = 1.0;
    p.coeffs = {{6, 0.1}};
    const PotentialReport rep = check_assumptions(p, 5.0, 2000);
    CHECK_FALSE(rep.growth_ok);
}

TEST_CASE("scaled potential keeps alpha0 < m^2 invariant under mass rescale") {
    // W_k(s) = k^2 W(s) has ratio min k^2 * 7/9 against m^2 = k^2
    Potential p;
    p.m = 2.0;
    p.coeffs = {{3, -4.0 / 3.0}, {4, 1.0}};
    const PotentialReport rep = check_assumptions(p, 10.0, 20000);
    CHECK(rep.hylomorphy_ok);
    CHECK(rep.alpha0 == doctest::Approx(4.0 * 7.0 / 9.0).epsilon(1e-10));
    CHECK(rep.s_star == doctest::Approx(2.0 / 3.0).epsilon(1e-7));
}
