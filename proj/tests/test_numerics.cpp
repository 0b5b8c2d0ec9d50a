#include "qcluster/numerics.hpp"

#include "qcluster/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcluster;

TEST_CASE("adaptive quadrature on smooth integrands") {
    auto q = numerics::integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    q = numerics::integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                     3.14159265358979323846, 1e-12);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature handles oscillatory stretches") {
    // int_0^{100 pi} sin^2(x)/(1+x^2) dx computed against a slowly
    // converging reference from a fine composite rule.
    const auto f = [](double x) {
        const double s = std::sin(x);
        return s * s / (1.0 + x * x);
    };
    const double hi = 100.0 * 3.14159265358979323846;
    auto q = numerics::integrate_adaptive(f, 0.0, hi, 1e-10, 0.0, 65536);
    REQUIRE(q.converged);

    double ref = 0.0;
    const int steps = 4'000'000;
    const double h = hi / steps;
    for (int i = 0; i < steps; ++i) {
        const double a = i * h, b = a + h, m = a + 0.5 * h;
        ref += (f(a) + 4.0 * f(m) + f(b)) * h / 6.0;
    }
    CHECK(q.value == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("bracketed solve finds roots to tolerance") {
    const double root = numerics::solve_bracketed([](double x) { return std::cos(x); }, 0.0,
                                                  3.0, 1e-14);
    CHECK(root == doctest::Approx(1.5707963267948966).epsilon(1e-13));

    CHECK_THROWS_AS(numerics::solve_bracketed([](double x) { return 1.0 + x * x; }, 0.0, 1.0),
                    NumericalError);
}

TEST_CASE("bracket expansion") {
    double hi = 1.0;
    const bool ok = numerics::expand_bracket_right(
        [](double x) { return x - 100.0; }, 0.0, hi, 1e6);
    CHECK(ok);
    CHECK(hi >= 100.0);

    hi = 1.0;
    CHECK_FALSE(numerics::expand_bracket_right([](double) { return -1.0; }, 0.0, hi, 1e3));
}

TEST_CASE("sinc small-argument series") {
    CHECK(numerics::sinc(0.0) == 1.0);
    CHECK(numerics::sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(numerics::sinc(0.5) == doctest::Approx(std::sin(0.5) / 0.5).epsilon(1e-15));
}

TEST_CASE("normal deviates are deterministic and well scaled") {
    numerics::NormalDeviate a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next() == b.next());
    }

    numerics::NormalDeviate rng(7);
    double sum = 0.0, sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next();
        sum += z;
        sum2 += z * z;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));

    numerics::NormalDeviate t(3);
    for (int i = 0; i < 10000; ++i) {
        CHECK(std::abs(t.next_truncated(2.0)) <= 2.0);
    }
}
