#include "doctest.h"

#include <cmath>
#include <vector>

#include "layerchain/errors.hpp"
#include "layerchain/specfun.hpp"

using namespace layerchain;
using namespace layerchain::specfun;

// Reference values frozen from an independent 40-digit computation
// (tests/support/reference_values.py regenerates the table).

namespace {

constexpr double kPi = 3.14159265358979323846;

// Richardson-extrapolated central difference, O(h^4).
template <typename F>
double deriv4(F f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

}  // namespace

TEST_SUITE_BEGIN("specfun");

TEST_CASE("ln_gamma matches frozen references and tracks the sign") {
    const LnGammaResult half = ln_gamma(0.5);
    CHECK(half.sign == 1);
    CHECK(half.log_abs == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));

    const LnGammaResult neg = ln_gamma(-0.5);
    CHECK(neg.sign == -1);
    CHECK(neg.log_abs == doctest::Approx(1.26551212348464539649).epsilon(1e-13));

    CHECK(ln_gamma(1.0).log_abs == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(ln_gamma(6.0).log_abs == doctest::Approx(std::log(120.0)).epsilon(1e-14));
}

TEST_CASE("ln_gamma satisfies the recurrence Gamma(x+1) = x Gamma(x)") {
    for (double x : {0.1, 0.37, 1.9, 4.2, 11.5, 37.25, -0.3, -1.7, -6.4}) {
        const LnGammaResult a = ln_gamma(x + 1.0);
        const LnGammaResult b = ln_gamma(x);
        const double lhs = a.log_abs;
        const double rhs = b.log_abs + std::log(std::fabs(x));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        const int expected_sign = x > 0.0 ? b.sign : -b.sign;
        CHECK(a.sign == expected_sign);
    }
}

TEST_CASE("ln_gamma satisfies the reflection identity") {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    for (double x : {0.25, 0.6, -0.35, -2.8, 3.3}) {
        const LnGammaResult a = ln_gamma(x);
        const LnGammaResult b = ln_gamma(1.0 - x);
        const double lhs = a.log_abs + b.log_abs;
        const double rhs = std::log(kPi / std::fabs(std::sin(kPi * x)));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        const double sign_rhs = std::sin(kPi * x) > 0.0 ? 1.0 : -1.0;
        CHECK(a.sign * b.sign == static_cast<int>(sign_rhs));
    }
}

TEST_CASE("ln_gamma throws at non-positive integers") {
    CHECK_THROWS_AS(ln_gamma(0.0), domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.0), domain_error);
}

TEST_CASE("reciprocal_gamma is zero at poles and consistent elsewhere") {
    CHECK(reciprocal_gamma(0.0) == 0.0);
    CHECK(reciprocal_gamma(-1.0) == 0.0);
    CHECK(reciprocal_gamma(-7.0) == 0.0);
    for (double x : {0.5, 1.0, 2.5, -0.5, -3.3, 9.1}) {
        const LnGammaResult g = ln_gamma(x);
        const double gamma = g.sign * std::exp(g.log_abs);
        CHECK(reciprocal_gamma(x) * gamma == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("digamma matches frozen references") {
    CHECK(digamma(1.0).value == doctest::Approx(-0.577215664901532860607).epsilon(1e-14));
    CHECK(digamma(-0.5).value == doctest::Approx(0.0364899739785765205590).epsilon(1e-12));
    CHECK(digamma(0.5).value ==
          doctest::Approx(-0.577215664901532860607 - 2.0 * std::log(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(digamma(-2.0), domain_error);
}

TEST_CASE("digamma agrees with the numerical derivative of ln_gamma") {
    for (double x : {0.3, 1.7, 5.5, 12.3, -0.25, -4.6}) {
        const double numeric =
            deriv4([](double t) { return ln_gamma(t).log_abs; }, x, 1e-3);
        CHECK(digamma(x).value == doctest::Approx(numeric).epsilon(1e-8));
    }
}

TEST_CASE("trigamma matches closed forms and the digamma derivative") {
    CHECK(trigamma(1.0).value == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
    CHECK(trigamma(0.5).value == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-13));
    // psi'(x) + psi'(1-x) = pi^2/sin^2(pi x) at x = -1/2 gives pi^2/2 + 4.
    CHECK(trigamma(-0.5).value == doctest::Approx(kPi * kPi / 2.0 + 4.0).epsilon(1e-12));
    for (double x : {0.4, 2.2, 7.7, -0.8}) {
        const double numeric = deriv4([](double t) { return digamma(t).value; }, x, 1e-3);
        CHECK(trigamma(x).value == doctest::Approx(numeric).epsilon(1e-7));
    }
}

TEST_CASE("assoc_laguerre closed forms and frozen value") {
    // L_1^a(z) = 1 + a - z
    CHECK(assoc_laguerre(1, 0.5, 2.0).value == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(assoc_laguerre(0, 1.3, 9.0).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(assoc_laguerre(5, 1.0, 3.7).value ==
          doctest::Approx(1.84286191666666666667).epsilon(1e-13));
}

TEST_CASE("assoc_laguerre satisfies the three-term recurrence") {
    // (n+1) L_{n+1} = (2n+1+a-z) L_n - (n+a) L_{n-1}
    for (double z : {0.3, 1.9, 6.5, 14.0}) {
        for (double a : {0.0, 0.5, 2.3}) {
            for (int n = 1; n <= 8; ++n) {
                const double lm = assoc_laguerre(n - 1, a, z).value;
                const double l0 = assoc_laguerre(n, a, z).value;
                const double lp = assoc_laguerre(n + 1, a, z).value;
                const double rhs = ((2.0 * n + 1.0 + a - z) * l0 - (n + a) * lm) / (n + 1.0);
                const double scale = std::max({std::fabs(lm), std::fabs(l0), std::fabs(lp), 1.0});
                CHECK(std::fabs(lp - rhs) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("kummer_m matches frozen references") {
    CHECK(kummer_m(0.7, 1.3, 0.0).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kummer_m(-0.3, 0.5, 0.8).value ==
          doctest::Approx(0.411274298234310314311).epsilon(1e-13));
    CHECK_THROWS_AS(kummer_m(0.3, -1.0, 1.0), domain_error);
}

TEST_CASE("tricomi_u matches frozen references on all branches") {
    // generic half-integer b
    CHECK(tricomi_u(-0.3, 0.5, 0.8).value ==
          doctest::Approx(0.987667656347680469456).epsilon(1e-12));
    // polynomial reduction at non-positive integer a
    CHECK(tricomi_u(-1.0, 1.0, 2.0).value == doctest::Approx(1.0).epsilon(1e-13));
    // logarithmic branch b = 1
    CHECK(tricomi_u(-0.3, 1.0, 5.0).value ==
          doctest::Approx(1.59270615630210728543).epsilon(1e-12));
    CHECK(tricomi_u(-1.7, 1.0, 0.35).value ==
          doctest::Approx(-0.296690587617730186659).epsilon(1e-12));
    // large-z asymptotic branch
    CHECK(tricomi_u(-2.2, 0.5, 30.0).value ==
          doctest::Approx(1558.49667257592937797).epsilon(1e-12));
}

TEST_CASE("tricomi_u reduces to Laguerre polynomials at negative integer a") {
    // U(-n, b, z) = (-1)^n n! L_n^{b-1}(z)
    double factorial = 1.0;
    for (int n = 1; n <= 6; ++n) {
        factorial *= n;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (double b : {0.5, 1.0, 1.75}) {
            for (double z : {0.4, 2.0, 8.0}) {
                const double direct = tricomi_u(-static_cast<double>(n), b, z).value;
                const double reduced = sign * factorial * assoc_laguerre(n, b - 1.0, z).value;
                const double scale = std::max(std::fabs(reduced), 1.0);
                CHECK(std::fabs(direct - reduced) <= 1e-11 * scale);
            }
        }
    }
}

TEST_CASE("kummer_m and tricomi_u satisfy the confluent differential equation") {
    // z f'' + (b - z) f' - a f = 0, derivatives taken numerically at O(h^4).
    struct Point { double a, b, z; };
    const std::vector<Point> points = {
        {-0.3, 0.5, 0.8}, {-1.45, 0.5, 2.3}, {-0.7, 1.0, 1.6}, {-2.6, 1.9, 4.0},
    };
    for (const Point& p : points) {
        for (int which = 0; which < 2; ++which) {
            auto f = [&](double z) {
                return which == 0 ? kummer_m(p.a, p.b, z).value : tricomi_u(p.a, p.b, z).value;
            };
            const double h = 1e-3;
            const double f0 = f(p.z);
            const double f1 = deriv4(f, p.z, h);
            const double f2 =
                (-(f(p.z + 2.0 * h) + f(p.z - 2.0 * h)) + 16.0 * (f(p.z + h) + f(p.z - h)) -
                 30.0 * f0) /
                (12.0 * h * h);
            const double residual = p.z * f2 + (p.b - p.z) * f1 - p.a * f0;
            const double scale = std::max({std::fabs(f0), std::fabs(f1), 1.0});
            CHECK(std::fabs(residual) <= 1e-7 * scale);
        }
    }
}

TEST_CASE("error estimates are finite and small at benign arguments") {
    CHECK(kummer_m(-0.3, 0.5, 0.8).absolute_error_estimate < 1e-10);
    CHECK(tricomi_u(-0.3, 0.5, 0.8).absolute_error_estimate < 1e-10);
    CHECK(std::isfinite(tricomi_u(-2.2, 0.5, 30.0).absolute_error_estimate));
    CHECK(digamma(3.7).absolute_error_estimate < 1e-10);
}

TEST_SUITE_END();
