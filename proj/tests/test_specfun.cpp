#include <cmath>
#include <numbers>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"
#include "gen.hpp"

using namespace fracdiff;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

// Reference values below were computed with mpmath at 80 digits by direct
// summation of the defining series.

TEST_CASE("wright function against high-precision sums") {
    CHECK(wright(-0.25, 0.75, -1.3).value == Approx(0.2987705270157102796).epsilon(1e-13));
    CHECK(wright(-1.0 / 3, 2.0 / 3, -3.0).value == Approx(0.0642546047783902924).epsilon(1e-13));
    CHECK(wright(0.5, 1.0, 2.0).value == Approx(6.6906279405071441357).epsilon(1e-13));
    // W_{-1/2,1/2}(-z) = exp(-z^2/4)/sqrt(pi)
    CHECK(wright(-0.5, 0.5, -2.0).value == Approx(std::exp(-1.0) / std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("wright function at zero and the exponential special case") {
    testgen::Gen g(11);
    for (int i = 0; i < 50; ++i) {
        const double a = g.uniform(-0.9, 1.5), b = g.uniform(0.1, 2.0);
        CHECK(wright(a, b, 0.0).value == Approx(1.0 / std::tgamma(b)).epsilon(1e-14));
    }
    // W_{0,1}(x) = e^x
    for (double x : {-3.0, -0.5, 0.7, 2.0}) CHECK(wright(0.0, 1.0, x).value == Approx(std::exp(x)).epsilon(1e-13));
}

TEST_CASE("wright either converges or refuses") {
    testgen::Gen g(12);
    for (int i = 0; i < 40; ++i) {
        const double nu = g.uniform(0.1, 1.9), x = -g.uniform(0.0, 8.0);
        try {
            const EvalResult r = wright(-nu / 2, 1 - nu / 2, x);
            CHECK(std::isfinite(r.value));
            CHECK(r.abs_err >= 0.0);
        } catch (const NonConvergent&) {
            // refusing is allowed; returning garbage is not
        }
    }
}

TEST_CASE("mittag-leffler against high-precision sums") {
    // E_{1/2}(-2) = e^4 erfc(2)
    CHECK(mittag_leffler(0.5, -2.0).value == Approx(std::exp(4.0) * std::erfc(2.0)).epsilon(1e-12));
    CHECK(mittag_leffler(0.6, -3.0).value == Approx(0.1597034802650912207).epsilon(1e-12));
    CHECK(mittag_leffler(1.5, -2.0).value == Approx(0.0294306856028264717).epsilon(1e-11));
    CHECK(mittag_leffler(0.7, 1.5).value == Approx(8.3696354095690636558).epsilon(1e-12));
    CHECK(mittag_leffler(1.8, -5.0).value == Approx(-0.5585312127343045909).epsilon(1e-11));
}

TEST_CASE("mittag-leffler special orders") {
    for (double z : {-30.0, -4.0, -0.3, 0.0, 1.2}) {
        CHECK(mittag_leffler(1.0, z).value == Approx(std::exp(z)).epsilon(1e-12));
        if (z <= 0.0) CHECK(mittag_leffler(2.0, z).value == Approx(std::cos(std::sqrt(-z))).epsilon(1e-10));
    }
}

TEST_CASE("mittag-leffler is completely monotone on the negative axis for nu <= 1") {
    testgen::Gen g(13);
    for (int i = 0; i < 20; ++i) {
        const double nu = g.uniform(0.15, 0.95);
        double prev = 1.0;
        for (double z = -0.5; z >= -60.0; z *= 1.6) {
            const double v = mittag_leffler(nu, z).value;
            CHECK(v > 0.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("airy function against mpmath") {
    CHECK(airy_ai(-5.0).value == Approx(0.3507610090241143198).epsilon(1e-12));
    CHECK(airy_ai(-1.0).value == Approx(0.5355608832923521188).epsilon(1e-13));
    CHECK(airy_ai(0.0).value == Approx(0.3550280538878172393).epsilon(1e-14));
    CHECK(airy_ai(1.0).value == Approx(0.1352924163128814155).epsilon(1e-13));
    CHECK(airy_ai(3.0).value == Approx(0.006591139357460719144).epsilon(1e-12));
    CHECK(airy_ai(8.0).value == Approx(4.692207616099231626e-8).epsilon(1e-11));
}

TEST_CASE("airy function sweep against Boost") {
    for (double w = -20.0; w <= 12.0; w += 0.173) {
        const double ref = boost::math::airy_ai(w);
        CHECK(std::abs(airy_ai(w).value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)) + 1e-15);
    }
}

TEST_CASE("bessel K_{1/4}") {
    CHECK(bessel_k_quarter(0.1).value == Approx(2.685156871876059265).epsilon(1e-13));
    CHECK(bessel_k_quarter(1.0).value == Approx(0.4307397744485855247).epsilon(1e-13));
    CHECK(bessel_k_quarter(5.0).value == Approx(0.003712302732031840638).epsilon(1e-13));
    for (double x = 0.05; x < 40.0; x *= 1.37) {
        const double ref = boost::math::cyl_bessel_k(0.25, x);
        CHECK(bessel_k_quarter(x).value == Approx(ref).epsilon(1e-12));
        CHECK(bessel_k_integral(0.25, x) == Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bessel_k_quarter(0.0), DomainError);
}

TEST_CASE("bessel I series against Boost") {
    for (double nu : {-1.0 / 3, 1.0 / 3, 0.25})
        for (double x : {0.01, 0.5, 2.0, 7.0})
            CHECK(bessel_i_series(nu, x) == Approx(boost::math::cyl_bessel_i(nu, x)).epsilon(1e-12));
}

TEST_CASE("reciprocal gamma and sin_pi") {
    for (int n = 0; n <= 6; ++n) CHECK(reciprocal_gamma(-static_cast<double>(n)) == 0.0);
    for (int n = -5; n <= 5; ++n) CHECK(sin_pi(static_cast<double>(n)) == 0.0);
    testgen::Gen g(14);
    for (int i = 0; i < 100; ++i) {
        const double z = g.uniform(-8.0, 30.0);
        if (std::abs(z - std::round(z)) < 1e-6) continue;
        CHECK(reciprocal_gamma(z) == Approx(1.0 / boost::math::tgamma(z)).epsilon(1e-13));
        CHECK(sin_pi(z) == Approx(std::sin(kPi * z)).epsilon(1e-12));
    }
}

TEST_CASE("quadrature basics") {
    QuadratureConfig q;
    const QuadResult a = integrate([](double x) { return std::sin(x); }, 0.0, kPi, q);
    CHECK(a.value == Approx(2.0).epsilon(1e-13));
    CHECK(a.abs_err <= 1e-10);
    const QuadResult b = integrate_to_infinity([](double x) { return std::exp(-x * x); }, 0.0, 0.5, q);
    CHECK(b.value == Approx(std::sqrt(kPi) / 2).epsilon(1e-12));
    // integrable endpoint singularity
    const QuadResult c = integrate([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0, q);
    CHECK(c.value == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("quadrature reports failure and bad configs") {
    QuadratureConfig q;
    q.max_subdivisions = 10;
    q.rel_tol = 1e-15;
    q.abs_tol = 1e-300;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0, 1.0, q), QuadratureFailure);
    QuadratureConfig bad;
    bad.rel_tol = 2.0;
    CHECK_THROWS(bad.validate());
}
