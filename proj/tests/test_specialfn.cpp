#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "grushin/errors.hpp"
#include "grushin/specialfn.hpp"

using namespace grushin::specialfn;

namespace {
constexpr double kGamma = 0.57721566490153286061;
constexpr double kLn2 = 0.69314718055994530942;
}

TEST_CASE("euler_gamma matches the harmonic limit to 14 digits") {
    const long long n = 1'000'000;
    // Euler-Maclaurin: H_n - ln n - 1/(2n) + 1/(12 n^2) = gamma + O(n^-4)
    const double lim = harmonic(n) - std::log((double)n) - 0.5 / n +
                       1.0 / (12.0 * n * (double)n);
    CHECK(std::fabs(lim - euler_gamma) < 1e-14);
    CHECK(euler_gamma == doctest::Approx(kGamma).epsilon(1e-15));
}

TEST_CASE("digamma at classical points") {
    CHECK(digamma(1.0) == doctest::Approx(-kGamma).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - kGamma).epsilon(1e-13));
    CHECK(digamma(0.5) == doctest::Approx(-kGamma - 2.0 * kLn2).epsilon(1e-13));
    CHECK(digamma(2.0 / 3.0) == doctest::Approx(-1.3182344157865884724).epsilon(1e-13));
    CHECK(digamma(4.0 / 3.0) == doctest::Approx(-0.132033780020806323).epsilon(1e-13));
    CHECK(digamma(5.5) == doctest::Approx(1.6110931485817511237).epsilon(1e-13));
    CHECK(digamma(123.456) == doctest::Approx(4.8118293238289853873).epsilon(1e-13));
    CHECK(digamma(0.1) == doctest::Approx(-10.423754940411076795).epsilon(1e-13));
}

TEST_CASE("digamma recurrence and reflection") {
    for (double x : {0.3, 1.7, 4.2, 9.9, 25.0}) {
        CHECK(digamma(x + 1.0) ==
              doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-13));
    }
    CHECK(digamma(-1.5) == doctest::Approx(0.70315664064524318723).epsilon(1e-13));
    CHECK_THROWS_AS((void)digamma(0.0), grushin::usage_error);
    CHECK_THROWS_AS((void)digamma(-3.0), grushin::usage_error);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(harmonic(12) == doctest::Approx(3.1032106782106782107).epsilon(1e-14));
    const long long n = 1'000'000;
    CHECK(std::fabs(harmonic(n) - std::log((double)n) - kGamma - 0.5 / n) < 1e-12);
    // the digamma branch must agree with the direct sum across its threshold
    double tail = 0;
    for (long long m = n + 10; m > n; --m) tail += 1.0 / (double)m;
    CHECK(harmonic(n + 10) == doctest::Approx(harmonic(n) + tail).epsilon(1e-13));
    CHECK_THROWS_AS((void)harmonic(0), grushin::usage_error);
}

TEST_CASE("generalized Laguerre polynomials") {
    CHECK(laguerre(0, 1.0, 3.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(laguerre(1, 0.5, 2.0) == doctest::Approx(1.5 - 2.0).epsilon(1e-14));
    // L^1_2(x) = 3 - 3x + x^2/2
    for (double x : {0.0, 0.4, 1.9, 7.3}) {
        CHECK(laguerre(2, 1.0, x) ==
              doctest::Approx(3.0 - 3.0 * x + 0.5 * x * x).epsilon(1e-13));
    }
    CHECK(laguerre(4, 1.0, 2.5) == doctest::Approx(-0.14322916666666666667).epsilon(1e-13));
    CHECK(laguerre(3, 0.0, 0.7) == doctest::Approx(-0.42216666666666666667).epsilon(1e-13));
}

TEST_CASE("whittaker closed forms at small index") {
    // z e^{-z/2} and z e^{-z/2} (2 - z)
    for (double z : {0.1, 0.8, 2.2, 5.0}) {
        CHECK(whittaker_w_half(1, z) ==
              doctest::Approx(z * std::exp(-0.5 * z)).epsilon(1e-14));
        CHECK(whittaker_w_half(2, z) ==
              doctest::Approx(z * std::exp(-0.5 * z) * (2.0 - z)).epsilon(1e-13));
    }
    CHECK(whittaker_w_half(1, 0.8) == doctest::Approx(0.5362560368285114406).epsilon(1e-14));
    CHECK(whittaker_w_half(2, 2.2) == doctest::Approx(-0.14646327682715500345).epsilon(1e-13));
    CHECK(whittaker_w_half(5, 3.7) == doctest::Approx(1.19157973845035203).epsilon(1e-13));
    CHECK(whittaker_w_half(12, 0.25) == doctest::Approx(0.26642291621445381365).epsilon(1e-13));
    CHECK(whittaker_w_half(30, 10.0) == doctest::Approx(2.2174467311461852691).epsilon(1e-12));
    CHECK(whittaker_w_half(3, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)whittaker_w_half(0, 1.0), grushin::usage_error);
    CHECK_THROWS_AS((void)whittaker_w_half(1, -0.5), grushin::usage_error);
}

TEST_CASE("whittaker satisfies its differential equation") {
    // mu = 1/2 kills the 1/z^2 term: W'' = (1/4 - n/z) W
    for (int n : {1, 2, 5, 13, 27, 50}) {
        for (double z : {0.1, 0.9, 3.3, 11.0, 47.0, 100.0}) {
            const double h = 0.005 / std::max(1.0, std::sqrt((double)n / z));
            if (z - 2 * h <= 0) continue;
            const double f2 = whittaker_w_half(n, z + 2 * h);
            const double f1 = whittaker_w_half(n, z + h);
            const double f0 = whittaker_w_half(n, z);
            const double fm1 = whittaker_w_half(n, z - h);
            const double fm2 = whittaker_w_half(n, z - 2 * h);
            const double d2 =
                (-f2 + 16 * f1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
            const double rhs = (0.25 - (double)n / z) * f0;
            const double scale = std::max({1.0, std::fabs(rhs), std::fabs(f0)});
            CHECK(std::fabs(d2 - rhs) / scale < 1e-8);
        }
    }
}

TEST_CASE("bessel J0 and J1 reference values") {
    CHECK(bessel_j(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_j(1, 0.0) == doctest::Approx(0.0));
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.76519768655796655145).epsilon(1e-14));
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.44005058574493351596).epsilon(1e-14));
    CHECK(bessel_j(1, 2.0) == doctest::Approx(0.5767248077568733872).epsilon(1e-14));
    // both sides of the series/asymptotic switch
    CHECK(bessel_j(0, 15.9) == doctest::Approx(-0.16497049948567057115).epsilon(1e-12));
    CHECK(bessel_j(1, 15.9) == doctest::Approx(0.10802789006306508894).epsilon(1e-12));
    CHECK(bessel_j(0, 16.1) == doctest::Approx(-0.18302369246531038278).epsilon(1e-12));
    CHECK(bessel_j(1, 16.1) == doctest::Approx(0.071979418622450256951).epsilon(1e-12));
    CHECK(bessel_j(0, 20.0) == doctest::Approx(0.16702466434058315473).epsilon(1e-12));
    CHECK(bessel_j(1, 20.0) == doctest::Approx(0.066833124175850045579).epsilon(1e-12));
    CHECK(bessel_j(1, 100.0) == doctest::Approx(-0.077145352014112158033).epsilon(1e-11));
    CHECK(std::fabs(bessel_j(0, 2.404825557695773)) < 1e-13);
    CHECK_THROWS_AS((void)bessel_j(2, 1.0), grushin::usage_error);
}

TEST_CASE("bessel derivative identity J0' = -J1") {
    const double h = 1e-6;
    for (double x : {0.5, 2.0, 7.7, 14.0, 19.5, 60.0}) {
        const double d = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h);
        CHECK(d == doctest::Approx(-bessel_j(1, x)).epsilon(1e-7));
    }
}

TEST_CASE("terminating hypergeometric series") {
    for (double z : {-0.7, 0.0, 0.3, 0.9, 1.0}) {
        const double b = 4.5, c = 2.5;
        CHECK(hypergeom_terminating(1, b, c, z) ==
              doctest::Approx(1.0 - b * z / c).epsilon(1e-13));
        CHECK(hypergeom_terminating(2, b, c, z) ==
              doctest::Approx(1.0 - 2.0 * b * z / c +
                              b * (b + 1) * z * z / (c * (c + 1)))
                  .epsilon(1e-13));
    }
    CHECK(hypergeom_terminating(0, 3.0, 1.5, 0.4) == doctest::Approx(1.0));
    CHECK(hypergeom_terminating(3, 4.5, 2.5, 0.3) ==
          doctest::Approx(0.0334).epsilon(1e-13));
    CHECK(hypergeom_terminating(7, 9.25, 3.25, 0.8) ==
          doctest::Approx(0.0017777896923360615044).epsilon(1e-12));
    // Chu-Vandermonde zero at unit argument: F(-m, m + a; 1 + a; 1) = 0, m >= 1
    for (int m : {1, 2, 5, 9}) {
        for (double a : {0.0, 0.5, 2.0}) {
            CHECK(std::fabs(hypergeom_terminating(m, m + a, 1.0 + a, 1.0)) < 1e-10);
        }
    }
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.5, 0) == doctest::Approx(1.0));
    CHECK(pochhammer(2.0, 3) == doctest::Approx(2.0 * 3.0 * 4.0).epsilon(1e-15));
    CHECK(pochhammer(-3.0, 4) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)pochhammer(1e30, 200), grushin::overflow_error);
}

TEST_CASE("divisor counts") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(2) == 2);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(97) == 2);
    CHECK(divisor_count(414720) == 110);
    CHECK(divisor_count(720720) == 240);
    CHECK_THROWS_AS((void)divisor_count(0), grushin::usage_error);
}
