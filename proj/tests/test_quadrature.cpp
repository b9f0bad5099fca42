#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "qcurv/quadrature.hpp"

using namespace qcurv::quad;

TEST_CASE("gauss-legendre is exact on polynomials of degree 2n-1")
{
    const int n = 8;
    for (int k = 0; k <= 2 * n - 1; ++k) {
        double got = integrate_gl([k](double x) { return std::pow(x, k); },
                                  0.0, 1.0, n);
        CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
}

TEST_CASE("gauss-legendre weights sum to 2 and nodes are symmetric")
{
    const GaussRule& g = gauss_legendre(24);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < 24; ++i)
        CHECK(g.nodes[i] == doctest::Approx(-g.nodes[23 - i]).epsilon(1e-14));
}

TEST_CASE("smooth definite integrals")
{
    CHECK(integrate_gl([](double x) { return std::sin(x); }, 0.0, PI, 24) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate_panels([](double x) { return std::exp(x); }, -3.0, 5.0,
                           16, 1.0) ==
          doctest::Approx(std::exp(5.0) - std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("semi-infinite tails")
{
    CHECK(integrate_right([](double x) { return std::exp(-x * x); }, 0.0) ==
          doctest::Approx(std::sqrt(PI) / 2.0).epsilon(1e-12));
    CHECK(integrate_right([](double x) { return std::exp(-2.0 * x); }, 1.0) ==
          doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-12));
    CHECK(integrate_left([](double x) { return std::exp(x); }, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_line([](double x) { return std::exp(-x * x); }) ==
          doctest::Approx(std::sqrt(PI)).epsilon(1e-12));
}

TEST_CASE("declared compact support is clipped with exact endpoint splits")
{
    TailOptions opt;
    opt.support = {{-1.0, 2.0}};
    auto ind = [](double x) { return (x >= -1.0 && x <= 2.0) ? 1.0 : 0.0; };
    CHECK(integrate_right(ind, -5.0, opt) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(integrate_left(ind, 5.0, opt) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(integrate_right(ind, 0.5, opt) ==
          doctest::Approx(1.5).epsilon(1e-14));

    // Indicator weighted by e^{-2x}: antiderivative oracle.
    TailOptions opt01;
    opt01.support = {{0.0, 1.0}};
    auto f = [](double x) {
        return (x >= 0.0 && x <= 1.0) ? std::exp(-2.0 * x) : 0.0;
    };
    double oracle = (1.0 - std::exp(-2.0)) / 2.0;
    CHECK(integrate_right(f, -3.0, opt01) ==
          doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("tanh-sinh absorbs endpoint singularities")
{
    CHECK(integrate_tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0) ==
          doctest::Approx(-1.0).epsilon(1e-11));
    CHECK(integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                              1.0) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("pairwise summation is deterministic and accurate")
{
    std::vector<double> terms(100000, 0.1);
    std::vector<double> copy = terms;
    double s1 = pairwise_sum(terms);
    double s2 = pairwise_sum(copy);
    CHECK(s1 == s2);
    CHECK(s1 == doctest::Approx(10000.0).epsilon(1e-12));
}

TEST_CASE("3-sphere product rule")
{
    const SphereRule& rule = sphere_rule(16);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(S3_VOLUME).epsilon(1e-12));

    // Mean of each squared coordinate is 1/4; odd monomials vanish.
    for (int c = 0; c < 4; ++c) {
        double m2 = sphere_mean([c](const Vec4& x) { return x[c] * x[c]; }, 16);
        CHECK(m2 == doctest::Approx(0.25).epsilon(1e-12));
        double m1 = sphere_mean([c](const Vec4& x) { return x[c]; }, 16);
        CHECK(std::abs(m1) < 1e-13);
    }
    double cross =
        sphere_mean([](const Vec4& x) { return x[0] * x[1]; }, 16);
    CHECK(std::abs(cross) < 1e-13);

    // Mean of e^{c x0} over the sphere: 2 I1(c)/c (modified Bessel).
    double c = 1.7;
    double got = sphere_mean([c](const Vec4& x) { return std::exp(c * x[0]); },
                             24);
    double oracle = 2.0 * std::cyl_bessel_i(1.0, c) / c;
    CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
}
