#include "lifres/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace lifres;
using doctest::Approx;

TEST_CASE("Gauss-Legendre is exact to degree 2n-1")
{
    for (const int n : {1, 2, 5, 20, 64}) {
        const auto rule = gauss_legendre<double>(n);
        CHECK(rule.weights.sum() == Approx(2.0).epsilon(1e-14));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
            const double got = (rule.weights.array() * rule.nodes.array().pow(k)).sum();
            CHECK(got == Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("Gauss-Legendre nodes are sorted and interior")
{
    const auto rule = gauss_legendre<double>(33);
    for (Eigen::Index i = 0; i < rule.size(); ++i) {
        CHECK(std::abs(rule.nodes(i)) < 1.0);
        CHECK(rule.weights(i) > 0.0);
        if (i)
            CHECK(rule.nodes(i) > rule.nodes(i - 1));
    }
    CHECK_THROWS(gauss_legendre<double>(0));
}

TEST_CASE("composite rule integrates a smooth function over uneven panels")
{
    Eigen::VectorXd breaks(5);
    breaks << 0.0, 0.3, 1.0, 2.5, 6.0;
    const auto rule = composite_gauss_legendre(breaks, 12);
    CHECK(rule.size() == 48);
    const double got = (rule.weights.array() * (-rule.nodes.array()).exp() * rule.nodes.array().cos()).sum();
    // int_0^6 e^-t cos t dt
    const double exact = 0.5 * (1.0 + std::exp(-6.0) * (std::sin(6.0) - std::cos(6.0)));
    CHECK(got == Approx(exact).epsilon(1e-13));
}

TEST_CASE("adaptive Gauss-Kronrod handles peaked and endpoint-singular integrands")
{
    const double lorentz = integrate_adaptive([](double x) { return 1e-3 / (x * x + 1e-6); }, -1.0, 1.0);
    CHECK(lorentz == Approx(2.0 * std::atan(1e3)).epsilon(1e-11));

    const double root = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13, 1e-12, 60);
    CHECK(root == Approx(2.0 / 3.0).epsilon(1e-11));

    CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("adaptive quadrature reports exhaustion")
{
    CHECK_THROWS(integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0, 1e-16, 1e-16, 4));
}
