#include <doctest.h>

#include "hetdiff/errors.hpp"
#include "hetdiff/quadrature.hpp"

#include <cmath>

using namespace hetdiff;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("quadrature") {

TEST_CASE("adaptive integral of smooth functions") {
    CHECK(integrate_adaptive([](double x) { return x * x * x; }, 0.0, 1.0) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi) ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 30.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0) == 0.0);
}

TEST_CASE("adaptive integral respects orientation and empty ranges") {
    CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 1.0) == 0.0);
    CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("gaussian half-line integral") {
    // integral_0^inf exp(-xi^2/4t) cos(xi) / sqrt(pi t) dxi = exp(-t)
    const double t = 0.3;
    const double value = integrate_gaussian_halfline(
        [t](double xi) { return std::exp(-xi * xi / (4.0 * t)) * std::cos(xi) /
                                std::sqrt(kPi * t); },
        t);
    CHECK(value == doctest::Approx(std::exp(-t)).epsilon(1e-12));

    // unit-mass normalization over the half line
    const double mass = integrate_gaussian_halfline(
        [t](double xi) { return std::exp(-xi * xi / (4.0 * t)) / std::sqrt(kPi * t); }, t);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("graded mesh clusters toward both endpoints") {
    const auto mesh = graded_mesh(2.0, 0.85);
    REQUIRE(mesh.size() >= 10);
    CHECK(mesh.front() == 0.0);
    CHECK(mesh.back() == 2.0);
    for (std::size_t i = 1; i < mesh.size(); ++i) {
        CHECK(mesh[i] > mesh[i - 1]);
    }
    // finest spacing at the ends, coarser in the middle
    const double first_gap = mesh[1] - mesh[0];
    const double last_gap = mesh.back() - mesh[mesh.size() - 2];
    double widest = 0.0;
    for (std::size_t i = 1; i < mesh.size(); ++i) {
        widest = std::max(widest, mesh[i] - mesh[i - 1]);
    }
    CHECK(first_gap < 1e-10);
    CHECK(last_gap < 1e-10);
    CHECK(widest > 0.01);
}

TEST_CASE("abel product integration against analytic values") {
    // integral_0^t tau^2 / sqrt(pi (t-tau)) dtau = (16/15) t^(5/2) / sqrt(pi)
    const double t = 0.8;
    const double exact = 16.0 / 15.0 * std::pow(t, 2.5) / std::sqrt(kPi);
    CHECK(product_integrate_abel([](double tau) { return tau * tau; }, t) ==
          doctest::Approx(exact).epsilon(2e-9));

    // constant g: integral = 2 sqrt(t/pi)
    CHECK(product_integrate_abel([](double) { return 1.0; }, 2.5) ==
          doctest::Approx(2.0 * std::sqrt(2.5 / kPi)).epsilon(1e-11));
}

TEST_CASE("abel product integration handles an integrable edge peak") {
    // g(tau) = 1/sqrt(tau):
    // integral_0^t dtau / sqrt(pi tau (t-tau)) = sqrt(pi)
    const double t = 0.37;
    CHECK(product_integrate_abel([](double tau) { return 1.0 / std::sqrt(tau); }, t) ==
          doctest::Approx(std::sqrt(kPi)).epsilon(1e-5));
}

TEST_CASE("erfc product integration against a frozen value") {
    // integral_0^0.5 erfc(0.3 / (2 sqrt(0.5 - tau))) tau dtau, 40-digit value
    const double value =
        product_integrate_erfc([](double tau) { return tau; }, 0.5, 0.3);
    CHECK(value == doctest::Approx(0.064442440726929739071).epsilon(1e-9));

    // c = 0 makes the weight identically 1
    CHECK(product_integrate_erfc([](double tau) { return tau; }, 0.5, 0.0) ==
          doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("zero integrand stays zero under the relative stop") {
    CHECK(product_integrate_abel([](double) { return 0.0; }, 1.0) == 0.0);
    CHECK(product_integrate_erfc([](double) { return 0.0; }, 1.0, 0.5) == 0.0);
}

} // TEST_SUITE
