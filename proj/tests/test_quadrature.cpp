#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pseudoproc/quadrature.hpp"

using namespace pseudoproc;
using quad::cplx;

TEST_CASE("basic exponential and gaussian integrals") {
    quad::QuadratureSpec spec;
    auto e = [](double x) -> cplx { return std::exp(-x); };
    CHECK(quad::integrate_semi_infinite(e, spec, 50.0).value.real() ==
          doctest::Approx(1.0).epsilon(1e-13));

    auto g = [](double x) -> cplx { return std::exp(-x * x); };
    CHECK(quad::integrate(g, 0.0, 10.0, spec).value.real() ==
          doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-13));
}

TEST_CASE("power substitutions reproduce gamma values") {
    quad::QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    for (double gamma : {0.25, 1.0 / 3.0, 0.5, 0.75}) {
        auto f = [&](double u) -> cplx { return std::pow(u, gamma - 1.0) * std::exp(-u); };
        const double got = quad::integrate_left_power(f, 60.0, gamma, spec).value.real();
        CHECK(std::abs(got - std::tgamma(gamma)) < 1e-12 * std::tgamma(gamma));
    }
    // right-endpoint variant against a Beta value: int_0^1 (1-u)^{-1/2} du = 2
    auto f = [](double u) -> cplx { return 1.0 / std::sqrt(1.0 - u); };
    CHECK(quad::integrate_right_power(f, 0.0, 1.0, 0.5, spec).value.real() ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("oscillatory paneling handles long cosines") {
    quad::QuadratureSpec spec;
    // int_0^inf e^{-x} cos(20 x) dx = 1/(1+400)
    auto f = [](double x) -> cplx { return std::exp(-x) * std::cos(20.0 * x); };
    const auto r = quad::integrate_semi_infinite(f, spec, 60.0, 2.0 * M_PI / 20.0);
    CHECK(r.value.real() == doctest::Approx(1.0 / 401.0).epsilon(1e-11));
}

TEST_CASE("numeric laplace and fourier transforms") {
    quad::QuadratureSpec spec;
    auto one = [](double) -> cplx { return 1.0; };
    CHECK(quad::numeric_laplace(one, 2.0, spec).real() ==
          doctest::Approx(0.5).epsilon(1e-11));
    // f(t) = t^{-1/2}: Laplace = sqrt(pi/lambda)
    auto root = [](double tv) -> cplx { return 1.0 / std::sqrt(tv); };
    CHECK(quad::numeric_laplace(root, 1.0, spec, 0.5).real() ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
    // Gaussian Fourier transform
    auto g = [](double x) -> cplx { return std::exp(-x * x); };
    const cplx got = quad::numeric_fourier(g, 1.5, spec, 9.0);
    CHECK(got.real() == doctest::Approx(std::sqrt(M_PI) * std::exp(-1.5 * 1.5 / 4.0))
                            .epsilon(1e-11));
    CHECK(std::abs(got.imag()) < 1e-12);
}

TEST_CASE("error estimates track a doubled-node recomputation") {
    quad::QuadratureSpec spec;
    auto f = [](double x) -> cplx { return std::sin(3.0 * x) / (1.0 + x * x); };
    const auto r = quad::integrate(f, 0.0, 8.0, spec);
    // recompute on a forced finer initial subdivision
    const auto r2 = quad::integrate_paneled(f, 0.0, 8.0, spec, 0.25);
    CHECK(std::abs(r.value.real() - r2.value.real()) <= 3.0 * (r.err_est + r2.err_est) + 1e-13);
}

TEST_CASE("erfc identity suite passes") {
    quad::QuadratureSpec spec;
    const auto rep = quad::erfc_identity_suite(spec);
    for (const auto& e : rep.entries()) {
        INFO(e.name, " expected=", e.expected, " computed=", e.computed);
        CHECK(e.pass);
    }
}
