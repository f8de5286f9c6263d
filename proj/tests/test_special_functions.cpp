#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pseudoproc/quadrature.hpp"
#include "pseudoproc/root_system.hpp"
#include "pseudoproc/special_functions.hpp"

using namespace pseudoproc;
using special::cplx;

// Reference values pinned ahead of the implementation with a 30-digit
// compensated series / quadrature oracle.
namespace oracle_values {
constexpr double kMlHalfHalfNegHalf = 0.25634441145129335;   // E_{1/2,1/2}(-0.5)
constexpr double kHiMinusOne = 0.22066960679295989;          // Hi(-1)
constexpr double kHiPrimeMinusOne = 0.11527322418152560;     // Hi'(-1)
constexpr double kErfOne = 0.84270079294971487;
constexpr double kMlQuarterNeg12 = -0.020696039081482991;    // E_{1,1/4}(-12)
constexpr double kI10Order2 = 0.34560324070084019;           // tau=0.7, x=1.2
}  // namespace oracle_values

TEST_CASE("exponential specialization and erf closed forms") {
    for (double x : {-2.0, 0.0, 3.0})
        CHECK(special::ml_one(1.0, x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    CHECK(special::ml_one(0.5, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(M_PI) + std::exp(1.0) * std::erf(1.0))
              .epsilon(1e-13));
    CHECK(special::ml_half_half_erf(-0.5) ==
          doctest::Approx(oracle_values::kMlHalfHalfNegHalf).epsilon(1e-13));
    CHECK(special::ml_one_over_n(2, 0.5, -0.5).real() ==
          doctest::Approx(oracle_values::kMlHalfHalfNegHalf).epsilon(1e-12));
    CHECK(std::erf(1.0) == doctest::Approx(oracle_values::kErfOne).epsilon(1e-15));
}

TEST_CASE("negative-argument evaluation stays stable across regimes") {
    CHECK(special::ml_one(0.25, -12.0) ==
          doctest::Approx(oracle_values::kMlQuarterNeg12).epsilon(1e-11));
    for (double b : {0.25, 0.5, 0.75, 1.25}) {
        for (double y : {3.0, 7.9, 8.1, 20.0, 49.0, 51.0, 80.0, 200.0}) {
            const double hp = y <= 60.0 ? special::ml_one_series_hp(b, -y)
                                        : special::ml_one_int_rep(b, -y);
            INFO("b=", b, " y=", y);
            CHECK(std::abs(special::ml_one(b, -y) - hp) < 1e-10 * std::max(1.0, std::abs(hp)));
        }
    }
    // index-shift recurrence
    for (double x : {-30.0, -5.0, 2.0})
        CHECK(special::ml_one(0.75, x) ==
              doctest::Approx(x * special::ml_one(1.75, x) + 1.0 / std::tgamma(0.75))
                  .epsilon(1e-11));
}

TEST_CASE("series rejects runaway arguments") {
    CHECK_THROWS(special::ml_one(0.5, 400.0));
    CHECK_THROWS(special::ml_one_c(0.5, cplx(20.0, 25.0)));
}

TEST_CASE("block decomposition matches the generic series") {
    const cplx z(0.6, 0.35);
    special::MlSpec generic{1.0 / 3.0, 2.0 / 3.0, special::MlMethod::series};
    const cplx direct = special::mittag_leffler(generic, z);
    const cplx block = special::ml_one_over_n(3, 2.0 / 3.0, z);
    CHECK(std::abs(direct - block) < 1e-12);
}

TEST_CASE("scorer function against pinned quadrature values") {
    CHECK(special::airy_hi(cplx(-1.0, 0.0)).real() ==
          doctest::Approx(oracle_values::kHiMinusOne).epsilon(1e-10));
    CHECK(special::airy_hi_prime(cplx(-1.0, 0.0)).real() ==
          doctest::Approx(oracle_values::kHiPrimeMinusOne).epsilon(1e-10));
    const double hi0 = std::pow(3.0, -2.0 / 3.0) * std::tgamma(1.0 / 3.0) / M_PI;
    CHECK(special::airy_hi(cplx(0.0, 0.0)).real() == doctest::Approx(hi0).epsilon(1e-11));
    CHECK_THROWS(special::airy_hi(cplx(120.0, 0.0)));
}

TEST_CASE("order-2 closed kernel and its Laplace transform") {
    RootSystem rs(PseudoParams::make(2));
    const cplx v = special::inversion_kernel(rs, 0, 0, 0.7, 1.2);
    CHECK(v.real() == doctest::Approx(oracle_values::kI10Order2).epsilon(1e-13));
    CHECK(std::abs(v.imag()) < 1e-15);
    // generic rotated quadrature agrees
    const cplx g = special::inversion_kernel_generic(rs, 0, 0, 0.7, 1.2);
    CHECK(std::abs(v - g) < 1e-10);

    const auto pr = special::laplace_check_kernel(rs, 0, 0, 1.0, 0.8);
    CHECK(std::abs(pr.lhs - pr.rhs) < 1e-7 * std::abs(pr.rhs));
}

TEST_CASE("kernel at the origin collapses to the gamma form") {
    for (auto [n, kappa] : {std::pair{4, -1}, std::pair{6, 1}}) {
        RootSystem rs(PseudoParams::make(n, kappa));
        for (int m = 1; m <= n - 1; ++m) {
            const double tau = 0.8;
            const cplx got = special::inversion_kernel(rs, 0, m, tau, 0.0);
            const double want = std::pow(tau, static_cast<double>(m) / n - 1.0) /
                                std::tgamma(static_cast<double>(m) / n);
            INFO("n=", n, " m=", m);
            CHECK(std::abs(got - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("negative index extension of the Laplace transform") {
    RootSystem rs3(PseudoParams::make(3, -1));
    const auto pr = special::laplace_check_kernel(rs3, 0, -2, 1.0, 1.0);
    CHECK(std::abs(pr.lhs - pr.rhs) < 1e-6 * std::abs(pr.rhs));
    // rhs there is lambda^{2/3} e^{-theta_1 x}
    const cplx expect = std::exp(-rs3.plus_root(0));
    CHECK(std::abs(pr.rhs - expect) < 1e-12);
    CHECK_THROWS(special::laplace_check_kernel(rs3, 0, -1, 1.0, 0.0));
}

TEST_CASE("order-4 closed pair against the generic rotation") {
    RootSystem rs(PseudoParams::make(4));
    for (int j : {0, 1})
        for (double tau : {0.6, 1.3})
            for (double x : {0.0, 0.5, 1.4}) {
                const cplx a = special::inversion_kernel(rs, j, 1, tau, x);
                const cplx b = special::inversion_kernel_generic(rs, j, 1, tau, x);
                INFO("j=", j, " tau=", tau, " x=", x);
                CHECK(std::abs(a - b) < 1e-9);
            }
}

TEST_CASE("order-3 scorer forms against the generic rotation") {
    for (int kappa : {1, -1}) {
        RootSystem rs(PseudoParams::make(3, kappa));
        for (int j = 0; j < rs.n_plus(); ++j)
            for (int m : {0, 1})
                for (double x : {0.3, 1.1}) {
                    const cplx a = special::inversion_kernel(rs, j, m, 0.9, x);
                    const cplx b = special::inversion_kernel_generic(rs, j, m, 0.9, x);
                    INFO("kappa=", kappa, " j=", j, " m=", m, " x=", x);
                    CHECK(std::abs(a - b) < 1e-9);
                }
    }
}

TEST_CASE("lower incomplete gamma regularized") {
    CHECK(special::lower_incomplete_gamma_reg(1.0, 2.0) ==
          doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
    CHECK(special::lower_incomplete_gamma_reg(0.5, 1.0) ==
          doctest::Approx(std::erf(1.0)).epsilon(1e-12));
}
