#include "pseudoproc/validation.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "pseudoproc/lattice_oracle.hpp"
#include "pseudoproc/special_functions.hpp"

namespace pseudoproc::validation {

namespace {

using transforms::Level4Profile;
using quad::cplx;

std::string order_tag(const RootSystem& rs) {
    return "N" + std::to_string(rs.order()) + (rs.kappa() > 0 ? "p" : "m") + ".";
}

int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("PSEUDOPROC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(hw);
}

// -----------------------------------------------------------------------
// Order-independent special-function checks.
// -----------------------------------------------------------------------
ValidationReport special_function_checks(const QuadratureSpec& spec) {
    ValidationReport rep;
    const Tolerances tol;

    const double bs[] = {0.25, 0.5, 0.75, 1.0, 1.25};
    const double xs[] = {-20.0, -15.0, -10.0, -8.5, -5.0, -1.0, -0.1, 0.1, 1.0, 5.0, 10.0, 15.0, 20.0};
    for (double b : bs) {
        for (double x : xs) {
            const double ref = special::ml_one_series_hp(b, x);
            rep.check_rel("ml.cross.int_rep.b=" + std::to_string(b) + ".x=" + std::to_string(x),
                          "mittag-leffler-representations", ref,
                          special::ml_one_int_rep(b, x), 1e-10);
            if (b < 2.0 && x > 0.0)
                rep.check_rel("ml.cross.tail.b=" + std::to_string(b) + ".x=" + std::to_string(x),
                              "mittag-leffler-representations", ref,
                              special::ml_one_tail_rep(b, x), 1e-10);
            if (b > 1.0)
                rep.check_rel(
                    "ml.cross.shifted.b=" + std::to_string(b) + ".x=" + std::to_string(x),
                    "mittag-leffler-representations", ref,
                    special::ml_one_int_rep_shifted(b, x), 1e-10);
            rep.check_rel("ml.cross.auto.b=" + std::to_string(b) + ".x=" + std::to_string(x),
                          "mittag-leffler-representations", ref, special::ml_one(b, x),
                          1e-10);
        }
        // continuity across the series / integral-representation switchover
        rep.check_abs("ml.switchover.b=" + std::to_string(b), "plumbing",
                      special::ml_one(b, -8.0 + 1e-9), special::ml_one(b, -8.0 - 1e-9),
                      1e-8);
        // deep-asymptotic regime against the high-precision series
        rep.check_rel("ml.asymptotic.b=" + std::to_string(b), "plumbing",
                      special::ml_one_series_hp(b, -55.0), special::ml_one(b, -55.0), 1e-6);
    }

    for (double b : {0.25, 0.6, 1.0})
        for (double x : {-3.0, 0.5, 2.0})
            rep.check_abs("ml.recurrence.b=" + std::to_string(b) + ".x=" + std::to_string(x),
                          "mittag-leffler-shift", special::ml_one(b, x),
                          x * special::ml_one(b + 1.0, x) + 1.0 / std::tgamma(b), 1e-12);

    for (double x : {-2.0, 0.0, 3.0})
        rep.check_rel("ml.exponential.x=" + std::to_string(x), "mittag-leffler-exponential",
                      std::exp(x), special::ml_one(1.0, x), 1e-14);

    for (double x : {-2.0, -0.5, 0.1, 1.5}) {
        const double lhs = special::ml_one_over_n(2, 0.5, x).real();
        const double rhs = special::ml_half_erf(x * x) + x * std::exp(x * x);
        rep.check_rel("ml.half_half_split.x=" + std::to_string(x), "erf-closed-forms", rhs,
                      lhs, 1e-10);
    }
    rep.check_rel("ml.half_erf.x=1", "erf-closed-forms",
                  1.0 / std::sqrt(M_PI) + std::exp(1.0) * std::erf(1.0),
                  special::ml_one(0.5, 1.0), 1e-12);
    rep.check_rel("ml.half_half.x=-0.5", "erf-closed-forms",
                  1.0 / std::sqrt(M_PI) - 0.5 * std::exp(0.25) * std::erfc(0.5),
                  special::ml_one_over_n(2, 0.5, -0.5).real(), 1e-12);

    rep.check_abs("erf.zero", "plumbing", 0.0, std::erf(0.0), 1e-15);
    rep.check_abs("erfc.zero", "plumbing", 1.0, std::erfc(0.0), 1e-15);
    {
        auto f = [](double u) -> cplx { return std::exp(-u * u); };
        const double byquad = 2.0 / std::sqrt(M_PI) * quad::integrate(f, 0.0, 1.0, spec).value.real();
        rep.check_abs("erf.quadrature_pin", "plumbing", byquad, std::erf(1.0), 1e-12);
    }

    {
        const double hi0 = std::pow(3.0, -2.0 / 3.0) * std::tgamma(1.0 / 3.0) / M_PI;
        rep.check_rel("scorer.at_zero", "scorer-integral", hi0,
                      special::airy_hi(cplx(0.0)).real(), 1e-10);
        // scaling law of the cubic-exponent moments against direct quadrature
        const double tau = 0.7;
        const cplx z(-0.4, 0.3);
        auto f = [&](double xi) -> cplx {
            return std::exp(-tau * xi * xi * xi + z * xi);
        };
        const cplx direct = quad::integrate(f, 0.0, std::cbrt(60.0 / tau) + 2.0, spec).value;
        const double sc = std::cbrt(3.0 * tau);
        const cplx viahi = M_PI / (sc * sc * sc * sc) * special::airy_hi(z / sc);
        rep.check_rel("scorer.scaling_law", "scorer-integral", std::abs(direct),
                      std::abs(viahi), 1e-10);
        auto f1 = [&](double xi) -> cplx {
            return xi * std::exp(-tau * xi * xi * xi + z * xi);
        };
        const cplx direct1 = quad::integrate(f1, 0.0, std::cbrt(60.0 / tau) + 2.0, spec).value;
        const cplx viahi1 = M_PI / (sc * sc) * special::airy_hi_prime(z / sc);
        rep.check_rel("scorer.scaling_law_prime", "scorer-integral", std::abs(direct1),
                      std::abs(viahi1), 1e-10);
    }

    {
        // block decomposition E_{1/N,b} against the direct generic-a series
        const cplx z(0.6, 0.35);
        special::MlSpec s{0.25, 0.25, special::MlMethod::series};
        const cplx direct = special::mittag_leffler(s, z);
        const cplx block = special::ml_one_over_n(4, 0.25, z);
        rep.check_abs("ml.block_decomposition", "plumbing", std::abs(direct), std::abs(block),
                      1e-12);
    }

    (void)tol;
    return rep;
}

// -----------------------------------------------------------------------
// Kernel checks per order.
// -----------------------------------------------------------------------
ValidationReport kernel_checks(const RootSystem& rs, const QuadratureSpec& spec) {
    ValidationReport rep;
    const std::string p = order_tag(rs);
    const int N = rs.order();
    HeatKernel kernel(rs.params(), spec);

    if (N % 2 == 0) {
        for (double t : {0.5, 1.0, 2.0}) {
            const auto [pos, neg] = kernel.sign_masses(t);
            rep.check_abs(p + "kernel.total_mass.t=" + std::to_string(t), "kernel-mass", 1.0,
                          pos + neg, 1e-8);
        }
        const auto [pos1, neg1] = kernel.sign_masses(1.0);
        rep.check_abs(p + "kernel.mass_plus", "kernel-half-masses",
                      rs.n_plus() / static_cast<double>(N), pos1, 1e-8);
        rep.check_abs(p + "kernel.mass_minus", "kernel-half-masses",
                      rs.n_minus() / static_cast<double>(N), neg1, 1e-8);
        for (double x : {0.3, 1.7})
            rep.check_abs(p + "kernel.symmetry.x=" + std::to_string(x), "kernel-symmetry",
                          kernel.value(1.0, x), kernel.value(1.0, -x), 1e-10);
        {
            const double t = 2.0, x = 0.8;
            rep.check_abs(p + "kernel.self_similarity", "kernel-scaling",
                          std::pow(t, -1.0 / N) * kernel.value(1.0, std::pow(t, -1.0 / N) * x),
                          kernel.value(t, x), 1e-8);
        }
        rep.check_abs(p + "kernel.at_zero", "kernel-at-zero", kernel.at_zero(1.0),
                      kernel.value(1.0, 0.0), 1e-10);
        if (N >= 4)
            rep.check_abs(p + "kernel.abs_mass_scaling", "kernel-abs-mass",
                          kernel.abs_mass(1.0), kernel.abs_mass(2.0), 1e-8);
        else
            rep.check_abs(p + "kernel.abs_mass_unity", "kernel-abs-mass", 1.0,
                          kernel.abs_mass(1.0), 1e-8);

        {
            // coarse-grid composition rule p(s) * p(t-s) = p(t)
            const double t = 1.0, s = 0.4;
            const double L = 14.0, h = 0.05;
            const int G = static_cast<int>(2 * L / h) + 1;
            std::vector<double> ps(G), pt(G);
            for (int i = 0; i < G; ++i) {
                const double y = -L + i * h;
                ps[i] = kernel.value(s, y);
                pt[i] = kernel.value(t - s, y);
            }
            for (double x : {0.0, 0.5, 1.5}) {
                double conv = 0.0;
                for (int i = 0; i < G; ++i) {
                    const double y = -L + i * h;
                    const double xm = x - y;
                    if (std::abs(xm) <= L) {
                        const int idx = static_cast<int>(std::lround((xm + L) / h));
                        if (idx >= 0 && idx < G) conv += pt[i] * ps[idx] * h;
                    }
                }
                rep.check_abs(p + "kernel.composition.x=" + std::to_string(x),
                              "kernel-composition", kernel.value(t, x), conv, 1e-5);
            }
        }

        if (N == 2 || N == 4) {
            for (bool plus : {true, false}) {
                const auto [lhs, rhs] = log_transform_identity(rs, kernel, 1.0, 1.0, plus, spec);
                rep.check_abs(p + std::string("kernel.log_transform.") +
                                  (plus ? "plus" : "minus"),
                              "log-transform-keystone", std::abs(rhs), std::abs(lhs), 1e-4);
                rep.check_abs(p + std::string("kernel.log_transform_arg.") +
                                  (plus ? "plus" : "minus"),
                              "log-transform-keystone", std::arg(rhs), std::arg(lhs), 1e-4);
            }
        }
    } else {
        rep.check_rel(p + "kernel.at_zero", "kernel-at-zero", kernel.at_zero(1.0),
                      kernel.value(1.0, 0.0), 1e-8, /*formal=*/true);
        rep.check_rel(p + "kernel.at_zero.t=2", "kernel-at-zero", kernel.at_zero(2.0),
                      kernel.value(2.0, 0.0), 1e-8, /*formal=*/true);
    }
    return rep;
}

// -----------------------------------------------------------------------
// Transform-stack checks per order.
// -----------------------------------------------------------------------
ValidationReport transform_checks(const RootSystem& rs, const QuadratureSpec& spec) {
    ValidationReport rep;
    const std::string p = order_tag(rs);
    const int N = rs.order();
    const bool odd = rs.params().formal_odd;
    const double fj = rs.n_plus() / static_cast<double>(N);
    const double fk = rs.n_minus() / static_cast<double>(N);

    // level 1: closed reductions
    for (double lambda : {0.7, 1.5})
        for (double nu : {0.5, 2.0}) {
            const cplx e = transforms::triple_transform(rs, lambda, 0.0, nu);
            rep.check_rel(p + "l1.mu_zero.l=" + std::to_string(lambda) +
                              ".n=" + std::to_string(nu),
                          "triple-transform-reduction",
                          std::pow(lambda, -fk) * std::pow(lambda + nu, -fj), e.real(), 1e-12);
        }
    rep.check_rel(p + "l1.resolvent", "triple-transform-reduction", 1.0 / 1.3,
                  transforms::triple_transform(rs, 1.3, 0.0, 0.0).real(), 1e-14);

    // factorization identity on a small grid
    {
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0})
            for (double mu : {-1.0, 0.5, 2.0})
                for (double nu : {0.5, 1.0, 3.0}) {
                    const cplx direct = transforms::triple_transform(rs, lambda, mu, nu);
                    const cplx viafac =
                        transforms::spitzer_difference_quotient(rs, lambda, mu, nu);
                    worst = std::max(worst, std::abs(direct - viafac) / std::abs(direct));
                }
        rep.check_abs(p + "l1.factorization_grid", "factorization-identity", 0.0, worst,
                      1e-12);
    }
    {
        // numerator form of the factors
        const double lambda = 1.2, mu = 0.8, nu = 0.9;
        const auto f = transforms::spitzer_factors(rs, lambda, mu, nu);
        const cplx denom_inv = transforms::triple_transform(rs, lambda, mu, nu);
        const cplx imu(0.0, mu);
        const cplx top = lambda - static_cast<double>(rs.kappa()) * std::pow(imu, N);
        rep.check_abs(p + "l1.factor_numerator", "factorization-identity",
                      std::abs(top * denom_inv), std::abs(f.plus), 1e-12);
        const auto f0 = transforms::spitzer_factors(rs, lambda, mu, 0.0);
        rep.check_abs(p + "l1.factors_at_nu0", "factorization-identity", 2.0,
                      std::abs(f0.plus) + std::abs(f0.minus), 1e-14);
        const cplx guard = transforms::spitzer_difference_quotient(rs, lambda, mu, 1e-8);
        rep.check_rel(p + "l1.quotient_guard", "factorization-identity",
                      std::abs(transforms::triple_transform(rs, lambda, mu, 0.0)),
                      std::abs(guard), 1e-6);
    }

    // level 2: form equivalence, branch continuity, marginals
    {
        const double lambda = 1.0, nu = 1.0;
        for (double x : {-1.2, -0.4, 0.0, 0.3, 1.5})
            rep.check_abs(p + "l2.form_equivalence.x=" + std::to_string(x),
                          "mu-inversion-forms", transforms::level2_density(rs, lambda, nu, x),
                          transforms::level2_density_alt(rs, lambda, nu, x), 1e-8);
        const double left = transforms::level2_density(rs, lambda, nu, -1e-12);
        const double right = transforms::level2_density(rs, lambda, nu, 1e-12);
        rep.check_abs(p + "l2.branch_continuity", "mu-inversion-forms", left, right, 1e-8);
        rep.check_abs(p + "l2.at_zero_closed", "mu-inversion-forms",
                      transforms::level2_at_zero(rs, lambda, nu),
                      transforms::level2_density(rs, lambda, nu, 0.0), 1e-10);

        const auto m = transforms::level2_marginals(rs, lambda, nu);
        rep.check_abs(p + "l2.marginal_sum", "mu-inversion-marginals", m.total,
                      m.neg + m.pos, 1e-14);
        // numeric x-integrations of the density against the closed masses
        const double rl = std::pow(lambda, 1.0 / N), ra = std::pow(lambda + nu, 1.0 / N);
        double min_neg = 1.0, min_pos = 1.0;
        for (int k = 0; k < rs.n_minus(); ++k)
            min_neg = std::min(min_neg, -rs.minus_root(k).real() * rl);
        for (int j = 0; j < rs.n_plus(); ++j)
            min_pos = std::min(min_pos, rs.plus_root(j).real() * ra);
        auto fneg = [&](double x) -> cplx {
            return transforms::level2_density(rs, lambda, nu, x);
        };
        const double Xn = spec.decay_budget / min_neg, Xp = spec.decay_budget / min_pos;
        const double num_neg = quad::integrate(fneg, -Xn, 0.0, spec).value.real();
        const double num_pos = quad::integrate(fneg, 0.0, Xp, spec).value.real();
        rep.check_rel(p + "l2.mass_minus_numeric", "mu-inversion-marginals", m.neg, num_neg,
                      1e-6);
        rep.check_rel(p + "l2.mass_plus_numeric", "mu-inversion-marginals", m.pos, num_pos,
                      1e-6);
        if (N == 2)
            rep.check_abs(p + "l2.mass_minus_closed", "mu-inversion-marginals",
                          std::sqrt(2.0) - 1.0, m.neg, 1e-14);
    }

    // level 3: form equivalence and branch continuity
    {
        const double lambda = 1.0, s = 0.6;
        for (double x : {-1.1, -0.3, 0.0})
            rep.check_abs(p + "l3.form_equivalence.x=" + std::to_string(x),
                          "nu-inversion-forms",
                          transforms::level3_density(rs, lambda, s, x, spec),
                          transforms::level3_density_alt(rs, lambda, s, x, spec), 1e-8, odd);
        for (double x : {0.4, 1.2})
            rep.check_abs(p + "l3.form_equivalence.x=" + std::to_string(x),
                          "nu-inversion-forms",
                          transforms::level3_density(rs, lambda, s, x, spec),
                          transforms::level3_density_alt(rs, lambda, s, x, spec), 1e-8, odd);
        if (rs.n_plus() >= 2) {
            // the convolution branch admits x = 0 directly; compare against the
            // finite-sum branch
            const double via_sum = transforms::level3_density(rs, lambda, s, 0.0, spec);
            const double via_conv = transforms::level3_density(rs, lambda, s, 1e-9, spec);
            rep.check_abs(p + "l3.branch_continuity", "nu-inversion-forms", via_sum, via_conv,
                          1e-6, odd);
        }
    }

    // level 4: primary against generic, continuity, positivity
    {
        const double t = 1.0, s = 0.4;
        const std::vector<double> xs =
            N <= 4 ? std::vector<double>{-0.8, -0.2, 0.3, 1.0} : std::vector<double>{-0.5, 0.5};
        for (double x : xs)
            rep.check_abs(p + "l4.form_equivalence.x=" + std::to_string(x),
                          "lambda-inversion-forms",
                          transforms::level4_density(rs, t, s, x, spec),
                          transforms::level4_density_generic(rs, t, s, x, spec), 1e-8, odd);
        rep.check_abs(p + "l4.branch_continuity", "lambda-inversion-forms",
                      transforms::level4_density(rs, t, s, -1e-12, spec),
                      transforms::level4_density(rs, t, s, 1e-12, spec), 1e-8, odd);
        if (!odd) {
            double most_negative = 0.0;
            for (double sf : {0.2, 0.5, 0.8})
                for (double x = -2.0; x <= 2.01; x += 0.5)
                    most_negative = std::min(
                        most_negative, transforms::level4_density(rs, t, sf * t, x, spec));
            rep.check_abs(p + "l4.positivity", "joint-density-positivity", 0.0,
                          std::min(0.0, most_negative + 1e-9), 1e-30);
        }
    }

    // order-2 closed regressions
    if (N == 2) {
        const double lambda = 1.0, nu = 1.0;
        for (double x : {0.0, 0.4, 1.3}) {
            const double closed =
                std::exp(-std::sqrt(lambda + nu) * x) /
                (std::sqrt(lambda) + std::sqrt(lambda + nu));
            rep.check_abs(p + "l2.closed_regression.x=" + std::to_string(x),
                          "order2-closed-forms", closed,
                          transforms::level2_density(rs, lambda, nu, x), 1e-12);
        }
        const double s = 0.6;
        for (double x : {-1.0, -0.2}) {
            const double closed =
                (std::exp(-lambda * s) / std::sqrt(M_PI * s) -
                 std::sqrt(lambda) * std::erfc(std::sqrt(lambda * s))) *
                std::exp(std::sqrt(lambda) * x);
            rep.check_abs(p + "l3.closed_regression.x=" + std::to_string(x),
                          "order2-closed-forms", closed,
                          transforms::level3_density(rs, lambda, s, x, spec), 1e-10);
        }
    }

    // sojourn marginal identities
    {
        const double t = 1.0, s = 0.35;
        const auto [mn, mp] = transforms::sojourn_density_signed(rs, t, s);
        rep.check_abs(p + "marginal.split_sum", "sojourn-marginals",
                      transforms::sojourn_density(rs, t, s), mn + mp, 1e-14, odd);
    }

    return rep;
}

// -----------------------------------------------------------------------
// Rotated-kernel Laplace checks per order.
// -----------------------------------------------------------------------
ValidationReport kernel_transform_checks(const RootSystem& rs, const QuadratureSpec& spec) {
    ValidationReport rep;
    const std::string p = order_tag(rs);
    const int N = rs.order();

    for (int j = 0; j < rs.n_plus(); ++j) {
        for (int m = -2; m <= N - 1; ++m) {
            const auto pr = special::laplace_check_kernel(rs, j, m, 1.4, 0.5, spec);
            rep.check_rel(p + "ik.laplace.j=" + std::to_string(j) + ".m=" + std::to_string(m),
                          "kernel-laplace-transform", std::abs(pr.rhs), std::abs(pr.lhs),
                          1e-6);
        }
        for (int m = 1; m <= N - 1; ++m) {
            const auto pr = special::laplace_check_kernel(rs, j, m, 2.0, 0.0, spec);
            rep.check_rel(p + "ik.laplace_origin.j=" + std::to_string(j) +
                              ".m=" + std::to_string(m),
                          "kernel-laplace-transform", std::abs(pr.rhs), std::abs(pr.lhs),
                          1e-6);
        }
    }

    // closed dispatch against the generic rotated quadrature
    if (N <= 4) {
        for (int j = 0; j < rs.n_plus(); ++j)
            for (double tau : {0.5, 1.5})
                for (double x : {0.2, 1.0}) {
                    const int m = N == 2 ? 0 : (N == 3 ? 1 : 1);
                    const cplx closed = special::inversion_kernel(rs, j, m, tau, x, spec);
                    const cplx generic =
                        special::inversion_kernel_generic(rs, j, m, tau, x, spec);
                    rep.check_abs(p + "ik.closed_vs_generic.j=" + std::to_string(j) +
                                      ".tau=" + std::to_string(tau) + ".x=" + std::to_string(x),
                                  "kernel-closed-forms", std::abs(closed), std::abs(generic),
                                  1e-8);
                    rep.check_abs(p + "ik.closed_vs_generic_im.j=" + std::to_string(j) +
                                      ".tau=" + std::to_string(tau) + ".x=" + std::to_string(x),
                                  "kernel-closed-forms", closed.imag(), generic.imag(), 1e-8);
                }
        if (N == 3) {
            for (double tau : {0.5, 1.5})
                for (double x : {0.2, 1.0}) {
                    const cplx closed = special::inversion_kernel(rs, 0, 0, tau, x, spec);
                    const cplx generic =
                        special::inversion_kernel_generic(rs, 0, 0, tau, x, spec);
                    rep.check_abs(p + "ik.closed_vs_generic.m0.tau=" + std::to_string(tau) +
                                      ".x=" + std::to_string(x),
                                  "kernel-closed-forms", std::abs(closed), std::abs(generic),
                                  1e-8);
                }
        }
    }

    // value at the origin: tau^{m/N-1} / Gamma(m/N)
    for (int m = 1; m <= N - 1; ++m) {
        const double tau = 0.8;
        const double closed = std::pow(tau, static_cast<double>(m) / N - 1.0) /
                              std::tgamma(static_cast<double>(m) / N);
        const cplx numeric = special::inversion_kernel(rs, 0, m, tau, 0.0, spec);
        rep.check_rel(p + "ik.origin.m=" + std::to_string(m), "kernel-at-origin", closed,
                      numeric.real(), 1e-9);
        rep.check_abs(p + "ik.origin_imag.m=" + std::to_string(m), "kernel-at-origin", 0.0,
                      numeric.imag(), 1e-9);
    }

    return rep;
}

}  // namespace

std::pair<cplx, cplx> log_transform_identity(const RootSystem& rs, const HeatKernel& kernel,
                                             double lambda, double mu, bool plus_side,
                                             const QuadratureSpec& spec) {
    const int N = rs.order();
    // width where p(1; .) has decayed
    double W = 6.0;
    {
        int quiet = 0;
        while (quiet < 3 && W < 80.0) {
            quiet = std::abs(kernel.value(1.0, W)) < 1e-13 ? quiet + 1 : 0;
            W += 0.5;
        }
    }
    auto moment = [&](double c) -> cplx {
        auto f = [&](double w) -> cplx {
            return (std::exp(cplx(0.0, c * w)) - 1.0) * kernel.value(1.0, w);
        };
        const double period = c != 0.0 ? 2.0 * M_PI / std::abs(c) : 0.0;
        return quad::integrate_paneled(f, 0.0, W, spec, period > 0 ? 0.5 * period : 0.0).value;
    };
    const double sgn = plus_side ? 1.0 : -1.0;
    auto outer = [&](double v) -> cplx {
        return std::exp(-lambda * std::pow(v, N)) * moment(sgn * mu * v) / v;
    };
    const double V = std::pow(spec.decay_budget / lambda, 1.0 / N);
    QuadratureSpec os = spec;
    os.abs_tol = std::max(spec.abs_tol, 1e-8);
    os.rel_tol = std::max(spec.rel_tol, 1e-8);
    const cplx lhs = static_cast<double>(N) * quad::integrate(outer, 0.0, V, os).value;

    cplx rhs = 0.0;
    const double rl = std::pow(lambda, 1.0 / N);
    const int count = plus_side ? rs.n_plus() : rs.n_minus();
    for (int i = 0; i < count; ++i) {
        const cplx th = plus_side ? rs.plus_root(i) : rs.minus_root(i);
        rhs += std::log(rl / (rl - cplx(0.0, mu) * th));
    }
    return {lhs, rhs};
}

double level4_halfline_mass(const RootSystem& rs, double t, double s, bool negative,
                            const QuadratureSpec& spec) {
    const double X = 12.0 * std::pow(t, 1.0 / rs.order()) + 2.0;
    Level4Profile prof(rs, t, s, negative, X, spec);
    auto f = [&](double x) -> cplx { return prof.value(x); };
    QuadratureSpec xs = spec;
    xs.abs_tol = std::max(spec.abs_tol, 1e-9);
    xs.rel_tol = std::max(spec.rel_tol, 1e-9);
    const auto r = negative ? quad::integrate(f, -X, 0.0, xs) : quad::integrate(f, 0.0, X, xs);
    return r.value.real();
}

double level4_normalization(const RootSystem& rs, double t, const QuadratureSpec& spec) {
    // s = t sin^2(phi) absorbs both endpoint singularities of the s-marginal
    auto g = [&](double phi) -> cplx {
        const double s = t * std::sin(phi) * std::sin(phi);
        const double mass = level4_halfline_mass(rs, t, s, true, spec) +
                            level4_halfline_mass(rs, t, s, false, spec);
        return mass * t * std::sin(2.0 * phi);
    };
    QuadratureSpec os = spec;
    os.abs_tol = 2e-5;
    os.rel_tol = 2e-5;
    os.max_panels = 400;
    return quad::integrate(g, 0.0, 0.5 * M_PI, os).value.real();
}

namespace {

// int_0^t s^{a-1} (t-s)^{b-1} w(s) ds with power substitutions at both ends
double beta_weighted_integral(const std::function<double(double)>& w, double t, double a,
                              double b, const QuadratureSpec& spec) {
    auto f = [&](double s) -> cplx { return w(s); };
    quad::QuadResult r = quad::integrate_left_power(f, 0.5 * t, std::min(a, 1.0), spec);
    r += quad::integrate_right_power(f, 0.5 * t, t, std::min(b, 1.0), spec);
    return r.value.real();
}

}  // namespace

ValidationReport run_ladder(const RootSystem& rs, double t, const QuadratureSpec& spec) {
    ValidationReport rep;
    const std::string p = order_tag(rs);
    const int N = rs.order();
    const bool odd = rs.params().formal_odd;
    const double lambda = 1.0, nu = 1.0, mu = 0.5;
    const double fj = rs.n_plus() / static_cast<double>(N);
    const double fk = rs.n_minus() / static_cast<double>(N);

    QuadratureSpec outer = spec;
    outer.abs_tol = 1e-8;
    outer.rel_tol = 1e-8;
    QuadratureSpec inner = spec;
    inner.abs_tol = std::max(spec.abs_tol, 1e-10);
    inner.rel_tol = std::max(spec.rel_tol, 1e-10);

    // L2 -> L1: Fourier transform in x against the closed triple transform
    {
        double min_neg = 1.0, min_pos = 1.0;
        const double rl = std::pow(lambda, 1.0 / N), ra = std::pow(lambda + nu, 1.0 / N);
        for (int k = 0; k < rs.n_minus(); ++k)
            min_neg = std::min(min_neg, -rs.minus_root(k).real() * rl);
        for (int j = 0; j < rs.n_plus(); ++j)
            min_pos = std::min(min_pos, rs.plus_root(j).real() * ra);
        const double X = spec.decay_budget / std::min(min_neg, min_pos);
        auto f = [&](double x) -> cplx {
            return transforms::level2_density(rs, lambda, nu, x);
        };
        const cplx numeric = quad::numeric_fourier(f, mu, outer, X);
        const cplx closed = transforms::triple_transform(rs, lambda, mu, nu);
        rep.check_rel(p + "ladder.l2_to_l1", "ladder-rungs", std::abs(closed),
                      std::abs(numeric), 1e-4, odd);
        rep.check_abs(p + "ladder.l2_to_l1_arg", "ladder-rungs", std::arg(closed),
                      std::arg(numeric), 1e-4, odd);
    }

    // L3 -> L2: Laplace transform in the sojourn variable
    {
        std::vector<double> probes{-0.3};
        if (N == 2) probes.push_back(0.25);
        for (double x : probes) {
            auto f = [&](double sv) -> cplx {
                return std::exp(-nu * sv) *
                       transforms::level3_density(rs, lambda, sv, x, inner);
            };
            const double S = spec.decay_budget / nu;
            quad::QuadResult r = quad::integrate_left_power(f, std::min(0.5, S / 4), fj, outer);
            r += quad::integrate(f, std::min(0.5, S / 4), S, outer);
            rep.check_rel(p + "ladder.l3_to_l2.x=" + std::to_string(x), "ladder-rungs",
                          transforms::level2_density(rs, lambda, nu, x), r.value.real(),
                          1e-4, odd);
        }
    }

    // L4 -> L3: Laplace transform in t, with t = s + v^N regularizing the
    // short-horizon end
    if (!odd) {
        const double s = 0.4 * t;
        for (double x : {-0.3, 0.25}) {
            auto g = [&](double v) -> cplx {
                const double tv = s + std::pow(v, N);
                return N * std::pow(v, N - 1) * std::exp(-lambda * tv) *
                       transforms::level4_density(rs, tv, s, x, inner);
            };
            const double V = std::pow(spec.decay_budget / lambda, 1.0 / N);
            QuadratureSpec vs = outer;
            vs.abs_tol = 1e-7;
            vs.rel_tol = 1e-7;
            const double numeric = quad::integrate(g, 0.0, V, vs).value.real();
            rep.check_rel(p + "ladder.l4_to_l3.x=" + std::to_string(x), "ladder-rungs",
                          transforms::level3_density(rs, lambda, s, x, inner), numeric, 1e-4);
        }
    }

    // marginal integrations of the joint density against the closed split
    for (double frac : {0.25, 0.5, 0.75}) {
        const double s = frac * t;
        const auto [closed_neg, closed_pos] = transforms::sojourn_density_signed(rs, t, s);
        rep.check_rel(p + "ladder.mass_neg.s=" + std::to_string(frac), "sojourn-split",
                      closed_neg, level4_halfline_mass(rs, t, s, true, spec), 1e-4, odd);
        rep.check_rel(p + "ladder.mass_pos.s=" + std::to_string(frac), "sojourn-split",
                      closed_pos, level4_halfline_mass(rs, t, s, false, spec), 1e-4, odd);
    }

    // Laplace-side masses: numeric x-integrals of the level-3 density
    {
        const double s = 0.4 * t;
        const double rl = std::pow(lambda, 1.0 / N);
        double min_neg = 1.0, min_pos = 1.0;
        for (int k = 0; k < rs.n_minus(); ++k)
            min_neg = std::min(min_neg, -rs.minus_root(k).real() * rl);
        for (int j = 0; j < rs.n_plus(); ++j)
            min_pos = std::min(min_pos, rs.plus_root(j).real() * rl);
        auto f = [&](double x) -> cplx {
            return transforms::level3_density(rs, lambda, s, x, inner);
        };
        const double numeric_neg =
            quad::integrate(f, -spec.decay_budget / min_neg, 0.0, outer).value.real();
        rep.check_rel(p + "ladder.l3_mass_neg", "sojourn-split",
                      transforms::sojourn_laplace_neg(rs, lambda, s), numeric_neg, 1e-4, odd);
        QuadratureSpec pos_spec = outer;
        pos_spec.abs_tol = 1e-7;
        pos_spec.rel_tol = 1e-7;
        const double numeric_pos =
            quad::integrate(f, 0.0, spec.decay_budget / min_pos, pos_spec).value.real();
        rep.check_rel(p + "ladder.l3_mass_pos", "sojourn-split",
                      transforms::sojourn_laplace_pos(rs, lambda, s), numeric_pos, 1e-4, odd);
    }

    // normalization of the joint density
    if (!odd)
        rep.check_abs(p + "ladder.normalization", "joint-density-normalization", 1.0,
                      level4_normalization(rs, t, spec), 1e-3);

    // sojourn marginal integrates to one (Beta closed form)
    {
        auto w = [&](double s) {
            return transforms::sojourn_density(rs, t, s);
        };
        rep.check_abs(p + "ladder.sojourn_normalization", "sojourn-marginals", 1.0,
                      beta_weighted_integral(w, t, fj, fk, inner), 1e-10, odd);
        auto wneg = [&](double s) {
            return transforms::sojourn_density_signed(rs, t, s).first;
        };
        rep.check_abs(p + "ladder.sojourn_neg_total", "sojourn-marginals", fk,
                      beta_weighted_integral(wneg, t, fj, 1.0, inner), 1e-10, odd);
    }

    // conditional law at x = 0 is uniform on (0, t)
    {
        HeatKernel kernel(rs.params(), spec);
        const double p0 = kernel.at_zero(t);
        for (double frac : {0.2, 0.5, 0.8})
            rep.check_abs(p + "ladder.uniform_at_origin.s=" + std::to_string(frac),
                          "conditional-uniform", 1.0,
                          transforms::level4_density(rs, t, frac * t, 0.0, inner) * t / p0,
                          1e-4, odd);
    }

    // sojourn reversal symmetry (even orders)
    if (!odd) {
        const double x = 0.7 * std::pow(t, 1.0 / N);
        rep.check_abs(p + "ladder.reversal_symmetry", "sojourn-reversal",
                      transforms::level4_density(rs, t, 0.3 * t, x, inner),
                      transforms::level4_density(rs, t, 0.7 * t, -x, inner), 1e-8);
    }

    return rep;
}

ValidationReport run_ledger(const std::vector<PseudoParams>& orders,
                            const QuadratureSpec& spec) {
    ValidationReport rep;
    rep.merge(special_function_checks(spec));
    rep.merge(quad::erfc_identity_suite(spec));

    // Entries are independent and pure; run per-order units concurrently up to
    // the cap and merge in request order, then sort. The result is identical
    // for any thread count.
    const auto policy = thread_cap() > 1 ? std::launch::async : std::launch::deferred;
    std::vector<std::future<ValidationReport>> jobs;
    jobs.reserve(orders.size());
    for (const auto& params : orders) {
        jobs.push_back(std::async(policy, [params, spec] {
            RootSystem rs(params);
            ValidationReport r;
            r.merge(verify_identities(rs));
            r.merge(kernel_checks(rs, spec));
            r.merge(transform_checks(rs, spec));
            r.merge(kernel_transform_checks(rs, spec));
            return r;
        }));
    }
    for (auto& j : jobs) rep.merge(j.get());
    rep.sort_by_name();
    return rep;
}

}  // namespace pseudoproc::validation
