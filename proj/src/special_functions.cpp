#include "pseudoproc/special_functions.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

namespace pseudoproc::special {

namespace {

constexpr double kSeriesCutoff = 8.0;   // |x| beyond which the real series cancels too hard
constexpr double kAsymptoticCutoff = 50.0;
constexpr int kSeriesCap = 10000;

bool near_int(double x) { return std::abs(x - std::round(x)) < 1e-12; }

// Neumaier-compensated complex series for E_{1,b}; term recurrence
// t_{r+1} = t_r * z / (r + b).
cplx ml_one_series_c(double b, cplx z) {
    cplx sum = 0.0, comp = 0.0;
    cplx term = 1.0 / std::tgamma(b);
    int below = 0;
    for (int r = 0; r < kSeriesCap; ++r) {
        const cplx t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        term *= z / (r + b);
        if (std::abs(term) < 1e-17 * std::max(1e-300, std::abs(sum))) {
            if (++below >= 3) return sum + comp;
        } else {
            below = 0;
        }
    }
    throw std::runtime_error("mittag-leffler series did not converge within the term cap");
}

}  // namespace

double ml_one_series_hp(double b, double x) {
    if (std::abs(x) > 60.0)
        throw std::domain_error("high-precision series restricted to |x| <= 60");
    __float128 sum = 0, term = static_cast<__float128>(1) / tgammaq(b);
    const __float128 xq = x;
    const __float128 eps = static_cast<__float128>(1e-18) * static_cast<__float128>(1e-18);
    int below = 0;
    for (int r = 0; r < kSeriesCap; ++r) {
        sum += term;
        term *= xq / (r + b);
        if (fabsq(term) < eps * fabsq(sum)) {
            if (++below >= 3) break;
        } else {
            below = 0;
        }
    }
    return static_cast<double>(sum);
}

double ml_one_int_rep(double b, double x) {
    // E_{1,b}(x) = (1/Gamma(b)) (1 + x^{1-b} e^x int_0^x u^{b-1} e^{-u} du)   x > 0
    //            = (1/Gamma(b)) (1 - y^{1-b}     int_0^y (y-w)^{b-1} e^{-w} dw), y = -x > 0
    // (the negative branch is the e^u moment folded through w = y - u, which
    // keeps every factor bounded by 1).
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    if (x == 0.0) return 1.0 / std::tgamma(b);
    if (x > 0.0) {
        auto f = [&](double u) -> cplx { return std::pow(u, b - 1.0) * std::exp(-u); };
        const double lower = quad::integrate_left_power(f, x, std::min(b, 1.0), spec)
                                 .value.real();
        return (1.0 + std::pow(x, 1.0 - b) * std::exp(x) * lower) / std::tgamma(b);
    }
    const double y = -x;
    auto g = [&](double w) -> cplx { return std::pow(y - w, b - 1.0) * std::exp(-w); };
    const double q = std::pow(y, 1.0 - b) *
                     quad::integrate_right_power(g, 0.0, y, std::min(b, 1.0), spec)
                         .value.real();
    return (1.0 - q) / std::tgamma(b);
}

double ml_one_int_rep_shifted(double b, double x) {
    // For b in (1,2]: E_{1,b}(x) = e^x x^{-(b-1)} P(b-1, x) adjusted by sign,
    // the companion integral form of the representation pair.
    if (b <= 1.0 || b > 2.0 + 1e-12)
        throw std::domain_error("shifted representation requires b in (1,2]");
    const double alpha = b - 1.0;
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    if (x == 0.0) return 1.0 / std::tgamma(b);
    if (x > 0.0) {
        auto f = [&](double u) -> cplx { return std::pow(u, alpha - 1.0) * std::exp(-u); };
        const double lower = quad::integrate_left_power(f, x, std::min(alpha, 1.0), spec)
                                 .value.real();
        return std::exp(x) / (std::tgamma(alpha) * std::pow(x, alpha)) * lower;
    }
    const double y = -x;
    auto f = [&](double u) -> cplx { return std::pow(u, alpha - 1.0) * std::exp(u - y); };
    const double lower = quad::integrate_left_power(f, y, std::min(alpha, 1.0), spec)
                             .value.real();
    return lower / (std::tgamma(alpha) * std::pow(y, alpha));
}

double ml_one_tail_rep(double b, double x) {
    // x^{1-b} (e^x + sin(b pi)/pi int_0^inf xi^{1-b} e^{-x xi}/(xi+1) dxi), x > 0.
    if (!(x > 0.0)) throw std::domain_error("tail representation requires x > 0");
    if (!(b > 0.0) || b >= 2.0) throw std::domain_error("tail representation requires b in (0,2)");
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    auto f = [&](double xi) -> cplx {
        return std::pow(xi, 1.0 - b) * std::exp(-x * xi) / (xi + 1.0);
    };
    const double cutoff = (spec.decay_budget + 25.0) / x;
    double integral;
    if (b > 1.0) {
        integral = quad::integrate_left_power(f, cutoff, 2.0 - b, spec).value.real();
    } else {
        integral = quad::integrate(f, 0.0, cutoff, spec).value.real();
    }
    return std::pow(x, 1.0 - b) * (std::exp(x) + std::sin(b * M_PI) / M_PI * integral);
}

namespace {

double ml_one_neg_asymptotic(double b, double y) {
    // Optimally truncated divergent expansion; valid y >> 1, non-integer b.
    const double s = std::sin(M_PI * b) / M_PI;
    double sum = 0.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 26; ++k) {
        const double term = std::exp(std::lgamma(k + 1.0 - b) - k * std::log(y));
        if (term > prev) break;
        sum += term;
        prev = term;
        if (term < 1e-18 * std::max(1e-300, std::abs(sum))) break;
    }
    return -s * sum;
}

}  // namespace

double ml_one(double b, double x) {
    if (near_int(b) && std::abs(b - 1.0) < 1e-12) return std::exp(x);
    if (x >= 0.0) {
        if (x > 300.0) throw std::domain_error("mittag-leffler argument overflows the series");
        return ml_one_series_c(b, x).real();
    }
    const double y = -x;
    if (near_int(b) && std::abs(b - 2.0) < 1e-12) return (1.0 - std::exp(-y)) / y;
    if (y <= kSeriesCutoff) return ml_one_series_c(b, x).real();
    if (y <= kAsymptoticCutoff) return ml_one_int_rep(b, x);
    return ml_one_neg_asymptotic(b, y);
}

cplx ml_one_c(double b, cplx z) {
    if (z.imag() == 0.0) return ml_one(b, z.real());
    if (std::abs(z) > 30.0)
        throw std::domain_error("complex mittag-leffler series restricted to |z| <= 30");
    return ml_one_series_c(b, z);
}

cplx ml_one_over_n(int n, double b, cplx z) {
    const cplx zn = std::pow(z, n);
    cplx sum = 0.0, zp = 1.0;
    for (int m = 0; m < n; ++m) {
        sum += zp * ml_one_c(b + static_cast<double>(m) / n, zn);
        zp *= z;
    }
    return sum;
}

double ml_half_erf(double x) {
    if (x < 0.0) throw std::domain_error("erf closed form holds for x >= 0");
    return 1.0 / std::sqrt(M_PI) + std::sqrt(x) * std::exp(x) * std::erf(std::sqrt(x));
}

double ml_half_half_erf(double x) {
    // E_{1/2,1/2}(x) = E_{1,1/2}(x^2) + x e^{x^2}, the even/odd series split.
    return ml_half_erf(x * x) + x * std::exp(x * x);
}

cplx mittag_leffler(const MlSpec& spec, cplx z) {
    if (!(spec.a > 0.0) || !(spec.b > 0.0))
        throw std::invalid_argument("mittag-leffler parameters must be positive");
    const bool a_is_one = std::abs(spec.a - 1.0) < 1e-14;
    switch (spec.method) {
        case MlMethod::series: {
            if (a_is_one) return ml_one_series_c(spec.b, z);
            // generic-a series with a per-term gamma
            cplx sum = 0.0, zp = 1.0;
            int below = 0;
            for (int r = 0; r < kSeriesCap; ++r) {
                const cplx term = zp / std::tgamma(spec.a * r + spec.b);
                sum += term;
                zp *= z;
                if (std::abs(term) < 1e-17 * std::max(1e-300, std::abs(sum))) {
                    if (++below >= 3) return sum;
                } else {
                    below = 0;
                }
            }
            throw std::runtime_error("mittag-leffler series did not converge");
        }
        case MlMethod::integral_rep:
            if (!a_is_one || z.imag() != 0.0)
                throw std::domain_error("integral representation implemented for a=1, real z");
            return ml_one_int_rep(spec.b, z.real());
        case MlMethod::erf_closed_form:
            if (a_is_one && std::abs(spec.b - 0.5) < 1e-14 && z.imag() == 0.0)
                return ml_half_erf(z.real());
            if (std::abs(spec.a - 0.5) < 1e-14 && std::abs(spec.b - 0.5) < 1e-14 &&
                z.imag() == 0.0)
                return ml_half_half_erf(z.real());
            throw std::domain_error("erf closed form covers (a,b) in {(1,1/2),(1/2,1/2)}");
        case MlMethod::auto_select:
        default: {
            if (a_is_one) return ml_one_c(spec.b, z);
            const double inv = 1.0 / spec.a;
            if (near_int(inv) && inv > 1.0)
                return ml_one_over_n(static_cast<int>(std::round(inv)), spec.b, z);
            MlSpec s2 = spec;
            s2.method = MlMethod::series;
            return mittag_leffler(s2, z);
        }
    }
}

double lower_incomplete_gamma_reg(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("invalid incomplete gamma arguments");
    if (x == 0.0) return 0.0;
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    auto f = [&](double u) -> cplx { return std::pow(u, a - 1.0) * std::exp(-u); };
    const double upper = std::min(x, a + 60.0 + 10.0 * std::sqrt(a));
    const double val = quad::integrate_left_power(f, upper, std::min(a, 1.0), spec).value.real();
    return val / std::tgamma(a);
}

namespace {

// cutoff where xi^3/3 - re_z*xi first exceeds the budget
double hi_cutoff(double re_z, double budget) {
    double lo = 0.0, hi = std::cbrt(3.0 * budget) + 2.0 * std::sqrt(std::max(0.0, re_z)) + 2.0;
    auto g = [&](double xi) { return xi * xi * xi / 3.0 - re_z * xi - budget; };
    while (g(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
}

cplx hi_moment(cplx z, int power, const QuadratureSpec& spec) {
    const double re = z.real();
    if (re > 0.0 && std::pow(re, 1.5) > 600.0)
        throw std::domain_error("scorer integrand growth exceeds the exponent budget");
    const double cutoff = hi_cutoff(re, spec.decay_budget + 20.0);
    const double period = z.imag() != 0.0 ? 2.0 * M_PI / std::abs(z.imag()) : 0.0;
    auto f = [&](double xi) -> cplx {
        const cplx e = std::exp(-xi * xi * xi / 3.0 + z * xi);
        return power == 0 ? e : xi * e;
    };
    auto r = quad::integrate_semi_infinite(f, spec, cutoff, period);
    if (!r.converged) throw std::runtime_error("scorer quadrature did not converge");
    return r.value / M_PI;
}

}  // namespace

cplx airy_hi(cplx z, const QuadratureSpec& spec) { return hi_moment(z, 0, spec); }
cplx airy_hi_prime(cplx z, const QuadratureSpec& spec) { return hi_moment(z, 1, spec); }

namespace {

// One rotated semi-infinite integral of (set-of-rotations) type:
// int_0^inf xi^{N-m-1} exp(-tau xi^N - c x xi) dxi for complex c with
// Re(c) >= 0 up to roundoff (oscillation allowed).
cplx rotated_moment(int N, int m, double tau, cplx cx, const QuadratureSpec& spec) {
    const int p = N - m - 1;
    const double re = cx.real();
    const double cutoff = [&] {
        // envelope exp(-tau xi^N + max(0,-re) xi); bisect for the budget point
        const double gain = std::max(0.0, -re);
        double hi = std::pow((spec.decay_budget + 30.0) / tau, 1.0 / N) + 1.0;
        auto g = [&](double xi) {
            return tau * std::pow(xi, N) - gain * xi - (spec.decay_budget + 30.0) -
                   std::max(0.0, p * std::log(std::max(xi, 1.0)));
        };
        while (g(hi) < 0.0) hi *= 1.5;
        return hi;
    }();
    const double period = cx.imag() != 0.0 ? 2.0 * M_PI / std::abs(cx.imag()) : 0.0;
    auto f = [&](double xi) -> cplx {
        return std::pow(xi, p) * std::exp(-tau * std::pow(xi, N) - cx * xi);
    };
    auto r = quad::integrate_semi_infinite(f, spec, cutoff, period);
    if (!r.converged) throw std::runtime_error("rotated kernel quadrature did not converge");
    return r.value;
}

cplx kernel_from_root(int N, cplx theta, int m, double tau, double x,
                      const QuadratureSpec& spec) {
    const cplx rot = std::polar(1.0, M_PI / N);
    const cplx ph = std::polar(1.0, -m * M_PI / N);
    const cplx a = rotated_moment(N, m, tau, theta * rot * x, spec);
    const cplx b = rotated_moment(N, m, tau, theta * std::conj(rot) * x, spec);
    return cplx(0.0, N / (2.0 * M_PI)) * (ph * a - std::conj(ph) * b);
}

// Order-3 closed form through the Scorer function: the two xi-moments
// int xi^p exp(-tau xi^3 + z xi) dxi collapse to Hi and Hi'.
cplx order3_moment(int p, double tau, cplx z, const QuadratureSpec& spec) {
    const double s = std::cbrt(3.0 * tau);
    const cplx arg = z / s;
    if (p == 2) return M_PI * z / (s * s * s * s) * airy_hi(arg, spec) + 1.0 / (3.0 * tau);
    return M_PI / (s * s) * airy_hi_prime(arg, spec);
}

cplx kernel_order3(int N, cplx theta, int m, double tau, double x,
                   const QuadratureSpec& spec) {
    const cplx rot = std::polar(1.0, M_PI / N);
    const cplx ph = std::polar(1.0, -m * M_PI / N);
    const cplx a = order3_moment(N - m - 1, tau, -theta * rot * x, spec);
    const cplx b = order3_moment(N - m - 1, tau, -theta * std::conj(rot) * x, spec);
    return cplx(0.0, N / (2.0 * M_PI)) * (ph * a - std::conj(ph) * b);
}

// Order-4 closed form: the rotations land on the real and imaginary axes, so
// the two moments are a real-exponent integral and a cos/sin pair.
cplx kernel_order4(cplx theta, double tau, double x, const QuadratureSpec& spec) {
    const double cutoff = std::pow((spec.decay_budget + 25.0) / tau, 0.25);
    auto real_moment = [&]() -> double {
        auto f = [&](double xi) -> cplx {
            return xi * xi * std::exp(-tau * std::pow(xi, 4) - x * xi);
        };
        return quad::integrate(f, 0.0, cutoff, spec).value.real();
    };
    auto osc_moment = [&](double sign) -> cplx {
        auto fc = [&](double xi) -> cplx {
            return xi * xi * std::exp(-tau * std::pow(xi, 4)) *
                   cplx(std::cos(x * xi), sign * std::sin(x * xi));
        };
        const double period = x != 0.0 ? 2.0 * M_PI / std::abs(x) : 0.0;
        return quad::integrate_paneled(fc, 0.0, cutoff, spec, period > 0 ? 0.5 * period : 0.0)
            .value;
    };
    const cplx e4 = std::polar(1.0, M_PI / 4.0);
    // theta e^{i pi/4} and theta e^{-i pi/4} land on {1, -i} or {i, 1} for the
    // two plus-half roots; pick the assembly accordingly.
    if (std::abs(theta - std::polar(1.0, -M_PI / 4.0)) < 1e-9)
        return 2.0 / M_PI * (e4 * real_moment() + std::conj(e4) * osc_moment(+1.0));
    if (std::abs(theta - std::polar(1.0, M_PI / 4.0)) < 1e-9)
        return 2.0 / M_PI * (e4 * osc_moment(-1.0) + std::conj(e4) * real_moment());
    throw std::logic_error("order-4 closed form called with a non-plus-half root");
}

}  // namespace

cplx inversion_kernel_generic(const RootSystem& rs, int j, int m, double tau, double x,
                              const QuadratureSpec& spec) {
    if (!(tau > 0.0) || x < 0.0) throw std::invalid_argument("require tau > 0 and x >= 0");
    if (m > rs.order() - 1) throw std::invalid_argument("require m <= N-1");
    return kernel_from_root(rs.order(), rs.plus_root(j), m, tau, x, spec);
}

cplx inversion_kernel(const RootSystem& rs, int j, int m, double tau, double x,
                      const QuadratureSpec& spec) {
    if (!(tau > 0.0) || x < 0.0) throw std::invalid_argument("require tau > 0 and x >= 0");
    const int N = rs.order();
    if (m > N - 1) throw std::invalid_argument("require m <= N-1");
    if (N == 2 && m == 0)
        return x * std::exp(-x * x / (4.0 * tau)) / (2.0 * std::sqrt(M_PI) * std::pow(tau, 1.5));
    if (N == 3 && (m == 0 || m == 1))
        return kernel_order3(N, rs.plus_root(j), m, tau, x, spec);
    if (N == 4 && m == 1) return kernel_order4(rs.plus_root(j), tau, x, spec);
    return inversion_kernel_generic(rs, j, m, tau, x, spec);
}

cplx inversion_kernel_minus(const RootSystem& rs, int k, int m, double tau, double x,
                            const QuadratureSpec& spec) {
    if (!(tau > 0.0) || x < 0.0) throw std::invalid_argument("require tau > 0 and x >= 0");
    return kernel_from_root(rs.order(), rs.minus_root(k), m, tau, x, spec);
}

LaplacePair laplace_check_kernel(const RootSystem& rs, int j, int m, double lambda,
                                 double x, const QuadratureSpec& spec) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (m <= 0 && x == 0.0)
        throw std::domain_error(
            "for m <= 0 the transform at x = 0 holds only distributionally");
    const int N = rs.order();
    auto f = [&](double u) -> cplx { return inversion_kernel(rs, j, m, u, x, spec); };
    const double gamma = (m >= 1 && x == 0.0) ? static_cast<double>(m) / N : 1.0;
    QuadratureSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-10);
    outer.rel_tol = std::max(spec.rel_tol, 1e-10);
    LaplacePair out;
    out.lhs = quad::numeric_laplace(f, lambda, outer, gamma, 10.0);
    out.rhs = std::pow(lambda, -static_cast<double>(m) / N) *
              std::exp(-rs.plus_root(j) * std::pow(lambda, 1.0 / N) * x);
    return out;
}

}  // namespace pseudoproc::special
