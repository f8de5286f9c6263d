#include "pseudoproc/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pseudoproc::transforms {

namespace {

constexpr double kNuGuard = 1e-6;  // below this, difference quotients cancel

void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

double root_n(double v, int n) { return std::pow(v, 1.0 / n); }

}  // namespace

double real_part_checked(cplx v, double tol) {
    if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real())))
        throw std::runtime_error("imaginary residue above the realness contract");
    return v.real();
}

cplx triple_transform(const RootSystem& rs, double lambda, double mu, double nu) {
    require_positive(lambda, "lambda");
    if (nu < 0.0) throw std::invalid_argument("nu must be >= 0");
    const int N = rs.order();
    const double ra = root_n(lambda + nu, N);
    const double rl = root_n(lambda, N);
    cplx denom = 1.0;
    for (int j = 0; j < rs.n_plus(); ++j) denom *= (ra - cplx(0.0, mu) * rs.plus_root(j));
    for (int k = 0; k < rs.n_minus(); ++k) denom *= (rl - cplx(0.0, mu) * rs.minus_root(k));
    return 1.0 / denom;
}

SpitzerFactors spitzer_factors(const RootSystem& rs, double lambda, double mu, double nu) {
    require_positive(lambda, "lambda");
    if (nu < 0.0) throw std::invalid_argument("nu must be >= 0");
    const int N = rs.order();
    const double ra = root_n(lambda + nu, N);
    const double rl = root_n(lambda, N);
    SpitzerFactors f{1.0, 1.0};
    for (int j = 0; j < rs.n_plus(); ++j) {
        const cplx imt = cplx(0.0, mu) * rs.plus_root(j);
        f.plus *= (rl - imt) / (ra - imt);
    }
    for (int k = 0; k < rs.n_minus(); ++k) {
        const cplx imt = cplx(0.0, mu) * rs.minus_root(k);
        f.minus *= (ra - imt) / (rl - imt);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Level 2
// ---------------------------------------------------------------------------

double level2_density(const RootSystem& rs, double lambda, double nu, double x) {
    require_positive(lambda, "lambda");
    require_positive(nu, "nu");
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const double ra = root_n(lambda + nu, N);
    const double rl = root_n(lambda, N);
    const double pref =
        std::pow(lambda, -(nK - 1.0) / N) * std::pow(lambda + nu, -(nJ - 1.0) / N);
    cplx sum = 0.0;
    if (x >= 0.0) {
        for (int j = 0; j < rs.n_plus(); ++j) {
            cplx inner = 0.0;
            for (int k = 0; k < rs.n_minus(); ++k)
                inner += rs.minus_weight(k) * rs.minus_root(k) /
                         (rs.minus_root(k) * rl - rs.plus_root(j) * ra);
            sum += rs.plus_weight(j) * rs.plus_root(j) * inner *
                   std::exp(-rs.plus_root(j) * ra * x);
        }
    } else {
        for (int k = 0; k < rs.n_minus(); ++k) {
            cplx inner = 0.0;
            for (int j = 0; j < rs.n_plus(); ++j)
                inner += rs.plus_weight(j) * rs.plus_root(j) /
                         (rs.minus_root(k) * rl - rs.plus_root(j) * ra);
            sum += rs.minus_weight(k) * rs.minus_root(k) * inner *
                   std::exp(-rs.minus_root(k) * rl * x);
        }
    }
    return real_part_checked(pref * sum);
}

double level2_density_alt(const RootSystem& rs, double lambda, double nu, double x) {
    require_positive(lambda, "lambda");
    require_positive(nu, "nu");
    const int N = rs.order();
    const double ra = root_n(lambda + nu, N);
    const double rl = root_n(lambda, N);
    const double gap = (ra - rl) / nu;
    cplx sum = 0.0;
    if (x >= 0.0) {
        const double ratio = root_n(lambda / (lambda + nu), N);
        for (int j = 0; j < rs.n_plus(); ++j) {
            cplx prod = 1.0;
            for (int i = 0; i < rs.n_plus(); ++i) {
                if (i == j) continue;
                prod *= (rs.plus_root(i) * ratio - rs.plus_root(j)) /
                        (rs.plus_root(i) - rs.plus_root(j));
            }
            sum += rs.plus_root(j) * prod * std::exp(-rs.plus_root(j) * ra * x);
        }
        return real_part_checked(gap * sum);
    }
    const double ratio = root_n((lambda + nu) / lambda, N);
    for (int k = 0; k < rs.n_minus(); ++k) {
        cplx prod = 1.0;
        for (int i = 0; i < rs.n_minus(); ++i) {
            if (i == k) continue;
            prod *= (rs.minus_root(i) * ratio - rs.minus_root(k)) /
                    (rs.minus_root(i) - rs.minus_root(k));
        }
        sum += rs.minus_root(k) * prod * std::exp(-rs.minus_root(k) * rl * x);
    }
    return real_part_checked(-gap * sum);
}

double level2_at_zero(const RootSystem& rs, double lambda, double nu) {
    const int N = rs.order();
    return rs.plus_root_sum() * (root_n(lambda + nu, N) - root_n(lambda, N)) / nu;
}

HalfLineMasses level2_marginals(const RootSystem& rs, double lambda, double nu) {
    require_positive(lambda, "lambda");
    require_positive(nu, "nu");
    const int N = rs.order();
    const double fk = static_cast<double>(rs.n_minus()) / N;
    const double fj = static_cast<double>(rs.n_plus()) / N;
    HalfLineMasses m;
    m.neg = (std::pow((lambda + nu) / lambda, fk) - 1.0) / nu;
    m.pos = (1.0 - std::pow(lambda / (lambda + nu), fj)) / nu;
    m.total = std::pow(lambda, -fk) * std::pow(lambda + nu, -fj);
    return m;
}

// ---------------------------------------------------------------------------
// Level 3
// ---------------------------------------------------------------------------

namespace {

// x <= 0 finite sum.
double level3_neg(const RootSystem& rs, double lambda, double s, double x) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const double rl = root_n(lambda, N);
    const double ls = lambda * s;
    cplx sum = 0.0;
    for (int m = 0; m <= nK; ++m) {
        const double ml = special::ml_one((m + nJ) / static_cast<double>(N), ls);
        cplx inner = 0.0;
        for (int k = 0; k < nK; ++k)
            inner += rs.minus_weight(k) * std::pow(rs.minus_root(k), m + 1) *
                     std::exp(-rs.minus_root(k) * rl * x);
        sum += rs.plus_power_sum(-m) * std::pow(ls, static_cast<double>(m) / N) * ml * inner;
    }
    const double pref =
        -std::exp(-ls) / (std::pow(lambda, (nK - 1.0) / N) * std::pow(s, nK / static_cast<double>(N)));
    return real_part_checked(pref * sum, 1e-8);
}

// x > 0 sigma-convolution against the rotated kernel.
double level3_pos(const RootSystem& rs, double lambda, double s, double x,
                  const QuadratureSpec& spec) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const double ls = lambda * s;

    auto integrand = [&](double sigma) -> cplx {
        const double tau = s - sigma;
        const cplx lsig = std::pow(lambda * sigma, 1.0 / N);
        cplx acc = 0.0;
        for (int j = 0; j < nJ; ++j) {
            cplx coef = 0.0;
            for (int k = 0; k < nK; ++k)
                coef += rs.plus_weight(j) * rs.minus_weight(k) * rs.minus_root(k) *
                        special::ml_one_over_n(
                            N, 1.0 / N, rs.minus_root(k) / rs.plus_root(j) * lsig);
            acc += coef * special::inversion_kernel(rs, j, nJ - 1, tau, x, spec);
        }
        return std::pow(sigma, 1.0 / N - 1.0) * acc;
    };

    const double half = 0.5 * s;
    quad::QuadResult left = quad::integrate_left_power(integrand, half, 1.0 / N, spec);
    quad::QuadResult right;
    if (nJ >= 2) {
        right = quad::integrate_right_power(integrand, half, s, (nJ - 1.0) / N, spec);
    } else {
        right = quad::integrate(integrand, half, s, spec);
    }
    const cplx total = left.value + right.value;
    const double pref = -std::exp(-ls) * std::pow(lambda, -(nK - 1.0) / N);
    return real_part_checked(pref * total, 1e-8);
}

// Alternate x > 0 regrouping through Phi_m.
double level3_pos_alt(const RootSystem& rs, double lambda, double s, double x,
                      const QuadratureSpec& spec) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();

    auto phi = [&](int m, double tau) -> cplx {
        cplx acc = 0.0;
        for (int j = 0; j < nJ; ++j)
            acc += rs.plus_weight(j) / std::pow(rs.plus_root(j), m - 1) *
                   special::inversion_kernel(rs, j, nJ - 1, tau, x, spec);
        return acc;
    };

    cplx total = 0.0;
    for (int m = nK; m <= N; ++m) {
        const double bm = static_cast<double>(m) / N;
        auto f = [&](double sigma) -> cplx {
            return std::pow(sigma, bm - 1.0) * special::ml_one(bm, lambda * sigma) *
                   phi(m, s - sigma);
        };
        const double half = 0.5 * s;
        quad::QuadResult r = quad::integrate_left_power(f, half, std::min(bm, 1.0), spec);
        if (nJ >= 2)
            r += quad::integrate_right_power(f, half, s, (nJ - 1.0) / N, spec);
        else
            r += quad::integrate(f, half, s, spec);
        total += rs.minus_power_sum(m) * std::pow(lambda, (m - nK) / static_cast<double>(N)) *
                 r.value;
    }
    return real_part_checked(-std::exp(-lambda * s) * total, 1e-8);
}

// Alternate x <= 0 form through E_{1/N, #J/N}.
double level3_neg_alt(const RootSystem& rs, double lambda, double s, double x) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const double rl = root_n(lambda, N);
    const cplx lsig = std::pow(lambda * s, 1.0 / N);
    cplx sum = 0.0;
    for (int j = 0; j < nJ; ++j)
        for (int k = 0; k < nK; ++k)
            sum += rs.plus_weight(j) * rs.minus_weight(k) * rs.minus_root(k) *
                   special::ml_one_over_n(N, nJ / static_cast<double>(N),
                                          rs.minus_root(k) / rs.plus_root(j) * lsig) *
                   std::exp(-rs.minus_root(k) * rl * x);
    const double pref = -std::exp(-lambda * s) /
                        (std::pow(lambda, (nK - 1.0) / N) * std::pow(s, nK / static_cast<double>(N)));
    return real_part_checked(pref * sum, 1e-8);
}

}  // namespace

double level3_density(const RootSystem& rs, double lambda, double s, double x,
                      const QuadratureSpec& spec) {
    require_positive(lambda, "lambda");
    require_positive(s, "s");
    // At x = 0 both branches provably agree; the x <= 0 sum is the
    // well-conditioned one (for a single plus root the convolution form
    // degenerates to a boundary mass at sigma = s).
    if (x <= 0.0) return level3_neg(rs, lambda, s, x);
    return level3_pos(rs, lambda, s, x, spec);
}

double level3_density_alt(const RootSystem& rs, double lambda, double s, double x,
                          const QuadratureSpec& spec) {
    require_positive(lambda, "lambda");
    require_positive(s, "s");
    if (x <= 0.0) return level3_neg_alt(rs, lambda, s, x);
    return level3_pos_alt(rs, lambda, s, x, spec);
}

double sojourn_laplace_neg(const RootSystem& rs, double lambda, double s) {
    const int N = rs.order();
    const double ls = lambda * s;
    return std::exp(-ls) * std::pow(ls, -rs.n_minus() / static_cast<double>(N)) *
               special::ml_one(rs.n_plus() / static_cast<double>(N), ls) -
           1.0;
}

double sojourn_laplace_pos(const RootSystem& rs, double lambda, double s) {
    const int N = rs.order();
    const double ls = lambda * s;
    const double fj = rs.n_plus() / static_cast<double>(N);
    return 1.0 - std::pow(ls, fj) * std::exp(-ls) * special::ml_one(fj + 1.0, ls);
}

// ---------------------------------------------------------------------------
// Level 4
// ---------------------------------------------------------------------------

namespace {

void require_interior(double t, double s) {
    if (!(t > 0.0) || !(s > 0.0) || !(s < t))
        throw std::domain_error("require 0 < s < t");
}

// One xi-integral of the final inversion: xi^{power} exp(-decay xi^N)
// kernel(x xi) E_{1,b}(-mix xi^N), truncated where the decaying exponential
// spends the budget against the worst kernel growth rate.
cplx level4_moment(int N, int power, double decay, double mix, double b, double x,
                   double kernel_growth, const std::function<cplx(double)>& kernel,
                   const QuadratureSpec& spec) {
    const double budget = spec.decay_budget + 15.0;
    double hi = std::pow(budget / decay, 1.0 / N) + 1.0;
    if (kernel_growth > 0.0) {
        auto g = [&](double xi) {
            return decay * std::pow(xi, N) - kernel_growth * xi - budget;
        };
        while (g(hi) < 0.0) hi *= 1.5;
    }
    auto f = [&](double xi) -> cplx {
        return std::pow(xi, power) * std::exp(-decay * std::pow(xi, N)) * kernel(x * xi) *
               special::ml_one(b, -mix * std::pow(xi, N));
    };
    const double period = x != 0.0 ? 2.0 * M_PI / std::abs(x) : 0.0;
    return quad::integrate_semi_infinite(f, spec, hi, period).value;
}

double level4_generic_neg(const RootSystem& rs, double t, double s, double x,
                          const QuadratureSpec& spec) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const cplx rot = std::polar(1.0, M_PI / N);
    cplx total = 0.0;
    for (int m = 0; m <= nK; ++m) {
        const cplx ph = std::polar(1.0, -(nK - m - 1) * M_PI / N);
        auto kern = [&](double z) -> cplx {
            cplx a = 0.0, b2 = 0.0;
            for (int k = 0; k < nK; ++k) {
                const cplx w = rs.minus_weight(k) * std::pow(rs.minus_root(k), m + 1);
                a += w * std::exp(-rs.minus_root(k) * rot * z);
                b2 += w * std::exp(-rs.minus_root(k) * std::conj(rot) * z);
            }
            return ph * a - std::conj(ph) * b2;
        };
        // |e^{-theta rot z}| for z <= 0 is bounded by e^{|Re(theta rot)| |z|}.
        double growth = 0.0;
        for (int k = 0; k < nK; ++k)
            growth = std::max(growth,
                              std::max((rs.minus_root(k) * rot).real(),
                                       (rs.minus_root(k) * std::conj(rot)).real()) *
                                  (-x));
        const double b = (m + nJ) / static_cast<double>(N);
        total += rs.plus_power_sum(-m) * std::pow(s, (m - nK) / static_cast<double>(N)) *
                 level4_moment(N, m + nJ, t - s, s, b, x, std::max(0.0, growth), kern, spec);
    }
    return real_part_checked(cplx(0.0, -N / (2.0 * M_PI)) * total);
}

double level4_generic_pos(const RootSystem& rs, double t, double s, double x,
                          const QuadratureSpec& spec) {
    const int N = rs.order();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const cplx rot = std::polar(1.0, M_PI / N);
    cplx total = 0.0;
    for (int m = 0; m <= nJ; ++m) {
        const cplx ph = std::polar(1.0, -(nJ - m - 1) * M_PI / N);
        auto kern = [&](double z) -> cplx {
            cplx a = 0.0, b2 = 0.0;
            for (int j = 0; j < nJ; ++j) {
                const cplx w = rs.plus_weight(j) * std::pow(rs.plus_root(j), m + 1);
                a += w * std::exp(-rs.plus_root(j) * rot * z);
                b2 += w * std::exp(-rs.plus_root(j) * std::conj(rot) * z);
            }
            return ph * a - std::conj(ph) * b2;
        };
        double growth = 0.0;
        for (int j = 0; j < nJ; ++j)
            growth = std::max(growth,
                              std::max(-(rs.plus_root(j) * rot).real(),
                                       -(rs.plus_root(j) * std::conj(rot)).real()) *
                                  x);
        const double b = (m + nK) / static_cast<double>(N);
        total += rs.minus_power_sum(-m) *
                 std::pow(t - s, (m - nJ) / static_cast<double>(N)) *
                 level4_moment(N, m + nK, s, t - s, b, x, std::max(0.0, growth), kern, spec);
    }
    return real_part_checked(cplx(0.0, N / (2.0 * M_PI)) * total);
}

// Real trigonometric kernel tables for orders 2, 3, 4 (the closed simplified
// forms of the complex kernels above).
struct RealTerm {
    double coef;          // multiplies the integral
    int power;            // xi power
    double decay;         // exponential rate in front
    double mix;           // Mittag-Leffler rate; 0 means no factor
    double b;             // Mittag-Leffler second parameter
    std::function<double(double)> kernel;
    double growth;        // kernel growth rate per unit xi (for the cutoff)
};

double eval_real_terms(const RootSystem& rs, const std::vector<RealTerm>& terms, double x,
                       const QuadratureSpec& spec) {
    const int N = rs.order();
    double total = 0.0;
    for (const auto& term : terms) {
        auto kern = [&](double z) -> cplx { return term.kernel(z); };
        const double b = term.mix > 0.0 ? term.b : 1.0;
        const double mix = term.mix;
        cplx v = level4_moment(N, term.power, term.decay, mix, b, x, term.growth, kern, spec);
        total += term.coef * v.real();
    }
    return total;
}

double level4_real_order2(const RootSystem& rs, double t, double s, double x,
                          const QuadratureSpec& spec) {
    std::vector<RealTerm> terms;
    if (x <= 0.0) {
        terms.push_back({1.0 / (M_PI * std::sqrt(s)), 1, t - s, s, 0.5,
                         [](double z) { return -2.0 * std::sin(z); }, 0.0});
        terms.push_back({1.0 / M_PI, 2, t, 0.0, 1.0,
                         [](double z) { return 2.0 * std::cos(z); }, 0.0});
    } else {
        terms.push_back({1.0 / (M_PI * std::sqrt(t - s)), 1, s, t - s, 0.5,
                         [](double z) { return 2.0 * std::sin(z); }, 0.0});
        terms.push_back({1.0 / M_PI, 2, t, 0.0, 1.0,
                         [](double z) { return 2.0 * std::cos(z); }, 0.0});
    }
    return eval_real_terms(rs, terms, x, spec);
}

double level4_real_order3(const RootSystem& rs, double t, double s, double x,
                          const QuadratureSpec& spec) {
    const double r3 = std::sqrt(3.0);
    const double ax = std::abs(x);
    std::vector<RealTerm> terms;
    if (rs.kappa() > 0) {
        if (x <= 0.0) {
            auto k0 = [r3](double z) {
                return std::exp(z) -
                       std::exp(-0.5 * z) * (std::cos(0.5 * r3 * z) + r3 * std::sin(0.5 * r3 * z));
            };
            auto k1 = [r3](double z) {
                return -std::exp(z) +
                       std::exp(-0.5 * z) * (std::cos(0.5 * r3 * z) - r3 * std::sin(0.5 * r3 * z));
            };
            auto k2 = [r3](double z) {
                return std::exp(z) + 2.0 * std::exp(-0.5 * z) * std::cos(0.5 * r3 * z);
            };
            const double c = r3 / (2.0 * M_PI);
            terms.push_back({c * std::pow(s, -2.0 / 3.0), 1, t - s, s, 1.0 / 3.0, k0, 0.5 * ax});
            terms.push_back({c * std::pow(s, -1.0 / 3.0), 2, t - s, s, 2.0 / 3.0, k1, 0.5 * ax});
            terms.push_back({c, 3, t, 0.0, 1.0, k2, 0.5 * ax});
        } else {
            auto j0 = [r3](double z) { return 2.0 * std::exp(-0.5 * z) * std::sin(0.5 * r3 * z); };
            auto j1 = [r3](double z) {
                return std::exp(-0.5 * z) * (r3 * std::cos(0.5 * r3 * z) - std::sin(0.5 * r3 * z));
            };
            const double c = 3.0 / (2.0 * M_PI);
            terms.push_back({c * std::pow(t - s, -1.0 / 3.0), 2, s, t - s, 2.0 / 3.0, j0, 0.0});
            terms.push_back({c, 3, t, 0.0, 1.0, j1, 0.0});
        }
    } else {
        if (x <= 0.0) {
            auto k0 = [r3](double z) { return -2.0 * std::exp(0.5 * z) * std::sin(0.5 * r3 * z); };
            auto k1 = [r3](double z) {
                return std::exp(0.5 * z) * (r3 * std::cos(0.5 * r3 * z) + std::sin(0.5 * r3 * z));
            };
            const double c = 3.0 / (2.0 * M_PI);
            terms.push_back({c * std::pow(s, -1.0 / 3.0), 2, t - s, s, 2.0 / 3.0, k0, 0.0});
            terms.push_back({c, 3, t, 0.0, 1.0, k1, 0.0});
        } else {
            auto j0 = [r3](double z) {
                return std::exp(-z) -
                       std::exp(0.5 * z) * (std::cos(0.5 * r3 * z) - r3 * std::sin(0.5 * r3 * z));
            };
            auto j1 = [r3](double z) {
                return -std::exp(-z) +
                       std::exp(0.5 * z) * (std::cos(0.5 * r3 * z) + r3 * std::sin(0.5 * r3 * z));
            };
            auto j2 = [r3](double z) {
                return std::exp(-z) + 2.0 * std::exp(0.5 * z) * std::cos(0.5 * r3 * z);
            };
            const double c = r3 / (2.0 * M_PI);
            terms.push_back({c * std::pow(t - s, -2.0 / 3.0), 1, s, t - s, 1.0 / 3.0, j0, 0.5 * ax});
            terms.push_back({c * std::pow(t - s, -1.0 / 3.0), 2, s, t - s, 2.0 / 3.0, j1, 0.5 * ax});
            terms.push_back({c, 3, t, 0.0, 1.0, j2, 0.5 * ax});
        }
    }
    return eval_real_terms(rs, terms, x, spec);
}

double level4_real_order4(const RootSystem& rs, double t, double s, double x,
                          const QuadratureSpec& spec) {
    std::vector<RealTerm> terms;
    const double c = 2.0 / M_PI;
    const double r2 = std::sqrt(2.0);
    if (x <= 0.0) {
        auto k0 = [](double z) { return std::exp(z) - std::cos(z) - std::sin(z); };
        auto k1 = [](double z) { return -std::exp(z) + std::cos(z) - std::sin(z); };
        auto k2 = [](double z) { return std::exp(z) + std::cos(z) + std::sin(z); };
        terms.push_back({c / std::sqrt(s), 2, t - s, s, 0.5, k0, 0.0});
        terms.push_back({c * r2 * std::pow(s, -0.25), 3, t - s, s, 0.75, k1, 0.0});
        terms.push_back({c, 4, t, 0.0, 1.0, k2, 0.0});
    } else {
        auto j0 = [](double z) { return std::exp(-z) - std::cos(z) + std::sin(z); };
        auto j1 = [](double z) { return -std::exp(-z) + std::cos(z) + std::sin(z); };
        auto j2 = [](double z) { return std::exp(-z) + std::cos(z) - std::sin(z); };
        terms.push_back({c / std::sqrt(t - s), 2, s, t - s, 0.5, j0, 0.0});
        terms.push_back({c * r2 * std::pow(t - s, -0.25), 3, s, t - s, 0.75, j1, 0.0});
        terms.push_back({c, 4, t, 0.0, 1.0, j2, 0.0});
    }
    return eval_real_terms(rs, terms, x, spec);
}

}  // namespace

double level4_density_generic(const RootSystem& rs, double t, double s, double x,
                              const QuadratureSpec& spec) {
    require_interior(t, s);
    return x <= 0.0 ? level4_generic_neg(rs, t, s, x, spec)
                    : level4_generic_pos(rs, t, s, x, spec);
}

double level4_density(const RootSystem& rs, double t, double s, double x,
                      const QuadratureSpec& spec) {
    require_interior(t, s);
    switch (rs.order()) {
        case 2: return level4_real_order2(rs, t, s, x, spec);
        case 3: return level4_real_order3(rs, t, s, x, spec);
        case 4: return level4_real_order4(rs, t, s, x, spec);
        default: return level4_density_generic(rs, t, s, x, spec);
    }
}

Level4Profile::Level4Profile(const RootSystem& rs, double t, double s, bool negative_side,
                             double max_abs_x, const QuadratureSpec& spec)
    : rs_(rs), negative_side_(negative_side), order_(rs.order()) {
    require_interior(t, s);
    const int N = order_;
    rot_ = std::polar(1.0, M_PI / N);
    const int n_same = negative_side ? rs.n_minus() : rs.n_plus();
    const int n_other = negative_side ? rs.n_plus() : rs.n_minus();
    const double decay = negative_side ? t - s : s;
    const double mix = negative_side ? s : t - s;

    // worst kernel growth rate per unit xi across the side's roots
    double growth = 0.0;
    for (int a = 0; a < n_same; ++a) {
        const cplx th = negative_side ? rs.minus_root(a) : rs.plus_root(a);
        const double g = negative_side
                             ? std::max((th * rot_).real(), (th * std::conj(rot_)).real())
                             : std::max(-(th * rot_).real(), -(th * std::conj(rot_)).real());
        growth = std::max(growth, g * max_abs_x);
    }
    const double budget = spec.decay_budget + 15.0;
    double cutoff = std::pow(budget / decay, 1.0 / N) + 1.0;
    if (growth > 0.0) {
        auto g = [&](double xi) { return decay * std::pow(xi, N) - growth * xi - budget; };
        while (g(cutoff) < 0.0) cutoff *= 1.5;
    }

    // composite 15-point panels: at least 48, refined to a quarter oscillation
    // period of the fastest kernel factor
    double width = cutoff / 48.0;
    if (max_abs_x > 0.0) width = std::min(width, M_PI / (2.0 * max_abs_x));
    const int panels = static_cast<int>(std::ceil(cutoff / width));
    static constexpr double kX[15] = {
        -0.991455371120812639, -0.949107912342758525, -0.864864423359769073,
        -0.741531185599394440, -0.586087235467691130, -0.405845151377397167,
        -0.207784955007898468, 0.0,
        0.207784955007898468,  0.405845151377397167,  0.586087235467691130,
        0.741531185599394440,  0.864864423359769073,  0.991455371120812639};
    static constexpr double kW[15] = {
        0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
        0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
        0.204432940075298892, 0.209482141084727828, 0.204432940075298892,
        0.190350578064785410, 0.169004726639267903, 0.140653259715525919,
        0.104790010322250184, 0.063092092629978553, 0.022935322010529225};
    const double pw = cutoff / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double c = (pnl + 0.5) * pw, hw = 0.5 * pw;
        for (int q = 0; q < 15; ++q) {
            nodes_.push_back(c + hw * kX[q]);
            gk_weights_.push_back(hw * kW[q]);
        }
    }

    for (int m = 0; m <= n_same; ++m) {
        const double b = (m + n_other) / static_cast<double>(N);
        const cplx table = negative_side ? rs.plus_power_sum(-m) : rs.minus_power_sum(-m);
        const double edge = negative_side ? std::pow(s, (m - n_same) / static_cast<double>(N))
                                          : std::pow(t - s, (m - n_same) / static_cast<double>(N));
        const double sign = negative_side ? -1.0 : 1.0;
        coef_.push_back(cplx(0.0, sign * N / (2.0 * M_PI)) * table * edge);
        phase_.push_back(std::polar(1.0, -(n_same - m - 1) * M_PI / N));
        std::vector<double> base(nodes_.size());
        for (std::size_t q = 0; q < nodes_.size(); ++q) {
            const double xi = nodes_[q];
            base[q] = std::pow(xi, m + n_other) * std::exp(-decay * std::pow(xi, N)) *
                      special::ml_one(b, -mix * std::pow(xi, N));
        }
        base_.push_back(std::move(base));
        std::vector<cplx> sw(n_same);
        for (int a = 0; a < n_same; ++a) {
            const cplx th = negative_side ? rs.minus_root(a) : rs.plus_root(a);
            const cplx w = negative_side ? rs.minus_weight(a) : rs.plus_weight(a);
            sw[a] = w * std::pow(th, m + 1);
        }
        side_weights_.push_back(std::move(sw));
    }
}

double Level4Profile::value(double x) const {
    if (negative_side_ ? x > 0.0 : x < 0.0)
        throw std::invalid_argument("x lies on the wrong side for this profile");
    const int n_same = static_cast<int>(side_weights_[0].size());
    cplx total = 0.0;
    std::vector<cplx> ea(n_same), eb(n_same);
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
        const double z = x * nodes_[q];
        for (int a = 0; a < n_same; ++a) {
            const cplx th = negative_side_ ? rs_.minus_root(a) : rs_.plus_root(a);
            ea[a] = std::exp(-th * rot_ * z);
            eb[a] = std::exp(-th * std::conj(rot_) * z);
        }
        for (std::size_t m = 0; m < coef_.size(); ++m) {
            cplx ka = 0.0, kb = 0.0;
            for (int a = 0; a < n_same; ++a) {
                ka += side_weights_[m][a] * ea[a];
                kb += side_weights_[m][a] * eb[a];
            }
            total += coef_[m] * gk_weights_[q] * base_[m][q] *
                     (phase_[m] * ka - std::conj(phase_[m]) * kb);
        }
    }
    return real_part_checked(total);
}

cplx spitzer_difference_quotient(const RootSystem& rs, double lambda, double mu, double nu) {
    // Below the guard the quotient cancels catastrophically; its analytic
    // limit is the closed triple transform itself.
    if (nu < kNuGuard) return triple_transform(rs, lambda, mu, std::max(nu, 0.0));
    const SpitzerFactors f = spitzer_factors(rs, lambda, mu, nu);
    return (f.minus - f.plus) / nu;
}

double sojourn_density(const RootSystem& rs, double t, double s) {
    require_interior(t, s);
    const int N = rs.order();
    const double fj = rs.n_plus() / static_cast<double>(N);
    const double fk = rs.n_minus() / static_cast<double>(N);
    return std::sin(fj * M_PI) / M_PI * std::pow(s, -fk) * std::pow(t - s, -fj);
}

std::pair<double, double> sojourn_density_signed(const RootSystem& rs, double t, double s) {
    require_interior(t, s);
    const int N = rs.order();
    const double fj = rs.n_plus() / static_cast<double>(N);
    const double fk = rs.n_minus() / static_cast<double>(N);
    const double neg = std::sin(fk * M_PI) / (M_PI * t) * std::pow((t - s) / s, fk);
    const double pos = std::sin(fj * M_PI) / (M_PI * t) * std::pow(s / (t - s), fj);
    return {neg, pos};
}

}  // namespace pseudoproc::transforms
