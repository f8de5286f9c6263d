#include "pseudoproc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pseudoproc::quad {

namespace {

// QUADPACK dqk15 node/weight pair.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelBudget {
    int used = 0;
    int limit = 0;
    bool exhausted = false;
};

QuadResult gk_panel(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx fval[15];
    for (int i = 0; i < 7; ++i) {
        fval[i] = f(c - h * kXgk[i]);
        fval[14 - i] = f(c + h * kXgk[i]);
    }
    fval[7] = f(c);
    cplx kron{0.0, 0.0}, gauss{0.0, 0.0};
    for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fval[i] + fval[14 - i]);
    kron += kWgk[7] * fval[7];
    // Gauss points are the odd-index Kronrod abscissae.
    for (int i = 0; i < 3; ++i) gauss += kWg[i] * (fval[2 * i + 1] + fval[13 - 2 * i]);
    gauss += kWg[3] * fval[7];
    QuadResult r;
    r.value = kron * h;
    r.err_est = std::abs(kron - gauss) * std::abs(h);
    r.panels = 1;
    return r;
}

void integrate_rec(const Integrand& f, double a, double b, double tol, int depth,
                   PanelBudget& budget, QuadResult& acc) {
    if (budget.used >= budget.limit) {
        budget.exhausted = true;
        acc += gk_panel(f, a, b);
        acc.converged = false;
        return;
    }
    ++budget.used;
    QuadResult r = gk_panel(f, a, b);
    if (r.err_est <= tol || depth >= 48 || b - a < 1e-300) {
        if (r.err_est > tol) acc.converged = false;
        acc.value += r.value;
        acc.err_est += r.err_est;
        acc.panels += 1;
        return;
    }
    const double m = 0.5 * (a + b);
    integrate_rec(f, a, m, 0.5 * tol, depth + 1, budget, acc);
    integrate_rec(f, m, b, 0.5 * tol, depth + 1, budget, acc);
}

}  // namespace

QuadResult gauss_kronrod(const Integrand& f, double a, double b) {
    return gk_panel(f, a, b);
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_paneled(f, a, b, spec, 0.0);
}

QuadResult integrate_paneled(const Integrand& f, double a, double b,
                             const QuadratureSpec& spec, double max_width) {
    QuadResult out;
    if (!(b > a)) return out;
    int n_init = 1;
    if (max_width > 0.0 && (b - a) > max_width)
        n_init = static_cast<int>(std::ceil((b - a) / max_width));
    n_init = std::min(n_init, std::max(1, spec.max_panels / 2));

    // First pass: coarse estimate fixes the relative-tolerance scale.
    const double w = (b - a) / n_init;
    double scale = 0.0;
    for (int i = 0; i < n_init; ++i)
        scale += std::abs(gk_panel(f, a + i * w, a + (i + 1) * w).value);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * scale);

    PanelBudget budget{0, spec.max_panels, false};
    for (int i = 0; i < n_init; ++i)
        integrate_rec(f, a + i * w, a + (i + 1) * w, tol / n_init, 0, budget, out);
    if (budget.exhausted) out.converged = false;
    return out;
}

QuadResult integrate_left_power(const Integrand& f, double b, double gamma,
                                const QuadratureSpec& spec) {
    if (!(gamma > 0.0) || gamma > 1.0 + 1e-14)
        throw std::invalid_argument("integrate_left_power: gamma must lie in (0,1]");
    if (gamma > 1.0 - 1e-14) return integrate(f, 0.0, b, spec);
    const double inv = 1.0 / gamma;
    auto g = [&](double v) -> cplx {
        const double u = std::pow(v, inv);
        return f(u) * (inv * std::pow(v, inv - 1.0));
    };
    return integrate(g, 0.0, std::pow(b, gamma), spec);
}

QuadResult integrate_right_power(const Integrand& f_dist, double a, double b, double gamma,
                                 const QuadratureSpec& spec) {
    if (!(gamma > 0.0) || gamma > 1.0 + 1e-14)
        throw std::invalid_argument("integrate_right_power: gamma must lie in (0,1]");
    if (gamma > 1.0 - 1e-14) {
        auto g = [&](double u) -> cplx { return f_dist(b - u); };
        return integrate(g, a, b, spec);
    }
    const double inv = 1.0 / gamma;
    auto g = [&](double v) -> cplx {
        const double delta = std::pow(v, inv);
        return f_dist(delta) * (inv * std::pow(v, inv - 1.0));
    };
    return integrate(g, 0.0, std::pow(b - a, gamma), spec);
}

QuadResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec,
                                   double cutoff, double osc_period, double tail_bound) {
    const double max_width = osc_period > 0.0 ? 0.5 * osc_period : 0.0;
    QuadResult r = integrate_paneled(f, 0.0, cutoff, spec, max_width);
    r.err_est += std::abs(tail_bound);
    return r;
}

cplx numeric_laplace(const Integrand& f, double lambda, const QuadratureSpec& spec,
                     double left_gamma, double sup_hint) {
    if (!(lambda > 0.0)) throw std::invalid_argument("numeric_laplace: lambda must be > 0");
    const double sup = std::max(sup_hint, 1e-12);
    const double T = std::max(spec.decay_budget, std::log(10.0 * sup / spec.abs_tol)) / lambda;
    auto g = [&](double t) -> cplx { return std::exp(-lambda * t) * f(t); };
    if (left_gamma < 1.0 - 1e-14) {
        // Split so the power substitution acts only near the origin.
        const double split = std::min(1.0 / lambda, 0.25 * T);
        QuadResult r = integrate_left_power(g, split, left_gamma, spec);
        r += integrate(g, split, T, spec);
        return r.value;
    }
    return integrate(g, 0.0, T, spec).value;
}

cplx numeric_fourier(const Integrand& f, double mu, const QuadratureSpec& spec,
                     double cutoff) {
    auto g = [&](double x) -> cplx {
        return std::exp(cplx(0.0, mu * x)) * f(x);
    };
    const double period = mu != 0.0 ? 2.0 * M_PI / std::abs(mu) : 0.0;
    QuadResult r = integrate_paneled(g, -cutoff, 0.0, spec, period > 0 ? 0.5 * period : 0.0);
    r += integrate_paneled(g, 0.0, cutoff, spec, period > 0 ? 0.5 * period : 0.0);
    return r.value;
}

namespace {

double erfc_convolution_lhs(double lambda, double s, double x, const QuadratureSpec& spec) {
    // ∫_0^s e^{-λσ - x²/4σ} σ^{-3/2} (∫_{√(λ(s-σ))}^∞ e^{-ξ²} dξ) dσ,
    // inner integral written through Erfc.
    auto f = [&](double sig) -> cplx {
        const double tail = 0.5 * std::sqrt(M_PI) * std::erfc(std::sqrt(lambda * (s - sig)));
        return std::exp(-lambda * sig - x * x / (4.0 * sig)) * std::pow(sig, -1.5) * tail;
    };
    return integrate(f, 0.0, s, spec).value.real();
}

double sine_series_lhs(double x, double s, double t, const QuadratureSpec& spec) {
    // ∫_0^∞ ξ² sin(xξ) e^{-tξ²} (∫_0^ξ e^{su²} du) dξ
    auto inner = [&](double xi) -> double {
        auto g = [&](double u) -> cplx { return std::exp(s * u * u); };
        return integrate(g, 0.0, xi, spec).value.real();
    };
    auto f = [&](double xi) -> cplx {
        return xi * xi * std::sin(x * xi) * std::exp(-t * xi * xi) * inner(xi);
    };
    const double cutoff = std::sqrt(spec.decay_budget / (t - s));
    const double period = x != 0.0 ? 2.0 * M_PI / std::abs(x) : 0.0;
    return integrate_semi_infinite(f, spec, cutoff, period).value.real();
}

double sine_series_rhs(double x, double s, double t) {
    const double a = std::sqrt(M_PI) / 8.0 * (2.0 * t - s) / (t * t * std::pow(t - s, 1.5)) *
                     x * std::exp(-x * x / (4.0 * (t - s)));
    const double b = M_PI / (8.0 * std::sqrt(s) * std::pow(t, 1.5)) *
                     (1.0 - x * x / (2.0 * t)) * std::exp(-x * x / (4.0 * t)) *
                     std::erf(-0.5 * std::sqrt(s / (t * (t - s))) * x);
    return a - b;
}

double gauss_moment_lhs(double x, double s, double t, const QuadratureSpec& spec) {
    // Half-line Gaussian moment integrals behind the order-2 joint density.
    auto f = [&](double y) -> cplx {
        if (x <= 0.0)
            return y * (y - x) * std::exp(-y * y / (4.0 * s) - (y - x) * (y - x) / (4.0 * (t - s)));
        return y * (y + x) * std::exp(-(y + x) * (y + x) / (4.0 * s) - y * y / (4.0 * (t - s)));
    };
    const double width = 2.0 * std::sqrt(std::max(s, t - s) * spec.decay_budget) + std::abs(x);
    return integrate(f, 0.0, width, spec).value.real();
}

double gauss_moment_rhs(double x, double s, double t) {
    const double common = 2.0 * std::sqrt(M_PI) * std::pow(s * (t - s) / t, 1.5) *
                          (1.0 - x * x / (2.0 * t)) * std::exp(-x * x / (4.0 * t));
    if (x <= 0.0)
        return -2.0 * s * (t - s) * (t - s) / (t * t) * x * std::exp(-x * x / (4.0 * (t - s))) +
               common * std::erfc(-0.5 * std::sqrt(s / (t * (t - s))) * x);
    return 2.0 * s * s * (t - s) / (t * t) * x * std::exp(-x * x / (4.0 * s)) +
           common * std::erfc(0.5 * std::sqrt((t - s) / (s * t)) * x);
}

}  // namespace

ValidationReport erfc_identity_suite(const QuadratureSpec& spec) {
    ValidationReport rep;

    for (double alpha : {0.5, 1.0, 2.0}) {
        auto f = [&](double w) -> cplx {
            return std::exp(-w * w) / (w * w + alpha * alpha);
        };
        const double lhs = integrate(f, 0.0, std::sqrt(spec.decay_budget) + alpha, spec)
                               .value.real();
        const double rhs = M_PI / (2.0 * alpha) * std::exp(alpha * alpha) * std::erfc(alpha);
        rep.check_rel("erfc.lorentzian_gauss.alpha=" + std::to_string(alpha),
                      "erfc-gauss-integral", rhs, lhs, 1e-10);
    }

    {
        const struct { double lambda, s, x; } pts[] = {{1.0, 1.0, 1.0}, {2.0, 0.5, 0.7}};
        for (const auto& p : pts) {
            const double lhs = erfc_convolution_lhs(p.lambda, p.s, p.x, spec);
            const double rhs = M_PI / p.x * std::exp(std::sqrt(p.lambda) * p.x) *
                               std::erfc(p.x / (2.0 * std::sqrt(p.s)) +
                                         std::sqrt(p.lambda * p.s));
            rep.check_rel("erfc.convolution.lambda=" + std::to_string(p.lambda),
                          "erfc-convolution", rhs, lhs, 1e-8);
        }
    }

    {
        const struct { double x, s, t; } pts[] = {{-0.5, 0.3, 1.0}, {1.2, 0.6, 1.0}};
        for (const auto& p : pts) {
            rep.check_rel("erfc.sine_series.x=" + std::to_string(p.x), "sine-series-identity",
                          sine_series_rhs(p.x, p.s, p.t),
                          sine_series_lhs(p.x, p.s, p.t, spec), 1e-8);
        }
        // x = 0: both sides vanish identically.
        rep.check_abs("erfc.sine_series.x=0", "sine-series-identity", 0.0,
                      sine_series_lhs(0.0, 0.4, 1.0, spec), 1e-12);
    }

    {
        const struct { double x, s, t; } pts[] = {
            {-0.8, 0.35, 1.0}, {0.8, 0.35, 1.0}, {0.0, 0.5, 1.0}};
        for (const auto& p : pts) {
            rep.check_rel("erfc.gauss_moment.x=" + std::to_string(p.x), "gaussian-moment",
                          gauss_moment_rhs(p.x, p.s, p.t),
                          gauss_moment_lhs(p.x, p.s, p.t, spec), 1e-8);
        }
    }

    return rep;
}

}  // namespace pseudoproc::quad
