#pragma once

#include <complex>
#include <functional>

#include "pseudoproc/report.hpp"

namespace pseudoproc::quad {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;

struct QuadratureSpec {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_panels = 20000;
    double decay_budget = 40.0;  // exponential envelopes truncated at e^{-budget}
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
    int panels = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        err_est += o.err_est;
        panels += o.panels;
        converged = converged && o.converged;
        return *this;
    }
};

// Single 15-point Gauss-Kronrod panel on [a,b]; err from the embedded 7-point rule.
QuadResult gauss_kronrod(const Integrand& f, double a, double b);

// Adaptive bisection until the local error estimate meets the tolerance.
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec);

// Same, but the initial subdivision uses panels no wider than max_width
// (half-period paneling for oscillatory factors).
QuadResult integrate_paneled(const Integrand& f, double a, double b,
                             const QuadratureSpec& spec, double max_width);

// ∫_0^b f(u) du where f(u) ~ u^{gamma-1} near 0 with gamma in (0,1];
// applies the substitution u = v^{1/gamma}.
QuadResult integrate_left_power(const Integrand& f, double b, double gamma,
                                const QuadratureSpec& spec);

// ∫_a^b f(u) du where f(u) ~ (b-u)^{gamma-1} near b. The integrand is called
// with the DISTANCE to the right endpoint, f_dist(delta) = f(b - delta), so a
// singular factor delta^{gamma-1} never degrades through cancellation.
QuadResult integrate_right_power(const Integrand& f_dist, double a, double b, double gamma,
                                 const QuadratureSpec& spec);

// ∫_0^∞ f, truncated at `cutoff` chosen by the caller from the decay envelope.
// `osc_period` > 0 caps panel width; `tail_bound` is an analytic estimate of
// the discarded tail and is folded into err_est.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec,
                                   double cutoff, double osc_period = 0.0,
                                   double tail_bound = 0.0);

// ∫_0^∞ e^{-lambda t} f(t) dt. `left_gamma` < 1 declares an integrable
// u^{gamma-1} singularity of f at 0; `sup_hint` bounds |f| for the cutoff rule.
cplx numeric_laplace(const Integrand& f, double lambda, const QuadratureSpec& spec,
                     double left_gamma = 1.0, double sup_hint = 1.0);

// ∫_{-X}^{X} e^{i mu x} f(x) dx with X = cutoff (f negligible beyond).
cplx numeric_fourier(const Integrand& f, double mu, const QuadratureSpec& spec,
                     double cutoff);

// Numeric verification of the Erfc/Gaussian integral identities used by the
// order-2 closed forms (single convolution integral, sine-series identity and
// the two half-line Gaussian moment integrals).
ValidationReport erfc_identity_suite(const QuadratureSpec& spec);

}  // namespace pseudoproc::quad
