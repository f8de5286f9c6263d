#pragma once

#include <complex>

#include "pseudoproc/quadrature.hpp"
#include "pseudoproc/root_system.hpp"

namespace pseudoproc::special {

using cplx = std::complex<double>;
using quad::QuadratureSpec;

// ---------------------------------------------------------------------------
// Two-parameter Mittag-Leffler function E_{a,b}(z) = sum_r z^r / Gamma(ar+b).
// ---------------------------------------------------------------------------

enum class MlMethod { series, integral_rep, erf_closed_form, auto_select };

struct MlSpec {
    double a = 1.0;
    double b = 1.0;
    MlMethod method = MlMethod::auto_select;
};

cplx mittag_leffler(const MlSpec& spec, cplx z);

// E_{1,b} specializations. ml_one dispatches: plain series for moderate
// arguments, the integral representation on (-50,-8], and the divergent
// asymptotic expansion (optimally truncated) below -50, where the series
// cancellation exceeds double precision.
double ml_one(double b, double x);
cplx ml_one_c(double b, cplx z);          // double-precision series
double ml_one_series_hp(double b, double x);  // float128 series, |x| <= 60
double ml_one_int_rep(double b, double x);    // closed integral representation
double ml_one_int_rep_shifted(double b, double x);  // the b>1 companion form
double ml_one_tail_rep(double b, double x);   // x>0, b in (0,2) Stieltjes form
double ml_half_erf(double x);             // E_{1,1/2}(x), x >= 0, via Erf
double ml_half_half_erf(double x);        // E_{1/2,1/2}(x), any real x, via Erf

// E_{1/N, b}(z) assembled from N shifted E_{1,*} series.
cplx ml_one_over_n(int n, double b, cplx z);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a), x >= 0.
double lower_incomplete_gamma_reg(double a, double x);

// ---------------------------------------------------------------------------
// Scorer function Hi and derivative, by quadrature of the defining integral.
// Throws std::domain_error when the integrand's growth exceeds the exponent
// budget (Re z too large).
// ---------------------------------------------------------------------------
cplx airy_hi(cplx z, const QuadratureSpec& spec = {});
cplx airy_hi_prime(cplx z, const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Contour-rotated kernel pair: the function of (tau, x) whose Laplace
// transform in tau equals lambda^{-m/N} exp(-theta_j lambda^{1/N} x).
// j indexes the plus half of the root system; m <= N-1 (negatives allowed).
// Dispatches to closed forms for orders 2, 3, 4 and to the generic rotated
// quadrature otherwise.
// ---------------------------------------------------------------------------
cplx inversion_kernel(const RootSystem& rs, int j, int m, double tau, double x,
                      const QuadratureSpec& spec = {});
cplx inversion_kernel_generic(const RootSystem& rs, int j, int m, double tau, double x,
                              const QuadratureSpec& spec = {});

// Same kernel over the minus half (used by the final inversion's dual form).
cplx inversion_kernel_minus(const RootSystem& rs, int k, int m, double tau, double x,
                            const QuadratureSpec& spec = {});

// Numeric Laplace transform of the kernel against the closed right-hand side.
// Returns {lhs, rhs}. m <= 0 requires x > 0 (at x = 0 the transform only
// holds distributionally).
struct LaplacePair {
    cplx lhs;
    cplx rhs;
};
LaplacePair laplace_check_kernel(const RootSystem& rs, int j, int m, double lambda,
                                 double x, const QuadratureSpec& spec = {});

}  // namespace pseudoproc::special
