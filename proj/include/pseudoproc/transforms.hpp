#pragma once

#include <utility>

#include "pseudoproc/quadrature.hpp"
#include "pseudoproc/root_system.hpp"
#include "pseudoproc/special_functions.hpp"

namespace pseudoproc::transforms {

using cplx = std::complex<double>;
using quad::QuadratureSpec;

// Level 1: the closed triple transform
//   E(lambda, mu, nu) = 1 / (prod_J (root(lambda+nu) - i mu theta_j)
//                            prod_K (root(lambda)    - i mu theta_k)),
// evaluated in its factored form. Defined for lambda > 0, nu >= 0, mu real.
cplx triple_transform(const RootSystem& rs, double lambda, double mu, double nu);

// The two Wiener-Hopf style factors with (minus - plus)/nu = triple_transform.
struct SpitzerFactors {
    cplx plus;
    cplx minus;
};
SpitzerFactors spitzer_factors(const RootSystem& rs, double lambda, double mu, double nu);

// (minus - plus)/nu with the nu -> 0 cancellation guarded by the closed form.
cplx spitzer_difference_quotient(const RootSystem& rs, double lambda, double mu, double nu);

// Level 2: the transform with mu inverted; a closed two-sided exponential mix
// in x. `level2_density_alt` is the product form of the same function, kept as
// an independent evaluation path.
double level2_density(const RootSystem& rs, double lambda, double nu, double x);
double level2_density_alt(const RootSystem& rs, double lambda, double nu, double x);
double level2_at_zero(const RootSystem& rs, double lambda, double nu);

struct HalfLineMasses {
    double neg;
    double pos;
    double total;
};
HalfLineMasses level2_marginals(const RootSystem& rs, double lambda, double nu);

// Level 3: nu inverted. x <= 0 is a finite Mittag-Leffler sum; x > 0 goes
// through the sigma-convolution against the rotated kernel. The alternate
// forms re-group the same objects and serve as cross-checks.
double level3_density(const RootSystem& rs, double lambda, double s, double x,
                      const QuadratureSpec& spec = {});
double level3_density_alt(const RootSystem& rs, double lambda, double s, double x,
                          const QuadratureSpec& spec = {});

// Laplace-in-t transforms of the half-line sojourn masses (closed forms).
double sojourn_laplace_neg(const RootSystem& rs, double lambda, double s);
double sojourn_laplace_pos(const RootSystem& rs, double lambda, double s);

// Level 4: the pointwise joint density of (sojourn, position) at time t.
// The primary path uses the real trigonometric kernels for orders 2, 3, 4;
// `level4_density_generic` is the complex-kernel route valid for every order.
double level4_density(const RootSystem& rs, double t, double s, double x,
                      const QuadratureSpec& spec = {});
double level4_density_generic(const RootSystem& rs, double t, double s, double x,
                              const QuadratureSpec& spec = {});

// Sojourn-time marginal density (generalized arcsine law) and its split by the
// sign of the terminal position.
double sojourn_density(const RootSystem& rs, double t, double s);
std::pair<double, double> sojourn_density_signed(const RootSystem& rs, double t, double s);

// Fixed-quadrature evaluator of the level-4 density at one (t, s) for many x
// on one side of the origin. The xi-grid and the x-independent factors are
// frozen once; each value(x) only re-evaluates the trigonometric kernel, which
// makes half-line x-integrations of the joint density affordable.
class Level4Profile {
public:
    Level4Profile(const RootSystem& rs, double t, double s, bool negative_side,
                  double max_abs_x, const QuadratureSpec& spec = {});

    // x must lie on the profile's side (<= 0 or >= 0).
    double value(double x) const;
    bool negative_side() const { return negative_side_; }

private:
    const RootSystem& rs_;
    bool negative_side_;
    int order_;
    cplx rot_;
    std::vector<double> nodes_, gk_weights_;
    // per retained power m: overall coefficient and the x-independent factor
    // at each node
    std::vector<cplx> coef_;
    std::vector<cplx> phase_;
    std::vector<std::vector<double>> base_;
    std::vector<std::vector<cplx>> side_weights_;  // weight * root^{m+1} per root
};

// Discards an imaginary residue below `tol`, throws otherwise. The threshold
// is part of the numerical contract of the real-valued outputs.
double real_part_checked(cplx v, double tol = 1e-9);

}  // namespace pseudoproc::transforms
