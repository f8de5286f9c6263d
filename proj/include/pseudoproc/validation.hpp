#pragma once

#include <vector>

#include "pseudoproc/heat_kernel.hpp"
#include "pseudoproc/quadrature.hpp"
#include "pseudoproc/report.hpp"
#include "pseudoproc/root_system.hpp"
#include "pseudoproc/transforms.hpp"

namespace pseudoproc::validation {

using quad::QuadratureSpec;

// Tolerance tiers. Every check entry records which tier it was held to.
struct Tolerances {
    double algebraic = 1e-11;
    double special_function = 1e-8;
    double single_quadrature = 1e-6;
    double ladder = 1e-4;
    double oracle_coarse = 2e-2;
};

// The identity ledger: root algebra, special-function cross-representations,
// kernel invariants (including the log-transform keystone), transform-form
// equivalences and marginal identities, the Erfc integral suite, and the
// kernel Laplace-transform checks, for each requested order.
ValidationReport run_ledger(const std::vector<PseudoParams>& orders,
                            const QuadratureSpec& spec = {});

// The consistency ladder for one order: numeric forward transforms connecting
// the pointwise joint density back to the closed triple transform, the
// marginal integrations, normalization, the conditional-uniform law at x = 0,
// and the sojourn-reversal symmetry.
ValidationReport run_ladder(const RootSystem& rs, double t, const QuadratureSpec& spec = {});

// Numeric mass of the level-4 density over one half-line at fixed (t, s).
double level4_halfline_mass(const RootSystem& rs, double t, double s, bool negative,
                            const QuadratureSpec& spec = {});

// Numeric double integral of the level-4 density over (0,t) x R.
double level4_normalization(const RootSystem& rs, double t, const QuadratureSpec& spec = {});

// Numeric verification of the log-transform identity that underlies the
// factorization: returns {lhs, rhs} for the requested half-line.
std::pair<std::complex<double>, std::complex<double>> log_transform_identity(
    const RootSystem& rs, const HeatKernel& kernel, double lambda, double mu,
    bool plus_side, const QuadratureSpec& spec = {});

}  // namespace pseudoproc::validation
