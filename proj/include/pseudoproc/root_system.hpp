#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "pseudoproc/report.hpp"

namespace pseudoproc {

using cplx = std::complex<double>;

// Order and sign of the evolution equation du/dt = kappa d^N u / dx^N.
// For even N the sign is forced to (-1)^{1+N/2}; for odd N both signs are
// admitted but everything downstream of the kernel is only formal.
struct PseudoParams {
    int order = 2;
    int kappa = 1;
    bool formal_odd = false;

    // Throws std::invalid_argument on N < 2, kappa not in {-1,+1}, or an
    // even-N kappa inconsistent with the forced value.
    static PseudoParams make(int order, std::optional<int> kappa = std::nullopt);
    static int forced_kappa(int order);  // even orders only
};

// The N-th roots of kappa split by the sign of their real part, together with
// the partial-fraction weights and the derived coefficient families that every
// closed-form expression downstream is assembled from. Immutable once built.
class RootSystem {
public:
    explicit RootSystem(PseudoParams params);

    const PseudoParams& params() const { return params_; }
    int order() const { return params_.order; }
    int kappa() const { return params_.kappa; }

    const std::vector<cplx>& roots() const { return roots_; }

    // Index lists into roots() for Re > 0 (plus) and Re < 0 (minus).
    const std::vector<int>& plus_indices() const { return plus_; }
    const std::vector<int>& minus_indices() const { return minus_; }
    int n_plus() const { return static_cast<int>(plus_.size()); }
    int n_minus() const { return static_cast<int>(minus_.size()); }

    cplx plus_root(int j) const { return roots_[plus_[j]]; }
    cplx minus_root(int k) const { return roots_[minus_[k]]; }

    // Vandermonde partial-fraction weights over each half, indexed like the
    // corresponding index lists.
    cplx plus_weight(int j) const { return plus_weights_[j]; }
    cplx minus_weight(int k) const { return minus_weights_[k]; }

    // Weighted power sums: sum_j w_j theta_j^m over each half, any integer m.
    cplx plus_power_sum(int m) const;
    cplx minus_power_sum(int m) const;

    // Elementary symmetric function of the minus-half roots, ell in [0, n_minus].
    cplx minus_elementary_symmetric(int ell) const;

    // sum over the plus half of theta_j (equals 1/sin(pi/N) for even N).
    double plus_root_sum() const;

private:
    PseudoParams params_;
    std::vector<cplx> roots_;
    std::vector<int> plus_, minus_;
    std::vector<cplx> plus_weights_, minus_weights_;
    std::vector<cplx> sigma_;  // elementary symmetric functions over the minus half
    // Power sums precomputed on [-table_halfspan_, table_halfspan_].
    int table_halfspan_ = 0;
    std::vector<cplx> plus_powersum_table_, minus_powersum_table_;

    cplx power_sum_direct(bool plus_half, int m) const;
};

RootSystem build_root_system(const PseudoParams& params);

// Runs the full identity ledger over the root data: root sums/products, the
// monic factorization at sample points, the sigma expansion, the weighted-sum
// closed form, Vandermonde relations, partial fractions, reciprocal relations,
// both power-sum tables with their closed forms, and the signed products.
// Absolute tolerance 1e-11 throughout.
ValidationReport verify_identities(const RootSystem& rs);

}  // namespace pseudoproc
