#include "pseudoproc/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pseudoproc {

namespace {

constexpr double kAxisDeadZone = 1e-12;
constexpr double kLedgerTol = 1e-11;

std::string tag(const RootSystem& rs) {
    return "N" + std::to_string(rs.order()) +
           (rs.kappa() > 0 ? "p" : "m") + ".";
}

}  // namespace

int PseudoParams::forced_kappa(int order) {
    // (-1)^{1 + N/2} for even N
    return (1 + order / 2) % 2 == 0 ? 1 : -1;
}

PseudoParams PseudoParams::make(int order, std::optional<int> kappa) {
    if (order < 2) throw std::invalid_argument("order must be >= 2");
    PseudoParams p;
    p.order = order;
    if (order % 2 == 0) {
        p.kappa = forced_kappa(order);
        if (kappa && *kappa != p.kappa)
            throw std::invalid_argument(
                "even order " + std::to_string(order) + " forces kappa = " +
                std::to_string(p.kappa));
        p.formal_odd = false;
    } else {
        if (!kappa) throw std::invalid_argument("odd order requires an explicit kappa");
        if (*kappa != 1 && *kappa != -1)
            throw std::invalid_argument("kappa must be +1 or -1");
        p.kappa = *kappa;
        p.formal_odd = true;
    }
    return p;
}

RootSystem::RootSystem(PseudoParams params) : params_(params) {
    const int N = params_.order;
    const double base_arg = params_.kappa > 0 ? 0.0 : M_PI;
    roots_.reserve(N);
    for (int l = 0; l < N; ++l) {
        double a = (base_arg + 2.0 * M_PI * l) / N;
        if (a > M_PI + 1e-15) a -= 2.0 * M_PI;
        roots_.push_back(std::polar(1.0, a));
    }
    std::sort(roots_.begin(), roots_.end(),
              [](const cplx& a, const cplx& b) { return std::arg(a) < std::arg(b); });

    for (int i = 0; i < N; ++i) {
        if (std::abs(roots_[i].real()) < kAxisDeadZone)
            throw std::domain_error("root too close to the imaginary axis; half-plane split is degenerate");
        (roots_[i].real() > 0 ? plus_ : minus_).push_back(i);
    }
    if (plus_.empty() || minus_.empty())
        throw std::domain_error("degenerate half-plane split");

    auto weights_of = [&](const std::vector<int>& idx) {
        std::vector<cplx> w(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            cplx prod = 1.0;
            for (std::size_t b = 0; b < idx.size(); ++b) {
                if (a == b) continue;
                const cplx ti = roots_[idx[b]], tj = roots_[idx[a]];
                prod *= ti / (ti - tj);
            }
            w[a] = prod;
        }
        return w;
    };
    plus_weights_ = weights_of(plus_);
    minus_weights_ = weights_of(minus_);

    // Elementary symmetric functions over the minus half, by the usual
    // one-root-at-a-time polynomial build.
    sigma_.assign(minus_.size() + 1, cplx(0.0));
    sigma_[0] = 1.0;
    for (std::size_t a = 0; a < minus_.size(); ++a) {
        const cplx t = roots_[minus_[a]];
        for (std::size_t l = a + 1; l > 0; --l) sigma_[l] += t * sigma_[l - 1];
    }

    table_halfspan_ = 3 * N + 4;
    plus_powersum_table_.resize(2 * table_halfspan_ + 1);
    minus_powersum_table_.resize(2 * table_halfspan_ + 1);
    for (int m = -table_halfspan_; m <= table_halfspan_; ++m) {
        plus_powersum_table_[m + table_halfspan_] = power_sum_direct(true, m);
        minus_powersum_table_[m + table_halfspan_] = power_sum_direct(false, m);
    }
}

cplx RootSystem::power_sum_direct(bool plus_half, int m) const {
    const auto& idx = plus_half ? plus_ : minus_;
    const auto& w = plus_half ? plus_weights_ : minus_weights_;
    cplx s = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        s += w[a] * std::pow(roots_[idx[a]], m);
    return s;
}

cplx RootSystem::plus_power_sum(int m) const {
    if (std::abs(m) <= table_halfspan_) return plus_powersum_table_[m + table_halfspan_];
    return power_sum_direct(true, m);
}

cplx RootSystem::minus_power_sum(int m) const {
    if (std::abs(m) <= table_halfspan_) return minus_powersum_table_[m + table_halfspan_];
    return power_sum_direct(false, m);
}

cplx RootSystem::minus_elementary_symmetric(int ell) const {
    if (ell < 0 || ell > n_minus())
        throw std::out_of_range("elementary symmetric index out of range");
    return sigma_[ell];
}

double RootSystem::plus_root_sum() const {
    cplx s = 0.0;
    for (int i : plus_) s += roots_[i];
    return s.real();
}

RootSystem build_root_system(const PseudoParams& params) { return RootSystem(params); }

ValidationReport verify_identities(const RootSystem& rs) {
    ValidationReport rep;
    const std::string p = tag(rs);
    const int N = rs.order();
    const double kap = rs.kappa();
    const int nJ = rs.n_plus(), nK = rs.n_minus();
    const bool odd = rs.params().formal_odd;
    const double tol = kLedgerTol;

    auto chk = [&](const std::string& name, const std::string& anchor, cplx expected,
                   cplx computed) {
        CheckEntry e;
        e.name = p + name;
        e.anchor = anchor;
        e.expected = expected.real();
        e.computed = computed.real();
        e.abs_err = std::abs(expected - computed);
        e.rel_err = e.abs_err / std::max(1.0, std::abs(expected));
        e.tolerance = tol;
        e.pass = e.abs_err <= tol;
        e.formal_odd = false;  // the algebra is rigorous for every order
        rep.add(e);
    };

    // Root sum and product.
    {
        cplx sum = 0.0, prod = 1.0;
        for (const cplx& t : rs.roots()) { sum += t; prod *= t; }
        chk("roots.sum_zero", "root-elementary", 0.0, sum);
        const double sign = (N - 1) % 2 == 0 ? 1.0 : -1.0;
        chk("roots.product", "root-elementary", sign * kap, prod);
    }

    const double xs[5] = {-1.7, -0.4, 0.3, 1.1, 2.6};

    // Monic factorization prod (x - theta_i) = x^N - kappa at sample points.
    for (double x : xs) {
        cplx prod = 1.0;
        for (const cplx& t : rs.roots()) prod *= (x - t);
        chk("roots.monic_factorization.x=" + std::to_string(x), "root-factorization",
            std::pow(x, N) - kap, prod);
    }

    // Sigma expansion of the minus-half factor.
    for (double x : {-0.8, 0.6, 1.9}) {
        cplx prod = 1.0;
        for (int k = 0; k < nK; ++k) prod *= (x - rs.minus_root(k));
        cplx expand = 0.0;
        double sgn = 1.0;
        for (int l = 0; l <= nK; ++l, sgn = -sgn)
            expand += sgn * rs.minus_elementary_symmetric(l) * std::pow(x, nK - l);
        chk("roots.sigma_expansion.x=" + std::to_string(x), "minus-factor-expansion",
            prod, expand);
    }

    // Weighted interpolation sum: independent of x, equal to the plus root sum
    // and to the trigonometric closed form.
    {
        const double closed = N % 2 == 0
                                  ? 1.0 / std::sin(M_PI / N)
                                  : std::cos(M_PI / (2.0 * N)) / std::sin(M_PI / N);
        cplx minus_sum = 0.0;
        for (int k = 0; k < nK; ++k) minus_sum += rs.minus_root(k);
        chk("weights.root_sum_closed_form", "weighted-sum-trig", closed, rs.plus_root_sum());
        chk("weights.root_sum_balance", "weighted-sum-trig", closed, -minus_sum);
        for (double x : {0.0, 0.7, -1.3}) {
            cplx s = 0.0;
            for (int j = 0; j < nJ; ++j) {
                cplx prod = rs.plus_root(j);
                for (int i = 0; i < nJ; ++i) {
                    if (i == j) continue;
                    prod *= (rs.plus_root(i) * x - rs.plus_root(j)) /
                            (rs.plus_root(i) - rs.plus_root(j));
                }
                s += prod;
            }
            chk("weights.interpolation_sum.x=" + std::to_string(x), "weighted-sum-trig",
                closed, s);
        }
    }

    // Vandermonde normalization and vanishing moments.
    {
        cplx sa = 0.0, sb = 0.0;
        for (int j = 0; j < nJ; ++j) sa += rs.plus_weight(j);
        for (int k = 0; k < nK; ++k) sb += rs.minus_weight(k);
        chk("weights.normalization_plus", "vandermonde", 1.0, sa);
        chk("weights.normalization_minus", "vandermonde", 1.0, sb);
        for (int m = 1; m <= nJ - 1; ++m)
            chk("weights.vanishing_moment_plus.m=" + std::to_string(m), "vandermonde", 0.0,
                rs.plus_power_sum(m));
        for (int m = 1; m <= nK - 1; ++m)
            chk("weights.vanishing_moment_minus.m=" + std::to_string(m), "vandermonde", 0.0,
                rs.minus_power_sum(m));
    }

    // Partial-fraction identities at sample x.
    for (double x : xs) {
        cplx lhs_p = 0.0, lhs_m = 0.0;
        for (int j = 0; j < nJ; ++j)
            lhs_p += rs.plus_weight(j) * rs.plus_root(j) / (rs.plus_root(j) - x);
        for (int k = 0; k < nK; ++k)
            lhs_m += rs.minus_weight(k) * rs.minus_root(k) / (rs.minus_root(k) - x);
        cplx prod_p = 1.0, prod_m = 1.0;
        for (int j = 0; j < nJ; ++j) prod_p *= (1.0 - rs.plus_root(j) * x);
        for (int k = 0; k < nK; ++k) prod_m *= (1.0 - rs.minus_root(k) * x);
        chk("weights.partial_fraction_plus.x=" + std::to_string(x), "partial-fraction",
            1.0 / prod_p, lhs_p);
        chk("weights.partial_fraction_minus.x=" + std::to_string(x), "partial-fraction",
            1.0 / prod_m, lhs_m);
        const cplx denom = std::pow(cplx(x), N) - kap;
        chk("weights.partial_fraction_plus_alt.x=" + std::to_string(x), "partial-fraction",
            -kap * prod_m / denom, lhs_p);
    }

    // Reciprocal relations between the two weight families.
    for (int k = 0; k < nK; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < nJ; ++j)
            s += rs.plus_weight(j) * rs.plus_root(j) /
                 (rs.plus_root(j) - rs.minus_root(k));
        chk("weights.reciprocal_minus.k=" + std::to_string(k), "reciprocal-relation",
            1.0 / (static_cast<double>(N) * rs.minus_weight(k)), s);
    }
    for (int j = 0; j < nJ; ++j) {
        cplx s = 0.0;
        for (int k = 0; k < nK; ++k)
            s += rs.minus_weight(k) * rs.minus_root(k) /
                 (rs.minus_root(k) - rs.plus_root(j));
        chk("weights.reciprocal_plus.j=" + std::to_string(j), "reciprocal-relation",
            1.0 / (static_cast<double>(N) * rs.plus_weight(j)), s);
    }

    // Minus-half power-sum table with the closed forms for the first two
    // moments past the vanishing range.
    {
        cplx prodK = 1.0, sumK = 0.0;
        for (int k = 0; k < nK; ++k) { prodK *= rs.minus_root(k); sumK += rs.minus_root(k); }
        const double sgn = (nK - 1) % 2 == 0 ? 1.0 : -1.0;
        chk("power_sums.minus.m=0", "minus-powersum-table", 1.0, rs.minus_power_sum(0));
        for (int m = 1; m <= nK - 1; ++m)
            chk("power_sums.minus.m=" + std::to_string(m), "minus-powersum-table", 0.0,
                rs.minus_power_sum(m));
        chk("power_sums.minus.top", "minus-powersum-closed", sgn * prodK,
            rs.minus_power_sum(nK));
        chk("power_sums.minus.top_plus_one", "minus-powersum-closed", sgn * prodK * sumK,
            rs.minus_power_sum(nK + 1));
        chk("power_sums.minus.m=N", "minus-powersum-table", kap, rs.minus_power_sum(N));
    }

    // Plus-half negative-power table, the reflection identity, and the closed
    // forms at -(nK-1), -nK.
    {
        cplx prodJ = 1.0, sumJ = 0.0;
        for (int j = 0; j < nJ; ++j) { prodJ *= rs.plus_root(j); sumJ += rs.plus_root(j); }
        const double sgn = (nJ - 1) % 2 == 0 ? 1.0 : -1.0;
        chk("power_sums.plus.m=0", "plus-powersum-table", 1.0, rs.plus_power_sum(0));
        for (int m = nK + 1; m <= N - 1; ++m)
            chk("power_sums.plus.m=-" + std::to_string(m), "plus-powersum-table", 0.0,
                rs.plus_power_sum(-m));
        if (nK - 1 >= 1)
            chk("power_sums.plus.m=-(top-1)", "plus-powersum-closed",
                kap * sgn * prodJ * sumJ, rs.plus_power_sum(-(nK - 1)));
        chk("power_sums.plus.m=-top", "plus-powersum-closed", kap * sgn * prodJ,
            rs.plus_power_sum(-nK));
        chk("power_sums.plus.m=-N", "plus-powersum-table", kap, rs.plus_power_sum(-N));
        for (int m = 0; m <= N; ++m)
            chk("power_sums.plus.reflection.m=" + std::to_string(m), "powersum-reflection",
                kap * rs.plus_power_sum(N - m), rs.plus_power_sum(-m));
    }

    // Signed products of the two families.
    {
        cplx sumJ = 0.0, sumK = 0.0;
        for (int j = 0; j < nJ; ++j) sumJ += rs.plus_root(j);
        for (int k = 0; k < nK; ++k) sumK += rs.minus_root(k);
        chk("power_sums.product.zero", "powersum-products", 1.0,
            rs.plus_power_sum(0) * rs.minus_power_sum(0));
        chk("power_sums.product.full", "powersum-products", 1.0,
            rs.plus_power_sum(-N) * rs.minus_power_sum(N));
        chk("power_sums.product.top", "powersum-products", -1.0,
            rs.plus_power_sum(-nK) * rs.minus_power_sum(nK));
        chk("power_sums.product.top_shift", "powersum-products", sumJ,
            rs.plus_power_sum(-nK) * rs.minus_power_sum(nK + 1));
        chk("power_sums.product.sub_shift", "powersum-products", sumK,
            rs.plus_power_sum(1 - nK) * rs.minus_power_sum(nK));

        const double sgn = (nK - 1) % 2 == 0 ? 1.0 : -1.0;
        chk("power_sums.sigma.zero", "sigma-products", 1.0,
            std::conj(rs.minus_elementary_symmetric(0)) * rs.minus_power_sum(0));
        if (nK - 1 >= 0)
            chk("power_sums.sigma.top", "sigma-products", sgn * sumK,
                std::conj(rs.minus_elementary_symmetric(nK - 1)) * rs.minus_power_sum(nK));
        chk("power_sums.sigma.top_shift", "sigma-products", sgn * sumK,
            std::conj(rs.minus_elementary_symmetric(nK)) * rs.minus_power_sum(nK + 1));
        chk("power_sums.sigma.unit", "sigma-products", sgn,
            std::conj(rs.minus_elementary_symmetric(nK)) * rs.minus_power_sum(nK));
    }

    (void)odd;
    return rep;
}

}  // namespace pseudoproc
