#include "pseudoproc/heat_kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pseudoproc {

HeatKernel::HeatKernel(PseudoParams params, quad::QuadratureSpec spec)
    : params_(params), spec_(spec) {}

double HeatKernel::at_zero(double t) const {
    const int N = params_.order;
    const double base = std::tgamma(1.0 / N) / (N * M_PI * std::pow(t, 1.0 / N));
    return N % 2 == 0 ? base : base * std::cos(M_PI / (2.0 * N));
}

double HeatKernel::even_value(double t, double x) const {
    const int N = params_.order;
    const double cutoff = std::pow(spec_.decay_budget / t, 1.0 / N);
    auto f = [&](double mu) -> quad::cplx {
        return std::exp(-t * std::pow(mu, N)) * std::cos(mu * x);
    };
    const double period = x != 0.0 ? 2.0 * M_PI / std::abs(x) : 0.0;
    return quad::integrate_paneled(f, 0.0, cutoff, spec_,
                                   period > 0.0 ? 0.5 * period : 0.0)
               .value.real() /
           M_PI;
}

double HeatKernel::odd_value(double t, double x) const {
    // Rotate the half-line ray by kappa*pi/(2N): the symbol becomes a pure
    // exp(-t r^N) decay while the position factor may grow like
    // exp(x r sin(phi)); the growth is paid out of the decay budget.
    const int N = params_.order;
    const double phi = params_.kappa * M_PI / (2.0 * N);
    const quad::cplx dir = std::polar(1.0, phi);
    const double gain = x * std::sin(phi);
    if (gain > 0.0 && std::pow(gain, double(N) / (N - 1)) / std::pow(t, 1.0 / (N - 1)) > 600.0)
        throw std::domain_error("odd-order kernel quadrature overflows at this |x|");
    double cutoff = std::pow((spec_.decay_budget + 20.0) / t, 1.0 / N);
    if (gain > 0.0) {
        auto g = [&](double r) {
            return t * std::pow(r, N) - gain * r - (spec_.decay_budget + 20.0);
        };
        while (g(cutoff) < 0.0) cutoff *= 1.5;
    }
    auto f = [&](double r) -> quad::cplx {
        return std::exp(-t * std::pow(r, N) - quad::cplx(0.0, 1.0) * x * dir * r);
    };
    const double period = x != 0.0 ? 2.0 * M_PI / std::abs(x * std::cos(phi)) : 0.0;
    auto res = quad::integrate_semi_infinite(f, spec_, cutoff,
                                             period > 0.0 ? period : 0.0);
    if (!res.converged)
        throw std::runtime_error("odd-order kernel quadrature did not converge");
    return (dir * res.value).real() / M_PI;
}

double HeatKernel::value(double t, double x) const {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    return params_.order % 2 == 0 ? even_value(t, x) : odd_value(t, x);
}

std::pair<double, double> HeatKernel::sign_masses(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    // masses of p(t; -xi) over xi >= 0 and xi <= 0
    const double scale = std::pow(t, 1.0 / params_.order);
    const double step = scale / 2.0;
    auto width = [&](int sign) {
        double w = 6.0 * scale;
        int quiet = 0;
        while (quiet < 3 && w < 60.0 * scale) {
            quiet = std::abs(value(t, sign * w)) < 1e-13 ? quiet + 1 : 0;
            w += step;
        }
        return w;
    };
    auto mass = [&](int sign) {
        const double w = width(sign);
        auto f = [&](double xi) -> quad::cplx { return value(t, -sign * xi); };
        return quad::integrate_paneled(f, 0.0, w, spec_, scale).value.real();
    };
    return {mass(+1), mass(-1)};
}

double HeatKernel::abs_mass(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
    if (params_.order % 2 != 0) return std::numeric_limits<double>::infinity();
    // bracket sign changes on a scan grid, then integrate piecewise
    const double scale = std::pow(t, 1.0 / params_.order);
    const double step = scale / 20.0;
    double w = 6.0 * scale;
    {
        int quiet = 0;
        while (quiet < 3 && w < 60.0 * scale) {
            quiet = std::abs(value(t, w)) < 1e-13 ? quiet + 1 : 0;
            w += step;
        }
    }
    std::vector<double> nodes{0.0};
    double prev = value(t, 0.0);
    for (double xcur = step; xcur <= w; xcur += step) {
        const double cur = value(t, xcur);
        if (prev * cur < 0.0) {
            double lo = xcur - step, hi = xcur;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (value(t, mid) * prev > 0.0 ? lo : hi) = mid;
            }
            nodes.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    nodes.push_back(w);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        auto f = [&](double xx) -> quad::cplx { return value(t, xx); };
        total += std::abs(quad::integrate(f, nodes[i], nodes[i + 1], spec_).value.real());
    }
    return 2.0 * total;  // symmetric kernel
}

}  // namespace pseudoproc
