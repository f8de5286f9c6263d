#pragma once

#include "pseudoproc/quadrature.hpp"
#include "pseudoproc/root_system.hpp"

namespace pseudoproc {

// Elementary solution p(t; x) of du/dt = kappa d^N u/dx^N, by Fourier
// inversion. Even orders give a real decaying symbol; odd orders are handled
// through a rotated contour and are formal.
class HeatKernel {
public:
    explicit HeatKernel(PseudoParams params, quad::QuadratureSpec spec = {});

    const PseudoParams& params() const { return params_; }

    double operator()(double t, double x) const { return value(t, x); }
    double value(double t, double x) const;

    // Closed form of p(t; 0).
    double at_zero(double t) const;

    // Masses of p(t; -xi) over xi >= 0 / xi <= 0; equal #J/N and #K/N.
    std::pair<double, double> sign_masses(double t) const;

    // Total absolute mass rho = int |p(t;x)| dx. Scale invariant in t for even
    // orders; +infinity for odd orders.
    double abs_mass(double t) const;

private:
    PseudoParams params_;
    quad::QuadratureSpec spec_;

    double even_value(double t, double x) const;
    double odd_value(double t, double x) const;
};

}  // namespace pseudoproc
